import random

import pytest

from curvachay.eliminate import eliminate, eliminate_r4, eliminate_rinf, letter_correspondence
from curvachay.graph import find_isomorphism, is_isomorphism
from curvachay.presentation import associated_pair, format_word, parse_word
from curvachay.raach import RaachGroup, ball
from curvachay.sweeps import explicit_ball_map
from conftest import raach


def _fmt(h, w):
    return format_word(w, h.generators)


def test_r4_sample_word():
    h = raach("s0:4,s1:2,s2:2")
    h2, wm = eliminate_r4(h, "s0")
    w = parse_word("s0^-1 s1 s0^2 s2^-1 s0", h.generators)
    assert _fmt(h2, wm.phi(w)) == "s0' s0'' s0' s1 s0'' s0' s2^-1 s0''"
    assert h2.commute(0, 1)
    assert h2.orders == (2, 2, 2, 2)


def test_r4_inverse_sample_word():
    h = raach("s0:4,s1:inf,s2:inf,s3:inf")
    h2, wm = eliminate_r4(h, "s0")
    w2 = parse_word("s1 s0'^-1 s2 s0''^2 s0' s1 s0'' s0' s3 s0'", h2.generators)
    back = wm.phi_inv(w2)
    assert back == parse_word("s1 s0 s2 s0^-1 s1 s0^-1 s0^-1 s3 s0", h.generators)


def test_rinf_sample_word():
    h = raach("s0:inf,s1:2,s2:2")
    h2, wm = eliminate_rinf(h, "s0")
    w = parse_word("s0^-2 s1 s0^2 s2 s0", h.generators)
    assert _fmt(h2, wm.phi(w)) == "s0'' s0' s1 s0' s0'' s2 s0'"
    assert not h2.commute(0, 1)


def test_rinf_inverse_sample_word():
    h = raach("s0:inf,s1:2,s2:inf")
    h2, wm = eliminate_rinf(h, "s0")
    w2 = parse_word("s0'^-1 s1 s0' s0'' s2^2 s0' s0''^2", h2.generators)
    assert wm.phi_inv(w2) == parse_word("s0 s1 s0^-1 s0^-1 s2^2 s0^-1", h.generators)


@pytest.mark.parametrize("text, gen", [
    ("s0:4,s1:2,s2:3; commute (s0,s1)", "s0"),
    ("s0:inf,s1:4; commute (s0,s1)", "s0"),
    ("a:2,s0:inf,b:3; commute (a,s0)", "s0"),
    ("a:4,b:4; commute (a,b)", "b"),
    ("a:inf", "a"),
])
def test_word_round_trip_and_balls(text, gen):
    h = raach(text)
    h2, wm = eliminate(h, gen)
    g1, g2 = RaachGroup(h), RaachGroup(h2)
    rng = random.Random(0)
    for _ in range(1000):
        w = [(rng.randrange(len(h)), rng.choice((1, -1))) for _ in range(rng.randint(0, 10))]
        assert g1.normal_form(wm.phi_inv(wm.phi(w))) == g1.normal_form(w)
        w2 = [(rng.randrange(len(h2)), rng.choice((1, -1))) for _ in range(rng.randint(0, 10))]
        assert g2.normal_form(wm.phi(wm.phi_inv(w2))) == g2.normal_form(w2)
    b1, b2 = ball(h, 2), ball(h2, 2)
    explicit = explicit_ball_map(b1, b2, wm)
    assert explicit is not None and is_isomorphism(b1, b2, explicit)
    assert find_isomorphism(b1, b2, rooted=True) is not None


def test_pairs_isomorphic_through_letter_map():
    h = raach("s0:4,s1:3,s2:inf; commute (s0,s1),(s1,s2)")
    h2, wm = eliminate(h, "s0")
    corr = letter_correspondence(wm)
    p1, p2 = associated_pair(h), associated_pair(h2)
    assert sorted(corr.values()) == sorted(p2.letters)
    for s in p1.letters:
        for t in p1.letters:
            assert p1.w(s, t) == p2.w(corr[s], corr[t])


def test_infinite_cyclic_becomes_infinite_dihedral():
    h = raach("a:inf")
    h2, _ = eliminate_rinf(h, "a")
    b1, b2 = ball(h, 4), ball(h2, 4)
    assert b1.n == b2.n == 9
    assert b1.num_edges() == b2.num_edges() == 8


def test_wrong_order_rejected():
    with pytest.raises(ValueError, match="order 4"):
        eliminate_r4(raach("a:2"), "a")
    with pytest.raises(ValueError, match="infinite"):
        eliminate_rinf(raach("a:4"), "a")
