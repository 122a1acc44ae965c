from fractions import Fraction

import numpy as np
import pytest

from curvachay.cosets import cayley_from_cosets, quotient_map, todd_coxeter
from curvachay.graph import graph_from_edges
from curvachay.presentation import Presentation, associated_pair, parse_presentation
from curvachay.theorems import (
    WeightingScheme,
    adapted_weights,
    be_matrix_from_ball,
    lambda2_bound_check,
    lap_identity_check,
    lipschitz_quotient_check,
    monotonicity_check,
    monotonicity_check_raach,
    spectral_summary,
    thm_be_raach,
    thm_or_raach,
    thm_or_raach_combinatorial,
)
from conftest import cycle_graph, raach, tree, triangle_tree

F = Fraction


def racg_complete(d):
    names = [f"s{i}" for i in range(d)]
    pairs = ",".join(f"({a},{b})" for i, a in enumerate(names) for b in names[i + 1:])
    return raach(",".join(f"{n}:2" for n in names) + (f"; commute {pairs}" if pairs else ""))


class TestOllivierClosedForm:
    def test_free_abelian_generator_is_flat(self):
        h = raach("a:inf,b:inf; commute (a,b)")
        assert thm_or_raach(h, (0, 1)) == 0

    @pytest.mark.parametrize("d", [2, 3, 5])
    def test_tree(self, d):
        assert thm_or_raach(tree(d), (0, 1)) == F(4, d) - 2

    def test_order_three_letter_uses_three(self):
        h = triangle_tree(2)
        assert thm_or_raach(h, (0, 1)) == F(7, 4) - 2

    def test_unweighted_degree_agrees_without_order_three(self):
        h = raach("a:2,b:4,c:inf; commute (a,b),(b,c)")
        for s in associated_pair(h).letters:
            assert thm_or_raach(h, s) == thm_or_raach_combinatorial(h, s)

    def test_unweighted_degree_undercounts_order_three(self):
        h = raach("a:3,b:4,c:inf; commute (a,b),(b,c)")
        d = len(associated_pair(h))
        assert thm_or_raach(h, (0, 1)) - thm_or_raach_combinatorial(h, (0, 1)) == F(2, d)
        assert thm_or_raach(h, (1, 1)) == thm_or_raach_combinatorial(h, (1, 1))

    def test_unknown_letter(self):
        with pytest.raises(ValueError):
            thm_or_raach(tree(2), (5, 1))


class TestBakryEmeryClosedForm:
    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_complete_racg(self, d):
        h = racg_complete(d)
        be = thm_be_raach(h)
        assert spectral_summary(h).lambda2 == pytest.approx(d)
        assert be.case is not None
        assert be.k_formula == pytest.approx(2)
        assert be.k_numeric == pytest.approx(2)

    def test_triangle_tree_spectrum(self):
        h = triangle_tree(3)
        assert spectral_summary(h).lambda2 == pytest.approx(0)
        be = thm_be_raach(h)
        # 5/2 - D with D = 2 D0 letters in the non-normalized setting
        assert be.k_formula == pytest.approx(5 / 2 - 6)
        assert be.k_numeric == pytest.approx(5 / 2 - 6)

    @pytest.mark.parametrize("text", ["a:3,b:4; commute (a,b)", "a:inf,b:2,c:3; commute (a,c)", "a:4"])
    def test_matrix_matches_schur_complement(self, text):
        h = raach(text)
        schur, letters = be_matrix_from_ball(h)
        closed = thm_be_raach(h)
        assert tuple(letters) == tuple(closed.letters)
        assert (schur == closed.a).all()

    def test_matrix_is_symmetric(self):
        a = thm_be_raach(raach("a:3,b:4,c:inf; commute (a,b)")).a
        assert (a == a.T).all()

    def test_mixed_case_has_no_closed_k(self):
        be = thm_be_raach(raach("a:3,b:4"))
        assert be.k_formula is None and be.case is None
        assert lambda2_bound_check(raach("a:3,b:4")) is None


@pytest.mark.parametrize("text", ["a:2,b:3", "a:4,b:inf; commute (a,b)", "a:3,b:3,c:2; commute (a,b),(b,c)"])
def test_laplacian_identity(text):
    assert lap_identity_check(raach(text))


def test_lambda2_bound():
    assert lambda2_bound_check(racg_complete(3))
    assert lambda2_bound_check(raach("a:inf,b:4,c:2; commute (a,b)"))


class TestAdaptedWeights:
    def test_cyclic_fold_doubles(self):
        p = parse_presentation("group <a | a^4>")
        w = adapted_weights(p, p.with_relators([p.word("a^2")]))
        assert set(w.weights.values()) == {2}

    def test_same_relators_is_identity(self):
        p = parse_presentation("group <a,b | a^3, b^2, a^-1 b^-1 a b>")
        w = adapted_weights(p, p.with_relators([]))
        assert set(w.weights.values()) == {1}

    def test_integers_onto_z3(self):
        p = Presentation.from_graph(raach("a:inf"))
        w = adapted_weights(p, p.with_relators([p.word("a^3")]))
        assert w.weights == {(0, 1): 1, (0, -1): 1}

    def test_collapsed_class_is_dropped(self):
        p = parse_presentation("group <a,b | a^2, b^2, a^-1 b^-1 a b>")
        w = adapted_weights(p, p.with_relators([p.word("b")]))
        assert w.weights == {(0, 1): 1, (0, -1): 1}

    def test_requires_relator_containment(self):
        p = parse_presentation("group <a | a^4>")
        q = parse_presentation("group <a | a^2>")
        with pytest.raises(ValueError):
            adapted_weights(p, q)

    def test_inversion_invariance_enforced(self):
        with pytest.raises(ValueError):
            WeightingScheme({(0, 1): F(1), (0, -1): F(2)})
        with pytest.raises(ValueError):
            WeightingScheme({(0, 1): F(0)})


class TestMonotonicity:
    def test_z4_onto_z2(self):
        # the second generator equals a^2, so the Cayley graph of Z4 is K4
        p = parse_presentation("group <a,b | a^4, b^-1 a^2>")
        rep = monotonicity_check(p, p.with_relators([p.word("a^2")]), name="Z4")
        assert rep.ok and rep.hypotheses_ok
        assert rep.unweighted_decrease
        assert rep.sizes == (4, 2)
        unweighted = next(r for r in rep.records if r.claim == "unweighted comparison")
        assert unweighted.lhs.startswith("K 2 ") and "kappa 2 " in unweighted.lhs
        assert unweighted.rhs.startswith("K 3 ") and "kappa 4 " in unweighted.rhs

    def test_z6_onto_z3(self):
        p = parse_presentation("group <a | a^6>")
        rep = monotonicity_check(p, p.with_relators([p.word("a^3")]))
        assert rep.ok

    def test_no_new_relator_gives_equality(self):
        p = parse_presentation("group <a,b | a^2, b^2, (a b)^3>")
        rep = monotonicity_check(p, p.with_relators([]))
        assert rep.ok and not rep.unweighted_decrease
        for r in rep.records:
            if r.claim in ("BE monotone", "OR monotone"):
                assert r.lhs == r.rhs

    def test_trivial_quotient_is_rejected(self):
        p = parse_presentation("group <a | a^3>")
        with pytest.raises(ValueError):
            monotonicity_check(p, p.with_relators([p.word("a")]))

    @pytest.mark.parametrize("text, extra", [
        ("a:inf", "a^3"),
        ("a:2,b:2", "(a b)^3"),
        ("a:inf,b:inf; commute (a,b)", "a^2,b^2"),
        ("a:4,b:2; commute (a,b)", "a^2"),
        ("a:3,b:3; commute (a,b)", "a b^-1"),
    ])
    def test_from_raach_closed_forms(self, text, extra):
        h = raach(text)
        p = Presentation.from_graph(h)
        rep = monotonicity_check_raach(h, [p.word(r) for r in extra.split(",")])
        assert rep.ok and rep.records


class TestLipschitzQuotient:
    def test_identity(self):
        g = cycle_graph(5)
        assert lipschitz_quotient_check(g, g, list(range(5)), trials=10)["holds"]

    def test_hexagon_covers_triangle(self):
        # a covering is locally bijective, so weights must match on both sides
        g, g2 = cycle_graph(6, weight=2), cycle_graph(3, weight=2)
        assert lipschitz_quotient_check(g, g2, [i % 3 for i in range(6)], trials=20)["holds"]

    def test_hexagon_folds_onto_edge(self):
        g = cycle_graph(6)
        g2 = graph_from_edges(2, [(0, 1)], [2])
        assert lipschitz_quotient_check(g, g2, [i % 2 for i in range(6)], trials=20)["holds"]

    def test_perturbed_weight_breaks_the_identity(self):
        g = graph_from_edges(6, [(i, (i + 1) % 6) for i in range(6)], [1, 1, 1, 1, 1, 2])
        g2 = graph_from_edges(2, [(0, 1)], [2])
        out = lipschitz_quotient_check(g, g2, [i % 2 for i in range(6)], trials=20)
        assert not out["holds"] and out["conditions"] and out["failures"] > 0

    def test_quotient_graph_from_cosets(self):
        p = parse_presentation("group <a | a^6>")
        p2 = p.with_relators([p.word("a^2")])
        t, t2 = todd_coxeter(p), todd_coxeter(p2)
        w = adapted_weights(p, p2, None, t, t2)
        g, g2 = cayley_from_cosets(t), cayley_from_cosets(t2, w)
        phi = quotient_map(p, p2, t, t2)
        assert lipschitz_quotient_check(g, g2, phi.images, trials=10)["holds"]
