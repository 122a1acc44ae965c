"""Trading order-4 and infinite-order generators for involutions.

An order-4 generator is the product of two commuting involutions, and an
infinite-order one the product of two non-commuting involutions. Both
swaps keep the 2-ball of the Cayley graph, which is all curvature sees.
"""

import random

from curvachay import ball, find_isomorphism, parse_raach_body
from curvachay.eliminate import eliminate_r4, eliminate_rinf
from curvachay.presentation import format_word

h = parse_raach_body("s0:4,s1:2,s2:inf; commute (s0,s1),(s1,s2)").graph
rng = random.Random(1)

for fn, name in ((eliminate_r4, "s0"), (eliminate_rinf, "s2")):
    h2, wm = fn(h, name)
    g1, g2 = ball(h, 2), ball(h2, 2)
    iso = find_isomorphism(g1, g2, rooted=True)
    print(f"eliminate {name}: orders {h2.orders} on {h2.generators}")
    print(f"    2-balls: {g1.n} and {g2.n} vertices, isomorphic: {iso is not None}")
    for _ in range(3):
        w = [(rng.randrange(3), rng.choice((1, -1))) for _ in range(rng.randint(2, 5))]
        print(f"    {format_word(w, h.generators):<24s} -> {format_word(wm.phi(w), h2.generators)}")
