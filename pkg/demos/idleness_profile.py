"""The idleness curve p -> kappa_p of a few edges.

kappa_p is concave and made of at most three straight pieces; the last
piece always ends at kappa_1 = 0 and its slope is -kappa_LLY.
"""

from fractions import Fraction

from curvachay import ball, parse_raach_body
from curvachay.ollivier import kappa_lly_transport, kappa_p_curve, kappa_p_pieces

CASES = {"cycle C4": "a:4", "3-regular tree": "a:2,b:2,c:2", "Z3 x Z2": "a:3,b:2; commute (a,b)"}
GRID = [Fraction(k, 8) for k in range(9)]

for title, text in CASES.items():
    g = ball(parse_raach_body(text).graph, 4)
    y = next(iter(g.adj[0]))
    lines, concave = kappa_p_pieces(g, 0, y)
    print(f"{title}: kappa_LLY = {kappa_lly_transport(g, 0, y)}, concave {concave}")
    for slope, icpt in lines:
        print(f"    piece  kappa_p = {icpt} + ({slope}) p")
    print("    grid  " + "  ".join(f"{float(v):+.3f}" for v in kappa_p_curve(g, 0, y, GRID)))
