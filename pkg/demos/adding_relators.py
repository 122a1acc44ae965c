"""Why added relators need adapted weights.

Adding ``a^2`` to ``<a, b | a^4, b^-1 a^2>`` folds the complete graph K4
onto a single edge. With unit weights both curvatures drop. Once every
edge of the quotient carries the total weight of the edges folded onto
it, neither curvature can go down, which we check on the shipped list of
quotient pairs.
"""

from curvachay import parse_presentation
from curvachay.sweeps import monotonicity_pairs
from curvachay.theorems import monotonicity_check


def headline():
    p = parse_presentation("group <a,b | a^4, b^-1 a^2>")
    rep = monotonicity_check(p, p.with_relators([p.word("a^2")]), name="K4 -> K2")
    unweighted = next(r for r in rep.records if r.claim == "unweighted comparison")
    print("K4 -> K2 with unit weights:")
    print(f"    before: {unweighted.rhs}")
    print(f"    after:  {unweighted.lhs}")
    print(f"adapted weights on the quotient: {rep.weights}")
    for r in rep.records:
        if r.claim in ("BE monotone", "OR monotone"):
            print(f"    {r.claim:12s} {r.witness_ref:8s} {r.rhs} -> {r.lhs}")
            break


def table():
    print()
    print(f"{'pair':28s} {'sizes':>9s}  {'BE ok':>6s} {'OR ok':>6s}  unit weights")
    for name, p, p2 in monotonicity_pairs():
        rep = monotonicity_check(p, p2, name=name)
        be = sum(r.claim == "BE monotone" and r.status == "ok" for r in rep.records)
        orc = sum(r.claim == "OR monotone" and r.status == "ok" for r in rep.records)
        drop = "drops" if rep.unweighted_decrease else "-"
        print(f"{name:28s} {rep.sizes[0]:>4d}->{rep.sizes[1]:<4d} {be:>6d} {orc:>6d}  {drop}")


if __name__ == "__main__":
    headline()
    table()
