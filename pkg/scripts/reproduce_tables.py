"""Print the gamma tables for simple singularities, ordinary multiple points and the SQH examples.

Usage: python3 scripts/reproduce_tables.py [--seed N] [--alphas 0,1/3,1/2,1]
"""
import argparse
from fractions import Fraction

from gamma_sing.gamma import GammaQuery, Interval, SearchBudget, gamma_star_search, tau_ci_search
from gamma_sing.invariants import SingularitySpec
from gamma_sing.poly import format_polynomial, x, y


def fmt(v):
    if isinstance(v, Interval):
        return f"[{v.lo}, {v.hi}]"
    return "-" if v is None else str(v)


def row(spec, alpha, budget):
    r = gamma_star_search(GammaQuery(alpha, spec, "es", budget))
    gens = ", ".join(format_polynomial(g) for g in r.witness_ideal.generators)
    print(f"{spec.name:<34} {str(alpha):>4}  {str(r.gamma_value):>9}  {fmt(r.closed_form):>14}  "
          f"{r.status:<18} <{gens}>")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--alphas", default="0,1/3,1/2,1")
    args = ap.parse_args()
    budget = SearchBudget(seed=args.seed)
    alphas = [Fraction(a) for a in args.alphas.split(",")]

    specs = ([SingularitySpec.A(k) for k in range(1, 11)]
             + [SingularitySpec.D(k) for k in range(4, 11)]
             + [SingularitySpec.E(k) for k in (6, 7, 8)]
             + [SingularitySpec.M(k) for k in range(3, 9)]
             + [SingularitySpec.sqh(q - 1, q, x ** q - y ** (q - 1)) for q in (5, 8, 12)]
             + [SingularitySpec.sqh(5, 7, x ** 7 - y ** 5),
                SingularitySpec.sqh(3, 13, x ** 13 - y ** 3),
                SingularitySpec.sqh(3, 12, "y^3 - 3*x^8*y + 3*x^12"),
                SingularitySpec.sqh(3, 7, "7*y^3 + 15*x^7 - 21*x^5*y")])
    print(f"{'class':<34} {'a':>4}  {'gamma':>9}  {'closed form':>14}  {'status':<18} witness")
    for s in specs:
        for a in alphas:
            row(s, a, budget)

    print("\ntau_ci of ordinary multiple points")
    for m in range(2, 10):
        tau, I = tau_ci_search(GammaQuery(0, SingularitySpec.M(m), "es", budget))
        print(f"M_{m}: {tau}  <{', '.join(format_polynomial(g) for g in I.generators)}>")


if __name__ == "__main__":
    main()
