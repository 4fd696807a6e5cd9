"""Spot check of the sharp regime for f = x^q - y^(q-1): the witness <x^3, y^(q-2)> meets
the upper bound 3(q-2+a)^2 once q >= 39, so gamma is exact there.

The witness is checked directly (containment, colength, intersection multiplicity, gamma of
the fixed ideal). Pass --search to also run the full candidate search, which is slow for large q.

Usage: python3 scripts/example_a_spot_check.py [--q 39] [--search]
"""
import argparse
import time
from fractions import Fraction

from gamma_sing.gamma import GammaQuery, Interval, closed_form_gamma, gamma_alpha_ideal, gamma_star_search
from gamma_sing.invariants import SingularitySpec, equisingularity_ideal, intersection_multiplicity
from gamma_sing.poly import x, y
from gamma_sing.stdbasis import Ideal

ALPHAS = (Fraction(0), Fraction(1, 2), Fraction(1))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, default=39)
    ap.add_argument("--search", action="store_true")
    args = ap.parse_args()
    q = args.q
    t0 = time.perf_counter()
    spec = SingularitySpec.sqh(q - 1, q, x ** q - y ** (q - 1))
    f = spec.representative
    W = Ideal([x ** 3, y ** (q - 2)])
    print(f"q = {q}")
    print(f"colength <x^3, y^{q - 2}> = {W.colength} (expected {3 * q - 6})")
    print(f"i(f, x^3) = {intersection_multiplicity(f, x ** 3)} (expected {3 * q - 3})")
    print(f"contains I^es: {W.contains_ideal(equisingularity_ideal(spec))}")
    for a in ALPHAS:
        v = gamma_alpha_ideal(f, W, a, thorough=False).gamma_value
        cf = closed_form_gamma(spec, a)
        hi = cf.hi if isinstance(cf, Interval) else cf
        line = f"a = {a}: gamma(f; W) = {v}, table upper bound = {hi}, sharp = {v == hi}"
        if args.search:
            line += f", searched = {gamma_star_search(GammaQuery(a, spec)).gamma_value}"
        print(line)
    print(f"elapsed {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
