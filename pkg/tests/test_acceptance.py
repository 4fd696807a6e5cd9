"""Acceptance criteria 1-7. Each test prints exactly one PASS/FAIL line.

Expected values are written out from the closed formulas here, not taken from the
engine's own closed-form registry.
"""
import random
import subprocess
import sys
from fractions import Fraction

import pytest

from gamma_sing import audit
from gamma_sing import gamma as engine
from gamma_sing.gamma import MATCHES, GammaQuery, gamma_star_search, sandwich_check, tau_ci_search
from gamma_sing.invariants import (
    SingularitySpec, delta, equisingularity_ideal, intersection_multiplicity, kappa,
    tjurina_ideal,
)
from gamma_sing.poly import DS, LS, MonomialOrdering, Polynomial, weighted_order, x, y
from gamma_sing.stdbasis import (
    Ideal, iarrobino_lower_bound, is_complete_intersection, min_generators,
    power_of_maximal_ideal,
)

ALPHAS = [Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(1)]
MONOTONE_ALPHAS = [Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1)]

A_SPECS = [SingularitySpec.A(k) for k in range(1, 11)]
D_SPECS = [SingularitySpec.D(k) for k in range(4, 11)]
E_SPECS = [SingularitySpec.E(k) for k in (6, 7, 8)]
M_SPECS = [SingularitySpec.M(k) for k in range(3, 9)]
SQH_SPECS = ([SingularitySpec.sqh(q - 1, q, x ** q - y ** (q - 1)) for q in (5, 8, 12)]
             + [SingularitySpec.sqh(5, 7, x ** 7 - y ** 5),
                SingularitySpec.sqh(3, 13, x ** 13 - y ** 3),
                SingularitySpec.sqh(3, 12, "y^3 - 3*x^8*y + 3*x^12"),
                SingularitySpec.sqh(3, 7, "7*y^3 + 15*x^7 - 21*x^5*y")])


@pytest.fixture
def verdict(capsys):
    def emit(n, failures, detail=""):
        status = "PASS" if not failures else "FAIL"
        shown = "; ".join(failures[:6]) + (" ..." if len(failures) > 6 else "")
        with capsys.disabled():
            print(f"\nACCEPTANCE {n}: {status} {detail}{' | ' + shown if failures else ''}")
        assert not failures, failures
    return emit


def fresh_caches():
    engine._least_intersection.cache_clear()
    engine._candidates.cache_clear()


# ---------------------------------------------------------------- 1

def test_criterion_1_simple_table(verdict):
    failures = []
    for s in A_SPECS + D_SPECS + E_SPECS:
        k = s.k
        for a in ALPHAS:
            if s.kind == "A":
                expected = (k + a) ** 2
            elif s.kind == "D":
                expected = max((k + 2 * a) ** 2 / 2, (k - 2 + a) ** 2)
            else:
                expected = (k + 2 * a) ** 2 / 2
            r = gamma_star_search(GammaQuery(a, s))
            if r.gamma_value != expected or r.status != MATCHES:
                failures.append(f"{s.name} a={a}: {r.gamma_value} ({r.status}) != {expected}")
    verdict(1, failures, "simple singularities A_1..A_10, D_4..D_10, E_6..E_8")


# ---------------------------------------------------------------- 2

def test_criterion_2_ordinary_multiple_points(verdict):
    failures = []
    for s in M_SPECS:
        k = s.k
        tau, _ = tau_ci_search(GammaQuery(0, s))
        witness = Ideal([y ** (k - 1), x ** 2])
        for a in ALPHAS:
            r = gamma_star_search(GammaQuery(a, s))
            expected = 2 * (k - 1 + a) ** 2
            if r.gamma_value != expected:
                failures.append(f"{s.name} a={a}: {r.gamma_value} != {expected}")
            if r.witness_ideal is None or not r.witness_ideal.equals(witness):
                failures.append(f"{s.name} a={a}: witness differs from <y^{k - 1}, x^2>")
            if not r.gamma_value > (1 + a) ** 2 * tau:
                failures.append(f"{s.name} a={a}: not above (1+a)^2 tau_ci")
    verdict(2, failures, "ordinary multiple points M_3..M_8")


# ---------------------------------------------------------------- 3

def test_criterion_3_tau_ci(verdict):
    failures = []
    for m in range(2, 10):
        if m == 2:
            expected = 1
        elif m % 2:
            expected = Fraction((m + 1) ** 2, 4)
        else:
            expected = Fraction(m * m + 2 * m, 4)
        tau, I = tau_ci_search(GammaQuery(0, SingularitySpec.M(m)))
        if tau != expected:
            failures.append(f"M_{m}: {tau} != {expected}")
        elif not all(len(g) == 1 for g in I.generators):
            failures.append(f"M_{m}: witness is not a monomial complete intersection")
    verdict(3, failures, "tau_ci of M_2..M_9")


# ---------------------------------------------------------------- 4

def test_criterion_4_sqh_examples(verdict):
    failures = []
    # (a)
    for q in (5, 8, 12):
        s = SingularitySpec.sqh(q - 1, q, x ** q - y ** (q - 1))
        W = Ideal([x ** 3, y ** (q - 2)])
        if W.colength != 3 * q - 6:
            failures.append(f"(a) q={q}: colength {W.colength}")
        if intersection_multiplicity(s.representative, x ** 3) != 3 * q - 3:
            failures.append(f"(a) q={q}: i(f, x^3) != {3 * q - 3}")
        if not W.contains_ideal(equisingularity_ideal(s)):
            failures.append(f"(a) q={q}: witness does not contain I^es")
        for a in ALPHAS:
            r = gamma_star_search(GammaQuery(a, s))
            if r.gamma_value < 3 * (q - 2 + a) ** 2:
                failures.append(f"(a) q={q} a={a}: {r.gamma_value} < {3 * (q - 2 + a) ** 2}")
    # (b)
    s = SingularitySpec.sqh(5, 7, x ** 7 - y ** 5)
    if not Ideal([y ** 2, x ** 6]).contains_ideal(equisingularity_ideal(s)):
        failures.append("(b): witness does not contain I^es")
    for a in ALPHAS:
        r = gamma_star_search(GammaQuery(a, s))
        if r.gamma_value < 2 * (6 + a) ** 2:
            failures.append(f"(b) a={a}: {r.gamma_value} < {2 * (6 + a) ** 2}")
    # (c)
    s = SingularitySpec.sqh(3, 13, x ** 13 - y ** 3)
    if not Ideal([x ** 12, y]).contains_ideal(equisingularity_ideal(s)):
        failures.append("(c): witness does not contain I^es")
    for a in ALPHAS:
        r = gamma_star_search(GammaQuery(a, s))
        if r.gamma_value != (12 + a) ** 2:
            failures.append(f"(c) a={a}: {r.gamma_value} != {(12 + a) ** 2}")
    # (d)
    s = SingularitySpec.sqh(3, 12, "y^3 - 3*x^8*y + 3*x^12")
    W = Ideal([y - x ** 4, x ** 11])
    if intersection_multiplicity(s.representative, y - x ** 4) != 12 or W.colength != 11:
        failures.append("(d): witness data")
    for a in ALPHAS:
        r = gamma_star_search(GammaQuery(a, s))
        if r.gamma_value != (11 + a) ** 2:
            failures.append(f"(d) a={a}: {r.gamma_value} != {(11 + a) ** 2}")
    # (e)
    s = SingularitySpec.sqh(3, 7, "7*y^3 + 15*x^7 - 21*x^5*y")
    I = equisingularity_ideal(s)
    if I.colength != 11 or min_generators(I) != 3:
        failures.append(f"(e): colength {I.colength}, generators {min_generators(I)}")
    g0 = gamma_star_search(GammaQuery(0, s)).gamma_value
    if g0 > 25:
        failures.append(f"(e): gamma_0 = {g0} > 25")
    verdict(4, failures, "semiquasihomogeneous examples (a)-(e)")


# ---------------------------------------------------------------- 5

def test_criterion_5_hilbert_samuel_goldens(verdict):
    failures = []

    def check(name, I, mult=None, degbound=None, dim=None):
        hs = I.hilbert_samuel
        for label, want, got in (("mult", mult, hs.mult), ("degbound", degbound, hs.degbound),
                                 ("dim", dim, hs.colength)):
            if want is not None and got != want:
                failures.append(f"{name} {label} {got} != {want}")

    for k in range(1, 9):
        check(f"A_{k}", tjurina_ideal(SingularitySpec.A(k).representative), 1, k, k)
    for k in range(4, 11):
        check(f"D_{k}", tjurina_ideal(SingularitySpec.D(k).representative), 2, k - 1, k)
    for k, D in ((6, 4), (7, 5), (8, 6)):
        check(f"E_{k}", tjurina_ideal(SingularitySpec.E(k).representative), 2, D, k)
    hs = Ideal(["x^3", "x^2*y", "y^3"]).hilbert_samuel
    if hs.h0 != (1, 2, 3, 1):
        failures.append(f"<x^3,x^2y,y^3> h0 {hs.h0}")
    for k in range(1, 7):
        check(f"m^{k}", power_of_maximal_ideal(k), dim=k * (k + 1) // 2)
    verdict(5, failures, "Hilbert-Samuel goldens")


# ---------------------------------------------------------------- 6

def _random_ideal(rng):
    gens = []
    for _ in range(rng.randint(1, 3)):
        terms = {}
        for _ in range(rng.randint(1, 4)):
            d = rng.randint(1, 5)
            a = rng.randint(0, d)
            terms[(a, d - a)] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        gens.append(Polynomial(terms))
    gens += list(power_of_maximal_ideal(6).generators)
    return [g for g in gens if not g.is_zero()]


def _monomial_h0(staircase, D):
    return tuple(sum(1 for a in range(d + 1)
                     if not any(a >= m[0] and d - a >= m[1] for m in staircase))
                 for d in range(D))


def _slope_properties(hs):
    """Slope properties checked directly, independent of HilbertSamuelData.violations."""
    bad = []
    h0, m, D = hs.h0, hs.mult, hs.degbound
    if any(h0[d] != d + 1 for d in range(min(m, len(h0)))):
        bad.append("h0(d) != d+1 below mult")
    if any(h0[d] > h0[d - 1] for d in range(max(m, 1), len(h0))):
        bad.append("h0 increases after mult")
    if max(h0, default=0) > m:
        bad.append("h0 > mult")
    if sum(h0) != hs.colength:
        bad.append("sum h0 != colength")
    if len(h0) != D or 0 in h0:
        bad.append("h0 support != [0, degbound)")
    return bad


def _mult_and_degbound(I):
    J = I.with_ordering(DS)
    mult = min(m[0] + m[1] for m in J.staircase)
    D = 0
    while not all(J.contains(Polynomial.monomial(a, D - a)) for a in range(D + 1)):
        D += 1
    return mult, D


def test_criterion_6_property_suites(verdict):
    failures = []
    fresh_caches()
    with audit.recording() as log:
        # random corpus: ordering independence, DS leading ideals, Iarrobino
        rng = random.Random(2024)
        orders = (LS, DS, MonomialOrdering.weighted(2, 3), MonomialOrdering.weighted(5, 1))
        for n in range(200):
            gens = _random_ideal(rng)
            values = {Ideal(gens, o).colength for o in orders}
            if len(values) != 1:
                failures.append(f"ordering dependence on corpus ideal {n}: {values}")
            I = Ideal(gens, DS)
            hs = I.hilbert_samuel
            if hs.degbound > 6:
                failures.append(f"corpus ideal {n} degbound {hs.degbound}")
            if _monomial_h0(I.staircase, hs.degbound) != hs.h0:
                failures.append(f"HS differs from the DS leading ideal on corpus ideal {n}")
            for d in range(hs.degbound):
                if Ideal(gens + list(power_of_maximal_ideal(d + 1).generators), LS).colength != hs.h1[d]:
                    failures.append(f"h1({d}) of corpus ideal {n}")
                    break
            if iarrobino_lower_bound(I) > min_generators(I):
                failures.append(f"Iarrobino bound exceeds generators on corpus ideal {n}")

        # strict alpha-monotonicity and the sandwich
        for s in A_SPECS + D_SPECS + E_SPECS + M_SPECS:
            values = [gamma_star_search(GammaQuery(a, s)).gamma_value for a in MONOTONE_ALPHAS]
            if not all(u < v for u, v in zip(values, values[1:])):
                failures.append(f"alpha-monotonicity {s.name}: {values}")
        for s in A_SPECS + D_SPECS + E_SPECS + M_SPECS + SQH_SPECS:
            for a in ALPHAS:
                sw = sandwich_check(s, a)
                if not sw.ok:
                    failures.append(f"sandwich {s.name} a={a}: {sw.failures}")

        # inclusion monotonicity of h0 between I^es and every visited candidate
        for s in A_SPECS + D_SPECS + E_SPECS + M_SPECS + SQH_SPECS:
            h_star = equisingularity_ideal(s).hilbert_samuel.h0
            for c in engine._candidates(s, "es", engine.DEFAULT_BUDGET):
                h = c.ideal.hilbert_samuel.h0
                if any(u > v for u, v in zip(h, h_star)) or len(h) > len(h_star):
                    failures.append(f"h0 not monotone under inclusion for {s.name}/{c.label}")

    for e in log["hilbert_samuel"]:
        for b in _slope_properties(e["data"]):
            failures.append(f"slope property: {b} for {e['ideal']}")
    if not log["pair"]:
        failures.append("no (I, g) pairs were visited")
    for e in log["pair"]:
        if not e["i"] > e["colength"]:
            failures.append(f"pair with i = {e['i']} <= colength {e['colength']}")
    if not log["ci_ideal"]:
        failures.append("no complete intersections were visited")
    seen = set()
    for e in log["ci_ideal"]:
        I = e["ideal"]
        key = tuple(sorted(str(g) for g in I.generators))
        if key in seen:
            continue
        seen.add(key)
        m, D = _mult_and_degbound(I)
        if not is_complete_intersection(I) or I.colength > (D - m + 1) * m:
            failures.append(f"degree bound fails for {I}")

    # kappa, delta, tau_es
    for s in A_SPECS + D_SPECS + E_SPECS:
        want = s.k + 1 if s.kind == "A" else s.k + 2
        if kappa(s.representative) != want:
            failures.append(f"kappa {s.name} != {want}")
    for s in A_SPECS + D_SPECS + E_SPECS + [SingularitySpec.M(2)] + M_SPECS + SQH_SPECS:
        d = delta(s)
        tau_es = equisingularity_ideal(s).colength
        kap = kappa(s.representative)
        if not kap <= 2 * d:
            failures.append(f"kappa <= 2 delta fails for {s.name}: {kap} > {2 * d}")
        node = (s.kind, s.k) in (("A", 1), ("M", 2))
        if node and not d == tau_es == 1:
            failures.append(f"node {s.name}: delta {d}, tau_es {tau_es}")
        if not node and not d < tau_es:
            failures.append(f"delta < tau_es fails for {s.name}")

    # intersection multiplicity against the weighted order
    rng = random.Random(77)
    for s in SQH_SPECS:
        f, w = s.representative, s.weights
        for _ in range(100):
            terms = {}
            for _ in range(rng.randint(1, 3)):
                m = (rng.randint(0, w.q), rng.randint(0, w.p))
                if m != (0, 0):
                    terms[m] = rng.choice((-3, -2, -1, 1, 2, 3))
            g = Polynomial(terms)
            if g.is_zero():
                continue
            if intersection_multiplicity(f, g) < weighted_order(g, w):
                failures.append(f"i(f, {g}) below weighted order for {s.name}")
    verdict(6, failures, "property suites")


# ---------------------------------------------------------------- 7

def test_criterion_7_determinism(verdict):
    cmd = [sys.executable, "-m", "gamma_sing.cli", "verify-paper", "--seed", "42"]
    runs = [subprocess.run(cmd, capture_output=True, timeout=600) for _ in range(2)]
    failures = []
    if runs[0].stdout != runs[1].stdout:
        failures.append("stdout differs between runs")
    if not runs[0].stdout.startswith(b"{"):
        failures.append(f"no report produced (exit {runs[0].returncode})")
    if runs[0].returncode != runs[1].returncode:
        failures.append("exit codes differ")
    verdict(7, failures, "verify-paper --seed 42 twice, byte-identical")
