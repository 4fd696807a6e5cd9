"""lambda_alpha, gamma_alpha and the search for complete intersections certifying gamma*_alpha.

For a fixed ideal I of colength d the function

    i  ->  (alpha*i + (1-alpha)*d)^2 / (i - d)

is decreasing on [d+1, 2d], so gamma_alpha(f; I) is decided by the smallest
intersection multiplicity i(f, g) over g in I. That minimum is attained by a
generic constant combination of the generators (on every branch of f the
order of a generic combination is the least order of a generator), which is
what the engine samples.

The supremum over all complete intersections containing I^*(f) is out of
reach, so searched values are certified lower bounds. Closed forms known for a
class are used as oracles: a searched value above one is a bug.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

from . import audit
from .invariants import (
    SingularitySpec, UnsupportedClass, equisingularity_ideal, intersection_multiplicity,
    kappa, tjurina_ideal,
)
from .poly import DS, Polynomial, parse, x, y
from .stdbasis import Ideal, NotZeroDimensional, deg_fp_bound, is_complete_intersection

__all__ = [
    "SearchBudget", "GammaQuery", "GammaReport", "Interval", "MembershipViolation",
    "InfiniteIntersection", "lambda_alpha", "gamma_alpha_ideal", "gamma_star_search",
    "tau_ci_search", "closed_form_gamma", "sandwich_check", "SandwichReport",
    "MATCHES", "LOWER_ONLY", "WITHIN_UPPER",
]

MATCHES = "MatchesClosedForm"
LOWER_ONLY = "LowerBoundOnly"
WITHIN_UPPER = "WithinUpperBound"


class MembershipViolation(ValueError):
    pass


class InfiniteIntersection(ValueError):
    pass


@dataclass(frozen=True)
class SearchBudget:
    """Knobs of the candidate enumeration; everything random is drawn from ``seed``."""
    pool_size: int = 12
    coefficients: tuple = (1, -1, 2, -2, 3, -3)
    random_pairs: int = 24
    g_samples: int = 3
    seed: int = 0


DEFAULT_BUDGET = SearchBudget()


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    def __contains__(self, v) -> bool:
        return self.lo <= v <= self.hi


ClosedForm = Union[Fraction, Interval, None]


@dataclass(frozen=True)
class GammaQuery:
    alpha: Fraction
    spec: SingularitySpec
    flavor: str = "es"
    budget: SearchBudget = DEFAULT_BUDGET

    def __post_init__(self):
        a = Fraction(self.alpha)
        object.__setattr__(self, "alpha", a)
        if not 0 <= a <= 1:
            raise ValueError(f"alpha must lie in [0, 1], got {a}")
        if self.flavor not in ("ea", "es"):
            raise ValueError(f"flavor must be 'ea' or 'es', got {self.flavor!r}")


@dataclass
class GammaReport:
    alpha: Fraction
    gamma_value: Fraction
    witness_ideal: Optional[Ideal]
    witness_g: Optional[Polynomial]
    lam: Optional[Fraction]
    colength: int
    intersection: Optional[int]
    closed_form: ClosedForm = None
    status: str = LOWER_ONLY
    source: str = ""
    candidates: int = 0
    spec: Optional[SingularitySpec] = None
    flavor: str = "es"


# ---------------------------------------------------------------- lambda / gamma

def _check_alpha(alpha) -> Fraction:
    alpha = Fraction(alpha)
    if not 0 <= alpha <= 1:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    return alpha


def _lambda(i: int, d: int, alpha: Fraction) -> Fraction:
    return (alpha * i + (1 - alpha) * d) ** 2 / (i - d)


def _gamma(d: int, i: Optional[int], alpha: Fraction) -> tuple:
    """(gamma_alpha, lambda or None) from colength d and the least i over the ideal."""
    base = (1 + alpha) ** 2 * d
    if i is None or i > 2 * d:
        return base, None
    lam = _lambda(i, d, alpha)
    return max(base, lam), lam


def _record_pair(f, I, g, i, d):
    if not i > d:
        raise AssertionError(f"i(f, g) = {i} <= colength {d} for I = {I}, g = {g}")
    audit.record("pair", f=f, ideal=I, g=g, i=i, colength=d)


def lambda_alpha(f, I: Ideal, g, alpha) -> Fraction:
    """(alpha*i + (1-alpha)*d)^2 / (i - d) with i = i(f, g), d = colength(I)."""
    f = parse(f) if isinstance(f, str) else f
    g = parse(g) if isinstance(g, str) else g
    alpha = _check_alpha(alpha)
    if I.is_unit:
        raise MembershipViolation("I is the unit ideal")
    if not I.contains(g):
        raise MembershipViolation(f"{g} is not in {I}")
    i = intersection_multiplicity(f, g)
    if i == math.inf:
        raise InfiniteIntersection(f"f and {g} share a component")
    d = I.colength
    _record_pair(f, I, g, i, d)
    return _lambda(i, d, alpha)


def _random_combination(gens, rng: random.Random) -> Polynomial:
    out = Polynomial()
    for g in gens:
        c = Fraction(rng.randint(1, 97) * rng.choice((1, -1)), rng.randint(1, 97))
        out = out + g * c
    return out


def _g_candidates(I: Ideal, budget: SearchBudget, thorough: bool) -> list:
    gens = list(I.generators)
    cands = list(gens)
    if thorough:
        cands += [g for g in I.standard_basis if g not in cands]
        ratios = sorted({Fraction(a, b) for a in budget.coefficients for b in budget.coefficients},
                        key=lambda r: (abs(r), r))
        for j in range(len(gens)):
            for k in range(j + 1, len(gens)):
                cands += [gens[j] + gens[k] * r for r in ratios]
    rng = random.Random(f"{budget.seed}:{I}")
    cands += [_random_combination(gens, rng) for _ in range(budget.g_samples)]
    return cands


@lru_cache(maxsize=8192)
def _least_intersection(f: Polynomial, gens: tuple, budget: SearchBudget, thorough: bool):
    """(i_min, g, candidates tried) over the g-candidates of <gens>; i_min is None if all infinite."""
    I = Ideal(gens)
    best_i, best_g = None, None
    cands = _g_candidates(I, budget, thorough)
    d = I.colength
    for g in cands:
        if g.is_zero():
            continue
        i = intersection_multiplicity(f, g)
        if i == math.inf:
            continue
        _record_pair(f, I, g, i, d)
        if best_i is None or i < best_i:
            best_i, best_g = i, g
    return best_i, best_g, len(cands)


def gamma_alpha_ideal(f, I: Ideal, alpha, budget: SearchBudget = DEFAULT_BUDGET,
                      thorough: bool = True) -> GammaReport:
    """gamma_alpha(f; I) = max((1+alpha)^2 d, lambda over g in I with i(f,g) <= 2d).

    The g-candidates are the generators, the standard basis, two-term
    combinations of generators with ratios from the budget's coefficient set,
    and seeded random combinations of all generators. The value is exact once
    the least i(f, g) over I is among them, which a random combination of the
    generators achieves with probability one.
    """
    f = parse(f) if isinstance(f, str) else f
    alpha = _check_alpha(alpha)
    if I.is_unit:
        raise MembershipViolation("I must lie in the maximal ideal")
    d = I.colength
    i, g, n = _least_intersection(f, I.generators, budget, thorough)
    value, lam = _gamma(d, i, alpha)
    use_g = lam is not None and lam > (1 + alpha) ** 2 * d
    return GammaReport(
        alpha=alpha, gamma_value=value, witness_ideal=I,
        witness_g=g if use_g else None, lam=lam if use_g else None,
        colength=d, intersection=i, source="given", candidates=n)


# ---------------------------------------------------------------- closed forms

def _registered_f(spec: SingularitySpec, text: str, p: int, q: int) -> bool:
    return (spec.kind == "SQH" and (spec.weights.p, spec.weights.q) == (p, q)
            and spec.poly == parse(text))


def _sqh_bounds(spec: SingularitySpec, alpha: Fraction) -> Interval:
    p, q = spec.weights.p, spec.weights.q
    f = spec.poly
    s = q // p
    lows = [Fraction((q - (1 - alpha) * s) ** 2, s), (1 + alpha) ** 2 * (q - s)]
    # families with explicit witnesses
    if p == q - 1 and f == x ** q - y ** (q - 1):
        lows.append(3 * (q - 2 + alpha) ** 2)
    if f == x ** q - y ** p and Fraction(q, p) < 2:
        lows.append(2 * (q - 1 + alpha) ** 2)
    if not any(b == 1 and a <= q - 2 for a, b in f.terms):
        lows.append((q - 1 + alpha) ** 2)
    if _registered_f(spec, "y^3 - 3*x^8*y + 3*x^12", 3, 12):
        lows.append((11 + alpha) ** 2)

    ratio = Fraction(q, p)
    highs = []
    if q >= 39:
        highs.append(3 * (q - 2 + alpha) ** 2)
    if 1 < ratio < 2:
        highs.append(3 * (q - 1 + alpha) ** 2)
    if 2 <= ratio < 4:
        highs.append(2 * (q - 1 + alpha) ** 2)
    if ratio >= 4:
        highs.append((q - 1 + alpha) ** 2)
    if alpha == 0 and _registered_f(spec, "7*y^3 + 15*x^7 - 21*x^5*y", 3, 7):
        highs.append(Fraction(25))
    return Interval(max(lows), min(highs))


def closed_form_gamma(spec: SingularitySpec, alpha, flavor: str = "es") -> ClosedForm:
    """Known value or [lower, upper] interval for gamma*_alpha; None where nothing is known."""
    alpha = _check_alpha(alpha)
    k = spec.k
    if spec.kind == "A":
        return (k + alpha) ** 2
    if spec.kind == "D":
        return max((k + 2 * alpha) ** 2 / 2, (k - 2 + alpha) ** 2)
    if spec.kind == "E":
        return (k + 2 * alpha) ** 2 / 2
    if flavor != "es":
        return None
    if spec.kind == "M":
        return 2 * (k - 1 + alpha) ** 2 if k >= 3 else None
    if spec.kind == "SQH":
        p, q = spec.weights.p, spec.weights.q
        if not q > p >= 3:
            return None
        iv = _sqh_bounds(spec, alpha)
        return iv.lo if iv.is_exact else iv
    raise UnsupportedClass(str(spec))


# ---------------------------------------------------------------- candidate enumeration

def _monomial(a: int, b: int) -> Polynomial:
    return Polynomial.monomial(a, b)


def _in_monomial_ci(g: Polynomial, a: int, b: int) -> bool:
    return all(m[0] >= a or m[1] >= b for m in g.terms)


def _witness_families(spec: SingularitySpec, budget: SearchBudget) -> list:
    k = spec.k
    if spec.kind == "A":
        return [("family:A", [x, y ** k])]
    if spec.kind == "D":
        return [("family:D", [x, y ** (k - 2)])]
    if spec.kind == "M":
        return [("family:M", [y ** (k - 1), x ** 2])]
    if spec.kind != "SQH":
        return []
    p, q = spec.weights.p, spec.weights.q
    s = q // p
    fams = [
        ("family:sqh-lower", [y, x ** (q - s)]),
        ("family:x3", [x ** 3, y ** (q - 2)]),
        ("family:y2", [y ** 2, x ** (q - 1)]),
        ("family:y", [x ** (q - 1), y]),
    ]
    if q % p == 0:
        for c in budget.coefficients:
            fams.append((f"family:tangent({c})", [y - x ** s * c, x ** (q - 1)]))
    return fams


def _pool(I_star: Ideal, D: int, budget: SearchBudget, rng: random.Random) -> list:
    pool = list(I_star.standard_basis[: budget.pool_size])
    low = [(a, b) for t in range(1, min(D, 4) + 1) for a in range(t + 1) for b in [t - a]]
    pool += [_monomial(a, b) for a, b in low]
    for _ in range(budget.pool_size):
        (a1, b1), (a2, b2) = rng.sample(low, 2)
        pool.append(_monomial(a1, b1) + _monomial(a2, b2) * rng.choice(budget.coefficients))
    return pool


def _star_ideal(spec: SingularitySpec, flavor: str) -> Ideal:
    if flavor == "ea":
        return tjurina_ideal(spec.representative)
    return equisingularity_ideal(spec)


def _two_generators(I: Ideal) -> list:
    """A generating pair of I when one exists among its generators and standard basis."""
    elems = list(dict.fromkeys(list(I.generators) + list(I.with_ordering(DS).standard_basis)))
    for i, g in enumerate(elems):
        for h in elems[i + 1:]:
            J = Ideal([g, h])
            if J.is_zero_dimensional() and J.colength == I.colength and I.contains_ideal(J):
                return [g, h]
    return list(I.generators)


@dataclass
class _Candidate:
    index: int
    label: str
    ideal: Ideal
    colength: int


@lru_cache(maxsize=256)
def _candidates(spec: SingularitySpec, flavor: str, budget: SearchBudget) -> tuple:
    """Deterministic list of complete intersections containing I^*(f)."""
    I_star = _star_ideal(spec, flavor)
    if I_star.is_unit:
        return ()
    D = I_star.degbound
    raw = []
    raw.append(("I*", _two_generators(I_star)))
    star_gens = I_star.generators
    for a in range(1, D + 2):
        for b in range(1, D + 2):
            if all(_in_monomial_ci(g, a, b) for g in star_gens):
                raw.append((f"monomial({a},{b})", [x ** a, y ** b]))
    raw += _witness_families(spec, budget)
    rng = random.Random(f"pairs:{budget.seed}:{spec.name}:{flavor}")
    pool = _pool(I_star, D, budget, rng)
    for t in range(budget.random_pairs):
        g1, g2 = rng.sample(pool, 2)
        raw.append((f"random({t})", [g1, g2]))

    out, seen = [], set()
    for label, gens in raw:
        key = tuple(sorted(str(g) for g in gens))
        if key in seen:
            continue
        seen.add(key)
        I = Ideal(gens)
        if I.is_unit or not I.is_zero_dimensional():
            continue
        if not is_complete_intersection(I) or not I.contains_ideal(I_star):
            continue
        deg_fp_bound(I)  # asserts the colength bound and records the ideal
        out.append(_Candidate(len(out), label, I, I.colength))
    return tuple(out)


def _verify_witness(f, I_star: Ideal, I: Ideal, g: Optional[Polynomial], d: int, i) -> None:
    """Independent re-check under ds: CI property, containment, membership, numbers."""
    J = Ideal(I.generators, DS)
    problems = []
    if J.colength != d:
        problems.append("colength")
    if not is_complete_intersection(J):
        problems.append("complete intersection")
    if not J.contains_ideal(Ideal(I_star.generators, DS)):
        problems.append("containment")
    if g is not None:
        if not J.contains(g):
            problems.append("membership of g")
        if intersection_multiplicity(f, g) != i:
            problems.append("intersection multiplicity")
    if problems:
        raise AssertionError(f"witness {I} failed re-verification: {', '.join(problems)}")


def _status(value: Fraction, cf: ClosedForm) -> str:
    if cf is None:
        return LOWER_ONLY
    if isinstance(cf, Interval):
        if value > cf.hi:
            raise AssertionError(f"searched value {value} exceeds the upper bound {cf.hi}")
        return WITHIN_UPPER if value >= cf.lo else LOWER_ONLY
    if value > cf:
        raise AssertionError(f"searched value {value} exceeds the closed form {cf}")
    return MATCHES if value == cf else LOWER_ONLY


def gamma_star_search(query: GammaQuery) -> GammaReport:
    """Best gamma_alpha(f; I) over the candidate complete intersections I containing I^*(f)."""
    spec, alpha, budget = query.spec, query.alpha, query.budget
    f = spec.representative
    I_star = _star_ideal(spec, query.flavor)
    cands = _candidates(spec, query.flavor, budget)
    best_key, best = (Fraction(0), 0), None
    # visit the most promising candidates first; the bound (d + alpha)^2 dominates
    # both branches of gamma, and strict pruning keeps the winner order-independent
    for c in sorted(cands, key=lambda c: (-c.colength, c.index)):
        if best is not None and (c.colength + alpha) ** 2 < best_key[0]:
            continue
        i, g, _ = _least_intersection(f, c.ideal.generators, budget, False)
        value, lam = _gamma(c.colength, i, alpha)
        key = (value, -c.index)
        if best is None or key > best_key:
            best_key, best = key, (c, i, g, lam)

    cf = closed_form_gamma(spec, alpha, query.flavor)
    if best is None:
        return GammaReport(alpha, Fraction(0), None, None, None, 0, None, cf,
                           _status(Fraction(0), cf), "empty", 0, spec, query.flavor)
    c, i, g, lam = best
    value = best_key[0]
    use_g = lam is not None and lam > (1 + alpha) ** 2 * c.colength
    _verify_witness(f, I_star, c.ideal, g if use_g else None, c.colength, i)
    return GammaReport(
        alpha=alpha, gamma_value=value, witness_ideal=c.ideal,
        witness_g=g if use_g else None, lam=lam if use_g else None,
        colength=c.colength, intersection=i, closed_form=cf,
        status=_status(value, cf), source=c.label, candidates=len(cands),
        spec=spec, flavor=query.flavor)


def tau_ci_search(query: GammaQuery) -> tuple:
    """(largest colength, witness ideal) over the candidate complete intersections."""
    cands = _candidates(query.spec, query.flavor, query.budget)
    if not cands:
        return 0, None
    best = max(cands, key=lambda c: (c.colength, -c.index))
    _verify_witness(query.spec.representative, _star_ideal(query.spec, query.flavor),
                    best.ideal, None, best.colength, None)
    return best.colength, best.ideal


# ---------------------------------------------------------------- sandwich

@dataclass
class SandwichReport:
    alpha: Fraction
    gamma: Fraction
    tau_ci: int
    kappa: int
    lower: Fraction
    upper: Fraction
    kappa_lower: Optional[Fraction]
    strict: Optional[bool]
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def sandwich_check(spec: SingularitySpec, alpha, flavor: str = "es",
                   budget: SearchBudget = DEFAULT_BUDGET, kappa_seed: int = 0) -> SandwichReport:
    """(1+a)^2 tau_ci <= gamma <= (tau_ci + a)^2, plus the kappa refinement."""
    alpha = _check_alpha(alpha)
    q = GammaQuery(alpha, spec, flavor, budget)
    gamma = gamma_star_search(q).gamma_value
    tau, _ = tau_ci_search(q)
    kap = kappa(spec.representative, kappa_seed)
    lower = (1 + alpha) ** 2 * tau
    upper = (tau + alpha) ** 2
    failures = []
    if not lower <= gamma <= upper:
        failures.append(f"gamma {gamma} outside [{lower}, {upper}]")
    kappa_lower, strict = None, None
    if kap <= 2 * tau:
        kappa_lower = _lambda(kap, tau, alpha)
        if gamma < kappa_lower:
            failures.append(f"gamma {gamma} below the kappa bound {kappa_lower}")
    if kap < 2 * tau:
        strict = gamma > lower
        if not strict:
            failures.append(f"gamma {gamma} does not exceed {lower}")
    return SandwichReport(alpha, gamma, tau, kap, lower, upper, kappa_lower, strict, failures)
