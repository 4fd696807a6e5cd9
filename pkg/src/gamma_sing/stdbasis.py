"""Standard bases, colength and Hilbert-Samuel data of zero-dimensional ideals in Q{x,y}.

All computations are exact linear algebra in the finite-dimensional algebra
R/m^N. The truncation degree N is not trusted: the Hilbert-Samuel slope is
read off a ``ds`` echelon form, and the first degree d < N with H0(d) = 0
certifies m^d in I (Nakayama), after which every ordering is handled modulo
m^d without loss.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Optional, Sequence

import gmpy2

from . import audit
from .poly import DS, LS, Monomial, MonomialOrdering, Polynomial, format_polynomial

__all__ = [
    "NotZeroDimensional", "NotCompleteIntersection", "Ideal", "HilbertSamuelData",
    "normal_form", "standard_basis", "colength", "hilbert_samuel", "min_generators",
    "is_complete_intersection", "iarrobino_lower_bound", "deg_fp_bound",
    "ideal_sum", "ideal_product", "power_of_maximal_ideal", "contains",
    "contains_ideal", "monomial_ideal_colength", "minimalize",
]

DEFAULT_MAX_DEGREE = 64


class NotZeroDimensional(ValueError):
    pass


class NotCompleteIntersection(ValueError):
    pass


# ---------------------------------------------------------------- monomial ideals

def minimalize(monomials: Iterable) -> list:
    """Minimal generators (under divisibility) of a set of monomials, sorted by x-exponent."""
    best: dict = {}
    for a, b in monomials:
        if a not in best or b < best[a]:
            best[a] = b
    out, min_b = [], math.inf
    for a in sorted(best):
        b = best[a]
        if b < min_b:
            out.append(Monomial(a, b))
            min_b = b
    return out


def _in_monomial_ideal(m, gens) -> bool:
    return any(g[0] <= m[0] and g[1] <= m[1] for g in gens)


def monomial_ideal_colength(gens: Iterable) -> float:
    """Number of monomials outside <gens>; inf unless pure powers of x and y occur.

    Direct lattice count, independent of any echelon computation.
    """
    gens = minimalize(gens)
    if not gens or gens[0][0] != 0 or gens[-1][1] != 0:
        return math.inf
    total = 0
    # staircase sorted by a ascending, b descending
    for (a0, b0), (a1, _) in zip(gens, gens[1:]):
        total += (a1 - a0) * b0
    return total


# ---------------------------------------------------------------- echelon kernel

@dataclass
class _Echelon:
    order: MonomialOrdering
    truncation: int
    columns: list            # index -> monomial, index 0 is the largest monomial
    pivots: dict             # column index -> sparse row {col: mpq}, lead coefficient 1
    monomial_gens: list      # minimal monomial generators removed from the column set

    def pivot_monomials(self) -> list:
        return [self.columns[c] for c in self.pivots]

    def row_polynomial(self, col: int, reduce_tail: bool = True) -> Polynomial:
        row = self.pivots[col]
        if not reduce_tail:
            return Polynomial({self.columns[k]: Fraction(int(v.numerator), int(v.denominator))
                               for k, v in row.items()})
        out = {col: gmpy2.mpq(1)}
        work = {k: v for k, v in row.items() if k != col}
        while work:
            k = min(work)
            v = work.pop(k)
            p = self.pivots.get(k)
            if p is None:
                out[k] = v
                continue
            for kk, vv in p.items():
                if kk == k:
                    continue
                nv = work.get(kk, 0) - v * vv
                if nv:
                    work[kk] = nv
                else:
                    work.pop(kk, None)
        return Polynomial({self.columns[k]: Fraction(int(v.numerator), int(v.denominator))
                           for k, v in out.items()})


def _build_echelon(gens: Sequence[Polynomial], order: MonomialOrdering, N: int) -> _Echelon:
    mono = minimalize(next(iter(g.terms)) for g in gens if g.is_monomial())
    others = [g for g in gens if not g.is_monomial() and not g.is_zero()]
    cols = [(a, d - a) for d in range(N) for a in range(d + 1)]
    cols = [m for m in cols if not _in_monomial_ideal(m, mono)]
    cols.sort(key=order.key, reverse=True)
    index = {m: i for i, m in enumerate(cols)}

    rows = []
    for g in others:
        terms = [((a, b), gmpy2.mpq(c.numerator, c.denominator)) for (a, b), c in g.terms.items()]
        ordg = min(a + b for (a, b), _ in terms)
        for d in range(N - ordg):
            for s in range(d + 1):
                t = d - s
                row = {}
                for (a, b), c in terms:
                    k = index.get((a + s, b + t))
                    if k is not None:
                        row[k] = c
                if row:
                    rows.append(row)
    rows.sort(key=min)

    pivots: dict = {}
    ncols = len(cols)
    for row in rows:
        if len(pivots) == ncols:
            break
        while row:
            c = min(row)
            p = pivots.get(c)
            if p is None:
                inv = 1 / row[c]
                pivots[c] = {k: v * inv for k, v in row.items()}
                break
            f = row[c]
            for k, v in p.items():
                nv = row.get(k, 0) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return _Echelon(order, N, cols, pivots, mono)


def _has_common_factor_at_origin(gens: Sequence[Polynomial]) -> bool:
    import sympy
    from .poly import _sympy_expr
    exprs = [_sympy_expr(g)[0] for g in gens if not g.is_zero()]
    if not exprs:
        return True
    X, Y = sympy.symbols("x y")
    g = exprs[0]
    for e in exprs[1:]:
        g = sympy.gcd(g, e)
    poly = sympy.Poly(g, X, Y)
    return poly.total_degree() > 0 and poly.eval({X: 0, Y: 0}) == 0


@dataclass(frozen=True)
class _DsAnalysis:
    echelon: _Echelon
    degbound: int
    h0: tuple


def _initial_truncation(gens: Sequence[Polynomial]) -> int:
    mono = [next(iter(g.terms)) for g in gens if g.is_monomial()]
    xa = min((a for a, b in mono if b == 0), default=None)
    yb = min((b for a, b in mono if a == 0), default=None)
    if xa is not None and yb is not None:
        return max(xa + yb, 2)
    return 8


@lru_cache(maxsize=4096)
def _ds_analysis(gens: tuple, max_degree: int) -> _DsAnalysis:
    gens = tuple(g for g in gens if not g.is_zero())
    if any(g.order == 0 for g in gens):
        # unit ideal
        return _DsAnalysis(_build_echelon((), DS, 0), 0, ())
    if not gens:
        raise NotZeroDimensional("zero ideal")
    N = _initial_truncation(gens)
    checked_gcd = False
    while True:
        N = min(N, max_degree + 1)
        ech = _build_echelon(gens, DS, N)
        in_ideal = [0] * N
        for m in ech.pivot_monomials():
            in_ideal[m[0] + m[1]] += 1
        for d in range(N):
            in_ideal[d] += sum(1 for a in range(d + 1) if _in_monomial_ideal((a, d - a), ech.monomial_gens))
        h0 = [d + 1 - in_ideal[d] for d in range(N)]
        if 0 in h0:
            D = h0.index(0)
            return _DsAnalysis(ech, D, tuple(h0[:D]))
        if N > max_degree:
            raise NotZeroDimensional(
                f"no degree bound <= {max_degree} found for <{', '.join(map(str, gens))}>")
        if not checked_gcd:
            checked_gcd = True
            if _has_common_factor_at_origin(gens):
                raise NotZeroDimensional(
                    f"generators share a component through 0: <{', '.join(map(str, gens))}>")
        N *= 2


@lru_cache(maxsize=4096)
def _echelon_for(gens: tuple, order: MonomialOrdering, max_degree: int) -> _Echelon:
    ds = _ds_analysis(gens, max_degree)
    if order == DS:
        return ds.echelon
    return _build_echelon(tuple(g for g in gens if not g.is_zero()), order, ds.degbound)


# ---------------------------------------------------------------- Hilbert-Samuel

@dataclass(frozen=True)
class HilbertSamuelData:
    """Hilbert-Samuel function h1, its slope h0 (index d), multiplicity and degree bound.

    ``h0`` lists d = 0 .. degbound-1; the slope vanishes from degbound on.
    """
    h1: tuple
    h0: tuple
    mult: int
    degbound: int

    @property
    def colength(self) -> int:
        return sum(self.h0)

    def slope(self, d: int) -> int:
        if d < 0 or d >= len(self.h0):
            return 0
        return self.h0[d]

    def violations(self) -> list:
        """Properties every slope must have; returns descriptions of failures."""
        bad = []
        h0, m, D = self.h0, self.mult, self.degbound
        for d in range(min(m, D)):
            if h0[d] != d + 1:
                bad.append(f"h0({d}) = {h0[d]} != {d + 1} below mult")
        for d in range(max(m, 1), D):
            if h0[d] > h0[d - 1]:
                bad.append(f"h0 increases at {d} past mult")
        if any(v > m for v in h0):
            bad.append("h0 exceeds mult")
        if any(v == 0 for v in h0) or len(h0) != D:
            bad.append("h0 vanishes before degbound")
        if sum(h0) != (self.h1[-1] if self.h1 else 0):
            bad.append("sum of h0 differs from colength")
        if any(self.h1[d] - (self.h1[d - 1] if d else 0) != h0[d] for d in range(D)):
            bad.append("h0 is not the difference of h1")
        return bad


# ---------------------------------------------------------------- Ideal

@dataclass(frozen=True, eq=False)
class Ideal:
    """Ideal of Q{x,y} given by polynomial generators; derived data is computed lazily."""
    generators: tuple
    ordering: MonomialOrdering = LS
    max_degree: int = DEFAULT_MAX_DEGREE

    def __init__(self, generators: Iterable, ordering: MonomialOrdering = LS,
                 max_degree: int = DEFAULT_MAX_DEGREE):
        from .poly import parse
        gens = []
        for g in generators:
            if isinstance(g, str):
                g = parse(g)
            elif isinstance(g, (int, Fraction)):
                g = Polynomial.constant(g)
            if not g.is_zero():
                gens.append(g)
        object.__setattr__(self, "generators", tuple(gens))
        object.__setattr__(self, "ordering", ordering)
        object.__setattr__(self, "max_degree", max_degree)

    def with_ordering(self, ordering: MonomialOrdering) -> "Ideal":
        return Ideal(self.generators, ordering, self.max_degree)

    def __repr__(self) -> str:
        return f"Ideal<{', '.join(format_polynomial(g) for g in self.generators)}>"

    def __str__(self) -> str:
        return "<" + ", ".join(format_polynomial(g) for g in self.generators) + ">"

    # -- lazily computed data -------------------------------------------------
    @cached_property
    def _ds(self) -> _DsAnalysis:
        return _ds_analysis(self.generators, self.max_degree)

    @cached_property
    def _echelon(self) -> _Echelon:
        return _echelon_for(self.generators, self.ordering, self.max_degree)

    @property
    def is_unit(self) -> bool:
        return any(g.order == 0 for g in self.generators)

    @property
    def degbound(self) -> int:
        return self._ds.degbound

    @cached_property
    def staircase(self) -> list:
        """Minimal monomial generators of the leading ideal."""
        D = self.degbound
        if D == 0:
            return [Monomial(0, 0)]
        ech = self._echelon
        cands = list(ech.pivot_monomials()) + list(ech.monomial_gens)
        cands += [(a, D - a) for a in range(D + 1)]
        return minimalize(cands)

    @cached_property
    def standard_basis(self) -> list:
        """Reduced standard basis, one element per staircase corner."""
        if self.degbound == 0:
            return [Polynomial.constant(1)]
        ech = self._echelon
        col_of = {ech.columns[c]: c for c in ech.pivots}
        out = []
        for m in self.staircase:
            c = col_of.get(m)
            if c is None:
                out.append(Polynomial.monomial(m[0], m[1]))
            else:
                out.append(ech.row_polynomial(c))
        return out

    @cached_property
    def colength(self) -> int:
        ech = self._echelon
        D = self.degbound
        total = D * (D + 1) // 2
        in_mono = sum(1 for d in range(D) for a in range(d + 1)
                      if _in_monomial_ideal((a, d - a), ech.monomial_gens))
        pivots_below = sum(1 for m in ech.pivot_monomials() if m[0] + m[1] < D)
        return total - in_mono - pivots_below

    @cached_property
    def hilbert_samuel(self) -> HilbertSamuelData:
        h0 = self._ds.h0
        h1, acc = [], 0
        for v in h0:
            acc += v
            h1.append(acc)
        D = len(h0)
        mult = next((d for d in range(D + 1) if (h0[d] if d < D else 0) < d + 1), 0)
        hs = HilbertSamuelData(tuple(h1), tuple(h0), mult, D)
        audit.record("hilbert_samuel", ideal=self, data=hs)
        return hs

    @property
    def mult(self) -> int:
        return self.hilbert_samuel.mult

    def leading_monomials(self) -> list:
        return [Monomial(*m) for m in self.staircase]

    # -- membership -----------------------------------------------------------
    def normal_form(self, f: Polynomial) -> Polynomial:
        if self.degbound == 0:
            return Polynomial()
        return normal_form(f, self.standard_basis, self.ordering, self.degbound - 1)

    def contains(self, f) -> bool:
        if isinstance(f, str):
            from .poly import parse
            f = parse(f)
        return self.normal_form(f).is_zero()

    def __contains__(self, f) -> bool:
        return self.contains(f)

    def contains_ideal(self, other: "Ideal") -> bool:
        gens = other.generators if isinstance(other, Ideal) else tuple(other)
        return all(self.contains(g) for g in gens)

    def equals(self, other: "Ideal") -> bool:
        return self.contains_ideal(other) and other.contains_ideal(self)

    def is_zero_dimensional(self) -> bool:
        try:
            self._ds
        except NotZeroDimensional:
            return False
        return True

    def __add__(self, other: "Ideal") -> "Ideal":
        return ideal_sum(self, other)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return ideal_product(self, other)


# ---------------------------------------------------------------- operations

def normal_form(f: Polynomial, G: Sequence[Polynomial], order: MonomialOrdering,
                trunc: int) -> Polynomial:
    """Reduce f by G modulo m^(trunc+1).

    The largest reducible monomial is eliminated first, by the reducer of
    smallest ecart (ties: first in G). No term of the result of degree <= trunc
    is divisible by a leading monomial of G. When G is a standard basis of
    <G> + m^(trunc+1), the result is zero exactly for members.
    """
    reducers = []
    for g in G:
        if g.is_zero():
            continue
        lm = max(g.terms, key=order.key)
        ecart = g.degree - (lm[0] + lm[1])
        reducers.append((lm, g.terms[lm], ecart, g))
    r = {m: c for m, c in f.terms.items() if m[0] + m[1] <= trunc}
    result = {}
    while r:
        m = max(r, key=order.key)
        best = None
        for lm, lc, ecart, g in reducers:
            if lm[0] <= m[0] and lm[1] <= m[1] and (best is None or ecart < best[2]):
                best = (lm, lc, ecart, g)
        c = r.pop(m)
        if best is None:
            result[m] = c
            continue
        lm, lc, _, g = best
        s, t = m[0] - lm[0], m[1] - lm[1]
        factor = c / lc
        for (a, b), v in g.terms.items():
            mm = (a + s, b + t)
            if mm == m or a + s + b + t > trunc:
                continue
            nv = r.get(mm, 0) - factor * v
            if nv:
                r[mm] = nv
            else:
                r.pop(mm, None)
    return Polynomial(result)


def standard_basis(I: Ideal) -> list:
    return I.standard_basis


def colength(I: Ideal) -> int:
    return I.colength


def hilbert_samuel(I: Ideal) -> HilbertSamuelData:
    return I.hilbert_samuel


def ideal_sum(I: Ideal, J) -> Ideal:
    other = J.generators if isinstance(J, Ideal) else tuple(J)
    return Ideal(I.generators + other, I.ordering, I.max_degree)


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    return Ideal([g * h for g in I.generators for h in J.generators], I.ordering, I.max_degree)


def power_of_maximal_ideal(k: int, ordering: MonomialOrdering = LS) -> Ideal:
    if k < 0:
        raise ValueError("negative power")
    return Ideal([Polynomial.monomial(a, k - a) for a in range(k + 1)], ordering)


def maximal_ideal_times(I: Ideal) -> Ideal:
    gens = [g.shift(1, 0) for g in I.generators] + [g.shift(0, 1) for g in I.generators]
    return Ideal(gens, I.ordering, I.max_degree)


def contains(I: Ideal, f) -> bool:
    return I.contains(f)


def contains_ideal(I: Ideal, J) -> bool:
    return I.contains_ideal(J)


@lru_cache(maxsize=4096)
def _min_generators(gens: tuple, ordering: MonomialOrdering, max_degree: int) -> int:
    I = Ideal(gens, ordering, max_degree)
    if I.is_unit:
        return 1
    return maximal_ideal_times(I).colength - I.colength


def min_generators(I: Ideal) -> int:
    """dim I/mI, as colength(mI) - colength(I)."""
    return _min_generators(I.generators, I.ordering, I.max_degree)


def iarrobino_lower_bound(I: Ideal) -> int:
    hs = I.hilbert_samuel
    h0 = list(hs.h0) + [0]
    drops = [h0[d - 1] - h0[d] for d in range(max(hs.mult, 1), hs.degbound + 1)]
    return 1 + max(drops, default=0)


def is_complete_intersection(I: Ideal) -> bool:
    """Zero-dimensional, proper, and minimally generated by two elements."""
    if I.is_unit:
        return False
    ci = min_generators(I) == 2
    if ci:
        hs = I.hilbert_samuel
        h0 = list(hs.h0) + [0]
        for d in range(max(hs.mult, 1), hs.degbound + 1):
            if h0[d - 1] - h0[d] > 1:
                raise AssertionError(f"complete intersection {I} has slope drop > 1 at {d}")
    return ci


def deg_fp_bound(I: Ideal) -> int:
    """(degbound - mult + 1) * mult, an upper bound for the colength of a complete intersection."""
    if not is_complete_intersection(I):
        raise NotCompleteIntersection(str(I))
    hs = I.hilbert_samuel
    bound = (hs.degbound - hs.mult + 1) * hs.mult
    if I.colength > bound:
        raise AssertionError(f"colength {I.colength} exceeds {bound} for {I}")
    audit.record("ci_ideal", ideal=I, colength=I.colength, bound=bound)
    return bound
