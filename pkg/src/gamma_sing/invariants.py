"""Classical invariants of plane curve singularities and their Tjurina / equisingularity ideals.

Supported classes: the simple types A_k, D_k, E_6, E_7, E_8, the ordinary
k-fold points M_k, and convenient semiquasihomogeneous germs SQH(p, q, f).
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .poly import (
    Polynomial, Weights, format_polynomial, is_convenient_sqh, is_nondegenerate,
    leading_form, parse, weighted_order, x, y,
)
from .stdbasis import Ideal, NotZeroDimensional, minimalize, power_of_maximal_ideal
from .univariate import distinct_root_count, quasihomogeneous_reduction

__all__ = [
    "SingularitySpec", "InvariantRecord", "UnsupportedClass", "tjurina_ideal",
    "equisingularity_ideal", "intersection_multiplicity", "milnor_number",
    "tjurina_number", "kappa", "branch_count_sqh", "delta", "invariant_record",
    "KAPPA_SAMPLES",
]

KAPPA_SAMPLES = 7
_COEFF_BOUND = 97


class UnsupportedClass(ValueError):
    pass


@dataclass(frozen=True)
class SingularitySpec:
    """A supported singularity class together with its canonical representative.

    ``kind`` is one of "A", "D", "E", "M", "SQH". For SQH the polynomial and
    the weights are part of the class data; the other kinds carry only ``k``.
    """
    kind: str
    k: int = 0
    weights: Optional[Weights] = None
    poly: Optional[Polynomial] = None

    def __post_init__(self):
        kind, k = self.kind, self.k
        if kind == "A" and k < 1:
            raise UnsupportedClass("A_k needs k >= 1")
        elif kind == "D" and k < 4:
            raise UnsupportedClass("D_k needs k >= 4")
        elif kind == "E" and k not in (6, 7, 8):
            raise UnsupportedClass("E_k needs k in {6, 7, 8}")
        elif kind == "M" and k < 2:
            raise UnsupportedClass("M_k needs k >= 2")
        elif kind == "SQH":
            if self.weights is None or self.poly is None:
                raise UnsupportedClass("SQH needs weights and a polynomial")
            w = self.weights
            if w.q < w.p:
                raise UnsupportedClass(f"SQH weights need q >= p, got ({w.p},{w.q})")
            if weighted_order(self.poly, w) != w.p * w.q:
                raise UnsupportedClass(f"{self.poly} does not have ({w.p},{w.q})-order {w.p * w.q}")
            if not is_convenient_sqh(self.poly, w):
                raise UnsupportedClass(f"{self.poly} is not convenient semiquasihomogeneous")
        elif kind not in ("A", "D", "E", "M", "SQH"):
            raise UnsupportedClass(f"unknown class {kind!r}")

    # constructors ---------------------------------------------------------
    @classmethod
    def A(cls, k: int) -> "SingularitySpec":
        return cls("A", k)

    @classmethod
    def D(cls, k: int) -> "SingularitySpec":
        return cls("D", k)

    @classmethod
    def E(cls, k: int) -> "SingularitySpec":
        return cls("E", k)

    @classmethod
    def M(cls, k: int) -> "SingularitySpec":
        return cls("M", k)

    @classmethod
    def sqh(cls, p: int, q: int, f: Union[str, Polynomial]) -> "SingularitySpec":
        if isinstance(f, str):
            f = parse(f)
        return cls("SQH", 0, Weights(p, q), f)

    @property
    def representative(self) -> Polynomial:
        k = self.k
        if self.kind == "A":
            return x ** 2 - y ** (k + 1)
        if self.kind == "D":
            return x ** 2 * y - y ** (k - 1)
        if self.kind == "E":
            return {6: x ** 3 - y ** 4, 7: x ** 3 - x * y ** 3, 8: x ** 3 - y ** 5}[k]
        if self.kind == "M":
            return x ** k - y ** k
        return self.poly

    @property
    def is_simple(self) -> bool:
        return self.kind in ("A", "D", "E")

    @property
    def name(self) -> str:
        if self.kind == "SQH":
            return f"SQH({self.weights.p},{self.weights.q}; {format_polynomial(self.poly)})"
        return f"{self.kind}_{self.k}"

    def __str__(self) -> str:
        return self.name

    def branches(self) -> int:
        """Number of branches r, read from the class (SQH: one-variable reduction)."""
        k = self.k
        if self.kind == "A":
            return 2 if k % 2 else 1
        if self.kind == "D":
            return 3 if k % 2 == 0 else 2
        if self.kind == "E":
            return {6: 1, 7: 2, 8: 1}[k]
        if self.kind == "M":
            return k
        return branch_count_sqh(self.poly, self.weights)


@dataclass(frozen=True)
class InvariantRecord:
    mu: int
    tau: int
    tau_es: int
    kappa: int
    delta: int
    branches: int

    def as_dict(self) -> dict:
        return {"mu": self.mu, "tau": self.tau, "tau_es": self.tau_es,
                "kappa": self.kappa, "delta": self.delta, "branches": self.branches}


def _poly(f) -> Polynomial:
    return parse(f) if isinstance(f, str) else f


def tjurina_ideal(f) -> Ideal:
    f = _poly(f)
    return Ideal([f.dx, f.dy, f])


def _sqh_monomials(w: Weights) -> list:
    """Minimal monomials x^a y^b with a*p + b*q >= p*q."""
    p, q = w.p, w.q
    mons = [(a, max(0, -(-(p * q - a * p) // q))) for a in range(q + 1)]
    return minimalize(mons)


def equisingularity_ideal(s: SingularitySpec) -> Ideal:
    if not isinstance(s, SingularitySpec):
        raise UnsupportedClass("the equisingularity ideal is only available for supported classes")
    f = s.representative
    if s.is_simple:
        return tjurina_ideal(f)
    if s.kind == "M":
        return tjurina_ideal(f) + power_of_maximal_ideal(s.k)
    mons = [Polynomial.monomial(a, b) for a, b in _sqh_monomials(s.weights)]
    return Ideal([f.dx, f.dy] + mons)


def intersection_multiplicity(f, g) -> Union[int, float]:
    """dim R/<f, g>; infinite when f and g share a component through the origin."""
    f, g = _poly(f), _poly(g)
    try:
        return Ideal([f, g]).colength
    except NotZeroDimensional:
        return math.inf


def milnor_number(f) -> int:
    f = _poly(f)
    return Ideal([f.dx, f.dy]).colength


def tjurina_number(f) -> int:
    return tjurina_ideal(f).colength


def _random_rational(rng: random.Random) -> Fraction:
    num = rng.randint(1, _COEFF_BOUND) * rng.choice((1, -1))
    return Fraction(num, rng.randint(1, _COEFF_BOUND))


def kappa(f, seed: int = 0, samples: int = KAPPA_SAMPLES, return_all: bool = False):
    """i(f, a*f_x + b*f_y) for a generic pencil member.

    Non-generic (a : b) can only raise the intersection multiplicity, so the
    minimum over ``samples`` seeded rational pairs is taken.
    """
    f = _poly(f)
    rng = random.Random(seed)
    fx, fy = f.dx, f.dy
    values = []
    for _ in range(samples):
        a, b = _random_rational(rng), _random_rational(rng)
        values.append(intersection_multiplicity(f, fx * a + fy * b))
    best = min(values)
    if best == math.inf:
        raise NotZeroDimensional(f"{f} has a non-isolated singularity")
    return (best, values) if return_all else best


def branch_count_sqh(f, w) -> int:
    """Distinct zeros of the one-variable reduction of the (p,q)-leading form.

    Equals gcd(p, q) when the leading form is reduced; for a degenerate form
    the count is only a lower bound and a ValueError is raised.
    """
    f = _poly(f)
    w = w if isinstance(w, Weights) else Weights(*w)
    if weighted_order(f, w) != w.p * w.q:
        raise ValueError(f"({w.p},{w.q})-order of {f} is not {w.p * w.q}")
    f0 = leading_form(f, w)
    count = distinct_root_count(quasihomogeneous_reduction(f0, w))
    if not is_nondegenerate(f0, w):
        raise ValueError(f"degenerate leading form {f0}: {count} is only a lower bound")
    return count


def delta(s: SingularitySpec) -> int:
    """delta from 2*delta = mu + r - 1."""
    if not isinstance(s, SingularitySpec):
        raise UnsupportedClass("delta is only available for supported classes")
    two_delta = milnor_number(s.representative) + s.branches() - 1
    assert two_delta % 2 == 0, f"mu + r - 1 is odd for {s}"
    return two_delta // 2


def invariant_record(s: SingularitySpec, seed: int = 0) -> InvariantRecord:
    f = s.representative
    return InvariantRecord(
        mu=milnor_number(f),
        tau=tjurina_number(f),
        tau_es=equisingularity_ideal(s).colength,
        kappa=kappa(f, seed),
        delta=delta(s),
        branches=s.branches(),
    )
