"""Dense univariate polynomials over Q (coefficient lists, index = power)."""
from __future__ import annotations

import math
from fractions import Fraction

from .poly import Polynomial, Weights


def _trim(c: list) -> list:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def degree(c: list) -> int:
    return len(_trim(c)) - 1


def derivative(c: list) -> list:
    return _trim([i * c[i] for i in range(1, len(c))])


def divmod_poly(a: list, b: list):
    a, b = _trim(a), _trim(b)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = [Fraction(v) for v in a]
    lead = Fraction(b[-1])
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        coef = r[-1] / lead
        q[shift] = coef
        for i, v in enumerate(b):
            r[shift + i] -= coef * v
        r = _trim(r)
    return _trim(q), r


def gcd(a: list, b: list) -> list:
    a, b = _trim(a), _trim(b)
    while b:
        _, r = divmod_poly(a, b)
        a, b = b, r
    if not a:
        return []
    lead = Fraction(a[-1])
    return [Fraction(v) / lead for v in a]


def distinct_root_count(c: list) -> int:
    """Number of distinct complex roots = degree of the squarefree part."""
    c = _trim(c)
    if len(c) <= 1:
        return 0
    g = gcd(c, derivative(c))
    return degree(c) - degree(g)


def bezout_pair(p: int, q: int) -> tuple:
    """a, b >= 0 with q*b - p*a = gcd(p, q)."""
    r = math.gcd(p, q)
    for b in range(p + 1):
        if (q * b - r) % p == 0 and q * b - r >= 0:
            return (q * b - r) // p, b
    raise ValueError("no Bezout pair")  # unreachable for positive p, q


def quasihomogeneous_reduction(f0: Polynomial, w) -> list:
    """One-variable polynomial g(u) attached to a form of (p,q)-degree pq.

    Substitutes x = u^b v^(p/r), y = u^a v^(q/r) with q*b - p*a = r = gcd(p,q)
    and divides by u^(a*p) v^(pq/r); the distinct zeros of g bound the branch
    count from below.
    """
    w = w if isinstance(w, Weights) else Weights(*w)
    p, q = w.p, w.q
    r = math.gcd(p, q)
    a, b = bezout_pair(p, q)
    out: dict = {}
    for (al, be), c in f0.terms.items():
        if al * p + be * q != p * q:
            raise ValueError("form is not of weighted degree p*q")
        u_exp = b * al + a * be - a * p
        v_exp = (al * p + be * q) // r - (p * q) // r
        assert v_exp == 0 and u_exp >= 0
        out[u_exp] = out.get(u_exp, 0) + c
    top = max(out) if out else -1
    return _trim([Fraction(out.get(i, 0)) for i in range(top + 1)])
