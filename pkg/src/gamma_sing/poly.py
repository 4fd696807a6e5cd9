"""Exact bivariate polynomials over Q, local monomial orderings and weighted degrees.

Polynomials stand in for power series in C{x,y}. Every ideal handled by the
package is zero-dimensional, so truncating at a certified degree bound loses
nothing.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple, Optional, Union

__all__ = [
    "Monomial", "Polynomial", "MonomialOrdering", "Weights", "ParseError",
    "LS", "DS", "cmp", "leading_term", "parse", "weighted_order",
    "leading_form", "is_quasihomogeneous", "is_convenient", "is_nondegenerate",
    "is_convenient_sqh", "x", "y",
]

Coefficient = Union[int, Fraction]


class Monomial(NamedTuple):
    """x^a * y^b"""
    a: int
    b: int

    @property
    def degree(self) -> int:
        return self.a + self.b

    def __mul__(self, other):  # type: ignore[override]
        return Monomial(self.a + other[0], self.b + other[1])

    def divides(self, other) -> bool:
        return self.a <= other[0] and self.b <= other[1]

    def __str__(self) -> str:
        return _monomial_str(self.a, self.b) or "1"


def _monomial_str(a: int, b: int) -> str:
    parts = []
    if a:
        parts.append("x" if a == 1 else f"x^{a}")
    if b:
        parts.append("y" if b == 1 else f"y^{b}")
    return "*".join(parts)


@dataclass(frozen=True)
class Weights:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise ValueError(f"weights must be positive, got ({self.p},{self.q})")

    def degree(self, m) -> int:
        return m[0] * self.p + m[1] * self.q


@dataclass(frozen=True)
class MonomialOrdering:
    """One of the local orderings ``ls``, ``ds`` or ``weighted`` (with p, q).

    ``key(m)`` is increasing in the ordering: the leading monomial of a
    polynomial is the support element with the largest key. All three are
    local, so the constant monomial 1 is the largest monomial.
    """
    kind: str
    p: int = 0
    q: int = 0

    def __post_init__(self):
        if self.kind not in ("ls", "ds", "weighted"):
            raise ValueError(f"unknown ordering kind {self.kind!r}")
        if self.kind == "weighted" and (self.p < 1 or self.q < 1):
            raise ValueError("weighted ordering needs p, q >= 1")

    @classmethod
    def weighted(cls, p: int, q: int) -> "MonomialOrdering":
        return cls("weighted", p, q)

    def key(self, m) -> tuple:
        a, b = m[0], m[1]
        if self.kind == "ls":
            return (-a, -b)
        if self.kind == "ds":
            return (-(a + b), -b)
        # equal weight: the monomial with the smaller y-exponent is smaller
        return (-(a * self.p + b * self.q), b)

    @property
    def is_degree_ordering(self) -> bool:
        return self.kind == "ds" or (self.kind == "weighted" and self.p == self.q)

    def __str__(self) -> str:
        if self.kind == "weighted":
            return f"w:{self.p},{self.q}"
        return self.kind

    @classmethod
    def from_string(cls, text: str) -> "MonomialOrdering":
        text = text.strip().lower()
        if text in ("ls", "ds"):
            return cls(text)
        m = re.fullmatch(r"w:(\d+),(\d+)", text)
        if not m:
            raise ValueError(f"bad ordering {text!r}; expected ls, ds or w:P,Q")
        return cls.weighted(int(m.group(1)), int(m.group(2)))


LS = MonomialOrdering("ls")
DS = MonomialOrdering("ds")


def cmp(m1, m2, order: MonomialOrdering) -> int:
    """-1, 0, 1 as m1 is smaller than, equal to, or larger than m2."""
    k1, k2 = order.key(m1), order.key(m2)
    return (k1 > k2) - (k1 < k2)


class Polynomial:
    """Immutable finite sum of rational multiples of monomials x^a y^b."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping] = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                if c:
                    a, b = m
                    if a < 0 or b < 0:
                        raise ValueError(f"negative exponent in {m}")
                    clean[Monomial(a, b)] = Fraction(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Polynomial":
        # terms already cleaned: Monomial keys, nonzero Fraction values
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c: Coefficient) -> "Polynomial":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, a: int, b: int, c: Coefficient = 1) -> "Polynomial":
        return cls({(a, b): c})

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return self._terms

    def items(self):
        return self._terms.items()

    def support(self) -> list:
        return list(self._terms)

    def coefficient(self, m) -> Fraction:
        return self._terms.get(Monomial(*m), Fraction(0))

    def __iter__(self) -> Iterator:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    @staticmethod
    def _coerce(other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        out: dict = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                m = (a1 + a2, b1 + b2)
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        result = Polynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c: Coefficient) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial()
        return Polynomial._raw({m: v * c for m, v in self._terms.items()})

    def shift(self, a: int, b: int) -> "Polynomial":
        """Multiply by the monomial x^a y^b."""
        return Polynomial._raw({Monomial(m[0] + a, m[1] + b): c for m, c in self._terms.items()})

    def diff(self, var: str) -> "Polynomial":
        out = {}
        for (a, b), c in self._terms.items():
            if var == "x" and a:
                out[Monomial(a - 1, b)] = c * a
            elif var == "y" and b:
                out[Monomial(a, b - 1)] = c * b
        return Polynomial._raw(out)

    @property
    def dx(self) -> "Polynomial":
        return self.diff("x")

    @property
    def dy(self) -> "Polynomial":
        return self.diff("y")

    def truncate(self, degree: int) -> "Polynomial":
        """Drop every term of total degree >= ``degree``."""
        return Polynomial._raw({m: c for m, c in self._terms.items() if m[0] + m[1] < degree})

    @property
    def order(self) -> Union[int, float]:
        """Lowest total degree of a term (multiplicity); inf for 0."""
        if not self._terms:
            return math.inf
        return min(a + b for a, b in self._terms)

    @property
    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(a + b for a, b in self._terms)

    def evaluate(self, xv, yv):
        return sum(c * xv ** a * yv ** b for (a, b), c in self._terms.items())

    def __call__(self, xv, yv):
        return self.evaluate(xv, yv)

    def sorted_terms(self, order: MonomialOrdering = DS) -> list:
        """Terms from largest to smallest monomial."""
        return sorted(self._terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r})"


x = Polynomial.monomial(1, 0)
y = Polynomial.monomial(0, 1)


def leading_term(f: Polynomial, order: MonomialOrdering):
    """(monomial, coefficient) of the largest monomial of f, or None for f = 0."""
    if f.is_zero():
        return None
    m = max(f.terms, key=order.key)
    return m, f.terms[m]


# ---------------------------------------------------------------- parse/format

def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_polynomial(f: Polynomial, order: MonomialOrdering = DS) -> str:
    if f.is_zero():
        return "0"
    out = []
    for i, ((a, b), c) in enumerate(f.sorted_terms(order)):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        mono = _monomial_str(a, b)
        if not mono:
            body = _fmt_coeff(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_fmt_coeff(mag)}*{mono}"
        if i == 0:
            out.append(body if sign == "+" else "-" + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}" + (f" in {text!r}" if text else ""))
        self.position = position
        self.text = text


_TOKEN = re.compile(r"\s*(?:(\d+)|([xy])|([-+*/^]))")


def _tokenize(text: str) -> list:
    tokens, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[start]!r}", start, text)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("num", int(m.group(1)), start))
        elif m.group(2) is not None:
            tokens.append(("var", m.group(2), start))
        else:
            tokens.append(("op", m.group(3), start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


def parse(text: str) -> Polynomial:
    """Parse the ASCII grammar ``c*x^a*y^b`` terms joined by ``+``/``-``.

    >>> parse("7*y^3 + 15*x^7 - 21*x^5*y") == 7*y**3 + 15*x**7 - 21*x**5*y
    True
    """
    tokens = _tokenize(text)
    i = 0

    def peek():
        return tokens[i]

    def take(kind, value=None):
        nonlocal i
        tok = tokens[i]
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            got = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {want}, got {got}", tok[2], text)
        i += 1
        return tok

    def factor():
        tok = peek()
        if tok[0] == "num":
            take("num")
            c = Fraction(tok[1])
            if peek()[0] == "op" and peek()[1] == "/":
                take("op", "/")
                den = take("num")
                if den[1] == 0:
                    raise ParseError("zero denominator", den[2], text)
                c /= den[1]
            return Fraction(c), (0, 0)
        if tok[0] == "var":
            take("var")
            e = 1
            if peek()[0] == "op" and peek()[1] == "^":
                take("op", "^")
                e = take("num")[1]
            return Fraction(1), ((e, 0) if tok[1] == "x" else (0, e))
        got = "end of input" if tok[0] == "end" else repr(tok[1])
        raise ParseError(f"expected a number or variable, got {got}", tok[2], text)

    def term():
        c, (a, b) = factor()
        while peek()[0] == "op" and peek()[1] == "*":
            take("op", "*")
            c2, (a2, b2) = factor()
            c, a, b = c * c2, a + a2, b + b2
        return c, (a, b)

    if tokens[0][0] == "end":
        raise ParseError("empty polynomial", 0, text)
    acc: dict = {}
    sign = 1
    if peek()[0] == "op" and peek()[1] in "+-":
        sign = -1 if take("op")[1] == "-" else 1
    while True:
        c, m = term()
        acc[m] = acc.get(m, 0) + sign * c
        tok = peek()
        if tok[0] == "end":
            break
        if tok[0] == "op" and tok[1] in "+-":
            take("op")
            sign = -1 if tok[1] == "-" else 1
            continue
        raise ParseError(f"unexpected {tok[1]!r}", tok[2], text)
    return Polynomial(acc)


def parse_list(text: str) -> list:
    """Comma separated generators, e.g. ``"x^3, x^2*y, y^3"``."""
    parts = text.split(",")
    out, offset = [], 0
    for part in parts:
        try:
            out.append(parse(part))
        except ParseError as exc:
            raise ParseError(str(exc).split(" at position")[0], offset + exc.position, text) from None
        offset += len(part) + 1
    return out


# ---------------------------------------------------------------- weighted data

def _as_weights(w) -> Weights:
    return w if isinstance(w, Weights) else Weights(*w)


def weighted_order(f: Polynomial, w) -> Union[int, float]:
    """min of a*p + b*q over the support of f (inf for f = 0)."""
    w = _as_weights(w)
    if f.is_zero():
        return math.inf
    return min(w.degree(m) for m in f.terms)


def leading_form(f: Polynomial, w) -> Polynomial:
    """Sum of the terms of minimal weighted degree."""
    if f.is_zero():
        raise ValueError("leading form of the zero polynomial")
    w = _as_weights(w)
    d = weighted_order(f, w)
    return Polynomial._raw({m: c for m, c in f.terms.items() if w.degree(m) == d})


def is_quasihomogeneous(f: Polynomial, w) -> bool:
    w = _as_weights(w)
    return not f.is_zero() and len({w.degree(m) for m in f.terms}) == 1


def is_convenient(f0: Polynomial, w) -> bool:
    """Newton polygon of the quasihomogeneous f0 meets both axes."""
    w = _as_weights(w)
    d = weighted_order(f0, w)
    if d % w.p or d % w.q:
        return False
    return f0.coefficient((d // w.p, 0)) != 0 and f0.coefficient((0, d // w.q)) != 0


def _sympy_expr(f: Polynomial):
    import sympy
    X, Y = sympy.symbols("x y")
    return sum((sympy.Rational(c.numerator, c.denominator) * X ** a * Y ** b
                for (a, b), c in f.terms.items()), sympy.Integer(0)), X, Y


def squarefree_bivariate(f: Polynomial) -> bool:
    """f has no repeated factor: gcd(f, f_x, f_y) is a constant."""
    import sympy
    e, X, Y = _sympy_expr(f)
    g = sympy.gcd(sympy.gcd(e, sympy.diff(e, X)), sympy.diff(e, Y))
    return sympy.Poly(g, X, Y).total_degree() == 0


def is_nondegenerate(f0: Polynomial, w) -> bool:
    """Quasihomogeneous f0 is reduced (no multiple factors).

    Decided twice: through the one-variable reduction (distinct-root count of
    the associated polynomial in u) and through a bivariate gcd with the
    partial derivatives. A disagreement is a bug and raises.
    """
    from .univariate import distinct_root_count, quasihomogeneous_reduction
    w = _as_weights(w)
    if not is_quasihomogeneous(f0, w):
        raise ValueError("expected a quasihomogeneous polynomial")
    bivariate = squarefree_bivariate(f0)
    if is_convenient(f0, w) and weighted_order(f0, w) == w.p * w.q:
        g = quasihomogeneous_reduction(f0, w)
        r = math.gcd(w.p, w.q)
        one_var = distinct_root_count(g) == r
        if one_var != bivariate:
            raise AssertionError(f"squarefree routes disagree on {f0}")
    return bivariate


def is_convenient_sqh(f: Polynomial, w) -> bool:
    """The (p,q)-leading form of f is convenient and non-degenerate."""
    w = _as_weights(w)
    if f.is_zero():
        return False
    f0 = leading_form(f, w)
    return is_convenient(f0, w) and is_nondegenerate(f0, w)


def polynomial_from_terms(terms: Iterable) -> Polynomial:
    acc: dict = {}
    for (a, b), c in terms:
        acc[(a, b)] = acc.get((a, b), 0) + Fraction(c)
    return Polynomial(acc)
