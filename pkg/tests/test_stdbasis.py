import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from gamma_sing.poly import DS, LS, Monomial, MonomialOrdering, Polynomial, parse, x, y
from gamma_sing.stdbasis import (
    Ideal, NotCompleteIntersection, NotZeroDimensional, colength, contains, contains_ideal,
    deg_fp_bound, hilbert_samuel, iarrobino_lower_bound, ideal_product, ideal_sum,
    is_complete_intersection, min_generators, normal_form, power_of_maximal_ideal,
    standard_basis,
)


# ---------------------------------------------------------------- independent oracles

def quotient_dim(gens, N):
    """dim R/(<gens> + m^N) by a sympy rank over all monomial shifts below degree N."""
    cols = [(a, d - a) for d in range(N) for a in range(d + 1)]
    index = {m: i for i, m in enumerate(cols)}
    rows = []
    for g in gens:
        for s in range(N):
            for t in range(N - s):
                row = [0] * len(cols)
                for (a, b), c in g.terms.items():
                    m = (a + s, b + t)
                    if m in index:
                        row[index[m]] = sympy.Rational(c.numerator, c.denominator)
                if any(row):
                    rows.append(row)
    rank = sympy.Matrix(rows).rank() if rows else 0
    return len(cols) - rank


def lattice_colength(monos):
    """Count monomials outside a monomial ideal containing pure powers."""
    A = min(a for a, b in monos if b == 0)
    B = min(b for a, b in monos if a == 0)
    return sum(1 for a in range(A) for b in range(B)
               if not any(a >= u and b >= v for u, v in monos))


# ---------------------------------------------------------------- normal form

def test_normal_form_examples():
    for k in range(3, 8):
        assert normal_form(x ** 2, [x, y ** k], LS, k).is_zero()
    for k in range(5, 10):
        I = Ideal([x * y * 2, x ** 2 - y ** (k - 2) * (k - 1)])
        assert not I.normal_form(y ** (k - 3)).is_zero()
    for q in (5, 8):
        from gamma_sing.invariants import SingularitySpec, equisingularity_ideal
        I = equisingularity_ideal(SingularitySpec.sqh(q - 1, q, x ** q - y ** (q - 1)))
        r = normal_form(x ** 2 * y ** (q - 3), I.with_ordering(DS).standard_basis, DS, 3 * q)
        assert not r.is_zero()


def test_normal_form_terms_are_irreducible():
    I = Ideal(["x*y", "x^2 - 5*y^4"])
    r = I.normal_form(parse("x^3 + y^3 + x*y^2 + 7*y^2"))
    lead = I.staircase
    assert all(not any(m.divides(t) for m in lead) for t in r.terms)


# ---------------------------------------------------------------- standard bases

def test_standard_basis_staircases():
    for k in range(5, 10):
        I = Ideal([x * y, x ** 2 - y ** (k - 2) * (k - 1)], LS)
        assert I.staircase == [Monomial(0, k - 2), Monomial(1, 1), Monomial(3, 0)]
    assert Ideal([x ** 2, y ** 3], DS).staircase == [Monomial(0, 3), Monomial(2, 0)]
    E7 = Ideal([x ** 2 * 3 - y ** 3, x * y ** 2], LS)
    assert E7.contains(x ** 3) and E7.contains(y ** 5)
    assert Monomial(1, 2) in E7.staircase


@pytest.mark.parametrize("order", [LS, DS, MonomialOrdering.weighted(2, 3)])
def test_standard_basis_reduces_generators(order):
    I = Ideal(["x^2*y - y^5", "x^3 + x*y^3", "x^4"], order)
    G = standard_basis(I)
    for g in I.generators:
        assert normal_form(g, G, order, I.degbound - 1).is_zero()
    lead = [max(g.terms, key=order.key) for g in G]
    assert sorted(lead) == sorted(I.staircase)


def test_zero_dimensionality_is_detected():
    with pytest.raises(NotZeroDimensional):
        Ideal(["x^2*y", "x*y^3"]).colength
    with pytest.raises(NotZeroDimensional):
        # second generator is (x^2 - y^3)*(x + y)
        Ideal(["x^2 - y^3", "x^3 + x^2*y - x*y^3 - y^4"]).colength
    assert not Ideal(["x*y"]).is_zero_dimensional()


# ---------------------------------------------------------------- colength and HS

def test_colength_examples():
    for k in range(1, 9):
        assert colength(Ideal([x, y ** k])) == k
        assert colength(power_of_maximal_ideal(k)) == k * (k + 1) // 2
    from gamma_sing.invariants import SingularitySpec, equisingularity_ideal
    assert equisingularity_ideal(SingularitySpec.sqh(3, 7, "7*y^3 + 15*x^7 - 21*x^5*y")).colength == 11


def test_hilbert_samuel_examples():
    hs = hilbert_samuel(Ideal([x ** 2 * 3 - y ** 3, x * y ** 2]))
    assert (hs.h0, hs.mult, hs.degbound, hs.colength) == ((1, 2, 2, 1, 1), 2, 5, 7)
    hs = hilbert_samuel(Ideal(["x^3", "x^2*y", "y^3"]))
    assert (hs.h0, hs.mult, hs.degbound, hs.colength) == ((1, 2, 3, 1), 3, 4, 7)
    hs = hilbert_samuel(Ideal([x, y]))
    assert (hs.h0, hs.mult, hs.degbound, hs.colength) == ((1,), 1, 1, 1)


def test_e8_degbound_from_a_lattice_count():
    # <x^2, y^4>: x*y^3 survives in degree 4, every degree-5 monomial lies in the ideal
    I = Ideal([x ** 2, y ** 4])
    surviving = {d: [(a, d - a) for a in range(d + 1) if a < 2 and d - a < 4] for d in range(8)}
    assert max(d for d, ms in surviving.items() if ms) + 1 == I.degbound == 5
    assert I.hilbert_samuel.h0 == tuple(len(surviving[d]) for d in range(5))


def _random_ideal(rng, n_gens=2, max_deg=5, fill=6):
    gens = []
    for _ in range(n_gens):
        terms = {}
        for _ in range(rng.randint(1, 4)):
            d = rng.randint(1, max_deg)
            a = rng.randint(0, d)
            terms[(a, d - a)] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        gens.append(Polynomial(terms))
    gens += [Polynomial.monomial(a, fill - a) for a in range(fill + 1)]
    return gens


@pytest.mark.parametrize("seed", range(12))
def test_colength_and_hs_agree_with_rank_oracle(seed):
    rng = random.Random(seed)
    gens = _random_ideal(rng)
    I = Ideal(gens)
    assert I.colength == quotient_dim(gens, 7)
    hs = I.hilbert_samuel
    for d in range(hs.degbound):
        assert hs.h1[d] == quotient_dim(gens, d + 1)
    assert hs.violations() == []


@pytest.mark.parametrize("seed", range(12))
def test_ordering_independence(seed):
    gens = _random_ideal(random.Random(100 + seed))
    values = {Ideal(gens, o).colength for o in
              (LS, DS, MonomialOrdering.weighted(2, 3), MonomialOrdering.weighted(5, 1))}
    assert len(values) == 1


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 6), st.integers(0, 6)), min_size=1, max_size=5),
       st.integers(1, 6), st.integers(1, 6))
def test_monomial_colength_matches_lattice_count(extra, A, B):
    monos = [(A, 0), (0, B)] + [m for m in extra if m != (0, 0)]
    I = Ideal([Polynomial.monomial(a, b) for a, b in monos])
    assert I.colength == lattice_colength(monos)


# ---------------------------------------------------------------- generators and CI

def test_min_generators_examples():
    for k in range(5, 9):
        assert min_generators(Ideal([x ** 2, x * y, y ** (k - 2)])) == 3
        assert min_generators(Ideal([x, y ** k])) == 2
    e = Ideal(["x^7", "y^2 - x^5", "x^6 - x^4*y"])
    assert min_generators(e) == 3
    assert min_generators(power_of_maximal_ideal(3)) == 4
    # redundant generators do not count
    assert min_generators(Ideal([x, y ** 3, x * y, y ** 4 + x])) == 2


def test_complete_intersection_examples():
    for k in range(4, 9):
        assert is_complete_intersection(Ideal([x * y, x ** 2 - y ** (k - 2) * (k - 1)]))
    assert not is_complete_intersection(Ideal(["x^3", "x^2*y", "y^3"]))
    assert is_complete_intersection(Ideal([x, y]))
    assert not is_complete_intersection(Ideal([Polynomial.constant(1)]))


def test_iarrobino_examples():
    assert iarrobino_lower_bound(Ideal(["x^3", "x^2*y", "y^3"])) == 3
    for k in range(1, 7):
        assert iarrobino_lower_bound(Ideal([x, y ** k])) == 2
    assert iarrobino_lower_bound(power_of_maximal_ideal(3)) == 4


@pytest.mark.parametrize("seed", range(10))
def test_iarrobino_bounds_min_generators(seed):
    I = Ideal(_random_ideal(random.Random(200 + seed), n_gens=3))
    assert iarrobino_lower_bound(I) <= min_generators(I)


def test_deg_fp_bound_examples():
    for k in range(1, 7):
        assert deg_fp_bound(Ideal([x, y ** k])) == k
    for k in range(4, 9):
        I = Ideal([x * y, x ** 2 - y ** (k - 2) * (k - 1)])
        assert deg_fp_bound(I) == 2 * k - 4 >= I.colength
    for k in range(1, 6):
        I = Ideal([x ** k, y ** (k + 1)])
        assert deg_fp_bound(I) == k * k + k == I.colength
    with pytest.raises(NotCompleteIntersection):
        deg_fp_bound(Ideal(["x^3", "x^2*y", "y^3"]))


# ---------------------------------------------------------------- ideal operations

def test_ideal_ops():
    for k in range(4, 8):
        Dk = Ideal([x * y * 2, x ** 2 - y ** (k - 2) * (k - 1)])
        assert contains_ideal(Ideal([x, y ** (k - 2)]), Dk)
        Mk = ideal_sum(Ideal([x ** (k - 1), y ** (k - 1)]), power_of_maximal_ideal(k))
        assert contains_ideal(Ideal([y ** (k - 1), x ** 2]), Mk)
    assert not contains(power_of_maximal_ideal(2), x + y)
    P = ideal_product(Ideal([x, y]), Ideal([x, y]))
    assert P.equals(power_of_maximal_ideal(2))
    assert "x^2" in Ideal(["x", "y^3"])
