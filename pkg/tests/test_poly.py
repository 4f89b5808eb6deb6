from fractions import Fraction
from functools import reduce

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from liederive.fields import GF
from liederive.poly import (
    FactorizationLimitError, divmod_poly, evaluate, factor_rational_poly, format_poly, gcd, mul,
    rational_roots, roots_mod_p, squarefree_decomposition,
)

t = sympy.symbols("t")


def to_sympy(f):
    return sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator) for c in map(Fraction, f)])), t)


roots_st = st.lists(st.fractions(min_value=-6, max_value=6, max_denominator=4), max_size=5)
cofactor_st = st.lists(st.integers(-5, 5), min_size=1, max_size=4).filter(lambda c: c[-1] != 0)


@settings(max_examples=120, deadline=None)
@given(roots_st, cofactor_st)
def test_rational_roots_match_sympy(roots, cofactor):
    f = reduce(mul, ([-r, Fraction(1)] for r in roots), [Fraction(c) for c in cofactor])
    expect = sorted(Fraction(str(r)) for r in sympy.roots(to_sympy(f), filter="Q"))
    assert rational_roots(f) == expect
    assert set(roots) <= set(rational_roots(f))


def test_rational_roots_examples():
    assert rational_roots([-2, 0, 1]) == []  # t^2 - 2
    assert rational_roots([0, 0, 1]) == [0]
    assert rational_roots([6, -5, 1]) == [2, 3]
    assert rational_roots([-1, 0, 4]) == [Fraction(-1, 2), Fraction(1, 2)]


def test_rational_roots_large_constant_is_fast():
    roots = [Fraction(97, 3), Fraction(-1009, 7), Fraction(12345), Fraction(2, 101)]
    f = reduce(mul, ([-r, Fraction(1)] for r in roots), [Fraction(1), Fraction(0), Fraction(1)])
    assert rational_roots(f) == sorted(roots)


@settings(max_examples=60, deadline=None)
@given(st.lists(cofactor_st.filter(lambda c: len(c) <= 3), min_size=1, max_size=3),
       st.lists(st.integers(1, 2), min_size=3, max_size=3))
def test_factorization_reconstructs_and_is_irreducible(parts, mults):
    f = [Fraction(1)]
    for p, m in zip(parts, mults):
        for _ in range(m):
            f = mul(f, [Fraction(c) for c in p])
    facs = factor_rational_poly(f)
    prod = reduce(mul, (reduce(mul, [g] * m) for g, m in facs), [Fraction(1)])
    q, r = divmod_poly(f, prod)
    assert not r and len(q) == 1  # equal up to the leading coefficient
    for g, _ in facs:
        assert to_sympy(g).is_irreducible
    expect = sympy.factor_list(to_sympy(f))[1]
    assert sorted(m for _, m in facs) == sorted(m for _, m in expect)


def test_factorization_cap():
    with pytest.raises(FactorizationLimitError):
        factor_rational_poly([1] + [0] * 12 + [1], cap=12)
    facs = factor_rational_poly([1, 0, 0, 0, 1])  # t^4 + 1 is irreducible over Q
    assert len(facs) == 1


def test_squarefree_decomposition():
    f = mul(mul([-1, 1], [-1, 1]), mul([2, 1], mul([2, 1], [2, 1])))  # (t-1)^2 (t+2)^3
    dec = squarefree_decomposition(f)
    assert dec == [([-1, 1], 2), ([2, 1], 3)]


def test_gcd_and_evaluate():
    g = gcd(mul([1, 1], [2, 1]), mul([1, 1], [3, 1]))
    assert g == [1, 1]
    assert evaluate([1, 2, 3], 2) == 17


def test_roots_mod_p_brute_force():
    F = GF(7)
    f = [F(c) for c in [6, 0, 1]]  # t^2 - 1
    assert sorted(x.value for x in roots_mod_p(f, F)) == [1, 6]


def test_format():
    assert format_poly([Fraction(-1), Fraction(0), Fraction(1)]) == "t^2 - 1"
