import pytest
from hypothesis import given, settings, strategies as st

from liederive.fields import GF, QQ
from liederive.rings import (
    RING_FIXTURES, AssocAlgebra, commutator_span, delta_series, derived_ring, dorroh_extension,
    embed_in_dorroh, group_algebra_cyclic, ideal_closure, is_nilpotent_ring, is_solvable_ring,
    is_two_sided_ideal, matrix_algebra, power_series, restrict_ring, truncated_polynomials,
    validate_assoc,
)


@pytest.mark.parametrize("name", sorted(RING_FIXTURES))
def test_fixtures_are_associative(name):
    for F in (QQ, GF(2), GF(3)):
        R = RING_FIXTURES[name](F)
        assert validate_assoc(R)
        assert validate_assoc(dorroh_extension(R))


def test_tampered_product_is_caught():
    R = matrix_algebra(2, QQ, upper=True)
    m = [[list(r) for r in plane] for plane in R.m]
    m[0][1][2] = m[0][1][2] + 1
    v = validate_assoc(AssocAlgebra(QQ, m, R.labels))
    assert not v and "(" in v.message()


def test_unit_checked():
    R = group_algebra_cyclic(3)
    bad = AssocAlgebra(QQ, R.m, R.labels, unit=[0, 1, 0])
    assert not validate_assoc(bad)


def test_upper_triangular_series():
    R = matrix_algebra(2, QQ, upper=True)
    assert [W.dim for W in delta_series(R)] == [3, 1, 0]
    assert is_solvable_ring(R) and not is_nilpotent_ring(R)
    D = derived_ring(R)
    assert is_nilpotent_ring(R, D)
    assert is_two_sided_ideal(R, D)


def test_full_matrix_ring_is_not_solvable():
    R = matrix_algebra(2, QQ)
    assert derived_ring(R) == R.full()
    assert not is_solvable_ring(R)


def test_nilpotent_fixtures():
    assert is_nilpotent_ring(matrix_algebra(4, QQ, upper=True, strict=True))
    assert [W.dim for W in power_series(truncated_polynomials(3))] == [3, 2, 1, 0]
    assert derived_ring(truncated_polynomials(3)).dim == 0


def test_commutative_unital():
    for F in (QQ, GF(2), GF(5)):
        R = group_algebra_cyclic(4, F)
        assert derived_ring(R).dim == 0 and not is_nilpotent_ring(R)
        assert commutator_span(R, R.full()).dim == 0


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(sorted(RING_FIXTURES)), st.sampled_from([QQ, GF(2), GF(3)]), st.integers(1, 4))
def test_dorroh_invariance(name, F, n):
    R = RING_FIXTURES[name](F)
    T = dorroh_extension(R)
    dR, dT = delta_series(R), delta_series(T)
    at = lambda chain, k: chain[min(k, len(chain) - 1)]
    assert at(dT, n) == embed_in_dorroh(at(dR, n))


def test_ideal_closure_and_restriction():
    R = matrix_algebra(3, QQ, upper=True)
    e13 = [0] * R.dim
    e13[R.labels.index("E13")] = 1
    I = ideal_closure(R, [e13])
    assert I.dim == 1 and is_two_sided_ideal(R, I)
    S = restrict_ring(R, derived_ring(R))
    assert validate_assoc(S)
    with pytest.raises(ValueError):
        restrict_ring(R, R.span([R.basis_vector(R.labels.index(x)) for x in ("E12", "E23")]))
