from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from liederive.algebra import (
    LieAlgebra, NotAnIdeal, almost_abelian_witness, center, centralizer, change_basis, classify,
    derived_algebra, derived_series, direct_sum, heisenberg_basis, is_ideal, is_nilpotent,
    is_semisimple, killing_form, lower_central_series, nilpotency_class, quotient, radical,
    realizes, recognize_nilpotent_dim4, restrict, validate,
)
from liederive.builders import (
    abelian, almost_abelian, heisenberg, sl2, sl2_module_extension, standard_filiform,
    two_dim_nonabelian,
)
from liederive.fields import GF, QQ
from liederive.linalg import det


def dims(series):
    return [W.dim for W in series]


def test_series_of_standard_families():
    assert dims(lower_central_series(standard_filiform(5))) == [5, 3, 2, 1, 0]
    assert nilpotency_class(standard_filiform(5)) == 4
    assert dims(lower_central_series(heisenberg(2))) == [5, 1, 0]
    assert dims(derived_series(two_dim_nonabelian())) == [2, 1, 0]
    assert nilpotency_class(two_dim_nonabelian()) is None
    assert dims(derived_series(sl2())) == [3]


def test_bracket_is_bilinear_and_antisymmetric():
    L = sl2_module_extension(2)
    u = [Fraction(i - 2) for i in range(L.dim)]
    v = [Fraction(i * i % 5) for i in range(L.dim)]
    assert L.bracket(u, v) == [-x for x in L.bracket(v, u)]
    assert L.bracket(u, u) == L.zero_vector()


def test_center_and_centralizer():
    H = heisenberg(2)
    assert center(H) == H.span([H.unit(4)])
    assert center(sl2()).dim == 0
    F = standard_filiform(4)
    assert centralizer(F, derived_algebra(F)).dim == 3


def test_quotient_and_restrict():
    H = heisenberg(1)
    Q, proj = quotient(H, center(H))
    assert Q.dim == 2 and classify(Q).is_abelian
    assert len(proj) == 2 and len(proj[0]) == 3
    L = sl2_module_extension(1)
    R = radical(L)
    assert classify(restrict(L, R)).is_abelian
    with pytest.raises(NotAnIdeal):
        quotient(sl2(), sl2().span([sl2().unit(1)]))


def test_killing_form_and_radical():
    K = killing_form(sl2())
    assert det(K, QQ) != 0
    assert is_semisimple(sl2()) and not is_semisimple(two_dim_nonabelian())
    assert radical(direct_sum(sl2(), two_dim_nonabelian())).dim == 2
    assert radical(sl2_module_extension(3)).dim == 4


def test_classify_flags():
    p = classify(almost_abelian(4))
    assert p.is_solvable and not p.is_nilpotent and p.almost_abelian is not None
    q = classify(standard_filiform(6))
    assert q.is_filiform and q.nilpotency_class == 5
    assert classify(heisenberg(3)).heisenberg_index == 3
    assert classify(sl2()).is_perfect
    assert "dim" in classify(sl2()).summary()


def test_heisenberg_and_almost_abelian_recognition():
    H = heisenberg(2)
    hb = heisenberg_basis(H)
    assert hb is not None and realizes(H, hb, heisenberg(2))
    assert heisenberg_basis(standard_filiform(4)) is None
    x, A = almost_abelian_witness(almost_abelian(3))
    assert A.dim == 2 and x[0] == 1
    assert almost_abelian_witness(heisenberg(1)) is None


def _invertible(n, seed):
    import random
    rng = random.Random(seed)
    while True:
        B = [[Fraction(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)]
        if det(B, QQ):
            return B


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["F5", "H2", "aa4", "ext1", "sl2+r2"]), st.integers(0, 10 ** 6))
def test_invariants_under_basis_change(name, seed):
    L = {"F5": standard_filiform(5), "H2": heisenberg(2), "aa4": almost_abelian(4),
         "ext1": sl2_module_extension(1), "sl2+r2": direct_sum(sl2(), two_dim_nonabelian())}[name]
    B = _invertible(L.dim, seed)
    M = change_basis(L, B)
    assert validate(M)
    assert dims(lower_central_series(M)) == dims(lower_central_series(L))
    assert dims(derived_series(M)) == dims(derived_series(L))
    assert center(M).dim == center(L).dim
    assert radical(M).dim == radical(L).dim


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_dim4_recognition_survives_basis_change(seed):
    for L, label in ((standard_filiform(4), "F4"), (direct_sum(heisenberg(1), abelian(1)), "H1_plus_line"),
                     (abelian(4), "abelian4")):
        M = change_basis(L, _invertible(4, seed))
        rec = recognize_nilpotent_dim4(M)
        assert rec.label == label and realizes(M, rec.basis, rec.model)


def test_is_ideal_reports_offending_pair():
    L = sl2()
    ok, pair = is_ideal(L, L.span([L.unit(0)]))
    assert not ok and pair is not None
    assert is_ideal(L, L.full())[0]


def test_radical_requires_char0():
    with pytest.raises(ValueError):
        radical(sl2(GF(3)))


def test_jacobi_violation_named():
    L = LieAlgebra.from_brackets(QQ, 3, {(0, 1): {1: 1}, (0, 2): {0: 1}, (1, 2): {2: 1}})
    v = validate(L)
    assert not v and v.kind == "jacobi" and v.message() == "Jacobi violation at (0,1,2)"


def test_char2_alternating_entry_caught():
    F = GF(2)
    L = abelian(2, F)
    c = [[list(r) for r in plane] for plane in L.c]
    c[1][1][0] = F.one
    v = validate(LieAlgebra(F, c))
    assert not v and v.triple == (1, 1, 0)
