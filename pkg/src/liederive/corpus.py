"""The builtin corpus: named algebras used by the cross-check tests and the CLI."""

from __future__ import annotations

from .algebra import LieAlgebra, center, derived_algebra, direct_sum, quotient, radical
from .builders import (
    abelian, almost_abelian, filiform_integral, heisenberg, heisenberg_integral, sl2,
    sl2_module_extension, sl2_quadratic, standard_filiform, two_dim_nonabelian,
)
from .fields import GF, QQ, FieldSpec


def char_nilpotent_filiform(F: FieldSpec = QQ) -> LieAlgebra:
    """A 7-dim filiform algebra all of whose derivations are nilpotent.

    ``[e1, e_i] = e_(i+1)``, ``[e2, e3] = e5 + 2 e7``, ``[e2, e4] = e6``, ``[e2, e5] = e7``.
    """
    br = {(0, i): {i + 1: 1} for i in range(1, 6)}
    br[(1, 2)] = {4: 1, 6: 2}
    br[(1, 3)] = {5: 1}
    br[(1, 4)] = {6: 1}
    return LieAlgebra.from_brackets(F, 7, br, [f"e{i}" for i in range(1, 8)])


def twisted_almost_abelian(F: FieldSpec = GF(2)) -> LieAlgebra:
    """``x`` acting on a 4-dim abelian ideal by two copies of the companion matrix of
    ``t^2 + t + 1``. Over GF(2) no obstruction fires and no construction applies.
    """
    br = {(0, 1): {2: 1}, (0, 2): {1: 1, 2: 1}, (0, 3): {4: 1}, (0, 4): {3: 1, 4: 1}}
    return LieAlgebra.from_brackets(F, 5, br, ["x", "a1", "a2", "a3", "a4"])


def _quot(L: LieAlgebra, I):
    return quotient(L, I)[0]


CORPUS = {
    # builders over Q
    "abelian1": lambda: abelian(1),
    "abelian2": lambda: abelian(2),
    "abelian3": lambda: abelian(3),
    "abelian5": lambda: abelian(5),
    "heisenberg1": lambda: heisenberg(1),
    "heisenberg2": lambda: heisenberg(2),
    "filiform4": lambda: standard_filiform(4),
    "filiform5": lambda: standard_filiform(5),
    "filiform6": lambda: standard_filiform(6),
    "r2": two_dim_nonabelian,
    "almost_abelian3": lambda: almost_abelian(3),
    "almost_abelian4": lambda: almost_abelian(4),
    "almost_abelian5": lambda: almost_abelian(5),
    "filiform_integral3": lambda: filiform_integral(3),
    "filiform_integral4": lambda: filiform_integral(4),
    "heisenberg_integral1": lambda: heisenberg_integral(1),
    "heisenberg_integral2": lambda: heisenberg_integral(2),
    "sl2": sl2,
    "sl2_ext1": lambda: sl2_module_extension(1),
    "sl2_ext2": lambda: sl2_module_extension(2),
    "sl2_over_Qi": lambda: sl2_quadratic(-1),
    "sl2_over_Q_split": lambda: sl2_quadratic(1),
    "char_nilpotent_filiform7": char_nilpotent_filiform,
    # direct sums
    "sl2+abelian1": lambda: direct_sum(sl2(), abelian(1)),
    "sl2+abelian2": lambda: direct_sum(sl2(), abelian(2)),
    "sl2+heisenberg1": lambda: direct_sum(sl2(), heisenberg(1)),
    "sl2+r2": lambda: direct_sum(sl2(), two_dim_nonabelian()),
    "sl2+sl2": lambda: direct_sum(sl2(), sl2()),
    "r2+r2": lambda: direct_sum(two_dim_nonabelian(), two_dim_nonabelian()),
    "r2+abelian1": lambda: direct_sum(two_dim_nonabelian(), abelian(1)),
    "heisenberg1+abelian1": lambda: direct_sum(heisenberg(1), abelian(1)),
    "sl2+filiform4": lambda: direct_sum(sl2(), standard_filiform(4)),
    # quotients
    "filiform5/center": lambda: _quot(standard_filiform(5), center(standard_filiform(5))),
    "heisenberg2/center": lambda: _quot(heisenberg(2), center(heisenberg(2))),
    "sl2_ext2/radical": lambda: _quot(sl2_module_extension(2), radical(sl2_module_extension(2))),
    "heisenberg_integral1/center": lambda: _quot(heisenberg_integral(1), center(heisenberg_integral(1))),
    "filiform_integral4/derived": lambda: _quot(filiform_integral(4), derived_algebra(filiform_integral(4))),
    # positive characteristic
    "almost_abelian3_gf2": lambda: almost_abelian(3, GF(2)),
    "almost_abelian4_gf3": lambda: almost_abelian(4, GF(3)),
    "almost_abelian3_gf3": lambda: almost_abelian(3, GF(3)),
    "almost_abelian6_gf5": lambda: almost_abelian(6, GF(5)),
    "abelian3_gf2": lambda: abelian(3, GF(2)),
    "heisenberg1_gf2": lambda: heisenberg(1, GF(2)),
    "heisenberg2_gf3": lambda: heisenberg(2, GF(3)),
    "filiform5_gf5": lambda: standard_filiform(5, GF(5)),
    "r2_gf3": lambda: two_dim_nonabelian(GF(3)),
    "sl2_gf3": lambda: sl2(GF(3)),
    "sl2_gf5": lambda: sl2(GF(5)),
    "heisenberg_integral1_gf3": lambda: heisenberg_integral(1, GF(3)),
    "char_nilpotent_filiform7_gf5": lambda: char_nilpotent_filiform(GF(5)),
    "twisted_almost_abelian_gf2": twisted_almost_abelian,
}


def corpus_names() -> list[str]:
    return list(CORPUS)


def load(name: str) -> LieAlgebra:
    try:
        return CORPUS[name]()
    except KeyError:
        raise KeyError(f"unknown corpus entry {name!r}") from None


def corpus():
    """Yield ``(name, algebra)`` pairs in a fixed order."""
    for name, fn in CORPUS.items():
        yield name, fn()
