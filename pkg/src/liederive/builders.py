"""Named families of Lie algebras used throughout the package and its tests."""

from __future__ import annotations

from .algebra import LieAlgebra, direct_sum, abelian_algebra
from .fields import FieldSpec, QQ


class BuilderError(ValueError):
    pass


def _need(cond, msg):
    if not cond:
        raise BuilderError(msg)


def abelian(n: int, F: FieldSpec = QQ) -> LieAlgebra:
    _need(n >= 0, "dimension must be non-negative")
    return abelian_algebra(n, F)


def heisenberg(m: int, F: FieldSpec = QQ) -> LieAlgebra:
    """H_m on ``a1, b1, ..., am, bm, z`` with ``[a_i, b_i] = z``."""
    _need(m >= 1, "Heisenberg index must be >= 1")
    n = 2 * m + 1
    labels = []
    for i in range(1, m + 1):
        labels += [f"a{i}", f"b{i}"]
    labels.append("z")
    return LieAlgebra.from_brackets(F, n, {(2 * i, 2 * i + 1): {n - 1: 1} for i in range(m)}, labels)


def standard_filiform(n: int, F: FieldSpec = QQ) -> LieAlgebra:
    """F_n on ``e1..en`` with ``[e1, e_i] = e_(i+1)`` for ``2 <= i <= n-1``."""
    _need(n >= 2, "standard filiform algebras need n >= 2")
    # 0-based: [e_0, e_i] = e_{i+1} for 1 <= i <= n-2
    return LieAlgebra.from_brackets(F, n, {(0, i): {i + 1: 1} for i in range(1, n - 1)},
                                    [f"e{i + 1}" for i in range(n)])


def almost_abelian(n: int, F: FieldSpec = QQ) -> LieAlgebra:
    """``x, a1..a_(n-1)`` with ``[x, a_i] = a_i``."""
    _need(n >= 2, "almost abelian algebras need n >= 2")
    return LieAlgebra.from_brackets(F, n, {(0, i): {i: 1} for i in range(1, n)},
                                    ["x"] + [f"a{i}" for i in range(1, n)])


def filiform_integral(n: int, F: FieldSpec = QQ) -> LieAlgebra:
    """``e, e1..en`` with ``[e, e_i] = i e_i`` and the F_n brackets; its derived algebra is F_n."""
    _need(n >= 2, "n must be >= 2")
    _need(F.characteristic == 0, "the grading extension of F_n is built over characteristic zero")
    brackets = {(0, i): {i: i} for i in range(1, n + 1)}
    for i in range(2, n):
        brackets[(1, i)] = {i + 1: 1}
    return LieAlgebra.from_brackets(F, n + 1, brackets, ["e"] + [f"e{i}" for i in range(1, n + 1)])


def heisenberg_integral(m: int, F: FieldSpec = QQ) -> LieAlgebra:
    """``e, a_i, b_i, z`` with ``[e, a_i] = a_i, [e, b_i] = -b_i, [a_i, b_i] = z``."""
    _need(m >= 1, "Heisenberg index must be >= 1")
    _need(F.characteristic != 2, "characteristic must differ from two")
    n = 2 * m + 2
    z = n - 1
    brackets = {}
    for i in range(m):
        a, b = 1 + 2 * i, 2 + 2 * i
        brackets[(0, a)] = {a: 1}
        brackets[(0, b)] = {b: -1}
        brackets[(a, b)] = {z: 1}
    labels = ["e"]
    for i in range(1, m + 1):
        labels += [f"a{i}", f"b{i}"]
    labels.append("z")
    return LieAlgebra.from_brackets(F, n, brackets, labels)


def two_dim_nonabelian(F: FieldSpec = QQ) -> LieAlgebra:
    """``x, a`` with ``[x, a] = a``."""
    return LieAlgebra.from_brackets(F, 2, {(0, 1): {1: 1}}, ["x", "a"])


def sl2(F: FieldSpec = QQ) -> LieAlgebra:
    """``e, h, f`` with ``[h, e] = 2e, [h, f] = -2f, [e, f] = h``."""
    return LieAlgebra.from_brackets(
        F, 3, {(0, 1): {0: -2}, (1, 2): {2: -2}, (0, 2): {1: 1}}, ["e", "h", "f"])


def sl2_module_extension(m: int, F: FieldSpec = QQ) -> LieAlgebra:
    """sl2 semidirect the (m+1)-dimensional irreducible module ``v0..vm`` (abelian).

    Action: ``h v_k = (m - 2k) v_k``, ``f v_k = v_(k+1)``, ``e v_k = k (m - k + 1) v_(k-1)``.
    """
    _need(m >= 1, "module highest weight must be >= 1")
    n = 3 + m + 1
    brackets = {(0, 1): {0: -2}, (1, 2): {2: -2}, (0, 2): {1: 1}}
    for k in range(m + 1):
        v = 3 + k
        if k >= 1:
            brackets[(0, v)] = {v - 1: k * (m - k + 1)}
        if m - 2 * k:
            brackets[(1, v)] = {v: m - 2 * k}
        if k < m:
            brackets[(2, v)] = {v + 1: 1}
    return LieAlgebra.from_brackets(F, n, brackets, ["e", "h", "f"] + [f"v{k}" for k in range(m + 1)])


def sl2_quadratic(d: int, F: FieldSpec = QQ) -> LieAlgebra:
    """sl2 over ``Q[t]/(t^2 - d)`` viewed as a 6-dim algebra over Q.

    Basis ``e, h, f, te, th, tf``; ``[t x, t y] = d [x, y]``.  Simple over Q when
    d is not a square (for d = -1 the twist is by ``t^2 + 1``).
    """
    base = sl2(F)
    brackets = {}
    for (i, j), terms in base.brackets().items():
        brackets[(i, j)] = dict(terms)
        brackets[(i, j + 3)] = {k + 3: v for k, v in terms.items()}
        brackets[(i + 3, j)] = {k + 3: v for k, v in terms.items()}
        brackets[(i + 3, j + 3)] = {k: d * v for k, v in terms.items()}
    labels = ["e", "h", "f", "te", "th", "tf"]
    return LieAlgebra.from_brackets(F, 6, brackets, labels)


FAMILIES = {
    "abelian": abelian,
    "heisenberg": heisenberg,
    "standard_filiform": standard_filiform,
    "filiform": standard_filiform,
    "almost_abelian": almost_abelian,
    "filiform_integral": filiform_integral,
    "heisenberg_integral": heisenberg_integral,
    "two_dim_nonabelian": lambda n, F=QQ: two_dim_nonabelian(F),
    "r2": lambda n, F=QQ: two_dim_nonabelian(F),
    "sl2": lambda n, F=QQ: sl2(F),
    "sl2_module_extension": sl2_module_extension,
    "sl2_quadratic": sl2_quadratic,
}


def build(family: str, n: int, F: FieldSpec = QQ) -> LieAlgebra:
    try:
        fn = FAMILIES[family.replace("-", "_")]
    except KeyError:
        raise BuilderError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}") from None
    return fn(n, F)


__all__ = [
    "abelian", "heisenberg", "standard_filiform", "almost_abelian", "filiform_integral",
    "heisenberg_integral", "two_dim_nonabelian", "sl2", "sl2_module_extension", "sl2_quadratic",
    "direct_sum", "build", "FAMILIES", "BuilderError",
]
