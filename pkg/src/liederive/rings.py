"""Finite-dimensional associative algebras: the derived ring, the delta
series, nilpotency, and the Dorroh extension.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .fields import FieldSpec, QQ
from .linalg import Echelon, Subspace


@dataclass
class AssocValidation:
    ok: bool
    triple: tuple | None = None

    def message(self) -> str:
        if self.ok:
            return "ok"
        return f"associativity violation at ({','.join(map(str, self.triple))})"

    def __bool__(self):
        return self.ok


class AssocAlgebra:
    """``e_i e_j = sum_k m[i][j][k] e_k``; ``unit`` holds identity coordinates if given."""

    def __init__(self, field: FieldSpec, m, labels=None, unit=None):
        self.field = field
        self.dim = len(m)
        self.m = m
        self.labels = list(labels) if labels is not None else [f"e{i}" for i in range(self.dim)]
        self.unit = list(unit) if unit is not None else None
        self._nz = [[[(k, v) for k, v in enumerate(m[i][j]) if v] for j in range(self.dim)]
                    for i in range(self.dim)]

    @classmethod
    def from_products(cls, field: FieldSpec, dim: int, products, labels=None, unit=None):
        """``products``: ``{(i, j): {k: value}}`` listing every nonzero ``e_i e_j``."""
        m = [[[field.zero] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), terms in products.items():
            items = terms.items() if isinstance(terms, dict) else terms
            for k, v in items:
                m[i][j][k] = m[i][j][k] + field(v)
        if unit is not None:
            unit = [field(x) for x in unit]
        return cls(field, m, labels, unit)

    def products(self) -> dict:
        return {(i, j): dict(self._nz[i][j]) for i in range(self.dim) for j in range(self.dim)
                if self._nz[i][j]}

    def mul(self, u, v):
        F = self.field
        out = [F.zero] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                for k, c in self._nz[i][j]:
                    out[k] = out[k] + ab * c
        return out

    def commutator(self, u, v):
        return [a - b for a, b in zip(self.mul(u, v), self.mul(v, u))]

    def basis_vector(self, i: int):
        v = [self.field.zero] * self.dim
        v[i] = self.field.one
        return v

    def full(self) -> Subspace:
        return Subspace.full(self.dim, self.field)

    def span(self, vectors) -> Subspace:
        return Subspace.span(vectors, self.dim, self.field)


def validate_assoc(R: AssocAlgebra) -> AssocValidation:
    e = [R.basis_vector(i) for i in range(R.dim)]
    for i, j, k in itertools.product(range(R.dim), repeat=3):
        if R.mul(R.mul(e[i], e[j]), e[k]) != R.mul(e[i], R.mul(e[j], e[k])):
            return AssocValidation(False, (i, j, k))
    if R.unit is not None:
        for i in range(R.dim):
            if R.mul(R.unit, e[i]) != e[i] or R.mul(e[i], R.unit) != e[i]:
                return AssocValidation(False, ("unit", i))
    return AssocValidation(True)


def ideal_closure(R: AssocAlgebra, vectors, ring: Subspace | None = None) -> Subspace:
    """Two-sided ideal of ``ring`` (default R) generated by ``vectors``: close under
    multiplication by ring elements on both sides."""
    mults = [list(v) for v in (ring.basis if ring is not None else R.full().basis)]
    E = Echelon(R.dim)
    frontier = []
    for v in vectors:
        if E.add_dense(list(v)):
            frontier.append(list(v))
    while frontier:
        v = frontier.pop()
        for r in mults:
            for w in (R.mul(r, v), R.mul(v, r)):
                if E.add_dense(w):
                    frontier.append(w)
    return Subspace._from_echelon(E, R.field)


def is_two_sided_ideal(R: AssocAlgebra, I: Subspace) -> bool:
    for i in range(R.dim):
        e = R.basis_vector(i)
        for v in I.basis:
            if not (I.contains_vector(R.mul(e, list(v))) and I.contains_vector(R.mul(list(v), e))):
                return False
    return True


def commutator_span(R: AssocAlgebra, U: Subspace) -> Subspace:
    return R.span([R.commutator(list(a), list(b)) for a, b in itertools.combinations(U.basis, 2)])


def derived_ring(R: AssocAlgebra) -> Subspace:
    """Ideal of R generated by all commutators ``xy - yx``."""
    return ideal_closure(R, commutator_span(R, R.full()).basis)


def delta_series(R: AssocAlgebra) -> list[Subspace]:
    """``d^0 = R``, ``d^n`` = ideal of R generated by ``[d^(n-1), d^(n-1)]``, until stable."""
    chain = [R.full()]
    while True:
        nxt = ideal_closure(R, commutator_span(R, chain[-1]).basis)
        if nxt == chain[-1]:
            return chain
        chain.append(nxt)
        if nxt.dim == 0:
            return chain


def delta_term(R: AssocAlgebra, n: int) -> Subspace:
    """``d^n(R)``; the series is constant after it stabilizes."""
    chain = delta_series(R)
    return chain[min(n, len(chain) - 1)]


def is_solvable_ring(R: AssocAlgebra) -> bool:
    return delta_series(R)[-1].dim == 0


def power_series(R: AssocAlgebra, U: Subspace | None = None) -> list[Subspace]:
    """``U, U^2, U^3, ...`` (products of subspaces of R) until stable."""
    U = U if U is not None else R.full()
    chain = [U]
    while True:
        nxt = R.span([R.mul(list(a), list(b)) for a in chain[-1].basis for b in U.basis])
        if nxt == chain[-1]:
            return chain
        chain.append(nxt)
        if nxt.dim == 0:
            return chain


def is_nilpotent_ring(R: AssocAlgebra, U: Subspace | None = None) -> bool:
    return power_series(R, U)[-1].dim == 0


def restrict_ring(R: AssocAlgebra, U: Subspace) -> AssocAlgebra:
    """The subring U in its stored basis."""
    prods = {}
    for a, u in enumerate(U.basis):
        for b, v in enumerate(U.basis):
            w = R.mul(list(u), list(v))
            if not U.contains_vector(w):
                raise ValueError(f"not closed: basis pair ({a}, {b})")
            terms = {k: x for k, x in enumerate(U.coordinates(w)) if x}
            if terms:
                prods[(a, b)] = terms
    return AssocAlgebra.from_products(R.field, U.dim, prods, [f"u{a}" for a in range(U.dim)])


def dorroh_extension(R: AssocAlgebra) -> AssocAlgebra:
    """``F 1 + R`` with the adjoined unit at index 0 and R shifted by one."""
    n = R.dim
    F = R.field
    prods = {(0, 0): {0: F.one}}
    for i in range(n):
        prods[(0, i + 1)] = {i + 1: F.one}
        prods[(i + 1, 0)] = {i + 1: F.one}
    for (i, j), terms in R.products().items():
        prods[(i + 1, j + 1)] = {k + 1: v for k, v in terms.items()}
    unit = [F.one] + [F.zero] * n
    return AssocAlgebra.from_products(F, n + 1, prods, ["1"] + list(R.labels), unit)


def embed_in_dorroh(U: Subspace) -> Subspace:
    """Image of a subspace of R inside its Dorroh extension."""
    F = U.field
    return Subspace.span([[F.zero] + list(v) for v in U.basis], U.ambient_dim + 1, F)


# ---------------------------------------------------------------------------
# fixtures


def matrix_algebra(n: int, F: FieldSpec = QQ, upper: bool = False, strict: bool = False) -> AssocAlgebra:
    """Full, upper-triangular, or strictly upper-triangular n x n matrices over F (basis E_ij)."""
    idx = [(i, j) for i in range(n) for j in range(n)
           if not upper or (j > i if strict else j >= i)]
    pos = {ij: t for t, ij in enumerate(idx)}
    prods = {}
    for a, (i, j) in enumerate(idx):
        for b, (k, l) in enumerate(idx):
            if j == k and (i, l) in pos:
                prods[(a, b)] = {pos[(i, l)]: 1}
    unit = None
    if not strict:
        unit = [1 if i == j else 0 for i, j in idx]
    return AssocAlgebra.from_products(F, len(idx), prods, [f"E{i + 1}{j + 1}" for i, j in idx], unit)


def group_algebra_cyclic(n: int, F: FieldSpec = QQ) -> AssocAlgebra:
    """Commutative unital ``F[C_n]``."""
    prods = {(i, j): {(i + j) % n: 1} for i in range(n) for j in range(n)}
    return AssocAlgebra.from_products(F, n, prods, [f"g{i}" for i in range(n)],
                                      [1] + [0] * (n - 1))


def truncated_polynomials(n: int, F: FieldSpec = QQ) -> AssocAlgebra:
    """``t F[t] / (t^(n+1))``: commutative, nilpotent, no unit."""
    prods = {(i, j): {i + j + 1: 1} for i in range(n) for j in range(n) if i + j + 1 < n}
    return AssocAlgebra.from_products(F, n, prods, [f"t{i + 1}" for i in range(n)])


RING_FIXTURES = {
    "upper2": lambda F=QQ: matrix_algebra(2, F, upper=True),
    "upper3": lambda F=QQ: matrix_algebra(3, F, upper=True),
    "strict_upper3": lambda F=QQ: matrix_algebra(3, F, upper=True, strict=True),
    "strict_upper4": lambda F=QQ: matrix_algebra(4, F, upper=True, strict=True),
    "full2": lambda F=QQ: matrix_algebra(2, F),
    "cyclic3": lambda F=QQ: group_algebra_cyclic(3, F),
    "truncated3": lambda F=QQ: truncated_polynomials(3, F),
}
