"""Derivation algebras: Der(L), inner derivations, Der(L)^2, characteristic
lines, the image series ``L^[k]``, and the derivation tower of a centreless
algebra.

Matrices act on column coordinates: ``D e_j = sum_k D[k][j] e_k``.  A
derivation basis is canonical: the RREF basis of the row-major vectorized
solution space of the Leibniz system.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field as dc_field

from .algebra import (
    LieAlgebra, center, lower_central_series, derived_series, nilpotency_class,
)
from .linalg import (
    Subspace, commutator, eigenvalues_in_field, identity, kernel, mat_sub, mat_scale,
    mat_vec, sparse_kernel, unvectorize, vectorize, transpose,
)

log = logging.getLogger(__name__)


class TowerPreconditionError(ValueError):
    pass


@dataclass
class DerivationBasis:
    algebra: LieAlgebra
    basis: list  # n x n matrices
    space: Subspace  # vectorized, ambient n^2

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, M) -> bool:
        return self.space.contains_vector(vectorize(M))

    def coordinates(self, M):
        return self.space.coordinates(vectorize(M))


def leibniz_rows(L: LieAlgebra):
    """Sparse rows of the linear system ``D[e_i, e_j] = [D e_i, e_j] + [e_i, D e_j]``.

    Unknown ``D[k][l]`` sits at column ``k * n + l``.
    """
    n = L.dim
    nz = L._nz
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            eqs = defaultdict(dict)

            def put(k, col, val):
                r = eqs[k]
                nv = r.get(col, 0) + val
                if nv:
                    r[col] = nv
                else:
                    r.pop(col, None)

            for l, v in nz[i][j]:
                for k in range(n):
                    put(k, k * n + l, v)
            for l in range(n):
                for k, v in nz[l][j]:
                    put(k, l * n + i, -v)
                for k, v in nz[i][l]:
                    put(k, l * n + j, -v)
            rows.extend(r for r in eqs.values() if r)
    return rows


def derivation_space(L: LieAlgebra) -> DerivationBasis:
    n = L.dim
    space = sparse_kernel(leibniz_rows(L), n * n, L.field)
    basis = [unvectorize(list(v), n) for v in space.basis]
    return DerivationBasis(L, basis, space)


def is_derivation(L: LieAlgebra, D) -> bool:
    """Leibniz rule on every basis pair, evaluated directly through the bracket."""
    n = L.dim
    cols = [[D[k][j] for k in range(n)] for j in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            lhs = mat_vec(D, L.basis_bracket(i, j))
            r1 = L.bracket(cols[i], L.unit(j))
            r2 = L.bracket(L.unit(i), cols[j])
            if lhs != [a + b for a, b in zip(r1, r2)]:
                return False
    return True


def inner_derivations(L: LieAlgebra) -> Subspace:
    n = L.dim
    return Subspace.span([vectorize(L.ad_basis(i)) for i in range(n)], n * n, L.field)


@dataclass
class DerivationAlgebra:
    """Der(L) as a Lie algebra in the canonical derivation basis."""

    derivations: DerivationBasis
    algebra: LieAlgebra
    inner: Subspace  # ad(L), in Der-basis coordinates

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def embedding(self):
        """Matrix (dim Der x dim L) whose column j holds the coordinates of ad e_j."""
        L = self.derivations.algebra
        cols = [self.derivations.coordinates(L.ad_basis(j)) for j in range(L.dim)]
        return transpose(cols) if cols else []


def der_lie_closure(L: LieAlgebra) -> DerivationAlgebra:
    DB = derivation_space(L)
    m = DB.dim
    brackets = {}
    for a in range(m):
        for b in range(a + 1, m):
            C = commutator(DB.basis[a], DB.basis[b])
            coords = DB.coordinates(C)  # raises if Der(L) were not closed
            terms = {k: v for k, v in enumerate(coords) if v}
            if terms:
                brackets[(a, b)] = terms
    A = LieAlgebra.from_brackets(L.field, m, brackets, [f"D{a}" for a in range(m)])
    inner = Subspace.span([DB.coordinates(L.ad_basis(i)) for i in range(L.dim)], m, L.field)
    # ad(L) is an ideal: [D, ad x] = ad(D x)
    for D in DB.basis:
        for j in range(L.dim):
            Dx = [D[k][j] for k in range(L.dim)]
            if commutator(D, L.ad_basis(j)) != L.ad(Dx):
                raise RuntimeError("inner derivations failed the ideal identity [D, ad x] = ad(Dx)")
    return DerivationAlgebra(DB, A, inner)


def der_squared(L: LieAlgebra, DB: DerivationBasis | None = None) -> Subspace:
    """Der(L)^2 as a subspace of vectorized n x n matrices."""
    DB = DB or derivation_space(L)
    n = L.dim
    from .linalg import Echelon
    E = Echelon(n * n)
    for a in range(DB.dim):
        for b in range(a + 1, DB.dim):
            E.add_dense(vectorize(commutator(DB.basis[a], DB.basis[b])))
    return Subspace._from_echelon(E, L.field)


def der_series(L: LieAlgebra):
    """Derived and lower central series of Der(L), in Der-basis coordinates."""
    DA = der_lie_closure(L)
    return derived_series(DA.algebra), lower_central_series(DA.algebra)


def common_eigenspaces(mats, F, n: int):
    """Subspaces ``W`` on which every matrix acts as a scalar (eigenvalues in F), W != 0."""
    spaces = [Subspace.full(n, F)]
    for D in mats:
        nxt = []
        eig = eigenvalues_in_field(D, F)
        for W in spaces:
            for mu in eig:
                K = kernel(mat_sub(D, mat_scale(mu, identity(n, F))), F, n)
                X = W & K
                if X.dim:
                    nxt.append(X)
        spaces = nxt
        if not spaces:
            break
    return spaces


def one_dim_characteristic_ideals(L: LieAlgebra, DB: DerivationBasis | None = None):
    """Common eigenspaces of Der(L); every nonzero vector in one spans a
    one-dimensional characteristic ideal, and every such ideal arises this way.
    """
    DB = DB or derivation_space(L)
    if L.dim == 0 or DB.dim == 0:
        return []
    out = []
    for W in common_eigenspaces(DB.basis, L.field, L.dim):
        for v in W.basis:
            for i in range(L.dim):
                w = L.bracket(L.unit(i), list(v))
                if not Subspace.span([list(v)], L.dim, L.field).contains_vector(w):
                    raise RuntimeError("common eigenvector failed to span an ideal")
        out.append(W)
    return out


@dataclass
class CharNilpotency:
    chain: list  # L^[1], L^[2], ...
    is_characteristically_nilpotent: bool
    m: int | None  # smallest m with L^[m] = 0
    der_nilpotent: bool

    @property
    def consistent(self) -> bool:
        return self.is_characteristically_nilpotent == self.der_nilpotent


def bracket_image_series(L: LieAlgebra, DB: DerivationBasis | None = None) -> list[Subspace]:
    """``L^[1] = Der(L)(L)``, ``L^[k] = Der(L)(L^[k-1])`` until stable or zero."""
    DB = DB or derivation_space(L)
    prev = L.full()
    chain = []
    while True:
        nxt = L.span([mat_vec(D, list(v)) for D in DB.basis for v in prev.basis])
        if chain and nxt == chain[-1]:
            return chain
        chain.append(nxt)
        if nxt.dim == 0:
            return chain
        prev = nxt


def is_characteristically_nilpotent(L: LieAlgebra) -> CharNilpotency:
    """Decide via the image series, and cross-check: Der(L) nilpotent and dim L > 1."""
    DB = derivation_space(L)
    chain = bracket_image_series(L, DB)
    cn = bool(chain) and chain[-1].dim == 0 and L.dim > 0
    m = len(chain) if cn else None
    DA = der_lie_closure(L)
    der_nil = nilpotency_class(DA.algebra) is not None and L.dim > 1
    return CharNilpotency(chain, cn, m, der_nil)


def is_complete(L: LieAlgebra) -> bool:
    return center(L).dim == 0 and derivation_space(L).dim == L.dim


@dataclass
class Tower:
    terms: list  # D_0 = L, D_1 = Der(L), ...
    embeddings: list  # embeddings[i]: D_i -> D_(i+1), columns = coordinates of ad e_j
    complete: bool
    complete_at: int | None
    unverified_theory: bool = False
    notes: list = dc_field(default_factory=list)

    @property
    def dims(self):
        return [T.dim for T in self.terms]


def derivation_tower(L: LieAlgebra, max_steps: int = 16) -> Tower:
    """``D_0 = L, D_i = Der(D_(i-1))`` until a complete term or ``max_steps`` extensions."""
    if center(L).dim:
        raise TowerPreconditionError("derivation tower requires a centreless algebra (Z(L) != 0)")
    terms = [L]
    embeddings = []
    notes = []
    unverified = L.field.characteristic != 0
    if unverified:
        notes.append("unverified-theory: termination is only guaranteed in characteristic zero")
    cur = L
    for step in range(max_steps + 1):
        DA = der_lie_closure(cur)
        if DA.dim == cur.dim:
            return Tower(terms, embeddings, True, step, unverified, notes)
        if step == max_steps:
            break
        nxt = DA.algebra
        if center(nxt).dim:
            raise RuntimeError(f"Der(D_{step}) has nonzero centre; tower invariant broken")
        embeddings.append(DA.embedding())
        terms.append(nxt)
        log.debug("tower step %d: dim %d -> %d", step, cur.dim, nxt.dim)
        cur = nxt
    notes.append(f"max_steps={max_steps} exceeded; tower is partial")
    return Tower(terms, embeddings, False, None, unverified, notes)
