"""Structure-constant Lie algebras and their basic structure theory.

A :class:`LieAlgebra` stores the full dense tensor ``c[i][j][k]`` with
``[e_i, e_j] = sum_k c[i][j][k] e_k``.  Antisymmetry is stored redundantly and
checked by :func:`validate`, never assumed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .fields import FieldSpec, QQ
from .linalg import (
    Subspace, det, kernel, mat_mul, trace, zeros, inverse, transpose,
)


class NotAnIdeal(ValueError):
    def __init__(self, msg, pair=None):
        super().__init__(msg)
        self.pair = pair


class NotASubalgebra(NotAnIdeal):
    pass


class CharacteristicError(ValueError):
    """Operation requires characteristic zero."""


class LieAlgebra:
    """Finite-dimensional algebra given by structure constants over ``field``."""

    def __init__(self, field: FieldSpec, c, labels=None):
        self.field = field
        self.dim = len(c)
        self.c = c
        self.labels = list(labels) if labels is not None else [f"e{i}" for i in range(self.dim)]
        if len(self.labels) != self.dim:
            raise ValueError("label count does not match dimension")
        self._nz = [[[(k, v) for k, v in enumerate(c[i][j]) if v] for j in range(self.dim)]
                    for i in range(self.dim)]

    @classmethod
    def from_brackets(cls, field: FieldSpec, dim: int, brackets, labels=None) -> LieAlgebra:
        """Build from ``{(i, j): {k: value}}`` for ``i < j``; antisymmetric partners are filled in."""
        c = [[[field.zero] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), terms in brackets.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise ValueError(f"bracket index ({i}, {j}) out of range for dim {dim}")
            if i == j:
                raise ValueError(f"bracket [e{i}, e{i}] must not be listed")
            items = terms.items() if isinstance(terms, dict) else terms
            for k, v in items:
                v = field(v)
                c[i][j][k] = c[i][j][k] + v
                c[j][i][k] = c[j][i][k] - v
        return cls(field, c, labels)

    def brackets(self) -> dict:
        """Sparse ``{(i, j): {k: v}}`` for ``i < j`` and nonzero brackets."""
        out = {}
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                if self._nz[i][j]:
                    out[(i, j)] = dict(self._nz[i][j])
        return out

    def basis_bracket(self, i: int, j: int):
        v = [self.field.zero] * self.dim
        for k, x in self._nz[i][j]:
            v[k] = x
        return v

    def bracket(self, u, v):
        if len(u) != self.dim or len(v) != self.dim:
            raise ValueError(f"expected vectors of length {self.dim}")
        out = [self.field.zero] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            row = self._nz[i]
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                for k, x in row[j]:
                    out[k] = out[k] + ab * x
        return out

    def ad(self, x):
        """Matrix of ``ad x`` acting on column coordinates."""
        n = self.dim
        M = zeros(n, n, self.field)
        for i, a in enumerate(x):
            if not a:
                continue
            for j in range(n):
                for k, v in self._nz[i][j]:
                    M[k][j] = M[k][j] + a * v
        return M

    def ad_basis(self, i: int):
        return self.ad(self.unit(i))

    def unit(self, i: int):
        v = [self.field.zero] * self.dim
        v[i] = self.field.one
        return v

    def zero_vector(self):
        return [self.field.zero] * self.dim

    def full(self) -> Subspace:
        return Subspace.full(self.dim, self.field)

    def zero_space(self) -> Subspace:
        return Subspace.zero(self.dim, self.field)

    def span(self, vectors) -> Subspace:
        return Subspace.span(vectors, self.dim, self.field)

    def relabel(self, labels) -> LieAlgebra:
        return LieAlgebra(self.field, self.c, labels)

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, field={self.field}, brackets={len(self.brackets())})"

    def __eq__(self, other):
        return (isinstance(other, LieAlgebra) and self.field == other.field
                and self.dim == other.dim and self.c == other.c)

    def __hash__(self):
        return hash((self.dim, tuple(sorted(self.brackets()))))


# ---------------------------------------------------------------------------
# validation


@dataclass
class Validation:
    ok: bool
    kind: str | None = None
    triple: tuple | None = None
    residual: list | None = None

    def message(self, labels=None) -> str:
        if self.ok:
            return "ok"
        idx = ",".join(str(i) for i in self.triple)
        if self.kind == "shape":
            return "structure tensor has the wrong shape"
        if self.kind == "antisymmetry":
            return f"antisymmetry violation at ({idx})"
        return f"Jacobi violation at ({idx})"

    def __bool__(self):
        return self.ok


def validate(L: LieAlgebra) -> Validation:
    """Check antisymmetry and the Jacobi identity on all basis index triples.

    The first violation in lexicographic order is reported: ``(i, j, k)`` for
    antisymmetry (``c[i][j][k] != -c[j][i][k]``) and ``(i, j, l)`` with
    ``i < j < l`` for Jacobi, together with the residual vector.
    """
    n = L.dim
    c = L.c
    if any(len(c[i]) != n or any(len(c[i][j]) != n for j in range(n)) for i in range(n)):
        return Validation(False, "shape", ())
    for i in range(n):
        for j in range(i, n):
            for k in range(n):
                # [e_i, e_i] = 0 must be checked directly: c + c vanishes in characteristic 2
                bad = c[i][i][k] if i == j else c[i][j][k] + c[j][i][k]
                if bad:
                    return Validation(False, "antisymmetry", (i, j, k), [bad])
    for i, j, l in itertools.combinations(range(n), 3):
        ei, ej, el = L.unit(i), L.unit(j), L.unit(l)
        r1 = L.bracket(L.basis_bracket(i, j), el)
        r2 = L.bracket(L.basis_bracket(j, l), ei)
        r3 = L.bracket(L.basis_bracket(l, i), ej)
        res = [a + b + d for a, b, d in zip(r1, r2, r3)]
        if any(res):
            return Validation(False, "jacobi", (i, j, l), res)
    return Validation(True)


# ---------------------------------------------------------------------------
# subspaces, series, centres


def subspace_bracket(L: LieAlgebra, U: Subspace, V: Subspace) -> Subspace:
    if U.ambient_dim != L.dim or V.ambient_dim != L.dim:
        raise ValueError("subspace ambient does not match the algebra")
    return L.span([L.bracket(u, v) for u in U.basis for v in V.basis])


def derived_algebra(L: LieAlgebra) -> Subspace:
    n = L.dim
    return L.span([L.basis_bracket(i, j) for i in range(n) for j in range(i + 1, n)])


def derived_series(L: LieAlgebra, start: Subspace | None = None) -> list[Subspace]:
    """``L^(0) = L, L^(i) = [L^(i-1), L^(i-1)]`` until two consecutive terms agree."""
    chain = [L.full() if start is None else start]
    while True:
        nxt = subspace_bracket(L, chain[-1], chain[-1])
        if nxt == chain[-1]:
            return chain
        chain.append(nxt)


def lower_central_series(L: LieAlgebra) -> list[Subspace]:
    """``L^1 = L, L^i = [L^(i-1), L]`` until stable."""
    full = L.full()
    chain = [full]
    while True:
        nxt = subspace_bracket(L, chain[-1], full)
        if nxt == chain[-1]:
            return chain
        chain.append(nxt)


def nilpotency_class(L: LieAlgebra) -> int | None:
    """Smallest ``c`` with ``L^(c+1) = 0``; None if not nilpotent."""
    lcs = lower_central_series(L)
    if lcs[-1].dim:
        return None
    return len(lcs) - 1


def is_abelian(L: LieAlgebra) -> bool:
    return not L.brackets()


def is_nilpotent(L: LieAlgebra) -> bool:
    return lower_central_series(L)[-1].dim == 0


def is_solvable(L: LieAlgebra) -> bool:
    return derived_series(L)[-1].dim == 0


def is_perfect(L: LieAlgebra) -> bool:
    return derived_algebra(L).dim == L.dim


def center(L: LieAlgebra) -> Subspace:
    """Kernel of the stacked adjoint action: rows indexed by (j, k), columns by i."""
    n = L.dim
    rows = []
    for j in range(n):
        for k in range(n):
            row = [L.c[i][j][k] for i in range(n)]
            if any(row):
                rows.append(row)
    return kernel(rows, L.field, n)


def centralizer(L: LieAlgebra, U: Subspace) -> Subspace:
    """``{x : [x, u] = 0 for all u in U}``."""
    n = L.dim
    rows = []
    for u in U.basis:
        cols = [L.bracket(L.unit(i), list(u)) for i in range(n)]
        for k in range(n):
            row = [cols[i][k] for i in range(n)]
            if any(row):
                rows.append(row)
    return kernel(rows, L.field, n)


def is_ideal(L: LieAlgebra, I: Subspace):
    """Return ``(True, None)`` or ``(False, (basis index, vector index))`` for a violating pair."""
    for i in range(L.dim):
        ei = L.unit(i)
        for a, v in enumerate(I.basis):
            if not I.contains_vector(L.bracket(ei, list(v))):
                return False, (i, a)
    return True, None


def is_subalgebra(L: LieAlgebra, U: Subspace):
    for a, u in enumerate(U.basis):
        for b in range(a + 1, U.dim):
            if not U.contains_vector(L.bracket(list(u), list(U.basis[b]))):
                return False, (a, b)
    return True, None


def quotient(L: LieAlgebra, I: Subspace):
    """``L/I`` on the transversal of non-pivot coordinates, plus the projection matrix."""
    ok, pair = is_ideal(L, I)
    if not ok:
        raise NotAnIdeal(f"not an ideal: [e{pair[0]}, basis vector {pair[1]}] leaves it", pair)
    idx = I.complement_indices()
    m = len(idx)
    F = L.field
    brackets = {}
    for a in range(m):
        for b in range(a + 1, m):
            v = I.reduce_mod(L.basis_bracket(idx[a], idx[b]))
            terms = {k: x for k, x in enumerate(v) if x}
            if terms:
                brackets[(a, b)] = terms
    Q = LieAlgebra.from_brackets(F, m, brackets, [L.labels[t] for t in idx])
    proj = transpose([I.reduce_mod(L.unit(j)) for j in range(L.dim)]) if m else []
    return Q, proj


def restrict(L: LieAlgebra, U: Subspace, labels=None) -> LieAlgebra:
    """The subalgebra ``U`` in its stored basis."""
    ok, pair = is_subalgebra(L, U)
    if not ok:
        raise NotASubalgebra(f"not a subalgebra: basis pair {pair} brackets outside", pair)
    m = U.dim
    brackets = {}
    for a in range(m):
        for b in range(a + 1, m):
            w = L.bracket(list(U.basis[a]), list(U.basis[b]))
            coords = U.coordinates(w)
            terms = {k: x for k, x in enumerate(coords) if x}
            if terms:
                brackets[(a, b)] = terms
    return LieAlgebra.from_brackets(L.field, m, brackets, labels or [f"u{a}" for a in range(m)])


def algebra_on_basis(L: LieAlgebra, basis, labels=None) -> LieAlgebra:
    """Structure constants of the subalgebra spanned by an arbitrary (independent) basis."""
    m = len(basis)
    F = L.field
    B = transpose([list(b) for b in basis])  # n x m, columns are basis vectors
    brackets = {}
    # solve B y = w for the coordinates of each bracket
    from .linalg import solve
    for a in range(m):
        for b in range(a + 1, m):
            w = L.bracket(list(basis[a]), list(basis[b]))
            y = solve(B, w, F)
            if y is None:
                raise NotASubalgebra(f"basis pair ({a}, {b}) brackets outside the span", (a, b))
            terms = {k: x for k, x in enumerate(y) if x}
            if terms:
                brackets[(a, b)] = terms
    return LieAlgebra.from_brackets(F, m, brackets, labels)


def direct_sum(L1: LieAlgebra, L2: LieAlgebra) -> LieAlgebra:
    if L1.field != L2.field:
        raise ValueError(f"field mismatch: {L1.field} vs {L2.field}")
    n1 = L1.dim
    brackets = dict(L1.brackets())
    for (i, j), terms in L2.brackets().items():
        brackets[(i + n1, j + n1)] = {k + n1: v for k, v in terms.items()}
    labels = list(L1.labels) + list(L2.labels)
    if len(set(labels)) < len(labels):
        labels = [f"{x}'" if i >= n1 else x for i, x in enumerate(labels)]
    return LieAlgebra.from_brackets(L1.field, n1 + L2.dim, brackets, labels)


def abelian_algebra(n: int, F: FieldSpec = QQ) -> LieAlgebra:
    return LieAlgebra.from_brackets(F, n, {}, [f"e{i + 1}" for i in range(n)])


# ---------------------------------------------------------------------------
# Killing form and radical


def killing_form(L: LieAlgebra):
    n = L.dim
    ads = [L.ad_basis(i) for i in range(n)]
    return [[trace(mat_mul(ads[i], ads[j])) if n else L.field.zero for j in range(n)]
            for i in range(n)]


def _require_char0(L: LieAlgebra, what: str):
    if L.field.characteristic != 0:
        raise CharacteristicError(f"char-0-required: {what} needs characteristic zero")


def radical(L: LieAlgebra, check: bool = True) -> Subspace:
    """Maximal solvable ideal, as the Killing-orthogonal complement of ``L^2`` (char 0)."""
    _require_char0(L, "radical")
    K = killing_form(L)
    D = derived_algebra(L)
    rows = []
    for y in D.basis:
        row = [sum((K[i][j] * y[j] for j in range(L.dim) if y[j]), L.field.zero)
               for i in range(L.dim)]
        rows.append(row)
    R = kernel(rows, L.field, L.dim)
    if check:
        ok, _ = is_ideal(L, R)
        if not ok or derived_series(L, R)[-1].dim:
            raise RuntimeError("radical postcondition failed: not a solvable ideal")
        if R.dim < L.dim:
            Q, _ = quotient(L, R)
            if not det(killing_form(Q), L.field):
                raise RuntimeError("radical postcondition failed: L/Rad(L) is degenerate")
    return R


def is_semisimple(L: LieAlgebra) -> bool:
    _require_char0(L, "semisimplicity test")
    return L.dim > 0 and bool(det(killing_form(L), L.field))


# ---------------------------------------------------------------------------
# isomorphism certificates and recognition


def realizes(L: LieAlgebra, basis, M: LieAlgebra) -> bool:
    """True iff ``basis`` (vectors of L) is independent and obeys M's structure constants."""
    if len(basis) != M.dim:
        return False
    if L.span(basis).dim != len(basis):
        return False
    for i in range(M.dim):
        for j in range(i + 1, M.dim):
            lhs = L.bracket(list(basis[i]), list(basis[j]))
            rhs = L.zero_vector()
            for k, v in M._nz[i][j]:
                rhs = [a + v * b for a, b in zip(rhs, basis[k])]
            if lhs != rhs:
                return False
    return True


def heisenberg_basis(L: LieAlgebra):
    """A basis ``a1, b1, ..., am, bm, z`` with ``[a_i, b_i] = z`` if L is Heisenberg, else None.

    Requires class 2 with ``L^2 = Z(L)`` one-dimensional; the basis comes from
    a symplectic Gram-Schmidt pass on a complement of the centre.
    """
    n = L.dim
    if n < 3 or n % 2 == 0:
        return None
    D = derived_algebra(L)
    Z = center(L)
    if D.dim != 1 or Z != D:
        return None
    z = list(D.basis[0])
    zp = D.pivots[0]

    def omega(u, v):
        return L.bracket(u, v)[zp] / z[zp]

    rest = [L.unit(t) for t in Z.complement_indices()]
    out = []
    while rest:
        u = rest.pop(0)
        partner = next((i for i, w in enumerate(rest) if omega(u, w)), None)
        if partner is None:
            return None
        v = rest.pop(partner)
        s = omega(u, v)
        v = [x / s for x in v]
        rest = [[wi - omega(w, v) * ui + omega(w, u) * vi for wi, ui, vi in zip(w, u, v)]
                for w in rest]
        out += [u, v]
    out.append(z)
    from .builders import heisenberg
    if not realizes(L, out, heisenberg((n - 1) // 2, L.field)):
        return None
    return out


def almost_abelian_witness(L: LieAlgebra):
    """``(x, A)`` with A = L^2 abelian of codimension 1 and ``ad x = id`` on A, else None."""
    n = L.dim
    if n < 2:
        return None
    A = derived_algebra(L)
    if A.dim != n - 1:
        return None
    if subspace_bracket(L, A, A).dim:
        return None
    t = A.complement_indices()[0]
    et = L.unit(t)
    a0 = list(A.basis[0])
    img = L.bracket(et, a0)
    lam = next((img[k] / a0[k] for k in range(n) if a0[k]), None)
    if not lam:
        return None
    x = [v / lam for v in et]
    for a in A.basis:
        if L.bracket(x, list(a)) != list(a):
            return None
    return x, A


@dataclass
class StructureProfile:
    dim: int
    field: str
    is_abelian: bool
    is_nilpotent: bool
    nilpotency_class: int | None
    is_solvable: bool
    derived_length: int | None
    is_perfect: bool
    is_semisimple: bool | None
    is_completely_solvable: bool
    is_filiform: bool
    heisenberg_index: int | None
    almost_abelian: tuple | None
    dim_center: int
    dim_derived: int
    lower_central_dims: list = dc_field(default_factory=list)
    derived_dims: list = dc_field(default_factory=list)
    heisenberg_basis: list | None = None

    def summary(self) -> str:
        parts = [f"dim {self.dim} over {self.field}"]
        if self.is_abelian:
            parts.append("abelian")
        if self.is_nilpotent:
            parts.append(f"nilpotent class {self.nilpotency_class}")
        elif self.is_solvable:
            parts.append(f"solvable (derived length {self.derived_length})")
        if self.is_perfect:
            parts.append("perfect")
        if self.is_semisimple:
            parts.append("semisimple")
        if self.is_filiform:
            parts.append("filiform")
        if self.heisenberg_index is not None:
            parts.append(f"Heisenberg H_{self.heisenberg_index}")
        if self.almost_abelian is not None:
            parts.append("almost abelian")
        parts.append(f"dim Z = {self.dim_center}")
        parts.append(f"dim L^2 = {self.dim_derived}")
        return ", ".join(parts)


def classify(L: LieAlgebra) -> StructureProfile:
    lcs = lower_central_series(L)
    ds = derived_series(L)
    nilpotent = lcs[-1].dim == 0
    solvable = ds[-1].dim == 0
    cls_ = len(lcs) - 1 if nilpotent else None
    D = ds[1] if len(ds) > 1 else ds[0]
    perfect = D.dim == L.dim
    semisimple = None
    if L.field.characteristic == 0:
        semisimple = L.dim > 0 and bool(det(killing_form(L), L.field))
    # completely solvable: L^2 nilpotent
    DL = restrict(L, D) if D.dim else None
    comp_solv = DL is None or is_nilpotent(DL)
    filiform = nilpotent and L.dim >= 2 and cls_ == L.dim - 1
    hb = heisenberg_basis(L) if nilpotent and cls_ == 2 else None
    aa = almost_abelian_witness(L)
    return StructureProfile(
        dim=L.dim, field=str(L.field), is_abelian=(D.dim == 0), is_nilpotent=nilpotent,
        nilpotency_class=cls_, is_solvable=solvable,
        derived_length=(len(ds) - 1) if solvable else None, is_perfect=perfect,
        is_semisimple=semisimple, is_completely_solvable=comp_solv, is_filiform=filiform,
        heisenberg_index=(L.dim - 1) // 2 if hb else None,
        almost_abelian=aa, dim_center=center(L).dim, dim_derived=D.dim,
        lower_central_dims=[s.dim for s in lcs], derived_dims=[s.dim for s in ds],
        heisenberg_basis=hb,
    )


@dataclass
class Dim4Recognition:
    label: str  # abelian4 | H1_plus_line | F4 | not-applicable
    basis: list | None = None  # columns realizing the model algebra's constants
    model: LieAlgebra | None = None


def recognize_nilpotent_dim4(L: LieAlgebra) -> Dim4Recognition:
    """Identify a 4-dim nilpotent char-0 algebra as abelian, H_1 + line, or F_4.

    The answer comes with an explicit basis realizing the model's structure
    constants, so the identification is certified, not inferred.
    """
    from .builders import heisenberg, standard_filiform

    if L.field.characteristic != 0 or L.dim != 4 or not is_nilpotent(L):
        return Dim4Recognition("not-applicable")
    k = nilpotency_class(L)
    F = L.field
    if k <= 1:
        basis = [L.unit(i) for i in range(4)]
        return Dim4Recognition("abelian4", basis, abelian_algebra(4, F))
    # vectors from the relevant subspaces first, so a skewed basis cannot hide them
    extra = [list(v) for v in center(L).basis + centralizer(L, derived_algebra(L)).basis]
    candidates = extra + _small_vectors(L)
    if k == 2:
        model = direct_sum(heisenberg(1, F), abelian_algebra(1, F).relabel(["w"]))
        Z = center(L)
        for x, y in itertools.combinations(candidates, 2):
            z = L.bracket(x, y)
            if not any(z):
                continue
            for w in candidates:
                basis = [x, y, z, w]
                if Z.contains_vector(w) and realizes(L, basis, model):
                    return Dim4Recognition("H1_plus_line", basis, model)
    if k == 3:
        model = standard_filiform(4, F)
        C = centralizer(L, derived_algebra(L))
        D = derived_algebra(L)
        for e1 in candidates:
            if C.contains_vector(e1):
                continue
            for e2 in candidates:
                if not C.contains_vector(e2) or D.contains_vector(e2):
                    continue
                e3 = L.bracket(e1, e2)
                e4 = L.bracket(e1, e3)
                basis = [e1, e2, e3, e4]
                if realizes(L, basis, model):
                    return Dim4Recognition("F4", basis, model)
    raise RuntimeError("dim-4 nilpotent algebra escaped the classification; no basis found")


def _small_vectors(L: LieAlgebra, bound: int = 1):
    """Basis vectors first, then small integer combinations, deterministically."""
    n = L.dim
    F = L.field
    out = [L.unit(i) for i in range(n)]
    for coeffs in itertools.product(range(-bound, bound + 1), repeat=n):
        if sum(1 for c in coeffs if c) >= 2:
            out.append([F(c) for c in coeffs])
    return out


def change_basis(L: LieAlgebra, basis, labels=None) -> LieAlgebra:
    """The same algebra written in a new basis (columns of an invertible matrix)."""
    return algebra_on_basis(L, basis, labels)


def coordinates_in_basis(basis, v, F: FieldSpec):
    B = transpose([list(b) for b in basis])
    return [sum((r[j] * v[j] for j in range(len(v)) if v[j]), F.zero) for r in inverse(B, F)]
