"""Exact dense/sparse linear algebra over a :class:`FieldSpec`.

Matrices are lists of rows of field scalars.  Subspaces are kept in reduced
row-echelon form so that equality of subspaces is equality of bases.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field as dc_field

from .fields import FieldSpec


class AmbientMismatch(ValueError):
    pass


# ---------------------------------------------------------------------------
# elementary matrix helpers


def zeros(rows: int, cols: int, F: FieldSpec):
    z = F.zero
    return [[z] * cols for _ in range(rows)]


def identity(n: int, F: FieldSpec):
    M = zeros(n, n, F)
    for i in range(n):
        M[i][i] = F.one
    return M


def coerce_matrix(M, F: FieldSpec):
    return [[F(x) for x in row] for row in M]


def transpose(M):
    return [list(col) for col in zip(*M)]


def _zero_like(*mats):
    for M in mats:
        for row in M:
            for x in row:
                return x - x
    return 0


def mat_mul(A, B):
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    zero = _zero_like(A, B)
    out = []
    for row in A:
        acc = [zero] * cols
        for k in range(inner):
            a = row[k]
            if a:
                Bk = B[k]
                for j in range(cols):
                    b = Bk[j]
                    if b:
                        acc[j] = acc[j] + a * b
        out.append(acc)
    return out


def mat_vec(A, v):
    zero = _zero_like(A, [v])
    out = []
    for row in A:
        acc = zero
        for a, b in zip(row, v):
            if a and b:
                acc = acc + a * b
        out.append(acc)
    return out


def mat_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(c, A):
    return [[c * a for a in row] for row in A]


def commutator(A, B):
    return mat_sub(mat_mul(A, B), mat_mul(B, A))


def trace(A):
    t = A[0][0] - A[0][0] if A else 0
    for i in range(len(A)):
        t = t + A[i][i]
    return t


def is_zero_matrix(A) -> bool:
    return all(not x for row in A for x in row)


def vectorize(M):
    """Row-major flattening."""
    return [x for row in M for x in row]


def unvectorize(v, rows: int, cols: int | None = None):
    cols = rows if cols is None else cols
    return [list(v[r * cols:(r + 1) * cols]) for r in range(rows)]


def linear_combination(coeffs, mats):
    out = None
    for c, M in zip(coeffs, mats):
        if not c:
            continue
        term = mat_scale(c, M)
        out = term if out is None else mat_add(out, term)
    if out is None:
        M = mats[0]
        out = [[x - x for x in row] for row in M]
    return out


# ---------------------------------------------------------------------------
# sparse incremental echelon form


class Echelon:
    """Incrementally maintained reduced row-echelon form of sparse rows.

    Rows are ``{column: value}`` dicts.  Every stored row has pivot value 1 and
    is zero in every other pivot column, so reduction of a new row is a single
    pass over the pivots it touches.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, row: dict) -> dict:
        row = {k: v for k, v in row.items() if v}
        for c in [c for c in row if c in self.rows]:
            v = row.pop(c)
            for k, w in self.rows[c].items():
                if k == c:
                    continue
                nv = row.get(k, 0) - v * w
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        return row

    def add(self, row: dict) -> bool:
        """Insert a row; return True iff it increased the rank."""
        row = self.reduce(row)
        if not row:
            return False
        p = min(row)
        inv = 1 / row[p]
        row = {k: v * inv for k, v in row.items()}
        for P in self.rows.values():
            v = P.get(p)
            if v:
                for k, w in row.items():
                    nv = P.get(k, 0) - v * w
                    if nv:
                        P[k] = nv
                    else:
                        P.pop(k, None)
        self.rows[p] = row
        return True

    def add_dense(self, vec) -> bool:
        return self.add({i: x for i, x in enumerate(vec) if x})

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)

    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def dense_rows(self, F: FieldSpec):
        z = F.zero
        out = []
        for p in self.pivots():
            r = [z] * self.ncols
            for k, v in self.rows[p].items():
                r[k] = v
            out.append(r)
        return out

    def kernel_vectors(self, F: FieldSpec):
        """Basis of the null space of the stored rows, one vector per free column."""
        piv = self.pivots()
        pivset = set(piv)
        z, one = F.zero, F.one
        out = []
        for f in range(self.ncols):
            if f in pivset:
                continue
            v = [z] * self.ncols
            v[f] = one
            for p in piv:
                w = self.rows[p].get(f)
                if w:
                    v[p] = -w
            out.append(v)
        return out


def rref(M, F: FieldSpec | None = None, ncols: int | None = None):
    """Return ``(R, rank, pivots)`` with ``R`` the reduced row-echelon form of ``M``.

    Zero rows are dropped from ``R``.
    """
    if ncols is None:
        ncols = len(M[0]) if M else 0
    if F is None:
        F = _guess_field(M)
    E = Echelon(ncols)
    for row in M:
        E.add_dense(row)
    return E.dense_rows(F), E.rank, E.pivots()


def rank(M) -> int:
    return rref(M)[1]


def _guess_field(M) -> FieldSpec:
    from .fields import GFElement, QQ, GF

    for row in M:
        for x in row:
            if isinstance(x, GFElement):
                return GF(x.p)
            return QQ
    return QQ


# ---------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of ``F^ambient_dim`` stored as a canonical RREF basis."""

    field: FieldSpec
    ambient_dim: int
    basis: tuple = ()
    pivots: tuple = dc_field(default=())

    @classmethod
    def span(cls, vectors, ambient_dim: int, F: FieldSpec) -> Subspace:
        E = Echelon(ambient_dim)
        for v in vectors:
            if len(v) != ambient_dim:
                raise AmbientMismatch(f"vector of length {len(v)} in ambient {ambient_dim}")
            E.add_dense(v)
        return cls._from_echelon(E, F)

    @classmethod
    def _from_echelon(cls, E: Echelon, F: FieldSpec) -> Subspace:
        rows = E.dense_rows(F)
        return cls(F, E.ncols, tuple(tuple(r) for r in rows), tuple(E.pivots()))

    @classmethod
    def zero(cls, ambient_dim: int, F: FieldSpec) -> Subspace:
        return cls(F, ambient_dim, (), ())

    @classmethod
    def full(cls, ambient_dim: int, F: FieldSpec) -> Subspace:
        I = identity(ambient_dim, F)
        return cls(F, ambient_dim, tuple(tuple(r) for r in I), tuple(range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return self.dim

    def _check(self, other: Subspace):
        if self.ambient_dim != other.ambient_dim or self.field != other.field:
            raise AmbientMismatch(
                f"ambient {self.ambient_dim}/{self.field} vs {other.ambient_dim}/{other.field}")

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient_dim == other.ambient_dim and self.field == other.field
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, pivots={self.pivots})"

    def echelon(self) -> Echelon:
        E = Echelon(self.ambient_dim)
        for p, r in zip(self.pivots, self.basis):
            E.rows[p] = {k: v for k, v in enumerate(r) if v}
        return E

    def contains_vector(self, v) -> bool:
        return not self.residual(v)

    def residual(self, v) -> dict:
        """Sparse remainder of ``v`` after reduction by the basis."""
        return self.echelon().reduce({i: x for i, x in enumerate(v) if x})

    def coordinates(self, v):
        """Coordinates of ``v`` in the stored basis; ``ValueError`` if not contained."""
        if self.residual(v):
            raise ValueError("vector is not in the subspace")
        return [v[p] for p in self.pivots]

    def combine(self, coords):
        out = [self.field.zero] * self.ambient_dim
        for c, r in zip(coords, self.basis):
            if c:
                out = [a + c * b for a, b in zip(out, r)]
        return out

    def contains(self, other: Subspace) -> bool:
        """True iff ``other`` is a subspace of ``self``."""
        self._check(other)
        E = self.echelon()
        return all(E.contains({i: x for i, x in enumerate(r) if x}) for r in other.basis)

    __ge__ = contains

    def __le__(self, other: Subspace) -> bool:
        return other.contains(self)

    def sum(self, other: Subspace) -> Subspace:
        self._check(other)
        return Subspace.span(list(self.basis) + list(other.basis), self.ambient_dim, self.field)

    __add__ = sum

    def intersect(self, other: Subspace) -> Subspace:
        """Zassenhaus: RREF of ``[[u, u], [v, 0]]``; rows with zero left half span the meet."""
        self._check(other)
        n = self.ambient_dim
        z = self.field.zero
        E = Echelon(2 * n)
        for u in self.basis:
            E.add_dense(list(u) + list(u))
        for v in other.basis:
            E.add_dense(list(v) + [z] * n)
        vecs = []
        for p in E.pivots():
            if p >= n:
                row = E.rows[p]
                vecs.append([row.get(n + i, z) for i in range(n)])
        return Subspace.span(vecs, n, self.field)

    __and__ = intersect

    def complement_indices(self) -> list[int]:
        """Non-pivot coordinates: the standard transversal of the subspace."""
        piv = set(self.pivots)
        return [i for i in range(self.ambient_dim) if i not in piv]

    def reduce_mod(self, v):
        """Coordinates of ``v + self`` in the quotient, read off at non-pivot positions."""
        z = self.field.zero
        r = self.residual(v)
        return [r.get(i, z) for i in self.complement_indices()]


def kernel(M, F: FieldSpec, ncols: int | None = None) -> Subspace:
    """Null space ``{v : M v = 0}`` in canonical form."""
    if ncols is None:
        ncols = len(M[0]) if M else 0
    E = Echelon(ncols)
    for row in M:
        E.add_dense(row)
    return Subspace.span(E.kernel_vectors(F), ncols, F)


def sparse_kernel(rows, ncols: int, F: FieldSpec) -> Subspace:
    """Null space of a system given as sparse ``{column: value}`` rows."""
    E = Echelon(ncols)
    for r in rows:
        E.add(r)
    return Subspace.span(E.kernel_vectors(F), ncols, F)


def solve(A, b, F: FieldSpec):
    """One solution of ``A x = b`` (free variables set to zero), or None."""
    ncols = len(A[0]) if A else 0
    E = Echelon(ncols + 1)
    for row, bi in zip(A, b):
        E.add_dense(list(row) + [bi])
    if ncols in E.rows:
        return None
    x = [F.zero] * ncols
    for p, row in E.rows.items():
        x[p] = row.get(ncols, F.zero)
    return x


def det(A, F: FieldSpec):
    n = len(A)
    if n == 0:
        return F.one
    M = [list(r) for r in A]
    d = F.one
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            return F.zero
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            d = -d
        pv = M[c][c]
        d = d * pv
        inv = 1 / pv
        for r in range(c + 1, n):
            f = M[r][c]
            if f:
                f = f * inv
                Mr, Mc = M[r], M[c]
                for k in range(c, n):
                    if Mc[k]:
                        Mr[k] = Mr[k] - f * Mc[k]
    return d


def inverse(A, F: FieldSpec):
    n = len(A)
    E = Echelon(2 * n)
    I = identity(n, F)
    for row, irow in zip(A, I):
        E.add_dense(list(row) + irow)
    if E.pivots()[:n] != list(range(n)) or len(E.rows) < n:
        raise ZeroDivisionError("matrix is singular")
    z = F.zero
    return [[E.rows[i].get(n + j, z) for j in range(n)] for i in range(n)]


# ---------------------------------------------------------------------------
# characteristic polynomial and eigenvalues


def char_poly(A, F: FieldSpec):
    """Monic characteristic polynomial ``det(tI - A)``, ascending coefficients.

    Faddeev-LeVerrier over Q; the division-free Berkowitz recursion over GF(p),
    where LeVerrier's division by k breaks down once k reaches p.
    """
    if F.characteristic == 0:
        return _char_poly_leverrier(A, F)
    return _char_poly_berkowitz(A, F)


def _char_poly_leverrier(A, F):
    n = len(A)
    coeffs = [F.zero] * (n + 1)
    coeffs[n] = F.one
    M = zeros(n, n, F)
    I = identity(n, F)
    for k in range(1, n + 1):
        M = mat_add(mat_mul(A, M), mat_scale(coeffs[n - k + 1], I))
        coeffs[n - k] = -trace(mat_mul(A, M)) / k
    return coeffs


def _char_poly_berkowitz(A, F):
    n = len(A)
    if n == 0:
        return [F.one]
    vect = [F.one, -A[0][0]]  # descending
    for r in range(1, n):
        R = A[r][:r]
        C = [A[i][r] for i in range(r)]
        Ar = [row[:r] for row in A[:r]]
        Q = [F.one, -A[r][r]]
        w = C
        for _ in range(r):
            Q.append(-sum((a * b for a, b in zip(R, w)), F.zero))
            w = mat_vec(Ar, w)
        new = []
        for i in range(r + 2):
            s = F.zero
            for j in range(min(i, r) + 1):
                s = s + Q[i - j] * vect[j]
            new.append(s)
        vect = new
    return list(reversed(vect))


def eigenvalues_in_field(A, F: FieldSpec) -> list:
    """Roots of the characteristic polynomial that lie in ``F``, sorted."""
    from .poly import rational_roots, roots_mod_p

    cp = char_poly(A, F)
    if F.characteristic == 0:
        return sorted(rational_roots(cp))
    return sorted(roots_mod_p(cp, F), key=lambda x: x.value)


# ---------------------------------------------------------------------------
# nonsingular elements of a span of matrices


@dataclass
class NonsingularSearch:
    """Outcome of searching a matrix span for an invertible element.

    ``status`` is ``"found"`` (``coefficients``/``witness`` set), ``"none"``
    (the determinant of the generic combination is certified identically
    zero, or no combination is invertible over the finite field), or
    ``"unknown"`` (the certificate would be too large to produce).
    """

    status: str
    coefficients: list | None = None
    witness: list | None = None
    determinant: object = None
    evaluations: int = 0
    note: str = ""


EXHAUSTIVE_LIMIT = 10 ** 6
GRID_LIMIT = 200_000


def nonsingular_element(mats, F: FieldSpec, seed: int = 0) -> NonsingularSearch:
    """Find ``sum c_i M_i`` with nonzero determinant, or certify there is none.

    After a seeded random fast path, the determinant of the generic combination
    (a homogeneous polynomial of degree n in k variables) is evaluated on the
    simplex lattice ``{a in N^k : |a| <= n}``, which is unisolvent for
    polynomials of total degree <= n.  Every value zero certifies the
    polynomial is zero.  Over GF(p) this needs p > n; otherwise all
    coefficient tuples are enumerated when p^k <= 10^6.
    """
    if not mats:
        return NonsingularSearch("none", note="empty span")
    n = len(mats[0])
    if n == 0:
        return NonsingularSearch("found", [F.one] + [F.zero] * (len(mats) - 1), [], F.one)
    # keep a linearly independent subset; dropped matrices get coefficient 0
    E = Echelon(n * n)
    keep = [i for i, M in enumerate(mats) if E.add_dense(vectorize(M))]
    sub = [mats[i] for i in keep]
    k = len(sub)
    evals = 0
    if k == 0:
        return NonsingularSearch("none", note="every matrix in the span is zero")

    def lift(coeffs):
        full = [F.zero] * len(mats)
        for i, c in zip(keep, coeffs):
            full[i] = F(c)
        return full

    def attempt(coeffs):
        nonlocal evals
        evals += 1
        W = linear_combination([F(c) for c in coeffs], sub)
        d = det(W, F)
        if d:
            return NonsingularSearch("found", lift(coeffs), W, d, evals)
        return None

    rng = random.Random(seed)
    fast = [[1 if j == i else 0 for j in range(k)] for i in range(k)]
    fast.append([1] * k)
    bound = 3 * n + 3 if F.characteristic == 0 else F.p
    for _ in range(8):
        fast.append([rng.randrange(bound) if F.characteristic else rng.randint(-bound, bound)
                     for _ in range(k)])
    for coeffs in fast:
        hit = attempt(coeffs)
        if hit:
            return hit

    p = F.characteristic
    if p == 0 or p > n:
        count = math.comb(n + k, k)
        if count > GRID_LIMIT:
            return NonsingularSearch("unknown", evaluations=evals,
                                     note=f"certificate grid of {count} points exceeds {GRID_LIMIT}")
        for a in _simplex_points(k, n):
            hit = attempt(list(a))
            if hit:
                return hit
        return NonsingularSearch("none", evaluations=evals,
                                 note="generic determinant vanishes on a unisolvent grid")
    total = p ** k
    if total > EXHAUSTIVE_LIMIT:
        return NonsingularSearch("unknown", evaluations=evals,
                                 note="unknown-over-small-field")
    # projective enumeration: first nonzero coordinate equal to 1
    for lead in range(k):
        for tail in itertools.product(range(p), repeat=k - lead - 1):
            hit = attempt([0] * lead + [1] + list(tail))
            if hit:
                return hit
    return NonsingularSearch("none", evaluations=evals,
                             note="exhaustive enumeration over the prime field")


def _simplex_points(k: int, d: int):
    """All a in N^k with sum(a) <= d, in lexicographic order."""
    if k == 0:
        yield ()
        return
    for first in range(d + 1):
        for rest in _simplex_points(k - 1, d - first):
            yield (first,) + rest
