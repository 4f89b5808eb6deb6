"""Characteristic-zero structure theory: Levi complements, simple components
of a semisimple algebra, and composition series.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebra import (
    CharacteristicError, LieAlgebra, derived_algebra, derived_series, is_ideal,
    is_subalgebra, killing_form, quotient, radical, restrict,
)
from .linalg import (
    Echelon, Subspace, det, mat_mul, mat_vec, sparse_kernel, unvectorize, vectorize,
    identity, linear_combination,
)
from .poly import FactorizationLimitError, factor_rational_poly


class LeviError(RuntimeError):
    """The cocycle-correction system had no solution (cannot happen in char 0)."""


class ComponentsUnknown(RuntimeError):
    pass


def _char0(L: LieAlgebra, what: str):
    if L.field.characteristic != 0:
        raise CharacteristicError(f"char-0-required: {what} needs characteristic zero")


@dataclass
class LeviDecomposition:
    radical: Subspace
    levi: Subspace

    def verify(self, L: LieAlgebra) -> bool:
        closed, _ = is_subalgebra(L, self.levi)
        return (closed and (self.levi & self.radical).dim == 0
                and (self.levi + self.radical).dim == L.dim)


def levi_complement(L: LieAlgebra) -> LeviDecomposition:
    """A semisimple subalgebra S with ``L = S + Rad(L)`` as vector spaces.

    Induction on the derived length of the radical: split off the last
    nonzero derived term A (abelian, characteristic), find a Levi factor of
    L/A, and correct its lifted basis by elements of A so the brackets close.
    The correction is a linear system whose solvability is Whitehead's lemma.
    """
    _char0(L, "Levi decomposition")
    R = radical(L)
    dec = LeviDecomposition(R, _levi(L, R))
    if not dec.verify(L):
        raise LeviError("Levi factor failed verification")
    if dec.levi.dim:
        S = restrict(L, dec.levi)
        if not det(killing_form(S), L.field):
            raise LeviError("Levi factor has degenerate Killing form")
    return dec


def _levi(L: LieAlgebra, R: Subspace) -> Subspace:
    if R.dim == 0:
        return L.full()
    if R.dim == L.dim:
        return L.zero_space()
    ds = derived_series(L, R)
    A = ds[-2]  # last nonzero term: abelian ideal of L
    if A == R:
        return _levi_abelian(L, R, R)
    Q, _ = quotient(L, A)
    RQ = Subspace.span([A.reduce_mod(list(r)) for r in R.basis], Q.dim, Q.field)
    SQ = _levi(Q, RQ)
    idx = A.complement_indices()

    def lift(q):
        v = [L.field.zero] * L.dim
        for t, x in zip(idx, q):
            v[t] = x
        return v

    T = Subspace.span([lift(list(s)) for s in SQ.basis] + list(map(list, A.basis)), L.dim, L.field)
    return _levi_abelian(L, T, A, [lift(list(s)) for s in SQ.basis])


def _levi_abelian(L: LieAlgebra, T: Subspace, A: Subspace, lifts=None) -> Subspace:
    """Levi factor of the subalgebra T whose radical A is abelian."""
    F = L.field
    if lifts is None:
        lifts = [L.unit(t) for t in A.complement_indices()]
    s = len(lifts)
    if s == 0:
        return L.zero_space()
    abasis = [list(a) for a in A.basis]
    r = len(abasis)
    # structure constants of T/A in the lifted basis
    lift_space = Echelon(L.dim)
    for a in abasis:
        lift_space.add_dense(a)
    gamma = {}
    omega = {}
    B = [list(t) for t in lifts] + abasis
    from .linalg import solve, transpose
    Bt = transpose(B)
    for i in range(s):
        for j in range(i + 1, s):
            w = L.bracket(lifts[i], lifts[j])
            y = solve(Bt, w, F)
            if y is None:
                raise LeviError("lifted basis does not close modulo the radical")
            gamma[(i, j)] = y[:s]
            omega[(i, j)] = [x - sum((y[k] * lifts[k][t] for k in range(s)), F.zero)
                             for t, x in enumerate(w)]
    # unknowns y[i][q]: a_i = sum_q y[i][q] abasis[q], column i * r + q.
    # equation: [t_i, a_j] - [t_j, a_i] - sum_k gamma_ij^k a_k = -omega_ij
    ad_t = [[L.bracket(lifts[i], abasis[q]) for q in range(r)] for i in range(s)]
    ncols = s * r
    E = Echelon(ncols + 1)
    for (i, j), g in gamma.items():
        for coord in range(L.dim):
            row = {}

            def put(col, val):
                if val:
                    nv = row.get(col, 0) + val
                    if nv:
                        row[col] = nv
                    else:
                        row.pop(col, None)

            for q in range(r):
                put(j * r + q, ad_t[i][q][coord])
                put(i * r + q, -ad_t[j][q][coord])
                for k in range(s):
                    if g[k]:
                        put(k * r + q, -g[k] * abasis[q][coord])
            put(ncols, omega[(i, j)][coord])  # augmented column holds +omega, i.e. rhs -omega
            if row:
                E.add(row)
    if ncols in E.rows:
        raise LeviError("cocycle correction system is inconsistent (contradicts Whitehead's lemma)")
    y = [F.zero] * ncols
    for p, row in E.rows.items():
        y[p] = -row.get(ncols, F.zero)
    levi_vecs = []
    for i in range(s):
        v = list(lifts[i])
        for q in range(r):
            if y[i * r + q]:
                v = [a + y[i * r + q] * b for a, b in zip(v, abasis[q])]
        levi_vecs.append(v)
    return L.span(levi_vecs)


# ---------------------------------------------------------------------------
# simple components via the centroid


def centroid(S: LieAlgebra) -> list:
    """Basis of ``{T : T[x, y] = [T x, y] for all x, y}`` as n x n matrices."""
    n = S.dim
    nz = S._nz
    rows = []
    for i in range(n):
        for j in range(n):
            eqs = {}
            for l, v in nz[i][j]:
                for k in range(n):
                    eqs.setdefault(k, {})
                    eqs[k][k * n + l] = eqs[k].get(k * n + l, 0) + v
            for l in range(n):
                for k, v in nz[l][j]:
                    eqs.setdefault(k, {})
                    eqs[k][l * n + i] = eqs[k].get(l * n + i, 0) - v
            for r in eqs.values():
                r = {c: v for c, v in r.items() if v}
                if r:
                    rows.append(r)
    space = sparse_kernel(rows, n * n, S.field)
    return [unvectorize(list(v), n) for v in space.basis]


def minimal_polynomial(T, F):
    """Monic minimal polynomial of a square matrix (ascending coefficients)."""
    n = len(T)
    E = Echelon(n * n)
    powers = [identity(n, F)]
    vecs = []
    while True:
        P = powers[-1]
        v = vectorize(P)
        if not E.add_dense(v):
            break
        vecs.append(v)
        powers.append(mat_mul(powers[-1], T))
    d = len(vecs)
    # solve sum c_k T^k = T^d
    from .linalg import solve, transpose
    c = solve(transpose(vecs), vectorize(powers[d]), F)
    return [-x for x in c] + [F.one]


def poly_of_matrix(f, T, F):
    n = len(T)
    acc = [[F.zero] * n for _ in range(n)]
    for coef in reversed(f):
        acc = mat_mul(acc, T)
        for i in range(n):
            acc[i][i] = acc[i][i] + coef
    return acc


def semisimple_components(S: LieAlgebra, max_tries: int = 64) -> list[Subspace]:
    """Simple ideals of a semisimple char-0 algebra, in S's coordinates.

    A generic centroid element T generates the centroid (a product of number
    fields); the kernels of ``p(T)`` for the irreducible factors p of its
    minimal polynomial over Q are exactly the simple components.
    """
    _char0(S, "semisimple component decomposition")
    F = S.field
    if S.dim == 0:
        return []
    if not det(killing_form(S), F):
        raise ValueError("input is not semisimple (degenerate Killing form)")
    C = centroid(S)
    k = len(C)
    T = None
    for coeffs in _combos(k, max_tries):
        cand = linear_combination([F(c) for c in coeffs], C)
        mp = minimal_polynomial(cand, F)
        if len(mp) - 1 == k:
            T, mu = cand, mp
            break
    if T is None:
        raise ComponentsUnknown(f"no generic centroid element found in {max_tries} tries")
    try:
        factors = factor_rational_poly(mu)
    except FactorizationLimitError as exc:
        raise ComponentsUnknown(f"components-unknown: {exc}") from exc
    comps = []
    for p, mult in factors:
        if mult != 1:
            raise RuntimeError("centroid minimal polynomial is not squarefree")
        K = poly_of_matrix(p, T, F)
        from .linalg import kernel
        comps.append(kernel(K, F, S.dim))
    comps.sort(key=lambda W: (W.pivots, W.basis))
    _verify_components(S, comps)
    return comps


def _combos(k: int, max_tries: int):
    yield [1] * k
    count = 1
    for bound in itertools.count(1):
        for coeffs in itertools.product(range(-bound, bound + 1), repeat=k):
            if max(abs(c) for c in coeffs) != bound:
                continue
            yield list(coeffs)
            count += 1
            if count >= max_tries:
                return


def _verify_components(S: LieAlgebra, comps):
    total = sum(W.dim for W in comps)
    if total != S.dim or Subspace.span([list(v) for W in comps for v in W.basis], S.dim, S.field).dim != S.dim:
        raise RuntimeError("components do not sum directly to S")
    for a, b in itertools.combinations(comps, 2):
        for u in a.basis:
            for v in b.basis:
                if any(S.bracket(list(u), list(v))):
                    raise RuntimeError("distinct components do not commute")
    for W in comps:
        for v in W.basis:
            if ideal_closure(S, [list(v)]) != W:
                raise RuntimeError("component is not minimal: a basis vector generates a smaller ideal")


def ideal_closure(L: LieAlgebra, vectors) -> Subspace:
    """Smallest ideal containing the given vectors."""
    E = Echelon(L.dim)
    frontier = []
    for v in vectors:
        if E.add_dense(v):
            frontier.append(v)
    while frontier:
        v = frontier.pop()
        for i in range(L.dim):
            w = L.bracket(L.unit(i), v)
            if E.add_dense(w):
                frontier.append(w)
    return Subspace._from_echelon(E, L.field)


# ---------------------------------------------------------------------------
# composition series


@dataclass
class CompositionData:
    chain: list  # ascending subspaces 0 = L_0 < ... < L_k = L
    factors: list  # [{"dim": d, "simple": bool}]
    radical: Subspace
    levi: Subspace
    components: list  # simple components of the Levi factor, in L coordinates

    @property
    def length(self) -> int:
        return len(self.chain) - 1


def composition_series(L: LieAlgebra) -> CompositionData:
    """Solvable part by codimension-one ideals of Rad(L), then one simple component at a time."""
    _char0(L, "composition series")
    dec = levi_complement(L)
    R = dec.radical
    # descending chain inside the radical: hyperplanes containing the derived algebra
    desc = [R]
    cur = R
    while cur.dim:
        sub = restrict(L, cur)
        D = derived_algebra(sub)
        if D.dim == sub.dim:
            raise RuntimeError("solvable radical term is perfect")
        keep = Echelon(sub.dim)
        for d in D.basis:
            keep.add_dense(list(d))
        extra = []
        for t in range(sub.dim):
            if keep.add_dense(sub.unit(t)):
                extra.append(t)
        hyper = Subspace.span(list(map(list, D.basis)) + [sub.unit(t) for t in extra[:-1]],
                              sub.dim, L.field)
        # back to L coordinates
        nxt = L.span([cur.combine(list(v)) for v in hyper.basis])
        desc.append(nxt)
        cur = nxt
    chain = list(reversed(desc))
    factors = [{"dim": 1, "simple": False} for _ in range(R.dim)]
    comps = []
    if dec.levi.dim:
        S = restrict(L, dec.levi)
        comps = [L.span([dec.levi.combine(list(v)) for v in W.basis])
                 for W in semisimple_components(S)]
        acc = R
        for W in comps:
            acc = acc + W
            chain.append(acc)
            factors.append({"dim": W.dim, "simple": True})
    data = CompositionData(chain, factors, R, dec.levi, comps)
    _verify_chain(L, data)
    return data


def _verify_chain(L: LieAlgebra, data: CompositionData):
    for lo, hi in zip(data.chain, data.chain[1:]):
        if not (hi.contains(lo) and hi.dim > lo.dim):
            raise RuntimeError("composition chain is not strictly increasing")
        H = restrict(L, hi)
        lo_in_hi = Subspace.span([hi.coordinates(list(v)) for v in lo.basis], hi.dim, L.field)
        ok, _ = is_ideal(H, lo_in_hi)
        if not ok:
            raise RuntimeError("composition term is not an ideal of the next term")


def composition_length(L: LieAlgebra) -> int:
    return composition_series(L).length
