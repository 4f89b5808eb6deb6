"""Deciding whether a Lie algebra is a derived algebra.

Constructions produce an *integral*: an algebra H together with an injective
embedding of L whose image is exactly ``H^2``.  Obstructions are necessary
conditions that every derived algebra satisfies; each carries a witness that
can be re-checked independently.  :func:`is_derived_algebra` combines both
and cross-checks them against each other.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field

from .algebra import (
    CharacteristicError, LieAlgebra, almost_abelian_witness, center, centralizer,
    classify, derived_algebra, derived_series, direct_sum, heisenberg_basis, is_ideal,
    is_nilpotent, is_perfect, lower_central_series, nilpotency_class, quotient, radical,
    realizes, recognize_nilpotent_dim4, restrict, subspace_bracket, validate,
)
from .builders import filiform_integral, heisenberg, heisenberg_integral
from .derivations import (
    bracket_image_series, derivation_space, der_squared, is_complete,
    is_derivation, one_dim_characteristic_ideals,
)
from .linalg import (
    Subspace, commutator, det, identity, inverse, mat_mul, mat_vec, nonsingular_element,
    rank, trace, transpose, vectorize, zeros,
)
from .structure import ComponentsUnknown, composition_series

log = logging.getLogger(__name__)


class SoundnessError(RuntimeError):
    """A verified certificate coexists with a fired global obstruction."""


class NotApplicable(ValueError):
    pass


ANCHORS = {
    "self-perfect": "a perfect algebra is its own derived algebra",
    "codim1": "a derivation inducing a nonsingular map on L/L^2 yields an integral of dimension dim L + 1",
    "class2": "an algebra nilpotent of class at most 2 is a derived algebra (D = 1 on a complement of L^2, 2 on L^2)",
    "abelian-radical": "in characteristic zero an algebra with abelian radical is a derived algebra",
    "almost-abelian-char-p": "an almost abelian algebra of dimension n is a derived algebra exactly when char F divides n - 1",
    "direct-sum": "a direct sum of derived algebras is a derived algebra",
    "filiform-grading": "F_n is the derived algebra of F_n extended by the grading derivation e_i -> i e_i",
    "heisenberg-grading": "H_m is the derived algebra of H_m extended by a_i -> a_i, b_i -> -b_i",
    "char-ideal-not-central": "in a derived algebra every one-dimensional characteristic ideal is central",
    "ad-not-in-der-squared": "in a derived algebra the inner derivations lie in Der(L)^2",
    "complete-not-perfect": "a complete algebra is a derived algebra exactly when it is perfect",
    "radical-not-nilpotent": "in characteristic zero the radical of a derived algebra is nilpotent",
    "quotient-not-nilpotent": "in characteristic zero a derived algebra is nilpotent modulo the last term of its derived series",
    "trace-nonzero-almost-abelian": "an almost abelian algebra of dimension n is a derived algebra exactly when char F divides n - 1",
    "two-dim-nonabelian": "in composition length 2 the only algebra that is not a derived algebra is the two-dimensional nonabelian one",
    "low-length-no": "in characteristic zero the derived algebras of composition length at most 4 are the perfect ones, those with abelian radical, nilpotent ones of dimension at most 4, and S + H_1 with S simple",
    "leger-togo-annihilate": "a characteristically nilpotent algebra whose centre is killed by every derivation is not a derived algebra",
    "leger-togo-gap": "a characteristically nilpotent algebra of class c with L^[m] = 0 and 2(m - 1) > c + 1 is not a derived algebra",
    "filiform-char-nilpotent": "a filiform algebra is a derived algebra exactly when it is not characteristically nilpotent",
    "nilpotent-integral-centre": "a nonabelian algebra with one-dimensional centre is not the derived algebra of a nilpotent algebra",
    "nilpotent-integral-abelianization": "a nonabelian algebra with dim L/L^2 <= 3 is not the derived algebra of a nilpotent algebra",
}


# ---------------------------------------------------------------------------
# certificates


@dataclass
class IntegralCertificate:
    L: LieAlgebra
    H: LieAlgebra
    embedding: list  # dim H x dim L; column j is the image of e_j
    method: str
    derivation: list | None = None  # D for single-derivation extensions
    extra: dict = dc_field(default_factory=dict)
    components: list = dc_field(default_factory=list)

    @property
    def anchor(self) -> str:
        return ANCHORS[self.method]

    def verify(self) -> bool:
        if not verify_integral(self.H, self.embedding, self.L):
            return False
        if self.method == "almost-abelian-char-p":
            f1, f2 = self.extra["f1"], self.extra["f2"]
            m = len(f1)
            if commutator(f1, f2) != identity(m, self.L.field):
                return False
        if self.derivation is not None and not is_derivation(self.L, self.derivation):
            return False
        return True


def verify_integral(H: LieAlgebra, embedding, L: LieAlgebra) -> bool:
    """True iff ``embedding`` is an injective homomorphism of L onto ``H^2``."""
    n, N = L.dim, H.dim
    if len(embedding) != N or any(len(r) != n for r in embedding):
        raise ValueError(f"embedding shape must be {N} x {n}")
    if H.field != L.field:
        raise ValueError("H and L are over different fields")
    if not validate(H):
        return False
    cols = [[embedding[r][j] for r in range(N)] for j in range(n)]
    image = H.span(cols)
    if image.dim != n:
        return False
    if image != derived_algebra(H):
        return False
    for i in range(n):
        for j in range(i + 1, n):
            lhs = H.bracket(cols[i], cols[j])
            rhs = mat_vec(embedding, L.basis_bracket(i, j))
            if lhs != rhs:
                return False
    return True


def _inclusion(N: int, n: int, offset: int, F):
    E = zeros(N, n, F)
    for j in range(n):
        E[offset + j][j] = F.one
    return E


def self_perfect_certificate(L: LieAlgebra) -> IntegralCertificate:
    cert = IntegralCertificate(L, L, identity(L.dim, L.field), "self-perfect")
    if not cert.verify():
        raise RuntimeError("self-perfect certificate failed: L is not perfect")
    return cert


def extension_by_derivation(L: LieAlgebra, D, label: str = "d") -> LieAlgebra:
    """``F d + L`` with ``[d, v] = D v``; d is basis index 0."""
    n = L.dim
    while label in L.labels:
        label += "'"
    brackets = {}
    for j in range(n):
        col = {k + 1: D[k][j] for k in range(n) if D[k][j]}
        if col:
            brackets[(0, j + 1)] = col
    for (i, j), terms in L.brackets().items():
        brackets[(i + 1, j + 1)] = {k + 1: v for k, v in terms.items()}
    return LieAlgebra.from_brackets(L.field, n + 1, brackets, [label] + list(L.labels))


def derivation_certificate(L: LieAlgebra, D, method: str) -> IntegralCertificate:
    H = extension_by_derivation(L, D)
    cert = IntegralCertificate(L, H, _inclusion(H.dim, L.dim, 1, L.field), method, derivation=D)
    if not cert.verify():
        raise RuntimeError(f"{method} certificate failed verification")
    return cert


# ---------------------------------------------------------------------------
# constructions


def induced_on_abelianization(L: LieAlgebra, D):
    """Matrix of the map induced by D on ``L/L^2`` (coordinates: non-pivot indices of L^2)."""
    L2 = derived_algebra(L)
    idx = L2.complement_indices()
    cols = []
    for t in idx:
        v = L2.reduce_mod([D[k][t] for k in range(L.dim)])
        cols.append(v)
    return transpose(cols) if cols else []


@dataclass
class Codim1Outcome:
    status: str  # found | none | unknown
    certificate: IntegralCertificate | None = None
    note: str = ""


def codim1_integral(L: LieAlgebra, seed: int = 0) -> Codim1Outcome:
    """Search Der(L) for a derivation that is nonsingular on ``L/L^2``.

    Such a D gives ``H = F d + L`` with ``H^2 = D(L) + L^2 = L``.  Conversely
    every (dim L + 1)-dimensional integral arises this way, so a certified
    "none" rules those out.  The identity and the grading ``e_i -> i e_i``
    are tried before the general search for readable certificates.
    """
    F = L.field
    n = L.dim
    for D in (identity(n, F), _diag(range(1, n + 1), F)):
        if is_derivation(L, D) and _nonsingular_on_quotient(L, D):
            return Codim1Outcome("found", derivation_certificate(L, D, "codim1"))
    DB = derivation_space(L)
    induced = [induced_on_abelianization(L, D) for D in DB.basis]
    search = nonsingular_element(induced, F, seed=seed)
    if search.status == "found":
        D = [[F.zero] * n for _ in range(n)]
        for c, B in zip(search.coefficients, DB.basis):
            if c:
                D = [[a + c * b for a, b in zip(r, s)] for r, s in zip(D, B)]
        return Codim1Outcome("found", derivation_certificate(L, D, "codim1"))
    return Codim1Outcome(search.status, note=search.note)


def _diag(values, F):
    values = list(values)
    n = len(values)
    M = zeros(n, n, F)
    for i, v in enumerate(values):
        M[i][i] = F(v)
    return M


def _nonsingular_on_quotient(L, D) -> bool:
    M = induced_on_abelianization(L, D)
    return not M or bool(det(M, L.field))


def class2_integral(L: LieAlgebra) -> IntegralCertificate:
    """D = identity on a coordinate complement of L^2 and 2 on L^2."""
    k = nilpotency_class(L)
    if k is None or k > 2:
        raise NotApplicable("class2 construction needs nilpotency class at most 2")
    F = L.field
    n = L.dim
    L2 = derived_algebra(L)
    D = identity(n, F)
    for p, row in zip(L2.pivots, L2.basis):
        # D e_p = e_p + (basis vector of L^2 with pivot p): equals 2 on L^2
        for r in range(n):
            D[r][p] = D[r][p] + row[r]
    return derivation_certificate(L, D, "class2")


def abelian_radical_integral(L: LieAlgebra) -> IntegralCertificate:
    """D = 0 on a Levi factor and identity on the (abelian) radical."""
    if L.field.characteristic != 0:
        raise CharacteristicError("char-0-required: abelian-radical construction needs characteristic zero")
    if is_perfect(L):
        return self_perfect_certificate(L)
    from .structure import levi_complement
    dec = levi_complement(L)
    R = dec.radical
    if subspace_bracket(L, R, R).dim:
        raise NotApplicable("radical is not abelian")
    F = L.field
    basis = [list(v) for v in dec.levi.basis] + [list(v) for v in R.basis]
    B = transpose(basis)
    s = dec.levi.dim
    Dnew = _diag([0] * s + [1] * R.dim, F)
    D = mat_mul(mat_mul(B, Dnew), inverse(B, F))
    return derivation_certificate(L, D, "abelian-radical")


def direct_sum_certificate(L: LieAlgebra, basis, parts) -> IntegralCertificate:
    """Combine integrals of summands.

    ``basis`` lists vectors of L (columns); the first ``parts[0].L.dim`` of them
    realize the first summand's constants, and so on.  The embedding of L is
    the block embedding composed with the inverse basis change.
    """
    F = L.field
    H = parts[0].H
    S = parts[0].L
    for c in parts[1:]:
        H = direct_sum(H, c.H)
        S = direct_sum(S, c.L)
    if not realizes(L, basis, S):
        raise RuntimeError("direct-sum basis does not realize the summands")
    N = H.dim
    E = zeros(N, S.dim, F)
    r0 = c0 = 0
    for c in parts:
        for r in range(c.H.dim):
            for j in range(c.L.dim):
                E[r0 + r][c0 + j] = c.embedding[r][j]
        r0 += c.H.dim
        c0 += c.L.dim
    emb = mat_mul(E, inverse(transpose([list(b) for b in basis]), F))
    cert = IntegralCertificate(L, H, emb, "direct-sum", components=[c.method for c in parts])
    if not cert.verify():
        raise RuntimeError("direct-sum certificate failed verification")
    return cert


@dataclass
class Obstruction:
    code: str
    witness: dict = dc_field(default_factory=dict)

    @property
    def anchor(self) -> str:
        return ANCHORS[self.code]


@dataclass
class Verdict:
    status: str  # yes | no | unknown
    certificate: IntegralCertificate | None = None
    obstruction: Obstruction | None = None
    obstructions: list = dc_field(default_factory=list)
    notes: list = dc_field(default_factory=list)
    report: object = None

    def __post_init__(self):
        if self.status == "yes" and (self.certificate is None or self.obstruction is not None):
            raise ValueError("a yes verdict carries a certificate and no obstruction")
        if self.status == "no" and (self.obstruction is None or self.certificate is not None):
            raise ValueError("a no verdict carries an obstruction and no certificate")

    @property
    def anchor(self) -> str | None:
        if self.certificate is not None:
            return self.certificate.anchor
        if self.obstruction is not None:
            return self.obstruction.anchor
        return None


def almost_abelian_pair(m: int, F):
    """``f1`` = cyclic shift, ``f2 = diag(0, -1, ..., -(m-1)) f1^-1``; ``[f1, f2] = 1`` iff char | m."""
    P = zeros(m, m, F)
    for i in range(m):
        P[(i + 1) % m][i] = F.one
    Pinv = transpose(P)
    f2 = mat_mul(_diag([-i for i in range(m)], F), Pinv)
    return P, f2


def almost_abelian_decision(L: LieAlgebra) -> Verdict:
    w = almost_abelian_witness(L)
    if w is None:
        raise NotApplicable("not almost abelian")
    x, A = w
    n = L.dim
    m = n - 1
    F = L.field
    p = F.characteristic
    if p == 0 or m % p:
        tr = trace(L.ad(x))
        return Verdict("no", obstruction=Obstruction(
            "trace-nonzero-almost-abelian",
            {"x": [F.format(v) for v in x], "trace": F.format(tr), "n": n}))
    f1, f2 = almost_abelian_pair(m, F)
    if commutator(f1, f2) != identity(m, F):
        raise RuntimeError("almost abelian matrix pair failed [f1, f2] = 1")
    basis = [x] + [list(a) for a in A.basis]
    B = transpose(basis)
    Binv = inverse(B, F)

    def lift(f):
        M = zeros(n, n, F)
        for i in range(m):
            for j in range(m):
                M[i + 1][j + 1] = f[i][j]
        return mat_mul(mat_mul(B, M), Binv)

    D1, D2 = lift(f1), lift(f2)
    mats = [L.ad_basis(i) for i in range(n)] + [D1, D2]
    span = Subspace.span([vectorize(M) for M in mats], n * n, F)
    if span.dim != n + 2:
        raise RuntimeError("D1, D2 are not independent of ad(L)")
    Bm = transpose([vectorize(M) for M in mats])
    from .linalg import solve
    brackets = {}
    for a in range(n + 2):
        for b in range(a + 1, n + 2):
            y = solve(Bm, vectorize(commutator(mats[a], mats[b])), F)
            if y is None:
                raise RuntimeError("span of D1, D2 and ad(L) is not closed")
            terms = {k: v for k, v in enumerate(y) if v}
            if terms:
                brackets[(a, b)] = terms
    H = LieAlgebra.from_brackets(F, n + 2, brackets, [f"ad_{l}" for l in L.labels] + ["D1", "D2"])
    cert = IntegralCertificate(L, H, _inclusion(n + 2, n, 0, F), "almost-abelian-char-p",
                               extra={"f1": f1, "f2": f2, "D1": D1, "D2": D2})
    if not cert.verify():
        raise RuntimeError("almost abelian certificate failed verification")
    return Verdict("yes", certificate=cert)


def complete_algebra_decision(L: LieAlgebra) -> Verdict:
    if not is_complete(L):
        raise NotApplicable("not complete")
    if is_perfect(L):
        return Verdict("yes", certificate=self_perfect_certificate(L))
    return Verdict("no", obstruction=Obstruction(
        "complete-not-perfect", {"dim": L.dim, "dim_derived": derived_algebra(L).dim}))


def filiform_decision(L: LieAlgebra) -> Verdict:
    prof = classify(L)
    if not prof.is_filiform:
        raise NotApplicable("not filiform")
    if L.field.characteristic != 0:
        return Verdict("unknown", notes=["filiform criterion applied only in characteristic zero"])
    chain = bracket_image_series(L)
    if chain[-1].dim == 0 and L.dim > 1:
        return Verdict("no", obstruction=Obstruction(
            "filiform-char-nilpotent", {"image_series_dims": [W.dim for W in chain]}))
    out = codim1_integral(L)
    if out.status == "found":
        return Verdict("yes", certificate=out.certificate)
    return Verdict("unknown", notes=[f"filiform, not characteristically nilpotent, but codim1 search: {out.status}"])


def low_length_decision(L: LieAlgebra) -> Verdict:
    """Characteristic zero, composition length at most 4."""
    if L.field.characteristic != 0:
        raise CharacteristicError("char-0-required: composition length classification needs characteristic zero")
    try:
        comp = composition_series(L)
    except ComponentsUnknown as exc:
        return Verdict("unknown", notes=[f"composition length unknown: {exc}"])
    if comp.length > 4:
        raise NotApplicable(f"composition length {comp.length} exceeds 4")
    if is_perfect(L):
        return Verdict("yes", certificate=self_perfect_certificate(L))
    R = comp.radical
    RA = restrict(L, R)
    if not is_nilpotent(RA):
        if L.dim == 2:
            return Verdict("no", obstruction=Obstruction("two-dim-nonabelian", {"length": comp.length}))
        if R.dim == L.dim:
            return Verdict("no", obstruction=Obstruction(
                "low-length-no", {"length": comp.length, "reason": "solvable but not nilpotent"}))
        return Verdict("no", obstruction=Obstruction(
            "radical-not-nilpotent", {"radical_dim": R.dim, "length": comp.length}))
    if subspace_bracket(L, R, R).dim == 0:
        return Verdict("yes", certificate=abelian_radical_integral(L))
    if R.dim == L.dim:
        if nilpotency_class(L) <= 2:
            return Verdict("yes", certificate=class2_integral(L))
        rec = recognize_nilpotent_dim4(L)
        if rec.label == "F4":
            part = IntegralCertificate(rec.model, filiform_integral(4, L.field),
                                       _inclusion(5, 4, 1, L.field), "filiform-grading")
            if not part.verify():
                raise RuntimeError("filiform grading integral failed verification")
            return Verdict("yes", certificate=_rebased(L, rec.basis, part))
        raise RuntimeError(f"nilpotent algebra of length <= 4 unrecognized ({rec.label})")
    # nonabelian nilpotent radical next to a Levi factor: R = H_1, S simple
    hb = heisenberg_basis(RA)
    if hb is None or len(comp.components) != 1:
        return Verdict("unknown", notes=["radical nilpotent but not abelian or H_1 beside a Levi factor"])
    if subspace_bracket(L, comp.levi, R).dim:
        return Verdict("unknown", notes=["Levi factor acts nontrivially on H_1 in a non-perfect algebra"])
    Rbasis = [R.combine(list(v)) for v in hb]
    Sbasis = [list(v) for v in comp.levi.basis]
    S = restrict(L, comp.levi)
    sp = self_perfect_certificate(S)
    F = L.field
    hg = IntegralCertificate(heisenberg(1, F), heisenberg_integral(1, F),
                             _inclusion(4, 3, 1, F), "heisenberg-grading")
    if not hg.verify():
        raise RuntimeError("Heisenberg grading integral failed verification")
    return Verdict("yes", certificate=direct_sum_certificate(L, Sbasis + Rbasis, [sp, hg]))


def _rebased(L: LieAlgebra, basis, part: IntegralCertificate) -> IntegralCertificate:
    """Transport an integral of a model algebra to L via a realizing basis."""
    if not realizes(L, basis, part.L):
        raise RuntimeError("basis does not realize the model algebra")
    emb = mat_mul(part.embedding, inverse(transpose([list(b) for b in basis]), L.field))
    cert = IntegralCertificate(L, part.H, emb, part.method)
    if not cert.verify():
        raise RuntimeError("transported certificate failed verification")
    return cert


# ---------------------------------------------------------------------------
# necessary conditions


@dataclass
class Check:
    code: str
    passed: bool | None  # None: skipped
    witness: dict = dc_field(default_factory=dict)
    is_global: bool = True
    note: str = ""

    @property
    def anchor(self) -> str:
        return ANCHORS[self.code]


@dataclass
class NecessaryReport:
    checks: list

    @property
    def global_failures(self) -> list:
        return [c for c in self.checks if c.is_global and c.passed is False]

    @property
    def nilpotent_integral_obstructions(self) -> list:
        return [c for c in self.checks if not c.is_global and c.passed is False]

    def get(self, code: str) -> Check | None:
        return next((c for c in self.checks if c.code == code), None)


def necessary_conditions(L: LieAlgebra) -> NecessaryReport:
    F = L.field
    n = L.dim
    checks = []
    DB = derivation_space(L)
    Z = center(L)
    L2 = derived_algebra(L)

    # one-dimensional characteristic ideals must be central
    bad = None
    for W in one_dim_characteristic_ideals(L, DB):
        for v in W.basis:
            if not Z.contains_vector(list(v)):
                bad = list(v)
                break
        if bad:
            break
    checks.append(Check("char-ideal-not-central", bad is None,
                        {"line": [F.format(x) for x in bad]} if bad else {}))

    # ad(L) inside Der(L)^2
    D2 = der_squared(L, DB)
    bad = next((i for i in range(n) if not D2.contains_vector(vectorize(L.ad_basis(i)))), None)
    wit = {}
    if bad is not None:
        wit = {"element": L.labels[bad], "index": bad, "der_squared_dim": D2.dim,
               "trace": F.format(trace(L.ad_basis(bad)))}
    checks.append(Check("ad-not-in-der-squared", bad is None, wit))

    # radical and derived-series quotient (characteristic zero)
    if F.characteristic == 0:
        R = radical(L)
        nil = R.dim == 0 or is_nilpotent(restrict(L, R))
        checks.append(Check("radical-not-nilpotent", nil, {} if nil else {"radical_dim": R.dim}))
        I = derived_series(L)[-1]
        if I.dim == 0:
            qnil = is_nilpotent(L)
        else:
            Q, _ = quotient(L, I)
            qnil = is_nilpotent(Q)
        checks.append(Check("quotient-not-nilpotent", qnil, {} if qnil else {"stable_term_dim": I.dim}))
    else:
        for code in ("radical-not-nilpotent", "quotient-not-nilpotent"):
            checks.append(Check(code, None, note="skipped: characteristic zero only"))

    # complete algebras must be perfect
    complete = Z.dim == 0 and DB.dim == n
    perfect = L2.dim == n
    checks.append(Check("complete-not-perfect", not (complete and not perfect),
                        {"complete": complete, "perfect": perfect}))

    # characteristically nilpotent tests
    chain = bracket_image_series(L, DB)
    cn = n > 1 and chain[-1].dim == 0
    if F.characteristic != 0:
        for code in ("leger-togo-annihilate", "leger-togo-gap"):
            checks.append(Check(code, None, note="skipped: characteristic zero only"))
    elif not cn:
        for code in ("leger-togo-annihilate", "leger-togo-gap"):
            checks.append(Check(code, True, note="not characteristically nilpotent"))
    else:
        killed = all(not any(mat_vec(D, list(z))) for D in DB.basis for z in Z.basis)
        checks.append(Check("leger-togo-annihilate", not killed, {"dim_center": Z.dim}))
        c = nilpotency_class(L)
        m = len(chain)
        checks.append(Check("leger-togo-gap", not (2 * (m - 1) > c + 1), {"class": c, "m": m}))

    # these only rule out nilpotent integrals
    nonab = L2.dim > 0
    checks.append(Check("nilpotent-integral-centre", not (nonab and Z.dim == 1),
                        {"dim_center": Z.dim}, is_global=False))
    checks.append(Check("nilpotent-integral-abelianization", not (nonab and n - L2.dim <= 3),
                        {"dim_abelianization": n - L2.dim}, is_global=False))
    return NecessaryReport(checks)


# ---------------------------------------------------------------------------
# orchestrator


def _try(fn, L):
    try:
        return fn(L)
    except (NotApplicable, CharacteristicError, ComponentsUnknown):
        return None


def is_derived_algebra(L: LieAlgebra, seed: int = 0) -> Verdict:
    """Constructions first, then obstructions; the two are cross-checked."""
    v = validate(L)
    if not v:
        raise ValueError(v.message())
    F = L.field
    notes = []
    prof = classify(L)
    cert = None

    if prof.is_perfect:
        cert = self_perfect_certificate(L)
    elif prof.is_abelian:
        cert = codim1_integral(L, seed=seed).certificate  # the identity derivation
    if cert is None and prof.nilpotency_class is not None and prof.nilpotency_class <= 2:
        cert = class2_integral(L)
    radical_abelian = False
    if cert is None and F.characteristic == 0:
        R = radical(L)
        radical_abelian = subspace_bracket(L, R, R).dim == 0
        if radical_abelian:
            cert = abelian_radical_integral(L)
    aa_verdict = None
    if prof.almost_abelian is not None:
        aa_verdict = almost_abelian_decision(L)
        if cert is None and aa_verdict.status == "yes":
            cert = aa_verdict.certificate
    if cert is None:
        out = codim1_integral(L, seed=seed)
        if out.status == "found":
            cert = out.certificate
        else:
            notes.append(f"codim1: {out.status}" + (f" ({out.note})" if out.note else ""))
    low = None
    length = None
    if F.characteristic == 0:
        try:
            length = composition_series(L).length
        except ComponentsUnknown as exc:
            notes.append(f"composition length unknown: {exc}")
        if length is not None and length <= 4:
            low = low_length_decision(L)
            if cert is None and low.status == "yes":
                cert = low.certificate
    fil = None
    if prof.is_filiform and F.characteristic == 0:
        fil = filiform_decision(L)
        if cert is None and fil.status == "yes":
            cert = fil.certificate

    report = necessary_conditions(L)
    fired = []
    for v in (aa_verdict, low, fil):
        if v is not None and v.status == "no":
            fired.append(v.obstruction)
    for c in report.global_failures:
        if all(o.code != c.code for o in fired):
            fired.append(Obstruction(c.code, c.witness))

    if cert is not None:
        if fired:
            raise SoundnessError(
                f"certificate ({cert.method}) contradicts obstruction {fired[0].code}")
        if not cert.verify():
            raise RuntimeError("certificate failed final verification")
        return Verdict("yes", certificate=cert, notes=notes, report=report)
    if fired:
        return Verdict("no", obstruction=fired[0], obstructions=fired, notes=notes, report=report)
    if F.characteristic != 0:
        notes.append("several obstructions are characteristic-zero only")
    return Verdict("unknown", notes=notes, report=report)


# ---------------------------------------------------------------------------
# reduced integrals


@dataclass
class ReducedReport:
    centralizer: Subspace  # C_H(L), in H coordinates
    center: Subspace  # Z(H)
    is_reduced: bool
    centralizer_check_applies: bool
    centralizer_is_center: bool | None


def reduced_analysis(H: LieAlgebra, embedding, L: LieAlgebra) -> ReducedReport:
    cols = [[embedding[r][j] for r in range(H.dim)] for j in range(L.dim)]
    image = H.span(cols)
    ok, _ = is_ideal(H, image)
    if not ok:
        raise ValueError("embedded L is not an ideal of H")
    C = centralizer(H, image)
    Z = center(H)
    applies = center(L).dim == 0 and derived_algebra(H) == image
    holds = (C == Z) if applies else None
    return ReducedReport(C, Z, C.dim == 0, applies, holds)


def reduce_integral(cert: IntegralCertificate) -> IntegralCertificate:
    """Pass to ``H / C_H(L)``, which is again an integral and acts faithfully on L."""
    if center(cert.L).dim:
        raise NotApplicable("reduction needs a centreless L")
    rep = reduced_analysis(cert.H, cert.embedding, cert.L)
    if rep.is_reduced:
        return cert
    Q, proj = quotient(cert.H, rep.centralizer)
    emb = mat_mul(proj, cert.embedding)
    out = IntegralCertificate(cert.L, Q, emb, cert.method, extra={"reduced_from": cert.H.dim})
    if not verify_integral(Q, emb, cert.L):
        raise RuntimeError("reduced integral failed verification")
    return out


@dataclass
class ChainReport:
    ok: bool
    failed_step: int | None
    reason: str
    dims: list
    der_bound: int


def verify_reduced_chain(algebras, embeddings) -> ChainReport:
    """Check ``L_i = (L_(i+1))^2`` with ``L_(i+1)`` reduced, ``C_(L_n)(L_0) = 0``
    at every level, and ``dim L_n <= dim Der(L_0)``.

    ``embeddings[i]`` maps ``L_i`` into ``L_(i+1)``.
    """
    L0 = algebras[0]
    dims = [A.dim for A in algebras]
    bound = derivation_space(L0).dim
    if center(L0).dim:
        return ChainReport(False, 0, "L_0 has nonzero centre", dims, bound)
    if len(embeddings) != len(algebras) - 1:
        raise ValueError("need one embedding per step")
    comp = identity(L0.dim, L0.field)
    for i, E in enumerate(embeddings, start=1):
        lo, hi = algebras[i - 1], algebras[i]
        if not verify_integral(hi, E, lo):
            return ChainReport(False, i, f"step {i}: L_{i - 1} is not the derived algebra of L_{i}", dims, bound)
        if not reduced_analysis(hi, E, lo).is_reduced:
            return ChainReport(False, i, f"step {i}: L_{i} is not reduced over L_{i - 1}", dims, bound)
        comp = mat_mul(E, comp)
        L0img = hi.span([[comp[r][j] for r in range(hi.dim)] for j in range(L0.dim)])
        if centralizer(hi, L0img).dim:
            return ChainReport(False, i, f"step {i}: C_(L_{i})(L_0) is nonzero", dims, bound)
        if hi.dim > bound:
            return ChainReport(False, i, f"step {i}: dim {hi.dim} exceeds dim Der(L_0) = {bound}", dims, bound)
    return ChainReport(True, None, "ok", dims, bound)


def build_reduced_chain(L: LieAlgebra, max_steps: int = 6):
    """Repeatedly find and reduce integrals, stopping at a perfect term or a non-yes verdict."""
    algebras = [L]
    embeddings = []
    cur = L
    for _ in range(max_steps):
        if is_perfect(cur):
            break
        v = is_derived_algebra(cur)
        if v.status != "yes":
            break
        red = reduce_integral(v.certificate)
        if red.H.dim == cur.dim:
            break
        algebras.append(red.H)
        embeddings.append(red.embedding)
        cur = red.H
    return algebras, embeddings
