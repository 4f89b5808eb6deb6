import pytest
import sympy

from liederive.algebra import center, derived_algebra, direct_sum
from liederive.builders import (
    abelian, almost_abelian, filiform_integral, heisenberg, heisenberg_integral, sl2,
    sl2_module_extension, standard_filiform, two_dim_nonabelian,
)
from liederive.corpus import CORPUS, char_nilpotent_filiform, corpus, twisted_almost_abelian
from liederive.derivations import (
    der_squared, derivation_space, is_complete, one_dim_characteristic_ideals,
)
from liederive.fields import GF, QQ
from liederive.integrability import (
    ANCHORS, IntegralCertificate, NotApplicable, Obstruction, SoundnessError, Verdict,
    _inclusion, abelian_radical_integral, almost_abelian_decision, almost_abelian_pair,
    build_reduced_chain, class2_integral, codim1_integral, complete_algebra_decision,
    filiform_decision, induced_on_abelianization, is_derived_algebra, low_length_decision,
    necessary_conditions, reduce_integral, reduced_analysis, verify_integral,
    verify_reduced_chain,
)
from liederive.linalg import commutator, identity, vectorize


def _pairs():
    for name, L in corpus():
        v = is_derived_algebra(L)
        if v.status == "yes":
            yield name, L, v.certificate


# necessary conditions


def test_r2_conditions():
    rep = necessary_conditions(two_dim_nonabelian())
    assert {c.code for c in rep.global_failures} >= {"char-ideal-not-central", "ad-not-in-der-squared"}


def test_almost_abelian_trace_witness():
    rep = necessary_conditions(almost_abelian(4))
    assert rep.get("ad-not-in-der-squared").witness["trace"] == "3/1"


def test_h1_only_nilpotent_integral_obstruction():
    rep = necessary_conditions(heisenberg(1))
    assert not rep.global_failures
    assert {c.code for c in rep.nilpotent_integral_obstructions} == {
        "nilpotent-integral-centre", "nilpotent-integral-abelianization"}
    assert is_derived_algebra(heisenberg(1)).status == "yes"


def test_char_p_skips_are_marked():
    rep = necessary_conditions(sl2(GF(3)))
    assert rep.get("radical-not-nilpotent").passed is None
    assert "characteristic zero" in rep.get("radical-not-nilpotent").note


def test_leger_togo_checks_on_characteristically_nilpotent_input():
    rep = necessary_conditions(char_nilpotent_filiform())
    assert rep.get("leger-togo-annihilate").passed is False
    assert rep.get("leger-togo-gap").witness == {"class": 6, "m": 6}


def test_necessary_conditions_instantiated_on_verified_pairs():
    for name, L, cert in _pairs():
        assert cert.verify(), name
        D2 = der_squared(L)
        assert all(D2.contains_vector(vectorize(L.ad_basis(i))) for i in range(L.dim)), name
        Z = center(L)
        for W in one_dim_characteristic_ideals(L):
            assert Z.contains(W), name


# constructions


def test_codim1_examples():
    out = codim1_integral(abelian(3))
    assert out.status == "found" and out.certificate.derivation == identity(3, QQ)
    assert almost_abelian_witness_dim(out.certificate.H) == 4
    F4 = codim1_integral(standard_filiform(4))
    assert [F4.certificate.derivation[i][i] for i in range(4)] == [1, 2, 3, 4]
    none = codim1_integral(two_dim_nonabelian())
    assert none.status == "none"


def almost_abelian_witness_dim(H):
    from liederive.algebra import almost_abelian_witness
    return H.dim if almost_abelian_witness(H) else None


@pytest.mark.parametrize("L", [two_dim_nonabelian(), heisenberg(1), standard_filiform(5),
                               sl2_module_extension(1), almost_abelian(3), heisenberg_integral(1),
                               direct_sum(two_dim_nonabelian(), abelian(1))])
def test_codim1_none_iff_generic_determinant_vanishes(L):
    DB = derivation_space(L)
    induced = [induced_on_abelianization(L, D) for D in DB.basis]
    xs = sympy.symbols(f"x0:{max(1, len(induced))}")
    k = len(induced[0]) if induced else 0
    if k == 0:
        generic_zero = False
    else:
        M = sympy.zeros(k, k)
        for x, A in zip(xs, induced):
            M += x * sympy.Matrix([[sympy.Rational(a.numerator, a.denominator) for a in r] for r in A])
        generic_zero = sympy.expand(M.det()) == 0
    assert (codim1_integral(L).status == "none") == generic_zero


def test_class2_on_h1():
    c = class2_integral(heisenberg(1))
    H = c.H
    assert H.dim == 4 and [c.derivation[i][i] for i in range(3)] == [1, 1, 2]
    with pytest.raises(NotApplicable):
        class2_integral(standard_filiform(4))
    assert class2_integral(heisenberg(2)).H.dim == 6


def test_abelian_radical_examples():
    c = abelian_radical_integral(direct_sum(sl2(), abelian(2)))
    assert c.H.dim == 6 and c.verify()
    assert abelian_radical_integral(sl2()).method == "self-perfect"
    assert abelian_radical_integral(sl2_module_extension(1)).method == "self-perfect"


def test_almost_abelian_pair_commutator():
    for m, p in ((3, 3), (2, 2), (5, 5), (4, 2)):
        f1, f2 = almost_abelian_pair(m, GF(p))
        assert commutator(f1, f2) == identity(m, GF(p))
    f1, f2 = almost_abelian_pair(3, QQ)
    assert commutator(f1, f2) != identity(3, QQ)


def test_almost_abelian_decision():
    v = almost_abelian_decision(almost_abelian(3, GF(2)))
    assert v.status == "yes" and v.certificate.H.dim == 5
    assert almost_abelian_decision(almost_abelian(3)).obstruction.witness["trace"] == "2/1"
    with pytest.raises(NotApplicable):
        almost_abelian_decision(sl2())


def test_complete_algebra_decision():
    assert complete_algebra_decision(sl2()).status == "yes"
    assert complete_algebra_decision(two_dim_nonabelian()).obstruction.code == "complete-not-perfect"
    L = direct_sum(two_dim_nonabelian(), sl2())
    assert is_complete(L)
    assert complete_algebra_decision(L).status == "no"
    with pytest.raises(NotApplicable):
        complete_algebra_decision(heisenberg(1))


def test_filiform_decision():
    for n in (4, 6):
        v = filiform_decision(standard_filiform(n))
        assert v.status == "yes"
    assert filiform_decision(abelian(2)).status == "yes"
    assert filiform_decision(char_nilpotent_filiform()).obstruction.code == "filiform-char-nilpotent"


def test_low_length_examples():
    assert low_length_decision(two_dim_nonabelian()).obstruction.code == "two-dim-nonabelian"
    v = low_length_decision(direct_sum(sl2(), heisenberg(1)))
    assert v.certificate.method == "direct-sum"
    assert v.certificate.components == ["self-perfect", "heisenberg-grading"]
    assert low_length_decision(direct_sum(sl2(), two_dim_nonabelian())).obstruction.code == "radical-not-nilpotent"
    assert low_length_decision(standard_filiform(4)).certificate.method == "filiform-grading"
    assert low_length_decision(almost_abelian(3)).obstruction.code == "low-length-no"
    with pytest.raises(NotApplicable):
        low_length_decision(heisenberg(2))


# orchestrator


def test_orchestrator_examples():
    assert is_derived_algebra(heisenberg(3)).certificate.method == "class2"
    assert is_derived_algebra(almost_abelian(5)).status == "no"
    v = is_derived_algebra(char_nilpotent_filiform())
    assert "leger-togo-annihilate" in {o.code for o in v.obstructions}


def test_honest_unknown():
    v = is_derived_algebra(twisted_almost_abelian())
    assert v.status == "unknown" and v.certificate is None and v.obstruction is None
    assert not v.report.global_failures
    assert any(c.passed is None for c in v.report.checks)


def test_verdict_invariants():
    with pytest.raises(ValueError):
        Verdict("yes")
    with pytest.raises(ValueError):
        Verdict("no")
    cert = is_derived_algebra(sl2()).certificate
    with pytest.raises(ValueError):
        Verdict("yes", certificate=cert, obstruction=Obstruction("low-length-no"))


def test_soundness_error_raised_on_contradiction(monkeypatch):
    from liederive import integrability
    from liederive.integrability import Check, NecessaryReport

    def fake(L):
        return NecessaryReport([Check("ad-not-in-der-squared", False, {"element": "x"})])
    monkeypatch.setattr(integrability, "necessary_conditions", fake)
    with pytest.raises(SoundnessError):
        is_derived_algebra(heisenberg(1))


def test_every_code_has_anchor():
    for v in (is_derived_algebra(L) for _, L in corpus()):
        assert v.anchor is None or v.anchor in ANCHORS.values()
        for c in v.report.checks:
            assert c.anchor


def test_direct_sum_summand_with_trivial_centre_is_never_no():
    for name, L in corpus():
        if "+" not in name:
            continue
        left = name.split("+")[0]
        L1 = CORPUS[left]() if left in CORPUS else None
        if L1 is None or center(L1).dim:
            continue
        if is_derived_algebra(L).status == "yes":
            assert is_derived_algebra(L1).status != "no", name


def test_seed_does_not_change_status():
    for name, L in list(corpus())[:20]:
        assert is_derived_algebra(L, seed=0).status == is_derived_algebra(L, seed=7).status, name


# verification and reduced integrals


def test_verify_integral_examples():
    assert verify_integral(filiform_integral(4), _inclusion(5, 4, 1, QQ), standard_filiform(4))
    assert verify_integral(heisenberg_integral(2), _inclusion(6, 5, 1, QQ), heisenberg(2))
    assert not verify_integral(heisenberg(1), identity(3, QQ), heisenberg(1))
    with pytest.raises(ValueError):
        verify_integral(heisenberg(1), identity(2, QQ), heisenberg(1))


def test_tampered_certificate_fails():
    c = is_derived_algebra(heisenberg(1)).certificate
    bad = [list(r) for r in c.embedding]
    bad[0][0] = bad[0][0] + 1
    assert not IntegralCertificate(c.L, c.H, bad, c.method).verify()


def test_reduced_analysis_examples():
    H = direct_sum(sl2(), abelian(1))
    rep = reduced_analysis(H, _inclusion(4, 3, 0, QQ), sl2())
    assert rep.centralizer.dim == 1 and rep.centralizer == rep.center and not rep.is_reduced
    rep2 = reduced_analysis(sl2(), identity(3, QQ), sl2())
    assert rep2.is_reduced and rep2.centralizer_is_center
    aa = is_derived_algebra(abelian(2, GF(3))).certificate
    assert reduced_analysis(aa.H, aa.embedding, aa.L).centralizer_check_applies is False


def test_reduce_integral_strips_centralizer():
    L = sl2()
    H = direct_sum(sl2(), abelian(1))
    cert = IntegralCertificate(L, H, _inclusion(4, 3, 0, QQ), "self-perfect")
    red = reduce_integral(cert)
    assert red.H.dim == 3 and verify_integral(red.H, red.embedding, L)
    with pytest.raises(NotApplicable):
        reduce_integral(is_derived_algebra(heisenberg(1)).certificate)


def test_reduced_chains():
    rep = verify_reduced_chain([sl2(), sl2()], [identity(3, QQ)])
    assert rep.ok and rep.dims[-1] <= rep.der_bound == 3
    algebras, embeddings = build_reduced_chain(two_dim_nonabelian())
    assert verify_reduced_chain(algebras, embeddings).ok and len(algebras) == 1
    algebras, embeddings = build_reduced_chain(almost_abelian(3, GF(2)))
    assert len(algebras) == 3 and verify_reduced_chain(algebras, embeddings).ok
    # forge step 2 with a central summand
    forged = direct_sum(algebras[2], abelian(1, GF(2)))
    emb = [list(r) for r in embeddings[1]] + [[GF(2).zero] * algebras[1].dim]
    bad = verify_reduced_chain(algebras[:2] + [forged], [embeddings[0], emb])
    assert not bad.ok and bad.failed_step == 2
    assert not verify_reduced_chain([heisenberg(1)], []).ok
