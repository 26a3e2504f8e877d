from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from heckecm import galois as gal
from heckecm.errors import NoCMSubfield, NotAGroup, NotHeckeCharacterType, SpecParseError

SETTINGS = {name: gal.BUILTIN_SETTINGS[name]() for name in ("C2", "zeta5", "C2xC2", "S3")}
C2, C4, S3 = SETTINGS["C2"], SETTINGS["zeta5"], SETTINGS["S3"]
A3 = "Q(sqrt-3)"
CBRT2 = "Q(cbrt2)"


def members(S, fld, text):
    return gal.parse_members(S, fld, text)


def test_c2_setting_is_valid():
    assert C2.group.order == 2 and C2.conj == 1
    assert len(gal.embeddings(C2, C2.top)) == 2


def test_c4_conj_is_zeta_to_zeta4():
    # s^j acts as zeta -> zeta^(2^j); the element acting as zeta -> zeta^4 = zeta^-1 is s^2
    exps = [pow(2, j, 5) for j in range(4)]
    assert exps[C4.conj] == 4
    assert C4.element("c") == C4.conj


def test_broken_associativity_is_rejected():
    table = [[0, 1, 2], [1, 0, 2], [2, 2, 0]]
    with pytest.raises(NotAGroup):
        gal.make_setting(table, 1, {})


def test_embedding_counts_s3():
    assert len(gal.embeddings(S3, CBRT2)) == 3
    assert len(gal.embeddings(S3, A3)) == 2
    assert len(gal.embeddings(S3, S3.top)) == 6


def test_act_moves_e1_to_e2():
    mu = gal.parse_type(C4, C4.top, "e1")
    assert gal.act(C4, C4.element("s"), mu) == gal.parse_type(C4, C4.top, "e2")
    assert gal.act(C4, C4.group.identity, mu) == mu


def test_lift_of_identity_on_sqrt_minus3():
    mu = gal.parse_type(S3, A3, "1")
    lifted = gal.lift_type(S3, mu, S3.top)
    assert lifted.support() == S3.field(A3).subgroup
    assert all(v == 1 for _, v in lifted.coeffs)
    zero = gal.infinity_type(S3, A3, {})
    assert gal.lift_type(S3, zero, S3.top).coeffs == ()


def test_field_predicates_s3():
    assert not gal.is_totally_imaginary(S3, CBRT2)
    assert gal.is_cm_field(S3, A3)
    assert gal.is_totally_imaginary(S3, S3.top)
    assert not gal.is_cm_field(S3, S3.top)


def test_maximal_cm_subfield():
    assert gal.maximal_cm_subfield(S3, S3.top).name == A3
    assert gal.maximal_cm_subfield(C2, C2.top) == C2.top
    with pytest.raises(NoCMSubfield):
        gal.maximal_cm_subfield(S3, CBRT2)


def test_is_cm_type_c4():
    assert gal.is_cm_type(C4, C4.top, members(C4, C4.top, "e1,e2"))
    assert not gal.is_cm_type(C4, C4.top, members(C4, C4.top, "e1,e4"))


def test_is_cm_type_s3_lift_and_transversals():
    assert gal.is_cm_type(S3, S3.top, S3.field(A3).subgroup)
    pairs = gal.conj_pairs(S3, S3.top)
    transversals = list(product(*pairs))
    assert len(transversals) == 8
    assert sum(gal.is_cm_type(S3, S3.top, t) for t in transversals) == 2


def test_stabilizer_fields():
    mu = gal.parse_type(C4, C4.top, "e1+e2")
    assert gal.stabilizer(C4, mu) == frozenset({0})
    assert gal.stabilizer_field(C4, mu).name == "Q(zeta5)"
    const = gal.parse_type(C4, C4.top, "e1+e2+e3+e4")
    assert gal.stabilizer_field(C4, const).name == "Q"
    chi_a3 = gal.char_function(S3, S3.top, S3.field(A3).subgroup)
    assert gal.stabilizer_field(S3, chi_a3).name == A3


def test_reflex_examples():
    E, star = gal.reflex(C2, gal.cm_type(C2, C2.top, [0]))
    assert E == C2.top and star.members == frozenset({0})
    E, star = gal.reflex(C4, gal.cm_type(C4, C4.top, members(C4, C4.top, "e1,e2")))
    assert E.name == "Q(zeta5)"
    assert {C4.element_names[r] for r in star.members} == {"e1", "e3"}
    E, star = gal.reflex(S3, gal.cm_type(S3, S3.top, S3.field(A3).subgroup))
    assert E.name == A3 and star.members == frozenset({0})


def test_reflex_c4_agrees_with_oracle():
    # oracle indexes by exponent j of s; element names are e_{2^j mod 5}
    for phi in gal.cm_types(C4, C4.top):
        exps = {C4.element(C4.element_names[r]) for r in phi.members}
        _, star_exps = oracles.c4_reflex(exps)
        _, star = gal.reflex(C4, phi)
        assert set(star.members) == set(star_exps)


def test_s3_reflex_matches_permutation_oracle():
    # the inverse set of the lifted type is again A3, i.e. the even permutations
    assert len(oracles.s3_reflex_of_lifted_type()) == 3
    _, star = gal.reflex(S3, gal.cm_type(S3, S3.top, S3.field(A3).subgroup))
    assert len(gal.lift_type(S3, star.as_type(), S3.top).support()) == 3


def test_hecke_character_type():
    zero = gal.infinity_type(S3, S3.top, {})
    assert gal.is_hecke_character_type(S3, zero) == 0
    mu = gal.lift_type(S3, gal.parse_type(S3, A3, "2c-3"), S3.top)
    assert gal.is_hecke_character_type(S3, mu) == -1
    assert gal.is_hecke_character_type(S3, gal.parse_type(S3, S3.top, "1")) is None


def test_critical_decompose_c2():
    dec = gal.critical_decompose(C2, gal.parse_type(C2, C2.top, "2c-3"))
    assert dec.cm_type.members == frozenset({0})
    assert dec.alpha == gal.parse_type(C2, C2.top, "3")
    assert dec.beta == gal.parse_type(C2, C2.top, "2c")
    assert dec.weight == -1
    assert gal.critical_decompose(C2, gal.parse_type(C2, C2.top, "-1-c")) is None


def test_critical_decompose_s3():
    mu = gal.lift_type(S3, gal.parse_type(S3, A3, "2c-3"), S3.top)
    dec = gal.critical_decompose(S3, mu)
    phi = S3.field(A3).subgroup
    assert dec.cm_type.members == phi
    assert dec.alpha == gal.char_function(S3, S3.top, phi).scale(3)
    cphi = {gal.conj_embedding(S3, S3.top, r) for r in phi}
    assert dec.beta == gal.char_function(S3, S3.top, cphi).scale(2)
    assert dec.weight == -1


def test_non_hecke_type_raises():
    with pytest.raises(NotHeckeCharacterType):
        gal.critical_decompose(S3, gal.parse_type(S3, S3.top, "1"))


def test_epsilon_examples():
    phi = gal.cm_type(C2, C2.top, [0])
    assert all(gal.epsilon_sign(C2, phi, 0, t) == 1 for t in range(2))
    phi = gal.cm_type(C4, C4.top, members(C4, C4.top, "e1,e2"))
    assert gal.epsilon_sign(C4, phi, C4.element("1"), C4.element("s")) == -1
    phi = gal.cm_type(S3, S3.top, S3.field(A3).subgroup)
    assert gal.epsilon_sign(S3, phi, 0, S3.element("c")) == 1


def test_epsilon_c4_matches_oracle_exhaustively():
    for phi in gal.cm_types(C4, C4.top):
        exps = {C4.element(C4.element_names[r]) for r in phi.members}
        for eta in range(4):
            for tau in range(4):
                assert gal.epsilon_sign(C4, phi, eta, tau) == oracles.c4_epsilon(exps, eta, tau)


@pytest.mark.parametrize("name", sorted(SETTINGS))
def test_epsilon_cocycle(name):
    S = SETTINGS[name]
    G = S.group
    for f in S.fields:
        if not gal.is_totally_imaginary(S, f):
            continue
        for phi in gal.cm_types(S, f):
            for eta in range(G.order):
                for t1 in range(G.order):
                    for t2 in range(G.order):
                        lhs = gal.epsilon_sign(S, phi, eta, G.mul(t1, t2))
                        rhs = gal.epsilon_sign(S, phi, G.mul(t2, eta), t1) * gal.epsilon_sign(S, phi, eta, t2)
                        assert lhs == rhs


def test_xi_examples():
    dec = gal.critical_decompose(C2, gal.parse_type(C2, C2.top, "2c-3"))
    assert gal.xi_infinity_type(C2, dec).as_dict() == {0: 5}
    phi = gal.cm_type(C4, C4.top, members(C4, C4.top, "e1,e2"))
    alpha = phi.as_type()
    zero = gal.infinity_type(C4, C4.top, {})
    xi = gal.xi_infinity_type(C4, gal.CriticalDecomposition(phi, alpha, zero, -1))
    assert xi == gal.parse_type(C4, C4.top, "2e1+e2+e3")
    xi0 = gal.xi_infinity_type(C4, gal.CriticalDecomposition(phi, zero, zero, 0))
    assert xi0.coeffs == ()


def test_reflex_involution_c4():
    for phi in gal.cm_types(C4, C4.top):
        E, star = gal.reflex(C4, phi)
        E2, star2 = gal.reflex(C4, star)
        assert E2 == C4.top and star2.members == phi.members


@pytest.mark.parametrize("name", sorted(SETTINGS))
def test_double_reflex_is_subfield(name):
    S = SETTINGS[name]
    for f in S.fields:
        if not gal.is_totally_imaginary(S, f):
            continue
        for phi in gal.cm_types(S, f):
            E, star = gal.reflex(S, phi)
            E2, _ = gal.reflex(S, star)
            assert E2.subgroup >= f.subgroup


@pytest.mark.parametrize("name,text", [("C2", "2c - 3"), ("C2", "-3 + 2c"), ("zeta5", "e1"), ("zeta5", "2e1 + e2 + e3"), ("S3", "-t1 + 4r2")])
def test_parse_and_format_type_roundtrip(name, text):
    S = SETTINGS[name]
    mu = gal.parse_type(S, S.top, text)
    assert gal.parse_type(S, S.top, gal.format_type(S, mu)) == mu


def test_setting_file_parse_errors_carry_position(tmp_path):
    good = "order=2 conj=1\n0 1\n1 0\nfield K = 0\n"
    S = gal.parse_setting(good)
    assert S.group.order == 2
    with pytest.raises(SpecParseError) as exc:
        gal.parse_setting("order=2 conj=1\n0 1\n1 x\n")
    assert exc.value.line == 3 and exc.value.column == 3
    with pytest.raises(SpecParseError) as exc:
        gal.parse_setting("order=2 conj=1\n0 1\n1 0\nfield K: 0\n")
    assert exc.value.line == 4


# ---------------------------------------------------------------------------
# properties


def _typed(S):
    return [(f, gal.cm_types(S, f)) for f in S.fields if gal.is_totally_imaginary(S, f)]


coeff = st.integers(min_value=-5, max_value=5)


@given(st.sampled_from(sorted(SETTINGS)), st.data())
def test_act_preserves_degree(name, data):
    S = SETTINGS[name]
    f = data.draw(st.sampled_from(S.fields))
    reps = [e.rep for e in gal.embeddings(S, f)]
    mu = gal.infinity_type(S, f, {r: data.draw(coeff) for r in reps})
    tau = data.draw(st.integers(0, S.group.order - 1))
    assert gal.act(S, tau, mu).degree == mu.degree


@given(st.sampled_from(sorted(SETTINGS)), st.data())
def test_lift_multiplies_degree_by_index(name, data):
    S = SETTINGS[name]
    f = data.draw(st.sampled_from(S.fields))
    reps = [e.rep for e in gal.embeddings(S, f)]
    mu = gal.infinity_type(S, f, {r: data.draw(coeff) for r in reps})
    lifted = gal.lift_type(S, mu, S.top)
    assert lifted.degree == mu.degree * len(f.subgroup)


@given(st.sampled_from(sorted(SETTINGS)), st.data())
def test_critical_decompose_reconstructs(name, data):
    S = SETTINGS[name]
    f, types = data.draw(st.sampled_from(_typed(S)))
    phi = data.draw(st.sampled_from(types))
    w = data.draw(st.integers(-4, 4))
    alpha, beta = {}, {}
    for r in phi.members:
        a = data.draw(st.integers(1, 5))
        if a + w < 0:
            a = -w
        a = max(a, 1)
        alpha[r] = a
        beta[gal.conj_embedding(S, f, r)] = a + w
    # constant on fibers when f is not CM: lift a type drawn on the CM subfield instead
    if not gal.is_cm_field(S, f):
        K = gal.maximal_cm_subfield(S, f)
        kphi = next(p for p in gal.cm_types(S, K) if gal.lift_type(S, p.as_type(), f).support() == phi.members)
        a = data.draw(st.integers(max(1, -w), 5))
        mu_k = gal.infinity_type(S, K, {**{r: -a for r in kphi.members},
                                          **{gal.conj_embedding(S, K, r): a + w for r in kphi.members}})
        mu = gal.lift_type(S, mu_k, f)
    else:
        mu = gal.infinity_type(S, f, beta) - gal.infinity_type(S, f, alpha)
    dec = gal.critical_decompose(S, mu)
    assert dec is not None and dec.cm_type.members == phi.members
    assert dec.beta - dec.alpha == mu
    xi = gal.xi_infinity_type(S, dec)
    total = dec.alpha.degree + dec.beta.degree
    E = xi.field
    for e in gal.embeddings(S, E):
        assert xi[e.rep] + xi[gal.conj_embedding(S, E, e.rep)] == total
