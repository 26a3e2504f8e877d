from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from heckecm.errors import NoSuchCharacter, NotCoprime, SpecParseError, TrivialModulus
from heckecm.hecke import (
    char_eval,
    char_eval_exact,
    char_eval_float,
    check_consistency,
    enumerate_characters,
    format_character,
    make_character,
    parse_character,
    weight,
)
from heckecm.quadarith import (
    ImagQuadField,
    ideal_mul,
    ideal_norm,
    ideal_sum,
    ideals_up_to_norm,
    parse_ideal,
    principal_ideal,
    unit_ideal,
)

QI = ImagQuadField(1)
Q3 = ImagQuadField(3)
F8 = parse_ideal(QI, "(1+i)^3")
F3 = parse_ideal(QI, "(3)")


def test_enumerate_counts():
    assert len(enumerate_characters(QI, F8, (4, 0))) == 1
    assert enumerate_characters(QI, parse_ideal(QI, "(1+i)"), (3, 0)) == []
    assert len(enumerate_characters(QI, parse_ideal(QI, "(1+i)"), (4, 0))) == 1
    assert len(enumerate_characters(QI, F3, (4, 0))) == 2


def test_trivial_modulus_is_opt_in():
    with pytest.raises(TrivialModulus):
        enumerate_characters(QI, unit_ideal(QI), (0, 0))
    chi = make_character(QI, unit_ideal(QI), 0, 0, allow_trivial_modulus=True)
    assert char_eval(chi, parse_ideal(QI, "(2+i)")) == 1


def test_no_such_character():
    with pytest.raises(NoSuchCharacter):
        make_character(QI, parse_ideal(QI, "(1+i)"), 3, 0)


def test_values_at_small_ideals():
    chi = make_character(QI, F8, 4, 0)
    assert char_eval(chi, unit_ideal(QI)) == 1
    assert char_eval_exact(chi, F3) == QI.elem(Fraction(1, 81))
    with mpmath.workprec(200):
        assert abs(char_eval(chi, F3) - mpmath.mpf(1) / 81) < mpmath.mpf(2) ** -100


def test_weights():
    assert weight(make_character(QI, F8, 4, 0)) == -4
    assert weight(make_character(QI, F8, 3, 1)) == -2
    assert weight(make_character(QI, unit_ideal(QI), 0, 0, allow_trivial_modulus=True)) == 0


def test_generator_relations_hold():
    for chi in enumerate_characters(QI, F3, (4, 0)) + enumerate_characters(QI, parse_ideal(QI, "(5)"), (4, 0)):
        assert check_consistency(chi, 113) < 2.0**-100


def test_twists_differ_on_nontrivial_class():
    chi0, chi1 = enumerate_characters(QI, F3, (4, 0))
    P = parse_ideal(QI, "(1+i)")
    v0, v1 = char_eval(chi0, P), char_eval(chi1, P)
    assert abs(v0 + v1) < 2.0**-100  # order-2 class group: the twists differ by a sign


def test_float_path_agrees():
    chi = make_character(QI, F3, 4, 0, twist=1)
    for I in ideals_up_to_norm(QI, 60, coprime_to=F3):
        assert abs(char_eval_float(chi, I) - complex(char_eval(chi, I))) < 1e-13


def test_not_coprime():
    with pytest.raises(NotCoprime):
        char_eval(make_character(QI, F3, 4, 0), F3)


def test_spec_roundtrip():
    for spec in [
        "hecke field=Q(i) f=(1+i)^3 a=4 b=0 twist=0",
        "hecke field=Q(i) f=(3) a=4 b=0 twist=1",
        "hecke field=Q(sqrt-3) f=(sqrt-3) a=6 b=0 twist=0",
    ]:
        chi = parse_character(spec)
        assert format_character(chi) == spec.replace("(1+i)^3", "(2+2i)")
        assert parse_character(format_character(chi)) == chi


def test_spec_errors_carry_column():
    with pytest.raises(SpecParseError) as exc:
        parse_character("hecke field=Q(i) f=(3) a=x b=0")
    assert exc.value.column == 26
    with pytest.raises(SpecParseError):
        parse_character("dirichlet field=Q(i)")


# ---------------------------------------------------------------------------
# properties

CHARS = [
    make_character(QI, F8, 4, 0),
    make_character(QI, F8, 3, 1),
    make_character(QI, F3, 4, 0, 1),
    make_character(Q3, parse_ideal(Q3, "(sqrt-3)"), 6, 0),
]
coprime_ideals = {chi: ideals_up_to_norm(chi.field, 200, coprime_to=chi.modulus) for chi in CHARS}


@given(st.sampled_from(CHARS), st.data())
def test_multiplicative(chi, data):
    I = data.draw(st.sampled_from(coprime_ideals[chi]))
    J = data.draw(st.sampled_from(coprime_ideals[chi]))
    with mpmath.workprec(150):
        lhs = char_eval(chi, ideal_mul(I, J), 130)
        rhs = char_eval(chi, I, 130) * char_eval(chi, J, 130)
        assert abs(lhs - rhs) <= 2.0**-110 * abs(lhs)


@given(st.sampled_from(CHARS), st.data())
def test_absolute_value_is_norm_power(chi, data):
    I = data.draw(st.sampled_from(coprime_ideals[chi]))
    with mpmath.workprec(150):
        v = abs(char_eval(chi, I, 130))
        expected = mpmath.mpf(int(ideal_norm(I))) ** (mpmath.mpf(chi.weight) / 2)
        assert abs(v - expected) <= 2.0**-110 * expected


@given(st.integers(-15, 15), st.integers(-15, 15))
def test_principal_ideals_in_trivial_class(x, y):
    chi = CHARS[0]
    z = QI.elem(x, y)
    if z.is_zero() or not ideal_sum(principal_ideal(z), F8).is_one():
        return
    v = char_eval_exact(chi, principal_ideal(z))
    # some unit multiple u z is 1 mod (1+i)^3, and chi((z)) = (u z)^-4 = z^-4
    assert v == z ** (-4)
