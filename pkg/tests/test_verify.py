import mpmath
import pytest

from heckecm.errors import NotCritical
from heckecm.hecke import parse_character
from heckecm.periods import cm_period
from heckecm.verify import deligne_ratio, format_poly, recognize_algebraic, verify

CHI8 = "hecke field=Q(i) f=(1+i)^3 a=4 b=0"


def test_recognize_simple_constants():
    assert recognize_algebraic(mpmath.mpf("0.75"), prec=128) == [4, -3]
    with mpmath.workprec(256):
        assert recognize_algebraic(mpmath.sqrt(2), prec=256) == [1, 0, -2]
        assert recognize_algebraic((1 + mpmath.sqrt(5)) / 2, prec=256) == [1, -1, -1]
        assert recognize_algebraic(mpmath.pi, prec=256) is None
        assert recognize_algebraic(mpmath.mpc(1, 1) / 3, prec=256, field=None) == [9, -6, 2]


def test_format_poly():
    assert format_poly([48, -1]) == "48x - 1"
    assert format_poly([1, 0, -2]) == "x^2 - 2"


def test_ratio_of_zero_is_zero():
    chi = parse_character(CHI8)
    assert deligne_ratio(chi, cm_period(chi.field, 64).omega, L=0, prec=64) == 0


def test_not_critical():
    chi = parse_character("hecke field=Q(i) f=(1+i)^3 a=4 b=0")
    from dataclasses import replace

    with pytest.raises(NotCritical):
        verify(replace(chi, a=0, b=4), 64)


def test_quartic_character_recognized():
    rep = verify(parse_character(CHI8), 256)
    assert rep.recognized and rep.polynomial == [48, -1]
    assert rep.residual <= -128


def test_sqrt_minus3_character_recognized():
    rep = verify(parse_character("hecke field=Q(sqrt-3) f=(sqrt-3) a=6 b=0"), 256)
    assert rep.recognized and len(rep.polynomial) <= 3
    assert rep.polynomial == [405, -2]


def test_low_precision_reports_instead_of_crashing():
    rep = verify(parse_character(CHI8), 32)
    assert not rep.recognized
    assert rep.notes and rep.to_json()["log2_residual"] is not None


@pytest.mark.parametrize("u,poly", [(2, [768, -1]), (mpmath.mpc(1, 1), [192, 1])])
def test_rescaling_transforms_polynomial(u, poly):
    # Omega -> u Omega multiplies R = L / Omega^4 by u^-4
    rep = verify(parse_character(CHI8), 256, omega_scale=u)
    assert rep.recognized and rep.polynomial == poly


def test_deterministic_reports():
    a = verify(parse_character(CHI8), 192).to_json()
    b = verify(parse_character(CHI8), 192).to_json()
    assert a == b


@pytest.mark.parametrize("twist", [0, 1])
def test_twists_at_conductor_three(twist):
    rep = verify(parse_character(f"hecke field=Q(i) f=(3) a=4 b=0 twist={twist}"), 256)
    assert rep.recognized, rep.notes


def test_mixed_type_under_hodge_normalization():
    # L * pi^b / Omega^(a+b) for (a, b) = (3, 1) is rational
    rep = verify(parse_character("hecke field=Q(i) f=(1+i)^3 a=3 b=1"), 256, normalization="hodge")
    assert rep.recognized and rep.polynomial == [16, -1]
