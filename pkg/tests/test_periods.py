import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from heckecm.eklattice import Lattice2, lattice_from_ideal
from heckecm.errors import NonIntegralJ
from heckecm.periods import cm_period, j_invariant, lattice_invariants, round_j
from heckecm.quadarith import ImagQuadField, unit_ideal

PREC = 160
TOL = mpmath.mpf(2) ** -(PREC - 16)

# classical j-invariants of the nine imaginary quadratic orders of class number one
J_CLASS_ONE = {
    3: 0,
    1: 1728,
    7: -3375,
    2: 8000,
    11: -32768,
    19: -884736,
    43: -884736000,
    67: -147197952000,
    163: -262537412640768000,
}


def ring(d):
    return lattice_from_ideal(unit_ideal(ImagQuadField(d)))


def test_symmetric_lattices():
    with mpmath.workprec(PREC):
        zi = lattice_invariants(ring(1), PREC)
        assert abs(zi.g3) < TOL * abs(zi.g2) ** 1.5
        hx = lattice_invariants(ring(3), PREC)
        assert abs(hx.g2) < TOL * abs(hx.g3) ** (mpmath.mpf(2) / 3)


def test_invariants_match_theta_oracle():
    with mpmath.workprec(PREC):
        w2 = mpmath.mpc("0.27", "1.41")
        g2, g3 = oracles.invariants(mpmath.mpc(1), w2)
        inv = lattice_invariants(Lattice2(mpmath.mpc(1), w2), PREC)
        assert abs(inv.g2 - g2) < TOL * abs(g2)
        assert abs(inv.g3 - g3) < TOL * abs(g3)


@pytest.mark.parametrize("d,j", sorted(J_CLASS_ONE.items()))
def test_class_number_one_j(d, j):
    got, log2_residual = round_j(ImagQuadField(d), PREC)
    assert got == j
    assert log2_residual <= -PREC / 2


def test_period_normalizations_and_quadrature():
    with mpmath.workprec(PREC):
        P = cm_period(ImagQuadField(1), PREC)
        assert P.normalization == "j1728" and P.j == 1728
        assert abs(P.omega - oracles.lemniscate_period(PREC)) < TOL
        g2 = lattice_invariants(ring(1), PREC).g2
        assert abs(P.omega**4 - g2 / 4) < TOL * abs(g2)
        P3 = cm_period(ImagQuadField(3), PREC)
        assert P3.normalization == "j0" and P3.j == 0
        assert abs(P3.omega - oracles.equianharmonic_period(PREC)) < TOL
        P7 = cm_period(ImagQuadField(7), PREC)
        assert P7.normalization == "generic" and P7.j == -3375


def test_normalized_models_are_rational():
    with mpmath.workprec(PREC):
        inv = lattice_invariants(cm_period(ImagQuadField(1), PREC).lattice, PREC)
        assert abs(inv.g2 - 4) < TOL and abs(inv.g3) < TOL
        inv = lattice_invariants(cm_period(ImagQuadField(3), PREC).lattice, PREC)
        assert abs(inv.g2) < TOL and abs(inv.g3 - 4) < TOL
        inv = lattice_invariants(cm_period(ImagQuadField(7), PREC).lattice, PREC)
        assert abs(inv.g2 - inv.g3) < TOL * abs(inv.g2)  # g2 = g3 in the generic branch


def test_precision_doubling_is_stable():
    lo = cm_period(ImagQuadField(7), 128)
    hi = cm_period(ImagQuadField(7), 256)
    with mpmath.workprec(256):
        assert abs(lo.omega - hi.omega) < mpmath.mpf(2) ** -118 * abs(hi.omega)


def test_class_number_two_without_integral_j():
    with pytest.raises(NonIntegralJ):
        cm_period(ImagQuadField(5), 96)


@given(st.floats(-3, 3), st.floats(-3, 3))
def test_homogeneity_and_j_invariance(x, y):
    if abs(complex(x, y)) < 0.1:
        return
    with mpmath.workprec(PREC):
        mu = mpmath.mpc(x, y)
        L = Lattice2(mpmath.mpc(1), mpmath.mpc("0.37", "0.93"))
        a = lattice_invariants(L, PREC)
        b = lattice_invariants(L.scaled(mu), PREC)
        assert abs(b.g2 - mu**-4 * a.g2) < TOL * abs(b.g2)
        assert abs(b.g3 - mu**-6 * a.g3) < TOL * abs(b.g3)
        assert abs(j_invariant(L.scaled(mu), PREC) - a.j) < TOL * abs(a.j)
