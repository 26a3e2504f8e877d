from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from heckecm.errors import GammaIncompatible, OutsideConvergenceRegion
from heckecm.eklattice import (
    EKParams,
    Lattice2,
    ek,
    ek_direct,
    ek_smoothed,
    gammainc_upper,
    lattice_from_ideal,
    lattice_points,
    torsion_translates,
)
from heckecm.quadarith import ImagQuadField, parse_ideal, unit_ideal

QI = ImagQuadField(1)
Q3 = ImagQuadField(3)
ZI = lattice_from_ideal(unit_ideal(QI))
PREC = 128


def rel(x, y):
    x, y = mpmath.mpc(x), mpmath.mpc(y)
    return abs(x - y) / max(abs(x), abs(y), mpmath.mpf(2) ** -PREC)


@pytest.mark.parametrize("order", [1, 2, 5, Fraction(1, 2), Fraction(3, 2), Fraction(11, 2)])
@pytest.mark.parametrize("x", ["0.1", "1", "7.5", "40"])
def test_incomplete_gamma_closed_forms(order, x):
    with mpmath.workprec(200):
        want = mpmath.gammainc(mpmath.mpf(order.numerator) / order.denominator if isinstance(order, Fraction) else order, mpmath.mpf(x))
        got = gammainc_upper(order, x)
        assert abs(got - want) <= mpmath.mpf(2) ** -180 * abs(want)


def test_zi_gamma4_matches_period_oracle():
    # (1/4) sum' l^-4 over Z[i] = Omega^4 / 60 with Omega the lemniscate period
    with mpmath.workprec(PREC):
        want = oracles.lemniscate_period(PREC + 20) ** 4 / 60
        got = ek(EKParams(0, 4, 0, 0, 4), ZI, PREC)
        assert rel(got, want) < mpmath.mpf(2) ** -(PREC - 10)
        assert abs(got - mpmath.mpf("0.78780300053847438455")) < 1e-19


def test_direct_gamma_counting():
    with mpmath.workprec(PREC):
        v4, b4 = ek_direct(EKParams(0, 4, 0, 0, 4), ZI, R=60, prec=PREC)
        v1, b1 = ek_direct(EKParams(0, 4, 0, 0, 1), ZI, R=60, prec=PREC)
        assert rel(v1, 4 * v4) < mpmath.mpf(2) ** -(PREC - 10)
        assert b1 == pytest.approx(4 * b4)


def test_direct_agrees_within_tail_bound():
    with mpmath.workprec(PREC):
        want = ek(EKParams(0, 4, 0, 0, 4), ZI, PREC)
        got, bound = ek_direct(EKParams(0, 4, 0, 0, 4), ZI, R=80, prec=PREC)
        assert abs(got - want) <= bound


def test_direct_refuses_boundary():
    with pytest.raises(OutsideConvergenceRegion):
        ek_direct(EKParams(1, 3, 0, 0), ZI, R=50)
    with pytest.raises(OutsideConvergenceRegion):
        ek_direct(EKParams(0, 2, 0, 0), ZI, R=50)


def test_gamma_must_fix_translate():
    with pytest.raises(GammaIncompatible):
        ek(EKParams(0, 4, mpmath.mpf(1) / 3, 0, 4), ZI, 64)
    with pytest.raises(GammaIncompatible):
        EKParams(0, 3, 0, 0, 4)


def test_smoothed_examples():
    with mpmath.workprec(PREC):
        E = ek(EKParams(0, 4, 0, 0), ZI, PREC)
        sm = ek_smoothed(EKParams(0, 4, 0, 0), parse_ideal(QI, "(1+i)"), ZI, PREC)
        assert rel(sm, 6 * E) < mpmath.mpf(2) ** -(PREC - 10)
        assert abs(ek_smoothed(EKParams(0, 4, 0, 0), unit_ideal(QI), ZI, PREC)) < mpmath.mpf(2) ** -(PREC - 10) * abs(E)


def test_distribution_relation_three_torsion():
    # N(c) E(x; L) - E(x; c^-1 L) equals the 9-term sum over c^-1 L / L of the smoothing weights
    c = parse_ideal(QI, "(3)")
    with mpmath.workprec(PREC):
        ts = torsion_translates(ZI, c)
        assert len(ts) == 9
        lhs = 0
        for t in ts:
            weight = (9 if abs(t) < 1e-30 else 0) - 1
            lhs += weight * ek(EKParams(0, 4, t, 0), ZI, PREC)
        rhs = ek_smoothed(EKParams(0, 4, 0, 0), c, ZI, PREC)
        assert rel(lhs, rhs) < mpmath.mpf(2) ** -(PREC - 12)


def test_gamma_reduction_by_orbits_sqrt_minus3():
    """Coset sums over Gamma-orbits against the 1/|Gamma| shortcut, on (sqrt-3) with |Gamma| = 3."""
    f = parse_ideal(Q3, "(sqrt-3)")
    L = lattice_from_ideal(f)
    with mpmath.workprec(PREC):
        t = mpmath.mpf(1)  # 1 lies in f^-1 L = O and (zeta3 - 1) * 1 lies in L
        zeta = mpmath.expjpi(mpmath.mpf(2) / 3)
        R = 25
        pts = lattice_points(L, t, R)
        orbit_reps = []
        seen = []
        for z in pts:
            if any(abs(z - y) < 1e-30 for y in seen):
                continue
            orbit = [z, zeta * z, zeta * zeta * z]
            seen.extend(orbit)
            orbit_reps.append(z)
        assert 3 * len(orbit_reps) == len(pts)
        term = lambda z: z ** -3 * abs(z) ** -6  # (b, a) = (0, 3), s = 3: invariant under mu_3
        by_orbits = sum(term(z) for z in orbit_reps)
        by_reduction = sum(term(z) for z in pts) / 3
        assert rel(by_orbits, by_reduction) < mpmath.mpf(2) ** -(PREC - 12)
        full = ek(EKParams(0, 3, t, 3, 3), L, PREC)
        _, bound = ek_direct(EKParams(0, 3, t, 3, 3), L, R=R, prec=PREC)
        assert abs(full - by_orbits) <= bound


@pytest.mark.parametrize("a", [2, 3, 4])
def test_conjugation_symmetry(a):
    with mpmath.workprec(PREC):
        w2 = mpmath.mpc("0.31", "1.17")
        L = Lattice2(mpmath.mpc(1), w2)
        Lbar = Lattice2(mpmath.conj(w2), mpmath.mpc(1))
        t = mpmath.mpf("0.25") + w2 / 3
        lhs = mpmath.conj(ek(EKParams(0, a, t, 0), L, PREC))
        rhs = ek(EKParams(0, a, mpmath.conj(t), 0), Lbar, PREC)
        assert rel(lhs, rhs) < mpmath.mpf(2) ** -(PREC - 12)


def test_lattice_points_order_is_deterministic():
    a = lattice_points(ZI, 0, 6)
    b = lattice_points(ZI, 0, 6)
    assert a == b
    radii = [abs(z) for z in a]
    assert radii == sorted(radii)


# ---------------------------------------------------------------------------
# properties

small = st.integers(-4, 4)
FAST = 96


@given(small, small, st.sampled_from([(0, 4), (1, 4), (0, 5), (1, 3)]))
def test_scaling_identity(x, y, ba):
    if x == 0 and y == 0:
        return
    b, a = ba
    with mpmath.workprec(FAST):
        mu = mpmath.mpc(x, y)
        L = Lattice2(mpmath.mpc(1), mpmath.mpc("0.2", "1.3"))
        t = mpmath.mpf(1) / 3
        lhs = ek(EKParams(b, a, t * mu, 0), L.scaled(mu), FAST)
        rhs = mpmath.conj(mu) ** b * mu ** (-a) * ek(EKParams(b, a, t, 0), L, FAST)
        assert rel(lhs, rhs) < mpmath.mpf(2) ** -(FAST - 12)


@given(st.floats(0.4, 2.5), st.sampled_from([(0, 4), (1, 3), (0, 2), (2, 4)]), st.sampled_from(["0", "1", "-1", "2"]))
def test_split_independence(split, ba, s):
    b, a = ba
    with mpmath.workprec(FAST):
        p = EKParams(b, a, mpmath.mpf(1) / 4, mpmath.mpf(s))
        v1 = ek(p, ZI, FAST, split=1)
        v2 = ek(p, ZI, FAST, split=mpmath.mpf(split))
        assert abs(v1 - v2) <= mpmath.mpf(2) ** -(FAST - 12) * max(1, abs(v1))
