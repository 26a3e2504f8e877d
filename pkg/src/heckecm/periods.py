"""Weierstrass invariants of rank-2 lattices and CM periods.

g2 = 60 sum' l^-4 and g3 = 140 sum' l^-6 are evaluated through the
Eisenstein q-series on a reduced basis, where |q| <= exp(-pi sqrt 3).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath

from .eklattice import Lattice2, lattice_from_ideal
from .errors import ClassNumberTooLarge, NonIntegralJ
from .quadarith import ImagQuadField, unit_ideal

# discriminants of class number one
CLASS_NUMBER_ONE = (-3, -4, -7, -8, -11, -19, -43, -67, -163)


@dataclass(frozen=True)
class LatticeInvariants:
    g2: mpmath.mpc
    g3: mpmath.mpc
    j: mpmath.mpc | None
    lattice: Lattice2

    @property
    def discriminant(self):
        return self.g2**3 - 27 * self.g3**2


@dataclass(frozen=True)
class CMPeriod:
    field: ImagQuadField
    omega: mpmath.mpc
    normalization: str  # j1728 | j0 | generic
    lattice: Lattice2  # omega * embed(O_K)
    j: int
    prec: int


def _divisor_series(q, power: int, prec: int):
    """sum_{n>=1} n^power q^n / (1 - q^n), truncated below 2^-(prec+20)."""
    aq = abs(q)
    if aq == 0:
        return mpmath.mpc(0)
    total = mpmath.mpc(0)
    qn = mpmath.mpc(1)
    eps = mpmath.mpf(2) ** (-(prec + 20))
    n = 0
    while True:
        n += 1
        qn *= q
        term = n**power * qn / (1 - qn)
        total += term
        if n**power * abs(qn) < eps * max(1, abs(total)) and n > 2:
            return total


def lattice_invariants(L: Lattice2, prec: int = 192) -> LatticeInvariants:
    with mpmath.workprec(prec + 30):
        Lr = L.reduced()
        w1, w2 = Lr.w1, Lr.w2
        tau = w2 / w1
        q = mpmath.expjpi(2 * tau)
        e4 = 1 + 240 * _divisor_series(q, 3, prec)
        e6 = 1 - 504 * _divisor_series(q, 5, prec)
        pi = mpmath.pi
        g2 = 4 * pi**4 / 3 * e4 / w1**4
        g3 = 8 * pi**6 / 27 * e6 / w1**6
        disc = g2**3 - 27 * g3**2
        j = 1728 * g2**3 / disc if disc != 0 else None
    with mpmath.workprec(prec):
        return LatticeInvariants(+g2, +g3, None if j is None else +j, L)


def _is_zero(z, scale, prec) -> bool:
    return abs(z) <= mpmath.mpf(2) ** (-(prec // 2)) * max(1, abs(scale))


def cm_period(F: ImagQuadField, prec: int = 192) -> CMPeriod:
    """Omega with omega * O_K the period lattice of a model with rational g2, g3."""
    h = F.class_number()
    if h > 2:
        raise ClassNumberTooLarge(f"class number {h} > 2")
    with mpmath.workprec(prec + 30):
        L0 = lattice_from_ideal(unit_ideal(F))
        inv = lattice_invariants(L0, prec + 30)
        g2, g3 = inv.g2, inv.g3
        scale = max(abs(g2) ** 3, abs(g3) ** 2) ** (mpmath.mpf(1) / 6)
        if _is_zero(g3, scale**3, prec):
            tag, j = "j1728", 1728
            omega = mpmath.root(g2 / 4, 4)
        elif _is_zero(g2, scale**2, prec):
            tag, j = "j0", 0
            omega = mpmath.root(g3 / 4, 6)
        else:
            tag = "generic"
            jr = mpmath.nint(inv.j.real)
            if abs(inv.j - jr) > mpmath.mpf(2) ** (-(prec // 2)) * max(1, abs(inv.j)):
                raise NonIntegralJ(f"j(O_K) = {mpmath.nstr(inv.j, 20)} is not a rational integer")
            j = int(jr)
            omega = mpmath.sqrt(g3 / g2)
        lattice = L0.scaled(omega)
    with mpmath.workprec(prec):
        return CMPeriod(F, +omega, tag, lattice, j, prec)


def lemniscate_period(prec: int = 192):
    """Real period of y^2 = 4x^3 - 4x: 2 int_1^oo dx / sqrt(4x^3 - 4x), with x = 1 + t^2."""
    with mpmath.workprec(prec + 20):
        v = 2 * mpmath.quad(lambda t: 1 / mpmath.sqrt((1 + t**2) * (2 + t**2)), [0, 1, mpmath.inf])
    with mpmath.workprec(prec):
        return +v


def equianharmonic_period(prec: int = 192):
    """Real period of y^2 = 4x^3 - 4: 2 int_1^oo dx / sqrt(4x^3 - 4), with x = 1 + t^2."""
    with mpmath.workprec(prec + 20):
        v = 2 * mpmath.quad(lambda t: 1 / mpmath.sqrt((1 + t**2) ** 2 + (1 + t**2) + 1), [0, 1, mpmath.inf])
    with mpmath.workprec(prec):
        return +v


def j_invariant(L: Lattice2, prec: int = 192):
    return lattice_invariants(L, prec).j


def round_j(F: ImagQuadField, prec: int = 192) -> tuple[int, float]:
    """(nearest integer to j(O_K), log2 of the residual)."""
    with mpmath.workprec(prec + 30):
        j = lattice_invariants(lattice_from_ideal(unit_ideal(F)), prec + 30).j
        r = mpmath.nint(j.real)
        res = abs(j - r)
        return int(r), float(mpmath.log(res, 2)) if res else -math.inf
