"""Eisenstein-Kronecker series for rank-2 lattices in C.

    E^{b,a}(t, s; L, G) = (1/|G|) sum'_{l in L+t} conj(l)^b l^(-a) |l|^(-2s)

The summand equals conj(l)^m |l|^(-2w) with m = a+b, w = s+a.  ``ek`` evaluates
the analytic continuation by splitting the Mellin integral of the theta series
at x0 and Poisson-transforming the small-x part onto the dual lattice:

    Z = (pi/A)^w / Gamma(w) * [ sum' conj(l)^m u_l^(-w) Gamma(w, x0 u_l)
        + (-1)^m sum'_{n in L} conj(n)^m e(-Im(n conj t)/A) u_n^(w-m-1) Gamma(m+1-w, u_n/x0) ]

with u_x = pi |x|^2 / A and A the covolume.  The constant was pinned by
agreement with the direct sum and by independence of x0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from .errors import GammaIncompatible, OutsideConvergenceRegion, PrecisionUnachievable
from .quadarith import ImagQuadField, QuadElem, QuadIdeal, ideal_inv, ideal_mul

GUARD_BITS = 20
MAX_PREC = 20000
MAX_POINTS = 2_000_000

BigComplex = mpmath.mpc


def big(z, prec: int | None = None) -> mpmath.mpc:
    """Coerce to an mpmath complex (optionally at a given working precision)."""
    if prec is None:
        return mpmath.mpc(z)
    with mpmath.workprec(prec):
        return +mpmath.mpc(z)


@dataclass(frozen=True)
class Lattice2:
    w1: mpmath.mpc
    w2: mpmath.mpc
    # provenance: lattice = scale * embed(ideal)
    field: ImagQuadField | None = None
    ideal: QuadIdeal | None = None
    scale: mpmath.mpc | None = None

    def __post_init__(self):
        if self.covolume <= 0:
            raise ValueError("basis must satisfy Im(w2/w1) > 0")

    @property
    def covolume(self):
        return (mpmath.conj(self.w1) * self.w2).imag

    @property
    def has_provenance(self) -> bool:
        return self.ideal is not None

    def scaled(self, mu) -> Lattice2:
        mu = mpmath.mpc(mu)
        sc = None if self.scale is None else self.scale * mu
        return Lattice2(self.w1 * mu, self.w2 * mu, self.field, self.ideal, sc)

    def refreshed(self) -> Lattice2:
        """Ideal-provenant lattices re-embed their basis at the working precision."""
        if self.ideal is None:
            return self
        b1, b2 = self.ideal.basis()
        sc = mpmath.mpc(self.scale)
        F = self.ideal.field
        return Lattice2(sc * F.embed(b1), sc * F.embed(b2), F, self.ideal, self.scale)

    def coords(self, z) -> tuple:
        """Real coordinates (x1, x2) with z = x1 w1 + x2 w2."""
        if self.ideal is not None:
            return self.refreshed()._coords(z)
        return self._coords(z)

    def _coords(self, z) -> tuple:
        A = self.covolume
        z = mpmath.mpc(z)
        x2 = (mpmath.conj(self.w1) * z).imag / A
        x1 = (z * mpmath.conj(self.w2)).imag / -A
        return x1, x2

    def contains(self, z, tol=None) -> bool:
        tol = tol if tol is not None else mpmath.mpf(2) ** (-mpmath.mp.prec // 2)
        return all(abs(x - mpmath.nint(x)) < tol for x in self.coords(z))

    def reduced(self) -> Lattice2:
        """Same lattice with a Lagrange-reduced, positively oriented basis."""
        src = self.refreshed()
        u, v = src.w1, src.w2
        if abs(u) > abs(v):
            u, v = v, u
        while True:
            mu = mpmath.nint((v * mpmath.conj(u)).real / abs(u) ** 2)
            v = v - mu * u
            if abs(v) >= abs(u):
                break
            u, v = v, u
        if (mpmath.conj(u) * v).imag < 0:
            v = -v
        return Lattice2(u, v, self.field, self.ideal, self.scale)


def lattice_from_ideal(I: QuadIdeal, scale=1, prec: int | None = None) -> Lattice2:
    """scale * sigma(I) for the embedding sqrt(-d) -> +i sqrt(d)."""
    F = I.field
    with mpmath.workprec(prec or mpmath.mp.prec):
        sc = mpmath.mpc(scale)
        b1, b2 = I.basis()
        return Lattice2(sc * F.embed(b1), sc * F.embed(b2), F, I, sc)


def lattice_div_ideal(L: Lattice2, c: QuadIdeal) -> Lattice2:
    """c^{-1} L for an ideal-provenant lattice."""
    if not L.has_provenance:
        raise ValueError("lattice has no ideal provenance")
    return lattice_from_ideal(ideal_mul(ideal_inv(c), L.ideal), L.scale)


@dataclass(frozen=True)
class EKParams:
    b: int
    a: int
    t: object = 0
    s: object = 0
    gamma_order: int = 1

    def __post_init__(self):
        if self.a < 1 or self.b < 0:
            raise ValueError("need a >= 1 and b >= 0")
        if self.gamma_order not in (1, 2, 3, 4, 6):
            raise GammaIncompatible(f"|Gamma| = {self.gamma_order} is not the order of a root-of-unity group")
        if (self.a + self.b) % self.gamma_order:
            raise GammaIncompatible(
                f"type conj^{self.b} id^-{self.a} is not invariant under roots of unity of order {self.gamma_order}"
            )

    @property
    def m(self) -> int:
        return self.a + self.b


def _check_gamma(params: EKParams, L: Lattice2, t):
    """Lambda + Gamma t = Lambda + t is needed for the 1/|Gamma| reduction."""
    n = params.gamma_order
    if n == 1:
        return
    g = mpmath.expjpi(mpmath.mpf(2) / n)
    if not L.contains((g - 1) * t):
        raise GammaIncompatible("translate t is not fixed mod the lattice by the roots of unity in Gamma")


# ---------------------------------------------------------------------------
# incomplete gamma


def gammainc_upper(order, x):
    """Gamma(order, x) for real x > 0; closed forms for integer and half-integer orders."""
    x = mpmath.mpf(x)
    if isinstance(order, int) or (isinstance(order, Fraction) and order.denominator in (1, 2)):
        twice = int(2 * order)
        if twice >= 1:
            if twice % 2 == 0:
                g = mpmath.exp(-x)
                o = mpmath.mpf(1)
            else:
                g = mpmath.sqrt(mpmath.pi) * mpmath.erfc(mpmath.sqrt(x))
                o = mpmath.mpf(0.5)
            # Gamma(o+1, x) = o Gamma(o, x) + x^o e^-x
            ex = mpmath.exp(-x)
            while 2 * o < twice:
                g = o * g + x**o * ex
                o += 1
            return g
    return mpmath.gammainc(mpmath.mpf(order) if not isinstance(order, mpmath.mpc) else order, x)


def _as_order(z):
    """Keep integers/half-integers exact so the closed forms apply."""
    if isinstance(z, (int, Fraction)):
        return z
    z = mpmath.mpc(z)
    if z.imag == 0:
        r = z.real
        if r == mpmath.nint(r):
            return int(r)
        if 2 * r == mpmath.nint(2 * r):
            return Fraction(int(mpmath.nint(2 * r)), 2)
        return r
    return z


# ---------------------------------------------------------------------------
# lattice point enumeration


def lattice_points(L: Lattice2, t, R, exclude_zero: bool = True) -> list:
    """Points of L + t with |l| <= R, sorted by |l| and then by angle."""
    Lr = L.reduced()
    w1, w2 = Lr.w1, Lr.w2
    A = Lr.covolume
    t = mpmath.mpc(t)
    # reduce t into the fundamental cell
    x1, x2 = Lr.coords(t)
    t = t - mpmath.floor(x1) * w1 - mpmath.floor(x2) * w2
    x1, x2 = Lr.coords(t)
    n2max = int(mpmath.ceil((R + abs(t)) * abs(w1) / A)) + 1
    n1max = int(mpmath.ceil((R + abs(t)) * abs(w2) / A)) + 1
    R2 = mpmath.mpf(R) ** 2
    tiny = mpmath.mpf(2) ** (-mpmath.mp.prec // 2)
    pts = []
    for n2 in range(-n2max, n2max + 1):
        base = t + n2 * w2
        for n1 in range(-n1max, n1max + 1):
            z = base + n1 * w1
            r2 = z.real**2 + z.imag**2
            if r2 > R2:
                continue
            if exclude_zero and r2 <= tiny * tiny:
                continue
            pts.append((r2, mpmath.arg(z) if r2 > tiny * tiny else 0, z))
            if len(pts) > MAX_POINTS:
                raise PrecisionUnachievable("too many lattice points for the requested precision")
    pts.sort(key=lambda p: (p[0], p[1]))
    return [p[2] for p in pts]


# ---------------------------------------------------------------------------
# analytic continuation


def ek(params: EKParams, L: Lattice2, prec: int = 192, split=1) -> mpmath.mpc:
    """E^{b,a}(t, s; L, Gamma) via the incomplete-gamma splitting (valid for all s)."""
    if prec > MAX_PREC:
        raise PrecisionUnachievable(f"precision {prec} exceeds the supported {MAX_PREC} bits")
    with mpmath.workprec(prec + 40):
        t = mpmath.mpc(params.t)
        _check_gamma(params, L, t)
        Z = epstein_harmonic(L, t, params.m, _as_order(mpmath.mpc(params.s) + params.a), prec, split)
        out = Z / params.gamma_order
    with mpmath.workprec(prec):
        return +out


def epstein_harmonic(L: Lattice2, t, m: int, w, prec: int, split=1):
    """sum'_{l in L+t} conj(l)^m |l|^(-2w), continued in w."""
    L = L.reduced()
    A = L.covolume
    x0 = mpmath.mpf(split)
    pi = mpmath.pi
    wv = w if not isinstance(w, Fraction) else mpmath.mpf(w.numerator) / w.denominator
    # truncate once e^-u < 2^(-prec-GUARD); pad for the polynomial prefactors
    umax = (prec + GUARD_BITS) * math.log(2)
    umax += (abs(m) + abs(complex(wv)) + 2) * math.log(1 + umax)
    if umax / float(x0) * float(A) > 1e12:
        raise PrecisionUnachievable("truncation radius out of range")
    R1 = mpmath.sqrt(umax * A / (pi * x0))
    R2 = mpmath.sqrt(umax * A * x0 / pi)
    far = mpmath.mpf(0)
    for lam in lattice_points(L, t, R1):
        u = pi * (lam.real**2 + lam.imag**2) / A
        far += mpmath.conj(lam) ** m * u ** (-wv) * gammainc_upper(w, x0 * u)
    dual_order = _as_order(m + 1 - wv)
    if m < 1:
        raise ValueError("harmonic weight m = a + b must be positive")
    near = mpmath.mpf(0)
    t = mpmath.mpc(t)
    for nu in lattice_points(L, 0, R2):
        u = pi * (nu.real**2 + nu.imag**2) / A
        phase = mpmath.expj(-2 * pi * (nu * mpmath.conj(t)).imag / A)
        near += mpmath.conj(nu) ** m * phase * u ** (wv - m - 1) * gammainc_upper(dual_order, u / x0)
    near *= (-1) ** m
    return (pi / A) ** wv / mpmath.gamma(wv) * (far + near)


# ---------------------------------------------------------------------------
# direct summation oracle


def tail_bound(k, R, A, diam):
    """Bound for sum_{|l|>R} |l|^-k over a coset of a lattice of covolume A and cell diameter diam."""
    R = float(R)
    return (1 + diam / (R - diam)) ** k * 2 * math.pi * (R - diam) ** (2 - k) / ((k - 2) * float(A))


def ek_direct(params: EKParams, L: Lattice2, R=1000, prec: int = 192, near_radius=None):
    """Truncated defining sum over |l| <= R, and a rigorous bound on the omitted tail.

    Points with |l| <= near_radius are summed at full precision; the remaining
    annulus is summed in extended precision (numpy longdouble).  The default
    near radius keeps the accumulated rounding of the annulus below
    2^-(prec/2) of the leading term.
    """
    s = mpmath.mpc(params.s)
    k = 2 * float(s.real) + params.a - params.b
    if k <= 2:
        raise OutsideConvergenceRegion(f"Re(s) + (a-b)/2 = {k / 2} must exceed 1")
    if R < 10:
        raise ValueError("R must be at least 10")
    with mpmath.workprec(prec + 40):
        t = mpmath.mpc(params.t)
        _check_gamma(params, L, t)
        Lr = L.reduced()
        A = Lr.covolume
        if near_radius is None:
            near_radius = _near_radius(k, float(A), float(abs(Lr.w1)), float(abs(Lr.w2)), prec)
        near_radius = min(float(R), near_radius)
        near = mpmath.mpf(0)
        b, a = params.b, params.a
        for lam in lattice_points(Lr, t, near_radius):
            near += mpmath.conj(lam) ** b * lam ** (-a) * abs(lam) ** (-2 * s)
        far = _far_sum(Lr, t, b, a, complex(s), near_radius, float(R))
        total = (near + mpmath.mpc(far)) / params.gamma_order
        diam = float(abs(Lr.w1) + abs(Lr.w2))
        bound = tail_bound(k, R, A, diam) / params.gamma_order
    with mpmath.workprec(prec):
        return +total, bound


NEAR_POINTS = 20000


def _near_radius(k: float, A: float, r1: float, r2: float, prec: int) -> float:
    # sum_{|l| > r} |l|^-k <~ 2 pi r^(2-k) / ((k-2) A); rounding is eps times that
    eps = float(np.finfo(np.longdouble).eps)
    lead = r1 ** (-k)
    target = 2.0 ** (-(prec / 2)) * lead
    r = (2 * math.pi * eps / ((k - 2) * A * target)) ** (1 / (k - 2))
    # never more than about NEAR_POINTS points at full precision
    cap = math.sqrt(NEAR_POINTS * A / math.pi)
    return max(12.0, 6.0 * r2, min(r, cap))


def _far_sum(L: Lattice2, t, b, a, s: complex, r0: float, R: float) -> complex:
    ld = np.longdouble
    w1 = np.clongdouble(complex(L.w1))
    w2 = np.clongdouble(complex(L.w2))
    tc = np.clongdouble(complex(t))
    A = float(L.covolume)
    n2max = int(math.ceil((R + abs(complex(t))) * abs(complex(L.w1)) / A)) + 1
    n1max = int(math.ceil((R + abs(complex(t))) * abs(complex(L.w2)) / A)) + 1
    n1 = np.arange(-n1max, n1max + 1).astype(ld)
    m = a + b
    total = np.clongdouble(0)
    chunk = max(1, 2_000_000 // n1.size)
    for start in range(-n2max, n2max + 1, chunk):
        n2 = np.arange(start, min(start + chunk, n2max + 1)).astype(ld)
        z = tc + n2[:, None] * w2 + n1[None, :] * w1
        r2 = z.real * z.real + z.imag * z.imag
        mask = (r2 > ld(r0) * ld(r0)) & (r2 <= ld(R) * ld(R))
        z = np.conj(z[mask])
        r2 = r2[mask]
        # conj(l)^b l^-a |l|^-2s = conj(l)^(a+b) |l|^-(2a+2s)
        zm = np.ones_like(z)
        for _ in range(m):
            zm = zm * z
        terms = zm * r2 ** ld(-(a + s.real))
        if s.imag:
            terms = terms * np.exp(np.clongdouble(-1j * s.imag) * np.log(r2))
        total += terms.sum()
    return mpmath.mpc(mpmath.mpf(str(total.real)), mpmath.mpf(str(total.imag)))


# ---------------------------------------------------------------------------
# smoothing


def ek_smoothed(params: EKParams, c: QuadIdeal, L: Lattice2, prec: int = 192, split=1) -> mpmath.mpc:
    """N(c) E(x; L) - E(x; c^{-1} L), with x = params.t."""
    Nc = c.norm()
    Lc = lattice_div_ideal(L, c)
    with mpmath.workprec(prec + 10):
        v = Nc.numerator * ek(params, L, prec + 10, split) - ek(params, Lc, prec + 10, split)
    with mpmath.workprec(prec):
        return +v


def torsion_translates(L: Lattice2, c: QuadIdeal) -> list:
    """Representatives of c^{-1} L / L."""
    Lc = lattice_div_ideal(L, c)
    n = int(c.norm())
    # c^{-1}L / L has order N(c); walk a box in the coarse basis
    reps = []
    for i in range(n):
        for j in range(n):
            z = i * Lc.w1 + j * Lc.w2
            if not any(L.contains(z - r) for r in reps):
                reps.append(z)
            if len(reps) == n:
                return reps
    raise AssertionError("torsion enumeration incomplete")
