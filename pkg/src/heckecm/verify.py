"""Deligne-ratio pipeline: L_f(chi, 0), a CM period Omega, the ratio R, and a
numerical certificate (integer relation) that R is algebraic.

Two normalizations of R are offered:

* ``"standard"``: R = L * conj(Omega)^b / Omega^a.
* ``"hodge"``:    R = L * pi^b / Omega^(a+b), i.e. the standard ratio times
  (pi / |Omega|^2)^b.  The extra factor is the Hodge-pairing correction for
  the antiholomorphic part of the infinity type; it is 1 when b = 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .errors import NotCritical
from .hecke import HeckeChar
from .lvalues import L_value
from .periods import cm_period
from .quadarith import ImagQuadField

NORMALIZATIONS = ("standard", "hodge")


@dataclass
class VerifyReport:
    character: str
    prec: int
    L: mpmath.mpc
    omega: mpmath.mpc
    omega_normalization: str
    omega_scale: object
    ratio_normalization: str
    ratio: mpmath.mpc
    polynomial: list[int] | None  # leading coefficient first
    residual: float | None  # log2 of |P(R)| relative to the height scale
    stable: bool
    recognized: bool
    polynomial_hi: list[int] | None = None
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        digits = max(15, int(self.prec * math.log10(2)) - 5)
        with mpmath.workprec(self.prec + 20):
            return self._to_json(digits)

    def _to_json(self, digits: int) -> dict:
        c = lambda z: {"re": mpmath.nstr(mpmath.mpc(z).real, digits), "im": mpmath.nstr(mpmath.mpc(z).imag, digits)}
        return {
            "character": self.character,
            "prec": self.prec,
            "L": c(self.L),
            "omega": c(self.omega),
            "omega_normalization": self.omega_normalization,
            "omega_scale": str(self.omega_scale),
            "ratio_normalization": self.ratio_normalization,
            "ratio": c(self.ratio),
            "polynomial": self.polynomial,
            "polynomial_str": format_poly(self.polynomial) if self.polynomial else None,
            "polynomial_at_1.5p": self.polynomial_hi,
            "log2_residual": None if self.residual is None else f"{self.residual:.1f}",
            "stable": self.stable,
            "recognized": self.recognized,
            "notes": list(self.notes),
        }


def format_poly(coeffs: list[int], var: str = "x") -> str:
    d = len(coeffs) - 1
    parts = []
    for i, c in enumerate(coeffs):
        k = d - i
        if c == 0:
            continue
        mono = "" if k == 0 else var if k == 1 else f"{var}^{k}"
        a = abs(c)
        body = str(a) if k == 0 else (mono if a == 1 else f"{a}{mono}")
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    first = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    return " ".join([first] + [f"{s} {b}" for s, b in parts[1:]])


def is_critical(a: int, b: int) -> bool:
    """alpha = a >= 1 on the CM type, beta = b >= 0 on its conjugate."""
    return a >= 1 and b >= 0


def deligne_ratio(chi: HeckeChar, omega, L=None, normalization: str = "standard", prec: int = 192):
    if not is_critical(chi.a, chi.b):
        raise NotCritical(f"(a, b) = ({chi.a}, {chi.b}) is not critical: need a >= 1 and b >= 0")
    if normalization not in NORMALIZATIONS:
        raise ValueError(f"normalization must be one of {NORMALIZATIONS}")
    with mpmath.workprec(prec + 20):
        if L is None:
            L = L_value(chi, 0, prec + 20).total
        L = mpmath.mpc(L)
        omega = mpmath.mpc(omega)
        if normalization == "standard":
            R = L * mpmath.conj(omega) ** chi.b / omega**chi.a
        else:
            R = L * mpmath.pi**chi.b / omega ** (chi.a + chi.b)
    with mpmath.workprec(prec):
        return +R


# ---------------------------------------------------------------------------
# recognition


def _normalize(coeffs: list[int]) -> list[int]:
    while coeffs and coeffs[0] == 0:
        coeffs = coeffs[1:]
    g = 0
    for c in coeffs:
        g = math.gcd(g, c)
    if g:
        coeffs = [c // g for c in coeffs]
    if coeffs and coeffs[0] < 0:
        coeffs = [-c for c in coeffs]
    return coeffs


def poly_residual(coeffs: list[int], z) -> float:
    """log2 of |P(z)| / sum |c_k| |z|^k."""
    z = mpmath.mpc(z)
    val = mpmath.polyval(coeffs, z)
    scale = sum(abs(c) * abs(z) ** (len(coeffs) - 1 - i) for i, c in enumerate(coeffs))
    if val == 0:
        return -math.inf
    return float(mpmath.log(abs(val) / scale, 2))


def _pslq_poly(z, degree: int, max_height: int, prec: int):
    z = mpmath.mpc(z)
    tol = mpmath.mpf(2) ** (-(prec // 2))
    if abs(z.imag) <= tol * max(1, abs(z)):
        vec = [z.real**k for k in range(degree + 1)]
    else:
        # both Re and Im of P(z) must vanish; fold them with an irrational weight
        theta = mpmath.sqrt(2) + mpmath.pi / 7
        vec = [(z**k).real + theta * (z**k).imag for k in range(degree + 1)]
    rel = mpmath.pslq(vec, tol=tol, maxcoeff=max_height, maxsteps=20000)
    if rel is None:
        return None
    return _normalize(list(reversed([int(c) for c in rel])))


def _rational(x, max_height: int, prec: int) -> Fraction | None:
    tol = mpmath.mpf(2) ** (-(prec // 2))
    if abs(x) <= tol:
        return Fraction(0)
    rel = mpmath.pslq([mpmath.mpf(1), x], tol=tol, maxcoeff=max_height, maxsteps=20000)
    if rel is None or rel[1] == 0:
        return None
    return Fraction(-int(rel[0]), int(rel[1]))


def _quadratic_basis_poly(z, F: ImagQuadField, max_height: int, prec: int):
    """z = x + y*w_K with x, y rational: the minimal polynomial of z over Q."""
    w = F.embed(F.elem(0, 1))
    y = z.imag / w.imag
    x = z.real - y * w.real
    xq, yq = _rational(x, max_height, prec), _rational(y, max_height, prec)
    if xq is None or yq is None:
        return None
    elem = F.elem(xq, yq)
    if yq == 0:
        return _normalize([xq.denominator, -xq.numerator])
    tr, nm = elem.trace(), elem.norm()
    den = math.lcm(tr.denominator, nm.denominator)
    return _normalize([den, int(-tr * den), int(nm * den)])


def recognize_algebraic(z, max_degree: int = 2, max_height: int = 10**8, prec: int = 192, field=None):
    """Minimal-degree integer polynomial P (leading coefficient first) with P(z) ~ 0, or None.

    Accepts P only if its height is <= max_height and |P(z)| <= 2^(-prec/2) times
    the height scale sum |c_k| |z|^k.
    """
    if max_degree > 8:
        raise ValueError("max_degree must be <= 8")
    # PSLQ needs at least 53 working bits; the gates still use prec
    with mpmath.workprec(max(prec + 10, 64)):
        return _recognize(mpmath.mpc(z), max_degree, max_height, prec, field)


def _recognize(z, max_degree, max_height, prec, field):
    if z == 0:
        return [1, 0]
    gate = -prec / 2

    def ok(P):
        return (
            P is not None
            and len(P) >= 2
            and max(abs(c) for c in P) <= max_height
            and poly_residual(P, z) <= gate
        )

    for d in range(1, max_degree + 1):
        P = _pslq_poly(z, d, max_height, prec)
        if ok(P):
            return P
        if d == 1 and field is not None and max_degree >= 2:
            Q = _quadratic_basis_poly(z, field, max_height, prec)
            if ok(Q):
                return Q
    return None


# ---------------------------------------------------------------------------
# pipeline


def verify(
    chi: HeckeChar,
    prec: int = 256,
    max_degree: int = 2,
    max_height: int = 10**8,
    omega_scale=1,
    normalization: str = "standard",
) -> VerifyReport:
    """Compute R at prec and 1.5*prec; recognized iff the same polynomial passes both gates."""
    if not is_critical(chi.a, chi.b):
        raise NotCritical(f"(a, b) = ({chi.a}, {chi.b}) is not critical: need a >= 1 and b >= 0")
    results = []
    for p in (prec, (3 * prec) // 2):
        with mpmath.workprec(p + 20):
            period = cm_period(chi.field, p + 20)
            omega = period.omega * mpmath.mpc(omega_scale)
            L = L_value(chi, 0, p + 20).total
            R = deligne_ratio(chi, omega, L, normalization, p + 20)
            P = recognize_algebraic(R, max_degree, max_height, p, chi.field)
            res = poly_residual(P, R) if P else None
        results.append((p, period, omega, L, R, P, res))
    (p0, period, omega, L, R, P, res), (_, _, _, _, _, P_hi, _) = results
    stable = P is not None and P == P_hi
    certifiable = P is not None and prec / 2 >= len(P) * math.log2(max_height)
    report = VerifyReport(
        character=str(chi),
        prec=prec,
        L=L,
        omega=omega,
        omega_normalization=period.normalization,
        omega_scale=omega_scale,
        ratio_normalization=normalization,
        ratio=R,
        polynomial=P,
        residual=res,
        stable=stable,
        recognized=stable and certifiable,
        polynomial_hi=P_hi,
    )
    if P is None:
        report.notes.append("no polynomial within the degree/height/residual gates: undetermined")
    elif not stable:
        report.notes.append("polynomial changed between p and 1.5p: undetermined")
    elif not certifiable:
        # about H^(d+1) candidates of height <= H; a 2^(-p/2) gate cannot single one out
        report.notes.append(
            f"precision {prec} cannot certify a degree-{len(P) - 1} relation of height <= {max_height}: undetermined"
        )
    return report
