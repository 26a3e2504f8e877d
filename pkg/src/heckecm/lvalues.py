"""Hecke L-values: partial L-functions through Eisenstein-Kronecker series, and a
direct Dirichlet-series oracle in the region of absolute convergence.

For a ray class [b] mod f with b integral and coprime to f, the ideals of the
class are y*b with y in 1 + f b^{-1}, taken up to units = 1 mod f, so

    L_f(chi, s, [b]) = chi(b) N(b)^{-s} E^{b,a}(1, s; f b^{-1}, O_f^x).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import mpmath
from sympy import primerange

from .eklattice import EKParams, ek, lattice_from_ideal
from .errors import NotCoprime, OutsideConvergenceRegion, TrivialModulus
from .hecke import HeckeChar, char_eval, char_eval_float
from .quadarith import QuadIdeal, format_ideal, ideal_inv, ideal_mul, is_coprime, prime_ideals_above, units_mod


@dataclass
class LValueReport:
    character: str
    s: object
    partials: dict = field(default_factory=dict)  # class label -> value
    representatives: dict = field(default_factory=dict)  # class label -> ideal string
    total: object = 0
    method: str = "eseries"
    prec: int = 192
    error_bound: float = 0.0

    def to_json(self, digits: int | None = None) -> dict:
        digits = digits or max(15, int(self.prec * math.log10(2)) - 3)
        return {
            "character": self.character,
            "s": _cstr(self.s, 17),
            "method": self.method,
            "prec": self.prec,
            "partials": {k: _cstr(v, digits) for k, v in self.partials.items()},
            "representatives": dict(self.representatives),
            "total": _cstr(self.total, digits),
            "error_bound": f"{self.error_bound:.3e}",
        }


def _cstr(z, digits: int) -> dict:
    with mpmath.workprec(int(digits * 3.33) + 30):
        z = mpmath.mpc(z)
        return {"re": mpmath.nstr(z.real, digits), "im": mpmath.nstr(z.imag, digits)}


def _class_label(e: tuple[int, ...]) -> str:
    return "(" + ",".join(map(str, e)) + ")"


def partial_L(chi: HeckeChar, b: QuadIdeal, s=0, prec: int = 192, split=1) -> mpmath.mpc:
    """L_f(chi, s, [b]) for an integral ideal b coprime to f."""
    f = chi.modulus
    if f.is_one():
        raise TrivialModulus("partial L-values through E-series need f != (1)")
    if not b.is_integral():
        raise ValueError("class representative must be integral")
    if not is_coprime(b, f):
        raise NotCoprime(f"{b} is not coprime to {f}")
    gamma = len(units_mod(chi.field, f))
    with mpmath.workprec(prec + 20):
        lattice = lattice_from_ideal(ideal_mul(f, ideal_inv(b)))
        E = ek(EKParams(chi.b, chi.a, 1, s, gamma), lattice, prec + 20, split)
        Nb = mpmath.mpf(int(b.norm()))
        out = char_eval(chi, b, prec + 20) * mpmath.power(Nb, -mpmath.mpc(s)) * E
    with mpmath.workprec(prec):
        return +out


def L_value(chi: HeckeChar, s=0, prec: int = 192, method: str = "eseries", nmax: int = 10**6) -> LValueReport:
    """L_f(chi, s) as a sum of partial L-values over the ray classes mod f."""
    rcg = chi.rcg
    report = LValueReport(str(chi), s, method=method, prec=prec)
    if method == "eseries":
        total = mpmath.mpc(0)
        with mpmath.workprec(prec + 20):
            for e in rcg.classes:
                rep = rcg.class_representative(e)
                v = partial_L(chi, rep, s, prec + 20)
                report.partials[_class_label(e)] = v
                report.representatives[_class_label(e)] = format_ideal(rep)
                total += v
        with mpmath.workprec(prec):
            report.total = +total
        report.error_bound = float(2 ** (-(prec - 10)) * max(1, abs(report.total)))
    elif method == "dirichlet":
        by_class, bound = dirichlet_L_by_class(chi, s, nmax)
        report.prec = 53  # double-precision route
        for e in rcg.classes:
            report.partials[_class_label(e)] = mpmath.mpc(by_class.get(e, 0))
            report.representatives[_class_label(e)] = format_ideal(rcg.class_representative(e))
        report.total = mpmath.mpc(sum(by_class.values()))
        report.error_bound = bound
    else:
        raise ValueError(f"unknown method {method!r}")
    return report


# ---------------------------------------------------------------------------
# Dirichlet series oracle


def dirichlet_tail_bound(kappa: float, X: int) -> float:
    """Bound for sum over ideals with N > X of N^-kappa.

    Uses r(n) <= d(n) and sum_{n<=Y} d(n) <= Y (log Y + 1) with partial summation.
    """
    if X < 1:
        X = 1
    lx = math.log(X)
    k1 = kappa - 1
    return kappa * X ** (-k1) * ((lx + 1) / k1 + 1 / k1**2)


def _prime_data(chi: HeckeChar, s, nmax: int, with_class: bool):
    f = chi.modulus
    s = complex(s)
    rcg = chi.rcg if with_class else None
    out = []
    for p in primerange(2, nmax + 1):
        for P in prime_ideals_above(chi.field, p):
            q = int(P.norm())
            if q > nmax:
                continue
            if not is_coprime(P, f):
                continue
            c = char_eval_float(chi, P) * math.e ** (-s * math.log(q))
            e = rcg.exponents(P) if with_class else None
            out.append((q, c, e))
    out.sort(key=lambda x: x[0])
    return out


def _check_region(chi: HeckeChar, s) -> float:
    kappa = complex(s).real - chi.weight / 2
    if kappa <= 1:
        raise OutsideConvergenceRegion(
            f"Re(s) = {complex(s).real} must exceed w/2 + 1 = {chi.weight / 2 + 1}"
        )
    return kappa


def dirichlet_L(chi: HeckeChar, s, nmax: int = 10**6) -> tuple[complex, float]:
    """sum over integral a coprime to f, N(a) <= nmax, of chi(a) N(a)^-s; and a tail bound."""
    kappa = _check_region(chi, s)
    primes = _prime_data(chi, s, nmax, with_class=False)
    re_terms = [1.0]
    im_terms = [0.0]
    stack = [(0, 1, 1 + 0j)]
    while stack:
        start, n, v = stack.pop()
        for i in range(start, len(primes)):
            q, c, _ = primes[i]
            if n * q > nmax:
                break
            m, w = n * q, v * c
            while m <= nmax:
                re_terms.append(w.real)
                im_terms.append(w.imag)
                stack.append((i + 1, m, w))
                m *= q
                w *= c
    value = complex(math.fsum(re_terms), math.fsum(im_terms))
    return value, dirichlet_tail_bound(kappa, nmax)


def dirichlet_L_by_class(chi: HeckeChar, s, nmax: int = 10**6) -> tuple[dict, float]:
    """Per ray class partial Dirichlet sums, keyed by exponent vector; and a tail bound."""
    kappa = _check_region(chi, s)
    rcg = chi.rcg
    primes = _prime_data(chi, s, nmax, with_class=True)
    one = rcg.classes[0]
    sums: dict = {e: ([], []) for e in rcg.classes}
    sums[one][0].append(1.0)
    stack = [(0, 1, 1 + 0j, one)]
    while stack:
        start, n, v, cls = stack.pop()
        for i in range(start, len(primes)):
            q, c, e = primes[i]
            if n * q > nmax:
                break
            m, w, k = n * q, v * c, rcg.class_mul(cls, e)
            while m <= nmax:
                sums[k][0].append(w.real)
                sums[k][1].append(w.imag)
                stack.append((i + 1, m, w, k))
                m *= q
                w *= c
                k = rcg.class_mul(k, e)
    out = {e: complex(math.fsum(r), math.fsum(i)) for e, (r, i) in sums.items()}
    return out, dirichlet_tail_bound(kappa, nmax)
