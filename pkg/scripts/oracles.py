"""Independent oracles for golden values.  Nothing here calls the E-series or
period code of the package.

* Weierstrass p via Jacobi theta functions, hence sum_l (z + l)^-k for even
  k >= 4 through p^(k-2)(z) = (k-1)! sum_l (z - l)^-k.
* Real periods of y^2 = 4x^3 - 4x and y^2 = 4x^3 - 4 by quadrature.
* Brute-force reflex and epsilon signs on explicit permutation groups.
"""
from __future__ import annotations

from itertools import permutations

import mpmath


def wp(z, w1, w2):
    """Weierstrass p for the lattice w1 Z + w2 Z, Im(w2/w1) > 0."""
    tau = w2 / w1
    q = mpmath.expjpi(tau)
    v = mpmath.pi * z / w1
    t2, t3 = mpmath.jtheta(2, 0, q), mpmath.jtheta(3, 0, q)
    core = mpmath.pi * t2 * t3 * mpmath.jtheta(4, v, q) / (w1 * mpmath.jtheta(1, v, q))
    return core**2 - mpmath.pi**2 / (3 * w1**2) * (t2**4 + t3**4)


def invariants(w1, w2):
    """(g2, g3) from the half-period values e_i = p(w_i / 2)."""
    e1, e2, e3 = wp(w1 / 2, w1, w2), wp(w2 / 2, w1, w2), wp((w1 + w2) / 2, w1, w2)
    return -4 * (e1 * e2 + e1 * e3 + e2 * e3), 4 * e1 * e2 * e3


def _poly_deriv(c):
    return [k * c[k] for k in range(1, len(c))] or [0]


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_add(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def even_derivative_poly(order: int, g2, g3):
    """Coefficients (in powers of p) of the derivative p^(order), order even.

    Uses d^2/dz^2 f(p) = f''(p) p'^2 + f'(p) p'' with p'^2 = 4p^3 - g2 p - g3
    and p'' = 6p^2 - g2/2.
    """
    pp2 = [-g3, -g2, 0, 4]
    ppp = [-g2 / 2, 0, 6]
    f = [0, 1]
    for _ in range(order // 2):
        f = _poly_add(_poly_mul(_poly_deriv(_poly_deriv(f)), pp2), _poly_mul(_poly_deriv(f), ppp))
    return f


def lattice_power_sum(z, w1, w2, k: int, prec: int = 256):
    """sum over l in w1 Z + w2 Z of (z + l)^-k for even k >= 4, via p^(k-2)."""
    if k % 2 or k < 4:
        raise ValueError("even k >= 4 only")
    with mpmath.workprec(prec + 64):
        g2, g3 = invariants(w1, w2)
        P = wp(z, w1, w2)
        d = sum(c * P**i for i, c in enumerate(even_derivative_poly(k - 2, g2, g3)))
        val = d / mpmath.factorial(k - 1)
    with mpmath.workprec(prec):
        return +val


def lemniscate_period(prec: int = 256):
    """Real period of y^2 = 4x^3 - 4x: 2 int_1^oo dx / sqrt(4x^3 - 4x), with x = 1 + t^2."""
    with mpmath.workprec(prec + 20):
        v = 2 * mpmath.quad(lambda t: 1 / mpmath.sqrt((1 + t**2) * (2 + t**2)), [0, 1, mpmath.inf])
    with mpmath.workprec(prec):
        return +v


def equianharmonic_period(prec: int = 256):
    """Real period of y^2 = 4x^3 - 4: 2 int_1^oo dx / sqrt(4x^3 - 4), with x = 1 + t^2."""
    with mpmath.workprec(prec + 20):
        v = 2 * mpmath.quad(lambda t: 1 / mpmath.sqrt((1 + t**2) ** 2 + (1 + t**2) + 1), [0, 1, mpmath.inf])
    with mpmath.workprec(prec):
        return +v


def recognize_rational(x, prec: int = 256, maxcoeff: int = 10**8):
    """[q, -p] with q x = p, leading coefficient positive, or None."""
    with mpmath.workprec(prec):
        rel = mpmath.pslq([mpmath.mpc(x).real, 1], maxcoeff=maxcoeff, maxsteps=10**5)
    if rel is None:
        return None
    q, p = int(rel[0]), int(rel[1])
    if q < 0:
        q, p = -q, -p
    return [q, p]


# ---------------------------------------------------------------------------
# Galois brute force on Z/4 = Gal(Q(zeta5)/Q): s^j acts as zeta -> zeta^(2^j)


def c4_epsilon(phi: set[int], eta: int, tau: int) -> int:
    """Sign of the permutation of conjugation pairs {j, j+2} induced by
    eta Phi -> tau eta Phi, elements written as exponents j of s."""
    pairs = [(0, 2), (1, 3)]
    eta_phi = {(eta + j) % 4 for j in phi}
    image = []
    for p in pairs:
        (x,) = [j for j in p if j in eta_phi]
        y = (tau + x) % 4
        image.append(next(i for i, q in enumerate(pairs) if y in q))
    return 1 if image == sorted(image) else -1


def c4_reflex(phi: set[int]) -> tuple[frozenset[int], frozenset[int]]:
    """(stabilizer of Phi, inverse set of Phi) in Z/4; here the stabilizer is trivial."""
    stab = frozenset(g for g in range(4) if {(g + j) % 4 for j in phi} == set(phi))
    return stab, frozenset((-j) % 4 for j in phi)


def s3_reflex_of_lifted_type() -> frozenset[tuple[int, ...]]:
    """Lift {id} from Q(sqrt-3) (fixed by A3) to the S3 closure, then invert."""
    even = [p for p in permutations(range(3)) if _sign(p) == 1]
    return frozenset(tuple(p.index(i) for i in range(3)) for p in even)


def _sign(p) -> int:
    s = 1
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                s = -s
    return s
