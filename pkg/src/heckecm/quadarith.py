"""Exact arithmetic in imaginary quadratic fields Q(sqrt-d).

Elements are x + y*w with w = (D + sqrt D)/2, D the discriminant, so the
maximal order is Z[w].  Fractional ideals are kept in the unique normal form
scale * (aZ + (b + w)Z) with 0 <= b < a and a | N(b + w).
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product
from typing import Iterable, Iterator, Sequence

from sympy import factorint, primerange
from sympy.ntheory import sqrt_mod

from .errors import ModulusTooLarge, NotCoprime, SpecParseError, ZeroIdeal

MAX_UNITS_MOD = 10**6


def _squarefree(n: int) -> bool:
    return all(e == 1 for e in factorint(n).values())


@dataclass(frozen=True)
class ImagQuadField:
    d: int

    def __post_init__(self):
        if self.d <= 0 or not _squarefree(self.d):
            raise ValueError(f"d = {self.d} must be a positive squarefree integer")

    @property
    def D(self) -> int:
        return -self.d if self.d % 4 == 3 else -4 * self.d

    @property
    def w_norm(self) -> int:
        D = self.D
        return (D * D - D) // 4

    @property
    def name(self) -> str:
        return "Q(i)" if self.d == 1 else f"Q(sqrt-{self.d})"

    def __str__(self) -> str:
        return self.name

    def elem(self, x, y=0) -> QuadElem:
        return QuadElem(self, Fraction(x), Fraction(y))

    def from_sqrt(self, x, y) -> QuadElem:
        """x + y*sqrt(-d)."""
        x, y = Fraction(x), Fraction(y)
        if self.D == -self.d:
            return QuadElem(self, x + y * self.d, 2 * y)
        return QuadElem(self, x + 2 * self.d * y, y)

    @cached_property
    def units(self) -> tuple[QuadElem, ...]:
        found = []
        for x, y in product(range(-3, 4), repeat=2):
            if _norm_int(self, x, y) == 1:
                found.append(QuadElem(self, Fraction(x), Fraction(y)))
        found.sort(key=lambda u: (_unit_angle(u), u.x, u.y))
        return tuple(found)

    def class_number(self) -> int:
        """Count reduced primitive forms of discriminant D."""
        D = self.D
        h = 0
        a = 1
        while 3 * a * a <= -D:
            for b in range(-a + 1, a + 1):
                if (b * b - D) % (4 * a):
                    continue
                c = (b * b - D) // (4 * a)
                if c < a or math.gcd(math.gcd(a, abs(b)), c) != 1:
                    continue
                if b < 0 and (a == c):
                    continue
                h += 1
            a += 1
        return h

    def embed(self, z: QuadElem, ctx=None):
        """Image under the fixed embedding sqrt(-d) -> +i sqrt(d), as an mpmath mpc."""
        import mpmath

        ctx = ctx or mpmath.mp
        w = (ctx.mpf(self.D) + ctx.mpc(0, ctx.sqrt(-self.D))) / 2
        return ctx.mpf(z.x.numerator) / z.x.denominator + ctx.mpf(z.y.numerator) / z.y.denominator * w

    def embed_complex(self, z: QuadElem) -> complex:
        w = complex(self.D / 2, math.sqrt(-self.D) / 2)
        return float(z.x) + float(z.y) * w


def _unit_angle(u: QuadElem) -> float:
    z = u.field.embed_complex(u)
    a = math.atan2(z.imag, z.real)
    return a if a >= -1e-12 else a + 2 * math.pi


def _norm_int(F: ImagQuadField, x, y):
    return x * x + x * y * F.D + y * y * F.w_norm


@dataclass(frozen=True)
class QuadElem:
    field: ImagQuadField
    x: Fraction
    y: Fraction

    def __add__(self, o):
        o = self._coerce(o)
        return QuadElem(self.field, self.x + o.x, self.y + o.y)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(self.field, -self.x, -self.y)

    def __sub__(self, o):
        return self + (-self._coerce(o))

    def __rsub__(self, o):
        return self._coerce(o) - self

    def __mul__(self, o):
        o = self._coerce(o)
        F = self.field
        x = self.x * o.x - self.y * o.y * F.w_norm
        y = self.x * o.y + self.y * o.x + F.D * self.y * o.y
        return QuadElem(F, x, y)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._coerce(o)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero element")
        return self * o.conj() * QuadElem(self.field, 1 / n, Fraction(0))

    def __pow__(self, k: int):
        if k < 0:
            return QuadElem(self.field, Fraction(1), Fraction(0)) / self ** (-k)
        out = QuadElem(self.field, Fraction(1), Fraction(0))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def _coerce(self, o) -> QuadElem:
        if isinstance(o, QuadElem):
            if o.field != self.field:
                raise ValueError("elements of different fields")
            return o
        return QuadElem(self.field, Fraction(o), Fraction(0))

    def conj(self) -> QuadElem:
        return QuadElem(self.field, self.x + self.y * self.field.D, -self.y)

    def norm(self) -> Fraction:
        return _norm_int(self.field, self.x, self.y)

    def trace(self) -> Fraction:
        return 2 * self.x + self.y * self.field.D

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def is_integral(self) -> bool:
        return self.x.denominator == 1 and self.y.denominator == 1

    def sqrt_coords(self) -> tuple[Fraction, Fraction]:
        """(u, v) with self = u + v*sqrt(-d)."""
        F = self.field
        if F.D == -F.d:
            v = self.y / 2
            return self.x - v * F.d, v
        return self.x - 2 * F.d * self.y, self.y

    def __str__(self) -> str:
        u, v = self.sqrt_coords()
        root = "i" if self.field.d == 1 else f"sqrt-{self.field.d}"
        if v == 0:
            return str(u)
        vs = "" if v == 1 else "-" if v == -1 else f"{v}*"
        if u == 0:
            return f"{vs}{root}"
        sign = "+" if v > 0 else "-"
        av = abs(v)
        vs = "" if av == 1 else f"{av}*"
        return f"{u}{sign}{vs}{root}"


# ---------------------------------------------------------------------------
# ideals


@dataclass(frozen=True)
class QuadIdeal:
    field: ImagQuadField
    a: int
    b: int
    scale: Fraction

    def basis(self) -> tuple[QuadElem, QuadElem]:
        F = self.field
        return (
            QuadElem(F, self.scale * self.a, Fraction(0)),
            QuadElem(F, self.scale * self.b, self.scale),
        )

    def norm(self) -> Fraction:
        return self.scale * self.scale * self.a

    def is_integral(self) -> bool:
        return self.scale.denominator == 1

    def is_one(self) -> bool:
        return self.a == 1 and self.scale == 1

    def contains(self, z: QuadElem) -> bool:
        y = z.y / self.scale
        x = z.x / self.scale
        if y.denominator != 1 or x.denominator != 1:
            return False
        return (x - y * self.b) % self.a == 0

    def __mul__(self, other: QuadIdeal) -> QuadIdeal:
        return ideal_mul(self, other)

    def __pow__(self, k: int) -> QuadIdeal:
        return ideal_pow(self, k)

    def normal_form(self) -> str:
        s = "" if self.scale == 1 else f"{self.scale}*"
        return f"{s}[{self.a},{self.b}+w]"

    def __str__(self) -> str:
        return format_ideal(self)


def _hnf(vectors: Iterable[tuple[int, int]]) -> tuple[int, int, int]:
    """HNF (A, B, C) of the Z-span of integer vectors: span = (A,0)Z + (B,C)Z."""
    vecs = [(x, y) for x, y in vectors if x or y]
    # row-reduce on the second coordinate
    pivot = None
    rest = []
    for v in vecs:
        if pivot is None:
            if v[1]:
                pivot = v
            else:
                rest.append(v)
            continue
        if v[1] == 0:
            rest.append(v)
            continue
        # extended gcd combination of pivot and v on the y-coordinate
        g, s, t = _xgcd(pivot[1], v[1])
        new_pivot = (s * pivot[0] + t * v[0], g)
        ka, kb = pivot[1] // g, v[1] // g
        residual = (kb * pivot[0] - ka * v[0], 0)
        pivot = new_pivot
        rest.append(residual)
    if pivot is None:
        raise ZeroIdeal("module has rank < 2")
    A = 0
    for x, _ in rest:
        A = math.gcd(A, x)
    if A == 0:
        raise ZeroIdeal("module has rank < 2")
    C = pivot[1]
    B = pivot[0]
    if C < 0:
        C, B = -C, -B
    return A, B % A, C


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def ideal_from_gens(elems: Sequence[QuadElem]) -> QuadIdeal:
    """Smallest O-ideal containing the given elements."""
    elems = [e for e in elems if not e.is_zero()]
    if not elems:
        raise ZeroIdeal("all generators are zero")
    F = elems[0].field
    w = QuadElem(F, Fraction(0), Fraction(1))
    gens = []
    for e in elems:
        gens.append(e)
        gens.append(e * w)
    den = 1
    for g in gens:
        den = den * g.x.denominator // math.gcd(den, g.x.denominator)
        den = den * g.y.denominator // math.gcd(den, g.y.denominator)
    vecs = [(int(g.x * den), int(g.y * den)) for g in gens]
    A, B, C = _hnf(vecs)
    if A % C or B % C:
        raise AssertionError("module generated is not an ideal")
    a, b = A // C, (B // C) % (A // C)
    if _norm_int(F, b, 1) % a:
        raise AssertionError("normal form violates a | N(b + w)")
    return QuadIdeal(F, a, b, Fraction(C, den))


def principal_ideal(z: QuadElem) -> QuadIdeal:
    return ideal_from_gens([z])


def unit_ideal(F: ImagQuadField) -> QuadIdeal:
    return QuadIdeal(F, 1, 0, Fraction(1))


def _emul(F: ImagQuadField, p: tuple[int, int], q: tuple[int, int]) -> tuple[int, int]:
    return (
        p[0] * q[0] - p[1] * q[1] * F.w_norm,
        p[0] * q[1] + p[1] * q[0] + F.D * p[1] * q[1],
    )


def _prim_from_vectors(vecs) -> tuple[int, int, int]:
    """Integral ideal spanned (over Z) by integer vectors, as (a, b, content)."""
    A, B, C = _hnf(vecs)
    a = A // C
    return a, (B // C) % a, C


def _prim_mul(F: ImagQuadField, a1, b1, a2, b2) -> tuple[int, int, int]:
    """(a1 Z + (b1+w) Z)(a2 Z + (b2+w) Z) as (a, b, content)."""
    u = ((a1, 0), (b1, 1))
    v = ((a2, 0), (b2, 1))
    return _prim_from_vectors([_emul(F, p, q) for p in u for q in v])


def _prim_conj(F: ImagQuadField, a, b) -> tuple[int, int]:
    a2, b2, c = _prim_from_vectors([(a, 0), (b + F.D, -1)])
    assert c == 1
    return a2, b2


def ideal_mul(I: QuadIdeal, J: QuadIdeal) -> QuadIdeal:
    a, b, c = _prim_mul(I.field, I.a, I.b, J.a, J.b)
    return QuadIdeal(I.field, a, b, I.scale * J.scale * c)


def ideal_sum(I: QuadIdeal, J: QuadIdeal) -> QuadIdeal:
    return ideal_from_gens(list(I.basis()) + list(J.basis()))


def ideal_norm(I: QuadIdeal) -> Fraction:
    return I.norm()


def ideal_conj(I: QuadIdeal) -> QuadIdeal:
    a, b = _prim_conj(I.field, I.a, I.b)
    return QuadIdeal(I.field, a, b, I.scale)


def ideal_inv(I: QuadIdeal) -> QuadIdeal:
    c = ideal_conj(I)
    return QuadIdeal(c.field, c.a, c.b, c.scale / I.norm())


def ideal_pow(I: QuadIdeal, k: int) -> QuadIdeal:
    if k < 0:
        return ideal_pow(ideal_inv(I), -k)
    out = unit_ideal(I.field)
    base = I
    while k:
        if k & 1:
            out = ideal_mul(out, base)
        base = ideal_mul(base, base)
        k >>= 1
    return out


def ideal_div(I: QuadIdeal, J: QuadIdeal) -> QuadIdeal:
    return ideal_mul(I, ideal_inv(J))


def is_coprime(I: QuadIdeal, J: QuadIdeal) -> bool:
    """For integral ideals: I + J = (1)."""
    nI, nJ = I.norm(), J.norm()
    if nI.denominator == 1 and nJ.denominator == 1 and math.gcd(int(nI), int(nJ)) == 1:
        return True
    return ideal_sum(I, J).is_one()


def _gauss_reduce(F: ImagQuadField, u: tuple[int, int], v: tuple[int, int]):
    """Lagrange-Gauss reduction of a rank-2 lattice in (1, w) coordinates under the norm form."""

    def n(p):
        return _norm_int(F, p[0], p[1])

    def b2(p, q):  # twice the bilinear form
        return n((p[0] + q[0], p[1] + q[1])) - n(p) - n(q)

    if n(u) > n(v):
        u, v = v, u
    while True:
        nu = n(u)
        # mu = round(B(u, v) / B(u, u)) with B = b2 / 2
        num = b2(u, v)
        mu = (num + nu) // (2 * nu)
        v = (v[0] - mu * u[0], v[1] - mu * u[1])
        if n(v) >= nu:
            return u, v
        u, v = v, u


def reduced_basis(I: QuadIdeal) -> tuple[QuadElem, QuadElem]:
    F = I.field
    u, v = _gauss_reduce(F, (I.a, 0), (I.b, 1))
    return tuple(QuadElem(F, I.scale * p[0], I.scale * p[1]) for p in (u, v))


def is_principal(I: QuadIdeal) -> QuadElem | None:
    """A generator of I, or None.  A generator is a shortest nonzero vector."""
    F = I.field
    u, _ = _gauss_reduce(F, (I.a, 0), (I.b, 1))
    if _norm_int(F, u[0], u[1]) != I.a:
        return None
    return QuadElem(F, I.scale * u[0], I.scale * u[1])


def short_vectors(I: QuadIdeal, bound) -> list[QuadElem]:
    """All nonzero elements of I with norm <= bound (exhaustive in the reduced basis)."""
    F = I.field
    p, q = _gauss_reduce(F, (I.a, 0), (I.b, 1))
    # in a reduced basis |x p + y q|^2 >= (3/4) max(x^2 N(p), y^2 N(q)) roughly; use a safe box
    s2 = I.scale * I.scale
    np_, nq = _norm_int(F, *p) * s2, _norm_int(F, *q) * s2
    xmax = math.isqrt(int(4 * Fraction(bound) / (3 * np_)) + 1) + 1
    ymax = math.isqrt(int(4 * Fraction(bound) / (3 * nq)) + 1) + 1
    out = []
    for x in range(-xmax, xmax + 1):
        for y in range(-ymax, ymax + 1):
            if x == 0 and y == 0:
                continue
            z = QuadElem(F, I.scale * (x * p[0] + y * q[0]), I.scale * (x * p[1] + y * q[1]))
            if z.norm() <= bound:
                out.append(z)
    out.sort(key=lambda z: (z.norm(), z.x, z.y))
    return out


# ---------------------------------------------------------------------------
# primes and enumeration


def prime_ideals_above(F: ImagQuadField, p: int) -> list[QuadIdeal]:
    D = F.D
    if p == 2 or D % p == 0:
        roots = [b for b in range(p) if _norm_int(F, b, 1) % p == 0]
    else:
        r = sqrt_mod(D % p, p)
        if r is None:
            roots = []
        else:
            inv2 = (p + 1) // 2
            roots = sorted({((-D + r) * inv2) % p, ((-D - r) * inv2) % p})
    if not roots:
        return [QuadIdeal(F, 1, 0, Fraction(p))]
    return [QuadIdeal(F, p, b, Fraction(1)) for b in roots]


def factor_ideal(I: QuadIdeal) -> list[tuple[QuadIdeal, int]]:
    """Prime factorisation of a fractional ideal as (prime, exponent) pairs, sorted."""
    num = I.norm()
    primes = set(factorint(num.numerator)) | set(factorint(num.denominator))
    out = []
    for p in sorted(primes):
        for P in prime_ideals_above(I.field, p):
            e = ideal_valuation(I, P)
            if e:
                out.append((P, e))
    return out


def ideal_valuation(I: QuadIdeal, P: QuadIdeal) -> int:
    Pinv = ideal_inv(P)
    k = 0
    J = I
    # push up until integral, then down while still integral
    while not J.is_integral():
        J = ideal_mul(J, P)
        k -= 1
    while True:
        nxt = ideal_mul(J, Pinv)
        if not nxt.is_integral():
            return k
        J = nxt
        k += 1


def _prime_list(F: ImagQuadField, X: int) -> list[QuadIdeal]:
    out = []
    for p in primerange(2, X + 1):
        for P in prime_ideals_above(F, p):
            if P.norm() <= X:
                out.append(P)
    return out


def ideals_up_to_norm(F: ImagQuadField, X: int, coprime_to: QuadIdeal | None = None) -> list[QuadIdeal]:
    """Every integral ideal of norm <= X coprime to the modulus, each once, sorted by norm."""
    X = int(X)
    if X < 1:
        return []
    bad = set()
    if coprime_to is not None:
        bad = {P for P, _ in factor_ideal(coprime_to)}
    primes = sorted((P for P in _prime_list(F, X) if P not in bad), key=lambda P: (P.norm(), P.b))
    out = [unit_ideal(F)]

    def rec(start: int, current: QuadIdeal, n: int):
        for i in range(start, len(primes)):
            P = primes[i]
            q = int(P.norm())
            if n * q > X:
                break
            J = current
            m = n
            while m * q <= X:
                J = ideal_mul(J, P)
                m *= q
                out.append(J)
                rec(i + 1, J, m)

    rec(0, unit_ideal(F), 1)
    out.sort(key=lambda J: (J.norm(), J.a, J.b))
    return out


# ---------------------------------------------------------------------------
# residues modulo an integral ideal


class Residues:
    """Arithmetic in O/f for an integral ideal f = s*(aZ + (b+w)Z)."""

    def __init__(self, f: QuadIdeal):
        if not f.is_integral():
            raise ValueError("modulus must be integral")
        self.f = f
        self.F = f.field
        self.s = int(f.scale)
        self.sa = self.s * f.a
        self.sb = self.s * f.b
        self.primes = [P for P, _ in factor_ideal(f)]

    def reduce(self, x: int, y: int) -> tuple[int, int]:
        q, yr = divmod(y, self.s)
        return (x - q * self.sb) % self.sa, yr

    def of(self, z: QuadElem) -> tuple[int, int]:
        if not z.is_integral():
            raise ValueError("residue of a non-integral element")
        return self.reduce(int(z.x), int(z.y))

    def mul(self, r1, r2) -> tuple[int, int]:
        F = self.F
        x = r1[0] * r2[0] - r1[1] * r2[1] * F.w_norm
        y = r1[0] * r2[1] + r1[1] * r2[0] + F.D * r1[1] * r2[1]
        return self.reduce(x, y)

    def int_inverse(self, n: int) -> int:
        return pow(n, -1, self.sa)

    def all(self) -> Iterator[tuple[int, int]]:
        for y in range(self.s):
            for x in range(self.sa):
                yield (x, y)

    def is_unit(self, r) -> bool:
        z = QuadElem(self.F, Fraction(r[0]), Fraction(r[1]))
        return not any(P.contains(z) for P in self.primes)

    def unit_group_order(self) -> int:
        n = 1
        for P, e in factor_ideal(self.f):
            q = int(P.norm())
            n *= (q - 1) * q ** (e - 1)
        return n

    def congruent(self, z1: QuadElem, z2: QuadElem) -> bool:
        return self.f.contains(z1 - z2)


@dataclass(frozen=True)
class UnitsMod:
    modulus: QuadIdeal
    units: tuple[QuadElem, ...]

    def __len__(self) -> int:
        return len(self.units)


def units_mod(F: ImagQuadField, f: QuadIdeal) -> UnitsMod:
    one = F.elem(1)
    return UnitsMod(f, tuple(u for u in F.units if f.contains(u - one)))


# ---------------------------------------------------------------------------
# ray class groups


class RayClassGroup:
    """I^f / P^f presented polycyclically: every class is prod g_i^e_i, 0 <= e_i < n_i.

    Generators are integral ideals of norm prime to N(f).  ``relations[i]`` is
    (exponents of smaller generators, alpha) with
    g_i^{n_i} = prod_{j<i} g_j^{e_j} * (alpha), alpha = 1 mod* f.
    """

    def __init__(self, F: ImagQuadField, f: QuadIdeal):
        if not f.is_integral():
            raise ValueError("modulus must be an integral ideal")
        self.field = F
        self.modulus = f
        self.res = Residues(f)
        self.Nf = int(f.norm())
        nunits = self.res.unit_group_order()
        if nunits > MAX_UNITS_MOD:
            raise ModulusTooLarge(f"|(O/f)^x| = {nunits} exceeds {MAX_UNITS_MOD}")
        self.units_mod_f = units_mod(F, f)
        self.unit_residues = sorted({self.res.of(u) for u in F.units})
        self.h = F.class_number()
        self.class_reps = self._class_group_reps()
        self.order = self.h * nunits // len(self.unit_residues)
        self._build()

    # -- helpers --------------------------------------------------------
    def _norm_coprime_ideals(self) -> Iterator[QuadIdeal]:
        X = 16
        seen = set()
        while True:
            for J in ideals_up_to_norm(self.field, X):
                if J in seen:
                    continue
                seen.add(J)
                if math.gcd(int(J.norm()), self.Nf) == 1:
                    yield J
            X *= 4

    def _class_group_reps(self) -> list[QuadIdeal]:
        reps: list[QuadIdeal] = []
        for J in self._norm_coprime_ideals():
            if all(is_principal(ideal_mul(J, ideal_conj(R))) is None for R in reps):
                reps.append(J)
            if len(reps) == self.h:
                return reps
        raise AssertionError("unreachable")

    def _canon(self, r: tuple[int, int]) -> tuple[int, int]:
        return min(self.res.mul(r, u) for u in self.unit_residues)

    def _split(self, I: QuadIdeal) -> tuple[int, QuadElem]:
        """(j, beta) with I * conj(R_j) = (beta)."""
        for j, R in enumerate(self.class_reps):
            beta = is_principal(ideal_mul(I, ideal_conj(R)))
            if beta is not None:
                return j, beta
        raise AssertionError("class group representatives are incomplete")

    def class_key(self, I: QuadIdeal) -> tuple[int, tuple[int, int]]:
        if not I.is_integral():
            raise ValueError("class_key expects an integral ideal")
        if not is_coprime(I, self.modulus):
            raise NotCoprime(f"{I} is not coprime to {self.modulus}")
        j, beta = self._split(I)
        nr = int(self.class_reps[j].norm())
        r = self.res.mul(self.res.of(beta), (self.res.int_inverse(nr), 0))
        return j, self._canon(r)

    def _build(self):
        # collect one representative per class, preferring small norm
        reps: dict = {}
        for J in self._norm_coprime_ideals():
            k = self.class_key(J)
            reps.setdefault(k, J)
            if len(reps) == self.order:
                break
        self.reps = reps

        def key_mul(k1, k2):
            return self.class_key(ideal_mul(reps[k1], reps[k2]))

        identity = self.class_key(unit_ideal(self.field))
        keys = sorted(reps, key=lambda k: (reps[k].norm(), reps[k].a, reps[k].b))

        def power_key(k, n):
            out = identity
            for _ in range(n):
                out = key_mul(out, k)
            return out

        gens: list = []
        orders: list[int] = []
        H = {identity}

        def span(hset, g, n):
            new = set()
            for h in hset:
                x = h
                for _ in range(n):
                    new.add(x)
                    x = key_mul(x, g)
            return new

        while len(H) < self.order:
            best = None
            for k in keys:
                if k in H:
                    continue
                n, x = 1, k
                while x not in H:
                    x = key_mul(x, k)
                    n += 1
                if best is None or n > best[1]:
                    best = (k, n)
            g, n = best
            H = span(H, g, n)
            gens.append(g)
            orders.append(n)
        self.gen_keys = gens
        self.orders = tuple(orders)
        self.generators = tuple(reps[g] for g in gens)
        # discrete-log table over all exponent vectors
        self.dlog: dict = {}
        self._ideal_of: dict = {}
        self._conj_ideal_of: dict = {}
        self._norm_of: dict = {}
        self._unit_pairs = [(int(u.x), int(u.y)) for u in self.field.units]
        for e in product(*[range(n) for n in self.orders]):
            J = unit_ideal(self.field)
            for g, k in zip(self.generators, e):
                J = ideal_mul(J, ideal_pow(g, k))
            self.dlog[self.class_key(J)] = e
            self._ideal_of[e] = J
            self._conj_ideal_of[e] = ideal_conj(J)
            self._norm_of[e] = int(J.norm())
        if len(self.dlog) != self.order:
            raise AssertionError("discrete log table does not cover the group")
        self.relations = []
        for i, (g, n) in enumerate(zip(self.generators, self.orders)):
            e, alpha = self.principalize(ideal_pow(g, n))
            if any(e[i:]):
                raise AssertionError("polycyclic relation involves a later generator")
            self.relations.append((e[:i], alpha))

    # -- public --------------------------------------------------------
    def exponents(self, I: QuadIdeal) -> tuple[int, ...]:
        return self.dlog[self.class_key(I)]

    def principalize(self, I: QuadIdeal) -> tuple[tuple[int, ...], QuadElem]:
        """I = prod g_i^e_i * (alpha) with alpha = 1 mod* f (exact)."""
        e, (x, y), den = self.principalize_int(I)
        return e, QuadElem(self.field, Fraction(x, den), Fraction(y, den))

    def principalize_int(self, I: QuadIdeal) -> tuple[tuple[int, ...], tuple[int, int], int]:
        """As principalize, with alpha = (x + y w)/den returned as integers."""
        if not I.is_integral():
            raise ValueError("principalize expects an integral ideal")
        if not is_coprime(I, self.modulus):
            raise NotCoprime(f"{I} is not coprime to {self.modulus}")
        F = self.field
        s = int(I.scale)
        e = self.exponents(I)
        Pc = self._conj_ideal_of[e]
        nP = self._norm_of[e]
        a, b, c = _prim_mul(F, I.a, I.b, Pc.a, Pc.b)
        u, _ = _gauss_reduce(F, (a, 0), (b, 1))
        if _norm_int(F, *u) != a:
            raise AssertionError("ray class bookkeeping failed")
        k = s * c * int(Pc.scale)
        beta = (k * u[0], k * u[1])
        target = self.res.reduce(nP, 0)
        for unit in self._unit_pairs:
            ub = _emul(F, unit, beta)
            if self.res.reduce(*ub) == target:
                return e, ub, nP
        raise AssertionError("no unit brings the generator to 1 mod f")

    @property
    def classes(self) -> list[tuple[int, ...]]:
        """Exponent vectors of all classes, in lexicographic order."""
        return sorted(self._ideal_of)

    def class_representative(self, e: tuple[int, ...]) -> QuadIdeal:
        """prod g_i^e_i: integral, of norm prime to N(f)."""
        return self._ideal_of[e]

    def class_mul(self, e1: tuple[int, ...], e2: tuple[int, ...]) -> tuple[int, ...]:
        table = self.__dict__.setdefault("_mul_table", {})
        key = (e1, e2)
        if key not in table:
            table[key] = self.exponents(ideal_mul(self._ideal_of[e1], self._ideal_of[e2]))
        return table[key]

    def is_one_mod(self, alpha: QuadElem) -> bool:
        """alpha = 1 mod* f for an f-unit alpha."""
        den = math.lcm(alpha.x.denominator, alpha.y.denominator)
        if math.gcd(den, self.Nf) != 1:
            raise ValueError("denominator not prime to the modulus")
        num = alpha * den
        return self.res.congruent(num, num.field.elem(den))

    def __len__(self) -> int:
        return self.order


def ray_class_group(F: ImagQuadField, f: QuadIdeal) -> RayClassGroup:
    return _ray_class_group_cached(F, f)


@lru_cache(maxsize=32)
def _ray_class_group_cached(F: ImagQuadField, f: QuadIdeal) -> RayClassGroup:
    return RayClassGroup(F, f)


def principalize(rcg: RayClassGroup, I: QuadIdeal) -> tuple[tuple[int, ...], QuadElem]:
    return rcg.principalize(I)


# ---------------------------------------------------------------------------
# parsing / printing

_FIELD_RE = re.compile(r"^Q\((?:i|sqrt-(\d+))\)$")


def parse_field(text: str) -> ImagQuadField:
    t = text.strip().replace(" ", "")
    m = _FIELD_RE.match(t)
    if not m:
        raise SpecParseError(f"cannot parse field {text!r}; expected Q(i) or Q(sqrt-d)")
    return ImagQuadField(1 if m.group(1) is None else int(m.group(1)))


_TERM_RE = re.compile(r"([+-]?)(\d*)(\*?)(i|sqrt-\d+|w)?")


def parse_elem(F: ImagQuadField, text: str) -> QuadElem:
    """Parse sums like '2+i', '1+sqrt-5', '-2+2i', 'sqrt-3', '3', '1+w'."""
    t = text.strip().replace(" ", "")
    if not t:
        raise SpecParseError("empty element")
    root = "i" if F.d == 1 else f"sqrt-{F.d}"
    pos = 0
    total = F.elem(0)
    while pos < len(t):
        m = _TERM_RE.match(t, pos)
        if not m or m.end() == pos:
            raise SpecParseError(f"cannot parse element {text!r}", column=pos + 1)
        sign, digits, _, sym = m.groups()
        if not digits and not sym:
            raise SpecParseError(f"cannot parse element {text!r}", column=pos + 1)
        coeff = int(digits) if digits else 1
        if sign == "-":
            coeff = -coeff
        if sym is None:
            total = total + coeff
        elif sym == "w":
            total = total + F.elem(0, coeff)
        elif sym == root:
            total = total + F.from_sqrt(0, coeff)
        else:
            raise SpecParseError(f"{sym} does not belong to {F.name}", column=pos + 1)
        pos = m.end()
    return total


_IDEAL_FACTOR_RE = re.compile(r"\(([^()]*)\)(?:\^(-?\d+))?")


def parse_ideal(F: ImagQuadField, text: str) -> QuadIdeal:
    """Ideal expressions: products/powers of parenthesised generators, or 'scale*[a, b+w]'."""
    t = text.strip().replace(" ", "")
    if "[" in t:
        m = re.match(r"^(?:([0-9/]+)\*)?\[(\d+),(\d+)\+w\]$", t)
        if not m:
            raise SpecParseError(f"cannot parse normal-form ideal {text!r}")
        scale = Fraction(m.group(1)) if m.group(1) else Fraction(1)
        a, b = int(m.group(2)), int(m.group(3))
        if a <= 0 or not 0 <= b < a or _norm_int(F, b, 1) % a:
            raise SpecParseError(f"{text!r} is not a valid normal form")
        return QuadIdeal(F, a, b, scale)
    pos = 0
    out = unit_ideal(F)
    t = t.replace("*", "")
    while pos < len(t):
        m = _IDEAL_FACTOR_RE.match(t, pos)
        if not m:
            raise SpecParseError(f"cannot parse ideal {text!r}", column=pos + 1)
        gens = [parse_elem(F, g) for g in m.group(1).split(",")]
        J = ideal_from_gens(gens)
        k = int(m.group(2)) if m.group(2) else 1
        out = ideal_mul(out, ideal_pow(J, k))
        pos = m.end()
    return out


def _elem_text(z: QuadElem) -> str:
    """'2+2i', '-1+sqrt-5', or '1+w' when the sqrt coordinates are not integral."""
    u, v = z.sqrt_coords()
    if u.denominator == 1 and v.denominator == 1:
        root = "i" if z.field.d == 1 else f"sqrt-{z.field.d}"
        x, y, sym = int(u), int(v), root
    else:
        x, y, sym = int(z.x), int(z.y), "w"
    if y == 0:
        return str(x)
    ys = {1: "", -1: "-"}.get(y, str(y)) + sym
    if x == 0:
        return ys
    return f"{x}{ys}" if y < 0 else f"{x}+{ys}"


def _nice_generator(g: QuadElem) -> QuadElem:
    def key(z):
        u, v = z.sqrt_coords()
        return (u.denominator != 1 or v.denominator != 1, u <= 0, v < 0, abs(u) + abs(v))

    return min((u * g for u in g.field.units), key=key)


def format_ideal(I: QuadIdeal) -> str:
    """Generator notation accepted by parse_ideal: '(2+2i)', '(2, 1+sqrt-5)'.

    Non-integral ideals keep the normal form 'scale*[a, b+w]'.
    """
    if not I.is_integral():
        return I.normal_form()
    g = is_principal(I)
    if g is not None:
        return f"({_elem_text(_nice_generator(g))})"
    F = I.field
    s = int(I.scale)
    a = s * I.a
    second = QuadElem(F, Fraction(s * I.b), Fraction(s))
    u, v = second.sqrt_coords()
    if u.denominator == 1:
        # shift by multiples of a towards the smallest constant term
        second = second - F.elem(a * round(u / a))
    return f"({a}, {_elem_text(second)})"
