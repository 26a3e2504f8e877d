"""Algebraic Hecke characters of an imaginary quadratic field, in ideal form.

A character of conductor dividing f with infinity pair (a, b) satisfies
chi((alpha)) = conj(alpha)^b * alpha^(-a) for alpha = 1 mod* f.  It is pinned
down by its values on the polycyclic generators of the ray class group mod f.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from functools import lru_cache
from math import prod

import mpmath

from .errors import NoSuchCharacter, NotCoprime, SpecParseError, TrivialModulus
from .quadarith import (
    ImagQuadField,
    QuadElem,
    QuadIdeal,
    format_ideal,
    is_coprime,
    parse_field,
    parse_ideal,
    ray_class_group,
    units_mod,
)


def infinity_value(alpha: QuadElem, a: int, b: int) -> QuadElem:
    """conj(alpha)^b * alpha^(-a), exactly."""
    return alpha.conj() ** b * alpha ** (-a)


def unit_compatible(F: ImagQuadField, f: QuadIdeal, a: int, b: int) -> bool:
    one = F.elem(1)
    return all(infinity_value(u, a, b) == one for u in units_mod(F, f).units)


@dataclass(frozen=True)
class HeckeChar:
    field: ImagQuadField
    modulus: QuadIdeal
    a: int
    b: int
    twist: int = 0
    # root-of-unity index k_i: chi(g_i) = (principal n_i-th root of target_i) * exp(2 pi i k_i / n_i)
    root_indices: tuple[int, ...] = ()
    spec: str = field(default="", compare=False)

    @property
    def weight(self) -> int:
        return self.b - self.a

    @property
    def rcg(self):
        return ray_class_group(self.field, self.modulus)

    def generator_values(self, prec: int = 113) -> tuple:
        return _generator_values(self, prec)

    def __call__(self, I: QuadIdeal, prec: int = 113):
        return char_eval(self, I, prec)

    def __str__(self) -> str:
        return self.spec or format_character(self)


def weight(chi: HeckeChar) -> int:
    return chi.weight


@lru_cache(maxsize=256)
def _generator_values(chi: HeckeChar, prec: int) -> tuple:
    rcg = chi.rcg
    vals = []
    with mpmath.workprec(prec + 20):
        for (exps, alpha), n, k in zip(rcg.relations, rcg.orders, chi.root_indices):
            target = chi.field.embed(infinity_value(alpha, chi.a, chi.b))
            for v, e in zip(vals, exps):
                target *= v**e
            # mpmath's root is the principal branch (argument in (-pi, pi]/n)
            root = mpmath.root(target, n) if n > 1 else target
            vals.append(root * mpmath.expjpi(mpmath.mpf(2 * k) / n))
    return tuple(vals)


def enumerate_characters(
    F: ImagQuadField, f: QuadIdeal, ab: tuple[int, int], allow_trivial_modulus: bool = False
) -> list[HeckeChar]:
    """Every character of conductor dividing f with the given infinity pair, by twist index.

    f = (1) is refused unless allow_trivial_modulus is set; such characters
    only serve the Dirichlet-series oracle.
    """
    a, b = ab
    if f.is_one() and not allow_trivial_modulus:
        raise TrivialModulus("the modulus f must be a proper ideal")
    if not unit_compatible(F, f, a, b):
        return []
    rcg = ray_class_group(F, f)
    out = []
    for t in range(rcg.order):
        out.append(HeckeChar(F, f, a, b, t, _mixed_radix(t, rcg.orders)))
    return out


def _mixed_radix(t: int, radices: tuple[int, ...]) -> tuple[int, ...]:
    digits = []
    for n in radices:
        t, r = divmod(t, n)
        digits.append(r)
    return tuple(digits)


def make_character(
    F: ImagQuadField, f: QuadIdeal, a: int, b: int, twist: int = 0, allow_trivial_modulus: bool = False
) -> HeckeChar:
    chars = enumerate_characters(F, f, (a, b), allow_trivial_modulus)
    if not chars:
        raise NoSuchCharacter(
            f"no Hecke character of {F.name} with modulus {f} and (a, b) = ({a}, {b}): "
            "the infinity type is not trivial on units = 1 mod f"
        )
    if not 0 <= twist < len(chars):
        raise NoSuchCharacter(f"twist {twist} out of range 0..{len(chars) - 1}")
    return chars[twist]


def char_eval(chi: HeckeChar, I: QuadIdeal, prec: int = 113):
    """chi(I) as an mpmath mpc at `prec` bits."""
    if not is_coprime(I, chi.modulus):
        raise NotCoprime(f"{I} is not coprime to the modulus {chi.modulus}")
    e, alpha = chi.rcg.principalize(I)
    gens = chi.generator_values(prec)
    with mpmath.workprec(prec + 20):
        out = chi.field.embed(infinity_value(alpha, chi.a, chi.b))
        for v, k in zip(gens, e):
            out *= v**k
    with mpmath.workprec(prec):
        return +out


def char_eval_exact(chi: HeckeChar, I: QuadIdeal) -> QuadElem | None:
    """chi(I) as an exact field element when I lies in the trivial ray class, else None."""
    e, alpha = chi.rcg.principalize(I)
    if any(e):
        return None
    return infinity_value(alpha, chi.a, chi.b)


def char_eval_float(chi: HeckeChar, I: QuadIdeal) -> complex:
    """chi(I) in double precision, on the integer fast path."""
    e, (x, y), den = chi.rcg.principalize_int(I)
    F = chi.field
    alpha = complex(x + y * F.D / 2, y * (-F.D) ** 0.5 / 2) / den
    out = alpha.conjugate() ** chi.b * alpha ** (-chi.a)
    for v, k in zip(_float_generator_values(chi), e):
        out *= v**k
    return out


@lru_cache(maxsize=256)
def _float_generator_values(chi: HeckeChar) -> tuple[complex, ...]:
    return tuple(complex(v) for v in chi.generator_values(80))


# ---------------------------------------------------------------------------
# spec strings

_KV_RE = re.compile(r"(\w+)=(\S+)")


def parse_character(text: str) -> HeckeChar:
    """Parse 'hecke field=Q(i) f=(1+i)^3 a=4 b=0 twist=0'."""
    t = text.strip()
    if not t.startswith("hecke"):
        raise SpecParseError("character spec must start with 'hecke'", column=1)
    kv = {}
    pos = len("hecke")
    for m in _KV_RE.finditer(t, pos):
        if t[pos:m.start()].strip():
            raise SpecParseError(f"unexpected text {t[pos:m.start()].strip()!r}", column=pos + 1)
        kv[m.group(1)] = (m.group(2), m.start(2) + 1)
        pos = m.end()
    if t[pos:].strip():
        raise SpecParseError(f"unexpected text {t[pos:].strip()!r}", column=pos + 1)
    for key in ("field", "f", "a", "b"):
        if key not in kv:
            raise SpecParseError(f"missing key {key!r} in character spec")
    unknown = set(kv) - {"field", "f", "a", "b", "twist"}
    if unknown:
        k = sorted(unknown)[0]
        raise SpecParseError(f"unknown key {k!r}", column=kv[k][1])
    F = parse_field(kv["field"][0])
    try:
        f = parse_ideal(F, kv["f"][0])
    except SpecParseError as exc:
        raise SpecParseError(str(exc), column=kv["f"][1]) from None
    ints = {}
    for key in ("a", "b", "twist"):
        if key in kv:
            try:
                ints[key] = int(kv[key][0])
            except ValueError:
                raise SpecParseError(f"{key} must be an integer", column=kv[key][1]) from None
    chi = make_character(F, f, ints["a"], ints["b"], ints.get("twist", 0))
    return replace(chi, spec=" ".join(t.split()))


def format_character(chi: HeckeChar) -> str:
    f = format_ideal(chi.modulus).replace(" ", "")
    return f"hecke field={chi.field.name} f={f} a={chi.a} b={chi.b} twist={chi.twist}"


def check_consistency(chi: HeckeChar, prec: int = 113) -> float:
    """Largest relative defect of chi(g_i)^n_i against its relation; should be ~2^-prec."""
    rcg = chi.rcg
    vals = chi.generator_values(prec)
    worst = 0.0
    for i, ((exps, alpha), n) in enumerate(zip(rcg.relations, rcg.orders)):
        target = chi.field.embed(infinity_value(alpha, chi.a, chi.b))
        target *= prod((v**e for v, e in zip(vals, exps)), start=mpmath.mpf(1))
        worst = max(worst, float(abs(vals[i] ** n - target) / abs(target)))
    return worst
