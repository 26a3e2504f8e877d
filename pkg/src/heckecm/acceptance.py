"""The acceptance battery.  Each criterion returns a CheckResult; ``selftest``
and the test-suite both drive these functions.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

import mpmath

from . import galois as gal
from .eklattice import EKParams, ek, ek_direct, ek_smoothed, lattice_from_ideal, lattice_div_ideal, torsion_translates
from .hecke import char_eval, make_character, parse_character
from .lvalues import L_value, dirichlet_L, partial_L
from .quadarith import ImagQuadField, ideal_inv, ideal_mul, parse_ideal, units_mod
from .verify import verify

QI = ImagQuadField(1)

DELIGNE_CASES = (
    "hecke field=Q(i) f=(1+i)^3 a=4 b=0",
    "hecke field=Q(i) f=(1+i)^3 a=8 b=0",
    "hecke field=Q(i) f=(1+i)^3 a=3 b=1",
    "hecke field=Q(sqrt-3) f=(sqrt-3) a=6 b=0",
)


@dataclass
class CheckResult:
    name: str
    passed: bool
    seconds: float = 0.0
    details: list[str] = field(default_factory=list)

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name} ({self.seconds:.1f}s)"


class _Recorder:
    def __init__(self, name: str):
        self.name = name
        self.ok = True
        self.details: list[str] = []
        self.t0 = time.perf_counter()

    def check(self, cond: bool, msg: str):
        if not cond:
            self.ok = False
            self.details.append("failed: " + msg)

    def note(self, msg: str):
        self.details.append(msg)

    def done(self, budget: float | None = None) -> CheckResult:
        dt = time.perf_counter() - self.t0
        if budget is not None and dt > budget:
            self.ok = False
            self.details.append(f"failed: runtime {dt:.1f}s exceeds {budget}s")
        return CheckResult(self.name, self.ok, dt, self.details)


def _settings():
    return {name: gal.BUILTIN_SETTINGS[name]() for name in ("C2", "zeta5", "C2xC2", "S3")}


def _typed_fields(S):
    out = []
    for f in S.fields:
        if gal.is_totally_imaginary(S, f):
            types = gal.cm_types(S, f)
            if types:
                out.append((f, types))
    return out


def _rel_err(x, y, scale=None):
    x, y = mpmath.mpc(x), mpmath.mpc(y)
    denom = max(abs(x), abs(y))
    if scale is not None:
        denom = max(denom, abs(scale))
    if denom == 0:
        return mpmath.mpf(0)
    return abs(x - y) / denom


# ---------------------------------------------------------------------------


def criterion_1() -> CheckResult:
    r = _Recorder("1 galois: epsilon cocycle law")
    for name, S in _settings().items():
        G = S.group
        n = 0
        for f, types in _typed_fields(S):
            for phi in types:
                E, _ = gal.reflex(S, phi)
                etas = [rep for rep in gal._reps(S, E)]
                for eta in etas:
                    for t1 in range(G.order):
                        for t2 in range(G.order):
                            lhs = gal.epsilon_sign(S, phi, eta, G.mul(t1, t2))
                            rhs = gal.epsilon_sign(S, phi, G.mul(t2, eta), t1) * gal.epsilon_sign(S, phi, eta, t2)
                            n += 1
                            r.check(lhs == rhs, f"{name} {f} {sorted(phi.members)} eta={eta} t1={t1} t2={t2}")
        r.note(f"{name}: {n} checks")
    S = gal.setting_zeta5()
    phi = gal.cm_type(S, "Q(zeta5)", gal.parse_members(S, "Q(zeta5)", "e1,e2"))
    v = gal.epsilon_sign(S, phi, S.element("1"), S.element("s"))
    r.check(v == -1, f"C4 golden epsilon = {v}, expected -1")
    return r.done(budget=1.0)


def criterion_2() -> CheckResult:
    r = _Recorder("2 galois: reflex structure")
    S = gal.setting_zeta5()
    L = S.field("Q(zeta5)")
    types = gal.cm_types(S, L)
    r.check(len(types) == 4, f"C4 has {len(types)} CM-types, expected 4")
    for phi in types:
        E, star = gal.reflex(S, phi)
        E2, phi2 = gal.reflex(S, star)
        r.check(E2.subgroup == L.subgroup and phi2.members == phi.members, f"double reflex of {sorted(phi.members)}")
    for name, S2 in _settings().items():
        for f, ts in _typed_fields(S2):
            for phi in ts:
                E, star = gal.reflex(S2, phi)
                E2, _ = gal.reflex(S2, star)
                r.check(E2.subgroup >= f.subgroup, f"{name}: double reflex field of {f} is not a subfield")
    S3 = gal.setting_s3()
    top = S3.top
    lifted = gal.cm_type(S3, top, gal.lift_type(S3, gal.char_function(S3, "Q(sqrt-3)", [0]), top).support())
    E, star = gal.reflex(S3, lifted)
    r.check(E.name == "Q(sqrt-3)" and star.members == frozenset({S3.group.identity}), f"S3 reflex = {E}, {sorted(star.members)}")
    return r.done(budget=1.0)


def _random_critical(S, rng):
    """A random critical Hecke character type on a random field with CM-types: (mu, Phi, alpha)."""
    cands = _typed_fields(S)
    f, _ = rng.choice(cands)
    K = gal.maximal_cm_subfield(S, f)
    phiK = rng.choice(gal.cm_types(S, K))
    alphaK = {r: rng.randint(1, 5) for r in phiK.members}
    w = rng.randint(-min(alphaK.values()), 4)
    coeffs = {}
    for r, a in alphaK.items():
        coeffs[r] = -a
        coeffs[gal.conj_embedding(S, K, r)] = w + a
    muK = gal.infinity_type(S, K, coeffs)
    mu = gal.lift_type(S, muK, f)
    phi = gal.cm_type(S, f, gal.lift_type(S, gal.char_function(S, K, phiK.members), f).support())
    return mu, phi, w


def criterion_3() -> CheckResult:
    r = _Recorder("3 galois: criticality and Xi")
    rng = random.Random(20240601)
    for name, S in _settings().items():
        for _ in range(100):
            mu, phi, w = _random_critical(S, rng)
            dec = gal.critical_decompose(S, mu)
            if dec is None:
                r.check(False, f"{name}: no decomposition for {mu}")
                continue
            r.check(dec.beta - dec.alpha == mu, f"{name}: beta - alpha != mu")
            r.check(dec.cm_type.members == phi.members and dec.weight == w, f"{name}: wrong CM-type or weight")
            xi = gal.xi_infinity_type(S, dec)
            E = xi.field
            total = dec.alpha.degree + dec.beta.degree
            for e in gal._reps(S, E):
                r.check(xi[e] + xi[gal.conj_embedding(S, E, e)] == total, f"{name}: weight identity at {e}")
    S = gal.setting_c2()
    dec = gal.critical_decompose(S, gal.parse_type(S, "K", "2c-3"))
    xi = gal.xi_infinity_type(S, dec)
    r.check(xi.as_dict() == {0: 5}, f"C2 Xi = {xi.as_dict()}, expected 5*1")
    S = gal.setting_zeta5()
    mu = gal.parse_type(S, "Q(zeta5)", "-e1-e2")
    dec = gal.critical_decompose(S, mu)
    xi = gal.xi_infinity_type(S, dec)
    want = gal.parse_type(S, xi.field, "2e1+e2+e3").as_dict()
    r.check(xi.as_dict() == want, f"C4 Xi = {xi.as_dict()}, expected 2e1+e2+e3")
    return r.done()


# ---------------------------------------------------------------------------


def _shell_scale(params: EKParams, L, prec: int):
    """Largest summand magnitude: the scale for relative error when the sum cancels."""
    from .eklattice import lattice_points

    with mpmath.workprec(prec):
        pts = lattice_points(L, params.t, 2 * abs(L.reduced().w2) + abs(mpmath.mpc(params.t)))
        k = 2 * mpmath.mpc(params.s).real + params.a - params.b
        return max(abs(z) ** (-k) for z in pts) / params.gamma_order


def criterion_4(points: float = 3.0e6) -> CheckResult:
    r = _Recorder("4 eklattice: ek vs direct sum at s = 3, 4")
    f = parse_ideal(QI, "(1+i)^3")
    lattices = (("Z[i]", lattice_from_ideal(parse_ideal(QI, "(1)")), 0), ("(1+i)^3 Z[i] + 1", lattice_from_ideal(f), 1))
    for b, a in ((0, 4), (1, 4), (0, 5)):
        for s in (3, 4):
            for lname, L, t in lattices:
                p = EKParams(b, a, t, s, 1)
                t0 = time.perf_counter()
                x = ek(p, L, 192)
                t1 = time.perf_counter()
                # radius from a point budget: about pi R^2 / covolume points
                R = float(mpmath.sqrt(points * L.covolume / mpmath.pi))
                y, bound = ek_direct(p, L, R=R, prec=192)
                t2 = time.perf_counter()
                err = _rel_err(x, y, _shell_scale(p, L, 192))
                r.note(f"(b,a)=({b},{a}) s={s} {lname}: rel err {mpmath.nstr(err, 3)}, R = {R:.0f}, tail bound {bound:.1e}, {t1 - t0:.1f}s + {t2 - t1:.1f}s")
                r.check(err <= mpmath.mpf("1e-25"), f"({b},{a}) s={s} {lname}: rel err {mpmath.nstr(err, 3)}")
                r.check(t1 - t0 < 5 and t2 - t1 < 5, f"({b},{a}) s={s} {lname}: evaluation over 5 s")
    return r.done()


def criterion_5(prec: int = 192) -> CheckResult:
    r = _Recorder("5 eklattice: continuation oracles at s = 0")
    f = parse_ideal(QI, "(1+i)^3")
    Lf = lattice_from_ideal(f)
    Z = lattice_from_ideal(parse_ideal(QI, "(1)"))
    tol = mpmath.mpf("1e-25")
    # split-point independence
    for b, a, L, t, g in ((0, 4, Z, 0, 4), (1, 3, Lf, 1, 1), (2, 2, Lf, 1, 1), (0, 8, Lf, 1, 1)):
        p = EKParams(b, a, t, 0, g)
        x, y = ek(p, L, prec, split=1), ek(p, L, prec, split=mpmath.mpf(1.37))
        err = _rel_err(x, y, 1)
        r.check(err <= mpmath.mpf(2) ** (-(prec - 10)), f"split independence ({b},{a}): {mpmath.nstr(err, 3)}")
    # scaling identity
    rng = random.Random(7)
    p = EKParams(1, 3, 1, 0, 1)
    base = ek(p, Lf, prec)
    worst = mpmath.mpf(0)
    for k in range(20):
        if k % 2 == 0:
            mu = mpmath.mpc(rng.choice([1, -1]) * rng.randint(1, 4), rng.randint(-4, 4))
        else:
            mu = mpmath.expjpi(mpmath.mpf(rng.random() * 2))
        with mpmath.workprec(prec + 20):
            lhs = ek(EKParams(1, 3, mu, 0, 1), Lf.scaled(mu), prec)
            rhs = mpmath.conj(mu) ** 1 * mu ** (-3) * base
        worst = max(worst, _rel_err(lhs, rhs))
    r.note(f"scaling identity worst rel err {mpmath.nstr(worst, 3)}")
    r.check(worst <= tol, f"scaling identity {mpmath.nstr(worst, 3)}")
    # distribution relation
    for cname in ("(1+i)", "(3)"):
        c = parse_ideal(QI, cname)
        for b, a, L, x in ((0, 4, Z, 0), (1, 3, Lf, 1)):
            Nc = int(c.norm())
            with mpmath.workprec(prec + 20):
                lhs = Nc * ek(EKParams(b, a, x, 0, 1), L, prec + 20)
                scale = abs(lhs)
                for t in torsion_translates(L, c):
                    lhs -= ek(EKParams(b, a, t + x, 0, 1), L, prec + 20)
            rhs = ek_smoothed(EKParams(b, a, x, 0, 1), c, L, prec)
            # the smoothed value may vanish; measure against the unsmoothed size
            err = _rel_err(lhs, rhs, scale)
            r.note(f"distribution c={cname} ({b},{a}): rel err {mpmath.nstr(err, 3)}")
            r.check(err <= tol, f"distribution relation c={cname} ({b},{a}): {mpmath.nstr(err, 3)}")
    return r.done(budget=60.0)


def criterion_6(nmax: int = 10**6) -> CheckResult:
    r = _Recorder("6 lvalues: E-series route vs Dirichlet series at s = 3")
    for spec in ("hecke field=Q(i) f=(1+i)^3 a=4 b=0", "hecke field=Q(i) f=(3) a=4 b=0 twist=0", "hecke field=Q(i) f=(3) a=4 b=0 twist=1"):
        chi = parse_character(spec)
        e = L_value(chi, 3, 192).total
        d, bound = dirichlet_L(chi, 3, nmax)
        err = abs(complex(e) - d)
        r.note(f"{spec}: |diff| = {err:.2e}, tail bound {bound:.1e}")
        r.check(err <= 1e-12, f"{spec}: |diff| = {err:.2e}")
    return r.done(budget=120.0)


def criterion_7(prec: int = 192) -> CheckResult:
    r = _Recorder("7 lvalues: smoothed partial L consistency")
    tol = mpmath.mpf("1e-25")
    cases = (
        ("hecke field=Q(i) f=(1+i)^3 a=4 b=0", "(3)", ("(1)", "(2+i)")),
        ("hecke field=Q(i) f=(1+i)^3 a=3 b=1", "(3)", ("(1)", "(2+i)")),
        ("hecke field=Q(i) f=(3) a=4 b=0", "(2+i)", ("(1)", "(1+i)")),
    )
    for spec, cname, bnames in cases:
        chi = parse_character(spec)
        c = parse_ideal(QI, cname)
        rcg = chi.rcg
        gamma = len(units_mod(chi.field, chi.modulus))
        for bname in bnames:
            bi = parse_ideal(QI, bname)
            bc_rep = rcg.class_representative(rcg.exponents(ideal_mul(bi, c)))
            with mpmath.workprec(prec + 20):
                first = int(c.norm()) * partial_L(chi, bi, 0, prec + 20)
                lhs = first - partial_L(chi, bc_rep, 0, prec + 20) / char_eval(chi, c, prec + 20)
                Lam = lattice_from_ideal(ideal_mul(chi.modulus, ideal_inv(bi)))
                rhs = char_eval(chi, bi, prec + 20) * ek_smoothed(EKParams(chi.b, chi.a, 1, 0, gamma), c, Lam, prec + 20)
            err = _rel_err(lhs, rhs, first)
            r.note(f"{spec} c={cname} b={bname}: rel err {mpmath.nstr(err, 3)}")
            r.check(err <= tol, f"{spec} c={cname} b={bname}: {mpmath.nstr(err, 3)}")
    return r.done(budget=60.0)


def _deligne(name: str, omega_scale) -> CheckResult:
    r = _Recorder(name)
    for spec in DELIGNE_CASES:
        chi = parse_character(spec)
        t0 = time.perf_counter()
        rep = verify(chi, 256, max_degree=2, max_height=10**8, omega_scale=omega_scale)
        dt = time.perf_counter() - t0
        ok = rep.recognized and rep.residual is not None and rep.residual <= -128
        r.note(f"{spec}: R = {mpmath.nstr(rep.ratio.real, 20)}, polynomial {rep.polynomial}, stable {rep.stable}")
        r.check(ok, f"{spec}: ratio not recognized as algebraic of degree <= 2 (R = {mpmath.nstr(rep.ratio, 15)})")
        r.check(dt < 60, f"{spec}: {dt:.1f}s")
    return r.done()


def criterion_8() -> CheckResult:
    return _deligne("8 verify: Deligne ratio recognized", 1)


def criterion_9() -> CheckResult:
    return _deligne("9 verify: Deligne ratio with Omega -> 2 Omega", 2)


CRITERIA: dict[str, tuple[str, Callable[[], CheckResult]]] = {
    "1": ("galois", criterion_1),
    "2": ("galois", criterion_2),
    "3": ("galois", criterion_3),
    "4": ("eklattice", criterion_4),
    "5": ("eklattice", criterion_5),
    "6": ("lvalues", criterion_6),
    "7": ("lvalues", criterion_7),
    "8": ("verify", criterion_8),
    "9": ("verify", criterion_9),
}
