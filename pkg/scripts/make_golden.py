"""Regenerate golden/*.json from independent oracles.

    python3 scripts/make_golden.py            # all
    python3 scripts/make_golden.py --only period_Qi --check

Each file records the command that produced it.  The package's primary
routes (q-series periods, incomplete-gamma E-series) are never used here;
only theta functions, quadrature, direct lattice sums and Dirichlet series.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import mpmath

sys.path.insert(0, str(Path(__file__).resolve().parent))
import oracles  # noqa: E402

from heckecm.eklattice import EKParams, ek_direct, lattice_from_ideal  # noqa: E402
from heckecm.hecke import parse_character  # noqa: E402
from heckecm.lvalues import dirichlet_L  # noqa: E402
from heckecm.quadarith import ImagQuadField, parse_ideal, unit_ideal  # noqa: E402

ROOT = Path(__file__).resolve().parents[1]
GOLDEN = ROOT / "golden"
PREC = 320
DIGITS = 80


def cstr(z, digits=DIGITS):
    with mpmath.workprec(PREC):
        z = mpmath.mpc(z)
        return {"re": mpmath.nstr(z.real, digits), "im": mpmath.nstr(z.imag, digits)}


def _rho_lattice_sqrt3():
    """sqrt(-3) * Z[rho] with a positively oriented basis."""
    s3 = mpmath.mpc(0, mpmath.sqrt(3))
    rho = mpmath.mpc(-0.5, mpmath.sqrt(3) / 2)
    a, b = s3, s3 * rho
    if (mpmath.conj(a) * b).imag < 0:
        a, b = b, a
    return a, b


def g_period_Qi():
    return dict(module="periods", kind="period", inputs={"field": "Q(i)"}, value=cstr(oracles.lemniscate_period(PREC)),
                tolerance="1e-50", method="real period of y^2 = 4x^3 - 4x by tanh-sinh quadrature")


def g_period_Qsqrt3():
    return dict(module="periods", kind="period", inputs={"field": "Q(sqrt-3)"}, value=cstr(oracles.equianharmonic_period(PREC)),
                tolerance="1e-50", method="real period of y^2 = 4x^3 - 4 by tanh-sinh quadrature")


def g_g2_Zi():
    with mpmath.workprec(PREC):
        g2, _ = oracles.invariants(mpmath.mpc(1), mpmath.mpc(0, 1))
        om = oracles.lemniscate_period(PREC)
        agree = abs(g2 - 4 * om**4) / abs(g2)
    return dict(module="periods", kind="g2", inputs={"field": "Q(i)"}, value=cstr(g2), tolerance="1e-50",
                method="g2 = -4(e1 e2 + e1 e3 + e2 e3) with e_k = p(half periods) from theta functions",
                crosscheck=f"4 * (quadrature period)^4 agrees to {mpmath.nstr(agree, 3)}")


def g_ek_Zi_gamma4_s0():
    # sum' l^-4 over Z[i] equals g2 / 60 = 4 Omega^4 / 60; divide by |Gamma| = 4
    with mpmath.workprec(PREC):
        om = oracles.lemniscate_period(PREC)
        v = om**4 / 60
        d, bound = ek_direct(EKParams(0, 4, 0, 0, 4), lattice_from_ideal(unit_ideal(ImagQuadField(1))), R=1000, prec=192)
    return dict(module="eklattice", kind="ek",
                inputs={"field": "Q(i)", "lattice": "(1)", "b": 0, "a": 4, "t": "0", "s": "0", "gamma": 4},
                value=cstr(v), tolerance="1e-50",
                method="(1/4) sum' l^-4 = Omega^4 / 60 with Omega the quadrature period",
                crosscheck=f"direct sum to R = 1000: {mpmath.nstr(d.real, 20)} (tail bound {bound:.1e})")


def g_ek_Zi_b1a4_s3():
    with mpmath.workprec(PREC):
        L = lattice_from_ideal(parse_ideal(ImagQuadField(1), "(1+i)^3"))
        v, bound = ek_direct(EKParams(1, 4, 1, 3, 1), L, R=2800, prec=192)
    return dict(module="eklattice", kind="ek",
                inputs={"field": "Q(i)", "lattice": "(1+i)^3", "b": 1, "a": 4, "t": "1", "s": "3", "gamma": 1},
                value=cstr(v, 40), tolerance="1e-25",
                method=f"direct lattice sum to R = 2800, rigorous tail bound {bound:.1e}")


def g_partial_L_Qi_f8_a4():
    a, b = mpmath.mpc(4), mpmath.mpc(-2, 2)
    with mpmath.workprec(PREC):
        v = oracles.lattice_power_sum(mpmath.mpf(1), a, b, 4, PREC)
    return dict(module="lvalues", kind="partial_L",
                inputs={"char": "hecke field=Q(i) f=(1+i)^3 a=4 b=0", "b": "(1)", "s": "0"},
                value=cstr(v), tolerance="1e-50",
                method="sum over l in (1+i)^3 Z[i] of (1 + l)^-4 = p''(1) / 6 from theta functions")


def g_lvalue_Qsqrt3_a6():
    with mpmath.workprec(PREC):
        a, b = _rho_lattice_sqrt3()
        v = oracles.lattice_power_sum(mpmath.mpf(1), a, b, 6, PREC) / 3
    return dict(module="lvalues", kind="lvalue",
                inputs={"char": "hecke field=Q(sqrt-3) f=(sqrt-3) a=6 b=0", "s": "0"},
                value=cstr(v), tolerance="1e-50",
                method="(1/3) sum over l in sqrt(-3) Z[rho] of (1 + l)^-6 = p''''(1) / 360 from theta functions")


def g_lvalue_Qi_f3_s3():
    chi = parse_character("hecke field=Q(i) f=(3) a=4 b=0 twist=1")
    v, bound = dirichlet_L(chi, 3, 10**6)
    return dict(module="lvalues", kind="lvalue",
                inputs={"char": "hecke field=Q(i) f=(3) a=4 b=0 twist=1", "s": "3"},
                value={"re": repr(v.real), "im": repr(v.imag)}, tolerance="1e-12",
                method=f"Dirichlet series over ideals of norm <= 10^6, tail bound {bound:.1e}")


def _ratio(v, om, k):
    with mpmath.workprec(PREC):
        return oracles.recognize_rational(v / om**k, PREC)


def g_verify_Qi_f8_a4():
    a, b = mpmath.mpc(4), mpmath.mpc(-2, 2)
    with mpmath.workprec(PREC):
        P = _ratio(oracles.lattice_power_sum(mpmath.mpf(1), a, b, 4, PREC), oracles.lemniscate_period(PREC), 4)
    return dict(module="verify", kind="verify", inputs={"char": "hecke field=Q(i) f=(1+i)^3 a=4 b=0", "prec": 256},
                value=P, method="PSLQ on theta-function L-value / quadrature period^4")


def g_verify_Qi_f8_a8():
    a, b = mpmath.mpc(4), mpmath.mpc(-2, 2)
    with mpmath.workprec(PREC):
        P = _ratio(oracles.lattice_power_sum(mpmath.mpf(1), a, b, 8, PREC), oracles.lemniscate_period(PREC), 8)
    return dict(module="verify", kind="verify", inputs={"char": "hecke field=Q(i) f=(1+i)^3 a=8 b=0", "prec": 256},
                value=P, method="PSLQ on theta-function L-value / quadrature period^8")


def g_verify_Qsqrt3_a6():
    with mpmath.workprec(PREC):
        a, b = _rho_lattice_sqrt3()
        L = oracles.lattice_power_sum(mpmath.mpf(1), a, b, 6, PREC) / 3
        P = _ratio(L, oracles.equianharmonic_period(PREC), 6)
    return dict(module="verify", kind="verify", inputs={"char": "hecke field=Q(sqrt-3) f=(sqrt-3) a=6 b=0", "prec": 256},
                value=P, method="PSLQ on theta-function L-value / quadrature period^6")


_C4_NAMES = ["e1", "e2", "e4", "e3"]  # s^j is zeta -> zeta^(2^j)


def g_epsilon_C4():
    return dict(module="galois", kind="epsilon",
                inputs={"setting": "zeta5", "type": "e1,e2", "eta": "1", "tau": "s"},
                value=oracles.c4_epsilon({0, 1}, 0, 1), method="sign of the induced permutation of conjugation pairs, by hand on Z/4")


def g_reflex_C4():
    stab, star = oracles.c4_reflex({0, 1})
    assert stab == frozenset({0})
    names = ",".join(sorted(_C4_NAMES[j] for j in star))
    return dict(module="galois", kind="reflex", inputs={"setting": "zeta5", "type": "e1,e2"},
                value="Q(zeta5): " + names, method="stabilizer and inverse set of Phi in Z/4")


GENERATORS = {
    "period_Qi": g_period_Qi,
    "period_Qsqrt-3": g_period_Qsqrt3,
    "g2_Zi": g_g2_Zi,
    "ek_Zi_b0a4_gamma4_s0": g_ek_Zi_gamma4_s0,
    "ek_f8_b1a4_t1_s3": g_ek_Zi_b1a4_s3,
    "partial_L_Qi_f8_a4_s0": g_partial_L_Qi_f8_a4,
    "lvalue_Qsqrt-3_a6_s0": g_lvalue_Qsqrt3_a6,
    "lvalue_Qi_f3_a4_twist1_s3": g_lvalue_Qi_f3_s3,
    "verify_Qi_f8_a4": g_verify_Qi_f8_a4,
    "verify_Qi_f8_a8": g_verify_Qi_f8_a8,
    "verify_Qsqrt-3_a6": g_verify_Qsqrt3_a6,
    "epsilon_C4": g_epsilon_C4,
    "reflex_C4": g_reflex_C4,
}


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--only", action="append", choices=sorted(GENERATORS))
    ap.add_argument("--check", action="store_true", help="compare against the existing files instead of writing")
    args = ap.parse_args(argv)
    GOLDEN.mkdir(exist_ok=True)
    status = 0
    for name in args.only or GENERATORS:
        data = {"name": name, **GENERATORS[name]()}
        data["oracle"] = f"python3 scripts/make_golden.py --only {name}"
        path = GOLDEN / f"{name}.json"
        text = json.dumps(data, indent=2) + "\n"
        if args.check:
            same = path.exists() and json.loads(path.read_text())["value"] == data["value"]
            print(("same " if same else "DIFF ") + name)
            status |= not same
        else:
            path.write_text(text)
            print("wrote", path.relative_to(ROOT))
    return status


if __name__ == "__main__":
    sys.exit(main())
