"""Deligne ratios of the acceptance characters under both period normalizations.

    python3 scripts/normalization_scan.py [--prec 256] [--omega-scale 1]

"standard" divides by Omega^a and multiplies by conj(Omega)^b; "hodge" divides
by Omega^(a+b) and multiplies by pi^b.  For b = 0 the two agree.  The scan also
tries PSLQ on R against {1, pi} to show where a transcendental factor remains.
"""
from __future__ import annotations

import argparse
import json

import mpmath

from heckecm.acceptance import DELIGNE_CASES
from heckecm.hecke import parse_character
from heckecm.lvalues import L_value
from heckecm.periods import cm_period
from heckecm.verify import NORMALIZATIONS, deligne_ratio, recognize_algebraic

EXTRA = ("hecke field=Q(i) f=(3) a=4 b=0 twist=0", "hecke field=Q(i) f=(3) a=4 b=0 twist=1")


def scan(spec: str, prec: int, omega_scale) -> dict:
    chi = parse_character(spec)
    with mpmath.workprec(prec + 20):
        omega = cm_period(chi.field, prec + 20).omega * mpmath.mpc(omega_scale)
        L = L_value(chi, 0, prec + 20).total
        row = {"character": spec, "L": mpmath.nstr(L.real, 25)}
        for norm in NORMALIZATIONS:
            R = deligne_ratio(chi, omega, L, norm, prec + 20)
            P = recognize_algebraic(R, 2, 10**8, prec, chi.field)
            row[norm] = {"R": mpmath.nstr(R.real, 25), "polynomial": P}
            # R = q1 + q2 pi would point at a missing power of pi
            rel = mpmath.pslq([R.real, mpmath.mpf(1), mpmath.pi], maxcoeff=10**6, maxsteps=10**4)
            row[norm]["relation_with_pi"] = [int(c) for c in rel] if rel else None
    return row


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--prec", type=int, default=256)
    ap.add_argument("--omega-scale", default="1")
    args = ap.parse_args(argv)
    for spec in DELIGNE_CASES + EXTRA:
        print(json.dumps(scan(spec, args.prec, mpmath.mpmathify(args.omega_scale))))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
