"""Command-line interface.  Every command prints one JSON document on stdout.

    heckecm galois reflex   --setting zeta5 --type e1,e2
    heckecm galois sign     --setting zeta5 --type e1,e2 --tau s --eta 1
    heckecm galois critical --setting C2 --mu "2c-3"
    heckecm galois demo     --setting S3
    heckecm ek      --b 0 --a 4 --lattice "Z[i]" --gamma 4 --s 0
    heckecm lvalue  --char "hecke field=Q(i) f=(1+i)^3 a=4 b=0" --s 0
    heckecm period  --field "Q(i)" --prec 256
    heckecm verify  --char "hecke field=Q(i) f=(1+i)^3 a=4 b=0" --prec 256
    heckecm selftest [--filter eklattice]

Settings files for the galois commands (``--setting <path>``):

    # comment
    order=4 conj=2
    0 1 2 3
    1 2 3 0
    2 3 0 1
    3 0 1 2
    elements e1 e2 e4 e3
    field Q(zeta5) = 0
    field Q(sqrt5) = 0,2

The header gives |G| and the index of complex conjugation, then |G| rows of
the composition table (row g, column h holds g*h), optional element names,
and fields as the subgroups fixing them.

Numbers are emitted as decimal strings.  Errors go to stderr as JSON with a
stable ``code``; the exit status is 2 for input errors and 3 for numerical
failures, and ``selftest`` exits 1 when a check fails.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import mpmath

from . import acceptance
from . import galois as gal
from .eklattice import EKParams, ek, ek_direct, lattice_from_ideal
from .errors import HeckeCMError, OutsideConvergenceRegion, PrecisionUnachievable, SpecParseError
from .golden import default_golden_dir, golden_checks
from .hecke import parse_character
from .lvalues import L_value
from .periods import cm_period, lattice_invariants
from .quadarith import ImagQuadField, parse_field, parse_ideal, unit_ideal
from .verify import NORMALIZATIONS, verify

PREC_MIN, PREC_MAX = 64, 4096
NUMERIC_ERRORS = (OutsideConvergenceRegion, PrecisionUnachievable)


@dataclass
class Config:
    prec: int = 192
    field: str | None = None
    character: str | None = None
    setting: str | None = None
    output: str | None = None

    def __post_init__(self):
        if not PREC_MIN <= self.prec <= PREC_MAX:
            raise ValueError(f"precision must lie in [{PREC_MIN}, {PREC_MAX}]")


def _digits(prec: int) -> int:
    return max(15, int(prec * math.log10(2)) - 5)


def _num(z, prec: int) -> dict:
    d = _digits(prec)
    with mpmath.workprec(prec + 20):
        z = mpmath.mpc(z)
        return {"re": mpmath.nstr(z.real, d), "im": mpmath.nstr(z.imag, d)}


def _bound(x) -> str:
    return f"{float(x):.3e}"


# ---------------------------------------------------------------------------
# galois


def _names(S, reps) -> list[str]:
    return [S.element_names[r] for r in sorted(reps)]


def _galois_field(S, args):
    return S.field(args.field) if args.field else S.top


def cmd_galois(args) -> dict:
    S = gal.load_setting(args.setting)
    if args.action == "demo":
        return _galois_demo(S)
    fld = _galois_field(S, args)
    if args.action in ("reflex", "sign"):
        if not args.type:
            raise SpecParseError("--type is required")
        phi = gal.cm_type(S, fld, gal.parse_members(S, fld, args.type))
        if args.action == "reflex":
            E, star = gal.reflex(S, phi)
            return {"field": fld.name, "cm_type": _names(S, phi.members), "reflex_field": E.name, "reflex_type": _names(S, star.members)}
        eta = S.element(args.eta)
        tau = S.element(args.tau)
        return {"field": fld.name, "cm_type": _names(S, phi.members), "eta": args.eta, "tau": args.tau, "epsilon": gal.epsilon_sign(S, phi, eta, tau)}
    if args.action == "critical":
        if not args.mu:
            raise SpecParseError("--mu is required")
        mu = gal.parse_type(S, fld, args.mu)
        dec = gal.critical_decompose(S, mu)
        out = {"field": fld.name, "mu": gal.format_type(S, mu), "critical": dec is not None}
        if dec is not None:
            xi = gal.xi_infinity_type(S, dec)
            out.update(
                cm_type=_names(S, dec.cm_type.members),
                alpha=gal.format_type(S, dec.alpha),
                beta=gal.format_type(S, dec.beta),
                w=dec.weight,
                reflex_field=xi.field.name,
                xi=gal.format_type(S, xi),
            )
        return out
    raise ValueError(f"unknown galois action {args.action!r}")


def _galois_demo(S) -> dict:
    G = S.group
    fields = []
    for f in S.fields:
        entry = {
            "field": f.name,
            "subgroup": _names(S, f.subgroup),
            "embeddings": [gal.embedding_name(S, f, r) for r in gal._reps(S, f)],
            "cm": gal.is_cm_field(S, f),
            "totally_real": gal.is_totally_real(S, f),
        }
        types = []
        if gal.is_totally_imaginary(S, f):
            try:
                cm = gal.cm_types(S, f)
            except HeckeCMError:
                cm = []
            for phi in cm:
                E, star = gal.reflex(S, phi)
                eps = {
                    S.element_names[eta]: [gal.epsilon_sign(S, phi, eta, tau) for tau in range(G.order)]
                    for eta in gal._reps(S, E)
                }
                types.append({"cm_type": _names(S, phi.members), "reflex_field": E.name, "reflex_type": _names(S, star.members), "epsilon": eps})
        entry["cm_types"] = types
        fields.append(entry)
    return {"order": G.order, "conj": S.element_names[S.conj], "elements": list(S.element_names), "epsilon_columns": list(S.element_names), "fields": fields}


# ---------------------------------------------------------------------------
# numerics

_NAMED_LATTICES = {"Z[i]": 1, "Z[rho]": 3, "Z[zeta3]": 3, "Z[w]": None}


def parse_lattice(text: str, field: str | None):
    """'Z[i]', 'Z[rho]', or an ideal expression together with --field."""
    t = text.strip().replace(" ", "")
    if t in _NAMED_LATTICES and _NAMED_LATTICES[t] is not None:
        return lattice_from_ideal(unit_ideal(ImagQuadField(_NAMED_LATTICES[t])))
    if field is None:
        raise SpecParseError(f"lattice {text!r} needs --field")
    F = parse_field(field)
    if t in ("O", "Z[w]"):
        return lattice_from_ideal(unit_ideal(F))
    return lattice_from_ideal(parse_ideal(F, t))


def _parse_number(text: str):
    try:
        return mpmath.mpmathify(text.replace(" ", "").replace("i", "j"))
    except (ValueError, TypeError):
        raise SpecParseError(f"cannot parse number {text!r}") from None


def cmd_ek(args) -> dict:
    cfg = Config(prec=args.prec)
    with mpmath.workprec(cfg.prec + 20):
        L = parse_lattice(args.lattice, args.field)
        p = EKParams(args.b, args.a, _parse_number(args.t), _parse_number(args.s), args.gamma)
        v = ek(p, L, cfg.prec, split=_parse_number(args.split))
    out = {
        "b": args.b,
        "a": args.a,
        "t": args.t,
        "s": args.s,
        "gamma": args.gamma,
        "lattice": args.lattice,
        "prec": cfg.prec,
        "value": _num(v, cfg.prec),
        "error_bound": _bound(mpmath.mpf(2) ** (-(cfg.prec - 10)) * max(1, abs(v))),
    }
    if args.direct is not None:
        with mpmath.workprec(cfg.prec + 20):
            d, bound = ek_direct(p, L, R=args.direct, prec=cfg.prec)
        out["direct"] = {"R": str(args.direct), "value": _num(d, cfg.prec), "tail_bound": _bound(bound)}
    return out


def cmd_lvalue(args) -> dict:
    cfg = Config(prec=args.prec, character=args.char)
    chi = parse_character(cfg.character)
    rep = L_value(chi, _parse_number(args.s), cfg.prec, method=args.method, nmax=args.nmax)
    return rep.to_json()


def cmd_period(args) -> dict:
    cfg = Config(prec=args.prec, field=args.field)
    F = parse_field(cfg.field)
    per = cm_period(F, cfg.prec)
    inv = lattice_invariants(lattice_from_ideal(unit_ideal(F)), cfg.prec)
    with mpmath.workprec(cfg.prec):
        rescaled = lattice_invariants(per.lattice, cfg.prec)
    return {
        "field": F.name,
        "prec": cfg.prec,
        "g2": _num(inv.g2, cfg.prec),
        "g3": _num(inv.g3, cfg.prec),
        "j": str(per.j),
        "omega": _num(per.omega, cfg.prec),
        "normalization": per.normalization,
        "model": {"g2": _num(rescaled.g2, cfg.prec), "g3": _num(rescaled.g3, cfg.prec)},
        "error_bound": _bound(mpmath.mpf(2) ** (-(cfg.prec - 10)) * max(1, abs(per.omega))),
    }


def cmd_verify(args) -> dict:
    cfg = Config(prec=args.prec, character=args.char, output=args.json)
    chi = parse_character(cfg.character)
    rep = verify(chi, cfg.prec, max_degree=args.maxdeg, max_height=args.maxheight, omega_scale=_parse_number(args.omega_scale), normalization=args.normalization)
    out = rep.to_json()
    if cfg.output:
        Path(cfg.output).write_text(json.dumps(out, indent=2) + "\n", encoding="utf-8")
    return out


# ---------------------------------------------------------------------------
# selftest


def run_selftest(filters: list[str] | None = None, golden_dir: str | None = None) -> tuple[bool, dict]:
    filters = filters or []
    results = []
    for cid, (module, fn) in acceptance.CRITERIA.items():
        if filters and cid not in filters and module not in filters:
            continue
        results.append(fn())
    gdir = Path(golden_dir) if golden_dir else default_golden_dir()
    gmod = None
    if filters:
        mods = [f for f in filters if f in ("galois", "quadarith", "hecke", "eklattice", "lvalues", "periods", "verify")]
        if "golden" not in filters:
            gmod = mods
    if gmod is None:
        results.extend(golden_checks(gdir))
    else:
        for m in gmod:
            results.extend(golden_checks(gdir, module=m))
    passed = all(r.passed for r in results) and bool(results)
    summary = {
        "passed": passed,
        "n_checks": len(results),
        "n_failed": sum(not r.passed for r in results),
        "golden_dir": str(gdir),
        "checks": [{"name": r.name, "passed": r.passed, "seconds": f"{r.seconds:.2f}", "details": r.details} for r in results],
    }
    return passed, summary


def cmd_selftest(args) -> tuple[dict, int]:
    t0 = time.perf_counter()
    filters = [f for part in (args.filter or []) for f in part.split(",") if f]
    passed, summary = run_selftest(filters, args.golden_dir)
    summary["seconds"] = f"{time.perf_counter() - t0:.1f}"
    for c in summary["checks"]:
        print(("PASS " if c["passed"] else "FAIL ") + c["name"], file=sys.stderr)
        if not c["passed"]:
            for d in c["details"]:
                if d.startswith("failed"):
                    print("    " + d, file=sys.stderr)
    return summary, 0 if passed else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="heckecm", description="CM combinatorics and critical Hecke L-values")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("galois", help="CM-types, reflex, epsilon signs, critical decompositions")
    g.add_argument("action", choices=["reflex", "sign", "critical", "demo"])
    g.add_argument("--setting", required=True, help="built-in name (C2, zeta5, C4, C2xC2, S3) or settings file")
    g.add_argument("--field", help="field name (default: the Galois closure)")
    g.add_argument("--type", help="CM-type as a comma list of embeddings, e.g. e1,e2")
    g.add_argument("--tau", default="1")
    g.add_argument("--eta", default="1")
    g.add_argument("--mu", help="infinity type, e.g. '2c-3'")

    e = sub.add_parser("ek", help="Eisenstein-Kronecker series")
    e.add_argument("--b", type=int, required=True)
    e.add_argument("--a", type=int, required=True)
    e.add_argument("--lattice", required=True, help="'Z[i]', 'Z[rho]', or an ideal expression with --field")
    e.add_argument("--field")
    e.add_argument("--gamma", type=int, default=1)
    e.add_argument("--s", default="0")
    e.add_argument("--t", default="0")
    e.add_argument("--split", default="1")
    e.add_argument("--direct", type=float, help="also sum directly to this radius")
    e.add_argument("--prec", type=int, default=192)

    lv = sub.add_parser("lvalue", help="Hecke L-value")
    lv.add_argument("--char", required=True)
    lv.add_argument("--s", default="0")
    lv.add_argument("--method", choices=["eseries", "dirichlet"], default="eseries")
    lv.add_argument("--nmax", type=int, default=10**6)
    lv.add_argument("--prec", type=int, default=192)

    p = sub.add_parser("period", help="CM period of an imaginary quadratic field")
    p.add_argument("--field", required=True)
    p.add_argument("--prec", type=int, default=192)

    v = sub.add_parser("verify", help="Deligne ratio and its algebraicity certificate")
    v.add_argument("--char", required=True)
    v.add_argument("--prec", type=int, default=256)
    v.add_argument("--maxdeg", type=int, default=2)
    v.add_argument("--maxheight", type=int, default=10**8)
    v.add_argument("--omega-scale", default="1")
    v.add_argument("--normalization", choices=list(NORMALIZATIONS), default="standard")
    v.add_argument("--json", help="also write the report to this path")

    st = sub.add_parser("selftest", help="run the acceptance battery and golden checks")
    st.add_argument("--filter", action="append", help="module name, criterion number, or 'golden' (repeatable)")
    st.add_argument("--golden-dir")
    return ap


COMMANDS = {
    "galois": cmd_galois,
    "ek": cmd_ek,
    "lvalue": cmd_lvalue,
    "period": cmd_period,
    "verify": cmd_verify,
}


def _fail(code: str, message: str, status: int, extra: dict | None = None) -> int:
    err = {"error": code, "message": message}
    err.update(extra or {})
    print(json.dumps(err), file=sys.stderr)
    return status


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "selftest":
            out, status = cmd_selftest(args)
        else:
            out, status = COMMANDS[args.command](args), 0
    except SpecParseError as exc:
        extra = {k: getattr(exc, k) for k in ("line", "column") if getattr(exc, k, None) is not None}
        return _fail(exc.code, str(exc), 2, extra)
    except NUMERIC_ERRORS as exc:
        return _fail(exc.code, str(exc), 3)
    except HeckeCMError as exc:
        return _fail(exc.code, str(exc), 2)
    except (ValueError, OSError) as exc:
        return _fail("invalid_argument", str(exc), 2)
    print(json.dumps(out, indent=2))
    return status


if __name__ == "__main__":
    sys.exit(main())
