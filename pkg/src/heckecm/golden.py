"""Golden-value files: one JSON object per file.

    {
      "name": "...",
      "module": "eklattice",
      "kind": "ek" | "partial_L" | "lvalue" | "period" | "g2" | "verify" | "epsilon" | "xi" | "reflex",
      "inputs": {...},
      "value": {"re": "...", "im": "..."} | [..] | "...",
      "tolerance": "1e-40",
      "oracle": "<command that produced value>"
    }

Numeric values are compared relative to max(1, |golden|).
"""
from __future__ import annotations

import json
import os
import time
from pathlib import Path

import mpmath

from . import galois as gal
from .acceptance import CheckResult
from .eklattice import EKParams, ek, lattice_from_ideal
from .hecke import parse_character
from .lvalues import L_value, partial_L
from .periods import cm_period, lattice_invariants
from .quadarith import parse_field, parse_ideal, unit_ideal
from .verify import verify

PREC = 192


def default_golden_dir() -> Path:
    env = os.environ.get("HECKECM_GOLDEN")
    if env:
        return Path(env)
    # editable/source layout: <repo>/src/heckecm/golden.py -> <repo>/golden
    return Path(__file__).resolve().parents[2] / "golden"


def load_goldens(directory: Path | None = None) -> list[tuple[Path, dict | None, str | None]]:
    directory = Path(directory or default_golden_dir())
    out = []
    for path in sorted(directory.glob("*.json")):
        try:
            out.append((path, json.loads(path.read_text(encoding="utf-8")), None))
        except (OSError, json.JSONDecodeError) as exc:
            out.append((path, None, f"unreadable golden file: {exc}"))
    return out


def _complex(v) -> mpmath.mpc:
    if isinstance(v, dict):
        return mpmath.mpc(mpmath.mpf(v["re"]), mpmath.mpf(v.get("im", "0")))
    return mpmath.mpc(mpmath.mpf(v))


def _compute(kind: str, inp: dict):
    if kind == "ek":
        F = parse_field(inp["field"])
        L = lattice_from_ideal(parse_ideal(F, inp["lattice"]))
        p = EKParams(int(inp["b"]), int(inp["a"]), mpmath.mpmathify(inp.get("t", "0")), mpmath.mpmathify(inp.get("s", "0")), int(inp.get("gamma", 1)))
        return ek(p, L, PREC)
    if kind == "partial_L":
        chi = parse_character(inp["char"])
        return partial_L(chi, parse_ideal(chi.field, inp["b"]), mpmath.mpmathify(inp.get("s", "0")), PREC)
    if kind == "lvalue":
        chi = parse_character(inp["char"])
        return L_value(chi, mpmath.mpmathify(inp.get("s", "0")), PREC).total
    if kind == "period":
        return cm_period(parse_field(inp["field"]), PREC).omega
    if kind == "g2":
        F = parse_field(inp["field"])
        return lattice_invariants(lattice_from_ideal(unit_ideal(F)), PREC).g2
    if kind == "verify":
        chi = parse_character(inp["char"])
        rep = verify(chi, int(inp.get("prec", 256)), normalization=inp.get("normalization", "standard"))
        return rep.polynomial
    if kind == "epsilon":
        S = gal.load_setting(inp["setting"])
        fld = inp.get("field") or S.top
        phi = gal.cm_type(S, fld, gal.parse_members(S, fld, inp["type"]))
        return gal.epsilon_sign(S, phi, S.element(inp["eta"]), S.element(inp["tau"]))
    if kind == "xi":
        S = gal.load_setting(inp["setting"])
        fld = inp.get("field") or S.top
        dec = gal.critical_decompose(S, gal.parse_type(S, fld, inp["mu"]))
        xi = gal.xi_infinity_type(S, dec)
        return xi.field.name + ": " + gal.format_type(S, xi)
    if kind == "reflex":
        S = gal.load_setting(inp["setting"])
        fld = inp.get("field") or S.top
        E, star = gal.reflex(S, gal.cm_type(S, fld, gal.parse_members(S, fld, inp["type"])))
        return E.name + ": " + ",".join(S.element_names[r] for r in sorted(star.members))
    raise ValueError(f"unknown golden kind {kind!r}")


def check_golden(path: Path, data: dict | None, error: str | None) -> CheckResult:
    name = f"golden {path.stem}"
    t0 = time.perf_counter()
    if error is not None:
        return CheckResult(name, False, 0.0, ["failed: " + error])
    try:
        got = _compute(data["kind"], data["inputs"])
        want = data["value"]
        if isinstance(want, (dict, str)) and data["kind"] in ("ek", "partial_L", "lvalue", "period", "g2"):
            with mpmath.workprec(PREC):
                w = _complex(want)
                err = abs(mpmath.mpc(got) - w) / max(1, abs(w))
                tol = mpmath.mpf(data.get("tolerance", "1e-40"))
                ok = err <= tol
                detail = f"rel err {mpmath.nstr(err, 3)} (tolerance {data.get('tolerance', '1e-40')})"
        else:
            ok = got == want
            detail = f"got {got!r}, golden {want!r}"
    except Exception as exc:  # a broken golden file must fail its own check, not the run
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return CheckResult(name, ok, time.perf_counter() - t0, [detail if ok else "failed: " + detail])


def golden_checks(directory: Path | None = None, module: str | None = None) -> list[CheckResult]:
    out = []
    for path, data, err in load_goldens(directory):
        if module and data is not None and data.get("module") != module:
            continue
        out.append(check_golden(path, data, err))
    return out
