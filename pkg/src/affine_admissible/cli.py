"""Command-line entry point: ``affine-admissible <command> ...``.

Exit codes: 0 success, 1 a check failed, 2 usage or validation error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from .admissible import AdmissibleClass, enumerate_admissible, validate_level
from .errors import GateError, LevelError
from .modular import (
    daha_specialized_matrices,
    daha_square_permutation,
    intertwiner_comparison,
    kw_matrices,
    sl2z_residuals,
)
from .rootdata import RootSystem, build_root_system, parse_kind
from .spaltenstein import (
    BRUTE_FORCE_GATE,
    count_closed_form,
    enumerate_levi_admissible,
    free_orbit_count,
    resolve_levi,
    s_u_quotient,
    table1_scan,
)
from .verify import MATRIX_GATE, TOL_RATIO, TOL_RELATION, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _frac(x) -> list[int]:
    x = Fraction(x)
    return [x.numerator, x.denominator]


def _fracs(xs) -> list[list[int]]:
    return [_frac(x) for x in xs]


def weight_record(rs: RootSystem, u: int, c: AdmissibleClass) -> dict:
    lv = validate_level(rs, u)
    p = c.rep
    return {
        "kind": str(rs.kind),
        "rank": rs.rank,
        "u": u,
        "k": _frac(lv.k),
        "class_id": c.class_id,
        "b": list(p.b),
        "b_minus": list(p.b_minus),
        "u_b_word": list(p.u_b.word),
        "length": p.length,
        "epsilon": p.u_b.sign,
        "weight": _fracs(c.weight.finite),
        "anomaly": _frac(c.weight.anomaly),
    }


def _complex_rows(m: np.ndarray) -> list[list[dict]]:
    return [[{"re": float(z.real), "im": float(z.imag)} for z in row] for row in m]


def matrix_record(name: str, ids: list[int], m: np.ndarray, residuals: dict | None = None) -> dict:
    return {"matrix": name, "index": ids, "entries": _complex_rows(m), "residuals": residuals or {}}


# --- commands ------------------------------------------------------------------

def cmd_roots(args) -> tuple[int, Any]:
    rs = build_root_system(args.type)
    rec = {
        "kind": str(rs.kind),
        "rank": rs.rank,
        "cartan": rs.cartan.tolist(),
        "d": list(rs.d),
        "marks": list(rs.marks),
        "comarks": list(rs.comarks),
        "h_dual": rs.dual_coxeter,
        "coxeter": rs.coxeter,
        "lacing": rs.lacing,
        "e": rs.e,
        "m": rs.m,
        "J": list(rs.J),
        "exponents": list(rs.exponents),
        "weyl_order": rs.weyl_order,
        "theta_coroot": list(rs.theta_coroot),
        "rho_bar": _fracs(rs.to_coroot(rs.rho_omega)),
        "positive_coroots": [list(c) for c in rs.positive_coroots],
    }
    return EXIT_OK, rec


def cmd_adm(args) -> tuple[int, Any]:
    rs = build_root_system(args.type)
    classes = enumerate_admissible(rs, args.u)
    return EXIT_OK, [weight_record(rs, args.u, c) for c in classes]


def cmd_fixedpoints(args) -> tuple[int, Any]:
    rs = build_root_system(args.type)
    levi = resolve_levi(rs, args.levi, args.u)
    classes = enumerate_levi_admissible(rs, args.u, levi)
    return EXIT_OK, [dict(weight_record(rs, args.u, c), levi=list(levi.subset)) for c in classes]


def cmd_count(args) -> tuple[int, Any]:
    rs = build_root_system(args.type)
    levi = resolve_levi(rs, args.levi, args.u)
    closed = count_closed_form(rs, args.u, levi)
    rec: dict[str, Any] = {
        "kind": str(rs.kind),
        "u": args.u,
        "levi": list(levi.subset),
        "components": levi.describe(),
        "exponents": list(levi.exponents),
        "weyl_order_f": levi.order,
        "closed_form": closed,
    }
    status = EXIT_OK
    q = s_u_quotient(rs, args.u)
    if levi.order <= BRUTE_FORCE_GATE and q.order * levi.order <= 5 * 10**7:
        free = free_orbit_count(q, levi)
        rec["brute_force"] = free // rs.e
        if free != rs.e * closed:
            status = EXIT_FAIL
    else:
        rec["brute_force"] = None
    return status, rec


def cmd_modular(args) -> tuple[int, Any]:
    rs = build_root_system(args.type)
    classes = enumerate_admissible(rs, args.u)
    if len(classes) > MATRIX_GATE:
        raise GateError(f"{len(classes)} classes exceed the matrix gate {MATRIX_GATE}")
    kw = kw_matrices(rs, args.u, classes)
    daha = daha_specialized_matrices(rs, args.u, classes)
    ids = kw.class_ids
    res_lift = sl2z_residuals(kw.S, kw.T_lift)
    res_lit = sl2z_residuals(kw.S, kw.T)
    comp = intertwiner_comparison(kw, daha)
    phase = np.exp(1j * np.pi * float(rs.rho_norm2) / (2 * rs.dual_coxeter))
    perm_ok, _ = daha_square_permutation(daha)
    residuals = {
        "st3_minus_s2": res_lift["st3_minus_s2"],
        "s4_minus_id": res_lift["s4_minus_id"],
        "stated_T_st3_minus_s2": res_lit["st3_minus_s2"],
        "t_relation": float(np.max(np.abs(daha.T - phase * kw.T))),
        "unitarity": float(np.max(np.abs(kw.S @ kw.S.conj().T - np.eye(len(ids))))),
        "daha_square_is_permutation": perm_ok,
        **{f"intertwiner_{k}": v for k, v in comp.as_dict().items()},
    }
    out = {
        "kind": str(rs.kind),
        "u": args.u,
        "matrices": [
            matrix_record("S_kw", ids, kw.S),
            matrix_record("T_kw", ids, kw.T),
            matrix_record("T_lift", ids, kw.T_lift),
            matrix_record("S_daha", ids, daha.S),
            matrix_record("T_daha", ids, daha.T),
        ],
        "residuals": residuals,
    }
    status = EXIT_OK
    if args.check:
        ok = (max(res_lift.values()) <= TOL_RELATION and residuals["t_relation"] <= 1e-10
              and comp.max_deviation <= TOL_RATIO and abs(comp.abs_a2_times_u_l - 1) <= TOL_RATIO)
        status = EXIT_OK if ok else EXIT_FAIL
    return status, out


def cmd_table1(args) -> tuple[int, Any]:
    report = table1_scan(args.max_rank, range(2, args.max_u + 1))
    return EXIT_OK, report


def cmd_verify(args) -> tuple[int, Any]:
    rs = build_root_system(args.type)
    levi = resolve_levi(rs, args.levi, args.u) if args.levi else None
    checks = run_suite(rs, args.u, levi)
    recs = [{"check": c.name, "status": c.status, "detail": c.detail} for c in checks]
    failed = any(c.passed is False for c in checks)
    return (EXIT_FAIL if failed else EXIT_OK), recs


# --- output --------------------------------------------------------------------

def _flat(v) -> str:
    if isinstance(v, list):
        return " ".join(_flat(x) for x in v)
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True)
    return str(v)


_RATIONAL = {"k", "anomaly"}
_RATIONAL_LISTS = {"weight", "rho_bar"}


def _cell(key: str, v) -> str:
    if key in _RATIONAL:
        return f"{v[0]}/{v[1]}" if v[1] != 1 else str(v[0])
    if key in _RATIONAL_LISTS:
        return " ".join(_cell("k", x) for x in v)
    return _flat(v)


def _csv(payload) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if isinstance(payload, dict) and "matrices" in payload:
        # complex entries as re/im column pairs
        w.writerow(["matrix", "row", "col", "re", "im"])
        for m in payload["matrices"]:
            for i, row in enumerate(m["entries"]):
                for j, z in enumerate(row):
                    w.writerow([m["matrix"], m["index"][i], m["index"][j], repr(z["re"]), repr(z["im"])])
        w.writerow([])
        w.writerow(["residual", "value"])
        for k, v in payload["residuals"].items():
            w.writerow([k, v])
        return buf.getvalue()
    if isinstance(payload, dict) and "hits" in payload:
        payload = payload["hits"]
    rows = payload if isinstance(payload, list) else [payload]
    if not rows:
        return ""
    keys = list(rows[0].keys())
    w.writerow(keys)
    for r in rows:
        w.writerow([_cell(k, r.get(k)) for k in keys])
    return buf.getvalue()


def _text(payload) -> str:
    lines = []
    if isinstance(payload, dict) and "matrices" in payload:
        for m in payload["matrices"]:
            lines.append(f"{m['matrix']} (index {m['index']})")
            for row in m["entries"]:
                lines.append("  " + "  ".join(f"{z['re']:+.6f}{z['im']:+.6f}i" for z in row))
        lines.append("residuals:")
        lines += [f"  {k}: {v}" for k, v in payload["residuals"].items()]
        return "\n".join(lines) + "\n"
    if isinstance(payload, dict) and "hits" in payload:
        for h in payload["hits"]:
            lines.append(f"{h['kind']:4s} u={h['u']:<3d} {h['levi']:<16s} {h['row'] or 'EXTRA'}")
        lines.append(f"extra hits: {len(payload['extra'])}")
        return "\n".join(lines) + "\n"
    rows = payload if isinstance(payload, list) else [payload]
    for r in rows:
        if "check" in r:
            lines.append(f"[{r['status']}] {r['check']}: {r['detail']}")
        else:
            lines.append("  ".join(f"{k}={_cell(k, v)}" for k, v in r.items()))
    return "\n".join(lines) + "\n"


def render(payload, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=1) + "\n"
    if fmt == "csv":
        return _csv(payload)
    return _text(payload)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="affine-admissible",
                description="Boundary admissible weights, fixed points and modular data.")
    p.add_argument("--format", choices=["json", "csv", "text"], default="json")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(name, help_, with_u=True):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("type", help="Cartan type, e.g. A2 or E7")
        if with_u:
            sp.add_argument("u", type=int)
        sp.add_argument("--format", choices=["json", "csv", "text"], default=argparse.SUPPRESS)
        return sp

    common("roots", "finite root data", with_u=False).set_defaults(func=cmd_roots)
    common("adm", "admissible classes and weights").set_defaults(func=cmd_adm)
    sp = common("fixedpoints", "Levi-admissible classes")
    sp.add_argument("--levi", nargs="*", default=[])
    sp.set_defaults(func=cmd_fixedpoints)
    sp = common("count", "closed-form count for a Levi")
    sp.add_argument("--levi", nargs="*", required=True)
    sp.set_defaults(func=cmd_count)
    sp = common("modular", "modular matrices and residuals")
    sp.add_argument("--check", action="store_true")
    sp.set_defaults(func=cmd_modular)
    sp = sub.add_parser("table1", help="scan for count 1")
    sp.add_argument("--max-u", type=int, required=True)
    sp.add_argument("--max-rank", type=int, default=8)
    sp.add_argument("--format", choices=["json", "csv", "text"], default=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_table1)
    sp = common("verify", "full invariant suite")
    sp.add_argument("--levi", nargs="*", default=None)
    sp.set_defaults(func=cmd_verify)
    return p


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "type", None) is not None:
            parse_kind(args.type)
        status, payload = args.func(args)
    except UsageError as exc:
        err.write(json.dumps({"error": "usage", "message": str(exc)}) + "\n")
        return EXIT_USAGE
    except (LevelError, GateError, ValueError) as exc:
        err.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return EXIT_USAGE
    out.write(render(payload, args.format))
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
