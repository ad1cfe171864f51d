"""Command-line interface: ``python -m amwp <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from typing import Sequence

from . import __version__, catalog
from .cubic import S_NORMALIZATION, CubicError, CubicForm, cubic_from_json
from .curvature import KAPPA, curvature_at, ricci_and_scalar
from .exactalg import PoleError, to_rational
from .identities import blow_up_scan, parse_path, scan_csv
from .metric import amwp_metric
from .perturb import DomainError, Prepotential, asymptotic_curvature_test, load_prepotential, periodicity_test
from .toric import PolytopeError, lattice_points, load_polytope, polar_dual, polytope_report
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    source: str
    output: str | None
    fmt: str
    seed: int


def _meta(cfg: RunConfig) -> dict:
    return {
        "tool": "amwp",
        "version": __version__,
        "command": cfg.command,
        "source": cfg.source,
        "seed": cfg.seed,
        "kappa": KAPPA,
        "s_normalization": str(S_NORMALIZATION),
    }


def _meta_lines(cfg: RunConfig) -> list[str]:
    return [f"{k}={v}" for k, v in _meta(cfg).items()]


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(cfg: RunConfig, payload: dict) -> None:
    _emit(cfg, json.dumps({"meta": _meta(cfg), **payload}, indent=2, sort_keys=True) + "\n")


def _emit_text(cfg: RunConfig, lines: Sequence[str]) -> None:
    _emit(cfg, "".join(f"# {m}\n" for m in _meta_lines(cfg)) + "".join(line + "\n" for line in lines))


def _load_cubic(args) -> tuple[CubicForm, str]:
    if args.catalog:
        try:
            entry = catalog.get(args.catalog)
        except catalog.UnknownEntry as exc:
            raise InputError(str(exc.args[0])) from None
        if entry.cubic is None:
            raise InputError(f"catalog entry {args.catalog!r} has no numeric cubic")
        return entry.cubic, f"catalog:{args.catalog}"
    if args.input:
        try:
            with open(args.input, encoding="utf-8") as fh:
                return cubic_from_json(json.load(fh)), args.input
        except (OSError, json.JSONDecodeError, CubicError, KeyError, TypeError, ValueError) as exc:
            raise InputError(f"cannot read cubic from {args.input}: {exc}") from None
    raise InputError("give --catalog NAME or --input FILE")


def _parse_point(text: str, r: int) -> list:
    try:
        y = [to_rational(t) for t in text.split(",")]
    except (ValueError, ZeroDivisionError, TypeError):
        raise InputError(f"bad point {text!r}") from None
    if len(y) != r:
        raise InputError(f"point {text!r} needs {r} coordinates")
    return y


def _parse_samples(text: str) -> list:
    try:
        return [to_rational(t) for t in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise InputError(f"bad sample list {text!r}") from None


def _cfg(args, source: str) -> RunConfig:
    return RunConfig(args.command, source, args.output, args.format, args.seed)


# -- commands ------------------------------------------------------------------

def cmd_metric(args) -> int:
    f, src = _load_cubic(args)
    cfg = _cfg(args, src)
    m = amwp_metric(f)
    detg = m.detg.to_str()
    payload = {"cubic": str(f), "detg": detg}
    if args.at:
        y = _parse_point(args.at, f.r)
        payload["point"] = [str(v) for v in y]
        payload["g"] = [[str(v) for v in row] for row in m.at(y)]
    if cfg.fmt == "json":
        _emit_json(cfg, payload)
    else:
        lines = [f"f = {payload['cubic']}", f"det g = {detg}"]
        if args.at:
            lines.append(f"g({args.at}) =")
            lines.extend("  [" + ", ".join(row) + "]" for row in payload["g"])
        _emit_text(cfg, lines)
    return EXIT_OK


def cmd_scalar(args) -> int:
    f, src = _load_cubic(args)
    cfg = _cfg(args, src)
    m = amwp_metric(f)
    if args.ray:
        try:
            path = parse_path(args.ray)
        except (ValueError, SyntaxError) as exc:
            raise InputError(str(exc)) from None
        if not args.samples:
            raise InputError("--ray needs --samples")
        rows = blow_up_scan(f, path, _parse_samples(args.samples), m)
        if cfg.fmt == "json":
            _emit_json(cfg, {"ray": args.ray, "rows": [
                {"s": str(r.s), "y": [str(v) for v in r.y], "f": str(r.f),
                 "scalar": None if r.scalar is None else str(r.scalar),
                 "scalar_float": None if r.scalar is None else float(r.scalar), "in_cone": r.in_cone}
                for r in rows]})
        else:
            _emit(cfg, scan_csv(rows, _meta_lines(cfg) + [f"ray={args.ray}"]))
        return EXIT_OK
    payload = {"cubic": str(f)}
    if args.symbolic:
        _, scalar = ricci_and_scalar(m)
        payload["scalar"] = scalar.to_str()
        if args.catalog == "STU":
            payload["matches_published"] = scalar == catalog.STU_PRINTED_SCALAR
    if args.at:
        y = _parse_point(args.at, f.r)
        try:
            val = curvature_at(m, y).scalar
        except PoleError as exc:
            raise InputError(str(exc)) from None
        payload["point"] = [str(v) for v in y]
        payload["scalar_at"] = str(val)
        payload["scalar_at_float"] = float(val)
    if not args.symbolic and not args.at:
        raise InputError("give --symbolic, --at or --ray")
    if cfg.fmt == "json":
        _emit_json(cfg, payload)
    else:
        lines = []
        if "scalar" in payload:
            lines.append(f"scalar = {payload['scalar']}")
        if "matches_published" in payload:
            lines.append(f"matches published expression: {payload['matches_published']}")
        if "scalar_at" in payload:
            lines.append(f"scalar({args.at}) = {payload['scalar_at']} ~ {payload['scalar_at_float']!r}")
        _emit_text(cfg, lines)
    return EXIT_OK if payload.get("matches_published", True) else EXIT_FAIL


def cmd_verify(args) -> int:
    cfg = _cfg(args, args.catalog or "builtin")
    names = SUITES if args.suite == "all" else (args.suite,)
    if args.catalog:
        try:
            entry = catalog.get(args.catalog)
        except catalog.UnknownEntry as exc:
            raise InputError(str(exc.args[0])) from None
        if entry.cubic is None:
            raise InputError(f"catalog entry {args.catalog!r} has no numeric cubic")
    results = []
    for name in names:
        cat = args.catalog if name in ("bounds", "slice_formula") else None
        try:
            results.append(run_suite(name, args.seed, args.n, cat))
        except ValueError as exc:
            raise InputError(f"suite {name}: {exc}") from None
    ok = all(r.ok for r in results)
    if cfg.fmt == "json":
        _emit_json(cfg, {"ok": ok, "suites": [
            {"name": r.name, "passed": r.passed, "total": r.total, "ok": r.ok,
             "failures": [str(x) for x in r.failures], "info": r.info} for r in results]})
    else:
        lines = []
        for r in results:
            lines.append(f"{'PASS' if r.ok else 'FAIL'} {r.name}: {r.passed}/{r.total}")
            for k, v in sorted(r.info.items()):
                lines.append(f"  {k}: {v}")
            for x in r.failures:
                lines.append(f"  failed: {x}")
        lines.append("ALL PASS" if ok else "FAILURES PRESENT")
        _emit_text(cfg, lines)
    return EXIT_OK if ok else EXIT_FAIL


def _load_prepotential(args) -> tuple[Prepotential, str]:
    if args.input:
        try:
            return load_prepotential(args.input), args.input
        except (OSError, json.JSONDecodeError, CubicError, KeyError, TypeError, ValueError) as exc:
            raise InputError(f"cannot read prepotential from {args.input}: {exc}") from None
    f, src = _load_cubic(args)
    r = f.r
    try:
        tail = []
        for item in args.tail or ():
            m, c = item.split(":")
            tail.append((tuple(int(k) for k in m.split(",")), complex(c.replace("i", "j"))))
        bL = tuple(complex(t.replace("i", "j")) for t in args.linear.split(",")) if args.linear else ()
        return Prepotential(f, (), bL, 0j, tuple(tail)), src
    except ValueError as exc:
        raise InputError(f"bad prepotential options: {exc}") from None


def cmd_perturb(args) -> int:
    P, src = _load_prepotential(args)
    cfg = _cfg(args, src)
    r = P.r
    out = io.StringIO()
    for line in _meta_lines(cfg):
        out.write(f"# {line}\n")
    w = csv.writer(out, lineterminator="\n")
    try:
        if args.experiment == "periodicity":
            t = [complex(v.replace("i", "j")) for v in args.point.split(",")]
            if len(t) != r:
                raise InputError(f"--point needs {r} complex coordinates")
            shifts = [[int(k) for k in s.split(",")] for s in args.shifts.split(";")]
            rep = periodicity_test(P, t, shifts)
            w.writerow(["shift", "deviation", "max_entry"])
            w.writerow(["0", repr(0.0), repr(rep.base_max_entry)])
            for n, dev, size in zip(rep.shifts, rep.deviations, rep.max_entries):
                w.writerow([" ".join(str(k) for k in n), repr(dev), repr(size)])
        else:
            y0 = [float(v) for v in args.ray.split(",")]
            scales = [float(v) for v in args.scales.split(",")]
            rows = asymptotic_curvature_test(P, [0.0] * r, y0, scales, curvature=not args.no_curvature)
            w.writerow(["s", "metric_deviation", "curvature_deviation"])
            for row in rows:
                w.writerow([repr(row.s), repr(row.metric_deviation),
                            "" if row.curvature_deviation is None else repr(row.curvature_deviation)])
    except DomainError as exc:
        raise InputError(str(exc)) from None
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _emit(cfg, out.getvalue())
    return EXIT_OK


def cmd_polytope(args) -> int:
    try:
        if args.catalog:
            entry = catalog.get(args.catalog)
            if entry.polytope is None:
                raise InputError(f"catalog entry {args.catalog!r} is not a polytope")
            P, src = entry.polytope, f"catalog:{args.catalog}"
        elif args.input:
            P, src = load_polytope(args.input), args.input
        else:
            raise InputError("give --catalog NAME or --input FILE")
    except (catalog.UnknownEntry, PolytopeError, OSError, json.JSONDecodeError) as exc:
        raise InputError(str(exc)) from None
    cfg = _cfg(args, src)
    try:
        if args.action == "dual":
            D = polar_dual(P)
            payload = {"vertices": [list(v) for v in P.verts], "dual_vertices": [list(v) for v in D.verts]}
        elif args.action == "points":
            pts = lattice_points(P)
            payload = {"vertices": [list(v) for v in P.verts], "count": len(pts),
                       "lattice_points": [list(u) for u in pts]}
        else:
            payload = polytope_report(P)
    except PolytopeError as exc:
        raise InputError(str(exc)) from None
    _emit_json(cfg, payload)
    return EXIT_OK


def cmd_catalog(args) -> int:
    cfg = RunConfig("catalog", "builtin", args.output, "json", args.seed)
    if args.action == "list":
        if args.format == "json":
            _emit_json(cfg, {"entries": catalog.names()})
        else:
            _emit_text(cfg, catalog.names())
        return EXIT_OK
    if not args.name:
        raise InputError("catalog show needs a NAME")
    try:
        entry = catalog.get(args.name)
    except catalog.UnknownEntry as exc:
        raise InputError(str(exc.args[0])) from None
    _emit_json(cfg, {"entry": entry.to_json()})
    return EXIT_OK


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="amwp", description="Exact AMWP metric and curvature toolkit.")
    p.add_argument("--version", action="version", version=f"amwp {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats=("text", "json")):
        sp.add_argument("--output", "-o", help="write to this file instead of stdout")
        sp.add_argument("--format", choices=formats, default=formats[0])
        sp.add_argument("--seed", type=int, default=0)

    def source(sp):
        sp.add_argument("--catalog", help="catalog entry name, e.g. STU or type2(1,0,1)")
        sp.add_argument("--input", help="cubic JSON file")

    sp = sub.add_parser("metric", help="symbolic det g and optional exact g at a point")
    source(sp)
    sp.add_argument("--at", help="comma-separated rational point")
    common(sp)
    sp.set_defaults(func=cmd_metric)

    sp = sub.add_parser("scalar", help="scalar curvature: symbolic, at a point, or along a ray")
    source(sp)
    sp.add_argument("--symbolic", action="store_true")
    sp.add_argument("--at")
    sp.add_argument("--ray", help='path in s, e.g. "s^2,s,s"')
    sp.add_argument("--samples", help="comma-separated rational s values")
    common(sp, ("csv", "json", "text"))
    sp.set_defaults(func=cmd_scalar)

    sp = sub.add_parser("verify", help="run verification batteries")
    sp.add_argument("--suite", choices=SUITES + ("all",), default="all")
    sp.add_argument("--n", type=int, default=None, help="number of random cases")
    sp.add_argument("--catalog", help="cubic for the bounds / slice_formula suites")
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("perturb", help="numeric experiments with quantum-corrected prepotentials")
    sp.add_argument("experiment", choices=("periodicity", "asymptotic"))
    source(sp)
    sp.add_argument("--tail", action="append", help='tail term "m1,m2,m3:coef", e.g. "1,0,0:0.01"')
    sp.add_argument("--linear", help='linear coefficients, e.g. "1i,0,0"')
    sp.add_argument("--point", default="1i,1i,1i", help="base point for periodicity")
    sp.add_argument("--shifts", default="1,0,0;0,1,0;0,0,1", help="semicolon-separated integer shifts")
    sp.add_argument("--ray", default="1,1,1", help="direction y0 for the asymptotic scan")
    sp.add_argument("--scales", default="1,2", help="comma-separated s values")
    sp.add_argument("--no-curvature", action="store_true", help="metric deviations only")
    common(sp, ("csv",))
    sp.set_defaults(func=cmd_perturb)

    sp = sub.add_parser("polytope", help="polar dual, lattice points and faces of a lattice 4-simplex")
    sp.add_argument("action", choices=("dual", "points", "faces"))
    sp.add_argument("--catalog")
    sp.add_argument("--input")
    common(sp, ("json",))
    sp.set_defaults(func=cmd_polytope)

    sp = sub.add_parser("catalog", help="list or show built-in entries")
    sp.add_argument("action", choices=("list", "show"))
    sp.add_argument("name", nargs="?")
    common(sp)
    sp.set_defaults(func=cmd_catalog)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


__all__ = ["RunConfig", "build_parser", "main"]
