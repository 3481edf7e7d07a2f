"""Command-line interface.

Exit codes: 0 success, 1 comparison failure, 2 usage or input error,
3 numeric or internal failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys

from . import catalog as cat
from .angular import AngularChannel
from .radial import UnboundLevelError, kratzer_energy, morse_energy, morse_nmax
from .report import SpectrumReport, level_row, make_metadata

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

_RANGE = re.compile(r"^\s*(-?\d+)\s*(?:\.\.\s*(-?\d+)\s*)?$")


class UsageError(Exception):
    pass


def parse_range(text: str) -> list[int]:
    """``"a..b"`` (inclusive) or a single integer."""
    match = _RANGE.match(text)
    if not match:
        raise UsageError(f"invalid range {text!r}; expected N or A..B")
    lo = int(match.group(1))
    hi = int(match.group(2)) if match.group(2) is not None else lo
    if hi < lo:
        raise UsageError(f"invalid range {text!r}: end before start")
    return list(range(lo, hi + 1))


def _write(args, text: str):
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(args) -> list:
    if args.catalog:
        try:
            return cat.load_catalog_file(args.catalog)
        except OSError as exc:
            raise UsageError(f"cannot read catalog: {exc}") from None
        except cat.CatalogError as exc:
            raise UsageError(f"invalid catalog: {exc}") from None
    return cat.default_catalog()


def _molecule(records, name):
    try:
        return cat.find_molecule(records, name)
    except KeyError:
        raise UsageError(f"unknown molecule {name!r}") from None


# -- catalog -----------------------------------------------------------------

def cmd_catalog(args) -> int:
    if args.action == "validate":
        if not args.catalog:
            records = cat.default_catalog()
            problems = []
        else:
            problems = []
            try:
                records = cat.load_catalog_file(args.catalog, diagnostics=problems)
            except OSError as exc:
                raise UsageError(f"cannot read catalog: {exc}") from None
            except cat.CatalogError as exc:
                raise UsageError(str(exc)) from None
        lines = [f"rejected: {d}" for d in problems]
        for p in records:
            lines.extend(f"warning: {d}" for d in p.diagnostics)
        lines.append(f"{len(records)} valid record(s), {len(problems)} rejected")
        _write(args, "\n".join(lines) + "\n")
        return EXIT_USAGE if problems else EXIT_OK

    records = _load(args)
    if args.format in ("csv", "json"):
        _write(args, cat.dump_catalog(records, args.format))
        return EXIT_OK
    header = f"{'name':<6} {'De/eV':>7} {'re/Å':>7} {'ωe/cm-1':>8} {'μ/amu':>10} {'a/Å-1':>9} {'a·re':>6} {'Be/cm-1':>8} {'D0/eV':>7}"
    lines = [header, "-" * len(header)]
    for p in records:
        lines.append(
            f"{p.name:<6} {p.De:>7g} {p.re:>7g} {p.omega_e:>8g} {p.mu:>10g} {p.a:>9.6g} "
            f"{p.alpha:>6.3f} {cat.rotational_constant(p):>8.4f} {cat.chemical_dissociation(p)[0]:>7.4f}"
        )
    _write(args, "\n".join(lines) + "\n")
    return EXIT_OK


# -- levels ------------------------------------------------------------------

def compute_levels(records, molecule, potentials, ns, ntildes, ms, A, B, parity=None) -> SpectrumReport:
    p = _molecule(records, molecule)
    report = SpectrumReport(make_metadata(records))
    for potential in potentials:
        for n in ns:
            for nt in ntildes:
                for m in ms:
                    ch = AngularChannel(nt, m, A, B, parity if B == 0 else None)
                    if potential == "morse":
                        try:
                            level = morse_energy(p, n, ch)
                        except UnboundLevelError as exc:
                            report.diagnostics.append(
                                f"skipped {p.name} morse n={n} ñ={nt} m={m}: unbound "
                                f"(n_max={exc.n_max:.6g}, {exc.bound_count} bound levels)"
                            )
                            continue
                    else:
                        level = kratzer_energy(p, n, ch)
                    report.rows.append(level_row(level))
    return report


def cmd_levels(args) -> int:
    records = _load(args)
    ns, nts, ms = parse_range(args.n), parse_range(args.ntilde), parse_range(args.m)
    if min(ns) < 0 or min(nts) < 0:
        raise UsageError("n and ntilde must be non-negative")
    if args.A < 0 or args.B < 0:
        raise UsageError("A and B must be non-negative")
    potentials = ("morse", "kratzer") if args.potential == "both" else (args.potential,)
    report = compute_levels(records, args.molecule, potentials, ns, nts, ms, args.A, args.B, args.parity)
    _write(args, report.render(args.format))
    if args.format != "table":
        for d in report.diagnostics:
            print(d, file=sys.stderr)
    return EXIT_OK


# -- table2 ------------------------------------------------------------------

def cmd_table2(args) -> int:
    from .reproduction import bundled_reference, load_reference, reproduce

    records = _load(args)
    try:
        if args.reference:
            with open(args.reference, "rb") as fh:
                cells = load_reference(fh)
        else:
            cells = bundled_reference()
    except (OSError, ValueError) as exc:
        print(f"error: reference data unavailable: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    if args.molecule is not None:
        _molecule(records, args.molecule)
    summary = reproduce(records, cells, args.tol, args.molecule)
    verdict = "PASS" if summary.passed else "FAIL"
    ok = len(summary.checked) - len(summary.failures)

    if args.format == "json":
        payload = {
            "verdict": verdict,
            "tol": args.tol,
            "checked": len(summary.checked),
            "within_tol": ok,
            "max_abs_delta": summary.max_abs_delta,
            "cells": [
                {**vars(r.cell), "computed": r.computed, "delta": r.delta, "status": r.status, "hint": r.hint}
                for r in summary.results
            ],
        }
        _write(args, json.dumps(payload, indent=2) + "\n")
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["molecule", "n", "ntilde", "m", "A", "B", "potential", "reference", "computed", "delta", "status", "hint"])
        for r in summary.results:
            c = r.cell
            w.writerow([c.molecule, c.n, c.ntilde, c.m, f"{c.A:g}", f"{c.B:g}", c.potential,
                        f"{c.energy_ev:.6g}", f"{r.computed:.6g}", f"{r.delta:.2e}", r.status, r.hint])
        _write(args, buf.getvalue())
    else:
        lines = [f"{'molecule':<6} {'n':>2} {'ñ':>2} {'m':>2} {'A':>2} {'B':>2} {'potential':<8} "
                 f"{'reference':>10} {'computed':>10} {'delta':>10}  status"]
        for r in summary.results:
            c = r.cell
            line = (f"{c.molecule:<6} {c.n:>2} {c.ntilde:>2} {c.m:>2} {c.A:>2g} {c.B:>2g} {c.potential:<8} "
                    f"{c.energy_ev:>10.6g} {r.computed:>10.6g} {r.delta:>10.2e}  {r.status}")
            if r.hint:
                line += f"  ({r.hint})"
            lines.append(line)
        lines.append("")
        for r in summary.flagged:
            c = r.cell
            lines.append(f"suspected typo: {c.molecule} {c.potential} n={c.n} ñ={c.ntilde} m={c.m} "
                         f"A={c.A:g} B={c.B:g}: reference {c.energy_ev:g}, computed {r.computed:.6g}")
        lines.append(f"{verdict}: {ok}/{len(summary.checked)} cells within {args.tol:g} eV, "
                     f"max |delta| = {summary.max_abs_delta:.3g} eV, {len(summary.flagged)} flagged")
        _write(args, "\n".join(lines) + "\n")
    return EXIT_OK if summary.passed else EXIT_FAIL


# -- verify ------------------------------------------------------------------

def cmd_verify(args) -> int:
    from .oracle.fd import MIN_POINTS
    from .verification import SUITES, run_suites

    records = _load(args)
    molecules = [_molecule(records, args.molecule)] if args.molecule else records
    if args.grid_points < MIN_POINTS:
        raise UsageError(f"--grid-points must be at least {MIN_POINTS}")
    names = SUITES if args.suite == "all" else (args.suite,)
    report = run_suites(names, molecules, args.grid_points)

    if args.format == "json":
        _write(args, json.dumps(report.as_dict(), indent=2) + "\n")
    else:
        lines = []
        for name in names:
            comps = [c for c in report.comparisons if c.suite == name]
            bad = [c for c in comps if not c.passed]
            lines.append(f"{name}: {'PASS' if not bad else 'FAIL'} "
                         f"({len(comps) - len(bad)}/{len(comps)}), max |delta| = {report.max_delta(name):.3g}")
            for c in bad:
                lines.append(f"  {c.label} level {c.index}: expected {c.expected:.8g}, oracle {c.oracle:.8g}")
        if report.convergence_issues:
            lines.append("convergence failure (observed order outside [1.5, 2.5]):")
            for issue in report.convergence_issues:
                orders = ", ".join(f"{o:.3g}" for o in issue.orders)
                lines.append(f"  {issue.suite} {issue.label} @ {issue.points} points: orders [{orders}]")
        _write(args, "\n".join(lines) + "\n")
    if not report.converged:
        return EXIT_NUMERIC
    return EXIT_OK if report.passed else EXIT_FAIL


# -- parser ------------------------------------------------------------------

def _add_globals(parser, defaults: bool):
    kw = {} if defaults else {"default": argparse.SUPPRESS}
    parser.add_argument("--catalog", metavar="PATH", help="catalog CSV or JSON (default: bundled)",
                        **({"default": None} if defaults else kw))
    parser.add_argument("--format", choices=("table", "csv", "json"),
                        **({"default": "table"} if defaults else kw))
    parser.add_argument("--output", metavar="PATH", help="write to a file instead of stdout",
                        **({"default": None} if defaults else kw))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diatomic-levels",
        description="Bound states of diatomic molecules in Morse/Kratzer wells with a ring-shaped angular term.",
    )
    _add_globals(parser, defaults=True)
    common = argparse.ArgumentParser(add_help=False)
    _add_globals(common, defaults=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", parents=[common], help="list or validate the molecule catalog")
    p.add_argument("action", choices=("list", "validate"))
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("levels", parents=[common], help="energies over a quantum-number grid")
    p.add_argument("--molecule", required=True)
    p.add_argument("--potential", choices=("morse", "kratzer", "both"), default="both")
    p.add_argument("--n", default="0", help="vibrational quantum number(s), N or A..B")
    p.add_argument("--ntilde", default="0", help="angular oscillation quanta, N or A..B")
    p.add_argument("--m", default="0", help="magnetic quantum number(s), N or A..B")
    p.add_argument("--A", type=float, default=1.0)
    p.add_argument("--B", type=float, default=9.0)
    p.add_argument("--parity", choices=("even", "odd"), default=None, help="branch used when B = 0")
    p.set_defaults(func=cmd_levels)

    p = sub.add_parser("table2", parents=[common], help="recompute the reference energy table")
    p.add_argument("--tol", type=float, default=1e-3, help="tolerance in eV (default 1e-3)")
    p.add_argument("--molecule", default=None)
    p.add_argument("--reference", metavar="PATH", default=None, help="reference CSV (default: bundled)")
    p.set_defaults(func=cmd_table2)

    p = sub.add_parser("verify", parents=[common], help="finite-difference cross-checks")
    p.add_argument("--suite", choices=("angular", "kratzer", "morse-pekeris", "all"), default="all")
    p.add_argument("--molecule", default=None)
    p.add_argument("--grid-points", type=int, default=4096)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ArithmeticError, FloatingPointError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        print(f"internal failure: {exc!r}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
