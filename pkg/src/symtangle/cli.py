"""Command-line surface: generate bases, analyze states, verify the tables."""

from __future__ import annotations

import argparse
import json
import os
import sys

from .density import mask_text
from .harmonics import (
    DEFAULT_MAX_N,
    LabeledState,
    named_state,
    registry_names,
    symmetric_basis,
    tableau_basis,
)
from .measures import build_report, report_to_dict
from .permgroup import standard_tableaux
from .qstate import ExactState, state_from_json, state_to_json
from .tables import FIXTURES, verify_tables

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2


def _max_n() -> int:
    raw = os.environ.get("SYMTANGLE_MAX_N", "")
    try:
        return int(raw) if raw else DEFAULT_MAX_N
    except ValueError:
        return DEFAULT_MAX_N


def _labeled_record(ls: LabeledState) -> dict:
    return {
        "n": ls.n,
        "tableau": ls.tableau,
        "t": ls.t,
        "name": ls.name,
        "j": str(ls.labels.j) if ls.labels.j is not None else None,
        "m_j": str(ls.labels.m_j) if ls.labels.m_j is not None else None,
        "state": state_to_json(ls.state),
    }


def _labeled_tsv(states: list[LabeledState]) -> str:
    lines = ["n\ttableau\tt\tname\tJ\tm_J\tnorm2\texpansion"]
    for ls in states:
        lines.append(
            "\t".join(
                [
                    str(ls.n),
                    str(ls.tableau) if ls.tableau is not None else "-",
                    str(ls.t) if ls.t is not None else "-",
                    ls.name or "-",
                    str(ls.labels.j) if ls.labels.j is not None else "-",
                    str(ls.labels.m_j) if ls.labels.m_j is not None else "-",
                    str(ls.state.norm2),
                    ls.state.ket_string(),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def _emit(text: str, out_path: str | None) -> int:
    if out_path is None:
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {out_path}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def cmd_generate(args: argparse.Namespace) -> int:
    limit = _max_n()
    if not 2 <= args.n <= limit:
        print(f"error: --n must be in 2..{limit}", file=sys.stderr)
        return EXIT_USAGE
    if args.tableau is not None:
        count = len(standard_tableaux(args.n))
        if not 1 <= args.tableau <= count:
            print(f"error: --tableau must be in 1..{count} for n={args.n}", file=sys.stderr)
            return EXIT_USAGE
        states = tableau_basis(args.n, args.tableau)
    elif args.symmetrized:
        states = symmetric_basis(args.n, max_n=limit)
    else:
        states = []
        for index in range(1, len(standard_tableaux(args.n)) + 1):
            states.extend(tableau_basis(args.n, index))
    if args.format == "json":
        payload = [_labeled_record(ls) for ls in states]
        return _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
    return _emit(_labeled_tsv(states), args.out)


def _report_tsv_row(report_dict: dict) -> str:
    header = ["state", "n", "pure", "classification"]
    values = [
        report_dict["state"],
        str(report_dict["n"]),
        "rho" if report_dict["is_pure"] else "mixed",
        report_dict["classification"],
    ]
    for split in report_dict["splits"]:
        mask = split["subsystem"]
        header += [f"rhoT[{mask}]", f"det_rhoT[{mask}]", f"Tr_rhoI2[{mask}]"]
        values += [
            "=rho" if split["rhoT_equals_rho"] else "!=rho",
            split["det_rhoT_exact"] or f"{split['det_rhoT']:.9g}",
            split["tr_rhoI2_exact"] or f"{split['tr_rhoI2']:.9g}",
        ]
        for j, rem in split["remainders"].items():
            header.append(f"det_rhoI_T{j}[{mask}]")
            values.append(rem["det_exact"] or f"{rem['det']:.9g}")
    for pair, value in report_dict["concurrence_pairs"].items():
        header.append(f"C[{pair}]")
        values.append(f"{value:.9g}")
    for qubit, value in report_dict["concurrence_splits"].items():
        header.append(f"C[{qubit}|rest]")
        values.append(f"{value:.9g}")
    if report_dict["e_tau"] is not None:
        header.append("E_tau")
        values.append(f"{report_dict['e_tau']:.9g}")
    header.append(report_dict["tangle_kind"])
    values.append(f"{report_dict['tangle']:.9g}")
    return "\t".join(header) + "\n" + "\t".join(values) + "\n"


def cmd_analyze(args: argparse.Namespace) -> int:
    if bool(args.name) == bool(args.state):
        print("error: need exactly one of --name or --state FILE", file=sys.stderr)
        return EXIT_USAGE
    if args.name:
        try:
            ls = named_state(args.name)
        except KeyError:
            known = ", ".join(registry_names())
            print(f"error: unknown state {args.name!r}; known names: {known}", file=sys.stderr)
            return EXIT_USAGE
        state: LabeledState | ExactState = ls
        state_id = args.name
    else:
        try:
            with open(args.state, encoding="utf-8") as fh:
                data = json.load(fh)
            state = state_from_json(data)
        except (OSError, ValueError, KeyError) as exc:
            print(f"error: cannot parse state file {args.state}: {exc}", file=sys.stderr)
            return EXIT_USAGE
        if state.is_zero():
            print("error: the zero state has no report", file=sys.stderr)
            return EXIT_USAGE
        if state.n > _max_n():
            print(f"error: state has n={state.n} > SYMTANGLE_MAX_N={_max_n()}", file=sys.stderr)
            return EXIT_USAGE
        state_id = args.state
    report = report_to_dict(build_report(state, state_id=state_id))
    if args.table_row:
        return _emit(_report_tsv_row(report), args.out)
    if args.format == "tsv":
        return _emit(_report_tsv_row(report), args.out)
    return _emit(json.dumps(report, indent=2, sort_keys=True) + "\n", args.out)


def cmd_verify(args: argparse.Namespace) -> int:
    if args.tables:
        ids = [t.strip() for t in args.tables.split(",") if t.strip()]
        unknown = [t for t in ids if t not in FIXTURES]
        if unknown:
            print(f"error: unknown tables {unknown}; choose from {sorted(FIXTURES)}", file=sys.stderr)
            return EXIT_USAGE
    else:
        ids = list(FIXTURES)
    results, ok = verify_tables(ids, tolerance=args.tolerance)
    lines = []
    checked = mismatched = advisory_diff = 0
    for r in results:
        status = "OK" if r.ok else "MISMATCH"
        if r.advisory:
            status = "ADVISORY-" + ("OK" if r.ok else "DIFF")
            advisory_diff += 0 if r.ok else 1
        else:
            checked += 1
            mismatched += 0 if r.ok else 1
        where = f"[{r.subsystem}]" if r.subsystem else ""
        line = f"{r.table:>3}  {r.state:<6} {r.column:<14}{where:<10} expected={r.expected:<28} got={r.got:<24} {status}"
        if r.note:
            line += f"  # {r.note}"
        lines.append(line)
    lines.append(
        f"checked {checked} cells across tables {','.join(ids)}: "
        f"{checked - mismatched} ok, {mismatched} mismatched "
        f"({len(results) - checked} advisory, {advisory_diff} advisory diffs)"
    )
    code = EXIT_OK if ok else EXIT_MISMATCH
    emit_code = _emit("\n".join(lines) + "\n", args.out)
    return emit_code if emit_code != EXIT_OK else code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symtangle",
        description="Permutation-symmetrized multiqubit basis states and their "
        "entanglement diagnostics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="emit tableau or symmetrized basis states")
    gen.add_argument("--n", type=int, required=True, help="qubit count")
    gen.add_argument("--tableau", type=int, help="restrict to one tableau (1-based)")
    gen.add_argument(
        "--symmetrized", action="store_true", help="emit the full T±-symmetrized set"
    )
    gen.add_argument("--format", choices=("json", "tsv"), default="json")
    gen.add_argument("--out", help="write to a file instead of stdout")
    gen.set_defaults(func=cmd_generate)

    ana = sub.add_parser("analyze", help="full entanglement report for one state")
    ana.add_argument("--name", help="registry name, e.g. W3+ or R")
    ana.add_argument("--state", help="JSON state file")
    ana.add_argument("--table-row", action="store_true", help="emit a table-shaped TSV row")
    ana.add_argument("--format", choices=("json", "tsv"), default="json")
    ana.add_argument("--out", help="write to a file instead of stdout")
    ana.set_defaults(func=cmd_analyze)

    ver = sub.add_parser("verify", help="recompute the embedded reference tables")
    ver.add_argument("--tables", help="comma-separated subset of I,II,III,IV,V")
    ver.add_argument("--tolerance", type=float, default=1e-9)
    ver.add_argument("--out", help="write the report to a file")
    ver.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
