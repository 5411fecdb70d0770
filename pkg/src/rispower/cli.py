"""``rispower`` command line interface.

Exit codes: 0 success, 2 validation error, 3 I/O error. Reports go to
stdout (or ``--output``); diagnostics go to stderr only.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .analysis import SweepParameter, compare, sweep
from .catalog_io import (
    CATALOG,
    UnknownEntryError,
    builtin,
    builtin_entry,
    catalog_keys,
    descriptor_to_dict,
    load_descriptor,
    load_states,
)
from .dynamic_power import StateError, sequence_energy
from .hardware import DescriptorError, RisDescriptor, component_count, group_size, validate
from .quantities import PowerMicrowatts, QuantityError, format_power, parse_power
from .static_power import StaticBreakdown, static_power_breakdown

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_IO = 3

FORMATS = ("json", "csv", "table")


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_VALIDATION):
        self.code = code
        super().__init__(message)


def _power_pair(key: str, p: PowerMicrowatts) -> dict[str, Any]:
    return {f"{key}_uw": p.value, key: format_power(p)}


# -- descriptor sources -------------------------------------------------------


def _override_board(d: RisDescriptor, power: PowerMicrowatts | None, only_missing: bool = False) -> RisDescriptor:
    if power is None or (only_missing and d.control_board.rated_power is not None):
        return d
    board = dataclasses.replace(d.control_board, rated_power=power)
    return dataclasses.replace(d, control_board=board)


def _board_power(args) -> PowerMicrowatts | None:
    text = getattr(args, "control_board_power", None)
    if text is None:
        return None
    try:
        return parse_power(text)
    except QuantityError as exc:
        raise CliError(f"--control-board-power: {exc}") from exc


def _load_source(*, path: str | None = None, key: str | None = None) -> RisDescriptor:
    if key is not None:
        return builtin(key)
    return load_descriptor(path)


def _single_source(args) -> RisDescriptor:
    if (args.descriptor is None) == (args.builtin is None):
        raise CliError("give exactly one of --descriptor or --builtin")
    d = _load_source(path=args.descriptor, key=args.builtin)
    return validate(_override_board(d, _board_power(args)))


# -- rendering ----------------------------------------------------------------


def _render(fmt: str, document: Any, rows: list[dict[str, Any]], header: Sequence[str]) -> str:
    if fmt == "json":
        return json.dumps(document, indent=2, ensure_ascii=False) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(header), lineterminator="\n", extrasaction="ignore")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: "" if row.get(k) is None else row.get(k) for k in header})
        return buf.getvalue()
    return _table(rows, header)


def _table(rows: list[dict[str, Any]], header: Sequence[str]) -> str:
    cells = [[str(h) for h in header]]
    for row in rows:
        cells.append(["" if row.get(h) is None else str(row.get(h)) for h in header])
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def _breakdown_fields(b: StaticBreakdown) -> dict[str, Any]:
    out: dict[str, Any] = {"n_drive_circuit": b.drive_circuit_count}
    out.update(_power_pair("per_circuit_power", b.per_circuit_power))
    out.update(_power_pair("total_drive_power", b.total_drive_power))
    out.update(_power_pair("control_board_power", b.control_board_power))
    out.update(_power_pair("static_total", b.static_total))
    return out


# -- commands -----------------------------------------------------------------

ESTIMATE_HEADER = (
    "descriptor", "technology", "n_c", "n_g", "n_s", "n_drive_circuit",
    "per_circuit_power_uw", "total_drive_power_uw", "control_board_power_uw", "static_total_uw",
)


def cmd_estimate(args) -> str:
    d = _single_source(args)
    b = static_power_breakdown(d)
    row: dict[str, Any] = {
        "descriptor": d.name,
        "technology": d.technology.value,
        "n_c": component_count(d),
        "n_g": group_size(d),
        "n_s": d.drive_circuit.signals_per_circuit,
    }
    row.update(_breakdown_fields(b))
    if args.format == "table":
        return _table([{"field": k, "value": v} for k, v in row.items()], ("field", "value"))
    return _render(args.format, row, [row], ESTIMATE_HEADER)


SIMULATE_HEADER = ("descriptor", "segments", "duration_us", "energy_pj", "mean_power_uw", "static_total_uw")


def cmd_simulate(args) -> str:
    d = _single_source(args)
    seq = load_states(args.states, d)
    result = sequence_energy(d, seq)
    static = static_power_breakdown(d)
    row: dict[str, Any] = {
        "descriptor": d.name,
        "segments": len(seq.segments),
        "duration_us": result.duration.value,
        "energy_pj": result.energy.value,
    }
    row.update(_power_pair("mean_power", result.mean_power))
    row.update(_power_pair("static_total", static.static_total))
    if args.format == "table":
        return _table([{"field": k, "value": v} for k, v in row.items()], ("field", "value"))
    return _render(args.format, row, [row], SIMULATE_HEADER)


SWEEP_HEADER = (
    "value", "n_drive_circuit", "per_circuit_power_uw", "total_drive_power_uw",
    "control_board_power_uw", "static_total_uw", "error",
)


def _parse_values(parameter: SweepParameter, text: str) -> list:
    values: list = []
    for token in (t.strip() for t in text.split(",")):
        if not token:
            continue
        if token.isdigit():
            values.append(int(token))
        elif parameter is SweepParameter.PER_CIRCUIT_POWER:
            try:
                values.append(parse_power(token))
            except QuantityError as exc:
                raise CliError(f"--values: {exc}") from exc
        else:
            raise CliError(f"--values: {token!r} is not a non-negative integer")
    if not values:
        raise CliError("--values: give at least one value")
    return values


def cmd_sweep(args) -> str:
    d = _single_source(args)
    parameter = SweepParameter(args.param)
    result = sweep(d, parameter, _parse_values(parameter, args.values))
    rows = []
    for r in result.rows:
        value = r.value.value if isinstance(r.value, PowerMicrowatts) else r.value
        row: dict[str, Any] = {"value": value}
        if r.breakdown is not None:
            row.update(_breakdown_fields(r.breakdown))
        row["error"] = r.error
        rows.append(row)
    document: dict[str, Any] = {"descriptor": d.name, "parameter": parameter.value}
    if parameter is SweepParameter.PER_CIRCUIT_POWER:
        document["value_unit"] = "uW"
    if parameter is SweepParameter.CELL_COUNT:
        document["note"] = f"rows adjusted, cols fixed at {d.cells.cols}"
    document["rows"] = rows
    return _render(args.format, document, rows, SWEEP_HEADER)


COMPARE_HEADER = (
    "name", "technology", "n_c", "n_drive_circuit", "static_total_uw",
    "worst_case_dynamic_uw", "worst_case_total_uw",
)


def cmd_compare(args) -> str:
    sources = [("path", p) for p in args.descriptor or []] + [("key", k) for k in args.builtin or []]
    if not sources:
        raise CliError("give at least one --descriptor or --builtin")
    board = _board_power(args)
    descriptors = []
    for kind, ref in sources:
        d = _load_source(path=ref) if kind == "path" else _load_source(key=ref)
        descriptors.append(validate(_override_board(d, board, only_missing=True)))
    rows = []
    for r in compare(descriptors):
        row: dict[str, Any] = {
            "name": r.name,
            "technology": r.technology.value,
            "n_c": r.n_c,
            "n_drive_circuit": r.n_drive_circuit,
        }
        row.update(_power_pair("static_total", r.static_total))
        row.update(_power_pair("worst_case_dynamic", r.worst_case_dynamic))
        row.update(_power_pair("worst_case_total", r.worst_case_total))
        rows.append(row)
    return _render(args.format, {"rows": rows}, rows, COMPARE_HEADER)


def cmd_catalog(args) -> str:
    if args.action == "list":
        rows = []
        for key in catalog_keys():
            d = CATALOG[key].descriptor
            rows.append({
                "key": key,
                "technology": d.technology.value,
                "rows": d.cells.rows,
                "cols": d.cells.cols,
                "drive_circuit": d.drive_circuit.name,
            })
        return _render(args.format, {"entries": rows}, rows, ("key", "technology", "rows", "cols", "drive_circuit"))

    if not args.key:
        raise CliError("catalog show needs a key")
    entry = builtin_entry(args.key)
    tree = descriptor_to_dict(entry.descriptor)
    if args.format == "json":
        document = {"key": entry.key, "descriptor": tree, "provenance_notes": entry.provenance_notes}
        return json.dumps(document, indent=2, ensure_ascii=False) + "\n"
    flat = [{"field": k, "value": v} for k, v in _flatten(tree)]
    if args.format == "table":
        return _table(flat, ("field", "value")) + "\nprovenance:\n" + entry.provenance_notes + "\n"
    flat.append({"field": "provenance_notes", "value": entry.provenance_notes.replace("\n", " | ")})
    return _render(args.format, None, flat, ("field", "value"))


def _flatten(tree: Any, prefix: str = ""):
    if isinstance(tree, dict):
        for k, v in tree.items():
            yield from _flatten(v, f"{prefix}{k}.")
    elif isinstance(tree, list):
        yield prefix.rstrip("."), json.dumps(tree)
    else:
        yield prefix.rstrip("."), "null" if tree is None else tree


# -- argument parsing ---------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS, help="output format (default: table)")
    p.add_argument("--output", default=argparse.SUPPRESS, help="write the report to this file instead of stdout")
    return p


def _source_args(p: argparse.ArgumentParser, many: bool = False) -> None:
    action = "append" if many else "store"
    p.add_argument("--descriptor", action=action, metavar="PATH", help="descriptor JSON file")
    p.add_argument("--builtin", action=action, metavar="KEY", choices=catalog_keys(), help="built-in catalog entry")
    p.add_argument(
        "--control-board-power",
        metavar="POWER",
        help="control board power such as '1.5 W'"
        + (" (fills descriptors that lack one)" if many else " (overrides the descriptor)"),
    )


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="rispower", description="RIS power consumption model", parents=[common])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("estimate", parents=[common], help="static power breakdown")
    _source_args(p)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("simulate", parents=[common], help="energy of a timed coding-state sequence")
    _source_args(p)
    p.add_argument("--states", required=True, metavar="PATH", help="coding-state JSON file")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", parents=[common], help="sweep one parameter")
    _source_args(p)
    p.add_argument("--param", required=True, choices=[m.value for m in SweepParameter])
    p.add_argument("--values", required=True, help="comma separated values, e.g. 1,8,75")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("compare", parents=[common], help="compare several descriptors")
    _source_args(p, many=True)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("catalog", parents=[common], help="list or show built-in descriptors")
    p.add_argument("action", choices=("list", "show"))
    p.add_argument("key", nargs="?")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    args.format = getattr(args, "format", "table")
    output = getattr(args, "output", None)
    try:
        report = args.func(args)
    except CliError as exc:
        print(f"rispower: error: {exc}", file=sys.stderr)
        return exc.code
    except OSError as exc:
        print(f"rispower: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (DescriptorError, StateError, QuantityError, UnknownEntryError, ValueError) as exc:
        print(f"rispower: error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION

    if output:
        try:
            Path(output).write_text(report, encoding="utf-8")
        except OSError as exc:
            print(f"rispower: I/O error: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        sys.stdout.write(report)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
