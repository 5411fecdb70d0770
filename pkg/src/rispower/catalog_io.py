"""Built-in catalog of measured surfaces and the JSON file formats.

Descriptor file (``schema_version`` 1)::

    {
      "schema_version": 1,
      "name": "pin-16x16",
      "technology": "pin_diode",
      "frequency_hz": 3500000000,
      "cells": {"rows": 16, "cols": 16},
      "bits": {"uniform": 1},                       # or {"per_cell": [...]}
      "grouping": {"scheme": "unit"},               # row | column | subarray(r, c) | explicit(n_g)
      "drive_circuit": {"name": "...", "signals_per_circuit": 8, "rated_power": "66 uW"},
      "control_board": {"name": "...", "rated_power": "4.8 W"},   # null = unknown
      "dynamic": {"technology": "pin_diode", "on_power_per_diode": "12.6 mW",
                  "off_power_per_diode": "0 uW", "polarization_count": 1},
      "metadata": {}
    }

State file: ``{"segments": [{"dwell_us": 1000000, "cells": [1, 0, ...]}, ...]}``
with cells in row-major order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping

from .dynamic_power import CodingSegment, CodingSequence, CodingState, StateError, check_state
from .hardware import (
    BitResolution,
    CellArray,
    ControlBoardSpec,
    DescriptorError,
    DriveCircuitSpec,
    GroupingScheme,
    GroupKind,
    PinDiodeDynamics,
    RfSwitchDynamics,
    RisDescriptor,
    Technology,
    VaractorDynamics,
    check,
)
from .quantities import DurationMicroseconds, PowerMicrowatts, QuantityError, format_power, parse_power

__all__ = [
    "SCHEMA_VERSION",
    "CatalogEntry",
    "UnknownEntryError",
    "CATALOG",
    "builtin",
    "builtin_entry",
    "catalog_keys",
    "descriptor_to_dict",
    "descriptor_from_dict",
    "load_descriptor",
    "save_descriptor",
    "states_to_dict",
    "states_from_dict",
    "load_states",
    "save_states",
]

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class CatalogEntry:
    key: str
    descriptor: RisDescriptor
    provenance_notes: str


class UnknownEntryError(LookupError):
    pass


_XC7K70T = ControlBoardSpec("XC7K70T", PowerMicrowatts(4_800_000))  # 24 V x 0.2 A

CATALOG: dict[str, CatalogEntry] = {
    "pin-16x16": CatalogEntry(
        key="pin-16x16",
        descriptor=RisDescriptor(
            name="pin-16x16",
            technology=Technology.PIN_DIODE,
            cells=CellArray(16, 16),
            bits=BitResolution.of(1),
            grouping=GroupingScheme.unit(),
            drive_circuit=DriveCircuitSpec("SN74LV595A", 8, PowerMicrowatts(66)),
            control_board=_XC7K70T,
            dynamic=PinDiodeDynamics(PowerMicrowatts(12_600)),
            frequency_hz=3_500_000_000,
        ),
        provenance_notes=(
            "1-bit PIN-diode surface, 16x16 cells built from four 8x8 sub-arrays, "
            "each cell controlled independently at 3.5 GHz.\n"
            "drive circuit: SN74LV595A 8-bit shift register, one per 8-cell column "
            "of a sub-array; 3.3 V x 20 uA = 66 uW.\n"
            "control board: XC7K70T FPGA, 24 V x 0.2 A = 4.8 W.\n"
            "dynamic: 12.6 mW per conducting PIN diode (measured on an earlier device)."
        ),
    ),
    "varactor-8x16": CatalogEntry(
        key="varactor-8x16",
        descriptor=RisDescriptor(
            name="varactor-8x16",
            technology=Technology.VARACTOR_DIODE,
            cells=CellArray(16, 8),
            # 8 bias-voltage coding states per cell
            bits=BitResolution.of(3),
            grouping=GroupingScheme.explicit(32),
            drive_circuit=DriveCircuitSpec("DAC3484 + AD8021", 1, PowerMicrowatts(430_000)),
            control_board=ControlBoardSpec("unspecified", None),
            dynamic=VaractorDynamics(),
            frequency_hz=3_200_000_000,
            metadata={"coding_states": 8, "control": "column", "columns_per_group": 2},
        ),
        provenance_notes=(
            "Varactor-diode surface, 8 columns of 16 cells at 3.2 GHz, column control "
            "with two columns sharing one signal (32 cells per group).\n"
            "drive circuit: DAC3484 (250 mW per signal) + AD8021 op-amp "
            "(+/-12 V x 7.5 mA = 180 mW) = 430 mW, one signal each.\n"
            "control board: power never reported for this device; supply an override.\n"
            "dynamic: varactor conduction current is negligible, so zero."
        ),
    ),
    "rfswitch-8x8": CatalogEntry(
        key="rfswitch-8x8",
        descriptor=RisDescriptor(
            name="rfswitch-8x8",
            technology=Technology.RF_SWITCH,
            cells=CellArray(8, 8),
            bits=BitResolution.of(1),
            grouping=GroupingScheme.unit(),
            drive_circuit=DriveCircuitSpec("XC3S400AN", 75, PowerMicrowatts(240_000)),
            control_board=_XC7K70T,
            dynamic=RfSwitchDynamics(PowerMicrowatts(495)),
        ),
        provenance_notes=(
            "RF CMOS switch surface, 8x8 cells each controlled independently; "
            "operating frequency not reported.\n"
            "drive circuit: XC3S400AN FPGA driving about 75 switches; 12 V x 20 mA = 240 mW.\n"
            "control board: XC7K70T FPGA, 24 V x 0.2 A = 4.8 W.\n"
            "dynamic: 3.3 V x 150 uA = 495 uW per cell."
        ),
    ),
}


def catalog_keys() -> list[str]:
    return sorted(CATALOG)


def builtin_entry(key: str) -> CatalogEntry:
    try:
        return CATALOG[key]
    except KeyError:
        raise UnknownEntryError(f"unknown catalog key {key!r}; choose from {', '.join(catalog_keys())}") from None


def builtin(key: str) -> RisDescriptor:
    return builtin_entry(key).descriptor


# -- descriptor files ---------------------------------------------------------


def _power_field(p: PowerMicrowatts | None) -> str | None:
    return None if p is None else format_power(p)


def descriptor_to_dict(d: RisDescriptor) -> dict[str, Any]:
    bits: dict[str, Any]
    if d.bits.per_cell is not None:
        bits = {"per_cell": list(d.bits.per_cell)}
    else:
        bits = {"uniform": d.bits.uniform}

    g = d.grouping
    grouping: dict[str, Any] = {"scheme": GroupKind(g.kind).value}
    if g.kind is GroupKind.EXPLICIT:
        grouping["n_g"] = g.n_g
    elif g.kind is GroupKind.SUBARRAY:
        grouping["r"] = g.r
        grouping["c"] = g.c

    dyn = d.dynamic
    dynamic: dict[str, Any] = {"technology": dyn.technology.value}
    if isinstance(dyn, PinDiodeDynamics):
        dynamic["on_power_per_diode"] = _power_field(dyn.on_power_per_diode)
        dynamic["off_power_per_diode"] = _power_field(dyn.off_power_per_diode)
        dynamic["polarization_count"] = dyn.polarization_count
    elif isinstance(dyn, RfSwitchDynamics):
        dynamic["active_power_per_cell"] = _power_field(dyn.active_power_per_cell)

    return {
        "schema_version": SCHEMA_VERSION,
        "name": d.name,
        "technology": Technology(d.technology).value,
        "frequency_hz": d.frequency_hz,
        "cells": {"rows": d.cells.rows, "cols": d.cells.cols},
        "bits": bits,
        "grouping": grouping,
        "drive_circuit": {
            "name": d.drive_circuit.name,
            "signals_per_circuit": d.drive_circuit.signals_per_circuit,
            "rated_power": _power_field(d.drive_circuit.rated_power),
        },
        "control_board": {
            "name": d.control_board.name,
            "rated_power": _power_field(d.control_board.rated_power),
        },
        "dynamic": dynamic,
        "metadata": dict(d.metadata),
    }


class _Reader:
    """Pulls typed fields out of a JSON tree, recording errors by field path."""

    def __init__(self):
        self.errors: list[str] = []

    def section(self, tree: Mapping, key: str, path: str = "") -> Mapping | None:
        where = f"{path}{key}"
        if key not in tree:
            self.errors.append(f"{where}: required field missing")
            return None
        value = tree[key]
        if not isinstance(value, Mapping):
            self.errors.append(f"{where}: expected an object")
            return None
        return value

    def get(self, tree: Mapping, key: str, path: str, kind, *, required: bool = True, default=None):
        where = f"{path}{key}"
        if key not in tree:
            if required:
                self.errors.append(f"{where}: required field missing")
            return default
        value = tree[key]
        if kind is int:
            ok = isinstance(value, int) and not isinstance(value, bool)
        else:
            ok = isinstance(value, kind)
        if not ok:
            self.errors.append(f"{where}: expected {kind.__name__}, got {type(value).__name__}")
            return default
        return value

    def power(self, tree: Mapping, key: str, path: str, *, required: bool = True, nullable: bool = False,
              default=None):
        where = f"{path}{key}"
        if key not in tree:
            if required:
                self.errors.append(f"{where}: required field missing")
            return default
        value = tree[key]
        if value is None and nullable:
            return None
        if isinstance(value, int) and not isinstance(value, bool):
            # bare integers are microwatts
            try:
                return PowerMicrowatts(value)
            except QuantityError as exc:
                self.errors.append(f"{where}: {exc}")
                return default
        if not isinstance(value, str):
            self.errors.append(f"{where}: expected a power string such as '0.066 mW'")
            return default
        try:
            return parse_power(value)
        except QuantityError as exc:
            self.errors.append(f"{where}: {exc}")
            return default

    def enum(self, tree: Mapping, key: str, path: str, enum_cls):
        raw = self.get(tree, key, path, str)
        if raw is None:
            return None
        try:
            return enum_cls(raw)
        except ValueError:
            choices = ", ".join(m.value for m in enum_cls)
            self.errors.append(f"{path}{key}: unknown value {raw!r}; expected one of {choices}")
            return None


def descriptor_from_dict(tree: Mapping[str, Any], *, allow_empty: bool = False) -> RisDescriptor:
    """Build and validate a descriptor, raising DescriptorError with field paths."""
    if not isinstance(tree, Mapping):
        raise DescriptorError(["<root>: expected an object"])
    r = _Reader()
    version = tree.get("schema_version")
    if version != SCHEMA_VERSION:
        raise DescriptorError([f"schema_version: unsupported version {version!r} (expected {SCHEMA_VERSION})"])

    name = r.get(tree, "name", "", str)
    tech = r.enum(tree, "technology", "", Technology)
    frequency = r.get(tree, "frequency_hz", "", int, required=False, default=0)

    cells_t = r.section(tree, "cells")
    rows = r.get(cells_t, "rows", "cells.", int) if cells_t is not None else None
    cols = r.get(cells_t, "cols", "cells.", int) if cells_t is not None else None

    bits_t = r.section(tree, "bits")
    bits = None
    if bits_t is not None:
        if ("uniform" in bits_t) == ("per_cell" in bits_t):
            r.errors.append("bits: give exactly one of uniform or per_cell")
        elif "uniform" in bits_t:
            b = r.get(bits_t, "uniform", "bits.", int)
            if b is not None:
                bits = BitResolution.of(b)
        else:
            per_cell = r.get(bits_t, "per_cell", "bits.", list)
            if per_cell is not None:
                bits = BitResolution.cells(per_cell)

    grouping_t = r.section(tree, "grouping")
    grouping = None
    if grouping_t is not None:
        kind = r.enum(grouping_t, "scheme", "grouping.", GroupKind)
        if kind is GroupKind.EXPLICIT:
            n_g = r.get(grouping_t, "n_g", "grouping.", int)
            grouping = GroupingScheme.explicit(n_g) if n_g is not None else None
        elif kind is GroupKind.SUBARRAY:
            sr = r.get(grouping_t, "r", "grouping.", int)
            sc = r.get(grouping_t, "c", "grouping.", int)
            grouping = GroupingScheme.subarray(sr, sc) if sr is not None and sc is not None else None
        elif kind is not None:
            grouping = GroupingScheme(kind)

    dc_t = r.section(tree, "drive_circuit")
    drive = None
    if dc_t is not None:
        dc_name = r.get(dc_t, "name", "drive_circuit.", str, required=False, default="")
        n_s = r.get(dc_t, "signals_per_circuit", "drive_circuit.", int)
        dc_power = r.power(dc_t, "rated_power", "drive_circuit.")
        if n_s is not None and dc_power is not None:
            drive = DriveCircuitSpec(dc_name, n_s, dc_power)

    cb_t = r.section(tree, "control_board")
    board = None
    if cb_t is not None:
        cb_name = r.get(cb_t, "name", "control_board.", str, required=False, default="")
        before = len(r.errors)
        cb_power = r.power(cb_t, "rated_power", "control_board.", nullable=True)
        if len(r.errors) == before:
            board = ControlBoardSpec(cb_name, cb_power)

    dyn_t = r.section(tree, "dynamic")
    dynamic = None
    if dyn_t is not None:
        dyn_tech = r.enum(dyn_t, "technology", "dynamic.", Technology)
        if tech is not None and dyn_tech is not None and dyn_tech is not tech:
            r.errors.append(f"dynamic: {dyn_tech.value} dynamics do not match technology {tech.value}")
        elif dyn_tech is Technology.PIN_DIODE:
            on = r.power(dyn_t, "on_power_per_diode", "dynamic.")
            off = r.power(dyn_t, "off_power_per_diode", "dynamic.", required=False, default=PowerMicrowatts(0))
            pol = r.get(dyn_t, "polarization_count", "dynamic.", int, required=False, default=1)
            if on is not None and off is not None and pol is not None:
                dynamic = PinDiodeDynamics(on, off, pol)
        elif dyn_tech is Technology.RF_SWITCH:
            active = r.power(dyn_t, "active_power_per_cell", "dynamic.")
            if active is not None:
                dynamic = RfSwitchDynamics(active)
        elif dyn_tech is Technology.VARACTOR_DIODE:
            dynamic = VaractorDynamics()

    metadata = r.get(tree, "metadata", "", Mapping, required=False, default={})

    parts = (name, tech, rows, cols, bits, grouping, drive, board, dynamic, frequency)
    if r.errors or any(p is None for p in parts):
        raise DescriptorError(r.errors or ["descriptor: incomplete"])

    d = RisDescriptor(
        name=name,
        technology=tech,
        cells=CellArray(rows, cols),
        bits=bits,
        grouping=grouping,
        drive_circuit=drive,
        control_board=board,
        dynamic=dynamic,
        frequency_hz=frequency,
        metadata=dict(metadata),
    )
    errors = check(d, allow_empty=allow_empty)
    if errors:
        raise DescriptorError(errors)
    return d


def _read_json(path) -> Any:
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DescriptorError([f"{path}: not valid JSON ({exc})"]) from exc


def _write_json(tree, path) -> None:
    Path(path).write_text(json.dumps(tree, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")


def load_descriptor(path, *, allow_empty: bool = False) -> RisDescriptor:
    return descriptor_from_dict(_read_json(path), allow_empty=allow_empty)


def save_descriptor(d: RisDescriptor, path) -> None:
    _write_json(descriptor_to_dict(d), path)


# -- coding state files -------------------------------------------------------


def states_to_dict(seq: CodingSequence) -> dict[str, Any]:
    return {
        "segments": [
            {"dwell_us": seg.dwell.value, "cells": list(seg.state.cells)} for seg in seq.segments
        ]
    }


def states_from_dict(tree: Mapping[str, Any], d: RisDescriptor) -> CodingSequence:
    if not isinstance(tree, Mapping) or not isinstance(tree.get("segments"), list):
        raise StateError("state file needs a 'segments' list")
    segments = []
    for k, seg in enumerate(tree["segments"]):
        if not isinstance(seg, Mapping):
            raise StateError(f"segments[{k}]: expected an object")
        dwell = seg.get("dwell_us")
        if isinstance(dwell, bool) or not isinstance(dwell, int) or dwell < 1:
            raise StateError(f"segments[{k}].dwell_us: must be an integer >= 1, got {dwell!r}")
        cells = seg.get("cells")
        if not isinstance(cells, list):
            raise StateError(f"segments[{k}].cells: expected a list of integers")
        state = CodingState(cells)
        try:
            check_state(d, state)
        except StateError as exc:
            raise StateError(f"segments[{k}]: {exc}", cell=exc.cell) from exc
        segments.append(CodingSegment(state, DurationMicroseconds(dwell)))
    if not segments:
        raise StateError("state file has no segments")
    return CodingSequence(segments)


def load_states(path, d: RisDescriptor) -> CodingSequence:
    text = Path(path).read_text(encoding="utf-8")
    try:
        tree = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateError(f"{path}: not valid JSON ({exc})") from exc
    return states_from_dict(tree, d)


def save_states(seq: CodingSequence, path) -> None:
    _write_json(states_to_dict(seq), path)
