"""RIS hardware descriptor: technology, cell geometry, grouping and circuits."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any, Mapping, Union

from .quantities import PowerMicrowatts

__all__ = [
    "Technology",
    "GroupKind",
    "CellArray",
    "BitResolution",
    "GroupingScheme",
    "DriveCircuitSpec",
    "ControlBoardSpec",
    "PinDiodeDynamics",
    "VaractorDynamics",
    "RfSwitchDynamics",
    "DynamicSpec",
    "RisDescriptor",
    "DescriptorError",
    "check",
    "validate",
    "component_count",
    "group_size",
    "group_ids",
    "cell_bits",
]


def _coerce(obj, attr: str, enum_cls) -> None:
    # unknown values stay as given so check() can report them
    try:
        object.__setattr__(obj, attr, enum_cls(getattr(obj, attr)))
    except ValueError:
        pass


class Technology(str, enum.Enum):
    PIN_DIODE = "pin_diode"
    VARACTOR_DIODE = "varactor_diode"
    RF_SWITCH = "rf_switch"


class GroupKind(str, enum.Enum):
    UNIT = "unit"
    ROW = "row"
    COLUMN = "column"
    SUBARRAY = "subarray"
    EXPLICIT = "explicit"


@dataclass(frozen=True)
class CellArray:
    rows: int
    cols: int

    @property
    def n(self) -> int:
        return self.rows * self.cols


@dataclass(frozen=True)
class BitResolution:
    """Either one ``uniform`` bit count or a row-major ``per_cell`` tuple."""

    uniform: int | None = None
    per_cell: tuple[int, ...] | None = None

    @classmethod
    def of(cls, b: int) -> BitResolution:
        return cls(uniform=b)

    @classmethod
    def cells(cls, bits) -> BitResolution:
        return cls(per_cell=tuple(bits))


@dataclass(frozen=True)
class GroupingScheme:
    kind: GroupKind = GroupKind.UNIT
    n_g: int | None = None
    r: int | None = None
    c: int | None = None

    def __post_init__(self):
        _coerce(self, "kind", GroupKind)

    @classmethod
    def unit(cls) -> GroupingScheme:
        return cls(GroupKind.UNIT)

    @classmethod
    def row(cls) -> GroupingScheme:
        return cls(GroupKind.ROW)

    @classmethod
    def column(cls) -> GroupingScheme:
        return cls(GroupKind.COLUMN)

    @classmethod
    def subarray(cls, r: int, c: int) -> GroupingScheme:
        return cls(GroupKind.SUBARRAY, r=r, c=c)

    @classmethod
    def explicit(cls, n_g: int) -> GroupingScheme:
        return cls(GroupKind.EXPLICIT, n_g=n_g)


@dataclass(frozen=True)
class DriveCircuitSpec:
    name: str
    signals_per_circuit: int
    rated_power: PowerMicrowatts


@dataclass(frozen=True)
class ControlBoardSpec:
    name: str
    # None means "not known"; power computations then demand an override
    rated_power: PowerMicrowatts | None


@dataclass(frozen=True)
class PinDiodeDynamics:
    on_power_per_diode: PowerMicrowatts
    off_power_per_diode: PowerMicrowatts = PowerMicrowatts(0)
    polarization_count: int = 1

    technology = Technology.PIN_DIODE


@dataclass(frozen=True)
class VaractorDynamics:
    technology = Technology.VARACTOR_DIODE


@dataclass(frozen=True)
class RfSwitchDynamics:
    active_power_per_cell: PowerMicrowatts

    technology = Technology.RF_SWITCH


DynamicSpec = Union[PinDiodeDynamics, VaractorDynamics, RfSwitchDynamics]


@dataclass(frozen=True)
class RisDescriptor:
    name: str
    technology: Technology
    cells: CellArray
    bits: BitResolution
    grouping: GroupingScheme
    drive_circuit: DriveCircuitSpec
    control_board: ControlBoardSpec
    dynamic: DynamicSpec
    frequency_hz: int = 0
    # inert descriptive data (e.g. bias voltage per coding state)
    metadata: Mapping[str, Any] = field(default_factory=dict, hash=False)

    def __post_init__(self):
        _coerce(self, "technology", Technology)

    @property
    def n(self) -> int:
        return self.cells.n


class DescriptorError(ValueError):
    """Raised with every problem found in a descriptor, not just the first."""

    def __init__(self, errors: list[str]):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors) if self.errors else "invalid descriptor")


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _resolved_group_size(kind: GroupKind, g: GroupingScheme, cells: CellArray) -> int | None:
    if kind is GroupKind.UNIT:
        return 1
    if kind is GroupKind.ROW:
        return cells.cols
    if kind is GroupKind.COLUMN:
        return cells.rows
    if kind is GroupKind.SUBARRAY:
        if _is_int(g.r) and _is_int(g.c):
            return g.r * g.c
        return None
    return g.n_g if _is_int(g.n_g) else None


def check(d: RisDescriptor, *, allow_empty: bool = False) -> list[str]:
    """Return a list of every invariant violation in ``d`` (empty when valid)."""
    errors: list[str] = []

    try:
        tech = Technology(d.technology)
    except ValueError:
        errors.append(f"technology: unknown technology {d.technology!r}")
        tech = None

    rows, cols = d.cells.rows, d.cells.cols
    geometry_ok = _is_int(rows) and _is_int(cols) and rows >= 0 and cols >= 0
    if not geometry_ok:
        errors.append(f"cells: rows and cols must be non-negative integers, got {rows!r} x {cols!r}")
    n = rows * cols if geometry_ok else None
    if n == 0 and not allow_empty:
        errors.append("cells: cell count must be >= 1 (empty surfaces need allow_empty)")

    if not _is_int(d.frequency_hz) or d.frequency_hz < 0:
        errors.append(f"frequency_hz: must be a non-negative integer, got {d.frequency_hz!r}")

    bits = d.bits
    bits_ok = True
    if (bits.uniform is None) == (bits.per_cell is None):
        errors.append("bits: give exactly one of uniform or per_cell")
        bits_ok = False
    elif bits.uniform is not None:
        if not _is_int(bits.uniform) or bits.uniform < 1:
            errors.append(f"bits.uniform: must be an integer >= 1, got {bits.uniform!r}")
            bits_ok = False
    else:
        if n is not None and len(bits.per_cell) != n:
            errors.append(f"bits.per_cell: expected {n} entries, got {len(bits.per_cell)}")
            bits_ok = False
        for i, b in enumerate(bits.per_cell):
            if not _is_int(b) or b < 1:
                errors.append(f"bits.per_cell[{i}]: must be an integer >= 1, got {b!r}")
                bits_ok = False

    grouping_ok = False
    try:
        kind = GroupKind(d.grouping.kind)
    except ValueError:
        errors.append(f"grouping.scheme: unknown scheme {d.grouping.kind!r}")
        kind = None
    if kind is not None and n is not None:
        g = d.grouping
        grouping_ok = True
        if kind is GroupKind.SUBARRAY:
            if not (_is_int(g.r) and _is_int(g.c) and g.r >= 1 and g.c >= 1):
                errors.append(f"grouping: subarray needs positive integers r and c, got {g.r!r}, {g.c!r}")
                grouping_ok = False
            else:
                if rows % g.r:
                    errors.append(f"grouping.r: {g.r} does not divide rows {rows}")
                    grouping_ok = False
                if cols % g.c:
                    errors.append(f"grouping.c: {g.c} does not divide cols {cols}")
                    grouping_ok = False
        elif kind is GroupKind.EXPLICIT:
            if not _is_int(g.n_g) or g.n_g < 1:
                errors.append(f"grouping.n_g: must be an integer >= 1, got {g.n_g!r}")
                grouping_ok = False
            elif n % g.n_g:
                errors.append(f"grouping.n_g: group size must divide cell count ({g.n_g} does not divide {n})")
                grouping_ok = False
        if grouping_ok:
            size = _resolved_group_size(kind, g, d.cells)
            if size is None or size < 1:
                errors.append(f"grouping: resolved group size must be >= 1, got {size!r}")
                grouping_ok = False

    if grouping_ok and bits_ok and bits.per_cell is not None and n:
        seen: dict[int, int] = {}
        for i, gid in enumerate(group_ids(d)):
            b = bits.per_cell[i]
            if seen.setdefault(gid, b) != b:
                errors.append(f"bits.per_cell[{i}]: cells in group {gid} must share one bit resolution")
                break

    dc = d.drive_circuit
    if not _is_int(dc.signals_per_circuit) or dc.signals_per_circuit < 1:
        errors.append(f"drive_circuit.signals_per_circuit: must be an integer >= 1, got {dc.signals_per_circuit!r}")
    if not isinstance(dc.rated_power, PowerMicrowatts):
        errors.append("drive_circuit.rated_power: missing")

    cb = d.control_board
    if cb.rated_power is not None and not isinstance(cb.rated_power, PowerMicrowatts):
        errors.append("control_board.rated_power: must be a power value")

    dyn = d.dynamic
    dyn_tech = getattr(dyn, "technology", None)
    if tech is not None and dyn_tech is not tech:
        shown = dyn_tech.value if isinstance(dyn_tech, Technology) else type(dyn).__name__
        errors.append(f"dynamic: {shown} dynamics do not match technology {tech.value}")
    if isinstance(dyn, PinDiodeDynamics):
        if not _is_int(dyn.polarization_count) or dyn.polarization_count < 1:
            errors.append(f"dynamic.polarization_count: must be an integer >= 1, got {dyn.polarization_count!r}")

    return errors


def validate(d: RisDescriptor, *, allow_empty: bool = False, require_control_board: bool = False) -> RisDescriptor:
    """Return ``d`` unchanged if it is valid, else raise DescriptorError."""
    errors = check(d, allow_empty=allow_empty)
    if require_control_board and d.control_board.rated_power is None:
        errors.append("control_board.rated_power: control board power required")
    if errors:
        raise DescriptorError(errors)
    return d


def cell_bits(d: RisDescriptor) -> list[int]:
    """Bit resolution of every cell, row-major."""
    if d.bits.per_cell is not None:
        return list(d.bits.per_cell)
    return [d.bits.uniform] * d.n


def component_count(d: RisDescriptor) -> int:
    """Number of adjustable components that need a control signal."""
    if d.technology is Technology.VARACTOR_DIODE:
        return d.n
    if d.bits.per_cell is not None:
        return sum(d.bits.per_cell)
    return d.bits.uniform * d.n


def group_size(d: RisDescriptor) -> int:
    return _resolved_group_size(GroupKind(d.grouping.kind), d.grouping, d.cells)


def group_ids(d: RisDescriptor) -> list[int]:
    """Group index of every cell, row-major.

    Explicit groups are consecutive runs of ``n_g`` cells taken column by
    column, so a group size that is a multiple of ``rows`` means whole
    columns share a signal.
    """
    rows, cols = d.cells.rows, d.cells.cols
    g = d.grouping
    kind = GroupKind(g.kind)
    ids = []
    for row in range(rows):
        for col in range(cols):
            if kind is GroupKind.UNIT:
                ids.append(row * cols + col)
            elif kind is GroupKind.ROW:
                ids.append(row)
            elif kind is GroupKind.COLUMN:
                ids.append(col)
            elif kind is GroupKind.SUBARRAY:
                ids.append((row // g.r) * (cols // g.c) + col // g.c)
            else:
                ids.append((col * rows + row) // g.n_g)
    return ids
