"""Design-space sweeps and cross-technology comparison."""

from __future__ import annotations

import dataclasses
import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

from .hardware import (
    BitResolution,
    DescriptorError,
    GroupingScheme,
    PinDiodeDynamics,
    RfSwitchDynamics,
    RisDescriptor,
    Technology,
    CellArray,
    component_count,
    validate,
)
from .quantities import PowerMicrowatts, QuantityError, parse_power
from .static_power import StaticBreakdown, static_power_breakdown

__all__ = [
    "SweepParameter",
    "SweepRow",
    "SweepResult",
    "ComparisonRow",
    "substitute",
    "sweep",
    "worst_case_dynamic",
    "compare",
]


class SweepParameter(str, enum.Enum):
    CELL_COUNT = "cell_count"
    GROUP_SIZE = "group_size"
    SIGNALS_PER_CIRCUIT = "signals_per_circuit"
    BIT_RESOLUTION = "bit_resolution"
    PER_CIRCUIT_POWER = "per_circuit_power"


@dataclass(frozen=True)
class SweepRow:
    value: int | PowerMicrowatts
    breakdown: StaticBreakdown | None = None
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


@dataclass(frozen=True)
class SweepResult:
    swept_parameter: SweepParameter
    rows: tuple[SweepRow, ...]


@dataclass(frozen=True)
class ComparisonRow:
    name: str
    technology: Technology
    n_c: int
    n_drive_circuit: int
    static_total: PowerMicrowatts
    worst_case_dynamic: PowerMicrowatts
    worst_case_total: PowerMicrowatts


def _as_power(value) -> PowerMicrowatts:
    if isinstance(value, PowerMicrowatts):
        return value
    if isinstance(value, str):
        return parse_power(value)
    return PowerMicrowatts(value)


def substitute(base: RisDescriptor, parameter: SweepParameter | str, value) -> RisDescriptor:
    """Copy of ``base`` with one parameter replaced, validated.

    Changing ``cell_count`` keeps the column count and adjusts rows, so the
    value must be a multiple of ``base.cells.cols``.
    """
    parameter = SweepParameter(parameter)
    if parameter is SweepParameter.PER_CIRCUIT_POWER:
        drive = dataclasses.replace(base.drive_circuit, rated_power=_as_power(value))
        d = dataclasses.replace(base, drive_circuit=drive)
    elif parameter is SweepParameter.SIGNALS_PER_CIRCUIT:
        drive = dataclasses.replace(base.drive_circuit, signals_per_circuit=value)
        d = dataclasses.replace(base, drive_circuit=drive)
    elif parameter is SweepParameter.GROUP_SIZE:
        d = dataclasses.replace(base, grouping=GroupingScheme.explicit(value))
    elif parameter is SweepParameter.BIT_RESOLUTION:
        d = dataclasses.replace(base, bits=BitResolution.of(value))
    else:
        cols = base.cells.cols
        if value % cols:
            raise DescriptorError([f"cell_count: {value} is not a multiple of the {cols} columns"])
        if base.bits.per_cell is not None:
            raise DescriptorError(["cell_count: cannot resize a per-cell bit list"])
        d = dataclasses.replace(base, cells=CellArray(value // cols, cols))
    return validate(d)


def _sort_key(value):
    if isinstance(value, PowerMicrowatts):
        return (0, value.value)
    if isinstance(value, int) and not isinstance(value, bool):
        return (0, value)
    return (1, str(value))


def sweep(base: RisDescriptor, parameter: SweepParameter | str, values: Sequence) -> SweepResult:
    """One static breakdown per value; invalid values become error rows."""
    parameter = SweepParameter(parameter)
    if not values:
        raise ValueError("sweep needs at least one value")
    rows = []
    for value in values:
        try:
            if parameter is SweepParameter.PER_CIRCUIT_POWER:
                value = _as_power(value)
            d = substitute(base, parameter, value)
            rows.append(SweepRow(value, static_power_breakdown(d)))
        except (DescriptorError, QuantityError, TypeError) as exc:
            rows.append(SweepRow(value, error=str(exc)))
    rows.sort(key=lambda r: _sort_key(r.value))
    return SweepResult(parameter, tuple(rows))


def worst_case_dynamic(d: RisDescriptor) -> PowerMicrowatts:
    """Largest dynamic power over all coding states (every bit set for PIN cells)."""
    dyn = d.dynamic
    if d.technology is Technology.VARACTOR_DIODE:
        return PowerMicrowatts(0)
    if d.technology is Technology.RF_SWITCH:
        assert isinstance(dyn, RfSwitchDynamics)
        return dyn.active_power_per_cell * d.n
    assert isinstance(dyn, PinDiodeDynamics)
    per_diode = max(dyn.on_power_per_diode, dyn.off_power_per_diode)
    return per_diode * (dyn.polarization_count * component_count(d))


def compare(descriptors: Iterable[RisDescriptor]) -> list[ComparisonRow]:
    """Rows sorted by worst-case total power, ties broken by name."""
    descriptors = list(descriptors)
    if not descriptors:
        raise ValueError("compare needs at least one descriptor")
    rows = []
    for d in descriptors:
        static = static_power_breakdown(d)
        dyn = worst_case_dynamic(d)
        rows.append(
            ComparisonRow(
                name=d.name,
                technology=d.technology,
                n_c=component_count(d),
                n_drive_circuit=static.drive_circuit_count,
                static_total=static.static_total,
                worst_case_dynamic=dyn,
                worst_case_total=static.static_total + dyn,
            )
        )
    rows.sort(key=lambda r: (r.worst_case_total.value, r.name))
    return rows
