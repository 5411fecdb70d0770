"""Coding-state dependent power of the unit cells and energy over time."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

from .hardware import (
    PinDiodeDynamics,
    RfSwitchDynamics,
    RisDescriptor,
    Technology,
    cell_bits,
    group_ids,
)
from .quantities import (
    DurationMicroseconds,
    EnergyPicojoules,
    PowerMicrowatts,
    energy,
)
from .static_power import StaticBreakdown, static_power_breakdown

__all__ = [
    "ConductionPolicy",
    "popcount_policy",
    "StateError",
    "CodingState",
    "CodingSegment",
    "CodingSequence",
    "PowerBreakdown",
    "SequenceEnergy",
    "check_state",
    "dynamic_power",
    "total_power",
    "sequence_energy",
]

# (state, bits) -> number of conducting diodes per polarization
ConductionPolicy = Callable[[int, int], int]


def popcount_policy(state: int, bits: int) -> int:
    """One diode per bit, conducting when that bit of the state is set."""
    return bin(state).count("1")


class StateError(ValueError):
    def __init__(self, message: str, cell: int | None = None):
        self.cell = cell
        super().__init__(message)


@dataclass(frozen=True)
class CodingState:
    cells: tuple[int, ...]

    def __init__(self, cells: Sequence[int]):
        object.__setattr__(self, "cells", tuple(cells))

    @classmethod
    def uniform(cls, d: RisDescriptor, value: int) -> CodingState:
        return cls([value] * d.n)

    @classmethod
    def all_ones(cls, d: RisDescriptor) -> CodingState:
        """Every bit of every cell set."""
        return cls([(1 << b) - 1 for b in cell_bits(d)])


@dataclass(frozen=True)
class CodingSegment:
    state: CodingState
    dwell: DurationMicroseconds


@dataclass(frozen=True)
class CodingSequence:
    segments: tuple[CodingSegment, ...]

    def __init__(self, segments: Sequence[CodingSegment]):
        if not segments:
            raise ValueError("a coding sequence needs at least one segment")
        object.__setattr__(self, "segments", tuple(segments))

    def __add__(self, other: CodingSequence) -> CodingSequence:
        return CodingSequence(self.segments + other.segments)


@dataclass(frozen=True)
class PowerBreakdown:
    static: StaticBreakdown
    dynamic: PowerMicrowatts
    total: PowerMicrowatts


class SequenceEnergy(NamedTuple):
    energy: EnergyPicojoules
    mean_power: PowerMicrowatts
    duration: DurationMicroseconds


def check_state(d: RisDescriptor, state: CodingState) -> None:
    """Raise StateError naming the first offending cell."""
    if len(state.cells) != d.n:
        raise StateError(f"state has {len(state.cells)} cells, descriptor has {d.n}")
    bits = cell_bits(d)
    for i, s in enumerate(state.cells):
        if isinstance(s, bool) or not isinstance(s, int) or not 0 <= s < (1 << bits[i]):
            raise StateError(f"cell {i}: state {s!r} outside [0, {1 << bits[i]}) for {bits[i]}-bit cell", cell=i)
    first: dict[int, int] = {}
    for i, gid in enumerate(group_ids(d)):
        owner = first.setdefault(gid, i)
        if state.cells[owner] != state.cells[i]:
            raise StateError(
                f"cell {i}: state {state.cells[i]} differs from cell {owner} in the same control group",
                cell=i,
            )


def dynamic_power(
    d: RisDescriptor, state: CodingState, policy: ConductionPolicy = popcount_policy
) -> PowerMicrowatts:
    check_state(d, state)
    dyn = d.dynamic
    if d.technology is Technology.VARACTOR_DIODE:
        return PowerMicrowatts(0)
    if d.technology is Technology.RF_SWITCH:
        assert isinstance(dyn, RfSwitchDynamics)
        return dyn.active_power_per_cell * d.n
    assert isinstance(dyn, PinDiodeDynamics)
    on_total = 0
    off_total = 0
    for s, b in zip(state.cells, cell_bits(d)):
        on = policy(s, b)
        on_total += on
        off_total += b - on
    pol = dyn.polarization_count
    return dyn.on_power_per_diode * (on_total * pol) + dyn.off_power_per_diode * (off_total * pol)


def total_power(
    d: RisDescriptor, state: CodingState, policy: ConductionPolicy = popcount_policy
) -> PowerBreakdown:
    static = static_power_breakdown(d)
    dyn = dynamic_power(d, state, policy)
    return PowerBreakdown(static=static, dynamic=dyn, total=static.static_total + dyn)


def sequence_energy(
    d: RisDescriptor, seq: CodingSequence, policy: ConductionPolicy = popcount_policy
) -> SequenceEnergy:
    """Integrate total power over the sequence; mean power is floored to 1 uW."""
    total = EnergyPicojoules.zero()
    duration = 0
    for i, seg in enumerate(seq.segments):
        try:
            p = total_power(d, seg.state, policy).total
        except StateError as exc:
            raise StateError(f"segment {i}: {exc}", cell=exc.cell) from exc
        total = total + energy(p, seg.dwell)
        duration += seg.dwell.value
    span = DurationMicroseconds(duration)
    return SequenceEnergy(total, PowerMicrowatts(total.value // span.value), span)
