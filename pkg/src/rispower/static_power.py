"""Static power: control board plus drive circuits."""

from __future__ import annotations

from dataclasses import dataclass

from .hardware import DescriptorError, RisDescriptor, component_count, group_size
from .quantities import PowerMicrowatts

__all__ = [
    "StaticBreakdown",
    "MissingControlBoardPower",
    "drive_circuit_count",
    "total_drive_circuit_power",
    "static_power_breakdown",
]


class MissingControlBoardPower(DescriptorError):
    def __init__(self, name: str):
        super().__init__([f"{name}: control board power required (descriptor leaves it unspecified)"])


@dataclass(frozen=True)
class StaticBreakdown:
    control_board_power: PowerMicrowatts
    drive_circuit_count: int
    per_circuit_power: PowerMicrowatts
    total_drive_power: PowerMicrowatts
    static_total: PowerMicrowatts


def drive_circuit_count(n_c: int, n_g: int, n_s: int) -> int:
    """Drive circuits needed for ``n_c`` components: ceil(n_c / (n_g * n_s))."""
    if n_c < 0:
        raise ValueError(f"component count must be >= 0, got {n_c}")
    if n_g < 1 or n_s < 1:
        raise ValueError(f"group size and signals per circuit must be >= 1, got {n_g}, {n_s}")
    per_circuit = n_g * n_s
    return (n_c + per_circuit - 1) // per_circuit


def _count(d: RisDescriptor) -> int:
    return drive_circuit_count(component_count(d), group_size(d), d.drive_circuit.signals_per_circuit)


def total_drive_circuit_power(d: RisDescriptor) -> PowerMicrowatts:
    return d.drive_circuit.rated_power * _count(d)


def static_power_breakdown(d: RisDescriptor) -> StaticBreakdown:
    board = d.control_board.rated_power
    if board is None:
        raise MissingControlBoardPower(d.name)
    count = _count(d)
    per_circuit = d.drive_circuit.rated_power
    drive_total = per_circuit * count
    return StaticBreakdown(
        control_board_power=board,
        drive_circuit_count=count,
        per_circuit_power=per_circuit,
        total_drive_power=drive_total,
        static_total=board + drive_total,
    )
