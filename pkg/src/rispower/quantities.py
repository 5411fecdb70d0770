"""Exact integer quantities for power, time and energy.

Power is held in microwatts, durations in microseconds and energy in
picojoules (1 uW x 1 us = 1 pJ), so every arithmetic step stays an integer
and results can be compared for equality.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation

__all__ = [
    "U64_MAX",
    "QuantityError",
    "UnitParseError",
    "PrecisionError",
    "DomainError",
    "QuantityOverflowError",
    "PowerMicrowatts",
    "DurationMicroseconds",
    "EnergyPicojoules",
    "parse_power",
    "format_power",
    "best_unit",
    "energy",
]

U64_MAX = 2**64 - 1

# microwatts per unit
UNIT_SCALE = {"uW": 1, "mW": 1_000, "W": 1_000_000}
_UNIT_ALIASES = {"uW": "uW", "µW": "uW", "μW": "uW", "mW": "mW", "W": "W"}
_UNIT_DIGITS = {"uW": 0, "mW": 3, "W": 6}

_POWER_RE = re.compile(r"^\s*([+-]?)(\d+(?:\.\d*)?|\.\d+)\s*([^\s\d]+)\s*$")


class QuantityError(ValueError):
    pass


class UnitParseError(QuantityError):
    pass


class PrecisionError(QuantityError):
    pass


class DomainError(QuantityError):
    pass


class QuantityOverflowError(QuantityError, OverflowError):
    pass


def _check_range(kind: str, value: int, minimum: int = 0) -> None:
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(f"{kind} must be an int, got {type(value).__name__}")
    if value < minimum:
        raise DomainError(f"{kind} must be >= {minimum}, got {value}")
    if value > U64_MAX:
        raise QuantityOverflowError(f"{kind} {value} exceeds the 64-bit unsigned range")


@dataclass(frozen=True, order=True)
class PowerMicrowatts:
    value: int

    def __post_init__(self):
        _check_range("power", self.value)

    def __add__(self, other: PowerMicrowatts) -> PowerMicrowatts:
        if not isinstance(other, PowerMicrowatts):
            return NotImplemented
        return PowerMicrowatts(self.value + other.value)

    def __mul__(self, factor: int) -> PowerMicrowatts:
        if isinstance(factor, bool) or not isinstance(factor, int):
            return NotImplemented
        if factor < 0:
            raise DomainError("power can only be scaled by a non-negative integer")
        return PowerMicrowatts(self.value * factor)

    __rmul__ = __mul__

    @classmethod
    def zero(cls) -> PowerMicrowatts:
        return cls(0)

    def __str__(self) -> str:
        return format_power(self)


@dataclass(frozen=True, order=True)
class DurationMicroseconds:
    value: int

    def __post_init__(self):
        _check_range("duration", self.value, minimum=1)

    def __add__(self, other: DurationMicroseconds) -> DurationMicroseconds:
        if not isinstance(other, DurationMicroseconds):
            return NotImplemented
        return DurationMicroseconds(self.value + other.value)


@dataclass(frozen=True, order=True)
class EnergyPicojoules:
    value: int

    def __post_init__(self):
        _check_range("energy", self.value)

    def __add__(self, other: EnergyPicojoules) -> EnergyPicojoules:
        if not isinstance(other, EnergyPicojoules):
            return NotImplemented
        return EnergyPicojoules(self.value + other.value)

    @classmethod
    def zero(cls) -> EnergyPicojoules:
        return cls(0)


def parse_power(text: str) -> PowerMicrowatts:
    """Parse ``"<decimal> <unit>"`` (unit uW, mW or W) into exact microwatts.

    Raises PrecisionError instead of rounding when the value is not a whole
    number of microwatts.
    """
    match = _POWER_RE.match(text)
    if match is None:
        raise UnitParseError(f"cannot parse power {text!r}; expected e.g. '0.066 mW'")
    sign, number, unit = match.groups()
    if unit not in _UNIT_ALIASES:
        raise UnitParseError(f"unknown power unit {unit!r} in {text!r}; use uW, mW or W")
    unit = _UNIT_ALIASES[unit]
    try:
        amount = Decimal(number)
    except InvalidOperation as exc:  # pragma: no cover - regex guarantees a decimal
        raise UnitParseError(f"bad number in {text!r}") from exc
    if sign == "-" and amount != 0:
        raise DomainError(f"power cannot be negative: {text!r}")
    scaled = amount * UNIT_SCALE[unit]
    if scaled != scaled.to_integral_value():
        raise PrecisionError(f"{text!r} is not a whole number of microwatts")
    return PowerMicrowatts(int(scaled))


def best_unit(p: PowerMicrowatts) -> str:
    if p.value >= UNIT_SCALE["W"]:
        return "W"
    if p.value >= UNIT_SCALE["mW"]:
        return "mW"
    return "uW"


def format_power(p: PowerMicrowatts, unit: str | None = None, places: int | None = None) -> str:
    """Render a power in ``unit`` (picked automatically when None).

    Without ``places`` the shortest exact decimal is printed, which always
    round-trips through parse_power. With ``places`` the value is truncated
    (never rounded) to that many fractional digits.
    """
    if unit is None:
        unit = best_unit(p)
    if unit not in _UNIT_ALIASES:
        raise UnitParseError(f"unknown power unit {unit!r}")
    unit = _UNIT_ALIASES[unit]
    scale = UNIT_SCALE[unit]
    whole, frac = divmod(p.value, scale)
    digits = _UNIT_DIGITS[unit]
    frac_text = str(frac).rjust(digits, "0") if digits else ""
    if places is None:
        frac_text = frac_text.rstrip("0")
    else:
        frac_text = frac_text[:places].ljust(places, "0")
    number = f"{whole}.{frac_text}" if frac_text else str(whole)
    return f"{number} {unit}"


def energy(p: PowerMicrowatts, d: DurationMicroseconds) -> EnergyPicojoules:
    return EnergyPicojoules(p.value * d.value)
