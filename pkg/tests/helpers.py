"""Brute-force oracles and hypothesis strategies shared by the tests.

The oracles deliberately avoid the library's formulas: circuit counts come
from a linear search, PIN power from walking every diode of every cell.
"""

from __future__ import annotations

from hypothesis import strategies as st

from rispower.hardware import (
    BitResolution,
    CellArray,
    ControlBoardSpec,
    DriveCircuitSpec,
    GroupingScheme,
    PinDiodeDynamics,
    RfSwitchDynamics,
    RisDescriptor,
    Technology,
    VaractorDynamics,
    cell_bits,
    group_ids,
)
from rispower.quantities import PowerMicrowatts


def min_circuits(n_c: int, n_g: int, n_s: int) -> int:
    """Smallest k with k * n_g * n_s >= n_c, by linear search."""
    k = 0
    while k * n_g * n_s < n_c:
        k += 1
    return k


def per_diode_power(bits, states, n_pol: int, p_on: int, p_off: int) -> int:
    """Sum the draw of every diode: one per bit per polarization."""
    total = 0
    for b, s in zip(bits, states):
        for bit in range(b):
            conducting = (s >> bit) & 1
            for _ in range(n_pol):
                total += p_on if conducting else p_off
    return total


def divisors(n: int) -> list[int]:
    return [k for k in range(1, n + 1) if n % k == 0]


NAMES = ["", "SN74LV595A", "XC7K70T", "DAC3484 + AD8021", "µ-board", "x"]
METADATA = [{}, {"coding_states": 8}, {"control": "column", "bias_v": [-20, 0], "note": None}]

powers = st.integers(min_value=0, max_value=10_000_000).map(PowerMicrowatts)


@st.composite
def groupings(draw, rows: int, cols: int) -> GroupingScheme:
    kind = draw(st.sampled_from(["unit", "row", "column", "subarray", "explicit"]))
    if kind == "unit":
        return GroupingScheme.unit()
    if kind == "row":
        return GroupingScheme.row()
    if kind == "column":
        return GroupingScheme.column()
    if kind == "subarray":
        return GroupingScheme.subarray(draw(st.sampled_from(divisors(rows))), draw(st.sampled_from(divisors(cols))))
    return GroupingScheme.explicit(draw(st.sampled_from(divisors(rows * cols))))


@st.composite
def descriptors(
    draw,
    technology: Technology | None = None,
    max_side: int = 8,
    max_bits: int = 4,
    board: bool | None = None,
    grouped: bool = True,
) -> RisDescriptor:
    tech = technology or draw(st.sampled_from(list(Technology)))
    rows = draw(st.integers(1, max_side))
    cols = draw(st.integers(1, max_side))
    grouping = draw(groupings(rows, cols)) if grouped else GroupingScheme.unit()
    partial = RisDescriptor(
        name="", technology=tech, cells=CellArray(rows, cols), bits=BitResolution.of(1),
        grouping=grouping, drive_circuit=None, control_board=None, dynamic=None,
    )
    if draw(st.booleans()):
        bits = BitResolution.of(draw(st.integers(1, max_bits)))
    else:
        gids = group_ids(partial)
        per_group = {g: draw(st.integers(1, max_bits)) for g in sorted(set(gids))}
        bits = BitResolution.cells(per_group[g] for g in gids)

    if tech is Technology.PIN_DIODE:
        dynamic = PinDiodeDynamics(draw(powers), draw(powers), draw(st.integers(1, 2)))
    elif tech is Technology.RF_SWITCH:
        dynamic = RfSwitchDynamics(draw(powers))
    else:
        dynamic = VaractorDynamics()

    with_board = draw(st.booleans()) if board is None else board
    metadata = draw(st.sampled_from(METADATA))
    return RisDescriptor(
        name=draw(st.text("abcdefgh-_0123456789µ ", min_size=1, max_size=12)),
        technology=tech,
        cells=CellArray(rows, cols),
        bits=bits,
        grouping=grouping,
        drive_circuit=DriveCircuitSpec(draw(st.sampled_from(NAMES)), draw(st.integers(1, 100)), draw(powers)),
        control_board=ControlBoardSpec(draw(st.sampled_from(NAMES)), draw(powers) if with_board else None),
        dynamic=dynamic,
        frequency_hz=draw(st.integers(0, 100_000_000_000)),
        metadata=metadata,
    )


def random_grouping(rng, rows: int, cols: int) -> GroupingScheme:
    kind = rng.choice(["unit", "row", "column", "subarray", "explicit"])
    if kind == "subarray":
        return GroupingScheme.subarray(rng.choice(divisors(rows)), rng.choice(divisors(cols)))
    if kind == "explicit":
        return GroupingScheme.explicit(rng.choice(divisors(rows * cols)))
    return GroupingScheme(kind)


def random_descriptor(rng, technology: Technology | None = None, max_side: int = 8, max_bits: int = 4,
                      board: bool | None = None, max_pol: int = 2) -> RisDescriptor:
    """Seeded counterpart of ``descriptors`` for suites that need exact example counts."""
    tech = technology or rng.choice(list(Technology))
    rows, cols = rng.randint(1, max_side), rng.randint(1, max_side)
    grouping = random_grouping(rng, rows, cols)
    partial = RisDescriptor("", tech, CellArray(rows, cols), BitResolution.of(1), grouping, None, None, None)
    if rng.random() < 0.5:
        bits = BitResolution.of(rng.randint(1, max_bits))
    else:
        gids = group_ids(partial)
        per_group = {g: rng.randint(1, max_bits) for g in sorted(set(gids))}
        bits = BitResolution.cells(per_group[g] for g in gids)

    def power():
        return PowerMicrowatts(rng.randint(0, 10_000_000))

    if tech is Technology.PIN_DIODE:
        dynamic = PinDiodeDynamics(power(), power(), rng.randint(1, max_pol))
    elif tech is Technology.RF_SWITCH:
        dynamic = RfSwitchDynamics(power())
    else:
        dynamic = VaractorDynamics()
    with_board = rng.random() < 0.5 if board is None else board
    return RisDescriptor(
        name="".join(rng.choice("abcdefgh-_0123456789µ ") for _ in range(rng.randint(1, 12))),
        technology=tech,
        cells=CellArray(rows, cols),
        bits=bits,
        grouping=grouping,
        drive_circuit=DriveCircuitSpec(rng.choice(NAMES), rng.randint(1, 100), power()),
        control_board=ControlBoardSpec(rng.choice(NAMES), power() if with_board else None),
        dynamic=dynamic,
        frequency_hz=rng.randint(0, 100_000_000_000),
        metadata=rng.choice(METADATA),
    )


def random_state(rng, d: RisDescriptor) -> list[int]:
    """Group-consistent random coding state."""
    bits = cell_bits(d)
    per_group: dict[int, int] = {}
    cells = []
    for i, g in enumerate(group_ids(d)):
        if g not in per_group:
            per_group[g] = rng.randrange(1 << bits[i])
        cells.append(per_group[g])
    return cells
