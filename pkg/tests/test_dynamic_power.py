import dataclasses
import itertools

import pytest
from hypothesis import given, strategies as st

from helpers import descriptors, per_diode_power
from rispower.catalog_io import builtin
from rispower.dynamic_power import (
    CodingSegment,
    CodingSequence,
    CodingState,
    StateError,
    dynamic_power,
    sequence_energy,
    total_power,
)
from rispower.hardware import (
    BitResolution,
    CellArray,
    ControlBoardSpec,
    GroupingScheme,
    PinDiodeDynamics,
    Technology,
    cell_bits,
    group_ids,
)
from rispower.quantities import DurationMicroseconds, PowerMicrowatts

SECOND = DurationMicroseconds(1_000_000)


def with_board(d, uw=1_500_000):
    return dataclasses.replace(d, control_board=ControlBoardSpec("ZYNQ7100", PowerMicrowatts(uw)))


@pytest.fixture
def pin():
    return builtin("pin-16x16")


def test_varactor_dynamic_is_zero():
    d = builtin("varactor-8x16")
    assert dynamic_power(d, CodingState.uniform(d, 5)) == PowerMicrowatts(0)


def test_pin_all_ones(pin):
    ones = CodingState.uniform(pin, 1)
    expected = per_diode_power(cell_bits(pin), ones.cells, 1, 12_600, 0)
    assert expected == 3_225_600
    assert dynamic_power(pin, ones) == PowerMicrowatts(3_225_600)


def test_pin_all_zeros(pin):
    assert dynamic_power(pin, CodingState.uniform(pin, 0)) == PowerMicrowatts(0)


def test_rf_switch_dynamic():
    d = builtin("rfswitch-8x8")
    assert dynamic_power(d, CodingState.uniform(d, 0)) == PowerMicrowatts(31_680)


def test_total_power_examples(pin):
    b = total_power(pin, CodingState.uniform(pin, 1))
    assert b.total == PowerMicrowatts(8_027_712)
    assert b.total == b.static.static_total + b.dynamic

    rf = builtin("rfswitch-8x8")
    assert total_power(rf, CodingState.uniform(rf, 1)).total == PowerMicrowatts(5_071_680)

    var = with_board(builtin("varactor-8x16"))
    b = total_power(var, CodingState.uniform(var, 7))
    assert b.total == b.static.static_total == PowerMicrowatts(1_500_000 + 1_720_000)


def test_state_errors(pin):
    with pytest.raises(StateError, match="256"):
        dynamic_power(pin, CodingState([1] * 10))
    cells = [0] * 256
    cells[17] = 2
    with pytest.raises(StateError) as info:
        dynamic_power(pin, CodingState(cells))
    assert info.value.cell == 17


def test_group_consistency_enforced():
    d = builtin("varactor-8x16")
    cells = [0] * d.n
    cells[1] = 3  # row 0, column 1 shares a group with column 0
    with pytest.raises(StateError, match="same control group") as info:
        dynamic_power(d, CodingState(cells))
    assert info.value.cell == 1


def test_sequence_energy_by_definition(pin):
    # one cell, no drive power: 1000 uW with the diode off, 2000 uW with it on
    d = with_board(dataclasses.replace(
        pin,
        cells=CellArray(1, 1),
        drive_circuit=dataclasses.replace(pin.drive_circuit, rated_power=PowerMicrowatts(0)),
        dynamic=PinDiodeDynamics(PowerMicrowatts(1000)),
    ), 1000)
    seq = CodingSequence([CodingSegment(CodingState([0]), SECOND), CodingSegment(CodingState([1]), SECOND)])
    result = sequence_energy(d, seq)
    assert result.energy.value == 3_000_000_000
    assert result.mean_power == PowerMicrowatts(1500)
    assert result.duration == DurationMicroseconds(2_000_000)


def test_single_segment(pin):
    state = CodingState.uniform(pin, 1)
    result = sequence_energy(pin, CodingSequence([CodingSegment(state, SECOND)]))
    assert result.energy.value == 8_027_712 * 1_000_000
    assert result.mean_power == PowerMicrowatts(8_027_712)
    assert result.duration == SECOND


def test_alternating_sequence_halves_dynamic(pin):
    ones, zeros = CodingState.uniform(pin, 1), CodingState.uniform(pin, 0)
    seq = CodingSequence([CodingSegment(s, SECOND) for s in (ones, zeros) * 3])
    result = sequence_energy(pin, seq)
    # segment-by-segment summation
    expected = sum((4_802_112 + (3_225_600 if s is ones else 0)) * 1_000_000 for s in (ones, zeros) * 3)
    assert result.energy.value == expected
    assert result.mean_power.value - 4_802_112 == 3_225_600 // 2


def test_empty_sequence_rejected():
    with pytest.raises(ValueError):
        CodingSequence([])


def test_custom_conduction_policy(pin):
    # e.g. a diode that conducts for state 0 instead of 1
    inverted = lambda state, bits: bits - bin(state).count("1")  # noqa: E731
    assert dynamic_power(pin, CodingState.uniform(pin, 0), inverted) == PowerMicrowatts(3_225_600)


def test_varactor_zero_for_every_state_exhaustive():
    d = dataclasses.replace(builtin("varactor-8x16"), cells=CellArray(2, 4), grouping=GroupingScheme.unit(),
                            bits=BitResolution.of(2))
    for cells in itertools.product(range(4), repeat=8):
        assert dynamic_power(d, CodingState(cells)).value == 0


@st.composite
def pin_and_state(draw, max_side=8, max_bits=4, p_off_zero=False):
    d = draw(descriptors(technology=Technology.PIN_DIODE, max_side=max_side, max_bits=max_bits, board=True))
    if p_off_zero:
        d = dataclasses.replace(d, dynamic=dataclasses.replace(d.dynamic, off_power_per_diode=PowerMicrowatts(0)))
    bits = cell_bits(d)
    per_group = {}
    cells = []
    for i, g in enumerate(group_ids(d)):
        if g not in per_group:
            per_group[g] = draw(st.integers(0, (1 << bits[i]) - 1))
        cells.append(per_group[g])
    return d, CodingState(cells)


@given(pin_and_state())
def test_pin_matches_per_diode_oracle(case):
    d, state = case
    dyn = d.dynamic
    expected = per_diode_power(
        cell_bits(d), state.cells, dyn.polarization_count, dyn.on_power_per_diode.value, dyn.off_power_per_diode.value
    )
    assert dynamic_power(d, state).value == expected


@given(pin_and_state(p_off_zero=True), st.data())
def test_setting_bits_never_lowers_power(case, data):
    d, state = case
    if d.grouping != GroupingScheme.unit():
        d = dataclasses.replace(d, grouping=GroupingScheme.unit())
    i = data.draw(st.integers(0, d.n - 1))
    bit = data.draw(st.integers(0, cell_bits(d)[i] - 1))
    cells = list(state.cells)
    cells[i] |= 1 << bit
    assert dynamic_power(d, CodingState(cells)) >= dynamic_power(d, state)


@given(pin_and_state())
def test_total_is_static_plus_dynamic(case):
    d, state = case
    b = total_power(d, state)
    assert b.total == b.static.static_total + b.dynamic


@st.composite
def sequences(draw, d):
    n = draw(st.integers(1, 4))
    segs = []
    for _ in range(n):
        value = draw(st.integers(0, 1))
        segs.append(CodingSegment(CodingState.uniform(d, value), DurationMicroseconds(draw(st.integers(1, 10**6)))))
    return CodingSequence(segs)


@given(st.data())
def test_sequence_energy_additive(data):
    d = builtin("pin-16x16")
    a, b = data.draw(sequences(d)), data.draw(sequences(d))
    assert sequence_energy(d, a + b).energy == sequence_energy(d, a).energy + sequence_energy(d, b).energy
