"""Power consumption model for reconfigurable intelligent surfaces.

Total power is the static part (control board plus drive circuits) plus the
coding-state dependent dynamic part of the unit cells. All values are exact
integers in microwatts.
"""

__version__ = "0.1.0"

from .quantities import (
    DurationMicroseconds,
    EnergyPicojoules,
    PowerMicrowatts,
    energy,
    format_power,
    parse_power,
)
from .hardware import (
    BitResolution,
    CellArray,
    ControlBoardSpec,
    DescriptorError,
    DriveCircuitSpec,
    GroupingScheme,
    PinDiodeDynamics,
    RfSwitchDynamics,
    RisDescriptor,
    Technology,
    VaractorDynamics,
    component_count,
    group_size,
    validate,
)
from .static_power import (
    StaticBreakdown,
    drive_circuit_count,
    static_power_breakdown,
    total_drive_circuit_power,
)
from .dynamic_power import (
    CodingSegment,
    CodingSequence,
    CodingState,
    PowerBreakdown,
    dynamic_power,
    sequence_energy,
    total_power,
)
from .catalog_io import builtin, load_descriptor, load_states, save_descriptor, save_states
from .analysis import compare, sweep, worst_case_dynamic
