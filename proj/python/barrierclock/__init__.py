"""Weak-measurement traversal and dwell times for 1D piecewise-constant barriers."""

from ._core import (
    ChannelTimes,
    DwellDensitySample,
    OpaqueAsymptotics,
    PhaseRelation,
    PointerOutcome,
    PotentialProfile,
    RectangularCoefficients,
    Region,
    ScatteringSolution,
    Segment,
    Side,
    SpinClockResult,
    SpinState,
    TimeChannel,
    Units,
    Wave,
    __version__,
    channel_times,
    coherent_spin_state,
    complex_time_via_derivative,
    conditional_times_rectangular,
    dwell_density,
    far_side_field_effect,
    group_delay,
    larmor_spin_S,
    larmor_spin_half,
    opaque_asymptotics,
    oracle,
    oscillation_budget,
    phase_relation_check,
    pointer_measurement,
    rectangular_coefficients,
    run_verify,
    solve_stationary,
    squeezed_spin_state,
    wavefunction_at,
    weak_value_time,
)

__all__ = [
    "ChannelTimes",
    "DwellDensitySample",
    "OpaqueAsymptotics",
    "PhaseRelation",
    "PointerOutcome",
    "PotentialProfile",
    "RectangularCoefficients",
    "Region",
    "ScatteringSolution",
    "Segment",
    "Side",
    "SpinClockResult",
    "SpinState",
    "TimeChannel",
    "Units",
    "Wave",
    "__version__",
    "channel_times",
    "coherent_spin_state",
    "complex_time_via_derivative",
    "conditional_times_rectangular",
    "dwell_density",
    "far_side_field_effect",
    "group_delay",
    "larmor_spin_S",
    "larmor_spin_half",
    "opaque_asymptotics",
    "oracle",
    "oscillation_budget",
    "phase_relation_check",
    "pointer_measurement",
    "rectangular_coefficients",
    "run_verify",
    "solve_stationary",
    "squeezed_spin_state",
    "wavefunction_at",
    "weak_value_time",
]
