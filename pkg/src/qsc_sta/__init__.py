"""Superadiabatic optical/microwave state conversion through a mechanical mode."""
from .dynamics import DecayRates, fidelity, integrate_density, integrate_state, lindblad_rhs, populations
from .errors import (
    BracketError,
    DegenerateCouplingError,
    InfeasibleTimeError,
    IntegrationDivergedError,
    InvalidArgumentError,
    InvalidCombinationError,
    NumericalError,
    OutOfRangeError,
    QSCError,
)
from .model import Basis, adiabatic_frame, adiabatic_hamiltonian, build_h_int, eigensystem, spin1_operators
from .protocols import (
    BENCHMARK_T0,
    ProtocolSpec,
    SimulationResult,
    assemble_protocol,
    max_intermediate_population,
    predicted_intermediate_population,
    run_conversion,
    sweep_squeeze,
)
from .pulses import (
    Direction,
    PulseParams,
    Variant,
    auxiliary_f,
    base_couplings,
    control_fields,
    dressed_frame_check,
    dressed_hamiltonian,
    modified_couplings,
    satd_correction,
)
from .search import ConstraintReport, constraint_report, find_max_squeeze, find_minimal_time, peak_modified_amplitude

__version__ = "0.1.0"
