"""Gauge maps between quantum systems and their electric network realization."""

from ._qgauge import (
    ConfigError,
    ConstantProfile,
    CosineProfile,
    DimensionError,
    Error,
    FrequencyAssignmentError,
    GaugeSolution,
    GridMismatchError,
    Hamiltonian,
    HermiticityError,
    Netlist,
    NetworkSpec,
    NumericError,
    PoleError,
    PolynomialProfile,
    PreconditionError,
    RealSystem,
    SingularityError,
    TimeGrid,
    UnsupportedSystemError,
    admittance,
    apply_gauge_map,
    build_real_system,
    compose,
    emit_netlist,
    evolve_state,
    gauge_unitarity_deviation,
    intertwining_residual,
    inverse_gauge,
    mapped_hamiltonian_deviation,
    propagator,
    quantum_roundtrip,
    run_cli,
    synthesize,
    transitive_solution,
)

__all__ = [name for name in dir() if not name.startswith("_")]
