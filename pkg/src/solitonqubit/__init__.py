"""Coherent single-qubit control by magnetic solitons on a classical spin chain.

The package splits into five layers:

- ``chain``: lattice equation of motion for the spin-deviation field and a
  fixed-step predictor-corrector integrator;
- ``solitons``: envelope (NLSE) coefficients, bright/dark soliton families,
  residual checks, and chain initial conditions;
- ``qubit``: soliton-shaped two-level drives, the time-dependent Schroedinger
  integrator, reduced-time tools, and coupling tuning;
- ``closedform``: analytic transition-probability formulas and regime
  classifiers used as cross-checks on the numerics;
- ``cli``: JSON-configured scenarios, figure data, tuning and sweeps.
"""

from .chain import (
    ChainParams,
    ChainState,
    ChainTrace,
    default_dt,
    demodulate,
    demodulate_series,
    envelope_norm,
    eom_rhs,
    evolve,
    magnon_number,
    step_pc,
    trace_site_alpha,
    write_norms,
    write_snapshots,
)
from .closedform import (
    BrightDriveParams,
    DarkDriveParams,
    DarkRegime,
    classify_dark_regime,
    dark_fast_pminus,
    dark_fast_validity,
    dark_rabi_pminus,
    dark_resonance_pminus,
    fast_soliton_terms,
    onresonance_pminus,
    rabi_limit_applies,
    rosen_zener_pminus,
    target_to_zeromode,
)
from .errors import (
    BlowUpError,
    DegenerateRegimeError,
    KindMismatchError,
    NormDriftError,
    NumericalError,
    SolitonQubitError,
    ValidationError,
)
from .qubit import (
    DetuningMode,
    Drive,
    DriveSource,
    ProbabilityTrace,
    QubitParams,
    QubitState,
    TuneResult,
    coupling,
    detuning,
    integrate_tdse,
    make_drive,
    pulse_drive,
    reduced_time,
    s_infinity,
    solve_dxy_for_target,
    stueckelberg,
    tune_dz,
    write_drive,
    write_trace,
)
from .solitons import (
    NlseCoefficients,
    Regime,
    SolitonKind,
    SolitonSpec,
    bright_profile,
    classify_regime,
    dark_profile,
    initial_chain_state,
    make_soliton,
    nlse_coefficients,
    nlse_residual,
    nlse_residual_of,
    profile,
    write_profile,
)

__version__ = "0.1.0"

__all__ = [
    "BlowUpError",
    "BrightDriveParams",
    "ChainParams",
    "ChainState",
    "ChainTrace",
    "DarkDriveParams",
    "DarkRegime",
    "DegenerateRegimeError",
    "DetuningMode",
    "Drive",
    "DriveSource",
    "KindMismatchError",
    "NlseCoefficients",
    "NormDriftError",
    "NumericalError",
    "ProbabilityTrace",
    "QubitParams",
    "QubitState",
    "Regime",
    "SolitonKind",
    "SolitonQubitError",
    "SolitonSpec",
    "TuneResult",
    "ValidationError",
    "bright_profile",
    "classify_dark_regime",
    "classify_regime",
    "coupling",
    "dark_fast_pminus",
    "dark_fast_validity",
    "dark_profile",
    "dark_rabi_pminus",
    "dark_resonance_pminus",
    "default_dt",
    "demodulate",
    "demodulate_series",
    "envelope_norm",
    "eom_rhs",
    "evolve",
    "fast_soliton_terms",
    "initial_chain_state",
    "integrate_tdse",
    "magnon_number",
    "make_drive",
    "make_soliton",
    "nlse_coefficients",
    "nlse_residual",
    "nlse_residual_of",
    "onresonance_pminus",
    "profile",
    "pulse_drive",
    "rabi_limit_applies",
    "reduced_time",
    "rosen_zener_pminus",
    "s_infinity",
    "solve_dxy_for_target",
    "step_pc",
    "stueckelberg",
    "target_to_zeromode",
    "trace_site_alpha",
    "tune_dz",
    "write_drive",
    "write_norms",
    "write_profile",
    "write_snapshots",
    "write_trace",
]
