"""Wave-packet simulations of the Rabi and Jaynes-Cummings models."""

from ._jcwave import (
    ConfigError,
    DomainError,
    Error,
    NumericalBlowup,
    ParseError,
    ResolutionError,
    Scenario,
    adiabatic_curves,
    jc_exact,
    lz_probability,
    lz_scattering,
    parse_scenario,
    preset,
    preset_names,
    quick_variant,
    revival_estimates,
    revival_from_autocorrelation,
    run_sweep,
    run_to_directory,
    simulate,
)

__all__ = [
    "ConfigError",
    "DomainError",
    "Error",
    "NumericalBlowup",
    "ParseError",
    "ResolutionError",
    "Scenario",
    "adiabatic_curves",
    "jc_exact",
    "lz_probability",
    "lz_scattering",
    "parse_scenario",
    "preset",
    "preset_names",
    "quick_variant",
    "revival_estimates",
    "revival_from_autocorrelation",
    "run_sweep",
    "run_to_directory",
    "simulate",
]
