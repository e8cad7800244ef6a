"""Pseudospectral 2D Navier-Stokes solver with nudging data assimilation."""

from ._nudge2d import (
    BlowUpError,
    ConfigError,
    ContractError,
    DegenerateError,
    FormatError,
    NumericalError,
    SolverConfig,
    State,
    Subdomain,
    __version__,
    advance,
    advise,
    approximation_table,
    diagnostics,
    fit_rate,
    fit_spectral_constant,
    forcing,
    load_solver_config,
    read_checkpoint,
    read_field,
    resume,
    smoother,
    spinup,
    subsample,
    time_to_threshold,
    twin,
    write_checkpoint,
    write_field,
)

__all__ = [
    "BlowUpError",
    "ConfigError",
    "ContractError",
    "DegenerateError",
    "FormatError",
    "NumericalError",
    "SolverConfig",
    "State",
    "Subdomain",
    "__version__",
    "advance",
    "advise",
    "approximation_table",
    "diagnostics",
    "fit_rate",
    "fit_spectral_constant",
    "forcing",
    "load_solver_config",
    "read_checkpoint",
    "read_field",
    "resume",
    "smoother",
    "spinup",
    "subsample",
    "time_to_threshold",
    "twin",
    "write_checkpoint",
    "write_field",
]
