"""Python access to the glsim experiments and a few core routines."""

from ._glsim import (
    ConfigError,
    InvalidArgument,
    NumericalError,
    __version__,
    cheeger_constant,
    clock_level_dim_formula,
    clock_level_dims,
    experiment_names,
    gaussian_c,
    gibbs_state,
    history_overlap_closed_form,
    lindbladian,
    list_checks,
    parse_model,
    run_experiment,
    tfim_hamiltonian,
    tilde_gap,
    zero_temp_distance_bound,
)

__all__ = [
    "ConfigError",
    "InvalidArgument",
    "NumericalError",
    "__version__",
    "cheeger_constant",
    "clock_level_dim_formula",
    "clock_level_dims",
    "experiment_names",
    "gaussian_c",
    "gibbs_state",
    "history_overlap_closed_form",
    "lindbladian",
    "list_checks",
    "parse_model",
    "run_experiment",
    "tfim_hamiltonian",
    "tilde_gap",
    "zero_temp_distance_bound",
]
