"""Python access to the otsfd convergence studies."""

from ._core import (
    CSV_HEADER,
    ConfigError,
    ConvergenceReport,
    MissingDerivativeError,
    OtsfdError,
    StabilityError,
    StudyRow,
    dyadic_resolutions,
    experiment,
    experiments,
    fit_loglog,
    fixtures,
    optimal_dt,
    run_study,
)

__all__ = [
    "CSV_HEADER",
    "ConfigError",
    "ConvergenceReport",
    "MissingDerivativeError",
    "OtsfdError",
    "StabilityError",
    "StudyRow",
    "dyadic_resolutions",
    "experiment",
    "experiments",
    "fit_loglog",
    "fixtures",
    "optimal_dt",
    "run_study",
]
