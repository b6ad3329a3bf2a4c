from ._eulerkit import (
    Error,
    InvalidInput,
    NumericFailure,
    __version__,
    acceptance,
    beam_b,
    bessel_i,
    beta_gamma,
    beta_integral,
    chain,
    gamma,
    minimize,
    ode_eval,
    ode_solve,
    oscillator,
    roots,
)

__all__ = [
    "Error",
    "InvalidInput",
    "NumericFailure",
    "acceptance",
    "beam_b",
    "bessel_i",
    "beta_gamma",
    "beta_integral",
    "chain",
    "gamma",
    "minimize",
    "ode_eval",
    "ode_solve",
    "oscillator",
    "roots",
]
