"""Expected signatures of stopped Brownian motion and simple random walks."""

from ._core import (
    DomainError,
    FloatTensor,
    ParseError,
    PolyTensor,
    RationalTensor,
    SingularElement,
    UsageError,
    cli,
    disk_expected_signature,
    exp_increment,
    exp_increment_float,
    interval_levels,
    lattice_expected_signature,
    lattice_expected_signature_float,
    mc_estimate,
    mean_value_check,
    poisson_solve_disk,
    run_check,
    signature,
    signature_float,
)

__all__ = [
    "DomainError",
    "FloatTensor",
    "ParseError",
    "PolyTensor",
    "RationalTensor",
    "SingularElement",
    "UsageError",
    "cli",
    "disk_expected_signature",
    "exp_increment",
    "exp_increment_float",
    "interval_levels",
    "lattice_expected_signature",
    "lattice_expected_signature_float",
    "mc_estimate",
    "mean_value_check",
    "poisson_solve_disk",
    "run_check",
    "signature",
    "signature_float",
]
