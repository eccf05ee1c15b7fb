"""Markov bases and exact tests for two-state toric homogeneous Markov chains."""

from ._thmc import (
    BudgetExceeded,
    Error,
    FitFailure,
    IngestError,
    InvalidArgument,
    chi2_sf,
    enumerate_fiber,
    enumerate_moves,
    exact_test,
    fit_mle,
    initial_freq,
    likelihood_ratio,
    lr_df,
    read_csv,
    run_cli,
    suff_stat,
    verify_basis,
)

__all__ = [
    "BudgetExceeded",
    "Error",
    "FitFailure",
    "IngestError",
    "InvalidArgument",
    "chi2_sf",
    "enumerate_fiber",
    "enumerate_moves",
    "exact_test",
    "fit_mle",
    "initial_freq",
    "likelihood_ratio",
    "lr_df",
    "read_csv",
    "run_cli",
    "suff_stat",
    "verify_basis",
]
