"""Exact solvers, verifiers and reductions for k-Visits scheduling."""

from ._core import (
    Error,
    In3dm,
    KVisits,
    PmInstance,
    Rn3dm,
    analyze,
    decompose,
    density,
    discretize,
    oracle,
    parse,
    pm_solve,
    reduce_rn3dm,
    solve,
    to_text,
    verify,
)

__all__ = [
    "Error",
    "In3dm",
    "KVisits",
    "PmInstance",
    "Rn3dm",
    "analyze",
    "decompose",
    "density",
    "discretize",
    "oracle",
    "parse",
    "pm_solve",
    "reduce_rn3dm",
    "solve",
    "to_text",
    "verify",
]
