"""Parametric integer linear programs with exact arithmetic."""

from ._core import (
    Error,
    FormError,
    LimitExceeded,
    OutOfRangeError,
    ParseError,
    PreconditionError,
    Program,
    QuasiPolynomial,
    UnboundedError,
    count,
    f_ell,
    hull_family,
    hull_vertices,
    infer,
    infer_sequence,
    lattice_points,
    run_cli,
)

__all__ = [
    "Error",
    "FormError",
    "LimitExceeded",
    "OutOfRangeError",
    "ParseError",
    "PreconditionError",
    "Program",
    "QuasiPolynomial",
    "UnboundedError",
    "count",
    "f_ell",
    "hull_family",
    "hull_vertices",
    "infer",
    "infer_sequence",
    "lattice_points",
    "run_cli",
]
