"""Exact-arithmetic Koszul-Tate resolution engine."""

from ._core import (
    CapExceeded,
    StructuralError,
    euler_lagrange,
    jet_demo,
    koszul_betti,
    poly_roundtrip,
    regularity,
    run_problem,
    selftest,
    tate_betti,
    total_derivative,
)


def run_file(path, **kwargs):
    """Run a problem file from disk; returns (exit_code, report)."""
    with open(path, "r", encoding="utf-8") as fh:
        return run_problem(fh.read(), **kwargs)


__all__ = [
    "CapExceeded",
    "StructuralError",
    "euler_lagrange",
    "jet_demo",
    "koszul_betti",
    "poly_roundtrip",
    "regularity",
    "run_file",
    "run_problem",
    "selftest",
    "tate_betti",
    "total_derivative",
]
