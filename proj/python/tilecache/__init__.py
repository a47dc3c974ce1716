"""Trace-driven cache simulation and I/O bounds for blocked matrix multiplication."""

from ._core import (
    AccessTrace,
    BlockSpec,
    ConfigError,
    DomainError,
    Error,
    IdScheme,
    InfeasibleError,
    Role,
    ShapeError,
    SimResult,
    TraceError,
    assign_ids,
    best_shape,
    flop_count,
    generate_pinned_trace,
    generate_trace,
    hong_kung_bound,
    load_trace,
    matmul,
    olivry_bound,
    optimal_block,
    predicted_io,
    report_bounds,
    run_sweep,
    selftest,
    simulate,
    simulate_policy,
    timing_probe,
)

__all__ = [name for name in dir() if not name.startswith("_")]
