"""Corruption benchmarks, Gaussian-splat rendering and affordance metrics."""

from ._splatbench import (
    Error,
    aiou,
    auc,
    corrupt,
    corruption_kinds,
    evaluate,
    mae,
    read_cloud,
    render,
    run_cli,
    sim,
    total_pairings,
    uniforms,
    write_cloud,
)

__all__ = [
    "Error",
    "aiou",
    "auc",
    "corrupt",
    "corruption_kinds",
    "evaluate",
    "mae",
    "read_cloud",
    "render",
    "run_cli",
    "sim",
    "total_pairings",
    "uniforms",
    "write_cloud",
]
