"""Fair vertex-set problems on graphs with a small cluster vertex deletion set."""

from ._core import (
    DomainError,
    Error,
    Formula,
    Graph,
    ModulatorError,
    ParseError,
    ResourceLimitError,
    evaluate,
    fair_cost,
    find_modulator,
    hard_instance,
    oracle,
    run_cli,
    solve,
)

__all__ = [
    "DomainError",
    "Error",
    "Formula",
    "Graph",
    "ModulatorError",
    "ParseError",
    "ResourceLimitError",
    "evaluate",
    "fair_cost",
    "find_modulator",
    "hard_instance",
    "oracle",
    "run_cli",
    "solve",
]
