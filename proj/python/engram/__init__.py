"""Python interface to the engram memory engine.

Typical loop::

    eng = engram.create({"dim": 16, "n_wm": 50})
    ids, vectors, scores = eng.retrieve(batch)        # [n, dim] float array
    weights = host_attention(vectors)                 # one per remembered engram
    stats = eng.feedback_and_step(weights)
"""

from ._engram import (
    ConfigError,
    ContractError,
    Engine,
    EngramError,
    IoError,
    ParseError,
    SequencingError,
    ShapeError,
    create,
    simulate_snapshot,
    workload,
)

__all__ = [
    "ConfigError",
    "ContractError",
    "Engine",
    "EngramError",
    "IoError",
    "ParseError",
    "SequencingError",
    "ShapeError",
    "create",
    "simulate_snapshot",
    "workload",
]
