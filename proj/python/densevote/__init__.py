"""Dense-block fraud detection on bipartite purchase graphs."""

from densevote._core import (
    BipartiteGraph,
    Detection,
    Error,
    EvalReport,
    VoteTally,
    apply_majority_vote,
    density_score,
    detect_blocks,
    evaluate,
    generate,
    load_edge_list,
    merchant_edge_weights,
    parse_edge_list,
    peel_densest,
    run_ensemble,
    sample,
    sweep_threshold,
    truncating_point,
)

__all__ = [
    "BipartiteGraph",
    "Detection",
    "Error",
    "EvalReport",
    "VoteTally",
    "apply_majority_vote",
    "density_score",
    "detect_blocks",
    "evaluate",
    "generate",
    "load_edge_list",
    "merchant_edge_weights",
    "parse_edge_list",
    "peel_densest",
    "run_ensemble",
    "sample",
    "sweep_threshold",
    "truncating_point",
]
