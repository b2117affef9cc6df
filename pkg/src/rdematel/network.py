"""Crisp influence matrix, significance threshold, and causal-diagram data.

The rough total-relation matrix is collapsed to a single crisp matrix,
a cutoff q filters out weak influences, and what survives is the directed
influence network.  The causal diagram is just the (prominence, relation)
point per criterion.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidArgumentError
from .pipeline import AnalysisResult, RoughMatrix
from .rough import RoughNumber, crisp_convert

CRISPIFY_MIDPOINT = "midpoint"
CRISPIFY_GLOBAL = "global-crisp"
CRISPIFY_MODES = (CRISPIFY_MIDPOINT, CRISPIFY_GLOBAL)

THRESHOLD_MEAN_SIGMA = "mean-sigma"
THRESHOLD_FIXED = "fixed"


@dataclass(frozen=True)
class Edge:
    source: str
    target: str
    strength: float


@dataclass(frozen=True)
class InfluenceNetwork:
    nodes: tuple[str, ...]
    edges: tuple[Edge, ...]
    threshold: float


@dataclass(frozen=True)
class CausalPoint:
    criterion_id: str
    prominence: float
    relation: float
    group: str


def crispify_total(t: RoughMatrix, mode: str = CRISPIFY_MIDPOINT) -> np.ndarray:
    """Collapse the rough total matrix to crisp entries.

    ``midpoint`` takes interval midpoints; ``global-crisp`` runs the
    envelope-based crisp conversion over all n*n entries at once.
    """
    if mode == CRISPIFY_MIDPOINT:
        return t.midpoint
    if mode == CRISPIFY_GLOBAL:
        n = t.n
        flat = [
            RoughNumber(float(t.lower[i, j]), float(t.upper[i, j]))
            for i in range(n)
            for j in range(n)
        ]
        return np.array(crisp_convert(flat)).reshape(n, n)
    raise InvalidArgumentError(f"unknown crispify mode {mode!r}; use one of {CRISPIFY_MODES}")


def threshold(
    tstar: np.ndarray,
    mode: str = THRESHOLD_MEAN_SIGMA,
    k: float = 1.0,
    fixed: float | None = None,
    include_diagonal: bool = False,
) -> float:
    """Significance cutoff q on the crisp influence matrix.

    ``mean-sigma`` uses mean + k * population sigma of the entries
    (diagonal excluded by default: self-influence is a structural zero).
    """
    tstar = np.asarray(tstar, dtype=float)
    if tstar.shape[0] < 2:
        raise InvalidArgumentError("threshold needs at least two criteria")
    if mode == THRESHOLD_FIXED:
        if fixed is None:
            raise InvalidArgumentError("fixed threshold mode requires a q value")
        if fixed < 0:
            raise InvalidArgumentError(f"fixed threshold must be non-negative, got {fixed}")
        return float(fixed)
    if mode != THRESHOLD_MEAN_SIGMA:
        raise InvalidArgumentError(f"unknown threshold mode {mode!r}")
    if include_diagonal:
        entries = tstar.ravel()
    else:
        entries = tstar[~np.eye(tstar.shape[0], dtype=bool)]
    return float(entries.mean() + k * entries.std())


def extract_network(
    tstar: np.ndarray,
    q: float,
    criteria: Sequence[str],
    include_self_loops: bool = False,
) -> InfluenceNetwork:
    """Keep edges (i -> j) with strength >= q; isolated nodes stay in the node list."""
    tstar = np.asarray(tstar, dtype=float)
    n = tstar.shape[0]
    edges = []
    for i in range(n):
        for j in range(n):
            if i == j and not include_self_loops:
                continue
            if tstar[i, j] >= q:
                edges.append(Edge(criteria[i], criteria[j], float(tstar[i, j])))
    return InfluenceNetwork(tuple(criteria), tuple(edges), float(q))


def causal_diagram(results: Sequence[AnalysisResult]) -> list[CausalPoint]:
    """One point per criterion at (prominence, relation), carrying its group label."""
    return [
        CausalPoint(r.criterion_id, r.prominence, r.relation, r.group) for r in results
    ]
