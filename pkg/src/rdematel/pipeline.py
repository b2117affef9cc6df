"""The rough DEMATEL pipeline.

Expert matrices -> group judgment multisets -> rough group matrix ->
normalized rough matrix -> rough total-relation matrix -> interval row and
column sums -> crisp prominence/relation -> weights, ranking and
cause/effect classification.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import crisp as crisp_mod
from .errors import (
    DegenerateInputError,
    InsufficientExpertsError,
    IntervalOrderError,
    InvalidArgumentError,
    ShapeError,
    SingularMatrixError,
)
from .rough import JudgmentSet, RoughNumber, average_rough, crisp_convert, rough_bounds

TAU_MAX_TOTAL_SUM = "max-total-sum"
TAU_MAX_UPPER_SUM = "max-upper-sum"
TAU_STRATEGIES = (TAU_MAX_TOTAL_SUM, TAU_MAX_UPPER_SUM)

CAUSE = "cause"
EFFECT = "effect"
NEUTRAL = "neutral"


@dataclass(frozen=True)
class Scale:
    """Likert scale bounds for influence judgments (default 0..4)."""

    minimum: int = 0
    maximum: int = 4

    def __post_init__(self):
        if self.minimum >= self.maximum:
            raise InvalidArgumentError("scale minimum must be below maximum")

    def contains(self, v: int) -> bool:
        return self.minimum <= v <= self.maximum


@dataclass(frozen=True)
class ExpertMatrix:
    """One expert's square matrix of integer influence judgments, zero diagonal."""

    expert_id: str
    values: np.ndarray
    scale: Scale = Scale()

    def __post_init__(self):
        v = np.asarray(self.values, dtype=int)
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise ShapeError(f"expert {self.expert_id}: matrix must be square, got {v.shape}")
        if np.any(np.diag(v) != 0):
            raise InvalidArgumentError(f"expert {self.expert_id}: diagonal must be zero")
        if np.any(v < self.scale.minimum) or np.any(v > self.scale.maximum):
            raise InvalidArgumentError(
                f"expert {self.expert_id}: judgments must lie in "
                f"{self.scale.minimum}..{self.scale.maximum}"
            )
        object.__setattr__(self, "values", v)

    @property
    def n(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class GroupJudgments:
    """n x n grid of judgment multisets, one per criterion pair."""

    cells: tuple[tuple[JudgmentSet, ...], ...]

    @property
    def n(self) -> int:
        return len(self.cells)


@dataclass(frozen=True)
class RoughMatrix:
    """Interval-valued square matrix stored as two bound matrices."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lo = np.asarray(self.lower, dtype=float)
        up = np.asarray(self.upper, dtype=float)
        if lo.shape != up.shape or lo.ndim != 2 or lo.shape[0] != lo.shape[1]:
            raise ShapeError(f"bound matrices must be square and congruent, got {lo.shape} / {up.shape}")
        if np.any(lo > up + 1e-12):
            i, j = np.unravel_index(int(np.argmax(lo - up)), lo.shape)
            raise IntervalOrderError(f"entry ({i},{j}) has lower {lo[i, j]} > upper {up[i, j]}")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", up)

    @property
    def n(self) -> int:
        return self.lower.shape[0]

    def entry(self, i: int, j: int) -> RoughNumber:
        return RoughNumber(float(self.lower[i, j]), float(self.upper[i, j]))

    @property
    def midpoint(self) -> np.ndarray:
        return (self.lower + self.upper) / 2.0


@dataclass(frozen=True)
class RoughScores:
    """Interval row/column sums of the rough total matrix plus their crisp forms."""

    x_lower: np.ndarray
    x_upper: np.ndarray
    y_lower: np.ndarray
    y_upper: np.ndarray
    x_crisp: np.ndarray
    y_crisp: np.ndarray


@dataclass(frozen=True)
class AnalysisResult:
    """Per-criterion outcome of a rough DEMATEL run."""

    criterion_id: str
    x: float
    y: float
    prominence: float
    relation: float
    omega: float
    weight: float
    rank: int
    group: str


@dataclass
class RoughAnalysis:
    """Everything a single pipeline run produces, intermediates included."""

    criteria: list[str]
    tau_strategy: str
    tau: float
    group_matrix: RoughMatrix
    normalized: RoughMatrix
    total: RoughMatrix
    scores: RoughScores
    results: list[AnalysisResult] = field(default_factory=list)


def collect_group(matrices: Sequence[ExpertMatrix]) -> GroupJudgments:
    """Pool every expert's judgment for each criterion pair into a multiset."""
    if len(matrices) < 2:
        raise InsufficientExpertsError(
            "rough aggregation needs at least two experts; use the crisp method for one"
        )
    n = matrices[0].n
    for m in matrices[1:]:
        if m.n != n:
            raise ShapeError(f"expert {m.expert_id} has {m.n} criteria, expected {n}")
    zero = JudgmentSet((0,))
    cells = tuple(
        tuple(
            zero if i == j else JudgmentSet(tuple(int(m.values[i, j]) for m in matrices))
            for j in range(n)
        )
        for i in range(n)
    )
    return GroupJudgments(cells)


def rough_group_matrix(group: GroupJudgments) -> RoughMatrix:
    """Convert each cell's judgments to rough numbers and average them."""
    n = group.n
    lower = np.zeros((n, n))
    upper = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            cell = group.cells[i][j]
            avg = average_rough([rough_bounds(cell, k) for k in cell])
            lower[i, j] = avg.lower
            upper[i, j] = avg.upper
    return RoughMatrix(lower, upper)


def normalization_factor(r: RoughMatrix, strategy: str = TAU_MAX_TOTAL_SUM) -> float:
    """Scalar tau dividing the rough group matrix.

    ``max-upper-sum`` is the stated linear-scale rule (largest row sum of
    upper bounds); ``max-total-sum`` (largest row sum of lower plus upper
    bounds) is the variant the reference tables actually satisfy.
    """
    if strategy == TAU_MAX_UPPER_SUM:
        tau = float(r.upper.sum(axis=1).max())
    elif strategy == TAU_MAX_TOTAL_SUM:
        tau = float((r.lower.sum(axis=1) + r.upper.sum(axis=1)).max())
    else:
        raise InvalidArgumentError(f"unknown tau strategy {strategy!r}; use one of {TAU_STRATEGIES}")
    if tau == 0.0:
        raise DegenerateInputError("all-zero rough matrix cannot be normalized")
    return tau


def normalize_rough(r: RoughMatrix, strategy: str = TAU_MAX_TOTAL_SUM) -> tuple[RoughMatrix, float]:
    tau = normalization_factor(r, strategy)
    return RoughMatrix(r.lower / tau, r.upper / tau), tau


def rough_total_relation(rn: RoughMatrix) -> RoughMatrix:
    """Apply the total-relation closure to the lower and upper bound matrices independently."""
    try:
        t_lower = crisp_mod.solve_total_relation(rn.lower)
    except SingularMatrixError as exc:
        raise SingularMatrixError(f"lower-bound matrix: {exc}") from exc
    try:
        t_upper = crisp_mod.solve_total_relation(rn.upper)
    except SingularMatrixError as exc:
        raise SingularMatrixError(f"upper-bound matrix: {exc}") from exc
    return RoughMatrix(t_lower, t_upper)


def rough_sums(t: RoughMatrix, joint_envelope: bool = False) -> RoughScores:
    """Interval row sums X and column sums Y, crisped per list.

    By default X and Y are each crisped against their own envelope; with
    ``joint_envelope`` both lists share one envelope (sensitivity option).
    """
    xl, xu = t.lower.sum(axis=1), t.upper.sum(axis=1)
    yl, yu = t.lower.sum(axis=0), t.upper.sum(axis=0)
    x_iv = [RoughNumber(float(a), float(b)) for a, b in zip(xl, xu)]
    y_iv = [RoughNumber(float(a), float(b)) for a, b in zip(yl, yu)]
    if joint_envelope:
        both = crisp_convert(x_iv + y_iv)
        xc, yc = both[: t.n], both[t.n :]
    else:
        xc, yc = crisp_convert(x_iv), crisp_convert(y_iv)
    return RoughScores(xl, xu, yl, yu, np.array(xc), np.array(yc))


def prominence_relation(scores: RoughScores) -> tuple[np.ndarray, np.ndarray]:
    return scores.x_crisp + scores.y_crisp, scores.x_crisp - scores.y_crisp


def weights(prominence: np.ndarray, relation: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Importance omega = sqrt(m^2 + n^2), normalized weights, 1-based ranks.

    Ranks order by descending omega; ties break by input order (stable sort).
    """
    prominence = np.asarray(prominence, dtype=float)
    relation = np.asarray(relation, dtype=float)
    if prominence.size == 0:
        raise InvalidArgumentError("need at least one criterion")
    omega = np.sqrt(prominence**2 + relation**2)
    total = omega.sum()
    if total == 0.0:
        raise DegenerateInputError("all-zero importance vector cannot be normalized")
    w = omega / total
    order = np.argsort(-omega, kind="stable")
    ranks = np.empty(omega.size, dtype=int)
    ranks[order] = np.arange(1, omega.size + 1)
    return omega, w, ranks


def classify(relation: np.ndarray) -> list[str]:
    """Positive relation -> cause, negative -> effect, exactly zero -> neutral."""
    return [CAUSE if n > 0 else EFFECT if n < 0 else NEUTRAL for n in np.asarray(relation)]


def analyze_rough(
    criteria: Sequence[str],
    *,
    expert_matrices: Sequence[ExpertMatrix] | None = None,
    group_matrix: RoughMatrix | None = None,
    tau_strategy: str = TAU_MAX_TOTAL_SUM,
    joint_envelope: bool = False,
) -> RoughAnalysis:
    """Run the full pipeline from either raw expert matrices or a prebuilt rough group matrix."""
    criteria = list(criteria)
    if len(criteria) < 2:
        raise InvalidArgumentError("DEMATEL needs at least two criteria")
    if (expert_matrices is None) == (group_matrix is None):
        raise InvalidArgumentError("provide exactly one of expert_matrices or group_matrix")
    if expert_matrices is not None:
        group_matrix = rough_group_matrix(collect_group(expert_matrices))
    assert group_matrix is not None
    if group_matrix.n != len(criteria):
        raise ShapeError(
            f"group matrix is {group_matrix.n}x{group_matrix.n} but {len(criteria)} criteria given"
        )
    normalized, tau = normalize_rough(group_matrix, tau_strategy)
    total = rough_total_relation(normalized)
    scores = rough_sums(total, joint_envelope=joint_envelope)
    m, n = prominence_relation(scores)
    omega, w, ranks = weights(m, n)
    labels = classify(n)
    results = [
        AnalysisResult(
            criterion_id=cid,
            x=float(scores.x_crisp[i]),
            y=float(scores.y_crisp[i]),
            prominence=float(m[i]),
            relation=float(n[i]),
            omega=float(omega[i]),
            weight=float(w[i]),
            rank=int(ranks[i]),
            group=labels[i],
        )
        for i, cid in enumerate(criteria)
    ]
    return RoughAnalysis(
        criteria=criteria,
        tau_strategy=tau_strategy,
        tau=tau,
        group_matrix=group_matrix,
        normalized=normalized,
        total=total,
        scores=scores,
        results=results,
    )
