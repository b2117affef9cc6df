"""Rough-number machinery: set approximations, interval arithmetic, crisp conversion.

A rough number summarizes one judgment against the whole group's judgment
multiset: its lower bound is the mean of all judgments not above it, its
upper bound the mean of all judgments not below it.  Unanimous groups
collapse to point intervals, which is what makes the crisp method a
degenerate case of the rough pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    DivisionByZeroError,
    InvalidArgumentError,
    IntervalOrderError,
)


@dataclass(frozen=True)
class RoughNumber:
    """Closed interval [lower, upper]."""

    lower: float
    upper: float

    def __post_init__(self):
        if not (self.lower <= self.upper):
            raise IntervalOrderError(
                f"interval lower bound {self.lower} exceeds upper bound {self.upper}"
            )

    @property
    def width(self) -> float:
        return self.upper - self.lower

    @property
    def midpoint(self) -> float:
        return (self.lower + self.upper) / 2.0

    def is_point(self, tol: float = 0.0) -> bool:
        return self.width <= tol

    def __add__(self, other: "RoughNumber") -> "RoughNumber":
        return rough_add(self, other)

    def __sub__(self, other: "RoughNumber") -> "RoughNumber":
        return rough_sub(self, other)

    def __mul__(self, other):
        if isinstance(other, RoughNumber):
            return rough_mul(self, other)
        return rough_scale(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other: "RoughNumber") -> "RoughNumber":
        return rough_div(self, other)


@dataclass(frozen=True)
class JudgmentSet:
    """Non-empty multiset of integer judgments, stored sorted ascending."""

    values: tuple[int, ...]

    def __post_init__(self):
        if not self.values:
            raise InvalidArgumentError("judgment set must be non-empty")
        object.__setattr__(self, "values", tuple(sorted(int(v) for v in self.values)))

    @classmethod
    def of(cls, values: Iterable[int]) -> "JudgmentSet":
        return cls(tuple(values))

    def __len__(self) -> int:
        return len(self.values)

    def __contains__(self, k: int) -> bool:
        return k in self.values

    def __iter__(self):
        return iter(self.values)


def lower_approximation(judgments: JudgmentSet, k: int) -> JudgmentSet:
    """All judgments <= k, duplicates retained. k must occur in the set."""
    if k not in judgments:
        raise InvalidArgumentError(f"judgment {k} not present in {judgments.values}")
    return JudgmentSet(tuple(v for v in judgments if v <= k))


def upper_approximation(judgments: JudgmentSet, k: int) -> JudgmentSet:
    """All judgments >= k, duplicates retained. k must occur in the set."""
    if k not in judgments:
        raise InvalidArgumentError(f"judgment {k} not present in {judgments.values}")
    return JudgmentSet(tuple(v for v in judgments if v >= k))


def rough_bounds(judgments: JudgmentSet, k: int) -> RoughNumber:
    """Rough number for judgment k within the group multiset.

    Lower bound is the multiset mean of the lower approximation, upper
    bound the mean of the upper approximation; always lower <= k <= upper.
    """
    lo = lower_approximation(judgments, k).values
    up = upper_approximation(judgments, k).values
    return RoughNumber(sum(lo) / len(lo), sum(up) / len(up))


def average_rough(sequence: Sequence[RoughNumber]) -> RoughNumber:
    """Componentwise mean of a sequence of rough numbers."""
    if not sequence:
        raise InvalidArgumentError("cannot average an empty rough sequence")
    m = len(sequence)
    return RoughNumber(
        sum(rn.lower for rn in sequence) / m,
        sum(rn.upper for rn in sequence) / m,
    )


def rough_add(a: RoughNumber, b: RoughNumber) -> RoughNumber:
    return RoughNumber(a.lower + b.lower, a.upper + b.upper)


def rough_sub(a: RoughNumber, b: RoughNumber) -> RoughNumber:
    # componentwise; with mixed signs this can invert the bound order,
    # which RoughNumber rejects as an IntervalOrderError
    return RoughNumber(a.lower - b.lower, a.upper - b.upper)


def rough_mul(a: RoughNumber, b: RoughNumber) -> RoughNumber:
    return RoughNumber(a.lower * b.lower, a.upper * b.upper)


def rough_div(a: RoughNumber, b: RoughNumber) -> RoughNumber:
    if b.lower == 0.0 or b.upper == 0.0:
        raise DivisionByZeroError(f"divisor interval [{b.lower}, {b.upper}] has a zero bound")
    if (b.lower > 0) != (b.upper > 0):
        raise InvalidArgumentError(
            f"divisor interval [{b.lower}, {b.upper}] bounds must share a sign"
        )
    return RoughNumber(a.lower / b.lower, a.upper / b.upper)


def rough_scale(a: RoughNumber, mu: float) -> RoughNumber:
    return RoughNumber(mu * a.lower, mu * a.upper)


def crisp_convert(intervals: Sequence[RoughNumber]) -> list[float]:
    """Convert a list of rough numbers to crisp values.

    Each interval is normalized against the global envelope
    [min lower, max upper] of the whole list, blended into a single
    coefficient, and denormalized back onto the original scale.  When the
    envelope is degenerate (all intervals the same point) the common point
    is returned for every entry.
    """
    if not intervals:
        raise InvalidArgumentError("cannot crisp-convert an empty interval list")
    lo = min(rn.lower for rn in intervals)
    hi = max(rn.upper for rn in intervals)
    span = hi - lo
    if span == 0.0:
        return [lo for _ in intervals]
    out = []
    for rn in intervals:
        nl = (rn.lower - lo) / span
        nu = (rn.upper - lo) / span
        alpha = (nl * (1.0 - nl) + nu * nu) / (1.0 - nl + nu)
        out.append(lo + alpha * span)
    return out
