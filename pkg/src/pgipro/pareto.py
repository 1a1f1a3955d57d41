"""Objective-space primitives: dominance tests, non-dominated filtering, axis-aligned regions.

Everything here uses the minimization convention (lower is better) and exact
floating-point comparisons; any tolerance belongs to the caller.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionMismatch

Vec = tuple[float, ...]


def _check_dims(a: Sequence[float], b: Sequence[float]) -> None:
    if len(a) != len(b):
        raise DimensionMismatch(f"vector dimensions differ: {len(a)} vs {len(b)}")


def pareto_dominates(a: Sequence[float], b: Sequence[float]) -> bool:
    """True iff a <= b componentwise with a strict improvement somewhere."""
    _check_dims(a, b)
    return all(x <= y for x, y in zip(a, b)) and any(x < y for x, y in zip(a, b))


def strictly_below(a: Sequence[float], b: Sequence[float]) -> bool:
    """True iff a < b in every component."""
    _check_dims(a, b)
    return all(x < y for x, y in zip(a, b))


def filter_nondominated(points: Iterable[Sequence[float]]) -> list[Vec]:
    """Keep the points no other input point dominates.

    Duplicates collapse to the earliest occurrence, and the output preserves
    input order, so results are deterministic for any iteration order.
    """
    unique: list[Vec] = []
    seen: set[Vec] = set()
    m: int | None = None
    for p in points:
        t = tuple(float(x) for x in p)
        if m is None:
            m = len(t)
        elif len(t) != m:
            raise DimensionMismatch(f"vector dimensions differ: {m} vs {len(t)}")
        if t not in seen:
            seen.add(t)
            unique.append(t)
    return [p for p in unique if not any(pareto_dominates(q, p) for q in unique)]


@dataclass(frozen=True)
class Region:
    """Axis-aligned box: inclusive lower corner, exclusive upper corner.

    The upper corner is the referent image in cost space; a solution counts as
    inside only when it is strictly below it in every component.
    """

    lower: Vec
    upper: Vec

    def __post_init__(self) -> None:
        if len(self.lower) != len(self.upper):
            raise DimensionMismatch(
                f"corner dimensions differ: {len(self.lower)} vs {len(self.upper)}"
            )
        if not all(lo < hi for lo, hi in zip(self.lower, self.upper)):
            raise ValueError(f"empty region: lower={self.lower} upper={self.upper}")

    @property
    def m(self) -> int:
        return len(self.lower)

    def diameter(self) -> float:
        """L-infinity extent of the box."""
        return max(hi - lo for lo, hi in zip(self.lower, self.upper))

    def volume(self) -> float:
        v = 1.0
        for lo, hi in zip(self.lower, self.upper):
            v *= hi - lo
        return v


def region_contains(region: Region, p: Sequence[float], strict_upper: bool = True) -> bool:
    """Containment against the inclusive lower and (optionally strict) upper corner."""
    _check_dims(region.lower, p)
    if any(x < lo for x, lo in zip(p, region.lower)):
        return False
    if strict_upper:
        return all(x < hi for x, hi in zip(p, region.upper))
    return all(x <= hi for x, hi in zip(p, region.upper))
