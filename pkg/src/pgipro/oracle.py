"""Single-route Pareto oracle: depth-first search with dominance pruning and scalarized guidance.

Given a target region, the oracle either returns one Pareto-optimal path whose
value is strictly below the region's upper corner in every objective, or
reports that no such path exists. Exploration order is steered by a scalarized
distance of each admissible estimate to the region's best corner.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Literal, Sequence

from .errors import DegenerateAxis, DimensionMismatch, OracleTimeLimit, Unreachable
from .mograph import MultiObjectiveGraph, Path, Vec
from .pareto import Region, pareto_dominates, strictly_below

GuidanceKind = Literal["manhattan", "chebyshev"]


@dataclass(frozen=True)
class GuidanceMode:
    """Scalarization for neighbor prioritization; lower distance explores first.

    `target` is the corner the search steers toward (the region's best case)
    and `reference` the normalizing corner (the region's exclusive bound).
    """

    kind: GuidanceKind
    target: Vec
    reference: Vec


def mode_for_region(region: Region, kind: GuidanceKind = "chebyshev") -> GuidanceMode:
    return GuidanceMode(kind=kind, target=region.lower, reference=region.upper)


def guidance_distance(estimate: Sequence[float], mode: GuidanceMode) -> float:
    """Manhattan sums the normalized deviations from the target, Chebyshev takes the max."""
    if len(estimate) != len(mode.target):
        raise DimensionMismatch(
            f"estimate dimension {len(estimate)} does not match mode dimension {len(mode.target)}"
        )
    terms = []
    for c, t, ref in zip(estimate, mode.target, mode.reference):
        numerator = abs(c - t)
        denominator = ref - t
        if denominator == 0.0:
            if numerator == 0.0:
                terms.append(0.0)  # coincident reference points contribute nothing
                continue
            raise DegenerateAxis(f"zero normalization span with deviation {numerator}")
        terms.append(numerator / denominator)
    return sum(terms) if mode.kind == "manhattan" else max(terms)


class PruneReason(Enum):
    EXCEEDS_INCUMBENT = "ExceedsIncumbent"
    TOUCHES_REGION_BOUND = "TouchesRegionBound"
    DOMINATED_AT_NODE = "DominatedAtNode"


class VisitedStore:
    """Per-node archive of mutually non-dominated cumulative cost vectors."""

    def __init__(self) -> None:
        self._vectors: dict[str, list[Vec]] = {}

    def get(self, node: str) -> list[Vec]:
        return self._vectors.get(node, [])

    def insert(self, node: str, g: Vec) -> None:
        stored = self._vectors.setdefault(node, [])
        stored[:] = [v for v in stored if not pareto_dominates(g, v)]
        stored.append(g)


def prune(
    estimate: Vec,
    g_v: Vec,
    current_best: Vec | None,
    region_upper: Vec,
    visited: VisitedStore,
    node: str,
) -> PruneReason | None:
    """Decide whether a neighbor with optimistic estimate `estimate` can be discarded.

    Returns None to keep the neighbor. Equality against the region bound prunes
    because the bound must be beaten strictly; an exact repeat of a stored
    vector also prunes, which guarantees termination on zero-cost cycles.
    """
    if current_best is not None and any(e > b for e, b in zip(estimate, current_best)):
        return PruneReason.EXCEEDS_INCUMBENT
    if any(e >= u for e, u in zip(estimate, region_upper)):
        return PruneReason.TOUCHES_REGION_BOUND
    for stored in visited.get(node):
        if stored == g_v or pareto_dominates(stored, g_v):
            return PruneReason.DOMINATED_AT_NODE
    return None


@dataclass
class SolveDiagnostics:
    """Per-call search counters, exported by the benchmark harness."""

    expanded: int = 0
    pruned: dict[str, int] = field(
        default_factory=lambda: {r.value: 0 for r in PruneReason}
    )
    wall_seconds: float = 0.0


@dataclass(frozen=True)
class OracleOutcome:
    """Either a single Pareto-optimal path inside the region, or infeasibility."""

    path: Path | None

    @property
    def feasible(self) -> bool:
        return self.path is not None

    @classmethod
    def success(cls, path: Path) -> "OracleOutcome":
        return cls(path=path)

    @classmethod
    def infeasible(cls) -> "OracleOutcome":
        return cls(path=None)


class _SearchNode:
    __slots__ = ("node", "g", "parent")

    def __init__(self, node: str, g: Vec, parent: "_SearchNode | None") -> None:
        self.node = node
        self.g = g
        self.parent = parent

    def to_path(self) -> Path:
        nodes: list[str] = []
        cursor: _SearchNode | None = self
        while cursor is not None:
            nodes.append(cursor.node)
            cursor = cursor.parent
        nodes.reverse()
        return Path(tuple(nodes), self.g)


def solve_region(
    g: MultiObjectiveGraph,
    source: str,
    target: str,
    region: Region,
    mode: GuidanceMode | GuidanceKind,
    lower_bound_tables: Sequence[dict[str, float]],
    *,
    diag: SolveDiagnostics | None = None,
    deadline_seconds: float | None = None,
) -> OracleOutcome:
    """Depth-first stack search for one Pareto-optimal path strictly inside the region.

    The first goal arrival strictly below the region's upper corner becomes the
    incumbent; later arrivals replace it only when they Pareto-dominate it, so
    the final incumbent cannot be dominated by any feasible path.
    """
    if isinstance(mode, str):
        mode = mode_for_region(region, mode)
    if lower_bound_tables[0].get(source, float("inf")) == float("inf"):
        raise Unreachable(f"no path from {source} to {target}")

    started = time.perf_counter()
    deadline = None if deadline_seconds is None else started + deadline_seconds
    visited = VisitedStore()
    zero = (0.0,) * g.m
    visited.insert(source, zero)
    stack: list[_SearchNode] = [_SearchNode(source, zero, None)]
    incumbent: _SearchNode | None = None
    expanded = 0

    while stack:
        state = stack.pop()
        expanded += 1
        if deadline is not None and time.perf_counter() > deadline:
            raise OracleTimeLimit(
                f"oracle exceeded its {deadline_seconds}s budget after {expanded} expansions"
            )
        if state.node == target:
            if incumbent is None:
                if strictly_below(state.g, region.upper):
                    incumbent = state
            elif pareto_dominates(state.g, incumbent.g):
                incumbent = state
            continue  # extending past the target can never improve a path to it

        neighbors: list[tuple[float, str, int, _SearchNode]] = []
        for edge in g.out_edges(state.node):
            g_v = tuple(a + c for a, c in zip(state.g, edge.costs))
            estimate = tuple(
                gv + lower_bound_tables[i][edge.target] for i, gv in enumerate(g_v)
            )
            reason = prune(
                estimate,
                g_v,
                incumbent.g if incumbent is not None else None,
                region.upper,
                visited,
                edge.target,
            )
            if reason is not None:
                if diag is not None:
                    diag.pruned[reason.value] += 1
                continue
            visited.insert(edge.target, g_v)
            neighbors.append(
                (
                    guidance_distance(estimate, mode),
                    edge.target,
                    edge.index,
                    _SearchNode(edge.target, g_v, state),
                )
            )
        neighbors.sort(key=lambda item: (item[0], item[1], item[2]), reverse=True)
        for _, _, _, node_state in neighbors:
            stack.append(node_state)

    if diag is not None:
        diag.expanded += expanded
        diag.wall_seconds += time.perf_counter() - started
    if incumbent is None:
        return OracleOutcome.infeasible()
    return OracleOutcome.success(incumbent.to_path())
