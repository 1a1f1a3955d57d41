"""Anytime divide-and-conquer over objective space.

The engine keeps an exact partition of the initial bounding box into
unexplored regions, volume known to be dominated by found solutions, and
volume that cannot hold any Pareto-optimal vector. Each oracle answer carves
one region; the largest remaining region diameter bounds the approximation
error of the solutions found so far.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Callable, IO, Sequence

from .errors import InvalidOracleResult, Unreachable, UnknownRegion
from .mograph import MultiObjectiveGraph, Path, Vec, reverse_lower_bounds
from .oracle import (
    GuidanceKind,
    OracleOutcome,
    SolveDiagnostics,
    mode_for_region,
    solve_region,
)
from .pareto import Region, pareto_dominates, strictly_below

# Inflation applied to the raw extreme-derived nadir so that solutions tying an
# extreme coordinate still sit strictly below the initial exclusive bound.
NADIR_RELATIVE_INFLATION = 0.01
NADIR_ABSOLUTE_INFLATION = 1e-6


@dataclass
class IproState:
    """Partition state: found solutions plus the unexplored / dominated / infeasible boxes."""

    ideal: Vec
    nadir_estimate: Vec
    raw_nadir: Vec
    tau: float
    found: list[tuple[Vec, Path]] = field(default_factory=list)
    regions: list[Region] = field(default_factory=list)
    dominated_volume: list[Region] = field(default_factory=list)
    infeasible_volume: list[Region] = field(default_factory=list)
    bounding_box: Region | None = None

    @property
    def m(self) -> int:
        return len(self.ideal)

    def found_values(self) -> list[Vec]:
        return [v for v, _ in self.found]

    def extreme(self, objective: int) -> Vec:
        """The found vector that is best in the given objective (ties by lex order)."""
        return min(self.found_values(), key=lambda v: (v[objective], v))


def _inflate(raw: Vec) -> Vec:
    return tuple(
        x + NADIR_RELATIVE_INFLATION * abs(x) + NADIR_ABSOLUTE_INFLATION for x in raw
    )


def _clip_box(lower: Sequence[float], upper: Sequence[float]) -> Region | None:
    if all(lo < hi for lo, hi in zip(lower, upper)):
        return Region(tuple(lower), tuple(upper))
    return None


def _split_region(
    region: Region, v: Vec
) -> tuple[list[Region], list[Region], list[Region]]:
    """Carve a region around a solution value v (strictly below region.upper).

    Returns (unexplored sub-regions, dominated pieces, infeasible pieces). The
    two-objective case is an exact disjoint quadrant split; for more
    objectives each sub-region keeps every upper bound except one, which is
    complete but may overlap.
    """
    lo, up = region.lower, region.upper
    dominated = _clip_box([max(l, x) for l, x in zip(lo, v)], up)
    infeasible = _clip_box(lo, [min(u, x) for u, x in zip(up, v)])
    subs: list[Region] = []
    if region.m == 2:
        a = _clip_box((lo[0], max(lo[1], v[1])), (v[0], up[1]))
        b = _clip_box((max(lo[0], v[0]), lo[1]), (up[0], v[1]))
        subs = [r for r in (a, b) if r is not None]
    else:
        for j in range(region.m):
            upper_j = list(up)
            upper_j[j] = v[j]
            piece = _clip_box(lo, upper_j)
            if piece is not None:
                subs.append(piece)
    return (
        subs,
        [dominated] if dominated is not None else [],
        [infeasible] if infeasible is not None else [],
    )


def _register_value(state: IproState, path: Path) -> tuple[Vec, Path]:
    """Add a solution to the found set, keeping one path per distinct vector."""
    v = path.value
    for existing_v, existing_p in state.found:
        if existing_v == v:
            return existing_v, existing_p
    state.found = [
        (fv, fp) for fv, fp in state.found if not pareto_dominates(v, fv)
    ]
    state.found.append((v, path))
    return v, path


def absorb_solution(state: IproState, path: Path) -> tuple[Vec, Path]:
    """Fold a known Pareto-optimal solution into the partition.

    Every unexplored region whose upper corner the value strictly undercuts is
    carved; used for the initial extremes and for the opening proposal.
    """
    v = path.value
    remaining: list[Region] = []
    for region in state.regions:
        if strictly_below(v, region.upper):
            subs, dominated, infeasible = _split_region(region, v)
            remaining.extend(subs)
            state.dominated_volume.extend(dominated)
            state.infeasible_volume.extend(infeasible)
        else:
            remaining.append(region)
    state.regions = remaining
    return _register_value(state, path)


def update_partition(
    state: IproState, region: Region, outcome: OracleOutcome
) -> IproState:
    """Apply one oracle answer to the partition.

    Infeasible moves the whole region into the infeasible volume. A success
    must be strictly below the region's upper corner; its value joins the
    found set and the region is replaced by the sub-boxes that may still hold
    undiscovered Pareto-optimal vectors.
    """
    if region not in state.regions:
        raise UnknownRegion(f"region not in the unexplored set: {region}")
    if not outcome.feasible:
        state.regions = [r for r in state.regions if r != region]
        state.infeasible_volume.append(region)
        return state
    assert outcome.path is not None
    v = outcome.path.value
    if not strictly_below(v, region.upper):
        raise InvalidOracleResult(
            f"oracle value {v} does not strictly undercut region upper {region.upper}"
        )
    index = state.regions.index(region)
    subs, dominated, infeasible = _split_region(region, v)
    state.regions[index : index + 1] = subs
    state.dominated_volume.extend(dominated)
    state.infeasible_volume.extend(infeasible)
    _register_value(state, outcome.path)
    return state


def error_estimate(state: IproState) -> float:
    """Largest L-infinity diameter among unexplored regions; zero when none remain.

    Once this drops to tau, every Pareto-optimal vector inside the initial
    bounding box lies within tau (L-infinity) of some found vector.
    """
    if not state.regions:
        return 0.0
    return max(r.diameter() for r in state.regions)


def init_from_extremes(
    extreme_paths: Sequence[Path],
    tau: float = 0.0,
    nadir_bound: Vec | None = None,
) -> IproState:
    """Build the initial partition from per-objective extreme solutions.

    `nadir_bound`, when given, widens the initial box beyond the extreme-path
    maxima; needed for three or more objectives, where extremes alone do not
    bound the front.
    """
    m = len(extreme_paths[0].value)
    ideal = tuple(extreme_paths[i].value[i] for i in range(m))
    raw_nadir = tuple(
        max(p.value[i] for p in extreme_paths) for i in range(m)
    )
    outer = raw_nadir
    if nadir_bound is not None:
        outer = tuple(max(r, b) for r, b in zip(raw_nadir, nadir_bound))
    nadir_estimate = _inflate(outer)
    box = Region(ideal, nadir_estimate)
    state = IproState(
        ideal=ideal,
        nadir_estimate=nadir_estimate,
        raw_nadir=raw_nadir,
        tau=tau,
        regions=[box],
        bounding_box=box,
    )
    for path in extreme_paths:
        absorb_solution(state, path)
    return state


def _lex_shortest(
    g: MultiObjectiveGraph, source: str, target: str, objective: int
) -> Path:
    """Dijkstra minimizing one objective, breaking ties lexicographically.

    The comparison key rotates the cost vector so the requested objective
    comes first; the result is therefore Pareto-optimal, not merely optimal in
    the single objective.
    """
    m = g.m
    order = [(objective + k) % m for k in range(m)]

    def key(vec: Vec) -> tuple[float, ...]:
        return tuple(vec[i] for i in order)

    best: dict[str, Vec] = {source: (0.0,) * m}
    parent: dict[str, tuple[str, Vec] | None] = {source: None}
    counter = 0
    heap: list[tuple[tuple[float, ...], int, str]] = [(key(best[source]), counter, source)]
    while heap:
        k, _, node = heapq.heappop(heap)
        if k > key(best[node]):
            continue
        if node == target:
            break
        for edge in g.out_edges(node):
            cand = tuple(a + c for a, c in zip(best[node], edge.costs))
            if edge.target not in best or key(cand) < key(best[edge.target]):
                best[edge.target] = cand
                parent[edge.target] = (node, cand)
                counter += 1
                heapq.heappush(heap, (key(cand), counter, edge.target))
    if target not in best:
        raise Unreachable(f"no path from {source} to {target}")
    nodes = [target]
    while parent[nodes[-1]] is not None:
        nodes.append(parent[nodes[-1]][0])  # type: ignore[index]
    nodes.reverse()
    return Path(tuple(nodes), best[target])


def init_phase(
    g: MultiObjectiveGraph, source: str, target: str, tau: float = 0.0
) -> IproState:
    """Compute per-objective optima and stand up the initial partition."""
    extremes = [_lex_shortest(g, source, target, i) for i in range(g.m)]
    nadir_bound: Vec | None = None
    if g.m > 2:
        # A simple path never repeats an edge, so the per-objective sum of all
        # edge costs is a safe outer bound on every Pareto vector.
        nadir_bound = tuple(
            sum(e.costs[i] for e in g.edges) for i in range(g.m)
        )
    return init_from_extremes(extremes, tau, nadir_bound=nadir_bound)


def select_largest_region(regions: Sequence[Region]) -> Region:
    """Full-front policy: largest diameter first, then lexicographic corners."""
    return min(regions, key=lambda r: (-r.diameter(), r.lower, r.upper))


def enumerate_front(
    g: MultiObjectiveGraph,
    source: str,
    target: str,
    tau: float = 0.0,
    guidance: GuidanceKind = "chebyshev",
    *,
    diag: SolveDiagnostics | None = None,
    on_update: Callable[[IproState], None] | None = None,
) -> list[tuple[Vec, Path]]:
    """Drive the oracle until the error estimate reaches tau; with tau=0 the front is exact."""
    state = init_phase(g, source, target, tau)
    tables = [reverse_lower_bounds(g, target, i) for i in range(g.m)]
    while state.regions and error_estimate(state) > tau:
        region = select_largest_region(state.regions)
        outcome = solve_region(
            g, source, target, region, mode_for_region(region, guidance), tables, diag=diag
        )
        update_partition(state, region, outcome)
        if on_update is not None:
            on_update(state)
    return sorted(state.found, key=lambda item: item[0])


def format_cell(x: float) -> str:
    if x == math.inf:
        return "inf"
    return format(float(x), ".12g")


def write_front_csv(front: Sequence[tuple[Vec, Path]], out: IO[str]) -> None:
    """Delimited export: one row per front vector, path as |-joined node ids."""
    if not front:
        raise ValueError("empty front")
    m = len(front[0][0])
    header = ",".join([f"obj_{i}" for i in range(m)] + ["path"])
    out.write(header + "\n")
    for value, path in front:
        cells = [format_cell(x) for x in value] + ["|".join(path.nodes)]
        out.write(",".join(cells) + "\n")
