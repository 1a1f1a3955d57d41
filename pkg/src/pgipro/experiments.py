"""Benchmark harness: synthetic fronts, simulated-user runs, metric aggregation, reports.

Two scenario families are supported. Synthetic scenarios steer directly over a
constructed front (no graph search); graph scenarios run the full search
engine on a problem instance. Each trial samples one simulated user that both
methods face with independent noise streams derived from the same seed, so
runs are replayable bit for bit.
"""
from __future__ import annotations

import csv
import math
import time
from dataclasses import dataclass, field
from pathlib import Path as FsPath
from typing import Literal, Sequence

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from .errors import ScenarioLoadError
from .fixtures import OSDORP_FRONT, OSDORP_SOURCE, OSDORP_TARGET, load_osdorp
from .ipro import (
    enumerate_front,
    format_cell,
    init_from_extremes,
)
from .mograph import MultiObjectiveGraph, Path, Vec, load_graph, reverse_lower_bounds
from .oracle import (
    GuidanceKind,
    OracleOutcome,
    guidance_distance,
    mode_for_region,
)
from .pareto import Region, filter_nondominated, strictly_below
from .session import (
    Heuristic,
    OracleFn,
    Session,
    SteerRequest,
    bootstrap_session,
    record_comparison,
    start_session,
    steer,
)
from .users import UserModel, choose_objective, compare, sample_user, utility
from .gppe import run_elicitation

FrontShape = Literal["convex", "concave"]

METHOD_PGIPRO = "pgipro"
METHOD_GPPE = "gppe"
_METHOD_STREAM = {METHOD_PGIPRO: 0, METHOD_GPPE: 1}


# ---------------------------------------------------------------------------
# Synthetic fronts


def _convex_point(u: float) -> Vec:
    # Parametrized so both coordinates are polynomials: (u^2, (1-u)^2).
    return (u * u, (1.0 - u) * (1.0 - u))


def _convex_speed(u: float) -> float:
    return 2.0 * math.sqrt(u * u + (1.0 - u) * (1.0 - u))


def make_synthetic_front(shape: FrontShape, n: int) -> list[Vec]:
    """Bi-objective curve from (0,1) to (1,0) sampled at equal arc length.

    Convex uses the curve sqrt(x) + sqrt(y) = 1, concave the quarter circle
    x^2 + y^2 = 1; endpoints are exact and the points are mutually
    non-dominated.
    """
    if n < 2:
        raise ValueError("a front needs at least 2 points")
    if shape == "concave":
        points = []
        for k in range(n):
            theta = (math.pi / 2.0) * (1.0 - k / (n - 1))
            points.append((math.cos(theta), math.sin(theta)))
        points[0] = (0.0, 1.0)
        points[-1] = (1.0, 0.0)
        return points
    if shape != "convex":
        raise ValueError(f"unknown front shape: {shape}")
    total, _ = quad(_convex_speed, 0.0, 1.0)
    points = [(0.0, 1.0)]
    for k in range(1, n - 1):
        want = total * k / (n - 1)
        u = brentq(lambda t: quad(_convex_speed, 0.0, t)[0] - want, 0.0, 1.0)
        points.append(_convex_point(u))
    points.append((1.0, 0.0))
    return points


# ---------------------------------------------------------------------------
# Exhaustive reference front


def enumerate_simple_path_values(
    g: MultiObjectiveGraph, source: str, target: str
) -> list[tuple[Vec, tuple[str, ...]]]:
    """Every simple path from source to target with its value vector.

    Exponential; intended for small instances and as an independent check on
    the search engine.
    """
    results: list[tuple[Vec, tuple[str, ...]]] = []
    trail = [source]
    visited = {source}

    def walk(node: str, value: list[float]) -> None:
        if node == target:
            results.append((tuple(value), tuple(trail)))
            return
        for edge in g.out_edges(node):
            if edge.target in visited:
                continue
            visited.add(edge.target)
            trail.append(edge.target)
            walk(edge.target, [a + c for a, c in zip(value, edge.costs)])
            trail.pop()
            visited.remove(edge.target)

    walk(source, [0.0] * g.m)
    return results


def brute_force_front(
    g: MultiObjectiveGraph, source: str, target: str
) -> list[tuple[Vec, Path]]:
    """Exact Pareto front by enumeration, one (first-found) path per vector."""
    all_values = enumerate_simple_path_values(g, source, target)
    front_vecs = set(filter_nondominated([v for v, _ in all_values]))
    chosen: dict[Vec, tuple[str, ...]] = {}
    for value, nodes in all_values:
        if value in front_vecs and value not in chosen:
            chosen[value] = nodes
    return sorted(
        (v, Path(nodes, v)) for v, nodes in chosen.items()
    )


def verify_fixture() -> list[tuple[str, bool, str]]:
    """Cross-check the bundled instance: enumeration, engine front, bound table."""
    g = load_osdorp()
    expected = sorted(OSDORP_FRONT)
    brute = [v for v, _ in brute_force_front(g, OSDORP_SOURCE, OSDORP_TARGET)]
    engine = [v for v, _ in enumerate_front(g, OSDORP_SOURCE, OSDORP_TARGET, 0.0)]
    length_bound = reverse_lower_bounds(g, OSDORP_TARGET, 0)[OSDORP_SOURCE]
    crossing_bound = reverse_lower_bounds(g, OSDORP_TARGET, 1)[OSDORP_SOURCE]
    return [
        (
            "exhaustive front equals the reference vectors",
            brute == expected,
            f"{brute}",
        ),
        ("engine front equals the exhaustive front", engine == brute, f"{engine}"),
        (
            "length bound at the origin is 568",
            length_bound == 568.0,
            f"{length_bound}",
        ),
        (
            "crossing bound at the origin is 2",
            crossing_bound == 2.0,
            f"{crossing_bound}",
        ),
    ]


# ---------------------------------------------------------------------------
# Front-backed steering (no graph search)


def front_lookup_oracle(front: Sequence[Vec], guidance: GuidanceKind) -> OracleFn:
    """Oracle over a known front: the admissible point nearest the region's best corner."""
    paths = [Path((f"front-{i}",), tuple(v)) for i, v in enumerate(front)]

    def oracle(region: Region) -> OracleOutcome:
        mode = mode_for_region(region, guidance)
        best: tuple[tuple[float, Vec], Path] | None = None
        for p in paths:
            if strictly_below(p.value, region.upper):
                key = (guidance_distance(p.value, mode), p.value)
                if best is None or key < best[0]:
                    best = (key, p)
        if best is None:
            return OracleOutcome.infeasible()
        return OracleOutcome.success(best[1])

    return oracle


def start_front_session(
    front: Sequence[Vec],
    heuristic: Heuristic = "middle",
    guidance: GuidanceKind = "chebyshev",
) -> Session:
    """Steering session whose oracle reads a precomputed front instead of a graph."""
    vectors = [tuple(float(x) for x in v) for v in front]
    m = len(vectors[0])
    extremes = []
    for i in range(m):
        order = [(i + k) % m for k in range(m)]
        value = min(vectors, key=lambda v: tuple(v[j] for j in order))
        extremes.append(Path((f"front-{vectors.index(value)}",), value))
    state = init_from_extremes(extremes)
    meta = tuple((f"obj_{i}", "") for i in range(m))
    return bootstrap_session(
        state, front_lookup_oracle(vectors, guidance), heuristic, guidance, meta
    )


# ---------------------------------------------------------------------------
# Benchmark configuration and execution


@dataclass(frozen=True)
class SyntheticScenario:
    shape: FrontShape
    points: int = 30


@dataclass(frozen=True)
class GraphScenario:
    path: str
    source: str
    target: str


Scenario = SyntheticScenario | GraphScenario


def parse_scenario(text: str) -> Scenario:
    if text in ("convex", "concave"):
        return SyntheticScenario(text)  # type: ignore[arg-type]
    if text.startswith("graph:"):
        parts = text.split(":")
        if len(parts) != 4:
            raise ScenarioLoadError(
                f"graph scenario must be graph:<file>:<source>:<target>, got {text!r}"
            )
        return GraphScenario(parts[1], parts[2], parts[3])
    raise ScenarioLoadError(f"unknown scenario: {text!r}")


@dataclass(frozen=True)
class BenchmarkConfig:
    scenario: Scenario
    methods: tuple[str, ...] = (METHOD_PGIPRO, METHOD_GPPE)
    trials: int = 50
    queries: int = 6
    noise_sigma: float = 0.01
    base_seed: int = 0
    heuristic: Heuristic = "middle"
    guidance: GuidanceKind = "chebyshev"


@dataclass(frozen=True)
class CurveRow:
    method: str
    query: int
    mean_utility: float
    mean_max_utility: float
    stderr: float


@dataclass(frozen=True)
class MethodTiming:
    precompute_seconds: float
    mean_per_proposal_seconds: float


@dataclass
class BenchmarkResult:
    config: BenchmarkConfig
    rows: list[CurveRow] = field(default_factory=list)
    timing: dict[str, MethodTiming] = field(default_factory=dict)
    search_diagnostics: dict[str, dict[str, int]] = field(default_factory=dict)
    m: int = 2


@dataclass
class _ResolvedScenario:
    graph: MultiObjectiveGraph | None
    source: str | None
    target: str | None
    front: list[Vec]  # full front; populated lazily for graph scenarios
    normalization_low: Vec
    normalization_high: Vec
    front_seconds: float
    m: int


def _resolve_scenario(config: BenchmarkConfig) -> _ResolvedScenario:
    scenario = config.scenario
    if isinstance(scenario, SyntheticScenario):
        front = make_synthetic_front(scenario.shape, scenario.points)
        arr = np.array(front)
        return _ResolvedScenario(
            graph=None,
            source=None,
            target=None,
            front=front,
            normalization_low=tuple(arr.min(axis=0)),
            normalization_high=tuple(arr.max(axis=0)),
            front_seconds=0.0,
            m=2,
        )
    try:
        graph = load_osdorp() if scenario.path == "osdorp" else load_graph(FsPath(scenario.path))
    except OSError as exc:
        raise ScenarioLoadError(f"cannot load graph {scenario.path!r}: {exc}") from exc
    if not graph.has_node(scenario.source) or not graph.has_node(scenario.target):
        raise ScenarioLoadError(
            f"unknown endpoint: {scenario.source!r} or {scenario.target!r}"
        )
    started = time.perf_counter()
    front_pairs = enumerate_front(graph, scenario.source, scenario.target, 0.0)
    front_seconds = time.perf_counter() - started
    front = [v for v, _ in front_pairs]
    arr = np.array(front)
    return _ResolvedScenario(
        graph=graph,
        source=scenario.source,
        target=scenario.target,
        front=front,
        normalization_low=tuple(arr.min(axis=0)),
        normalization_high=tuple(arr.max(axis=0)),
        front_seconds=front_seconds,
        m=graph.m,
    )


def _pgipro_trial(
    resolved: _ResolvedScenario,
    config: BenchmarkConfig,
    user: UserModel,
    rng: np.random.Generator,
    diagnostics: dict[str, int] | None = None,
) -> tuple[list[float], list[float], list[float]]:
    """One steering trial; returns (per-query utility, per-query max, oracle seconds)."""
    if resolved.graph is not None:
        session = start_session(
            resolved.graph,
            resolved.source or "",
            resolved.target or "",
            heuristic=config.heuristic,
            guidance=config.guidance,
        )
    else:
        session = start_front_session(
            resolved.front, heuristic=config.heuristic, guidance=config.guidance
        )
    utilities: list[float] = []
    maxima: list[float] = []
    best_seen = utility(user, session.current[0], noisy=True, rng=rng)
    for _ in range(config.queries):
        if session.status != "active":
            shown = utility(user, session.best[0], noisy=True, rng=rng)
        else:
            objective = choose_objective(user, session.current[0])
            outcome = steer(session, SteerRequest(objective, "improve"))
            if outcome.status == "exhausted":
                shown = utility(user, session.best[0], noisy=True, rng=rng)
            else:
                assert outcome.candidate is not None
                shown = utility(user, outcome.candidate[0], noisy=True, rng=rng)
                preference = compare(
                    user, outcome.candidate[0], session.best[0], rng=rng
                )
                record_comparison(
                    session, "current" if preference == "a" else "best"
                )
        best_seen = max(best_seen, shown)
        utilities.append(shown)
        maxima.append(best_seen)
    if diagnostics is not None:
        diagnostics["oracle_calls"] = diagnostics.get("oracle_calls", 0) + len(
            session.oracle_call_seconds
        )
        diagnostics["nodes_expanded"] = (
            diagnostics.get("nodes_expanded", 0) + session.diagnostics.expanded
        )
        for reason, count in session.diagnostics.pruned.items():
            key = f"pruned_{reason}"
            diagnostics[key] = diagnostics.get(key, 0) + count
    return utilities, maxima, list(session.oracle_call_seconds)


def _gppe_trial(
    resolved: _ResolvedScenario,
    config: BenchmarkConfig,
    user: UserModel,
    rng: np.random.Generator,
) -> tuple[list[float], list[float], list[float]]:
    steps = run_elicitation(resolved.front, user, config.queries, rng)
    return (
        [s.utility for s in steps],
        [s.best_utility for s in steps],
        [s.fit_seconds for s in steps],
    )


def run_benchmark(config: BenchmarkConfig) -> BenchmarkResult:
    """Run every configured method over the shared trial users and aggregate curves."""
    if config.trials < 1 or config.queries < 1:
        raise ValueError("trials and queries must both be at least 1")
    unknown = set(config.methods) - {METHOD_PGIPRO, METHOD_GPPE}
    if unknown:
        raise ValueError(f"unknown methods: {sorted(unknown)}")
    resolved = _resolve_scenario(config)

    per_method_util: dict[str, np.ndarray] = {}
    per_method_max: dict[str, np.ndarray] = {}
    proposal_seconds: dict[str, list[float]] = {m: [] for m in config.methods}

    search_diagnostics: dict[str, dict[str, int]] = {}
    for method in config.methods:
        util = np.zeros((config.trials, config.queries))
        maxu = np.zeros((config.trials, config.queries))
        diag_sink: dict[str, int] = {}
        for trial in range(config.trials):
            user = sample_user(
                resolved.m, config.base_seed + trial, config.noise_sigma
            ).with_normalization(resolved.normalization_low, resolved.normalization_high)
            rng = np.random.default_rng(
                [config.base_seed + trial, _METHOD_STREAM[method]]
            )
            if method == METHOD_PGIPRO:
                u, mx, seconds = _pgipro_trial(resolved, config, user, rng, diag_sink)
            else:
                u, mx, seconds = _gppe_trial(resolved, config, user, rng)
            util[trial, :] = u
            maxu[trial, :] = mx
            proposal_seconds[method].extend(seconds)
        per_method_util[method] = util
        per_method_max[method] = maxu
        if diag_sink:
            search_diagnostics[method] = diag_sink

    result = BenchmarkResult(
        config=config, m=resolved.m, search_diagnostics=search_diagnostics
    )
    for method in config.methods:
        util = per_method_util[method]
        maxu = per_method_max[method]
        for q in range(config.queries):
            column = maxu[:, q]
            stderr = (
                float(np.std(column, ddof=1) / math.sqrt(config.trials))
                if config.trials > 1
                else 0.0
            )
            result.rows.append(
                CurveRow(
                    method=method,
                    query=q + 1,
                    mean_utility=float(np.mean(util[:, q])),
                    mean_max_utility=float(np.mean(column)),
                    stderr=stderr,
                )
            )
        seconds = proposal_seconds[method]
        precompute = 0.0
        if method == METHOD_GPPE and resolved.graph is not None:
            precompute = resolved.front_seconds
        result.timing[method] = MethodTiming(
            precompute_seconds=precompute,
            mean_per_proposal_seconds=(
                float(np.mean(seconds)) if seconds else 0.0
            ),
        )
    return result


# ---------------------------------------------------------------------------
# Report emission


def emit_results(result: BenchmarkResult, out_dir: str | FsPath) -> dict[str, FsPath]:
    """Write curves.csv and timing.csv plus one SVG figure of the max-utility curves."""
    if not result.rows:
        raise ValueError("refusing to emit an empty benchmark result")
    out = FsPath(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    curves_path = out / "curves.csv"
    with curves_path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["method", "query", "mean_utility", "mean_max_utility", "stderr"])
        for row in result.rows:
            writer.writerow(
                [
                    row.method,
                    row.query,
                    format_cell(row.mean_utility),
                    format_cell(row.mean_max_utility),
                    format_cell(row.stderr),
                ]
            )

    timing_path = out / "timing.csv"
    with timing_path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["method", "precompute_seconds", "mean_per_proposal_seconds"])
        for method, timing in result.timing.items():
            writer.writerow(
                [
                    method,
                    format_cell(timing.precompute_seconds),
                    format_cell(timing.mean_per_proposal_seconds),
                ]
            )

    paths = {"curves": curves_path, "timing": timing_path}

    if result.search_diagnostics:
        diagnostics_path = out / "diagnostics.csv"
        keys = sorted(
            {k for sink in result.search_diagnostics.values() for k in sink}
        )
        with diagnostics_path.open("w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(["method"] + keys)
            for method, sink in result.search_diagnostics.items():
                writer.writerow([method] + [sink.get(k, 0) for k in keys])
        paths["diagnostics"] = diagnostics_path

    figure_path = out / "curves.svg"
    _plot_curves(result, figure_path)
    paths["figure"] = figure_path
    return paths


def _plot_curves(result: BenchmarkResult, path: FsPath) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for method in dict.fromkeys(row.method for row in result.rows):
        rows = [r for r in result.rows if r.method == method]
        queries = [r.query for r in rows]
        means = [r.mean_max_utility for r in rows]
        err = [r.stderr for r in rows]
        ax.plot(queries, means, marker="o", label=method)
        ax.fill_between(
            queries,
            [m - e for m, e in zip(means, err)],
            [m + e for m, e in zip(means, err)],
            alpha=0.2,
        )
    ax.set_xlabel("query")
    ax.set_ylabel("mean maximum utility")
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)
