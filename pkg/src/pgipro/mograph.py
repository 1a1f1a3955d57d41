"""Multi-objective route graphs: JSON ingestion, path costs, reverse shortest-path bounds."""
from __future__ import annotations

import heapq
import json
import math
from dataclasses import dataclass
from pathlib import Path as FsPath
from typing import Any, Mapping, Sequence

from .errors import DimensionMismatch, MissingNode, NegativeCost, NotAPath, ParseError

Vec = tuple[float, ...]

_TOP_LEVEL_KEYS = {"objectives", "nodes", "edges"}


@dataclass(frozen=True)
class NodeRecord:
    """A vertex; lon/lat are display-only and optional (both or neither)."""

    id: str
    lon: float | None = None
    lat: float | None = None

    @property
    def coordinate(self) -> tuple[float, float] | None:
        if self.lon is None or self.lat is None:
            return None
        return (self.lon, self.lat)


@dataclass(frozen=True)
class Edge:
    source: str
    target: str
    costs: Vec
    index: int  # global insertion order, used for deterministic tie-breaking


@dataclass(frozen=True)
class Path:
    """A node sequence together with its aggregated cost vector."""

    nodes: tuple[str, ...]
    value: Vec


class MultiObjectiveGraph:
    """Directed graph with m >= 2 non-negative costs per edge.

    Parallel edges are allowed, self-loops are not. Instances are immutable
    after construction and safe to share across threads.
    """

    def __init__(
        self,
        nodes: Sequence[NodeRecord],
        objective_meta: Sequence[tuple[str, str]],
        edges: Sequence[Edge],
    ) -> None:
        self.objective_meta: tuple[tuple[str, str], ...] = tuple(
            (str(n), str(u)) for n, u in objective_meta
        )
        self.m = len(self.objective_meta)
        self.nodes: dict[str, NodeRecord] = {n.id: n for n in nodes}
        self._out: dict[str, list[Edge]] = {n.id: [] for n in nodes}
        self._in: dict[str, list[Edge]] = {n.id: [] for n in nodes}
        self.edges: tuple[Edge, ...] = tuple(edges)
        for e in self.edges:
            self._out[e.source].append(e)
            self._in[e.target].append(e)

    def node_ids(self) -> list[str]:
        return list(self.nodes)

    def has_node(self, node_id: str) -> bool:
        return node_id in self.nodes

    def out_edges(self, node_id: str) -> list[Edge]:
        return self._out[node_id]

    def in_edges(self, node_id: str) -> list[Edge]:
        return self._in[node_id]


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ParseError(message)


def _parse_cost(raw: Any) -> float:
    if isinstance(raw, bool) or not isinstance(raw, (int, float)):
        raise ParseError(f"edge cost is not a number: {raw!r}")
    value = float(raw)
    if math.isnan(value) or math.isinf(value):
        raise ParseError(f"edge cost is not finite: {raw!r}")
    if value < 0:
        raise NegativeCost(f"edge cost is negative: {value}")
    return value


def load_graph(source: Mapping[str, Any] | str | FsPath) -> MultiObjectiveGraph:
    """Build a validated graph from a JSON document, JSON text, or a file path."""
    if isinstance(source, Mapping):
        doc: Any = source
    else:
        if isinstance(source, FsPath):
            text = source.read_text(encoding="utf-8")
        elif isinstance(source, str) and not source.lstrip().startswith("{"):
            # A document is always a JSON object, so anything else is a path.
            text = FsPath(source).read_text(encoding="utf-8")
        else:
            text = str(source)
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc

    _require(isinstance(doc, Mapping), "graph document must be a JSON object")
    unknown = set(doc) - _TOP_LEVEL_KEYS
    _require(not unknown, f"unknown top-level keys: {sorted(unknown)}")
    _require(_TOP_LEVEL_KEYS <= set(doc), "graph document needs objectives, nodes and edges")

    raw_objectives = doc["objectives"]
    _require(isinstance(raw_objectives, list), "objectives must be an array")
    objective_meta: list[tuple[str, str]] = []
    for entry in raw_objectives:
        _require(
            isinstance(entry, Mapping) and set(entry) <= {"name", "unit"} and "name" in entry,
            f"bad objective entry: {entry!r}",
        )
        objective_meta.append((str(entry["name"]), str(entry.get("unit", ""))))
    m = len(objective_meta)
    _require(m >= 2, f"at least 2 objectives required, got {m}")

    raw_nodes = doc["nodes"]
    _require(isinstance(raw_nodes, list) and raw_nodes, "nodes must be a non-empty array")
    nodes: list[NodeRecord] = []
    seen_ids: set[str] = set()
    for entry in raw_nodes:
        _require(isinstance(entry, Mapping) and "id" in entry, f"bad node entry: {entry!r}")
        _require(set(entry) <= {"id", "lon", "lat"}, f"unknown node keys in {entry!r}")
        node_id = str(entry["id"])
        _require(node_id not in seen_ids, f"duplicate node id: {node_id}")
        seen_ids.add(node_id)
        lon = entry.get("lon")
        lat = entry.get("lat")
        _require(
            (lon is None) == (lat is None),
            f"node {node_id}: lon and lat must be given together",
        )
        if lon is not None:
            lon, lat = float(lon), float(lat)
            _require(-180.0 <= lon <= 180.0, f"node {node_id}: lon out of range")
            _require(-90.0 <= lat <= 90.0, f"node {node_id}: lat out of range")
        nodes.append(NodeRecord(node_id, lon, lat))

    raw_edges = doc["edges"]
    _require(isinstance(raw_edges, list), "edges must be an array")
    edges: list[Edge] = []
    for index, entry in enumerate(raw_edges):
        _require(
            isinstance(entry, Mapping) and set(entry) <= {"from", "to", "costs"}
            and {"from", "to", "costs"} <= set(entry),
            f"bad edge entry: {entry!r}",
        )
        src, dst = str(entry["from"]), str(entry["to"])
        if src not in seen_ids:
            raise MissingNode(f"edge references unknown node: {src}")
        if dst not in seen_ids:
            raise MissingNode(f"edge references unknown node: {dst}")
        _require(src != dst, f"self-loop rejected: {src}")
        costs_raw = entry["costs"]
        _require(isinstance(costs_raw, list), f"edge costs must be an array: {entry!r}")
        if len(costs_raw) != m:
            raise DimensionMismatch(
                f"edge {src}->{dst} has {len(costs_raw)} costs, expected {m}"
            )
        costs = tuple(_parse_cost(c) for c in costs_raw)
        edges.append(Edge(src, dst, costs, index))

    return MultiObjectiveGraph(nodes, objective_meta, edges)


def serialize_graph(g: MultiObjectiveGraph) -> dict[str, Any]:
    """Inverse of load_graph on nodes, edges and costs."""
    nodes = []
    for n in g.nodes.values():
        entry: dict[str, Any] = {"id": n.id}
        if n.coordinate is not None:
            entry["lon"] = n.lon
            entry["lat"] = n.lat
        nodes.append(entry)
    return {
        "objectives": [{"name": name, "unit": unit} for name, unit in g.objective_meta],
        "nodes": nodes,
        "edges": [
            {"from": e.source, "to": e.target, "costs": list(e.costs)} for e in g.edges
        ],
    }


def to_jsonable(value: float) -> float | str:
    """Encode a scalar for JSON output; infinity becomes the literal string "inf"."""
    return "inf" if value == math.inf else value


def from_jsonable(raw: float | str) -> float:
    if raw == "inf":
        return math.inf
    return float(raw)


def path_value(g: MultiObjectiveGraph, node_sequence: Sequence[str]) -> Vec:
    """Componentwise sum of edge costs along the sequence; a single node sums to zero.

    Between parallel edges the lexicographically smallest cost vector is
    charged, which is exact on simple graphs.
    """
    if not node_sequence:
        raise NotAPath("empty node sequence")
    for node in node_sequence:
        if not g.has_node(node):
            raise NotAPath(f"unknown node: {node}")
    total = [0.0] * g.m
    for a, b in zip(node_sequence, node_sequence[1:]):
        candidates = [e.costs for e in g.out_edges(a) if e.target == b]
        if not candidates:
            raise NotAPath(f"no edge {a}->{b}")
        costs = min(candidates)
        for i, c in enumerate(costs):
            total[i] += c
    return tuple(total)


def reverse_lower_bounds(
    g: MultiObjectiveGraph, target: str, objective: int
) -> dict[str, float]:
    """Single-objective shortest distance from every node to the target.

    Dijkstra on the reversed graph; nodes that cannot reach the target map to
    +inf. The result is an admissible per-node lower bound for that objective.
    """
    if not g.has_node(target):
        raise MissingNode(f"unknown node: {target}")
    if not 0 <= objective < g.m:
        raise ValueError(f"objective index {objective} out of range for m={g.m}")
    dist: dict[str, float] = {target: 0.0}
    heap: list[tuple[float, str]] = [(0.0, target)]
    while heap:
        d, node = heapq.heappop(heap)
        if d > dist.get(node, math.inf):
            continue
        for e in g.in_edges(node):
            nd = d + e.costs[objective]
            if nd < dist.get(e.source, math.inf):
                dist[e.source] = nd
                heapq.heappush(heap, (nd, e.source))
    return {node: dist.get(node, math.inf) for node in g.nodes}
