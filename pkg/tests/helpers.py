"""Shared test utilities: tiny graph builders and a deterministic random-graph generator."""
from __future__ import annotations

import random

from pgipro.mograph import MultiObjectiveGraph, load_graph


def graph_doc(nodes, edges, m=2, names=None):
    if names is None:
        names = [(f"o{i}", "") for i in range(m)]
    return {
        "objectives": [{"name": n, "unit": u} for n, u in names],
        "nodes": [{"id": n} for n in nodes],
        "edges": [{"from": a, "to": b, "costs": list(c)} for a, b, c in edges],
    }


def build_graph(nodes, edges, m=2) -> MultiObjectiveGraph:
    return load_graph(graph_doc(nodes, edges, m))


def chain_graph(costs) -> MultiObjectiveGraph:
    """n0 -> n1 -> ... with the given per-edge cost vectors."""
    nodes = [f"n{i}" for i in range(len(costs) + 1)]
    edges = [(f"n{i}", f"n{i+1}", c) for i, c in enumerate(costs)]
    return build_graph(nodes, edges, m=len(costs[0]))


def random_graph(rng: random.Random, n_nodes: int, m: int):
    """Random simple digraph with a guaranteed source-to-target path.

    Integer costs in 0..9 keep dominance ties common, which is what the
    engine/enumeration equivalence checks need to stress.
    """
    ids = [f"n{i}" for i in range(n_nodes)]
    spine = ids[:]
    rng.shuffle(spine)
    edges = []
    seen = set()

    def add(u: str, v: str) -> None:
        if u == v or (u, v) in seen:
            return
        seen.add((u, v))
        edges.append((u, v, [float(rng.randint(0, 9)) for _ in range(m)]))

    for a, b in zip(spine, spine[1:]):
        add(a, b)
    for _ in range(rng.randint(n_nodes, 2 * n_nodes)):
        add(rng.choice(ids), rng.choice(ids))
    return build_graph(ids, edges, m), spine[0], spine[-1]
