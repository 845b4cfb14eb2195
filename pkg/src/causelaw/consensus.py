"""Aggregate per-algorithm graphs into a weighted consensus graph."""

from __future__ import annotations

from .errors import CatalogError, ParameterError
from .graphs import Dag, Pdag, WeightedDigraph, is_acyclic


def _as_pdag(item):
    if isinstance(item, Pdag):
        return item
    if isinstance(item, Dag):
        return Pdag(item.nodes, item.edges)
    if hasattr(item, "graph"):
        return _as_pdag(item.graph)
    raise ParameterError(f"cannot aggregate {type(item).__name__}")


def build_consensus(results, min_agree=2, undirected="none"):
    """Weight each directed edge by how many inputs contain it.

    Edges found by fewer than ``min_agree`` inputs are dropped. Undirected
    edges in an input are ignored unless ``undirected='both'``, in which
    case they count toward both orientations.
    """
    if undirected not in ("none", "both"):
        raise ParameterError("undirected must be 'none' or 'both'")
    if min_agree < 1:
        raise ParameterError("min_agree must be >= 1")
    graphs = [_as_pdag(r) for r in results]
    if not graphs:
        raise ParameterError("need at least one discovery result")
    nodes = graphs[0].nodes
    for g in graphs[1:]:
        if g.nodes != nodes:
            raise CatalogError("all results must share one catalog")
    counts = {}
    for g in graphs:
        for u, v in g.directed:
            counts[(u, v)] = counts.get((u, v), 0) + 1
        if undirected == "both":
            for u, v in g.undirected_pairs():
                counts[(u, v)] = counts.get((u, v), 0) + 1
                counts[(v, u)] = counts.get((v, u), 0) + 1
    kept = {e: w for e, w in counts.items() if w >= min_agree}
    return WeightedDigraph(nodes, kept)


def _edges_on_cycles(nodes, weights):
    """Edges (u, v) such that v can reach u through the remaining edges."""
    children = {n: [] for n in nodes}
    for u, v in weights:
        children[u].append(v)
    out = []
    for u, v in weights:
        stack, seen = [v], {v}
        found = False
        while stack and not found:
            node = stack.pop()
            if node == u:
                found = True
                break
            for w in children[node]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if found:
            out.append((u, v))
    return out


def ensure_dag(graph):
    """Break cycles by deleting minimum-weight cycle edges until acyclic.

    Ties break on the lexicographically smallest (from, to) pair. Returns
    the resulting DAG and the list of deleted (from, to, weight) records;
    acyclic input comes back unchanged with an empty report.
    """
    weights = dict(graph.weights)
    report = []
    while not is_acyclic(graph.nodes, weights):
        cyclic = _edges_on_cycles(graph.nodes, weights)
        u, v = min(cyclic, key=lambda e: (weights[e], e))
        report.append((u, v, weights[(u, v)]))
        del weights[(u, v)]
    return Dag(graph.nodes, weights), report
