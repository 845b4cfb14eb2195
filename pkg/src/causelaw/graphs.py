"""Directed-graph structures shared by the discovery algorithms.

Nodes are concept ids; the node tuple order is the catalog order and drives
every deterministic tie-break. Graph values are immutable once built.
"""

from __future__ import annotations

import json

from .errors import InconsistencyError, ParameterError, StructureError


def is_acyclic(nodes, edges):
    """True iff the directed edges contain no cycle (Kahn's algorithm)."""
    nodes = list(nodes)
    indeg = {v: 0 for v in nodes}
    out = {v: [] for v in nodes}
    for u, v in edges:
        out[u].append(v)
        indeg[v] += 1
    queue = [v for v in nodes if indeg[v] == 0]
    seen = 0
    while queue:
        u = queue.pop()
        seen += 1
        for w in out[u]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return seen == len(nodes)


class Dag:
    """Directed acyclic graph over concept ids. Acyclicity is checked on build."""

    def __init__(self, nodes, edges=()):
        self.nodes = tuple(nodes)
        if len(set(self.nodes)) != len(self.nodes):
            raise StructureError("duplicate nodes")
        known = set(self.nodes)
        edges = frozenset((str(u), str(v)) for u, v in edges)
        for u, v in edges:
            if u == v:
                raise StructureError(f"self-loop at {u!r}")
            if u not in known or v not in known:
                raise StructureError(f"edge ({u!r}, {v!r}) uses unknown node")
        if not is_acyclic(self.nodes, edges):
            raise StructureError("edges contain a directed cycle")
        self.edges = edges
        order = {v: i for i, v in enumerate(self.nodes)}
        self._order = order
        parents = {v: [] for v in self.nodes}
        children = {v: [] for v in self.nodes}
        for u, v in edges:
            parents[v].append(u)
            children[u].append(v)
        self._parents = {v: tuple(sorted(ps, key=order.get)) for v, ps in parents.items()}
        self._children = {v: tuple(sorted(cs, key=order.get)) for v, cs in children.items()}

    def parents(self, node):
        return self._parents[node]

    def children(self, node):
        return self._children[node]

    def has_edge(self, u, v):
        return (u, v) in self.edges

    def adjacent(self, u, v):
        return (u, v) in self.edges or (v, u) in self.edges

    def with_edges(self, add=(), remove=()):
        edges = (set(self.edges) - set(remove)) | set(add)
        return Dag(self.nodes, edges)

    def __eq__(self, other):
        return (
            isinstance(other, Dag)
            and self.nodes == other.nodes
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.nodes, self.edges))

    def __repr__(self):
        return f"Dag(nodes={len(self.nodes)}, edges={sorted(self.edges)})"


class Pdag:
    """Partially directed graph: directed plus undirected edges, disjoint."""

    def __init__(self, nodes, directed=(), undirected=()):
        self.nodes = tuple(nodes)
        if len(set(self.nodes)) != len(self.nodes):
            raise StructureError("duplicate nodes")
        known = set(self.nodes)
        directed = frozenset((str(u), str(v)) for u, v in directed)
        undirected = frozenset(frozenset((str(u), str(v))) for u, v in undirected)
        for u, v in directed:
            if u == v:
                raise StructureError(f"self-loop at {u!r}")
            if u not in known or v not in known:
                raise StructureError(f"edge ({u!r}, {v!r}) uses unknown node")
        for pair in undirected:
            if len(pair) != 2:
                raise StructureError("self-loop in undirected edges")
            if not pair <= known:
                raise StructureError(f"undirected edge {set(pair)} uses unknown node")
        for u, v in directed:
            if frozenset((u, v)) in undirected:
                raise StructureError(f"edge {u!r}-{v!r} is both directed and undirected")
        if any((v, u) in directed for u, v in directed):
            bad = next((u, v) for u, v in directed if (v, u) in directed)
            raise StructureError(f"edge {bad} directed both ways")
        self.directed = directed
        self.undirected = undirected
        self._order = {v: i for i, v in enumerate(self.nodes)}

    def adjacent(self, u, v):
        return (
            (u, v) in self.directed
            or (v, u) in self.directed
            or frozenset((u, v)) in self.undirected
        )

    def neighbors(self, node):
        """All adjacent nodes, in catalog order."""
        out = set()
        for u, v in self.directed:
            if u == node:
                out.add(v)
            elif v == node:
                out.add(u)
        for pair in self.undirected:
            if node in pair:
                out.add(next(iter(pair - {node})))
        return tuple(sorted(out, key=self._order.get))

    def undirected_pairs(self):
        """Undirected edges as tuples, lexicographically smaller id first."""
        return tuple(sorted(tuple(sorted(pair)) for pair in self.undirected))

    def to_dag(self):
        if self.undirected:
            raise StructureError("graph still has undirected edges")
        return Dag(self.nodes, self.directed)

    def __eq__(self, other):
        return (
            isinstance(other, Pdag)
            and self.nodes == other.nodes
            and self.directed == other.directed
            and self.undirected == other.undirected
        )

    def __hash__(self):
        return hash((self.nodes, self.directed, self.undirected))

    def __repr__(self):
        return (
            f"Pdag(directed={sorted(self.directed)}, "
            f"undirected={self.undirected_pairs()})"
        )


class WeightedDigraph:
    """Directed graph with positive integer edge weights (agreement counts)."""

    def __init__(self, nodes, weights):
        self.nodes = tuple(nodes)
        known = set(self.nodes)
        clean = {}
        for (u, v), w in dict(weights).items():
            if u == v:
                raise StructureError(f"self-loop at {u!r}")
            if u not in known or v not in known:
                raise StructureError(f"edge ({u!r}, {v!r}) uses unknown node")
            w = int(w)
            if w < 1:
                raise StructureError("edge weights must be >= 1")
            clean[(u, v)] = w
        self.weights = clean

    @property
    def edges(self):
        return frozenset(self.weights)

    def __eq__(self, other):
        return (
            isinstance(other, WeightedDigraph)
            and self.nodes == other.nodes
            and self.weights == other.weights
        )

    def __repr__(self):
        return f"WeightedDigraph({sorted(self.weights.items())})"


def topological_order(dag):
    """Node order respecting all edges; ties broken by catalog order."""
    indeg = {v: 0 for v in dag.nodes}
    for _, v in dag.edges:
        indeg[v] += 1
    order = []
    ready = [v for v in dag.nodes if indeg[v] == 0]
    while ready:
        u = min(ready, key=dag._order.get)
        ready.remove(u)
        order.append(u)
        for w in dag.children(u):
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
    if len(order) != len(dag.nodes):
        raise StructureError("graph contains a directed cycle")
    return tuple(order)


def _meek_demands(nodes, directed, undirected, order):
    """Orientations forced by Meek rules R1-R4 on the current graph."""
    demands = set()
    adjacent = set()
    for u, v in directed:
        adjacent.add(frozenset((u, v)))
    adjacent |= set(undirected)

    def adj(u, v):
        return frozenset((u, v)) in adjacent

    parents = {v: set() for v in nodes}
    children = {v: set() for v in nodes}
    for u, v in directed:
        parents[v].add(u)
        children[u].add(v)
    und_nbrs = {v: set() for v in nodes}
    for pair in undirected:
        u, v = tuple(pair)
        und_nbrs[u].add(v)
        und_nbrs[v].add(u)

    for b in nodes:
        for c in sorted(und_nbrs[b], key=order.get):
            # R1: a -> b - c with a, c non-adjacent orients b -> c.
            for a in sorted(parents[b], key=order.get):
                if a != c and not adj(a, c):
                    demands.add((b, c))
            # R2: b -> d -> c plus b - c orients b -> c.
            for d in sorted(children[b], key=order.get):
                if c in children[d]:
                    demands.add((b, c))
            # R3: b - a, b - d with a -> c, d -> c, a, d non-adjacent orients b -> c.
            pointing = [a for a in sorted(und_nbrs[b], key=order.get) if c in children[a]]
            for i, a in enumerate(pointing):
                for d in pointing[i + 1 :]:
                    if not adj(a, d):
                        demands.add((b, c))
            # R4: b - m, m -> e, e -> c, with m, c non-adjacent orients b -> c.
            for m in sorted(und_nbrs[b], key=order.get):
                if m == c or adj(m, c):
                    continue
                for e in sorted(children[m], key=order.get):
                    if e != c and c in children[e]:
                        demands.add((b, c))
    return demands


def orient_meek(pdag):
    """Close a partially directed graph under Meek rules R1-R4.

    Directed edges are only ever added. If one sweep forces both directions
    of the same edge the graph is inconsistent and an error is raised.
    """
    order = {v: i for i, v in enumerate(pdag.nodes)}
    directed = set(pdag.directed)
    undirected = set(pdag.undirected)
    while True:
        demands = _meek_demands(pdag.nodes, directed, undirected, order)
        demands = {d for d in demands if frozenset(d) in undirected}
        if not demands:
            break
        for u, v in sorted(demands, key=lambda e: (order[e[0]], order[e[1]])):
            if (v, u) in demands:
                raise InconsistencyError(
                    f"orientation conflict on edge {u!r}-{v!r}", edge=(u, v)
                )
            if frozenset((u, v)) in undirected:
                undirected.remove(frozenset((u, v)))
                directed.add((u, v))
    return Pdag(pdag.nodes, directed, undirected)


def dag_to_cpdag(dag):
    """Markov-equivalence-class representative of a DAG.

    Edges taking part in a v-structure stay directed, the closure under the
    Meek rules directs every other compelled edge, and the rest become
    undirected.
    """
    directed = set()
    for z in dag.nodes:
        ps = dag.parents(z)
        for i, x in enumerate(ps):
            for y in ps[i + 1 :]:
                if not dag.adjacent(x, y):
                    directed.add((x, z))
                    directed.add((y, z))
    undirected = {frozenset(e) for e in dag.edges if e not in directed}
    return orient_meek(Pdag(dag.nodes, directed, undirected))


def graph_to_document(graph):
    """JSON-ready document for a Dag, Pdag or WeightedDigraph."""
    doc = {"nodes": list(graph.nodes)}
    edges = []
    if isinstance(graph, WeightedDigraph):
        for (u, v), w in sorted(graph.weights.items()):
            edges.append({"from": u, "to": v, "weight": w})
    elif isinstance(graph, Dag):
        for u, v in sorted(graph.edges):
            edges.append({"from": u, "to": v})
    elif isinstance(graph, Pdag):
        items = [(u, v, True) for u, v in graph.directed]
        items += [(u, v, False) for u, v in graph.undirected_pairs()]
        for u, v, is_dir in sorted(items):
            entry = {"from": u, "to": v}
            if not is_dir:
                entry["directed"] = False
            edges.append(entry)
    else:
        raise ParameterError(f"unsupported graph type: {type(graph).__name__}")
    doc["edges"] = edges
    return doc


def document_to_graph(doc):
    """Parse the shared graph document into the most specific graph type.

    Returns a Pdag when any edge is undirected, a WeightedDigraph when any
    edge carries a weight, and a Dag otherwise.
    """
    nodes = [str(n) for n in doc.get("nodes", [])]
    directed = []
    undirected = []
    weights = {}
    weighted = False
    for entry in doc.get("edges", []):
        u, v = str(entry["from"]), str(entry["to"])
        if entry.get("directed", True):
            directed.append((u, v))
            if "weight" in entry:
                weighted = True
                weights[(u, v)] = int(entry["weight"])
            else:
                weights[(u, v)] = 1
        else:
            undirected.append((u, v))
    if undirected:
        return Pdag(nodes, directed, undirected)
    if weighted:
        return WeightedDigraph(nodes, weights)
    return Dag(nodes, directed)


def write_graph(graph, path):
    text = json.dumps(graph_to_document(graph), indent=2, ensure_ascii=False)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text + "\n")


def read_graph(path):
    with open(path, encoding="utf-8") as fh:
        return document_to_graph(json.load(fh))
