import numpy as np
import pytest

from causelaw import (
    Dag,
    Pdag,
    WeightedDigraph,
    build_consensus,
    ensure_dag,
    is_acyclic,
)
from causelaw.discovery import DiscoveryResult
from causelaw.errors import CatalogError, ParameterError

NODES = ("A", "B", "C")


def pdag(directed=(), undirected=()):
    return Pdag(NODES, directed, undirected)


class TestBuildConsensus:
    def test_weight_counts_agreeing_results(self):
        graphs = [
            pdag(directed=[("A", "B")]),
            pdag(directed=[("A", "B"), ("B", "C")]),
            pdag(directed=[("A", "B")]),
            pdag(),
            pdag(directed=[("C", "A")]),
            pdag(),
        ]
        out = build_consensus(graphs, min_agree=2)
        assert out.weights == {("A", "B"): 3}

    def test_single_agreement_dropped(self):
        graphs = [pdag(directed=[("A", "B")]), pdag(directed=[("B", "C")])]
        out = build_consensus(graphs, min_agree=2)
        assert out.weights == {}

    def test_empty_input_rejected(self):
        with pytest.raises(ParameterError):
            build_consensus([])

    def test_orientation_strict_by_default(self):
        graphs = [pdag(directed=[("A", "B")]), pdag(directed=[("B", "A")])]
        out = build_consensus(graphs, min_agree=2)
        assert out.weights == {}

    def test_undirected_counts_toward_both_when_asked(self):
        graphs = [pdag(undirected=[("A", "B")]), pdag(directed=[("A", "B")])]
        strict = build_consensus(graphs, min_agree=2)
        assert strict.weights == {}
        both = build_consensus(graphs, min_agree=2, undirected="both")
        assert both.weights == {("A", "B"): 2}

    def test_invariant_to_input_order(self):
        graphs = [
            pdag(directed=[("A", "B")]),
            pdag(directed=[("A", "B"), ("B", "C")]),
            pdag(directed=[("B", "C")]),
        ]
        a = build_consensus(graphs, min_agree=2)
        b = build_consensus(list(reversed(graphs)), min_agree=2)
        assert a == b

    def test_weight_bounded_by_result_count(self):
        rng = np.random.default_rng(2)
        graphs = []
        for _ in range(6):
            edges = [("A", "B")] if rng.random() < 0.7 else []
            graphs.append(pdag(directed=edges))
        out = build_consensus(graphs, min_agree=1)
        assert all(w <= 6 for w in out.weights.values())

    def test_accepts_discovery_results_and_dags(self):
        items = [
            DiscoveryResult(pdag(directed=[("A", "B")]), "pc"),
            Dag(NODES, [("A", "B")]),
        ]
        out = build_consensus(items, min_agree=2)
        assert out.weights == {("A", "B"): 2}

    def test_mismatched_catalogs_rejected(self):
        with pytest.raises(CatalogError):
            build_consensus([pdag(), Pdag(("A", "B"), [], [])])


class TestEnsureDag:
    def test_acyclic_input_unchanged(self):
        g = WeightedDigraph(NODES, {("A", "B"): 2, ("B", "C"): 3})
        dag, report = ensure_dag(g)
        assert dag.edges == frozenset({("A", "B"), ("B", "C")})
        assert report == []

    def test_two_cycle_keeps_heavier_edge(self):
        g = WeightedDigraph(NODES, {("A", "B"): 2, ("B", "A"): 3})
        dag, report = ensure_dag(g)
        assert dag.edges == frozenset({("B", "A")})
        assert report == [("A", "B", 2)]

    def test_three_cycle_tie_breaks_lexicographically(self):
        g = WeightedDigraph(
            NODES, {("A", "B"): 2, ("B", "C"): 2, ("C", "A"): 3}
        )
        dag, report = ensure_dag(g)
        assert report == [("A", "B", 2)]
        assert dag.edges == frozenset({("B", "C"), ("C", "A")})

    def test_never_deletes_edges_outside_cycles(self):
        rng = np.random.default_rng(7)
        names = tuple(f"V{i}" for i in range(6))
        for _ in range(30):
            weights = {}
            for i in range(6):
                for j in range(6):
                    if i != j and rng.random() < 0.3:
                        weights[(names[i], names[j])] = int(rng.integers(1, 5))
            g = WeightedDigraph(names, weights)
            dag, report = ensure_dag(g)
            assert is_acyclic(names, dag.edges)
            remaining = dict(weights)
            for u, v, w in report:
                # The deleted edge had to sit on a cycle at deletion time.
                children = {n: [] for n in names}
                for a, b in remaining:
                    children[a].append(b)
                stack, seen = [v], {v}
                on_cycle = False
                while stack:
                    node = stack.pop()
                    if node == u:
                        on_cycle = True
                        break
                    for w2 in children[node]:
                        if w2 not in seen:
                            seen.add(w2)
                            stack.append(w2)
                assert on_cycle
                del remaining[(u, v)]
            assert frozenset(remaining) == dag.edges
