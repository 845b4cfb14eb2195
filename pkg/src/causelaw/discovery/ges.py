"""Greedy score-based search: insert edges while the score improves, then prune."""

from __future__ import annotations

from ..graphs import Dag, dag_to_cpdag
from ..scoring import Scorer
from ._base import BaseDiscovery, DiscoveryResult


def _creates_cycle(children, u, v):
    """Would adding u -> v close a directed cycle (is u reachable from v)?"""
    stack = [v]
    seen = {v}
    while stack:
        node = stack.pop()
        if node == u:
            return True
        for w in children[node]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return False


class GES(BaseDiscovery):
    """Two-phase greedy equivalence search in DAG space.

    The forward phase repeatedly applies the single edge insertion with the
    largest positive score gain (either orientation, acyclicity permitting);
    the backward phase repeatedly applies the best score-improving deletion.
    Ties break on catalog order and the final DAG is reported as its
    equivalence class (CPDAG). With a score-equivalent default (BDeu) this
    is a faithful greedy search over equivalence classes.
    """

    algorithm = "ges"

    def __init__(self, score="bdeu", ess=1.0):
        self.score = score
        self.ess = ess

    def _score_config(self):
        from ..scoring import ScoreConfig

        return ScoreConfig(kind=self.score, ess=self.ess)

    def _discover(self, matrix):
        ids = matrix.catalog.ids
        scorer = Scorer(matrix, self._score_config())
        parents = {v: set() for v in ids}
        children = {v: set() for v in ids}

        def local(v):
            return scorer.local(v, sorted(parents[v], key=ids.index))

        current = {v: local(v) for v in ids}
        forward_deltas = []
        while True:
            best = None
            best_delta = 0.0
            for u in ids:
                for v in ids:
                    if u == v or u in parents[v] or v in parents[u]:
                        continue
                    if _creates_cycle(children, u, v):
                        continue
                    delta = (
                        scorer.local(v, sorted(parents[v] | {u}, key=ids.index))
                        - current[v]
                    )
                    if delta > best_delta:
                        best_delta = delta
                        best = (u, v)
            if best is None:
                break
            u, v = best
            parents[v].add(u)
            children[u].add(v)
            current[v] = local(v)
            forward_deltas.append(best_delta)

        backward_moves = 0
        while True:
            best = None
            best_delta = 0.0
            for v in ids:
                for u in sorted(parents[v], key=ids.index):
                    delta = (
                        scorer.local(v, sorted(parents[v] - {u}, key=ids.index))
                        - current[v]
                    )
                    if delta > best_delta:
                        best_delta = delta
                        best = (u, v)
            if best is None:
                break
            u, v = best
            parents[v].discard(u)
            children[u].discard(v)
            current[v] = local(v)
            backward_moves += 1

        edges = [(u, v) for v in ids for u in parents[v]]
        dag = Dag(ids, edges)
        total = sum(current.values())
        diagnostics = {
            "forward_moves": len(forward_deltas),
            "forward_deltas": forward_deltas,
            "backward_moves": backward_moves,
            "dag_edges": sorted(dag.edges),
        }
        return DiscoveryResult(dag_to_cpdag(dag), self.algorithm, total, diagnostics)
