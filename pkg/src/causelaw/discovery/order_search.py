"""Order-based score searches: project an order to a DAG, then search orders.

Both searches walk permutations of the variables, score the DAG each order
projects to, and keep the best-scoring graph across seeded restarts.
"""

from __future__ import annotations

import numpy as np

from ..graphs import Dag, dag_to_cpdag
from ..scoring import Scorer, ScoreConfig
from ..errors import ParameterError
from ._base import BaseDiscovery, DiscoveryResult


class OrderProjector:
    """Grow-shrink projection of variable orders onto DAGs, memoized.

    The parent set chosen for a node depends only on the set of its
    predecessors, so results are cached by (node, predecessor set).
    """

    def __init__(self, matrix, config=None):
        self.matrix = matrix
        self.scorer = Scorer(matrix, config)
        self.ids = matrix.catalog.ids
        self._cache = {}

    def node_parents(self, node, predecessors):
        """Greedy grow-then-shrink parent choice from the predecessor set."""
        key = (node, frozenset(predecessors))
        if key in self._cache:
            return self._cache[key]
        order_of = self.ids.index
        pool = sorted(predecessors, key=order_of)
        parents = []
        score = self.scorer.local(node, ())

        changed = True
        while changed:
            changed = False
            while True:
                best, best_delta = None, 0.0
                for cand in pool:
                    if cand in parents:
                        continue
                    trial = sorted(parents + [cand], key=order_of)
                    delta = self.scorer.local(node, trial) - score
                    if delta > best_delta:
                        best, best_delta = cand, delta
                if best is None:
                    break
                parents = sorted(parents + [best], key=order_of)
                score += best_delta
                changed = True
            while True:
                best, best_delta = None, 0.0
                for cand in parents:
                    trial = [p for p in parents if p != cand]
                    delta = self.scorer.local(node, trial) - score
                    if delta > best_delta:
                        best, best_delta = cand, delta
                if best is None:
                    break
                parents = [p for p in parents if p != best]
                score += best_delta
                changed = True

        result = (tuple(parents), score)
        self._cache[key] = result
        return result

    def project(self, order):
        """Parent map and total score of the DAG the order projects to."""
        seen = []
        parent_map = {}
        total = 0.0
        for node in order:
            parents, score = self.node_parents(node, seen)
            parent_map[node] = parents
            total += score
            seen.append(node)
        return parent_map, total

    def project_dag(self, order):
        parent_map, total = self.project(order)
        edges = [(p, v) for v, ps in parent_map.items() for p in ps]
        return Dag(self.ids, edges), total


def project_order(matrix, order, config=None):
    """DAG consistent with ``order``: each node keeps its best predecessors."""
    order = tuple(order)
    if sorted(order) != sorted(matrix.catalog.ids):
        raise ParameterError("order must be a permutation of the catalog ids")
    dag, _ = OrderProjector(matrix, config).project_dag(order)
    return dag


class BOSS(BaseDiscovery):
    """Best-insertion-position order search over seeded random restarts.

    Each sweep tries every variable at every insertion position of the
    current order and keeps the position whose projected DAG scores best;
    sweeps repeat until none improves. Restart r uses seed ``seed + r``.
    """

    algorithm = "boss"

    def __init__(self, score="bdeu", ess=1.0, restarts=10, seed=0):
        self.score = score
        self.ess = ess
        self.restarts = restarts
        self.seed = seed

    def _discover(self, matrix):
        if self.restarts < 1:
            raise ParameterError("restarts must be >= 1")
        ids = matrix.catalog.ids
        projector = OrderProjector(matrix, ScoreConfig(kind=self.score, ess=self.ess))
        best_order, best_score, sweeps_total = None, -np.inf, 0

        for r in range(self.restarts):
            rng = np.random.default_rng(self.seed + r)
            order = [ids[i] for i in rng.permutation(len(ids))]
            _, score = projector.project(order)
            improved = True
            while improved:
                improved = False
                sweeps_total += 1
                for node in ids:
                    base = [v for v in order if v != node]
                    cand_best, cand_score = None, score
                    for pos in range(len(order)):
                        trial = base[:pos] + [node] + base[pos:]
                        _, s = projector.project(trial)
                        if s > cand_score:
                            cand_best, cand_score = trial, s
                    if cand_best is not None:
                        order, score = cand_best, cand_score
                        improved = True
            if score > best_score:
                best_order, best_score = list(order), score

        dag, total = projector.project_dag(best_order)
        diagnostics = {
            "order": list(best_order),
            "dag_edges": sorted(dag.edges),
            "sweeps": sweeps_total,
        }
        return DiscoveryResult(dag_to_cpdag(dag), self.algorithm, total, diagnostics)


class GRaSP(BaseDiscovery):
    """Depth-limited recursive tuck search over seeded random restarts.

    A tuck moves a node to just before one of its parents in the order. A
    tuck is committed as soon as it improves on the incumbent score; at
    depth d > 1, tucks whose immediate score does not improve are explored
    further by tucking again before being rejected.
    """

    algorithm = "grasp"

    def __init__(self, score="bdeu", ess=1.0, depth=2, restarts=10, seed=0):
        self.score = score
        self.ess = ess
        self.depth = depth
        self.restarts = restarts
        self.seed = seed

    def _tucks(self, projector, order):
        """Candidate tucks (x_pos, y_pos) in deterministic order."""
        parent_map, _ = projector.project(order)
        out = []
        for y_pos, y in enumerate(order):
            for x_pos in range(y_pos):
                if order[x_pos] in parent_map[y]:
                    out.append((x_pos, y_pos))
        return out

    def _search(self, projector, order, incumbent, depth):
        """First tuck sequence improving on ``incumbent``, or None."""
        for x_pos, y_pos in self._tucks(projector, order):
            moved = order[y_pos]
            trial = order[:y_pos] + order[y_pos + 1 :]
            trial = trial[:x_pos] + [moved] + trial[x_pos:]
            _, s = projector.project(trial)
            if s > incumbent:
                return trial, s
            if depth > 1:
                found = self._search(projector, trial, incumbent, depth - 1)
                if found is not None:
                    return found
        return None

    def _discover(self, matrix):
        if self.depth < 1:
            raise ParameterError("depth must be >= 1")
        if self.restarts < 1:
            raise ParameterError("restarts must be >= 1")
        ids = matrix.catalog.ids
        projector = OrderProjector(matrix, ScoreConfig(kind=self.score, ess=self.ess))
        best_order, best_score, moves_total = None, -np.inf, 0

        for r in range(self.restarts):
            rng = np.random.default_rng(self.seed + r)
            order = [ids[i] for i in rng.permutation(len(ids))]
            _, score = projector.project(order)
            while True:
                found = self._search(projector, order, score, self.depth)
                if found is None:
                    break
                order, score = found
                moves_total += 1
            if score > best_score:
                best_order, best_score = list(order), score

        dag, total = projector.project_dag(best_order)
        diagnostics = {
            "order": list(best_order),
            "dag_edges": sorted(dag.edges),
            "accepted_tucks": moves_total,
        }
        return DiscoveryResult(dag_to_cpdag(dag), self.algorithm, total, diagnostics)
