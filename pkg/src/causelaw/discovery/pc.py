"""Constraint-based search: skeleton by independence tests, then orientation."""

from __future__ import annotations

from itertools import combinations

from ..graphs import Pdag, orient_meek
from ..independence import g2_test
from ._base import BaseDiscovery, DiscoveryResult


class PC(BaseDiscovery):
    """Estimate a CPDAG by pruning a complete graph with G-squared tests.

    Starting from the complete undirected graph, edges are removed whenever
    some conditioning set drawn from either endpoint's neighborhood renders
    the pair independent at level ``alpha``; conditioning sets grow one
    element per pass up to ``max_cond_set``. Unshielded triples whose middle
    node is outside the recorded separating set become v-structures, and the
    Meek rules then orient every remaining compelled edge.

    Enumeration follows the catalog order throughout, so the output is a
    deterministic function of the input.
    """

    algorithm = "pc"

    def __init__(self, alpha=0.05, max_cond_set=3):
        self.alpha = alpha
        self.max_cond_set = max_cond_set

    def _discover(self, matrix):
        ids = matrix.catalog.ids
        order = {v: i for i, v in enumerate(ids)}
        adj = {v: set(ids) - {v} for v in ids}
        sepset = {}
        tests = 0

        level = 0
        while level <= self.max_cond_set:
            pairs = [
                (x, y)
                for i, x in enumerate(ids)
                for y in ids[i + 1 :]
                if y in adj[x]
            ]
            any_testable = False
            for x, y in pairs:
                if y not in adj[x]:
                    continue
                removed = False
                for side_x, side_y in ((x, y), (y, x)):
                    candidates = sorted(adj[side_x] - {side_y}, key=order.get)
                    if len(candidates) < level:
                        continue
                    any_testable = True
                    for z in combinations(candidates, level):
                        tests += 1
                        res = g2_test(matrix, x, y, z, alpha=self.alpha)
                        if res.independent:
                            adj[x].discard(y)
                            adj[y].discard(x)
                            sepset[(x, y)] = frozenset(z)
                            sepset[(y, x)] = frozenset(z)
                            removed = True
                            break
                    if removed:
                        break
            if not any_testable:
                break
            level += 1

        demanded = set()
        for z in ids:
            nbrs = sorted(adj[z], key=order.get)
            for i, x in enumerate(nbrs):
                for y in nbrs[i + 1 :]:
                    if y in adj[x]:
                        continue
                    if z not in sepset.get((x, y), frozenset()):
                        demanded.add((x, z))
                        demanded.add((y, z))
        conflicts = sorted(
            (u, v) for u, v in demanded if (v, u) in demanded and u < v
        )
        for u, v in conflicts:
            demanded.discard((u, v))
            demanded.discard((v, u))
        undirected = {
            frozenset((x, y))
            for x in ids
            for y in adj[x]
            if (x, y) not in demanded and (y, x) not in demanded
        }
        pdag = orient_meek(Pdag(ids, demanded, undirected))
        diagnostics = {
            "tests_run": tests,
            "max_level_reached": level,
            "orientation_conflicts": [list(e) for e in conflicts],
        }
        return DiscoveryResult(pdag, self.algorithm, None, diagnostics)
