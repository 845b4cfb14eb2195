"""Linear regression-based causal ordering with coefficient pruning."""

from __future__ import annotations

import numpy as np

from ..errors import DegenerateVarianceError, ParameterError
from ..graphs import Pdag
from ..independence import dependence_statistic
from ._base import BaseDiscovery, DiscoveryResult


def _residual(target, predictor):
    """Least-squares residual of target on one centered predictor."""
    var = float(predictor @ predictor)
    if var < 1e-12:
        return target.copy()
    beta = float(predictor @ target) / var
    return target - beta * predictor


class DirectLiNGAM(BaseDiscovery):
    """Iterative root selection by residual independence, then pruning.

    At each step the variable whose regressions leave residuals least
    dependent on it (summed dependence statistic over the others) becomes
    the next root and is regressed out of the rest. Edge weights come from
    least squares of each variable on its order predecessors in the
    original data; edges with |weight| <= ``prune_threshold`` are dropped.
    """

    algorithm = "lingam"

    def __init__(self, prune_threshold=0.05):
        self.prune_threshold = prune_threshold

    def _discover(self, matrix):
        ids = matrix.catalog.ids
        p = len(ids)
        if matrix.n_cases < 2:
            raise ParameterError("need at least 2 rows")
        raw = matrix.values.astype(float)
        for j, cid in enumerate(ids):
            if raw[:, j].min() == raw[:, j].max():
                raise DegenerateVarianceError(f"column {cid!r} is constant")
        data = raw - raw.mean(axis=0)
        original = data.copy()

        remaining = list(range(p))
        order = []
        while len(remaining) > 1:
            best_idx, best_total = None, None
            for x in remaining:
                total = 0.0
                for y in remaining:
                    if y == x:
                        continue
                    r = _residual(data[:, y], data[:, x])
                    total += dependence_statistic(data[:, x], r)
                if best_total is None or total < best_total:
                    best_idx, best_total = x, total
            order.append(best_idx)
            remaining.remove(best_idx)
            root = data[:, best_idx].copy()
            for y in remaining:
                res = _residual(data[:, y], root)
                data[:, y] = res - res.mean()
        order.extend(remaining)

        weights = np.zeros((p, p))
        for pos, target in enumerate(order):
            preds = order[:pos]
            if not preds:
                continue
            a = original[:, preds]
            coef, *_ = np.linalg.lstsq(a, original[:, target], rcond=None)
            for c, pred in zip(coef, preds):
                weights[pred, target] = c

        edges = [
            (ids[u], ids[v])
            for u in range(p)
            for v in range(p)
            if abs(weights[u, v]) > self.prune_threshold
        ]
        diagnostics = {
            "order": [ids[i] for i in order],
            "weights": {
                f"{ids[u]}->{ids[v]}": float(weights[u, v])
                for u in range(p)
                for v in range(p)
                if weights[u, v] != 0.0
            },
        }
        return DiscoveryResult(Pdag(ids, edges), self.algorithm, None, diagnostics)
