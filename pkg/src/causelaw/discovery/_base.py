"""Shared estimator scaffolding for the discovery algorithms."""

from __future__ import annotations

from dataclasses import dataclass, field

from sklearn.base import BaseEstimator

from .._validation import as_matrix
from ..graphs import Pdag


@dataclass
class DiscoveryResult:
    """Graph found by one algorithm plus its bookkeeping.

    ``graph`` always covers exactly the catalog's nodes; ``score`` is set by
    the score-based searches; ``diagnostics`` holds run counters and, for
    order-based searches, the order and DAG that produced the graph.
    """

    graph: Pdag
    algorithm: str
    score: float | None = None
    diagnostics: dict = field(default_factory=dict)


class BaseDiscovery(BaseEstimator):
    """Estimator base: ``fit(X)`` runs the search and stores the result.

    After fitting, ``graph_`` holds the discovered partially directed graph
    and ``result_`` the full :class:`DiscoveryResult`.
    """

    algorithm = "base"

    def fit(self, X, y=None):
        matrix = as_matrix(X)
        self.result_ = self._discover(matrix)
        self.graph_ = self.result_.graph
        self.score_ = self.result_.score
        return self

    def fit_discover(self, X):
        """Fit and return the :class:`DiscoveryResult` in one call."""
        return self.fit(X).result_

    def _discover(self, matrix):
        raise NotImplementedError
