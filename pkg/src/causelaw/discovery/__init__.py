"""The six discovery estimators and a name-based dispatcher."""

from .._validation import as_matrix
from ._base import BaseDiscovery, DiscoveryResult
from .anm import ANM
from .ges import GES
from .lingam import DirectLiNGAM
from .order_search import BOSS, GRaSP, OrderProjector, project_order
from .pc import PC

ALGORITHMS = {
    "pc": PC,
    "ges": GES,
    "grasp": GRaSP,
    "boss": BOSS,
    "lingam": DirectLiNGAM,
    "anm": ANM,
}


def discover(X, algorithm, **params):
    """Run one algorithm by name and return its :class:`DiscoveryResult`."""
    try:
        cls = ALGORITHMS[algorithm]
    except KeyError:
        from ..errors import ParameterError

        raise ParameterError(f"unknown algorithm: {algorithm!r}") from None
    return cls(**params).fit_discover(as_matrix(X))


__all__ = [
    "ALGORITHMS",
    "ANM",
    "BOSS",
    "BaseDiscovery",
    "DirectLiNGAM",
    "DiscoveryResult",
    "GES",
    "GRaSP",
    "OrderProjector",
    "PC",
    "discover",
    "project_order",
]
