"""Input validation helpers shared by the estimator classes."""

from __future__ import annotations

import numpy as np

from .dataset import BinaryDataMatrix, ConceptCatalog
from .errors import DataError


def as_matrix(X):
    """Coerce estimator input into a :class:`BinaryDataMatrix`.

    Accepts a matrix as-is, a pandas DataFrame (column names become concept
    ids) or any 2-d array-like of 0/1 values (concepts named X0, X1, ...).
    """
    if isinstance(X, BinaryDataMatrix):
        return X
    columns = None
    if hasattr(X, "columns") and hasattr(X, "to_numpy"):
        columns = [str(c) for c in X.columns]
        X = X.to_numpy()
    values = np.asarray(X)
    if values.ndim != 2:
        raise DataError("expected a 2-d array of 0/1 values")
    if values.size and not np.isin(values, (0, 1)).all():
        raise DataError("all values must be 0 or 1")
    if columns is None:
        columns = [f"X{i}" for i in range(values.shape[1])]
    catalog = ConceptCatalog.from_ids(columns)
    case_ids = [f"row_{i}" for i in range(values.shape[0])]
    return BinaryDataMatrix(catalog, case_ids, values.astype(np.uint8))
