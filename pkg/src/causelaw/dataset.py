"""Binary case-by-concept matrices: loading, contingency counts, phi correlation.

A matrix row is one court case; a column is one legal concept, coded 1 when
the concept was reported in the case and 0 otherwise.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import (
    CatalogError,
    DataError,
    DegenerateVarianceError,
    ParameterError,
)


@dataclass(frozen=True)
class Concept:
    """One binary concept: a short id, a human label and a free category tag."""

    id: str
    name: str = ""
    category: str = ""


class ConceptCatalog:
    """Ordered, immutable collection of concepts.

    The catalog order is the canonical tie-breaking order used throughout the
    package, so it is fixed for the life of any matrix built on it.
    """

    def __init__(self, concepts):
        concepts = tuple(
            c if isinstance(c, Concept) else Concept(str(c)) for c in concepts
        )
        ids = [c.id for c in concepts]
        if any(not i for i in ids):
            raise CatalogError("concept ids must be non-empty")
        if len(set(ids)) != len(ids):
            dupes = sorted({i for i in ids if ids.count(i) > 1})
            raise CatalogError(f"duplicate concept ids: {dupes}")
        self._concepts = concepts
        self._index = {c.id: k for k, c in enumerate(concepts)}

    @classmethod
    def from_ids(cls, ids):
        return cls(Concept(str(i)) for i in ids)

    @classmethod
    def from_csv(cls, path):
        """Read a concepts file with header ``id,name,category``."""
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            rows = [
                Concept(r["id"].strip(), r.get("name", "").strip(), r.get("category", "").strip())
                for r in reader
            ]
        return cls(rows)

    @property
    def concepts(self):
        return self._concepts

    @property
    def ids(self):
        return tuple(c.id for c in self._concepts)

    def index(self, concept_id):
        try:
            return self._index[concept_id]
        except KeyError:
            raise CatalogError(f"unknown concept id: {concept_id!r}") from None

    def __contains__(self, concept_id):
        return concept_id in self._index

    def name(self, concept_id):
        return self._concepts[self.index(concept_id)].name or concept_id

    def __len__(self):
        return len(self._concepts)

    def __iter__(self):
        return iter(self._concepts)

    def __eq__(self, other):
        return isinstance(other, ConceptCatalog) and self._concepts == other._concepts

    def __hash__(self):
        return hash(self._concepts)


class BinaryDataMatrix:
    """Immutable case-by-concept matrix of 0/1 values."""

    def __init__(self, catalog, case_ids, values):
        values = np.asarray(values, dtype=np.uint8)
        if values.ndim != 2:
            raise DataError("matrix values must be two-dimensional")
        case_ids = tuple(str(c) for c in case_ids)
        if values.shape[0] != len(case_ids):
            raise DataError("one case id required per row")
        if values.shape[1] != len(catalog):
            raise DataError("every row must have exactly one value per concept")
        if values.size and values.max() > 1:
            r, c = np.argwhere(values > 1)[0]
            raise DataError(
                f"non-binary value at case {case_ids[r]!r}, concept {catalog.ids[c]!r}",
                row=case_ids[r],
                column=catalog.ids[c],
            )
        if len(set(case_ids)) != len(case_ids):
            dupes = sorted({c for c in case_ids if case_ids.count(c) > 1})
            raise DataError(f"duplicate case ids: {dupes}")
        values.setflags(write=False)
        self.catalog = catalog
        self.case_ids = case_ids
        self.values = values

    @property
    def n_cases(self):
        return self.values.shape[0]

    @property
    def n_concepts(self):
        return self.values.shape[1]

    def column(self, concept_id):
        return self.values[:, self.catalog.index(concept_id)]

    def select(self, concept_ids):
        """New matrix restricted to the given concepts, keeping their order."""
        idx = [self.catalog.index(i) for i in concept_ids]
        sub = ConceptCatalog(self.catalog.concepts[i] for i in idx)
        return BinaryDataMatrix(sub, self.case_ids, self.values[:, idx])


class CountTable:
    """Exhaustive counts over all value combinations of a variable subset."""

    def __init__(self, variables, counts):
        self.variables = tuple(variables)
        k = len(self.variables)
        full = {}
        for combo in product((0, 1), repeat=k):
            full[combo] = int(counts.get(combo, 0))
        for key, c in counts.items():
            if len(key) != k:
                raise ParameterError(f"count key {key} has wrong arity")
            if c < 0:
                raise ParameterError("counts must be non-negative")
        self.counts = full

    @property
    def total(self):
        return sum(self.counts.values())

    def __getitem__(self, combo):
        return self.counts[tuple(combo)]

    def marginalize(self, variable):
        """Sum out one variable, keeping the others in order."""
        if variable not in self.variables:
            raise ParameterError(f"{variable!r} not in table")
        pos = self.variables.index(variable)
        rest = self.variables[:pos] + self.variables[pos + 1 :]
        out = {}
        for combo, c in self.counts.items():
            key = combo[:pos] + combo[pos + 1 :]
            out[key] = out.get(key, 0) + c
        return CountTable(rest, out)


def load_matrix(path, concepts=None):
    """Load a CSV whose first column is ``case_id`` and the rest are concepts.

    Cells must be 0 or 1. When a :class:`ConceptCatalog` is supplied its ids
    must match the header; it is used to attach names and categories.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError("empty file: missing header") from None
        if not header or header[0] != "case_id":
            raise DataError("first header column must be 'case_id'")
        ids = [h.strip() for h in header[1:]]
        if concepts is None:
            catalog = ConceptCatalog.from_ids(ids)
        else:
            if list(concepts.ids) != ids:
                raise CatalogError("concepts file does not match matrix header")
            catalog = concepts
        case_ids = []
        rows = []
        for line_no, row in enumerate(reader, start=2):
            if len(row) != len(header):
                raise DataError(f"ragged row at line {line_no}", row=line_no)
            case_ids.append(row[0])
            parsed = []
            for col_id, cell in zip(ids, row[1:]):
                cell = cell.strip()
                if cell not in ("0", "1"):
                    raise DataError(
                        f"non-binary value {cell!r} at line {line_no}, concept {col_id!r}",
                        row=line_no,
                        column=col_id,
                    )
                parsed.append(int(cell))
            rows.append(parsed)
    values = np.array(rows, dtype=np.uint8).reshape(len(rows), len(ids))
    return BinaryDataMatrix(catalog, case_ids, values)


def save_matrix(matrix, path):
    """Write a matrix back to CSV in the canonical format."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["case_id", *matrix.catalog.ids])
        for case_id, row in zip(matrix.case_ids, matrix.values):
            writer.writerow([case_id, *map(int, row)])


def contingency(matrix, variables):
    """Count every value combination of ``variables`` over the matrix rows.

    Combinations absent from the data are materialized with count 0; the
    first variable is the most significant bit of the combination key.
    """
    variables = tuple(variables)
    if not variables:
        raise ParameterError("variables must be non-empty")
    if len(set(variables)) != len(variables):
        raise ParameterError("variables must not repeat")
    idx = [matrix.catalog.index(v) for v in variables]
    k = len(idx)
    codes = np.zeros(matrix.n_cases, dtype=np.int64)
    for i in idx:
        codes = (codes << 1) | matrix.values[:, i]
    binned = np.bincount(codes, minlength=2**k)
    counts = {}
    for j, combo in enumerate(product((0, 1), repeat=k)):
        counts[combo] = int(binned[j])
    return CountTable(variables, counts)


def phi(matrix, x, y):
    """Pearson correlation of two binary columns, from their 2x2 table."""
    if x == y:
        raise ParameterError("phi requires two distinct concepts")
    table = contingency(matrix, (x, y))
    n11 = table[(1, 1)]
    n10 = table[(1, 0)]
    n01 = table[(0, 1)]
    n00 = table[(0, 0)]
    x1 = n11 + n10
    x0 = n01 + n00
    y1 = n11 + n01
    y0 = n10 + n00
    if 0 in (x1, x0):
        raise DegenerateVarianceError(f"column {x!r} is constant")
    if 0 in (y1, y0):
        raise DegenerateVarianceError(f"column {y!r} is constant")
    return (n11 * n00 - n10 * n01) / math.sqrt(x1 * x0 * y1 * y0)
