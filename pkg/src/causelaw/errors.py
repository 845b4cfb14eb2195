"""Exception types shared across the toolkit."""


class CauseLawError(Exception):
    """Base class for every error raised by this package."""


class DataError(CauseLawError):
    """Malformed input data: a non-binary cell, duplicate case id, ragged row."""

    def __init__(self, message, row=None, column=None):
        super().__init__(message)
        self.row = row
        self.column = column


class CatalogError(CauseLawError):
    """Unknown or inconsistent concept identifiers."""


class ParameterError(CauseLawError, ValueError):
    """An operation was called with an invalid argument."""


class DegenerateVarianceError(CauseLawError):
    """A column is constant where variance is required."""


class StructureError(CauseLawError):
    """A graph violates a structural requirement, typically acyclicity."""


class InconsistencyError(CauseLawError):
    """Orientation rules forced both directions of a single edge."""

    def __init__(self, message, edge=None):
        super().__init__(message)
        self.edge = edge


class ZeroEvidenceError(CauseLawError):
    """The supplied evidence has probability zero under the fitted network."""

    def __init__(self, message="no supporting cases", evidence=None):
        super().__init__(message)
        self.evidence = dict(evidence) if evidence else {}


class AnnotationInputError(CauseLawError):
    """Inconsistent annotation input: mixed cases or too few annotators."""
