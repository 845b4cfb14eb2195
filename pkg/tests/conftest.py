import pathlib

import pytest

from causelaw import ConceptCatalog, load_matrix

ROOT = pathlib.Path(__file__).resolve().parent.parent


@pytest.fixture(scope="session")
def data_dir():
    return ROOT / "data"


@pytest.fixture(scope="session")
def catalog(data_dir):
    return ConceptCatalog.from_csv(data_dir / "concepts.csv")


@pytest.fixture(scope="session")
def cases(data_dir, catalog):
    """The bundled 150-by-17 reference matrix."""
    return load_matrix(data_dir / "cases.csv", concepts=catalog)
