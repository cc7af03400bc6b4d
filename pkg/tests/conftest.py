"""
Test configuration and fixtures for pytest
"""
import numpy as np
import pytest

from ucs_hybrid.config.settings import CSV_COLUMNS
from ucs_hybrid.schemas import SearchConfig
from ucs_hybrid.services.dataset_service import Dataset, save_csv, synthesize, published_summary


@pytest.fixture(scope="session")
def reference_summary():
    """Published statistics of the 323-sample dataset"""
    return published_summary()


@pytest.fixture(scope="session")
def small_dataset(reference_summary):
    """60 planted records; enough for every split and scaler test"""
    return synthesize(reference_summary, 60, seed=3)


@pytest.fixture
def tiny_config():
    """Search config small enough for unit tests (a few ms per run)"""
    return SearchConfig(population_size=6, iterations=5, seed=11)


@pytest.fixture
def dataset_csv(tmp_path, small_dataset):
    """small_dataset written to a CSV file"""
    return save_csv(small_dataset, tmp_path / "data.csv")


@pytest.fixture
def write_csv(tmp_path):
    """Write raw text to a CSV in tmp_path and return its path"""
    def _write(text, name="input.csv"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path
    return _write


@pytest.fixture
def header_line():
    return ",".join(CSV_COLUMNS)


@pytest.fixture
def make_dataset():
    """Build a Dataset from a list of nine-value rows"""
    def _make(rows):
        values = np.asarray(rows, dtype=float)
        return Dataset.from_arrays(values[:, :8], values[:, 8])
    return _make
