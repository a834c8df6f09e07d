from pathlib import Path

import pytest

DATA_DIR = Path(__file__).resolve().parents[1] / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def absolute_fixture(data_dir) -> Path:
    return data_dir / "top_absolute_2017.csv"


@pytest.fixture(scope="session")
def relative_fixture(data_dir) -> Path:
    return data_dir / "top_relative_2017.csv"


@pytest.fixture(scope="session")
def papers_sample(data_dir) -> Path:
    return data_dir / "papers_sample.csv"
