import os

os.environ.setdefault("AVSOC_SILENT_STARTUP", "1")

from pathlib import Path  # noqa: E402

import pytest  # noqa: E402

from avsociety.emotion.occ import FisSet  # noqa: E402
from avsociety.society.config import WorldConfig  # noqa: E402

TEST_DATA = Path(__file__).parent / "test_data"


def get_test_data(name: str) -> str:
    """Golden file contents from tests/test_data."""
    return (TEST_DATA / name).read_text()


@pytest.fixture
def small_cfg() -> WorldConfig:
    """A handful of vehicles on the default torus."""
    return WorldConfig(num_avs=5, ticks_per_run=20)


@pytest.fixture(scope="session")
def fis_set() -> FisSet:
    return FisSet.build()


@pytest.fixture
def output_dir(tmp_path) -> Path:
    path = tmp_path / "out"
    path.mkdir()
    return path
