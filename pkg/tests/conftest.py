"""
Pytest configuration and fixtures for semitree tests
"""
import pytest
from pathlib import Path
import sys

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from semigroups.core import TRIVIAL, from_gaps, from_generators  # noqa: E402
from semigroups.tree import iter_subtree  # noqa: E402

GOLDEN_DIR = Path(__file__).parent / "golden"

# n_g for g = 0..22
KNOWN_COUNTS = [
    1, 1, 2, 4, 7, 12, 23, 39, 67, 118, 204, 343, 592, 1001, 1693, 2857,
    4806, 8045, 13467, 22464, 37396, 62194, 103246,
]


@pytest.fixture
def golden_dir():
    """Directory holding byte-exact expected outputs"""
    return GOLDEN_DIR


@pytest.fixture
def known_counts():
    """Number of semigroups of each genus"""
    return list(KNOWN_COUNTS)


@pytest.fixture
def ordinary_4():
    """{0} U [4, inf)"""
    return from_gaps([1, 2, 3])


@pytest.fixture
def ps_g3():
    """<3,5,7> = {0,3} U [5, inf)"""
    return from_generators([3, 5, 7])


@pytest.fixture
def hyperelliptic_2_5():
    """<2,5>"""
    return from_generators([2, 5])


@pytest.fixture
def chain_example():
    """{0,6,10,12} U [13, inf)"""
    return from_gaps([1, 2, 3, 4, 5, 7, 8, 9, 11])


@pytest.fixture(scope="session")
def nodes_to_genus_8():
    """Every decorated node of genus <= 8, pre-order"""
    return list(iter_subtree(TRIVIAL, 8))


@pytest.fixture(autouse=True)
def setup_test_env(monkeypatch, tmp_path):
    """Setup test environment variables"""
    for name in ("SEMITREE_WORKERS", "SEMITREE_PARTITION_GENUS", "SEMITREE_LOG_TO_FILE"):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.setenv("SEMITREE_LOG_LEVEL", "WARNING")  # Reduce log noise in tests

    # Set test directories
    test_output_dir = tmp_path / "output"
    test_output_dir.mkdir(exist_ok=True)
    monkeypatch.setenv("SEMITREE_OUTPUT_DIR", str(test_output_dir))
    monkeypatch.setenv("SEMITREE_LOGS_DIR", str(tmp_path / "logs"))

    return {
        "output_dir": test_output_dir,
        "tmp_path": tmp_path
    }
