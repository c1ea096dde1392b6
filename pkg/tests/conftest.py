import sys
from pathlib import Path

import pytest

# Add project root to path
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

# Import the path utility
try:
    from shared.path_utils import require_shared_utilities

    require_shared_utilities()
except ImportError:
    # Fallback error if even path_utils can't be imported
    print("Error: PrecedentCLI shared utilities not found.")
    print("Run the tests from a PrecedentCLI checkout.")
    sys.exit(1)

from precedent.core import CaseBase, FactorUniverse, Side  # noqa: E402

FIXTURES = Path(__file__).resolve().parent / "fixtures"


def fiscal_universe() -> FactorUniverse:
    return FactorUniverse.of(plaintiff=("short", "house"), defendant=("job", "bank"))


def fiscal_case_base() -> CaseBase:
    """The fiscal-domicile example: c1 for the plaintiff, c2 for the defendant."""
    from precedent.core import Case

    universe = fiscal_universe()
    return CaseBase(
        universe,
        (
            Case.decided("c1", universe, {"short", "job"}, {"short"}, Side.PLAINTIFF),
            Case.decided(
                "c2", universe, {"short", "job", "bank"}, {"job"}, Side.DEFENDANT
            ),
        ),
    )


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def gamma1() -> CaseBase:
    return fiscal_case_base()


@pytest.fixture
def x1(gamma1):
    return gamma1.situation({"short", "house", "job"})
