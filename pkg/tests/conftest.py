import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from latcoh.construction import build_context


@pytest.fixture(scope="session")
def ctx():
    """The default p = 3 context, built once for the whole run."""
    return build_context(3)
