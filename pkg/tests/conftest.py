import sys
import warnings
from pathlib import Path

import pytest

# Add the project root to Python path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))


@pytest.fixture
def quiet_resolution():
    """Silence under-resolved delta warnings on deliberately coarse grids"""
    from dendrifield.coupling import UnderResolvedDeltaWarning
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UnderResolvedDeltaWarning)
        yield
