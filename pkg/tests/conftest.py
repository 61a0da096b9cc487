import sys
from pathlib import Path

import numpy as np
import pytest

from j2ctrl import available_backends

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(params=available_backends())
def backend(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(20261014)
