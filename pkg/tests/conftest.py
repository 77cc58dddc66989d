import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from osl.semantics import zoo_space  # noqa: E402
from osl.zoo import FINITE_ZOO, STANDARD_ZOO  # noqa: E402

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


@pytest.fixture(params=FINITE_ZOO)
def finite_model(request):
    return request.param, zoo_space(request.param)


@pytest.fixture(params=STANDARD_ZOO)
def any_model(request):
    return request.param, zoo_space(request.param)


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def samples():
    return SAMPLES
