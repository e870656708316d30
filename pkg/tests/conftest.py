import random

import pytest

from simspec.fields import QQ, PrimeField


@pytest.fixture
def rng():
    return random.Random(20240811)


@pytest.fixture(params=["Q", "F7"])
def field(request):
    return QQ if request.param == "Q" else PrimeField(7)
