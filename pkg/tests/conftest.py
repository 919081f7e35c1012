from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import settings

from lipfree.metric import standard_space

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

DATA = Path(__file__).parent / "data"


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def ud4():
    return standard_space("uniform_discrete", 4)


def Q(s):
    return Fraction(s)
