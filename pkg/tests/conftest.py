import random

import pytest

from genwitt.algebra import AlgebraConfig
from genwitt.syntax import parse_element


@pytest.fixture
def rng():
    return random.Random(20261016)


@pytest.fixture
def w1():
    return AlgebraConfig(1, [1])


def E(text, n=None):
    return parse_element(text, n)
