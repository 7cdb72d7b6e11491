import random

import pytest

from cmcurves import QQ, VariableContext
from cmcurves.textio import parse_polynomial


@pytest.fixture
def rng():
    return random.Random(20240811)


@pytest.fixture
def xyzw():
    return VariableContext(("x", "y", "z", "w"), QQ)


@pytest.fixture
def xywu():
    return VariableContext(("x", "y", "w", "u"), QQ)


def P(text, ctx):
    return parse_polynomial(text, ctx)
