import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))
sys.path.insert(0, os.path.dirname(__file__))

if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(20_000_000)

CORPUS_EXPRESSIONS = (
    "x^2+1",
    "x^2",
    "x^2-1",
    "(x-1)^2",
    "1/x^2",
    "(x^2+1)/x",
    "x^3-2",
    "3x^2",
    "x^2+1/2",
    "(2x^3-1)/(x^2+3)",
)


@pytest.fixture(scope="session")
def corpus_maps():
    from orbitprimes import RationalMap

    return [RationalMap.parse(text) for text in CORPUS_EXPRESSIONS]
