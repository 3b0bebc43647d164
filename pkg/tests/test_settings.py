from fractions import Fraction

import pytest

from voa.screening import WeightBoundError
from voa.settings import Settings


def test_defaults():
    s = Settings()
    assert s.max_weight == 3 and s.workers == 1 and not s.timings


def test_env_and_overrides():
    s = Settings.from_env({"VOA_MAX_WEIGHT": "5/2"}, workers=4)
    assert s.max_weight == Fraction(5, 2) and s.workers == 4


def test_bad_env_value():
    with pytest.raises(WeightBoundError):
        Settings.from_env({"VOA_MAX_WEIGHT": "lots"})


def test_workers_must_be_positive():
    with pytest.raises(ValueError):
        Settings(workers=0)
