import os
import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from voa.core import State
from voa.screening import weight_basis

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("quick", max_examples=20, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def _pool(alg, max_weight2, parity):
    pool = [m for w in range(1, max_weight2 + 1) for m in weight_basis(alg, w)]
    return [m for m in pool if alg.mono_parity(m) == parity]


@st.composite
def states(draw, alg, max_weight2=3, parity=None, max_terms=3, homogeneous=False):
    """Nonzero States of definite parity; coefficients may involve t."""
    if parity is None:
        parity = draw(st.integers(0, 1))
    pool = _pool(alg, max_weight2, parity) or _pool(alg, max_weight2, 1 - parity)
    if homogeneous:
        w = draw(st.sampled_from(sorted({alg.mono_weight2(m) for m in pool})))
        pool = [m for m in pool if alg.mono_weight2(m) == w]
    monos = draw(st.lists(st.sampled_from(pool), min_size=1, max_size=max_terms, unique=True))
    t = alg.context.t
    terms = {}
    for m in monos:
        c = Fraction(draw(st.integers(-4, 4).filter(bool)), draw(st.sampled_from([1, 2, 3])))
        terms[m] = alg.scalar(c) * (t ** draw(st.integers(-1, 1)))
    return State(alg, terms)


@pytest.fixture(scope="session")
def free2():
    from voa.wsuper import free_field_data
    return free_field_data(2)


@pytest.fixture(scope="session")
def wfields():
    from voa.wsuper import w32_generators
    return w32_generators()


@pytest.fixture(scope="session")
def cfields():
    from voa.coset import coset_generators_n2
    return coset_generators_n2()


@pytest.fixture(scope="session")
def k():
    from voa.scalar import GENERIC
    return GENERIC.symbol("k")


@pytest.fixture(scope="session")
def l():
    from voa.scalar import GENERIC
    return GENERIC.symbol("l")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if not mod or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.summary_line(number))
