import os
import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from operadic import CoOp, Field, ModuleSpace

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

FIELDS = [Field.rational(), Field.prime(5), Field.prime(7)]


@pytest.fixture(params=[Field.rational(), Field.prime(5)], ids=str)
def field(request):
    return request.param


def scalars(field):
    if field.is_rational:
        return st.builds(Fraction, st.integers(-9, 9), st.integers(1, 9))
    return st.integers(0, field.p - 1).map(field)


@st.composite
def coops(draw, space, degree=None, max_degree=3, min_degree=1):
    if degree is None:
        degree = draw(st.integers(min_degree, max_degree))
    n = space.dimension ** (degree + 1)
    vals = draw(st.lists(scalars(space.field), min_size=n, max_size=n))
    return CoOp.from_entries(
        space, degree,
        ((k % space.dimension, tuple(_digits(k // space.dimension, space.dimension, degree)), v)
         for k, v in enumerate(vals)))


def _digits(k, d, n):
    out = []
    for _ in range(n):
        out.append(k % d)
        k //= d
    return out[::-1]


@st.composite
def spaces(draw, dims=(1, 2), fields=None):
    field = draw(st.sampled_from(fields or [Field.rational(), Field.prime(5)]))
    return ModuleSpace(draw(st.sampled_from(dims)), field)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
