import os
import sys

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

from truthkit.cls_core import Classification, TypeMap, TypeSet  # noqa: E402
from truthkit.theory_flow import Sequent, Theory, bottom_theory, make_theory  # noqa: E402


@pytest.fixture
def Y():
    return TypeSet(["p", "q"])


@pytest.fixture
def M0():
    return Classification(["p", "q"], ["1", "2", "3"], [("1", "p"), ("2", "p"), ("2", "q"), ("3", "q")])


@pytest.fixture
def T0():
    return make_theory(["p", "q"], [(["p"], ["q"])])


@pytest.fixture
def T_cover():
    """Every state meets {p, q}."""
    return make_theory(["p", "q"], [([], ["p", "q"])])


@pytest.fixture
def bottom(Y):
    return bottom_theory(Y)


@pytest.fixture
def const_map():
    return TypeMap(["p", "q"], ["r"], {"p": "r", "q": "r"})


@pytest.hookimpl(wrapper=True, tryfirst=True)
def pytest_runtest_makereport(item, call):
    rep = yield
    setattr(item, "rep_" + rep.when, rep)
    return rep
