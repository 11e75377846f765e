import os
import sys

import pytest

from src.model.component import ComponentHandle, MealyMachine
from src.model.experiments import ExperimentSession
from src.parsers.instance import load_component, load_system, load_tableau

FIXTURES = os.path.join(os.path.dirname(os.path.abspath(__file__)), "fixtures")


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURES, name)


def fake_component_command(mode: str) -> str:
    return f"{sys.executable} {fixture_path('fake_component.py')} {mode}"


def make_session(machine: MealyMachine, state_bound: int = 0, **kwargs) -> ExperimentSession:
    return ExperimentSession(ComponentHandle.from_machine(machine, state_bound), **kwargs)


@pytest.fixture
def sys_b():
    return load_system(fixture_path("sys_b.system"))


@pytest.fixture
def messaging():
    return load_system(fixture_path("messaging.system"))


@pytest.fixture
def messaging_modified():
    return load_system(fixture_path("messaging_modified.system"))


@pytest.fixture
def five_state():
    return load_system(fixture_path("five_state.system"))


@pytest.fixture
def env_lasso():
    return load_system(fixture_path("env_lasso.system"))


@pytest.fixture
def const_yes():
    return load_component(fixture_path("const_yes.component"))


@pytest.fixture
def const_no():
    return load_component(fixture_path("const_no.component"))


@pytest.fixture
def toggler():
    return load_component(fixture_path("toggler.component"))


@pytest.fixture
def gf_target():
    return load_tableau(fixture_path("gf_target.tableau"))
