from pathlib import Path

import pytest

from evaluation import FaultReport
from lts import parse_model
from purpose import HintSet
from testgen import generate

DATA = Path(__file__).resolve().parent.parent / "data"

# node sequences of the login suite, in generation order
LOGIN_PATHS = {
    "TC1": "1 2 3 4 5 7 8 9 11",
    "TC2": "1 2 3 4 5 7 8 10 2 3 4 5 7 8 9 11",
    "TC3": "1 2 3 4 5 7 8 10 2 3 4 5 7 8 10 2",
    "TC4": "1 2 3 4 5 7 8 10 2 3 4 6 2",
    "TC5": "1 2 3 4 6 2 3 4 5 7 8 9 11",
    "TC6": "1 2 3 4 6 2 3 4 5 7 8 10 2",
    "TC7": "1 2 3 4 6 2 3 4 6 2",
}

INVALID_LOGIN = "* | C - Invalid Login | *"
DOUBLE_INVALID_LOGIN = "* | C - Invalid Login | * | C - Invalid Login | *"


@pytest.fixture
def data_dir() -> Path:
    return DATA


@pytest.fixture
def login_text() -> str:
    return (DATA / "login.lts").read_text(encoding="utf-8")


@pytest.fixture
def login_model(login_text):
    return parse_model(login_text)


@pytest.fixture
def login_suite(login_model):
    return generate(login_model)


@pytest.fixture
def tc(login_suite):
    return login_suite.by_id


@pytest.fixture
def invalid_login_hints() -> HintSet:
    return HintSet.of(INVALID_LOGIN)


@pytest.fixture
def tc7_fault() -> FaultReport:
    return FaultReport({"F1": frozenset({"TC7"})}, {"F1": DOUBLE_INVALID_LOGIN})
