import logging

import settings.help_texts as txt
from errors import UsageError
from lts import LtsModel, parse_model
from purpose import HintSet, parse_purpose_file
from storage import read_text
from testgen import TestSuite, parse_suite

logger = logging.getLogger(__name__)


def load_model(path: str) -> LtsModel:
    return parse_model(read_text(path))


def load_suite(path: str, model: LtsModel | None = None) -> TestSuite:
    return parse_suite(read_text(path), model)


def load_hints(path: str) -> HintSet:
    return parse_purpose_file(read_text(path))


def add_output(parser):
    parser.add_argument("-o", "--output", default=None, help=txt.OUTPUT)


def require(condition: bool, message: str):
    if not condition:
        raise UsageError(message)
