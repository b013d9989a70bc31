import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from conftest import DOUBLE_INVALID_LOGIN, INVALID_LOGIN
from errors import PurposeSyntaxError, UnresolvableStepError
from lts import Transition
from purpose import (
    WILDCARD,
    HintSet,
    LabelIndex,
    LabelLiteral,
    TestPurpose,
    filter_suite,
    literal_purpose,
    match_labels,
    matches,
    parse_purpose,
    parse_purpose_file,
    serialize_hints,
)
from testgen import TestCase


def kept_ids(suite, model, *texts):
    return filter_suite(suite, HintSet.of(*texts), model).ids


def test_parse_tokens():
    purpose = parse_purpose("*|  C - Invalid Login |*")
    assert purpose.tokens == (WILDCARD, LabelLiteral("C - Invalid Login"), WILDCARD)
    assert purpose.text == INVALID_LOGIN
    assert purpose.literals == ("C - Invalid Login",)


@pytest.mark.parametrize("text", ["", "   ", "* || *", "* | C - x |", "| *"])
def test_parse_rejects_empty_pieces(text):
    with pytest.raises(PurposeSyntaxError):
        parse_purpose(text)


def test_literal_purpose_interleaves_wildcards():
    assert literal_purpose("a", "b").text == "* | a | * | b | *"
    assert literal_purpose().text == "*"


@pytest.mark.parametrize("text, labels, expected", [
    ("*", [], True),
    ("*", ["a", "b"], True),
    ("a", ["a"], True),
    ("a", ["a", "b"], False),
    ("a | *", ["a", "b"], True),
    ("* | b", ["a", "b"], True),
    ("* | a", ["a", "b"], False),
    ("* | b | * | a | *", ["a", "b"], False),
    ("* | a | * | a | *", ["a", "b", "a"], True),
    ("* | a | * | a | *", ["a", "b"], False),
    ("a | b", ["a", "b"], True),
    ("a | * | b", ["a", "b"], True),
])
def test_match_labels(text, labels, expected):
    assert match_labels(parse_purpose(text), labels) is expected


def test_invalid_login_keeps_the_four_retry_paths(login_suite, login_model):
    assert kept_ids(login_suite, login_model, INVALID_LOGIN) == ("TC4", "TC5", "TC6", "TC7")


def test_doubled_purpose_keeps_only_tc7(login_suite, login_model):
    assert kept_ids(login_suite, login_model, DOUBLE_INVALID_LOGIN) == ("TC7",)


def test_hint_set_filters_by_union(login_suite, login_model):
    ids = kept_ids(login_suite, login_model, INVALID_LOGIN, "* | C - do not match | *")
    assert ids == ("TC2", "TC3", "TC4", "TC5", "TC6", "TC7")


def test_anchoring_against_the_login_suite(login_suite, login_model):
    assert kept_ids(login_suite, login_model, "C - Main screen is shown | *") == login_suite.ids
    assert kept_ids(login_suite, login_model, "C - Main screen is shown") == ()
    assert kept_ids(login_suite, login_model, "* | R - Show home screen") == ("TC1", "TC2", "TC5")


def test_matches_requires_model_transitions(login_model):
    stray = TestCase("X", (Transition("1", "2", "C - Something else"),))
    with pytest.raises(UnresolvableStepError):
        matches(parse_purpose("*"), stray, login_model)


def test_purpose_file_reads_provenance():
    hints = parse_purpose_file(f"# login hints\n\n{INVALID_LOGIN}  # good 0.25 for F1\n{DOUBLE_INVALID_LOGIN}\n")
    assert [p.text for p in hints.purposes] == [INVALID_LOGIN, DOUBLE_INVALID_LOGIN]
    assert hints.provenance == ("good 0.25 for F1", "")
    assert parse_purpose_file(serialize_hints(hints)) == hints


def test_purpose_file_errors_cite_the_line():
    with pytest.raises(PurposeSyntaxError, match="line 3"):
        parse_purpose_file(f"{INVALID_LOGIN}\n\n* || *\n")
    with pytest.raises(PurposeSyntaxError, match="no purposes"):
        parse_purpose_file("# nothing here\n")


def test_login_purpose_file(data_dir):
    hints = parse_purpose_file((data_dir / "login.purposes").read_text(encoding="utf-8"))
    assert [p.text for p in hints.purposes] == [INVALID_LOGIN]


LABELS = ["a", "b", "c"]


@given(
    cases=st.lists(st.lists(st.sampled_from(LABELS), min_size=1, max_size=8), min_size=1, max_size=6),
    wanted=st.lists(st.sampled_from(LABELS), min_size=1, max_size=3),
)
def test_label_index_agrees_with_the_matcher(cases, wanted):
    suite = [
        TestCase(f"T{k}", tuple(Transition(str(i), str(i + 1), label) for i, label in enumerate(labels)))
        for k, labels in enumerate(cases)
    ]
    purpose = literal_purpose(*wanted)
    expected = [tc.id for tc in suite if match_labels(purpose, tc.labels)]
    assert [tc.id for tc in LabelIndex(suite).matching(wanted)] == expected


def backtrack(tokens, labels) -> bool:
    if not tokens:
        return not labels
    head, rest = tokens[0], tokens[1:]
    if head is WILDCARD:
        return any(backtrack(rest, labels[k:]) for k in range(len(labels) + 1))
    return bool(labels) and labels[0] == head.text and backtrack(rest, labels[1:])


@given(
    tokens=st.lists(st.one_of(st.just(WILDCARD), st.sampled_from(LABELS).map(LabelLiteral)), min_size=1, max_size=6),
    labels=st.lists(st.sampled_from(LABELS), max_size=8),
)
def test_matcher_agrees_with_backtracking(tokens, labels):
    assert match_labels(TestPurpose(tuple(tokens)), labels) == backtrack(tuple(tokens), tuple(labels))


@settings(suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(data=st.data())
def test_filter_is_idempotent_and_monotone(login_suite, login_model, data):
    label = st.sampled_from(login_model.labels)
    first = literal_purpose(*data.draw(st.lists(label, min_size=1, max_size=2)))
    second = literal_purpose(*data.draw(st.lists(label, min_size=1, max_size=2)))
    one = HintSet((first,))
    kept = filter_suite(login_suite, one, login_model)
    assert filter_suite(kept, one, login_model) == kept
    both = filter_suite(login_suite, HintSet((first, second)), login_model)
    assert set(kept.ids) <= set(both.ids)
    assert set(both.ids) == set(kept.ids) | set(filter_suite(login_suite, HintSet((second,)), login_model).ids)
    fewer = login_suite.subset(data.draw(st.lists(st.sampled_from(login_suite.cases), unique=True)))
    assert set(filter_suite(fewer, one, login_model).ids) <= set(kept.ids)
