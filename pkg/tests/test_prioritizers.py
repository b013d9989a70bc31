import time
from collections import Counter

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

import settings.config as cfg
from errors import DegenerateHintError, EmptySuiteError, FormatError
from lts import parse_model
from prioritizers import (
    PrioritizedSuite,
    arp_jaccard,
    gen_candidate_set,
    greedy_steps,
    harp,
    parse_order,
    prioritize,
    random_order,
    select_farthest,
    select_next,
    serialize_order,
)
from purpose import HintSet
from randomness import RandomSource
from resemblance import ProfileIndex
from testgen import TestCase, TestSuite, generate

SEEDS = range(40)


@pytest.fixture
def index(login_suite):
    return ProfileIndex(login_suite.cases)


def rows(index, *ids):
    return [index.position[i] for i in ids]


def test_select_next_picks_most_similar_candidate(index):
    chosen = select_next(rows(index, "TC6"), rows(index, "TC1", "TC3", "TC5"), index)
    assert index.cases[chosen].id == "TC5"
    chosen = select_next(rows(index, "TC6", "TC5"), rows(index, "TC2", "TC4"), index)
    assert index.cases[chosen].id == "TC4"


def test_select_next_breaks_ties_by_candidate_order(index):
    # TC4 and TC6 share length and transition set, so they tie against any prefix
    for first, second in (("TC6", "TC4"), ("TC4", "TC6")):
        chosen = select_next(rows(index, "TC1"), rows(index, first, second), index)
        assert index.cases[chosen].id == first


def test_select_farthest_uses_max_min_distance(index):
    chosen = select_farthest(rows(index, "TC6"), rows(index, "TC4", "TC7"), index)
    assert index.cases[chosen].id == "TC7"
    chosen = select_farthest(rows(index, "TC6", "TC7"), rows(index, "TC4", "TC1"), index)
    assert index.cases[chosen].id == "TC1"


def test_candidate_set_grows_coverage(index):
    for seed in SEEDS:
        rng = RandomSource(seed)
        candidates = gen_candidate_set(range(len(index)), [], index, rng)
        assert 1 <= len(candidates) <= 7
        assert len(set(candidates)) == len(candidates)
        covered = 0
        for c in candidates:
            assert covered | index.masks[c] != covered
            covered |= index.masks[c]


def test_candidate_set_stops_at_first_redundant_draw(index):
    # every transition of TC7 is also in TC6
    seen = set()
    for seed in SEEDS:
        ids = tuple(index.cases[c].id for c in gen_candidate_set(rows(index, "TC6", "TC7"), [], index, RandomSource(seed)))
        assert ids in {("TC6",), ("TC7", "TC6")}
        seen.add(ids)
    assert len(seen) == 2


def test_candidate_set_respects_limit_and_pools(index):
    plain, hinted = rows(index, "TC1", "TC2", "TC3"), rows(index, "TC4", "TC5", "TC6", "TC7")
    for seed in SEEDS:
        candidates = gen_candidate_set(plain, hinted, index, RandomSource(seed), limit=2)
        assert 1 <= len(candidates) <= 2
        assert set(candidates) <= set(plain) | set(hinted)
    assert plain == rows(index, "TC1", "TC2", "TC3")
    assert gen_candidate_set([], rows(index, "TC2"), index, RandomSource(0)) == rows(index, "TC2")


def test_candidate_set_needs_cases(index):
    with pytest.raises(EmptySuiteError):
        gen_candidate_set([], [], index, RandomSource(0))


def test_harp_starts_inside_the_hint_filtered_set(login_suite, login_model, invalid_login_hints):
    for seed in SEEDS:
        order = harp(login_suite, invalid_login_hints, login_model, RandomSource(seed))
        assert order.order[0] in {"TC4", "TC5", "TC6", "TC7"}
        assert sorted(order.order) == sorted(login_suite.ids)
        assert (order.technique, order.seed) == ("harp", seed)


def test_harp_is_deterministic_per_seed(login_suite, login_model, invalid_login_hints):
    a = harp(login_suite, invalid_login_hints, login_model, RandomSource(7))
    b = harp(login_suite, invalid_login_hints, login_model, RandomSource(7))
    assert a == b


@pytest.mark.parametrize("technique", ["harp", "harp-jaccard", "arp-jaccard"])
def test_debug_cross_check_agrees(login_suite, login_model, invalid_login_hints, technique):
    for seed in SEEDS:
        order = prioritize(technique, login_suite, login_model, RandomSource(seed), invalid_login_hints, debug=True)
        assert sorted(order.order) == sorted(login_suite.ids)
        assert order.technique == technique


def test_harp_with_a_purpose_nothing_matches(login_suite, login_model):
    with pytest.raises(DegenerateHintError, match="arp-jaccard"):
        harp(login_suite, HintSet.of("* | C - Never shown | *"), login_model, RandomSource(1))


def test_harp_rejects_unknown_resemblance(login_suite, login_model, invalid_login_hints):
    with pytest.raises(ValueError):
        harp(login_suite, invalid_login_hints, login_model, RandomSource(1), resemblance="cosine")


def test_hint_related_cases_gather_near_the_front(login_suite, login_model, invalid_login_hints):
    positions = Counter()
    for seed in range(200):
        order = harp(login_suite, invalid_login_hints, login_model, RandomSource(seed))
        positions.update(order.position(i) for i in ("TC4", "TC5", "TC6", "TC7"))
    mean = sum(p * n for p, n in positions.items()) / sum(positions.values())
    assert mean < 4.0


def test_arp_jaccard_is_a_permutation(login_suite, login_model):
    order = arp_jaccard(login_suite, login_model, RandomSource(3))
    assert sorted(order.order) == sorted(login_suite.ids)
    assert order == arp_jaccard(login_suite, login_model, RandomSource(3))


def test_greedy_orders_by_length_stably(login_suite):
    order = greedy_steps(login_suite)
    assert order.order == ("TC2", "TC3", "TC4", "TC5", "TC6", "TC7", "TC1")
    assert (order.technique, order.seed) == ("greedy", 0)


def test_random_order_spreads_first_positions(login_suite):
    firsts = Counter(random_order(login_suite, RandomSource(seed)).order[0] for seed in range(700))
    assert set(firsts) == set(login_suite.ids)
    assert all(50 <= n <= 150 for n in firsts.values())


def test_prioritize_rejects_unknown_technique(login_suite, login_model):
    with pytest.raises(ValueError, match="unknown technique"):
        prioritize("fifo", login_suite, login_model, RandomSource(0))


def test_position_is_one_based():
    order = PrioritizedSuite("greedy", 0, ("TC2", "TC1"))
    assert order.position("TC2") == 1
    assert order.position("TC1") == 2


def test_order_file_round_trip(login_suite, login_model, invalid_login_hints):
    order = harp(login_suite, invalid_login_hints, login_model, RandomSource(11))
    text = serialize_order(order)
    assert text.splitlines()[0] == "order harp seed=11"
    assert parse_order(text) == order


@pytest.mark.parametrize("text, message", [
    ("", "empty document"),
    ("order harp\nTC1\n", "expected `order"),
    ("order harp seed=x\nTC1\n", "seed must be an integer"),
    ("order greedy seed=0\nTC1\nTC1\n", "listed twice"),
])
def test_order_file_errors(text, message):
    with pytest.raises(FormatError, match=message):
        parse_order(text)


@settings(max_examples=1000, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(seed=st.integers(min_value=0, max_value=2**63 - 1), technique=st.sampled_from(cfg.TECHNIQUES))
def test_every_technique_returns_a_reproducible_permutation(login_suite, login_model, invalid_login_hints, seed, technique):
    order = prioritize(technique, login_suite, login_model, RandomSource(seed), invalid_login_hints)
    assert sorted(order.order) == sorted(login_suite.ids)
    again = prioritize(technique, login_suite, login_model, RandomSource(seed), invalid_login_hints)
    assert serialize_order(again) == serialize_order(order)


def test_random_order_draws_every_permutation_evenly(login_suite):
    small = login_suite.subset(login_suite.cases[:3])
    counts = Counter(random_order(small, RandomSource(seed)).order for seed in range(6000))
    assert len(counts) == 6
    for n in counts.values():
        assert abs(n / 6000 - 1 / 6) <= 0.02


def test_arp_jaccard_on_two_cases_is_a_fair_coin(login_suite, login_model):
    pair = login_suite.subset(login_suite.cases[:2])
    counts = Counter(arp_jaccard(pair, login_model, RandomSource(seed)).order for seed in range(1000))
    assert set(counts) == {("TC1", "TC2"), ("TC2", "TC1")}
    for n in counts.values():
        assert abs(n / 1000 - 0.5) <= 0.05


def test_harp_first_pick_is_uniform_when_the_hint_keeps_everything(login_suite, login_model):
    everything = HintSet.of("* | C - Main screen is shown | *")
    firsts = Counter(harp(login_suite, everything, login_model, RandomSource(seed)).order[0] for seed in range(1400))
    assert set(firsts) == set(login_suite.ids)
    assert all(140 <= n <= 260 for n in firsts.values())


def index_of(lines: list[str], keep: int = 200) -> ProfileIndex:
    suite = generate(parse_model("\n".join(lines) + "\n"))
    assert len(suite) >= keep
    return ProfileIndex(suite.cases[:keep])


def ladder_index() -> ProfileIndex:
    # five stages of three parallel transitions: 243 paths
    lines = ["lts ladder", "initial 0"]
    for stage in range(5):
        lines += [f"trans {stage} -> {stage + 1} : S - pick {side} at {stage}" for side in "abc"]
    return index_of(lines)


def fan_index() -> ProfileIndex:
    # every path ends in its own transition, so every draw adds coverage
    lines = ["lts fan", "initial 0"]
    lines += [f"trans 0 -> h{k} : S - open {k}" for k in range(20)]
    lines += [f"trans h{k} -> l{k}_{j} : R - leaf {k}.{j}" for k in range(20) for j in range(10)]
    return index_of(lines)


@pytest.mark.parametrize("make, always_full", [(ladder_index, False), (fan_index, True)])
def test_candidate_set_never_exceeds_the_limit(make, always_full):
    index = make()
    rows_ = list(range(len(index)))
    sizes = Counter()
    for seed in range(10000):
        cut = seed % 200
        candidates = gen_candidate_set(rows_[cut:], rows_[:cut], index, RandomSource(seed))
        assert len(set(candidates)) == len(candidates)
        sizes[len(candidates)] += 1
    assert 1 <= min(sizes) and max(sizes) <= cfg.CANDIDATE_LIMIT
    if always_full:
        assert set(sizes) == {cfg.CANDIDATE_LIMIT}


STAGES = 50


@pytest.fixture(scope="module")
def long_ladder():
    lines = ["lts long", "initial 0"]
    for stage in range(STAGES):
        lines += [f"trans {stage} -> {stage + 1} : S - pick {side} at {stage}" for side in "abc"]
    model = parse_model("\n".join(lines) + "\n")
    steps = model.by_endpoints
    rng = RandomSource(2016)
    cases = tuple(
        TestCase(f"TC{k}", tuple(steps[(str(s), str(s + 1))][rng.index(3)] for s in range(STAGES)))
        for k in range(1, 1001)
    )
    return model, TestSuite("long", cases)


def harp_seconds(model, suite, hints) -> float:
    best = None
    for seed in range(3):
        start = time.perf_counter()
        order = harp(suite, hints, model, RandomSource(seed))
        elapsed = time.perf_counter() - start
        assert len(order.order) == len(suite)
        best = elapsed if best is None else min(best, elapsed)
    return best


@pytest.mark.slow
def test_harp_scales_to_a_thousand_cases(long_ladder):
    model, suite = long_ladder
    hints = HintSet.of("* | S - pick a at 0 | *")
    start = time.perf_counter()
    order = harp(suite, hints, model, RandomSource(1))
    assert time.perf_counter() - start < 30
    assert sorted(order.order) == sorted(suite.ids)

    quarter = harp_seconds(model, suite.subset(suite.cases[:250]), hints)
    half = harp_seconds(model, suite.subset(suite.cases[:500]), hints)
    assert half / quarter <= 5
