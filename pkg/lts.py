"""Labeled transition system model, its line format, validation and metrics."""
import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property

import networkx as nx

from errors import ModelFormatError
from utils import content_lines, column_of

logger = logging.getLogger(__name__)

LABEL_KINDS = {"S - ": "step", "R - ": "response", "C - ": "condition"}


@dataclass(frozen=True, order=True)
class Transition:
    src: str
    dst: str
    label: str

    @property
    def kind(self) -> str:
        for prefix, kind in LABEL_KINDS.items():
            if self.label.startswith(prefix):
                return kind
        return "other"

    def __str__(self) -> str:
        return f"{self.src} -> {self.dst} : {self.label}"


@dataclass(frozen=True)
class LtsModel:
    name: str
    states: tuple[str, ...]
    initial: str
    transitions: tuple[Transition, ...]

    @cached_property
    def state_set(self) -> frozenset[str]:
        return frozenset(self.states)

    @cached_property
    def transition_set(self) -> frozenset[Transition]:
        return frozenset(self.transitions)

    @cached_property
    def outgoing(self) -> dict[str, tuple[Transition, ...]]:
        out: dict[str, list[Transition]] = {s: [] for s in self.states}
        for t in self.transitions:
            out.setdefault(t.src, []).append(t)
        return {s: tuple(ts) for s, ts in out.items()}

    @cached_property
    def by_endpoints(self) -> dict[tuple[str, str], tuple[Transition, ...]]:
        pairs: dict[tuple[str, str], list[Transition]] = {}
        for t in self.transitions:
            pairs.setdefault((t.src, t.dst), []).append(t)
        return {k: tuple(v) for k, v in pairs.items()}

    def has_transition(self, transition: Transition) -> bool:
        return transition in self.transition_set

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(dict.fromkeys(t.label for t in self.transitions))


@dataclass(frozen=True)
class ModelMetrics:
    branches: int
    joins: int
    loops: int
    max_depth: int | None
    min_depth: int | None
    unreachable: tuple[str, ...] = field(default=())

    @property
    def warnings(self) -> list[str]:
        if not self.unreachable:
            return []
        return [f"unreachable states from initial: {', '.join(self.unreachable)}"]


def parse_model(text: str) -> LtsModel:
    """Parse the line-oriented model format; raises ModelFormatError on the first problem."""
    name = None
    initial = None
    declared: list[str] | None = None
    inferred: dict[str, None] = {}
    transitions: list[Transition] = []
    seen: dict[Transition, int] = {}

    for number, line in content_lines(text):
        keyword = line.split(None, 1)[0]
        if name is None:
            if keyword != "lts":
                raise ModelFormatError("expected `lts <name>` as the first line", number, column_of(line, keyword))
            parts = line.split()
            if len(parts) != 2:
                raise ModelFormatError("`lts` takes exactly one name token", number, 1)
            name = parts[1]
            continue
        if initial is None:
            if keyword != "initial":
                raise ModelFormatError("missing `initial` line after `lts`", number, column_of(line, keyword))
            parts = line.split()
            if len(parts) != 2:
                raise ModelFormatError("`initial` takes exactly one state id", number, 1)
            initial = parts[1]
            inferred[initial] = None
            continue
        if keyword == "states":
            if transitions:
                raise ModelFormatError("`states` must precede every `trans` line", number, 1)
            declared = declared or []
            for state in line.split()[1:]:
                if state in declared:
                    raise ModelFormatError(f"state `{state}` declared twice", number, column_of(line, state, 6))
                declared.append(state)
            continue
        if keyword != "trans":
            raise ModelFormatError(f"unknown keyword `{keyword}`", number, column_of(line, keyword))
        transition = _parse_trans(line, number, declared)
        if transition in seen:
            raise ModelFormatError(
                f"duplicate transition ({transition.src}, {transition.dst}, {transition.label}) "
                f"first declared on line {seen[transition]}",
                number, 1,
            )
        seen[transition] = number
        transitions.append(transition)
        inferred.setdefault(transition.src, None)
        inferred.setdefault(transition.dst, None)

    if name is None:
        raise ModelFormatError("empty document: expected `lts <name>`", 1, 1)
    if initial is None:
        raise ModelFormatError("missing `initial` line")
    if declared is not None:
        if initial not in declared:
            raise ModelFormatError(f"unknown state `{initial}` used as initial")
        states = tuple(declared)
    else:
        states = tuple(inferred)

    model = LtsModel(name=name, states=states, initial=initial, transitions=tuple(transitions))
    logger.info(f"Parsed model {name}: {len(states)} states, {len(transitions)} transitions")
    return model


def _parse_trans(line: str, number: int, declared: list[str] | None) -> Transition:
    head, sep, label = line.partition(" : ")
    if not sep:
        raise ModelFormatError("expected `trans <src> -> <dst> : <label>`", number, len(line) + 1)
    label = label.rstrip()
    parts = head.split()
    if len(parts) != 4 or parts[2] != "->":
        raise ModelFormatError("expected `trans <src> -> <dst> : <label>`", number, 1)
    src, dst = parts[1], parts[3]
    if not label.strip():
        raise ModelFormatError("empty transition label", number, len(head) + 4)
    if "|" in label:
        raise ModelFormatError("label contains reserved character `|`", number, len(head) + 4 + label.index("|"))
    if declared is not None:
        for state in (src, dst):
            if state not in declared:
                raise ModelFormatError(f"unknown state `{state}`", number, column_of(line, state, 5))
    return Transition(src, dst, label)


def serialize_model(model: LtsModel) -> str:
    lines = [f"lts {model.name}", f"initial {model.initial}", "states " + " ".join(model.states)]
    lines.extend(f"trans {t}" for t in model.transitions)
    return "\n".join(lines) + "\n"


def validate(model: LtsModel) -> list[str]:
    violations = []
    if not model.states:
        violations.append("states: the state set is empty")
    if model.initial not in model.state_set:
        violations.append(f"initial: `{model.initial}` is not a declared state")
    counts = Counter(model.transitions)
    for t in model.transitions:
        for end, state in (("source", t.src), ("target", t.dst)):
            if state not in model.state_set:
                violations.append(f"transition ({t.src}, {t.dst}, {t.label}): unknown {end} state `{state}`")
    for t, count in counts.items():
        if count > 1:
            violations.append(f"transitions: duplicate triple ({t.src}, {t.dst}, {t.label}) appears {count} times")
    for t in dict.fromkeys(model.transitions):
        if "|" in t.label:
            violations.append(f"label: `{t.label}` on ({t.src}, {t.dst}) contains reserved `|`")
        if "\n" in t.label or "\r" in t.label:
            violations.append(f"label: label on ({t.src}, {t.dst}) contains a line break")
    return violations


def to_graph(model: LtsModel) -> nx.MultiDiGraph:
    graph = nx.MultiDiGraph(name=model.name)
    graph.add_nodes_from(model.states)
    for t in model.transitions:
        graph.add_edge(t.src, t.dst, key=t.label)
    return graph


def back_edges(model: LtsModel) -> list[Transition]:
    """Transitions closing a cycle in a DFS from the initial state (declaration order)."""
    found: list[Transition] = []
    on_stack = {model.initial}
    finished: set[str] = set()
    stack = [(model.initial, iter(model.outgoing.get(model.initial, ())))]
    while stack:
        state, edges = stack[-1]
        t = next(edges, None)
        if t is None:
            stack.pop()
            on_stack.discard(state)
            finished.add(state)
            continue
        if t.dst in on_stack:
            found.append(t)
        elif t.dst not in finished:
            on_stack.add(t.dst)
            stack.append((t.dst, iter(model.outgoing.get(t.dst, ()))))
    return found


def unreachable_states(model: LtsModel) -> tuple[str, ...]:
    graph = to_graph(model)
    reachable = nx.descendants(graph, model.initial) | {model.initial}
    return tuple(s for s in model.states if s not in reachable)


def structure_counts(model: LtsModel) -> tuple[int, int, int]:
    """(branches, joins, loops): states with several outgoing / incoming transitions, and back edges."""
    graph = to_graph(model)
    branches = sum(1 for _, degree in graph.out_degree() if degree > 1)
    joins = sum(1 for _, degree in graph.in_degree() if degree > 1)
    return branches, joins, len(back_edges(model))


def model_metrics(model: LtsModel) -> ModelMetrics:
    from testgen import generate, suite_stats

    branches, joins, loops = structure_counts(model)
    unreachable = unreachable_states(model)
    if unreachable:
        logger.warning(f"Model {model.name} has unreachable states: {unreachable}")
    stats = suite_stats(generate(model))
    return ModelMetrics(
        branches=branches,
        joins=joins,
        loops=loops,
        max_depth=stats.longest,
        min_depth=stats.shortest,
        unreachable=unreachable,
    )
