"""Partially ordered two-way Buchi automata: data model and basic operations.

States come in two polarities: ``x_states`` are entered while the head moves
right, ``y_states`` while it moves left.  Transitions over input letters may
connect any two states; the left-end marker only connects a Y state back to
an X state (the head bounces off the start of the tape).  "Partially
ordered" means the transition graph without self-loops is acyclic, so every
run eventually stabilizes in one state.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from graphlib import CycleError, TopologicalSorter
from typing import Callable, Iterable

LEND = "▷"  # left tape-end marker, never part of an input alphabet
_LEND_JSON = "LEND"

Transition = tuple[str, str, str]


@dataclass(frozen=True)
class ValidationReport:
    is_well_formed_po2: bool
    is_deterministic: bool
    is_complete: bool
    violations: tuple[str, ...] = field(default=())

    def __bool__(self) -> bool:
        return self.is_well_formed_po2


@dataclass(frozen=True)
class Po2Automaton:
    """Immutable two-way automaton over single-character letters.

    The constructor normalizes its arguments to frozensets and rejects
    dangling references, but deliberately accepts machines that violate the
    two-way discipline (for instance a left-end edge leaving an X state):
    those are diagnosed by :meth:`validate` so that callers can report them.
    """

    alphabet: frozenset[str]
    x_states: frozenset[str]
    y_states: frozenset[str]
    transitions: frozenset[Transition]
    initial: frozenset[str]
    final: frozenset[str]

    def __init__(
        self,
        alphabet: Iterable[str],
        x_states: Iterable[str],
        y_states: Iterable[str],
        transitions: Iterable[tuple[str, str, str]],
        initial: Iterable[str],
        final: Iterable[str],
    ) -> None:
        object.__setattr__(self, "alphabet", frozenset(alphabet))
        object.__setattr__(self, "x_states", frozenset(x_states))
        object.__setattr__(self, "y_states", frozenset(y_states))
        object.__setattr__(self, "transitions", frozenset(map(tuple, transitions)))
        object.__setattr__(self, "initial", frozenset(initial))
        object.__setattr__(self, "final", frozenset(final))
        self._check_structure()

    def _check_structure(self) -> None:
        for c in self.alphabet:
            if len(c) != 1 or c == LEND:
                raise ValueError(f"letters must be single non-marker characters: {c!r}")
        both = self.x_states & self.y_states
        if both:
            raise ValueError(f"states cannot be both polarities: {sorted(both)}")
        states = self.states
        for group, name in ((self.initial, "initial"), (self.final, "final")):
            stray = group - states
            if stray:
                raise ValueError(f"{name} states not declared: {sorted(stray)}")
        letters = self.alphabet | {LEND}
        for src, c, dst in self.transitions:
            if src not in states or dst not in states:
                raise ValueError(f"transition touches unknown state: {(src, c, dst)}")
            if c not in letters:
                raise ValueError(f"transition over unknown letter: {(src, c, dst)}")

    @property
    def states(self) -> frozenset[str]:
        return self.x_states | self.y_states

    def is_x(self, state: str) -> bool:
        return state in self.x_states

    @cached_property
    def _successors(self) -> dict[tuple[str, str], frozenset[str]]:
        table: dict[tuple[str, str], set[str]] = {}
        for src, c, dst in self.transitions:
            table.setdefault((src, c), set()).add(dst)
        return {k: frozenset(v) for k, v in table.items()}

    def successors(self, state: str, letter: str) -> frozenset[str]:
        return self._successors.get((state, letter), frozenset())

    def det_successor(self, state: str, letter: str) -> str | None:
        """The unique successor, None if there is none, error if several."""
        out = self.successors(state, letter)
        if len(out) > 1:
            raise ValueError(f"nondeterministic on ({state!r}, {letter!r}): {sorted(out)}")
        return next(iter(out), None)

    @cached_property
    def _selfloops(self) -> dict[str, frozenset[str]]:
        table: dict[str, set[str]] = {z: set() for z in self.states}
        for src, c, dst in self.transitions:
            if src == dst and c != LEND:
                table[src].add(c)
        return {z: frozenset(v) for z, v in table.items()}

    def selfloop_letters(self, state: str) -> frozenset[str]:
        return self._selfloops[state]

    @cached_property
    def _change_edges(self) -> dict[str, frozenset[str]]:
        table: dict[str, set[str]] = {z: set() for z in self.states}
        for src, _, dst in self.transitions:
            if src != dst:
                table[src].add(dst)
        return {z: frozenset(v) for z, v in table.items()}

    def validate(self) -> ValidationReport:
        """Diagnose the two-way discipline, determinism and completeness."""
        violations: list[str] = []
        for src, c, dst in sorted(self.transitions):
            if c == LEND:
                if src not in self.y_states:
                    violations.append(f"po2: marker edge leaves non-Y state {src!r}")
                if dst not in self.x_states:
                    violations.append(f"po2: marker edge enters non-X state {dst!r}")
        try:
            list(
                TopologicalSorter(
                    {z: set(self._change_edges[z]) for z in self.states}
                ).static_order()
            )
            acyclic = True
        except CycleError as err:
            acyclic = False
            violations.append(f"po2: state-changing transitions form a cycle: {err.args[1]}")
        well_formed = acyclic and not any(v.startswith("po2:") for v in violations)

        deterministic = True
        if len(self.initial) != 1:
            deterministic = False
            violations.append(
                f"determinism: need exactly one initial state, have {len(self.initial)}"
            )
        for (src, c), dsts in sorted(self._successors.items()):
            if len(dsts) > 1:
                deterministic = False
                violations.append(
                    f"determinism: ({src!r}, {c!r}) has {len(dsts)} successors"
                )

        complete = True
        for z in sorted(self.states):
            for c in sorted(self.alphabet):
                if not self.successors(z, c):
                    complete = False
                    violations.append(f"completeness: no ({z!r}, {c!r}) transition")
            if z in self.y_states and not self.successors(z, LEND):
                complete = False
                violations.append(f"completeness: Y state {z!r} has no marker edge")

        return ValidationReport(well_formed, deterministic, complete, tuple(violations))


def ensure_x_initial(a: Po2Automaton) -> Po2Automaton:
    """Give a deterministic machine an X initial state, language unchanged.

    A fresh start state copies the outgoing letter transitions of the old
    initial state; it has no self-loops, so it is never stationary.
    """
    (z0,) = a.initial
    if z0 in a.x_states:
        return a
    start = fresh_name("start", a.states)
    transitions = set(a.transitions)
    for c in a.alphabet:
        nxt = a.det_successor(z0, c)
        if nxt is not None:
            transitions.add((start, c, nxt))
    return Po2Automaton(
        a.alphabet, a.x_states | {start}, a.y_states, transitions, {start}, a.final
    )


def fresh_name(base: str, taken: Iterable[str]) -> str:
    taken = set(taken)
    if base not in taken:
        return base
    i = 2
    while f"{base}{i}" in taken:
        i += 1
    return f"{base}{i}"


def complete(a: Po2Automaton) -> Po2Automaton:
    """Add a non-accepting X sink for all missing transitions.

    Idempotent: an already complete automaton is returned unchanged, so the
    sink never piles up across repeated calls.
    """
    missing: list[tuple[str, str]] = []
    for z in a.states:
        for c in a.alphabet:
            if not a.successors(z, c):
                missing.append((z, c))
        if z in a.y_states and not a.successors(z, LEND):
            missing.append((z, LEND))
    if not missing:
        return a
    sink = fresh_name("sink", a.states)
    transitions = set(a.transitions)
    transitions.update((z, c, sink) for z, c in missing)
    transitions.update((sink, c, sink) for c in a.alphabet)
    return Po2Automaton(
        a.alphabet,
        a.x_states | {sink},
        a.y_states,
        transitions,
        a.initial,
        a.final,
    )


def complement(a: Po2Automaton) -> Po2Automaton:
    """Swap accepting and rejecting states of a complete deterministic machine."""
    report = a.validate()
    if not (report.is_well_formed_po2 and report.is_deterministic and report.is_complete):
        raise ValueError(
            "complement needs a well-formed, deterministic, complete automaton; "
            + "; ".join(report.violations[:3])
        )
    return Po2Automaton(
        a.alphabet,
        a.x_states,
        a.y_states,
        a.transitions,
        a.initial,
        a.states - a.final,
    )


def chain_lengths(a: Po2Automaton) -> tuple[int, int]:
    """Longest chains in the self-loop-free transition graph.

    Returns ``(n, m)``: the maximum number of states on any path, and the
    maximum number of X states on any path.  Requires a well-formed machine
    (the graph must be acyclic).
    """
    order_graph = {z: set(a._change_edges[z]) for z in a.states}
    try:
        order = list(TopologicalSorter(order_graph).static_order())
    except CycleError:
        raise ValueError("chain lengths are undefined: transition graph has a cycle")
    total: dict[str, int] = {}
    xonly: dict[str, int] = {}
    for z in order:  # successors of z come earlier in static_order
        succs = a._change_edges[z]
        total[z] = 1 + max((total[s] for s in succs), default=0)
        xonly[z] = (1 if z in a.x_states else 0) + max((xonly[s] for s in succs), default=0)
    n = max(total.values(), default=0)
    m = max(xonly.values(), default=0)
    return n, m


def prune_unreachable(a: Po2Automaton) -> Po2Automaton:
    """Drop states not reachable from the initial set in the transition graph."""
    seen = set(a.initial)
    frontier = list(a.initial)
    while frontier:
        z = frontier.pop()
        for dst in a._change_edges[z]:
            if dst not in seen:
                seen.add(dst)
                frontier.append(dst)
    return Po2Automaton(
        a.alphabet,
        a.x_states & seen,
        a.y_states & seen,
        {(s, c, d) for s, c, d in a.transitions if s in seen and d in seen},
        a.initial,
        a.final & seen,
    )


def relabel(a: Po2Automaton, rename: Callable[[str], str] | dict[str, str]) -> Po2Automaton:
    """Rename states through an injective mapping."""
    fn = rename.__getitem__ if isinstance(rename, dict) else rename
    mapping = {z: fn(z) for z in a.states}
    if len(set(mapping.values())) != len(mapping):
        raise ValueError("state renaming must be injective")
    return Po2Automaton(
        a.alphabet,
        {mapping[z] for z in a.x_states},
        {mapping[z] for z in a.y_states},
        {(mapping[s], c, mapping[d]) for s, c, d in a.transitions},
        {mapping[z] for z in a.initial},
        {mapping[z] for z in a.final},
    )


def disjoint_union(parts: Iterable[Po2Automaton]) -> Po2Automaton:
    """Nondeterministic union: run the parts side by side, initials pooled.

    States are prefixed ``m{i}_`` per part, so name clashes are impossible.
    All parts must share one alphabet.
    """
    parts = list(parts)
    alphabets = {p.alphabet for p in parts}
    if len(alphabets) > 1:
        raise ValueError("disjoint union needs a common alphabet")
    alphabet = alphabets.pop() if alphabets else frozenset()
    renamed = [relabel(p, lambda z, i=i: f"m{i}_{z}") for i, p in enumerate(parts)]
    return Po2Automaton(
        alphabet,
        frozenset().union(*(p.x_states for p in renamed)) if renamed else frozenset(),
        frozenset().union(*(p.y_states for p in renamed)) if renamed else frozenset(),
        frozenset().union(*(p.transitions for p in renamed)) if renamed else frozenset(),
        frozenset().union(*(p.initial for p in renamed)) if renamed else frozenset(),
        frozenset().union(*(p.final for p in renamed)) if renamed else frozenset(),
    )


def automaton_to_dict(a: Po2Automaton) -> dict:
    """JSON-ready description; the marker letter is spelled "LEND"."""
    return {
        "alphabet": sorted(a.alphabet),
        "x_states": sorted(a.x_states),
        "y_states": sorted(a.y_states),
        "transitions": [
            [s, _LEND_JSON if c == LEND else c, d] for s, c, d in sorted(a.transitions)
        ],
        "initial": sorted(a.initial),
        "final": sorted(a.final),
    }


def automaton_from_dict(data: dict) -> Po2Automaton:
    try:
        return Po2Automaton(
            data["alphabet"],
            data["x_states"],
            data["y_states"],
            [
                (s, LEND if c == _LEND_JSON else c, d)
                for s, c, d in data["transitions"]
            ],
            data["initial"],
            data["final"],
        )
    except (KeyError, TypeError) as err:
        raise ValueError(f"malformed automaton description: {err}") from err
