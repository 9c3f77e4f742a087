"""Monomial expressions ``A1*a1 ... Ak*ak B^w`` and their automaton forms.

A monomial of degree k denotes the set of infinite words that factor as
``u1 a1 u2 a2 ... uk ak beta`` with ``alph(ui) <= Ai`` and ``alph(beta) <= B``.
This module evaluates membership for lasso words, checks the structural
side conditions (restrictedness, bounded unambiguity), and converts between
monomials and partially ordered two-way machines in both directions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from graphlib import TopologicalSorter
from itertools import combinations, product

from .boolean import product_union
from .core import (
    LEND,
    Po2Automaton,
    chain_lengths,
    complete,
    disjoint_union,
    ensure_x_initial,
    fresh_name,
    prune_unreachable,
    relabel,
)
from .run import run_det
from .words import LassoWord


@dataclass(frozen=True)
class Monomial:
    """Degree-k chain of (segment alphabet, marker letter) pairs plus a tail."""

    segments: tuple[frozenset[str], ...]
    markers: tuple[str, ...]
    tail: frozenset[str]

    def __init__(
        self,
        segments: tuple[frozenset[str], ...] = (),
        markers: tuple[str, ...] = (),
        tail: frozenset[str] = frozenset(),
    ):
        object.__setattr__(self, "segments", tuple(frozenset(s) for s in segments))
        object.__setattr__(self, "markers", tuple(markers))
        object.__setattr__(self, "tail", frozenset(tail))
        if len(self.segments) != len(self.markers):
            raise ValueError("need exactly one marker per segment")
        for c in self.letters:
            if not (isinstance(c, str) and len(c) == 1):
                raise ValueError(f"letters must be single characters, got {c!r}")
            if c == LEND:
                raise ValueError("the tape-end marker cannot be a monomial letter")

    @property
    def degree(self) -> int:
        return len(self.markers)

    @property
    def letters(self) -> frozenset[str]:
        """Every letter mentioned anywhere, tail included."""
        return frozenset().union(self.tail, self.markers, *self.segments)

    def is_restricted(self) -> bool:
        """No suffix of the marker word fits inside its leading segment."""
        return all(
            not set(self.markers[i:]) <= self.segments[i] for i in range(self.degree)
        )

    def __str__(self) -> str:
        parts = [
            f"[{''.join(sorted(seg))}]*{mark}."
            for seg, mark in zip(self.segments, self.markers)
        ]
        return "".join(parts) + f"[{''.join(sorted(self.tail))}]w"


_MONO_RE = re.compile(
    r"^(?P<body>(?:\[[^][]*\]\*[^][\s.]\.)*)\[(?P<tail>[^][]*)\]w$"
)
_PAIR_RE = re.compile(r"\[([^][]*)\]\*([^][\s.])\.")


def parse_monomial(text: str) -> Monomial:
    """Parse the literal syntax, e.g. ``[ab]*a.[]*c.[c]w``."""
    m = _MONO_RE.match(text)
    if m is None:
        raise ValueError(f"not a monomial literal: {text!r}")
    segments = []
    markers = []
    for seg, mark in _PAIR_RE.findall(m.group("body")):
        segments.append(frozenset(seg))
        markers.append(mark)
    return Monomial(tuple(segments), tuple(markers), frozenset(m.group("tail")))


def monomial_member(m: Monomial, w: LassoWord) -> bool:
    """Does the lasso word match the monomial?

    Marker placements are searched inside a prefix window of length
    ``|spoke| + (degree + 1) * |period|``: any placement further out can be
    shifted left by whole periods without changing letters or gap alphabets.
    """
    if not m.tail:
        return False
    k = m.degree
    window = len(w.spoke) + (k + 1) * len(w.period)
    text = w.prefix(window)
    reach = {0}
    for seg, mark in zip(m.segments, m.markers):
        nxt: set[int] = set()
        for start in reach:
            for i in range(start, window):
                c = text[i]
                if c == mark:
                    nxt.add(i + 1)
                if c not in seg:
                    break
        reach = nxt
        if not reach:
            return False
    period_ok = set(w.period) <= m.tail
    return any(period_ok and set(text[s:]) <= m.tail for s in reach)


def _position_constraint(m: Monomial, vec: tuple[int, ...], i: int) -> frozenset[str]:
    """Letters allowed at position i when markers sit at the given positions."""
    for t, p in enumerate(vec):
        if i == p:
            return frozenset((m.markers[t],))
        if i < p:
            return m.segments[t]
    return m.tail


def is_unambiguous_bounded(m: Monomial, bound: int | None = None) -> LassoWord | None:
    """Search for a word admitting two distinct factorizations.

    Returns a witness lasso if two different marker placements within the
    first ``bound`` positions are jointly satisfiable, and None otherwise.
    None means "unambiguous up to the bound", not a proof of unambiguity.
    """
    if bound is None:
        bound = m.degree + 5
    if m.degree == 0 or not m.tail:
        return None
    vectors = list(combinations(range(1, bound + 1), m.degree))
    anchor = min(m.tail)
    for idx, va in enumerate(vectors):
        for vb in vectors[idx + 1 :]:
            horizon = max(va[-1], vb[-1])
            letters = []
            for i in range(1, horizon + 1):
                allowed = _position_constraint(m, va, i) & _position_constraint(m, vb, i)
                if not allowed:
                    break
                letters.append(min(allowed))
            else:
                return LassoWord("".join(letters), anchor)
    return None


def _ambient(m: Monomial, alphabet=None) -> frozenset[str]:
    alphabet = m.letters if alphabet is None else frozenset(alphabet)
    if not m.letters <= alphabet:
        raise ValueError("monomial uses letters outside the alphabet")
    return alphabet


def monomial_to_automaton(m: Monomial, alphabet=None) -> Po2Automaton:
    """One-way nondeterministic chain recognizing the monomial.

    State ``q{t}`` self-loops on segment t+1 and steps to ``q{t+1}`` on its
    marker; the last state loops on the tail and is the only final state.
    """
    alphabet = _ambient(m, alphabet)
    transitions: set[tuple[str, str, str]] = set()
    for t, (seg, mark) in enumerate(zip(m.segments, m.markers)):
        transitions.update((f"q{t}", c, f"q{t}") for c in seg)
        transitions.add((f"q{t}", mark, f"q{t + 1}"))
    k = m.degree
    transitions.update((f"q{k}", c, f"q{k}") for c in m.tail)
    states = {f"q{t}" for t in range(k + 1)}
    return Po2Automaton(alphabet, states, set(), transitions, {"q0"}, {f"q{k}"})


def polynomial_to_automaton(monomials, alphabet=None) -> Po2Automaton:
    """Nondeterministic union of the monomials' chain automata."""
    monomials = list(monomials)
    if alphabet is None:
        alphabet = frozenset().union(*(m.letters for m in monomials)) if monomials else frozenset()
    alphabet = frozenset(alphabet)
    if not monomials:
        return Po2Automaton(alphabet, set(), set(), set(), set(), set())
    parts = [monomial_to_automaton(m, alphabet) for m in monomials]
    return parts[0] if len(parts) == 1 else disjoint_union(parts)


# --- relativization -------------------------------------------------------


def relativize(
    b: Po2Automaton, marker: str, *, forbid: frozenset[str] = frozenset()
) -> Po2Automaton:
    """Make a deterministic machine run on the suffix after the first marker.

    On input ``u marker beta`` with marker-free ``u``, the result reproduces
    b's computation on ``beta`` shifted right by ``|u| + 1``.  Every
    state-changing move out of a left-moving state is guarded by a scan for
    a marker occurrence further left: if none exists the move happened left
    of the suffix, so the machine fast-forwards to the first marker and
    applies the left-end bounce b would have taken; otherwise it replays a
    disjoint copy of the machine built so far from the suffix start to
    confirm the position, then performs the deferred change.  Changes into
    states that can never accept skip the replay: a confirmed marker means
    rejection regardless of position.  Letters in ``forbid`` never label
    gadget self-loops (used when the caller embeds the result into a region
    that cannot contain them).
    """
    report = b.validate()
    if not (report.is_well_formed_po2 and report.is_deterministic):
        raise ValueError(
            "relativize needs a well-formed deterministic machine; "
            + "; ".join(report.violations[:3])
        )
    if marker not in b.alphabet:
        raise ValueError(f"marker {marker!r} is not in the alphabet")
    if marker in forbid:
        raise ValueError("marker cannot be a forbidden letter")
    b = prune_unreachable(b)
    graph = {z: {d for s, c, d in b.transitions if s == z and d != z} for z in b.states}
    order = [z for z in TopologicalSorter(graph).static_order()][::-1]

    xs = set(b.x_states)
    ys = set(b.y_states)
    final = set(b.final)
    transitions: set[tuple[str, str, str]] = set()
    loop_base = b.alphabet - forbid

    rev: dict[str, set[str]] = {z: set() for z in b.states}
    for s, _, d in b.transitions:
        rev[d].add(s)
    alive: set[str] = set()
    stack = list(b.final)
    while stack:
        s = stack.pop()
        if s not in alive:
            alive.add(s)
            stack.extend(rev[s])

    dead_x: str | None = None
    (z0,) = b.initial
    for z in order:
        if z in b.x_states:
            transitions.update((s, c, d) for s, c, d in b.transitions if s == z)
            continue
        loops = b.selfloop_letters(z)
        changes = [
            (c, d) for s, c, d in b.transitions if s == z and d != z and c != LEND
        ]
        live = [(c, d) for c, d in changes if d in alive]
        doomed = [c for c, d in changes if d not in alive]
        bounce = b.det_successor(z, LEND)
        # gadget names must dodge states a nested pass may already have made
        taken = xs | ys
        skip = fresh_name(f"{z}.skip", taken)
        seek = fresh_name(f"{z}.seek", taken | {skip})
        back = fresh_name(f"{z}.back", taken | {skip, seek})
        redo = fresh_name(f"{z}.redo", taken | {skip, seek, back})
        drop = fresh_name(f"{z}.drop", taken | {skip, seek, back, redo})
        if doomed:
            if dead_x is None:
                dead_x = fresh_name("veto", taken | {skip, seek, back, redo, drop})
                xs.add(dead_x)
                transitions.update((dead_x, c, dead_x) for c in loop_base)
            ys.add(drop)
            transitions.update((z, c, drop) for c in doomed)
            transitions.update((drop, c, drop) for c in loop_base - {marker})
            transitions.add((drop, marker, dead_x))
            if bounce is not None:
                transitions.add((drop, LEND, skip))
        if live:
            # snapshot the part of the machine built so far that can still
            # reach z; the replay copy retraces the deterministic run from
            # the suffix start back to the deferred-change position
            pred: dict[str, set[str]] = {}
            for s, _, d in transitions:
                pred.setdefault(d, set()).add(s)
            keep = {z}
            stack = [z]
            while stack:
                s = stack.pop()
                for p in pred.get(s, ()):
                    if p not in keep:
                        keep.add(p)
                        stack.append(p)
            if z0 not in keep:
                raise RuntimeError("deferred change is unreachable from the start")
            prefix = f"{z}+"
            while any(prefix + s in taken for s in keep):
                prefix += "+"
            copy_map = {s: prefix + s for s in keep}
            copied = [
                (copy_map[s], c, copy_map[d])
                for s, c, d in transitions
                if s in keep and d in keep
            ]
            xs.update(copy_map[s] for s in keep & xs)
            ys.update(copy_map[s] for s in keep & ys)
            transitions.update(copied)
            final.update(copy_map[s] for s in keep & final)
            twin = copy_map[z]
            transitions.update((twin, c, twin) for c in loops)
            transitions.update((twin, c, d) for c, d in live)
            ys.update({seek, back})
            xs.add(redo)
            transitions.update((z, c, seek) for c, _ in live)
            transitions.update((seek, c, seek) for c in loop_base - {marker})
            transitions.add((seek, marker, back))
            transitions.update((back, c, back) for c in loop_base)
            transitions.add((back, LEND, redo))
            transitions.update((redo, c, redo) for c in loop_base - {marker})
            transitions.add((redo, marker, copy_map[z0]))
            if bounce is not None:
                transitions.add((seek, LEND, skip))
        transitions.update((z, c, z) for c in loops)
        if bounce is not None:
            xs.add(skip)
            transitions.add((z, LEND, skip))
            transitions.update((skip, c, skip) for c in loop_base - {marker})
            transitions.add((skip, marker, bounce))

    result = Po2Automaton(b.alphabet, xs, ys, transitions, b.initial, final)
    return prune_unreachable(result)


# --- finite-word segment acceptors ----------------------------------------


@dataclass(frozen=True)
class FiniteAcceptor:
    """Two-way acceptor of the finite segment between the tape start and
    the first occurrence of a designated end letter.

    The decision is delivered at two outcome states without outgoing
    transitions; each is entered exactly by reading the end letter while
    moving right, so the head ends just past the delimiter.
    """

    machine: Po2Automaton
    accept: str
    reject: str


def _graft(
    acc: FiniteAcceptor,
    prefix: str,
    on_accept: str,
    on_reject: str,
    xs: set[str],
    ys: set[str],
    transitions: set[tuple[str, str, str]],
) -> str:
    """Embed an acceptor under a name prefix, rewiring its outcome entries.

    Returns the renamed initial state.
    """
    m = relabel(acc.machine, lambda s: prefix + s)
    hit, miss = prefix + acc.accept, prefix + acc.reject
    for s, c, d in m.transitions:
        if d == hit:
            d = on_accept
        elif d == miss:
            d = on_reject
        transitions.add((s, c, d))
    xs.update(m.x_states - {hit, miss})
    ys.update(m.y_states)
    (init,) = m.initial
    return init


def finite_monomial_acceptor(
    segments,
    markers,
    end: str,
    alphabet,
    *,
    forbid: frozenset[str] = frozenset(),
) -> FiniteAcceptor:
    """Deterministic two-way acceptor for ``A1*a1 ... A_{j-1}* a_{j-1} Aj*``
    on the segment delimited by the tape start and the first ``end`` letter.

    The monomial must avoid the end letter.  Letters in ``forbid`` are never
    placed on internal edges, so the result can be embedded into regions
    where they cannot occur.  Raises ValueError when neither the first nor
    the last segment misses a monomial letter, which only happens for
    ambiguous monomials.
    """
    segments = tuple(frozenset(s) for s in segments)
    markers = tuple(markers)
    if len(segments) != len(markers) + 1:
        raise ValueError("a finite monomial needs one more segment than markers")
    alphabet = frozenset(alphabet)
    letters = frozenset().union(set(markers), *segments)
    if end in letters:
        raise ValueError("the end letter must not occur in the monomial")
    if letters & forbid or end in forbid:
        raise ValueError("forbidden letters cannot occur in the monomial")
    if not letters <= alphabet or end not in alphabet:
        raise ValueError("monomial letters and end letter must be in the alphabet")

    usable = alphabet - forbid

    if len(segments) == 1:
        seg = segments[0]
        xs = {"go", "fail", "yes", "no"}
        transitions = {("go", c, "go") for c in seg}
        transitions.add(("go", end, "yes"))
        transitions.update(("go", c, "fail") for c in usable - seg - {end})
        transitions.update(("fail", c, "fail") for c in usable - {end})
        transitions.add(("fail", end, "no"))
        machine = Po2Automaton(alphabet, xs, set(), transitions, {"go"}, set())
        return FiniteAcceptor(machine, "yes", "no")

    split = sorted(letters - segments[0])
    if not split:
        mirror_split = sorted(letters - segments[-1])
        if not mirror_split:
            raise ValueError(
                "ambiguous finite monomial: every letter loops at both ends"
            )
        return _mirror_acceptor(segments, markers, end, alphabet, forbid)

    b = split[0]
    xs: set[str] = {"d0", "nofit", "yes", "no"}
    ys: set[str] = {"r0", "rb"}
    transitions: set[tuple[str, str, str]] = set()

    transitions.update(("d0", c, "d0") for c in usable - {b, end})
    transitions.add(("d0", b, "rb"))
    transitions.add(("d0", end, "r0"))
    transitions.update(("rb", c, "rb") for c in usable - {end})
    transitions.update(("r0", c, "r0") for c in usable - {end})
    transitions.update(("nofit", c, "nofit") for c in usable - {end})
    transitions.add(("nofit", end, "no"))

    if b in markers:
        no_b_entry = "nofit"
    else:
        thinned = finite_monomial_acceptor(
            tuple(s - {b} for s in segments), markers, end, alphabet, forbid=forbid
        )
        no_b_entry = _graft(thinned, "nb.", "yes", "no", xs, ys, transitions)
    transitions.add(("r0", LEND, no_b_entry))

    cases: list[tuple[tuple[frozenset[str], ...], tuple[str, ...], tuple, tuple]] = []
    if b in markers:
        t = markers.index(b)
        cases.append(
            (
                tuple(s - {b} for s in segments[: t + 1]),
                markers[:t],
                segments[t + 1 :],
                markers[t + 1 :],
            )
        )
    for s_idx in range(1, len(segments)):
        if b in segments[s_idx] and b not in markers[:s_idx]:
            cases.append(
                (
                    tuple(s - {b} for s in segments[: s_idx + 1]),
                    markers[:s_idx],
                    segments[s_idx:],
                    markers[s_idx:],
                )
            )
    if not cases:
        raise RuntimeError("split letter admits no first-occurrence case")

    fallback = "nofit"
    for i, (p_segs, p_marks, q_segs, q_marks) in reversed(list(enumerate(cases))):
        wind = f"c{i}.wind"
        ys.add(wind)
        transitions.update((wind, c, wind) for c in usable - {end})
        transitions.add((wind, LEND, fallback))
        q_acc = finite_monomial_acceptor(
            q_segs, q_marks, end, alphabet, forbid=forbid
        )
        q_rel = FiniteAcceptor(
            relativize(q_acc.machine, b, forbid=forbid | {end}),
            q_acc.accept,
            q_acc.reject,
        )
        q_init = _graft(q_rel, f"c{i}q.", "yes", wind, xs, ys, transitions)
        p_acc = finite_monomial_acceptor(
            p_segs, p_marks, b, alphabet, forbid=forbid | {end}
        )
        fallback = _graft(p_acc, f"c{i}p.", q_init, wind, xs, ys, transitions)

    transitions.add(("rb", LEND, fallback))
    machine = Po2Automaton(alphabet, xs, ys, transitions, {"d0"}, set())
    return FiniteAcceptor(machine, "yes", "no")


def _mirror_acceptor(segments, markers, end, alphabet, forbid) -> FiniteAcceptor:
    """Decide the segment right to left when only its far end has a split
    letter: run the acceptor of the reversed monomial with polarities
    flipped, entering at the delimiter and bouncing off the tape start."""
    rev = finite_monomial_acceptor(
        segments[::-1], markers[::-1], end, alphabet, forbid=forbid
    )
    m = rev.machine
    drop = {rev.accept, rev.reject}
    if {"w0", "pa", "pr"} & m.states:
        raise RuntimeError("mirror wrapper names collide")
    xs = set(m.y_states) | {"w0", "pa", "pr", "yes", "no"}
    ys = set(m.x_states) - drop
    transitions: set[tuple[str, str, str]] = set()
    for s, c, d in m.transitions:
        if c == LEND:
            if d in drop:
                raise RuntimeError("tape-start edge into an outcome state")
            transitions.add((s, end, d))
        elif c == end:
            if d == rev.accept:
                transitions.add((s, LEND, "pa"))
            elif d == rev.reject:
                transitions.add((s, LEND, "pr"))
            else:
                if d not in m.y_states:
                    raise RuntimeError("unexpected end edge in mirrored acceptor")
                transitions.add((s, LEND, d))
        else:
            transitions.add((s, c, d))
    usable = alphabet - forbid - {end}
    (rev_init,) = m.initial
    transitions.update(("w0", c, "w0") for c in usable)
    transitions.add(("w0", end, rev_init))
    for probe, outcome in (("pa", "yes"), ("pr", "no")):
        transitions.update((probe, c, probe) for c in usable)
        transitions.add((probe, end, outcome))
    machine = Po2Automaton(alphabet, xs, ys, transitions, {"w0"}, set())
    return FiniteAcceptor(machine, "yes", "no")


# --- deterministic construction -------------------------------------------


def monomial_to_deterministic(m: Monomial, alphabet=None) -> Po2Automaton:
    """Deterministic complete two-way machine for a restricted monomial.

    Requires restrictedness exactly and unambiguity up to a small bound;
    ambiguous inputs beyond the bound may still be detected during
    construction and raise as well.
    """
    alphabet = _ambient(m, alphabet)
    if not m.is_restricted():
        raise ValueError(f"monomial is not restricted: {m}")
    witness = is_unambiguous_bounded(m)
    if witness is not None:
        raise ValueError(f"monomial is ambiguous: {witness} fits two factorizations")
    return _det_build(m, alphabet)


def _det_build(m: Monomial, alphabet: frozenset[str]) -> Po2Automaton:
    if m.degree == 0:
        if not m.tail:
            loops = {("dead", c, "dead") for c in alphabet}
            return Po2Automaton(alphabet, {"dead"}, set(), loops, {"dead"}, set())
        transitions = {("ok", c, "ok") for c in m.tail}
        transitions.update(("ok", c, "dead") for c in alphabet - m.tail)
        transitions.update(("dead", c, "dead") for c in alphabet)
        return Po2Automaton(
            alphabet, {"ok", "dead"}, set(), transitions, {"ok"}, {"ok"}
        )

    first = next(
        (t for t in range(m.degree) if m.markers[t] not in m.segments[0]), None
    )
    if first is None:
        raise ValueError(f"monomial is not restricted: {m}")
    a = m.markers[first]
    cases: list[tuple[tuple, tuple, Monomial]] = [
        (
            tuple(s - {a} for s in m.segments[: first + 1]),
            m.markers[:first],
            Monomial(m.segments[first + 1 :], m.markers[first + 1 :], m.tail),
        )
    ]
    for j in range(1, first + 1):
        if a in m.segments[j]:
            cases.append(
                (
                    tuple(s - {a} for s in m.segments[: j + 1]),
                    m.markers[:j],
                    Monomial(m.segments[j:], m.markers[j:], m.tail),
                )
            )
    machines = [
        _assemble_case(p_segs, p_marks, q, a, alphabet)
        for p_segs, p_marks, q in cases
    ]
    return reduce(product_union, machines)


def _assemble_case(
    p_segs, p_marks, q: Monomial, a: str, alphabet: frozenset[str]
) -> Po2Automaton:
    """One first-occurrence case: find the split letter, rewind, check the
    prefix with a finite acceptor, then run the relativized tail machine."""
    tail_machine = prune_unreachable(
        ensure_x_initial(complete(_det_build(q, alphabet)))
    )
    tail_hat = relabel(relativize(tail_machine, a), lambda s: "q." + s)
    prefix_acc = finite_monomial_acceptor(p_segs, p_marks, a, alphabet)

    xs = set(tail_hat.x_states) | {"scan", "dead"}
    ys = set(tail_hat.y_states) | {"home"}
    transitions = set(tail_hat.transitions)
    (tail_init,) = tail_hat.initial

    transitions.update(("scan", c, "scan") for c in alphabet - {a})
    transitions.add(("scan", a, "home"))
    transitions.update(("home", c, "home") for c in alphabet)
    transitions.update(("dead", c, "dead") for c in alphabet)
    entry = _graft(prefix_acc, "p.", tail_init, "dead", xs, ys, transitions)
    transitions.add(("home", LEND, entry))

    machine = Po2Automaton(
        alphabet, xs, ys, transitions, {"scan"}, set(tail_hat.final)
    )
    return complete(prune_unreachable(machine))


# --- deterministic machine back to monomials ------------------------------


def automaton_to_polynomial(a: Po2Automaton) -> list[Monomial]:
    """Decompose a deterministic machine's language into monomials.

    Enumerates abstract run skeletons over marker sequences: segment cells
    are symbolic, since crossing a segment never changes state the run is
    the same for every concrete gap, and each cell collects the
    intersection of the self-loop alphabets of the states that cross it.
    A skeleton is emitted when the run stabilizes in a final state and
    every marker saw at least one state change; the emitted segments are
    those intersections, narrowed where needed so each monomial misses one
    later marker per segment (words with fatter gaps change state at
    different positions and are covered by other skeletons).
    """
    report = a.validate()
    if not (report.is_well_formed_po2 and report.is_deterministic):
        raise ValueError(
            "decomposition needs a well-formed deterministic machine; "
            + "; ".join(report.violations[:3])
        )
    a = ensure_x_initial(complete(a))
    (z0,) = a.initial
    letters = sorted(a.alphabet)
    cap = max(chain_lengths(a)[0] - 1, 0)
    # Longest descending chain from each state: an upper bound on how many
    # more state changes the run can perform, hence on the markers that can
    # still be validated.
    graph = {z: {d for s, _, d in a.transitions if s == z and d != z} for z in a.states}
    below: dict[str, int] = {}
    for z in TopologicalSorter(graph).static_order():
        below[z] = max((below[d] + 1 for d in graph[z]), default=0)
    found: set[Monomial] = set()

    def settle(
        z: str, marks: tuple[str, ...], meets: list[frozenset[str]], flags: list[bool]
    ) -> str:
        """Run over the fixed cells until the head passes the last marker
        moving right, narrowing each crossed cell's allowed alphabet."""
        frontier = 2 * len(marks) + 1
        loc = frontier if z in a.x_states else frontier - 2
        limit = (len(a.states) + 2) * (frontier + 3) + 4
        steps = 0
        while loc < frontier:
            steps += 1
            if steps > limit:
                raise RuntimeError("abstract run did not settle")
            if loc == 0:
                z = a.det_successor(z, LEND)
                loc = 1
            elif loc % 2:
                t = (loc - 1) // 2
                meets[t] &= a.selfloop_letters(z)
                loc += 1 if z in a.x_states else -1
            else:
                nxt = a.det_successor(z, marks[loc // 2 - 1])
                if nxt != z:
                    flags[loc // 2 - 1] = True
                z = nxt
                loc += 1 if z in a.x_states else -1
        return z

    def emit(z: str, marks: tuple[str, ...], meets: list[frozenset[str]]) -> None:
        tail = a.selfloop_letters(z)
        options = []
        for i, meet in enumerate(meets):
            later = frozenset(marks[i:])
            if later <= meet:
                options.append([meet - {c} for c in sorted(later)])
            else:
                options.append([meet])
        for segs in product(*options):
            mono = Monomial(segs, marks, tail)
            if not mono.is_restricted():
                raise RuntimeError(f"emitted monomial is not restricted: {mono}")
            found.add(mono)

    def explore(
        z: str, marks: tuple[str, ...], meets: tuple[frozenset[str], ...], flags: list[bool]
    ) -> None:
        if z in a.final and all(flags):
            emit(z, marks, list(meets))
        if len(marks) >= cap:
            return
        for c in letters:
            nxt = a.det_successor(z, c)
            new_marks = marks + (c,)
            new_meets = list(meets) + [a.selfloop_letters(z)]
            new_flags = flags + [nxt != z]
            landed = settle(nxt, new_marks, new_meets, new_flags)
            if new_flags.count(False) <= below[landed]:
                explore(landed, new_marks, tuple(new_meets), new_flags)

    explore(z0, (), (), [])
    return sorted(found, key=str)


def monomial_from_joint_runs(
    a: Po2Automaton, b: Po2Automaton, w: LassoWord
) -> Monomial:
    """Monomial containing w on which both machines behave uniformly.

    Markers sit at every position where either deterministic run changes
    state; between markers both runs only self-loop, so every word of the
    resulting monomial gets the same two verdicts as w.
    """
    out_a = run_det(a, w)
    out_b = run_det(b, w)
    if out_a.stationary_state is None or out_b.stationary_state is None:
        raise ValueError("both machines must decide the word; complete them first")
    positions = sorted(
        {p for p, _, _, _ in out_a.state_changes + out_b.state_changes if p > 0}
    )
    segments = []
    previous = 0
    for p in positions:
        segments.append(
            frozenset(w.letter_at(i) for i in range(previous + 1, p))
        )
        previous = p
    markers = tuple(w.letter_at(p) for p in positions)
    tail = w.suffix_from(previous + 1).alphabet
    return Monomial(tuple(segments), markers, tail)
