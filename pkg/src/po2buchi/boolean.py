"""Boolean combinations of deterministic machines via a two-head product.

Two complete deterministic machines run side by side.  While both sit in X
states they read in lockstep (sync states); the letters read at joint state
changes are pushed on a bounded stack.  When one machine dives into a Y
state, the other freezes in its pre-dive state and the diver is followed
alone, paired with a compatibility index into the stack word
(:mod:`po2buchi.compat`).  The index certifies how much of the factored
prefix still separates the diver from the freeze position; the tracker
deliberately has no transition for the step that would cross back over that
position, so exactly there both machines take their (deferred) step and the
product re-synchronizes.  Acceptance is decided on sync states only.
"""

from __future__ import annotations

from typing import Callable

from .compat import tracker_table
from .core import (
    LEND,
    Po2Automaton,
    chain_lengths,
    complement,
    complete,
    ensure_x_initial,
)

UNION = "union"
INTERSECTION = "intersection"
COMPLEMENT = "complement"

_SyncKey = tuple[str, str, str, str]
_Key = tuple


def _require_ready(a: Po2Automaton, label: str) -> None:
    report = a.validate()
    if not (report.is_well_formed_po2 and report.is_deterministic and report.is_complete):
        raise ValueError(
            f"{label} operand must be well formed, deterministic and complete: "
            + "; ".join(report.violations[:3])
        )


def _product(
    a: Po2Automaton, b: Po2Automaton, accept: Callable[[str, str], bool]
) -> Po2Automaton:
    _require_ready(a, "left")
    _require_ready(b, "right")
    if a.alphabet != b.alphabet:
        raise ValueError("product operands need the same alphabet")
    a = ensure_x_initial(a)
    b = ensure_x_initial(b)
    ops = {1: a, 2: b}
    cap = chain_lengths(a)[1] + chain_lengths(b)[1] - 2
    letters = sorted(a.alphabet)

    def route(pre1: str, pre2: str, post1: str, post2: str, sig: str) -> _Key:
        # A diving machine becomes active; the other slot keeps the state
        # whose transition is re-issued when the diver crosses back.
        if post1 in a.y_states:
            return ("a", 1, post1, pre2, sig, len(sig))
        if post2 in b.y_states:
            return ("a", 2, pre1, post2, sig, len(sig))
        return ("s", post1, post2, sig)

    def sync_step(key: _Key, c: str) -> _Key:
        _, x1, x2, sig = key
        z1 = a.det_successor(x1, c)
        z2 = b.det_successor(x2, c)
        if z1 != x1 or z2 != x2:
            sig = sig + c
            if len(sig) > cap:
                raise RuntimeError("internal: stack outgrew the chain-length bound")
        return route(x1, x2, z1, z2, sig)

    def async_step(key: _Key, c: str) -> _Key:
        _, active, s1, s2, sig, k = key
        live = s1 if active == 1 else s2
        hit = tracker_table(ops[active], sig).get((live, k, c))
        if hit is not None:
            z, k2 = hit
            return ("a", active, z, s2, sig, k2) if active == 1 else ("a", active, s1, z, sig, k2)
        # The tracker is silent exactly at the crossing: both machines take
        # their step at the freeze position and the stack stays as is.
        post1 = a.det_successor(s1, c)
        post2 = b.det_successor(s2, c)
        assert ops[active].is_x(post1 if active == 1 else post2)
        return route(s1, s2, post1, post2, sig)

    def is_x_key(key: _Key) -> bool:
        if key[0] == "s":
            return True
        _, active, s1, s2, _, _ = key
        return ops[active].is_x(s1 if active == 1 else s2)

    def name_of(key: _Key) -> str:
        if key[0] == "s":
            return f"s|{key[1]}|{key[2]}|{key[3]}"
        return f"a{key[1]}|{key[2]}|{key[3]}|{key[4]}|{key[5]}"

    (i1,) = a.initial
    (i2,) = b.initial
    start: _Key = ("s", i1, i2, "")
    seen = {start}
    queue = [start]
    transitions: set[tuple[str, str, str]] = set()
    while queue:
        key = queue.pop()
        if key[0] == "a":
            assert 1 <= key[5] <= len(key[4])
        step = sync_step if key[0] == "s" else async_step
        for c in letters:
            nxt = step(key, c)
            transitions.add((name_of(key), c, name_of(nxt)))
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
        if not is_x_key(key):
            _, active, s1, s2, sig, k = key
            live = s1 if active == 1 else s2
            z, k2 = tracker_table(ops[active], sig)[live, k, LEND]
            nxt = ("a", active, z, s2, sig, k2) if active == 1 else ("a", active, s1, z, sig, k2)
            transitions.add((name_of(key), LEND, name_of(nxt)))
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)

    names = {key: name_of(key) for key in seen}
    if len(set(names.values())) != len(names):
        raise RuntimeError("internal: product state names collided")
    if cap == 0:
        assert len(seen) == 1
    elif len(letters) >= 2:
        assert len(seen) <= 3 * cap * len(a.states) * len(b.states) * len(letters) ** (cap + 1)
    return Po2Automaton(
        a.alphabet,
        {names[k] for k in seen if is_x_key(k)},
        {names[k] for k in seen if not is_x_key(k)},
        transitions,
        {names[start]},
        {names[k] for k in seen if k[0] == "s" and accept(k[1], k[2])},
    )


def product_union(a: Po2Automaton, b: Po2Automaton) -> Po2Automaton:
    """Deterministic machine for the union of two lasso languages."""
    return _product(a, b, lambda x1, x2: x1 in a.final or x2 in b.final)


def product_intersection(a: Po2Automaton, b: Po2Automaton) -> Po2Automaton:
    """Deterministic machine for the intersection of two lasso languages."""
    return _product(a, b, lambda x1, x2: x1 in a.final and x2 in b.final)


def boolean_combine(
    op: str, a: Po2Automaton, b: Po2Automaton | None = None
) -> Po2Automaton:
    """Union, intersection or complement; operands are completed first."""
    if op == COMPLEMENT:
        if b is not None:
            raise ValueError("complement takes a single operand")
        return complement(complete(a))
    if b is None:
        raise ValueError(f"{op} takes two operands")
    if op == UNION:
        return product_union(complete(a), complete(b))
    if op == INTERSECTION:
        return product_intersection(complete(a), complete(b))
    raise ValueError(f"unknown operation {op!r}")
