"""Seeded generators shared across test modules.

All generators build states along a fixed linear order and only allow
self-loops or forward edges, so every machine is well formed by
construction (the self-loop-free graph is acyclic, marker edges included).
"""

import random

from po2buchi.core import LEND, Po2Automaton


def random_det_automaton(
    rng: random.Random,
    alphabet: str = "ab",
    max_states: int = 5,
    complete: bool = True,
    final_bias: float = 0.4,
) -> Po2Automaton:
    """A deterministic machine; complete unless asked otherwise."""
    n = rng.randint(1, max_states)
    names = [f"z{i}" for i in range(n)]
    # Last state is X so every Y state has a later marker target.
    polarity = ["x" if i == n - 1 or rng.random() < 0.6 else "y" for i in range(n)]
    polarity[0] = "x" if rng.random() < 0.9 or n == 1 else polarity[0]
    if polarity[0] == "y":
        polarity = ["x"] + polarity[1:]
    xs = {names[i] for i in range(n) if polarity[i] == "x"}
    ys = set(names) - xs
    transitions = set()
    for i, z in enumerate(names):
        for c in alphabet:
            if not complete and rng.random() < 0.25:
                continue
            # Bias toward self-loops to get long stays in one state.
            j = i if rng.random() < 0.55 else rng.randint(i, n - 1)
            transitions.add((z, c, names[j]))
        if z in ys:
            targets = [names[j] for j in range(i + 1, n) if names[j] in xs]
            if targets or complete:
                transitions.add((z, LEND, rng.choice(targets)))
    final = {z for z in names if rng.random() < final_bias}
    return Po2Automaton(alphabet, xs, ys, transitions, {names[0]}, final)


def random_nondet_automaton(
    rng: random.Random,
    alphabet: str = "ab",
    max_states: int = 5,
) -> Po2Automaton:
    """A (possibly) nondeterministic, possibly incomplete machine."""
    base = random_det_automaton(rng, alphabet, max_states, complete=rng.random() < 0.5)
    names = sorted(base.states)
    transitions = set(base.transitions)
    order = {z: i for i, z in enumerate(names)}
    for _ in range(rng.randint(0, 4)):
        src = rng.choice(names)
        c = rng.choice(alphabet)
        dst = rng.choice([z for z in names if order[z] >= order[src]])
        transitions.add((src, c, dst))
    initial = set(base.initial)
    extra_inits = [z for z in base.x_states if rng.random() < 0.2]
    initial.update(extra_inits)
    return Po2Automaton(
        base.alphabet, base.x_states, base.y_states, transitions, initial, base.final
    )


def random_lasso(rng: random.Random, alphabet: str, max_spoke: int = 5, max_period: int = 4):
    from po2buchi.words import LassoWord

    spoke = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, max_spoke)))
    period = "".join(rng.choice(alphabet) for _ in range(rng.randint(1, max_period)))
    return LassoWord(spoke, period)


def random_monomial(rng: random.Random, alphabet: str = "abc", max_degree: int = 3):
    """Arbitrary monomial; may be unrestricted or have an empty tail."""
    from po2buchi.monomials import Monomial

    k = rng.randint(0, max_degree)
    markers = [rng.choice(alphabet) for _ in range(k)]
    segments = [{c for c in alphabet if rng.random() < 0.5} for _ in range(k)]
    tail = {c for c in alphabet if rng.random() < 0.5}
    if not tail and (k == 0 or rng.random() < 0.7):
        tail = {rng.choice(alphabet)}
    return Monomial(segments, markers, tail)


def random_restricted_monomial(rng: random.Random, alphabet: str = "abc", max_degree: int = 3):
    """Restricted by construction: no segment contains the final marker."""
    from po2buchi.monomials import Monomial

    while True:
        k = rng.randint(1, max_degree)
        markers = [rng.choice(alphabet) for _ in range(k)]
        pool = [c for c in alphabet if c != markers[-1]]
        segments = [{c for c in pool if rng.random() < 0.5} for _ in range(k)]
        tail = {c for c in alphabet if rng.random() < 0.6} or {rng.choice(alphabet)}
        m = Monomial(segments, markers, tail)
        if m.is_restricted():
            return m

def evaluate_formula(f, bits: dict[int, bool]) -> bool:
    """Truth-table oracle, independent of the automaton construction."""
    from po2buchi.satred import And, Not, Or, Var

    if isinstance(f, Var):
        return bits[f.index]
    if isinstance(f, Not):
        return not evaluate_formula(f.child, bits)
    if isinstance(f, And):
        return evaluate_formula(f.left, bits) and evaluate_formula(f.right, bits)
    if isinstance(f, Or):
        return evaluate_formula(f.left, bits) or evaluate_formula(f.right, bits)
    raise TypeError(f"not a formula: {f!r}")


def random_formula(rng: random.Random, max_leaves: int = 4, max_var: int = 6, negate: float = 0.3):
    """Random formula tree; repeated low variables make contradictions likely."""
    from po2buchi.satred import And, Not, Or, Var

    nodes = [Var(rng.randint(1, max_var)) for _ in range(rng.randint(1, max_leaves))]
    nodes = [Not(n) if rng.random() < negate else n for n in nodes]
    while len(nodes) > 1:
        rng.shuffle(nodes)
        right, left = nodes.pop(), nodes.pop()
        node = And(left, right) if rng.random() < 0.6 else Or(left, right)
        if rng.random() < negate / 2:
            node = Not(node)
        nodes.append(node)
    return nodes[0]


def formula_reader_cost(f) -> int:
    """Sum of (index + 1) over variable leaves: the machine's chain budget."""
    from po2buchi.satred import Not, Var

    if isinstance(f, Var):
        return f.index + 1
    if isinstance(f, Not):
        return formula_reader_cost(f.child)
    return formula_reader_cost(f.left) + formula_reader_cost(f.right)

def sample_from_monomial(rng: random.Random, m):
    """A random lasso inside the monomial's language (tail must be nonempty)."""
    from po2buchi.words import LassoWord

    parts = []
    for seg, mark in zip(m.segments, m.markers):
        pool = sorted(seg)
        if pool:
            parts.append("".join(rng.choice(pool) for _ in range(rng.randint(0, 3))))
        parts.append(mark)
    tail = sorted(m.tail)
    parts.append("".join(rng.choice(tail) for _ in range(rng.randint(0, 2))))
    period = "".join(rng.choice(tail) for _ in range(rng.randint(1, 3)))
    return LassoWord("".join(parts), period)
