"""Propositional satisfiability encoded as automaton emptiness.

``build_sat_automaton`` turns a formula into a deterministic machine over
{0, 1} whose inputs are read as assignments: position i carries the value of
variable i, and the machine accepts exactly the satisfying inputs.  Emptiness
checking then decides satisfiability, and the construction doubles as an
adversarial generator for the decision procedures.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import count

from .core import LEND, Po2Automaton
from .decide import is_empty


@dataclass(frozen=True)
class Var:
    """A propositional variable; indices start at 1."""

    index: int

    def __post_init__(self) -> None:
        if self.index < 1:
            raise ValueError(f"variable index must be at least 1, got {self.index}")


@dataclass(frozen=True)
class Not:
    child: "PropFormula"


@dataclass(frozen=True)
class And:
    left: "PropFormula"
    right: "PropFormula"


@dataclass(frozen=True)
class Or:
    left: "PropFormula"
    right: "PropFormula"


PropFormula = Var | Not | And | Or


def var_count(f: PropFormula) -> int:
    """Largest variable index appearing in the formula."""
    if isinstance(f, Var):
        return f.index
    if isinstance(f, Not):
        return var_count(f.child)
    if isinstance(f, (And, Or)):
        return max(var_count(f.left), var_count(f.right))
    raise TypeError(f"not a formula: {f!r}")


class FormulaSyntaxError(ValueError):
    """Malformed formula text; carries the byte offset of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


def parse_formula(text: str) -> PropFormula:
    """Parse formulas like ``v1 & !(v2 | v3)``.

    ``!`` binds tightest, ``&`` binds over ``|``, and both binary operators
    associate to the left.  Variables are ``v`` followed by decimal digits.
    """
    pos = 0

    def skip_spaces() -> None:
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def at(symbol: str) -> bool:
        skip_spaces()
        return pos < len(text) and text[pos] == symbol

    def disjunction() -> PropFormula:
        nonlocal pos
        node = conjunction()
        while at("|"):
            pos += 1
            node = Or(node, conjunction())
        return node

    def conjunction() -> PropFormula:
        nonlocal pos
        node = negation()
        while at("&"):
            pos += 1
            node = And(node, negation())
        return node

    def negation() -> PropFormula:
        nonlocal pos
        if at("!"):
            pos += 1
            return Not(negation())
        return atom()

    def atom() -> PropFormula:
        nonlocal pos
        skip_spaces()
        if pos >= len(text):
            raise FormulaSyntaxError("expected a variable, '!' or '('", pos)
        if text[pos] == "(":
            opened = pos
            pos += 1
            node = disjunction()
            if not at(")"):
                raise FormulaSyntaxError("unclosed '('", opened)
            pos += 1
            return node
        if text[pos] == "v":
            start = pos
            pos += 1
            digits = ""
            while pos < len(text) and text[pos] in "0123456789":
                digits += text[pos]
                pos += 1
            if not digits:
                raise FormulaSyntaxError("expected digits after 'v'", pos)
            if int(digits) < 1:
                raise FormulaSyntaxError("variable index must be at least 1", start)
            return Var(int(digits))
        raise FormulaSyntaxError(f"unexpected {text[pos]!r}", pos)

    node = disjunction()
    skip_spaces()
    if pos != len(text):
        raise FormulaSyntaxError(f"unexpected {text[pos]!r}", pos)
    return node


def build_sat_automaton(f: PropFormula) -> Po2Automaton:
    """A deterministic machine over {0, 1} accepting the satisfying inputs of f.

    Each variable reader walks right to its position, remembers the bit there,
    returns to the left end, and reports: a 1 leads to the shared "true" loop
    state, a 0 to "false", with negation swapping the two reports and the
    binary connectives rewiring one report into the next reader.  "true" and
    "false" are the only right-moving states with letter self-loops, both are
    entered by left-end transitions only, and "true" is the sole final state.
    """
    fresh = count(1)
    xs: set[str] = set()
    ys: set[str] = set()

    def reader(g: PropFormula) -> tuple[str, set[tuple[str, str, str]]]:
        """Entry state and transitions, reporting to "@true"/"@false"."""
        if isinstance(g, Var):
            n = next(fresh)
            walk = [f"r{n}.at{j}" for j in range(1, g.index + 1)]
            saw0, saw1 = f"r{n}.saw0", f"r{n}.saw1"
            xs.update(walk)
            ys.update({saw0, saw1})
            trans: set[tuple[str, str, str]] = set()
            for here, there in zip(walk, walk[1:]):
                trans.update((here, c, there) for c in "01")
            trans.add((walk[-1], "0", saw0))
            trans.add((walk[-1], "1", saw1))
            for c in "01":
                trans.add((saw0, c, saw0))
                trans.add((saw1, c, saw1))
            trans.add((saw1, LEND, "@true"))
            trans.add((saw0, LEND, "@false"))
            return walk[0], trans
        if isinstance(g, Not):
            entry, trans = reader(g.child)
            flip = {"@true": "@false", "@false": "@true"}
            return entry, {(s, c, flip.get(d, d)) for s, c, d in trans}
        if isinstance(g, (And, Or)):
            entry, trans = reader(g.left)
            entry_right, trans_right = reader(g.right)
            forwarded = "@true" if isinstance(g, And) else "@false"
            rewired = {
                (s, c, entry_right if d == forwarded else d) for s, c, d in trans
            }
            return entry, rewired | trans_right
        raise TypeError(f"not a formula: {g!r}")

    entry, trans = reader(f)
    bind = {"@true": "true", "@false": "false"}
    transitions = {(s, c, bind.get(d, d)) for s, c, d in trans}
    xs.update(("true", "false"))
    transitions.update(("true", c, "true") for c in "01")
    transitions.update(("false", c, "false") for c in "01")
    return Po2Automaton("01", xs, ys, transitions, {entry}, {"true"})


def sat_via_emptiness(
    f: PropFormula, *, budget: int | None = None
) -> dict[int, bool] | None:
    """A satisfying assignment as {index: value}, or None when unsatisfiable.

    Decided by emptiness of the formula machine: any accepted lasso spells a
    satisfying input, with positions past the spoke filled by the loop letter.
    """
    witness = is_empty(build_sat_automaton(f), budget=budget)
    if witness is None:
        return None
    word = witness.word()
    return {i: word.letter_at(i) == "1" for i in range(1, var_count(f) + 1)}
