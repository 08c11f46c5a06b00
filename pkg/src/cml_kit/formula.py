"""Formula syntax: core AST, concrete-syntax parser/printer, fragments, encodings.

The core AST has exactly four constructors: Top, Not, And and the indexed
modality L. Disjunction, implication and falsum are parser sugar expanded to
core nodes; the expansion is remembered in a ``sugar`` tag on the Not node so
that fragment membership stays decidable and printing round-trips.

Concrete grammar (ASCII), precedence ``!``/``L{r}`` > ``&`` > ``|`` > ``->``:

    phi  ::= "T" | "F" | "!" phi | phi "&" phi | phi "|" phi
           | phi "->" phi | "L{" rate "}" phi | "(" phi ")"
    rate ::= decimal | integer "/" integer
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterator

from .errors import FormulaSyntaxError, RateError
from .rational import Rate, ensure_rate, format_rate


class Formula:
    """Base class; all nodes are immutable and hashable."""

    __slots__ = ()


@dataclass(frozen=True)
class Top(Formula):
    __slots__ = ()

    def __repr__(self) -> str:
        return "Top()"


@dataclass(frozen=True)
class Not(Formula):
    child: Formula
    # "or" / "implies" / "bot" when this negation encodes parser sugar
    sugar: str | None = field(default=None, compare=True)

    def __repr__(self) -> str:
        if self.sugar:
            return f"Not({self.child!r}, sugar={self.sugar!r})"
        return f"Not({self.child!r})"


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula

    def __repr__(self) -> str:
        return f"And({self.left!r}, {self.right!r})"


@dataclass(frozen=True)
class L(Formula):
    rate: Fraction
    child: Formula

    def __post_init__(self):
        object.__setattr__(self, "rate", ensure_rate(self.rate))

    def __repr__(self) -> str:
        return f"L({format_rate(self.rate)!s}, {self.child!r})"


def Bot() -> Formula:
    return Not(Top(), sugar="bot")


def Or(left: Formula, right: Formula) -> Formula:
    return Not(And(Not(left), Not(right)), sugar="or")


def Implies(left: Formula, right: Formula) -> Formula:
    return Not(And(left, Not(right)), sugar="implies")


def is_bot(f: Formula) -> bool:
    return isinstance(f, Not) and f.sugar == "bot" and isinstance(f.child, Top)


def or_operands(f: Formula) -> tuple[Formula, Formula] | None:
    """The (left, right) of an Or-sugared node, else None."""
    if (
        isinstance(f, Not)
        and f.sugar == "or"
        and isinstance(f.child, And)
        and isinstance(f.child.left, Not)
        and isinstance(f.child.right, Not)
    ):
        return f.child.left.child, f.child.right.child
    return None


def implies_operands(f: Formula) -> tuple[Formula, Formula] | None:
    """The (antecedent, consequent) of any implication-shaped node."""
    if isinstance(f, Not) and isinstance(f.child, And) and isinstance(f.child.right, Not):
        if f.sugar in (None, "implies"):
            return f.child.left, f.child.right.child
    return None


def strip_sugar(f: Formula) -> Formula:
    """Erase sugar tags; the result is the bare core AST."""
    if isinstance(f, Top):
        return f
    if isinstance(f, Not):
        return Not(strip_sugar(f.child))
    if isinstance(f, And):
        return And(strip_sugar(f.left), strip_sugar(f.right))
    if isinstance(f, L):
        return L(f.rate, strip_sugar(f.child))
    raise TypeError(f"not a formula node: {f!r}")


class Fragment(Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    FULL = "full"


def in_fragment(f: Formula, fragment: Fragment) -> bool:
    """Membership in the positive / negative / full sublanguages.

    Positive formulas are built from T, &, | and L only; | is recognized via
    the parser's sugar tag, so a hand-built !(!a & !b) without the tag does
    not count as a disjunction.
    """
    if fragment is Fragment.FULL:
        return True
    if fragment is Fragment.NEGATIVE:
        return isinstance(f, Not) and f.sugar is None and in_fragment(
            f.child, Fragment.POSITIVE
        )
    if isinstance(f, Top):
        return True
    if isinstance(f, And):
        return in_fragment(f.left, Fragment.POSITIVE) and in_fragment(
            f.right, Fragment.POSITIVE
        )
    if isinstance(f, L):
        return in_fragment(f.child, Fragment.POSITIVE)
    operands = or_operands(f)
    if operands is not None:
        a, b = operands
        return in_fragment(a, Fragment.POSITIVE) and in_fragment(b, Fragment.POSITIVE)
    return False


# --- encodings ---------------------------------------------------------------


def _down_index(r: Rate, e: Rate) -> Rate:
    """Truncated subtraction: max(0, r - e)."""
    shifted = r - e
    return shifted if shifted > 0 else Fraction(0)


def encode_down(f: Formula, e: Rate) -> Formula:
    """Shift every modal index down by e, truncating at 0; homomorphic elsewhere."""
    e = ensure_rate(e)
    if isinstance(f, Top):
        return f
    if isinstance(f, Not):
        return Not(encode_down(f.child, e), sugar=f.sugar)
    if isinstance(f, And):
        return And(encode_down(f.left, e), encode_down(f.right, e))
    if isinstance(f, L):
        return L(_down_index(f.rate, e), encode_down(f.child, e))
    raise TypeError(f"not a formula node: {f!r}")


def encode_up(f: Formula, e: Rate) -> Formula:
    """Shift every modal index up by e; homomorphic elsewhere."""
    e = ensure_rate(e)
    if isinstance(f, Top):
        return f
    if isinstance(f, Not):
        return Not(encode_up(f.child, e), sugar=f.sugar)
    if isinstance(f, And):
        return And(encode_up(f.left, e), encode_up(f.right, e))
    if isinstance(f, L):
        return L(f.rate + e, encode_up(f.child, e))
    raise TypeError(f"not a formula node: {f!r}")


def normal_form(f: Formula) -> Formula:
    """Negation normal form, then disjunctive normal form, at every modal depth.

    Modal subformulas are treated as literals (L r psi / !L r psi) with their
    bodies normalized recursively; T and F are kept as atoms. Equivalent to the
    input under Boolean semantics at every epsilon.
    """
    return _dnf(_nnf(f, True))


def _nnf(f: Formula, positive: bool) -> Formula:
    if isinstance(f, Top):
        return Top() if positive else Bot()
    if isinstance(f, Not):
        return _nnf(f.child, not positive)
    if isinstance(f, And):
        a = _nnf(f.left, positive)
        b = _nnf(f.right, positive)
        return And(a, b) if positive else Or(a, b)
    if isinstance(f, L):
        lit = L(f.rate, normal_form(f.child))
        return lit if positive else Not(lit)
    raise TypeError(f"not a formula node: {f!r}")


def _dnf(f: Formula) -> Formula:
    clauses = [_join(clause, And) for clause in _dnf_clauses(f)]
    return _join(clauses, Or)


def _dnf_clauses(f: Formula) -> list[list[Formula]]:
    operands = or_operands(f)
    if operands is not None:
        return _dnf_clauses(operands[0]) + _dnf_clauses(operands[1])
    if isinstance(f, And):
        return [
            left + right
            for left in _dnf_clauses(f.left)
            for right in _dnf_clauses(f.right)
        ]
    return [[f]]


def _join(parts: list, op) -> Formula:
    out = parts[0]
    for part in parts[1:]:
        out = op(out, part)
    return out


def encode_abs(f: Formula, e: Rate) -> Formula:
    """Asymmetric index shift on the normal form: negated modal literals move up.

    The input is first brought to NNF/DNF over modal literals; then L r psi
    maps to L r |psi|, !L r psi maps to !L (r+e) |psi|, and T, F, &, | are
    homomorphic.
    """
    e = ensure_rate(e)
    return _abs_clauses(normal_form(f), e)


def _abs_clauses(f: Formula, e: Rate) -> Formula:
    if isinstance(f, Top):
        return f
    if is_bot(f):
        return f
    operands = or_operands(f)
    if operands is not None:
        return Or(_abs_clauses(operands[0], e), _abs_clauses(operands[1], e))
    if isinstance(f, And):
        return And(_abs_clauses(f.left, e), _abs_clauses(f.right, e))
    if isinstance(f, L):
        return L(f.rate, _abs_clauses(f.child, e))
    if isinstance(f, Not) and isinstance(f.child, L):
        inner = f.child
        return Not(L(inner.rate + e, _abs_clauses(inner.child, e)))
    raise TypeError(f"normal form violated at {f!r}")


# --- propositional atoms (modal subformulas treated as opaque) ---------------


def modal_atoms(f: Formula) -> list[L]:
    """Distinct outermost L-subformulas in first-occurrence order."""
    seen: dict[L, None] = {}

    def walk(g: Formula) -> None:
        if isinstance(g, L):
            seen.setdefault(g)
            return
        if isinstance(g, Not):
            walk(g.child)
        elif isinstance(g, And):
            walk(g.left)
            walk(g.right)

    walk(f)
    return list(seen)


def prop_eval(f: Formula, assignment: dict) -> bool:
    """Truth value with each outermost L-atom read from the assignment."""
    if isinstance(f, Top):
        return True
    if isinstance(f, L):
        return assignment[f]
    if isinstance(f, Not):
        return not prop_eval(f.child, assignment)
    if isinstance(f, And):
        return prop_eval(f.left, assignment) and prop_eval(f.right, assignment)
    raise TypeError(f"not a formula node: {f!r}")


# --- concrete syntax ---------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<lbrace_rate>L\{\s*(?P<rate>[^{}]*?)\s*\})
  | (?P<top>T)
  | (?P<bot>F)
  | (?P<not>!)
  | (?P<and>&)
  | (?P<implies>->)
  | (?P<or>\|)
  | (?P<lparen>\()
  | (?P<rparen>\))
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str
    value: str
    position: int


def _tokenize(text: str) -> Iterator[_Token]:
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup if m.lastgroup != "lbrace_rate" else "modality"
        if kind == "rate":  # inner group matched via lbrace_rate
            kind = "modality"
        if kind != "ws":
            value = m.group("rate") if kind == "modality" else m.group(0)
            yield _Token(kind, value, pos)
        pos = m.end()
    yield _Token("eof", "", len(text))


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = list(_tokenize(text))
        self.index = 0

    def peek(self) -> _Token:
        return self.tokens[self.index]

    def advance(self) -> _Token:
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise FormulaSyntaxError(
                f"expected {kind}, found {tok.value or 'end of input'!r}",
                tok.position,
                self.text,
            )
        return self.advance()

    # implies (right assoc) > or > and > unary, low to high binding
    def parse_implies(self) -> Formula:
        left = self.parse_or()
        if self.peek().kind == "implies":
            self.advance()
            right = self.parse_implies()
            return Implies(left, right)
        return left

    def parse_or(self) -> Formula:
        out = self.parse_and()
        while self.peek().kind == "or":
            self.advance()
            out = Or(out, self.parse_and())
        return out

    def parse_and(self) -> Formula:
        out = self.parse_unary()
        while self.peek().kind == "and":
            self.advance()
            out = And(out, self.parse_unary())
        return out

    def parse_unary(self) -> Formula:
        tok = self.peek()
        if tok.kind == "not":
            self.advance()
            return Not(self.parse_unary())
        if tok.kind == "modality":
            self.advance()
            try:
                rate = ensure_rate(tok.value)
            except RateError as exc:
                raise FormulaSyntaxError(str(exc), tok.position, self.text) from exc
            return L(rate, self.parse_unary())
        return self.parse_atom()

    def parse_atom(self) -> Formula:
        tok = self.peek()
        if tok.kind == "top":
            self.advance()
            return Top()
        if tok.kind == "bot":
            self.advance()
            return Bot()
        if tok.kind == "lparen":
            self.advance()
            inner = self.parse_implies()
            self.expect("rparen")
            return inner
        raise FormulaSyntaxError(
            f"expected a formula, found {tok.value or 'end of input'!r}",
            tok.position,
            self.text,
        )


def parse(text: str) -> Formula:
    """Parse concrete syntax into the core AST; raises FormulaSyntaxError."""
    parser = _Parser(text)
    out = parser.parse_implies()
    tok = parser.peek()
    if tok.kind != "eof":
        raise FormulaSyntaxError(
            f"trailing input {tok.value!r}", tok.position, text
        )
    return out


# Precedence levels for printing; parenthesize a child whose level is lower
# than the context requires.
_LEVEL_IMPLIES = 1
_LEVEL_OR = 2
_LEVEL_AND = 3
_LEVEL_UNARY = 4


def print_formula(f: Formula) -> str:
    """Concrete syntax; parse(print_formula(f)) == f."""
    return _print(f, 0)


def _print(f: Formula, context: int) -> str:
    if isinstance(f, Top):
        return "T"
    if is_bot(f):
        return "F"
    operands = or_operands(f)
    if operands is not None:
        a, b = operands
        text = f"{_print(a, _LEVEL_OR)} | {_print(b, _LEVEL_OR + 1)}"
        return f"({text})" if context > _LEVEL_OR else text
    if isinstance(f, Not) and f.sugar == "implies":
        a, b = f.child.left, f.child.right.child
        text = f"{_print(a, _LEVEL_IMPLIES + 1)} -> {_print(b, _LEVEL_IMPLIES)}"
        return f"({text})" if context > _LEVEL_IMPLIES else text
    if isinstance(f, Not):
        return f"!{_print(f.child, _LEVEL_UNARY + 1)}"
    if isinstance(f, And):
        text = f"{_print(f.left, _LEVEL_AND)} & {_print(f.right, _LEVEL_AND + 1)}"
        return f"({text})" if context > _LEVEL_AND else text
    if isinstance(f, L):
        return f"L{{{format_rate(f.rate)}}} {_print(f.child, _LEVEL_UNARY + 1)}"
    raise TypeError(f"not a formula node: {f!r}")


def modal_indices(f: Formula) -> list[Rate]:
    """All L-indices in the tree, outermost-first, with repeats."""
    out: list[Rate] = []
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, L):
            out.append(g.rate)
            stack.append(g.child)
        elif isinstance(g, Not):
            stack.append(g.child)
        elif isinstance(g, And):
            stack.append(g.right)
            stack.append(g.left)
    return out
