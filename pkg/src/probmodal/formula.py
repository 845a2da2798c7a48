"""Formulas of the probability/belief modal language.

Only six constructors survive parsing: :class:`Atom`, :class:`Not`,
:class:`Or`, :class:`PrGeq`, :class:`BelGeq` and :class:`BelGt`.  Every
other surface operator is rewritten into them:

=================  ======================================
surface            primitive form
=================  ======================================
``f & g``          ``!(!f | !g)``
``T`` / ``F``      ``_top | !_top`` / its negation
``Pr<=a f``        ``Pr>=(1-a) !f``
``Pr<a f``         ``!Pr>=a f``
``Pr>a f``         ``!Pr>=(1-a) !f``
``Pr=a f``         ``Pr>=a f & Pr<=a f``
``Bel<=``, ``Bel<``, ``Bel=``  same rules on ``Bel>=`` (warns)
=================  ======================================

``Bel>a f`` stays primitive: under belief semantics it is *not* the
negated dual of ``Bel>=``.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from fractions import Fraction

from .rationals import RationalError, format_rational, parse_rational

RESERVED_ATOM = "_top"


class FormulaSyntaxError(ValueError):
    """Malformed formula text; ``offset`` is the byte offset of the problem."""

    def __init__(self, message, offset):
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset


class ThresholdError(FormulaSyntaxError):
    pass


class BeliefDesugaringWarning(UserWarning):
    """``Bel<=``, ``Bel<`` and ``Bel=`` were rewritten with the probability duality.

    For a belief function that is not additive, ``Bel>=(1-a) !f`` does not
    say that the belief in ``f`` is at most ``a``.
    """


@dataclass(frozen=True, slots=True)
class Atom:
    name: str


@dataclass(frozen=True, slots=True)
class Not:
    arg: Formula


@dataclass(frozen=True, slots=True)
class Or:
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class PrGeq:
    alpha: Fraction
    arg: Formula


@dataclass(frozen=True, slots=True)
class BelGeq:
    alpha: Fraction
    arg: Formula


@dataclass(frozen=True, slots=True)
class BelGt:
    alpha: Fraction
    arg: Formula


Formula = Atom | Not | Or | PrGeq | BelGeq | BelGt
MODALS = (PrGeq, BelGeq, BelGt)

TOP = Or(Atom(RESERVED_ATOM), Not(Atom(RESERVED_ATOM)))
BOTTOM = Not(TOP)


def conj(a, b):
    return Not(Or(Not(a), Not(b)))


def disj(a, b):
    return Or(a, b)


def _as_conj(f):
    """``(a, b)`` if ``f`` is the primitive spelling of ``a & b``, else None."""
    if (
        isinstance(f, Not)
        and isinstance(f.arg, Or)
        and isinstance(f.arg.left, Not)
        and isinstance(f.arg.right, Not)
    ):
        return f.arg.left.arg, f.arg.right.arg
    return None


# -- parsing -----------------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<modal>(?:Pr|Bel)\s*(?:>=|<=|>|<|=))
  | (?P<num>\d+(?:\.\d+)?(?:\s*/\s*\d+)?)
  | (?P<atom>_top(?![a-z0-9_])|[a-z][a-z0-9_]*)
  | (?P<const>[TF](?![A-Za-z0-9_]))
  | (?P<op>[()!|&])
    """,
    re.VERBOSE,
)
_SPACE = re.compile(r"\s*")


def _tokenize(text):
    pos = 0
    tokens = []
    while True:
        pos = _SPACE.match(text, pos).end()
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", _byte(text, pos))
        kind = m.lastgroup
        value = m.group(kind)
        if kind == "modal":
            value = re.sub(r"\s+", "", value)
        tokens.append((kind, value, pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def _byte(text, pos):
    return len(text[:pos].encode("utf-8"))


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.top_operand = None
        self.warned = []

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message, pos):
        raise FormulaSyntaxError(message, _byte(self.text, pos))

    def parse(self):
        if self.peek()[0] == "modal":
            # a lone modality at top level: remember its operand
            self.take()
            self.threshold()
            operand = self.unary()
            if self.peek()[0] == "end":
                self.top_operand = operand
            self.i = 0
            self.warned.clear()
        f = self.disjunction()
        kind, value, pos = self.peek()
        if kind != "end":
            self.fail(f"unexpected {value!r}", pos)
        return f

    def disjunction(self):
        f = self.conjunction()
        while self.peek()[:2] == ("op", "|"):
            self.take()
            f = Or(f, self.conjunction())
        return f

    def conjunction(self):
        f = self.unary()
        while self.peek()[:2] == ("op", "&"):
            self.take()
            f = conj(f, self.unary())
        return f

    def unary(self):
        kind, value, pos = self.take()
        if kind == "op" and value == "!":
            return Not(self.unary())
        if kind == "op" and value == "(":
            f = self.disjunction()
            kind, value, pos = self.take()
            if (kind, value) != ("op", ")"):
                self.fail("expected ')'", pos)
            return f
        if kind == "atom":
            return Atom(value)
        if kind == "const":
            return TOP if value == "T" else BOTTOM
        if kind == "modal":
            alpha = self.threshold()
            arg = self.unary()
            return self.modal(value, alpha, arg)
        if kind == "end":
            self.fail("unexpected end of formula", pos)
        self.fail(f"unexpected {value!r}", pos)

    def threshold(self):
        kind, value, pos = self.take()
        if kind != "num":
            self.fail("expected a threshold after modality", pos)
        try:
            alpha = parse_rational(value)
        except RationalError as exc:
            raise ThresholdError(str(exc), _byte(self.text, pos)) from None
        if not 0 <= alpha <= 1:
            raise ThresholdError(f"threshold {format_rational(alpha)} outside [0, 1]", _byte(self.text, pos))
        return alpha

    def modal(self, op, alpha, arg):
        family, cmp = ("Pr", op[2:]) if op.startswith("Pr") else ("Bel", op[3:])
        geq = PrGeq if family == "Pr" else BelGeq
        if family == "Bel" and cmp in ("<=", "<", "="):
            self.warned.append(f"Bel{cmp}")
        if cmp == ">=":
            return geq(alpha, arg)
        if cmp == "<=":
            return geq(1 - alpha, Not(arg))
        if cmp == "<":
            return Not(geq(alpha, arg))
        if cmp == "=":
            return conj(geq(alpha, arg), geq(1 - alpha, Not(arg)))
        if family == "Bel":
            return BelGt(alpha, arg)
        return Not(PrGeq(1 - alpha, Not(arg)))


def parse(text):
    """Parse formula text into the primitive AST.

    Raises :class:`FormulaSyntaxError` (or its subclass
    :class:`ThresholdError`) and warns with :class:`BeliefDesugaringWarning`
    when a flagged belief form is rewritten.
    """
    return parse_principal(text)[0]


def parse_principal(text):
    """Parse and also return the operand of a top-level modality, if any.

    For ``"Pr>=0.6 p"`` the operand is ``Atom('p')``; for ``"p | Pr>=0.6 p"``
    it is None.
    """
    parser = _Parser(text)
    f = parser.parse()
    for form in parser.warned:
        warnings.warn(
            f"{form} rewritten through the probability duality; its meaning "
            "differs from a direct lower-probability reading when belief is not additive",
            BeliefDesugaringWarning,
            stacklevel=3,
        )
    return f, parser.top_operand


# -- rendering ---------------------------------------------------------------

_OR, _AND, _UNARY = 0, 1, 2
_NAMES = {PrGeq: "Pr>=", BelGeq: "Bel>=", BelGt: "Bel>"}


def render(f):
    """Canonical text; ``parse(render(f)) == f`` for every AST."""
    return _render(f, _OR)


def _render(f, need):
    if f == TOP:
        return "T"
    if f == BOTTOM:
        return "F"
    pair = _as_conj(f)
    if pair is not None:
        text = f"{_render(pair[0], _AND)} & {_render(pair[1], _UNARY)}"
        return text if need <= _AND else f"({text})"
    if isinstance(f, Or):
        text = f"{_render(f.left, _OR)} | {_render(f.right, _AND)}"
        return text if need <= _OR else f"({text})"
    if isinstance(f, Not):
        return "!" + _render(f.arg, _UNARY)
    if isinstance(f, Atom):
        return f.name
    return f"{_NAMES[type(f)]}{format_rational(f.alpha)} {_render(f.arg, _UNARY)}"


# -- analysis ----------------------------------------------------------------


def modal_depth(f):
    if isinstance(f, Atom):
        return 0
    if isinstance(f, Not):
        return modal_depth(f.arg)
    if isinstance(f, Or):
        return max(modal_depth(f.left), modal_depth(f.right))
    return 1 + modal_depth(f.arg)


def thresholds_in(f):
    out = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Or):
            stack += (g.left, g.right)
        elif isinstance(g, Not):
            stack.append(g.arg)
        elif isinstance(g, MODALS):
            out.add(g.alpha)
            stack.append(g.arg)
    return out


def atoms_in(f):
    """Atom names used by ``f``, the reserved one excluded."""
    out = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Atom):
            if g.name != RESERVED_ATOM:
                out.add(g.name)
        elif isinstance(g, Or):
            stack += (g.left, g.right)
        else:
            stack.append(g.arg)
    return out


def formula_size(f):
    if isinstance(f, Atom):
        return 1
    if isinstance(f, Or):
        return 1 + formula_size(f.left) + formula_size(f.right)
    return 1 + formula_size(f.arg)
