"""Probabilistic Kripke models and their satisfaction relation.

A model is a finite list of worlds, a row-stochastic matrix ``mu`` of
exact rationals and a valuation.  The accessibility relation is never
stored; it is the support of each row.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import worldsets as ws
from .formula import RESERVED_ATOM, Atom, BelGeq, BelGt, Not, Or, PrGeq
from .rationals import format_rational, parse_rational


class UnknownAtom(LookupError):
    pass


class UnknownWorld(LookupError):
    pass


@dataclass(frozen=True)
class Violation:
    world: int | None
    kind: str
    message: str


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def valid(self):
        return not self.violations

    def add(self, world, kind, message):
        self.violations.append(Violation(world, kind, message))

    def lines(self):
        return [v.message for v in self.violations]


@dataclass(frozen=True, eq=False)
class ProbKripkeModel:
    worlds: tuple[str, ...]
    mu: tuple[tuple[Fraction, ...], ...]
    valuation: dict[str, int]

    def __post_init__(self):
        object.__setattr__(self, "worlds", tuple(self.worlds))
        object.__setattr__(
            self, "mu", tuple(tuple(parse_rational(x) for x in row) for row in self.mu)
        )
        object.__setattr__(self, "valuation", dict(self.valuation))
        object.__setattr__(self, "_truth", {})
        object.__setattr__(self, "_index", {name: i for i, name in enumerate(self.worlds)})

    @classmethod
    def from_names(cls, worlds, mu, valuation):
        """Build from a valuation that lists world names per atom."""
        index = {name: i for i, name in enumerate(worlds)}
        val = {}
        for atom, names in valuation.items():
            try:
                val[atom] = ws.from_indices(index[n] for n in names)
            except KeyError as exc:
                raise UnknownWorld(f"atom {atom!r} names unknown world {exc.args[0]!r}") from None
        return cls(tuple(worlds), mu, val)

    @property
    def n(self):
        return len(self.worlds)

    def world_index(self, w):
        if isinstance(w, int):
            if not 0 <= w < self.n:
                raise UnknownWorld(f"world index {w} out of range")
            return w
        try:
            return self._index[w]
        except KeyError:
            raise UnknownWorld(f"unknown world {w!r}") from None

    def __eq__(self, other):
        if not isinstance(other, ProbKripkeModel):
            return NotImplemented
        return (self.worlds, self.mu, self.valuation) == (other.worlds, other.mu, other.valuation)

    __hash__ = None


def validate_kripke(m):
    """Every violated constraint, each tagged with its row."""
    report = ValidationReport()
    n = m.n
    if n == 0:
        report.add(None, "empty", "model has no worlds")
        return report
    if len(set(m.worlds)) != n:
        report.add(None, "names", "world names are not distinct")
    if len(m.mu) != n:
        report.add(None, "shape", f"mu has {len(m.mu)} rows for {n} worlds")
    for i, row in enumerate(m.mu):
        if len(row) != n:
            report.add(i, "shape", f"row {i} has {len(row)} entries for {n} worlds")
            continue
        for j, x in enumerate(row):
            if x < 0:
                report.add(i, "negative", f"row {i} entry {j} is negative ({format_rational(x)})")
        total = sum(row, Fraction(0))
        if total != 1:
            report.add(i, "row-sum", f"row {i} sums to {format_rational(total)}")
        if not any(x > 0 for x in row):
            report.add(i, "no-successor", f"row {i} has no successor")
    full = ws.full(n)
    for atom, mask in m.valuation.items():
        if mask & ~full or mask < 0:
            report.add(None, "valuation", f"atom {atom!r} names worlds outside the model")
    return report


def successors(m, w):
    """R(w): the worlds reached from ``w`` with positive probability."""
    row = m.mu[w]
    return ws.from_indices(j for j, x in enumerate(row) if x > 0)


def pr_measure(m, w, X):
    row = m.mu[w]
    total = Fraction(0)
    while X:
        low = X & -X
        total += row[low.bit_length() - 1]
        X ^= low
    return total


def _atom_set(m, name):
    try:
        return m.valuation[name]
    except KeyError:
        if name == RESERVED_ATOM:
            return 0
        raise UnknownAtom(f"atom {name!r} has no valuation") from None


def truth_set_k(m, f):
    """Bottom-up truth set; memoized per model and subformula."""
    cache = m._truth
    hit = cache.get(f)
    if hit is not None:
        return hit
    if isinstance(f, Atom):
        out = _atom_set(m, f.name)
    elif isinstance(f, Not):
        out = ws.full(m.n) & ~truth_set_k(m, f.arg)
    elif isinstance(f, Or):
        out = truth_set_k(m, f.left) | truth_set_k(m, f.right)
    else:
        X = truth_set_k(m, f.arg)
        strict = isinstance(f, BelGt)
        out = 0
        for w in range(m.n):
            p = pr_measure(m, w, X)
            if p > f.alpha if strict else p >= f.alpha:
                out |= 1 << w
    cache[f] = out
    return out


def satisfies_k(m, w, f):
    """Pointwise satisfaction, evaluated top-down from ``w``."""
    if isinstance(f, Atom):
        return bool(_atom_set(m, f.name) >> w & 1)
    if isinstance(f, Not):
        return not satisfies_k(m, w, f.arg)
    if isinstance(f, Or):
        return satisfies_k(m, w, f.left) or satisfies_k(m, w, f.right)
    p = pr_measure(m, w, truth_set_k(m, f.arg))
    if isinstance(f, (PrGeq, BelGeq)):
        return p >= f.alpha
    return p > f.alpha


def measure_table(m, w):
    """pr(w, X) for every X, as a list indexed by bitmask."""
    ws.check_size(m.n)
    row = m.mu[w]
    table = [Fraction(0)] * (1 << m.n)
    for X in range(1, 1 << m.n):
        low = X & -X
        table[X] = table[X ^ low] + row[low.bit_length() - 1]
    return table
