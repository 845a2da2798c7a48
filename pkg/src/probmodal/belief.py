"""Belief neighbourhood models.

Each world carries a capacity ``b(w, .)`` stored as a total table over all
subsets of the worlds (bitmask indexed).  Neighbourhoods are derived from
it: ``N>=a(w) = {X : b(w, X) >= a}`` and ``N>a(w) = {X : b(w, X) > a}``.

Heavy subset loops run through :mod:`probmodal.kernels` on integer
numerators scaled by the lcm of each world's denominators, so every
comparison stays exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import kernels
from . import worldsets as ws
from .formula import RESERVED_ATOM, Atom, BelGt, Not, Or, PrGeq
from .kripke import UnknownAtom, UnknownWorld, ValidationReport
from .rationals import format_rational, parse_rational

DISCREPANCY_NOTE = (
    "criteria disagree: the elementary sets carry total belief 1, yet belief is "
    "not additive over disjoint sets because an elementary set with several "
    "worlds gives zero belief to its parts; the elementary-sum test alone does "
    "not characterise additivity"
)


class MassError(ValueError):
    pass


def _scale(values):
    """``(D, nums)`` with ``values[i] == nums[i] / D`` and ``D`` the lcm of denominators."""
    d = 1
    for v in values:
        d = math.lcm(d, v.denominator)
    return d, [v.numerator * (d // v.denominator) for v in values]


def _unscale(d, nums):
    return [Fraction(x, d) for x in nums]


@dataclass(frozen=True, eq=False)
class BeliefNbhdModel:
    worlds: tuple[str, ...]
    capacity: tuple[tuple[Fraction, ...], ...]
    valuation: dict[str, int]

    def __post_init__(self):
        worlds = tuple(self.worlds)
        ws.check_size(len(worlds))
        size = 1 << len(worlds)
        capacity = tuple(tuple(parse_rational(x) for x in row) for row in self.capacity)
        if len(capacity) != len(worlds) or any(len(row) != size for row in capacity):
            raise ValueError(f"capacity must be {len(worlds)} tables of {size} entries")
        object.__setattr__(self, "worlds", worlds)
        object.__setattr__(self, "capacity", capacity)
        object.__setattr__(self, "valuation", dict(self.valuation))
        object.__setattr__(self, "_index", {name: i for i, name in enumerate(worlds)})
        object.__setattr__(self, "_cache", {})
        object.__setattr__(self, "_truth", {})

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

    def b(self, w, X):
        return self.capacity[w][X]

    def scaled(self, w):
        key = ("scaled", w)
        if key not in self._cache:
            self._cache[key] = _scale(self.capacity[w])
        return self._cache[key]

    def __eq__(self, other):
        if not isinstance(other, BeliefNbhdModel):
            return NotImplemented
        return (self.worlds, self.capacity, self.valuation) == (
            other.worlds,
            other.capacity,
            other.valuation,
        )

    __hash__ = None


def _memo(m, key, compute):
    cache = m._cache
    if key not in cache:
        cache[key] = compute()
    return cache[key]


# -- construction ------------------------------------------------------------


def complete_capacity(n, specified):
    """Total capacity table from a partial one.

    Explicit values win.  Every other set ``X`` takes the value of its
    interior, the union of the minimal specified sets with positive value
    that lie inside ``X``.  Where that interior was not specified itself it
    is valued by summing the Möbius masses of the specified sets it contains
    (unspecified sets carry no mass).
    """
    size = 1 << n
    given = {X: parse_rational(v) for X, v in specified.items()}
    given.setdefault(0, Fraction(0))
    order = sorted(given, key=lambda X: (X.bit_count(), X))
    mass = {}
    for A in order:
        mass[A] = given[A] - sum((mass[B] for B in mass if B != A and B & ~A == 0), Fraction(0))
    table = [Fraction(0)] * size
    for A, v in mass.items():
        table[A] = v
    d, nums = _scale(table)
    zero_mass_fill = _unscale(d, kernels.zeta(nums, n))
    positive = [X for X in order if given[X] > 0]
    elementary = [E for E in positive if not any(F != E and F & ~E == 0 for F in positive)]
    out = []
    for X in range(size):
        if X in given:
            out.append(given[X])
            continue
        inner = 0
        for E in elementary:
            if E & ~X == 0:
                inner |= E
        out.append(given[inner] if inner in given else zero_mass_fill[inner])
    return tuple(out)


def from_tables(worlds, tables, valuation):
    """Model from per-world partial tables ``{mask: value}`` (see :func:`complete_capacity`)."""
    n = len(worlds)
    ws.check_size(n)
    capacity = [complete_capacity(n, t) for t in tables]
    return BeliefNbhdModel(tuple(worlds), tuple(capacity), valuation)


def check_mass(masses, n):
    """Raise :class:`MassError` unless every world's masses form a mass function."""
    full = ws.full(n)
    for w, row in enumerate(masses):
        total = Fraction(0)
        for X, v in row.items():
            v = parse_rational(v)
            if X & ~full or X < 0:
                raise MassError(f"world {w}: focal set {X} outside the model")
            if v < 0:
                raise MassError(f"world {w}: negative mass {format_rational(v)}")
            if X == 0 and v != 0:
                raise MassError(f"world {w}: empty set has mass {format_rational(v)}")
            total += v
        if total != 1:
            raise MassError(f"world {w}: masses sum to {format_rational(total)}")


def from_mass(worlds, masses, valuation):
    """Belief model with ``b(w, A) = sum of masses of subsets of A``."""
    n = len(worlds)
    ws.check_size(n)
    if len(masses) != n:
        raise MassError(f"{len(masses)} mass functions for {n} worlds")
    check_mass(masses, n)
    capacity = []
    for row in masses:
        table = [Fraction(0)] * (1 << n)
        for X, v in row.items():
            table[X] += parse_rational(v)
        d, nums = _scale(table)
        capacity.append(tuple(_unscale(d, kernels.zeta(nums, n))))
    return BeliefNbhdModel(tuple(worlds), tuple(capacity), valuation)


def vacuous(worlds, valuation=None):
    """Every world believes only the whole space."""
    n = len(worlds)
    return from_mass(worlds, [{ws.full(n): Fraction(1)} for _ in range(n)], valuation or {})


# -- masses and validity -----------------------------------------------------


def mobius_table(m, w):
    """Möbius masses of ``b(w, .)`` for every subset, as a list."""

    def compute():
        d, nums = m.scaled(w)
        return _unscale(d, kernels.mobius(nums, m.n))

    return _memo(m, ("mobius", w), compute)


def mobius_transform(m, w):
    """Non-zero Möbius masses of ``b(w, .)``: ``{mask: mass}``."""
    return {X: v for X, v in enumerate(mobius_table(m, w)) if v != 0}


def validate_belief(m):
    report = ValidationReport()
    n = m.n
    full = ws.full(n)
    for w in range(n):
        name = m.worlds[w]
        row = m.capacity[w]
        if row[0] != 0:
            report.add(w, "empty", f"world {name}: b(empty set) is {format_rational(row[0])}, not 0")
        if row[full] != 1:
            report.add(w, "whole", f"world {name}: b(W) is {format_rational(row[full])}, not 1")
        bad = next((X for X, v in enumerate(row) if not 0 <= v <= 1), None)
        if bad is not None:
            report.add(
                w,
                "range",
                f"world {name}: b({ws.key_for(bad, m.worlds)}) = {format_rational(row[bad])} outside [0, 1]",
            )
        d, nums = m.scaled(w)
        hit = kernels.monotonicity_violation(nums, n)
        if hit is not None:
            X, bit = hit
            report.add(
                w,
                "monotonicity",
                f"world {name}: b({ws.show(X | bit, m.worlds)}) = {format_rational(row[X | bit])} "
                f"< b({ws.show(X, m.worlds)}) = {format_rational(row[X])}",
            )
        masses = mobius_table(m, w)
        neg = next((X for X, v in enumerate(masses) if v < 0), None)
        if neg is not None:
            report.add(
                w,
                "mass",
                f"world {name}: negative mass {format_rational(masses[neg])} on {ws.show(neg, m.worlds)}",
            )
    full_valuation = ws.full(n)
    for atom, mask in m.valuation.items():
        if mask & ~full_valuation or mask < 0:
            report.add(None, "valuation", f"atom {atom!r} names worlds outside the model")
    return report


def superadditivity_violation(m, w):
    """First disjoint ``(A, B)`` with ``b(A | B) < b(A) + b(B)``, or None."""
    d, nums = m.scaled(w)
    return kernels.superadditivity_violation(nums, m.n)


# -- neighbourhoods ----------------------------------------------------------


def neighbourhood_family(m, w, alpha, strict=False):
    """Bitset of ``N>=alpha(w)`` (``N>alpha(w)`` when strict); bit ``X`` means set ``X``."""
    alpha = Fraction(alpha)
    d, nums = m.scaled(w)
    return kernels.threshold_family(nums, m.n, alpha.denominator, alpha.numerator * d, strict)


def neighbourhood(m, w, alpha, strict=False):
    """``N>=alpha(w)`` (or ``N>alpha(w)``) as an ascending list of masks."""
    return ws.family_members(neighbourhood_family(m, w, alpha, strict))


def core(m, w):
    """The intersection of ``N_1(w)``, the sets believed with certainty."""

    def compute():
        out = ws.full(m.n)
        for X, v in enumerate(m.capacity[w]):
            if v == 1:
                out &= X
        return out

    return _memo(m, ("core", w), compute)


def realized_values(m, w):
    return sorted(set(m.capacity[w]) | {Fraction(0), Fraction(1)})


def _lacking(n, i):
    """Family bitset of all masks without bit ``i``."""
    bit = 1 << i
    period = 2 * bit
    reps = (1 << n) // period
    # `bit` ones then `bit` zeros, repeated: a geometric series in 2**period
    return ((1 << bit) - 1) * (((1 << (period * reps)) - 1) // ((1 << period) - 1))


def _is_monotone(fam, n, lacking):
    full_fam = (1 << (1 << n)) - 1
    for i in range(n):
        moved = (fam & lacking[i]) << (1 << i)
        if moved & ~fam & full_fam:
            return False
    return True


def _complement_family(fam, n):
    width = 1 << n
    return int(format(fam, f"0{width}b")[::-1], 2)


@dataclass
class NestingReport:
    world: int
    grid: list[Fraction]
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures


def nested_check(m, w):
    """Check nesting, monotonicity and closure of the derived neighbourhoods.

    Inclusions are checked between neighbouring grid values; ``N>=`` and
    ``N>`` are each chains, so the remaining pairs follow by transitivity.
    Complement closure is only checked for ``N>=0``: ``N_1`` contains ``W``
    but never the empty set.
    """
    n = m.n
    grid = realized_values(m, w)
    report = NestingReport(w, grid)
    fail = report.failures.append
    lacking = [_lacking(n, i) for i in range(n)]
    geq = {a: neighbourhood_family(m, w, a) for a in grid}
    gt = {a: neighbourhood_family(m, w, a, strict=True) for a in grid if a < 1}
    for a in grid:
        if not _is_monotone(geq[a], n, lacking):
            fail(f"N>={format_rational(a)} is not monotone")
        if a in gt:
            if not _is_monotone(gt[a], n, lacking):
                fail(f"N>{format_rational(a)} is not monotone")
            if gt[a] & ~geq[a]:
                fail(f"N>{format_rational(a)} not inside N>={format_rational(a)}")
    for lo, hi in zip(grid, grid[1:]):
        if geq[hi] & ~geq[lo]:
            fail(f"N>={format_rational(hi)} not inside N>={format_rational(lo)}")
        if geq[hi] & ~gt[lo]:
            fail(f"N>={format_rational(hi)} not inside N>{format_rational(lo)}")
        if hi in gt and gt[hi] & ~gt[lo]:
            fail(f"N>{format_rational(hi)} not inside N>{format_rational(lo)}")

    everything = (1 << (1 << n)) - 1
    if geq[Fraction(0)] != everything:
        fail("N>=0 is not the whole powerset")
    if _complement_family(geq[Fraction(0)], n) != geq[Fraction(0)]:
        fail("N>=0 is not closed under complement")
    certain = ws.family_members(geq[Fraction(1)])
    c = core(m, w)
    if not geq[Fraction(1)] >> c & 1:
        fail(f"N_1 does not contain its core {ws.show(c, m.worlds)}")
    if len(certain) <= 256:
        members = set(certain)
        for i, X in enumerate(certain):
            for Y in certain[i + 1 :]:
                if X & Y not in members:
                    fail(f"N_1 not closed under intersection: {ws.show(X & Y, m.worlds)}")
                    break
                if X | Y not in members:
                    fail(f"N_1 not closed under union: {ws.show(X | Y, m.worlds)}")
                    break
    return report


# -- elementary sets ---------------------------------------------------------


def elementary_sets(m, w):
    """Inclusion-minimal sets of positive belief, with their values.

    Returns ``[(mask, b(w, mask)), ...]`` in ascending mask order.
    """

    def compute():
        d, nums = m.scaled(w)
        return [(E, m.capacity[w][E]) for E in kernels.minimal_positive(nums, m.n)]

    return _memo(m, ("elementary", w), compute)


def interior(m, w, X):
    out = 0
    for E, _ in elementary_sets(m, w):
        if E & ~X == 0:
            out |= E
    return out


def is_well_defined(m, w, X):
    return X & core(m, w) == interior(m, w, X)


@dataclass
class AdditivityReport:
    additive_elementary: bool
    additive_direct: bool
    elementary_witness: tuple[int, Fraction] | None = None
    direct_witness: tuple[int, int, int] | None = None
    note: str | None = None

    def describe(self, worlds):
        lines = [
            f"additive (elementary sets sum to 1): {str(self.additive_elementary).lower()}",
            f"additive (disjoint pairs): {str(self.additive_direct).lower()}",
        ]
        if self.elementary_witness is not None:
            w, deficit = self.elementary_witness
            lines.append(f"  world {worlds[w]}: elementary sets fall short of 1 by {format_rational(deficit)}")
        if self.direct_witness is not None:
            w, A, B = self.direct_witness
            lines.append(
                f"  world {worlds[w]}: b({ws.show(A | B, worlds)}) != "
                f"b({ws.show(A, worlds)}) + b({ws.show(B, worlds)})"
            )
        if self.note:
            lines.append(f"  note: {self.note}")
        return lines


def elementary_sum(m, w):
    return sum((v for _, v in elementary_sets(m, w)), Fraction(0))


def additivity(m):
    """Report both additivity criteria side by side; they are not equivalent."""
    elem_witness = None
    direct_witness = None
    for w in range(m.n):
        total = elementary_sum(m, w)
        if total != 1 and elem_witness is None:
            elem_witness = (w, 1 - total)
        if direct_witness is None:
            d, nums = m.scaled(w)
            hit = kernels.additivity_violation(nums, m.n)
            if hit is not None:
                direct_witness = (w, hit[0], hit[1])
    report = AdditivityReport(
        additive_elementary=elem_witness is None,
        additive_direct=direct_witness is None,
        elementary_witness=elem_witness,
        direct_witness=direct_witness,
    )
    if report.additive_elementary != report.additive_direct:
        report.note = DISCREPANCY_NOTE
    return report


# -- satisfaction ------------------------------------------------------------


def _atom_set(m, name):
    try:
        return m.valuation[name]
    except KeyError:
        if name == RESERVED_ATOM:
            return 0
        raise UnknownAtom(f"atom {name!r} has no valuation") from None


def additive_at(m, w, X):
    """``b(w, X) + b(w, W \\ X) == 1``."""
    return m.capacity[w][X] + m.capacity[w][ws.full(m.n) & ~X] == 1


def _modal_holds(m, w, f, X):
    v = m.capacity[w][X]
    if isinstance(f, BelGt):
        return v > f.alpha
    if v < f.alpha:
        return False
    return not isinstance(f, PrGeq) or additive_at(m, w, X)


def truth_set_n(m, f):
    cache = m._truth
    hit = cache.get(f)
    if hit is not None:
        return hit
    if isinstance(f, Atom):
        out = _atom_set(m, f.name)
    elif isinstance(f, Not):
        out = ws.full(m.n) & ~truth_set_n(m, f.arg)
    elif isinstance(f, Or):
        out = truth_set_n(m, f.left) | truth_set_n(m, f.right)
    else:
        X = truth_set_n(m, f.arg)
        out = 0
        for w in range(m.n):
            if _modal_holds(m, w, f, X):
                out |= 1 << w
    cache[f] = out
    return out


def satisfies_n(m, w, f):
    if isinstance(f, Atom):
        return bool(_atom_set(m, f.name) >> w & 1)
    if isinstance(f, Not):
        return not satisfies_n(m, w, f.arg)
    if isinstance(f, Or):
        return satisfies_n(m, w, f.left) or satisfies_n(m, w, f.right)
    return _modal_holds(m, w, f, truth_set_n(m, f.arg))
