"""Bounded modal equivalence between pointed models, plus random models.

Two pointed models are compared on every formula up to a modal depth,
with thresholds drawn from the values the two models actually realize.
Rather than enumerating formulas one by one, :func:`modally_equivalent`
works with classes: a pair of truth sets (one per model) stands for every
formula having exactly those truth sets, and one representative formula
is kept per class.  Each level is the Boolean closure of the previous
level's classes and the modal literals over them.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from . import worldsets as ws
from .belief import BeliefNbhdModel, additive_at, from_mass, is_well_defined, neighbourhood_family
from .formula import TOP, Atom, BelGeq, BelGt, Not, Or, PrGeq, formula_size, render
from .kripke import ProbKripkeModel, measure_table, successors

# Belief operators first: their witnesses say more about lower bounds.
OPERATORS = (BelGeq, BelGt, PrGeq)
ATOM_NAMES = "pqrstuvxyz"


class CorpusTooLarge(RuntimeError):
    pass


@dataclass
class EquivVerdict:
    equivalent: bool
    witness: object | None
    skipped: list = field(default_factory=list)
    depth: int = 0
    threshold_grid: list[Fraction] = field(default_factory=list)
    classes: int = 0


# -- thresholds --------------------------------------------------------------


def _values(model):
    if isinstance(model, BeliefNbhdModel):
        for row in model.capacity:
            yield from row
    else:
        for w in range(model.n):
            yield from measure_table(model, w)


def threshold_grid(*models):
    """Every realized measure value, closed under ``r -> 1 - r``, plus 0 and 1."""
    grid = {Fraction(0), Fraction(1)}
    for model in models:
        grid.update(_values(model))
    grid |= {1 - r for r in grid}
    return grid


# -- syntactic corpus --------------------------------------------------------


def _closure(generators, full, limit):
    """Boolean closure of ``[(key, formula)]`` under complement and union.

    Keys are bitmasks over a universe of size ``full.bit_length()``.
    Returns ``{key: representative}`` in discovery order.
    """
    reps = {}
    order = []
    frontier = []
    for key, f in generators:
        if key not in reps:
            reps[key] = f
            order.append(key)
            frontier.append(key)
    while frontier:
        found = []
        for x in frontier:
            c = full ^ x
            if c not in reps:
                f = reps[x]
                reps[c] = f.arg if isinstance(f, Not) else Not(f)
                found.append(c)
        snapshot = list(order)
        for x in frontier:
            for y in snapshot:
                u = x | y
                if u not in reps:
                    reps[u] = Or(reps[y], reps[x]) if y != x else reps[x]
                    found.append(u)
        order.extend(found)
        frontier = found
        if len(reps) > limit:
            raise CorpusTooLarge(f"more than {limit} formula classes")
    return reps


def propositional_classes(atoms):
    """One representative per truth table over ``atoms`` (sorted), small ones first."""
    atoms = sorted(atoms)
    k = len(atoms)
    rows = 1 << k
    full = (1 << rows) - 1
    gens = [(full, TOP)]
    for i, a in enumerate(atoms):
        key = 0
        for r in range(rows):
            if r >> i & 1:
                key |= 1 << r
        gens.append((key, Atom(a)))
    reps = _closure(gens, full, 1 << 16)
    return dict(sorted(reps.items(), key=lambda kv: (formula_size(kv[1]), render(kv[1]))))


def enumerate_formulas(atoms, depth, grid, limit=200_000):
    """Deterministic corpus up to ``depth``.

    Depth 0 is one formula per propositional truth table.  Each further
    level adds ``op(a, f)`` and its negation for every operator, threshold
    ``a`` in ``grid`` and non-constant ``f`` already in the corpus.
    """
    props = propositional_classes(atoms)
    full = max(props)
    corpus = list(props.values())
    seen = set(corpus)
    cores = [f for key, f in props.items() if key not in (0, full)]
    thresholds = sorted(grid)
    for _ in range(depth):
        added = []
        for op, alpha, f in product(OPERATORS, thresholds, cores):
            lit = op(alpha, f)
            for g in (lit, Not(lit)):
                if g not in seen:
                    seen.add(g)
                    added.append(g)
                    if len(seen) > limit:
                        raise CorpusTooLarge(f"corpus exceeds {limit} formulas")
        corpus.extend(added)
        cores = cores + added
    return corpus


# -- semantic comparison -----------------------------------------------------


class _Side:
    """Uniform access to either model kind."""

    def __init__(self, model):
        self.model = model
        self.n = model.n
        self.belief = isinstance(model, BeliefNbhdModel)
        if self.belief:
            self.tables = model.capacity
        else:
            self.tables = [measure_table(model, w) for w in range(model.n)]
        self.full = ws.full(self.n)
        self._wd = {}

    def atom(self, name):
        return self.model.valuation.get(name, 0)

    def prob_ok(self, w, X):
        return not self.belief or additive_at(self.model, w, X)

    def well_defined(self, X):
        if not self.belief:
            return True
        hit = self._wd.get(X)
        if hit is None:
            hit = all(is_well_defined(self.model, w, X) for w in range(self.n))
            self._wd[X] = hit
        return hit


def _modal_keys(sides, offsets, masks, op, grid):
    """Distinct truth-set keys of ``op(a, f)`` as ``a`` sweeps the grid.

    ``masks`` are the per-side truth sets of ``f``.  Returns
    ``[(key, alpha), ...]`` keeping the smallest threshold per key.
    """
    entries = []
    for side, off, X in zip(sides, offsets, masks):
        for w in range(side.n):
            value = side.tables[w][X]
            if op is PrGeq and not side.prob_ok(w, X):
                continue
            entries.append((value, 1 << (off + w)))
    entries.sort()
    key = 0
    for _, bit in entries:
        key |= bit
    strict = op is BelGt
    out = []
    last = None
    i = 0
    # grid ascending: worlds drop out once their value falls below the threshold
    for alpha in grid:
        while i < len(entries) and (entries[i][0] <= alpha if strict else entries[i][0] < alpha):
            key &= ~entries[i][1]
            i += 1
        if key != last:
            out.append((key, alpha))
            last = key
    return out


def _split(key, offsets, sides):
    return [key >> off & side.full for off, side in zip(offsets, sides)]


def modally_equivalent(a, b, depth=2, grid=None, max_classes=1 << 14):
    """Compare pointed models ``a = (model, world)`` and ``b`` up to ``depth``.

    A formula whose truth set is not well-defined at some world of a belief
    model is listed in ``skipped`` and not used under a modality.
    """
    (ma, wa), (mb, wb) = a, b
    wa, wb = ma.world_index(wa), mb.world_index(wb)
    atoms_a = {x for x in ma.valuation}
    atoms_b = {x for x in mb.valuation}
    if atoms_a != atoms_b:
        raise ValueError(f"atom vocabularies differ: {sorted(atoms_a ^ atoms_b)}")
    sides = [_Side(ma), _Side(mb)]
    offsets = [0, ma.n]
    full = ws.full(ma.n + mb.n)
    points = (1 << wa, 1 << (ma.n + wb))
    thresholds = sorted(grid if grid is not None else threshold_grid(ma, mb))
    verdict = EquivVerdict(True, None, [], depth, thresholds)

    def disagrees(key):
        return bool(key & points[0]) != bool(key & points[1])

    gens = [(full, TOP)]
    for name in sorted(atoms_a):
        gens.append((sides[0].atom(name) | sides[1].atom(name) << offsets[1], Atom(name)))
    for key, f in gens:
        if disagrees(key):
            verdict.equivalent, verdict.witness, verdict.depth = False, f, 0
            return verdict
    classes = _closure(gens, full, max_classes)
    literals = {}
    skipped = set()
    for level in range(1, depth + 1):
        new_gens = []
        for key, f in classes.items():
            if key in literals:
                continue
            masks = _split(key, offsets, sides)
            if not all(side.well_defined(X) for side, X in zip(sides, masks)):
                if key not in skipped:
                    skipped.add(key)
                    verdict.skipped.append(f)
                literals[key] = []
                continue
            found = []
            for op in OPERATORS:
                for lkey, alpha in _modal_keys(sides, offsets, masks, op, thresholds):
                    found.append((lkey, op(alpha, f)))
            literals[key] = found
            for lkey, g in found:
                if disagrees(lkey):
                    verdict.equivalent, verdict.witness, verdict.depth = False, g, level
                    verdict.classes = len(classes)
                    return verdict
            new_gens.extend(found)
        if level < depth:
            classes = _closure(list(classes.items()) + new_gens, full, max_classes)
    verdict.classes = len(classes)
    return verdict


def r_necessity_check(k, m):
    """True iff at every world ``N_1(w)`` is exactly the supersets of ``R(w)``."""
    if tuple(k.worlds) != tuple(m.worlds):
        raise ValueError("models have different world lists")
    for w in range(k.n):
        if neighbourhood_family(m, w, 1) != ws.upset(successors(k, w), k.n):
            return False
    return True


# -- generators --------------------------------------------------------------


def atom_names(count):
    if count <= len(ATOM_NAMES):
        return list(ATOM_NAMES[:count])
    return [f"p{i}" for i in range(count)]


def world_names(count):
    return [f"w{i + 1}" for i in range(count)]


def _valuation(rng, n, n_atoms):
    return {a: rng.getrandbits(n) for a in atom_names(n_atoms)}


def gen_kripke(n_worlds, n_atoms, seed, density=0.5, max_weight=5):
    """Random Kripke model; each successor is kept with probability ``density``."""
    ws.check_size(n_worlds)
    rng = random.Random(seed)
    rows = []
    for _ in range(n_worlds):
        support = [j for j in range(n_worlds) if rng.random() < density]
        if not support:
            support = [rng.randrange(n_worlds)]
        weights = {j: rng.randint(1, max_weight) for j in support}
        total = sum(weights.values())
        rows.append(tuple(Fraction(weights.get(j, 0), total) for j in range(n_worlds)))
    return ProbKripkeModel(tuple(world_names(n_worlds)), tuple(rows), _valuation(rng, n_worlds, n_atoms))


def gen_masses(n_worlds, seed, focal=3, singletons=False, max_weight=5):
    rng = random.Random(seed)
    masses = []
    for _ in range(n_worlds):
        count = rng.randint(1, focal)
        row = {}
        for _ in range(count):
            if singletons:
                A = 1 << rng.randrange(n_worlds)
            else:
                A = rng.randrange(1, 1 << n_worlds)
            row[A] = row.get(A, 0) + rng.randint(1, max_weight)
        total = sum(row.values())
        masses.append({A: Fraction(v, total) for A, v in row.items()})
    return masses, rng


def gen_belief(n_worlds, n_atoms, seed, focal=3, singletons=False, max_weight=5):
    """Random belief model drawn through a random mass function (always valid).

    ``focal`` bounds the number of focal sets per world; ``singletons``
    restricts them to single worlds, which makes the model additive.
    """
    ws.check_size(n_worlds)
    masses, rng = gen_masses(n_worlds, seed, focal, singletons, max_weight)
    return from_mass(tuple(world_names(n_worlds)), masses, _valuation(rng, n_worlds, n_atoms))


__all__ = [
    "CorpusTooLarge",
    "EquivVerdict",
    "enumerate_formulas",
    "gen_belief",
    "gen_kripke",
    "modally_equivalent",
    "propositional_classes",
    "r_necessity_check",
    "threshold_grid",
]
