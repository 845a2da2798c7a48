"""Conversions between probabilistic Kripke models and belief models."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import worldsets as ws
from .belief import (
    core,
    elementary_sets,
    elementary_sum,
    from_mass,
    is_well_defined,
    mobius_transform,
)
from .kripke import ProbKripkeModel, pr_measure, successors
from .rationals import format_rational


class NotAdditive(ValueError):
    """The elementary sets of some world do not carry total belief 1."""

    def __init__(self, world, deficit, name=None):
        label = name if name is not None else world
        super().__init__(
            f"not additive at world {label}: elementary sets sum to "
            f"{format_rational(1 - deficit)}, short of 1 by {format_rational(deficit)}"
        )
        self.world = world
        self.deficit = deficit


class PolicyError(ValueError):
    pass


@dataclass(frozen=True)
class SplitPolicy:
    """How belief in an elementary set is shared among its worlds.

    ``weights`` maps ``(world, elementary_mask)`` to one weight per member
    (ascending world index); sets without an entry are split uniformly.
    """

    kind: str = "uniform"
    weights: dict = field(default_factory=dict)

    @classmethod
    def uniform(cls):
        return cls("uniform")

    @classmethod
    def weighted(cls, weights):
        return cls("weighted", dict(weights))

    def shares(self, w, E):
        members = ws.members(E)
        given = self.weights.get((w, E)) if self.kind == "weighted" else None
        if given is None:
            return [Fraction(1, len(members))] * len(members)
        given = [Fraction(x) for x in given]
        if len(given) != len(members):
            raise PolicyError(
                f"world {w}: {len(given)} weights for an elementary set of {len(members)} worlds"
            )
        if any(x < 0 for x in given) or sum(given) != 1:
            raise PolicyError(f"world {w}: weights must be non-negative and sum to 1")
        return given


UNIFORM = SplitPolicy.uniform()


def kripke_to_belief(k):
    """Additive belief model whose elementary sets are the successor singletons."""
    ws.check_size(k.n)
    masses = []
    for w in range(k.n):
        masses.append({1 << j: k.mu[w][j] for j in ws.members(successors(k, w))})
    return from_mass(k.worlds, masses, k.valuation)


def belief_to_kripke(m, policy=UNIFORM):
    """Kripke model supported on each world's certainty core.

    Raises :class:`NotAdditive` when some world's elementary sets do not sum
    to 1, and ``ValueError`` when elementary sets overlap.
    """
    rows = []
    for w in range(m.n):
        total = elementary_sum(m, w)
        if total != 1:
            raise NotAdditive(w, 1 - total, m.worlds[w])
        row = [Fraction(0)] * m.n
        seen = 0
        for E, value in elementary_sets(m, w):
            if seen & E:
                raise ValueError(f"world {m.worlds[w]}: elementary sets overlap")
            seen |= E
            for j, share in zip(ws.members(E), policy.shares(w, E)):
                row[j] += value * share
        rows.append(tuple(row))
    return ProbKripkeModel(m.worlds, tuple(rows), m.valuation)


def compatible_kripke_sample(m, seed=0, spread=4):
    """A Kripke model whose measures dominate ``m`` on every set.

    Each Möbius mass ``m(A)`` is handed out over the worlds of ``A`` in
    proportions drawn from ``random.Random(seed)`` (integer weights in
    ``0..spread``), so ``pr(w, X) >= b(w, X)`` for every ``X``.
    """
    rng = random.Random(seed)
    rows = []
    for w in range(m.n):
        row = [Fraction(0)] * m.n
        for A, mass in sorted(mobius_transform(m, w).items()):
            if mass < 0:
                raise ValueError(
                    f"world {m.worlds[w]}: negative mass on {ws.show(A, m.worlds)}; "
                    "no compatible probability exists"
                )
            members = ws.members(A)
            draws = [rng.randint(0, spread) for _ in members]
            if not any(draws):
                draws[rng.randrange(len(draws))] = 1
            total = sum(draws)
            for j, d in zip(members, draws):
                row[j] += mass * Fraction(d, total)
        rows.append(tuple(row))
    return ProbKripkeModel(m.worlds, tuple(rows), m.valuation)


def compatibility_violation(k, m):
    """First ``(world, mask)`` where ``k`` fails to dominate ``m``, else None.

    Checks that each row is supported inside the certainty core and that
    ``pr(w, X) >= b(w, X)`` on every well-defined ``X``.  A support problem
    is reported with mask ``-1``.
    """
    if tuple(k.worlds) != tuple(m.worlds):
        raise ValueError("models have different world lists")
    for w in range(m.n):
        if successors(k, w) & ~core(m, w):
            return w, -1
        for X in range(1 << m.n):
            if is_well_defined(m, w, X) and pr_measure(k, w, X) < m.capacity[w][X]:
                return w, X
    return None


def is_compatible(k, m):
    return compatibility_violation(k, m) is None


__all__ = [
    "NotAdditive",
    "PolicyError",
    "SplitPolicy",
    "UNIFORM",
    "belief_to_kripke",
    "compatible_kripke_sample",
    "compatibility_violation",
    "is_compatible",
    "kripke_to_belief",
]
