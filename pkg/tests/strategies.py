"""Hypothesis strategies for models and formulas."""

from fractions import Fraction

from hypothesis import strategies as st

from probmodal.belief import from_mass
from probmodal.formula import Atom, BelGeq, BelGt, Not, Or, PrGeq
from probmodal.kripke import ProbKripkeModel

ATOMS = ("p", "q")


def names(n):
    return tuple(f"w{i + 1}" for i in range(n))


thresholds = st.builds(Fraction, st.integers(0, 10), st.just(10)) | st.sampled_from(
    [Fraction(0), Fraction(1), Fraction(1, 3), Fraction(2, 3), Fraction(1, 4)]
)


@st.composite
def kripke_models(draw, min_worlds=1, max_worlds=4, atoms=ATOMS):
    n = draw(st.integers(min_worlds, max_worlds))
    rows = []
    for _ in range(n):
        weights = draw(st.lists(st.integers(0, 4), min_size=n, max_size=n).filter(any))
        total = sum(weights)
        rows.append(tuple(Fraction(x, total) for x in weights))
    val = {a: draw(st.integers(0, (1 << n) - 1)) for a in atoms}
    return ProbKripkeModel(names(n), tuple(rows), val)


@st.composite
def mass_functions(draw, n, max_focal=4):
    focal = draw(st.lists(st.integers(1, (1 << n) - 1), min_size=1, max_size=max_focal))
    weights = draw(st.lists(st.integers(1, 5), min_size=len(focal), max_size=len(focal)))
    total = sum(weights)
    masses = {}
    for A, x in zip(focal, weights):
        masses[A] = masses.get(A, 0) + Fraction(x, total)
    return masses


@st.composite
def belief_models(draw, min_worlds=1, max_worlds=4, atoms=ATOMS, max_focal=4):
    n = draw(st.integers(min_worlds, max_worlds))
    masses = [draw(mass_functions(n, max_focal)) for _ in range(n)]
    val = {a: draw(st.integers(0, (1 << n) - 1)) for a in atoms}
    return from_mass(names(n), masses, val)


def formulas(atoms=ATOMS, max_leaves=8):
    leaves = st.sampled_from([Atom(a) for a in atoms])

    def extend(children):
        return (
            st.builds(Not, children)
            | st.builds(Or, children, children)
            | st.builds(PrGeq, thresholds, children)
            | st.builds(BelGeq, thresholds, children)
            | st.builds(BelGt, thresholds, children)
        )

    return st.recursive(leaves, extend, max_leaves=max_leaves)
