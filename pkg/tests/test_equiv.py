from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from probmodal import documents
from probmodal.belief import from_mass, vacuous, validate_belief
from probmodal.equiv import (
    enumerate_formulas,
    gen_belief,
    gen_kripke,
    modally_equivalent,
    propositional_classes,
    r_necessity_check,
    threshold_grid,
)
from probmodal.formula import Atom, modal_depth, render
from probmodal.kripke import validate_kripke
from probmodal.transform import compatible_kripke_sample, kripke_to_belief
from strategies import belief_models, kripke_models

F = Fraction


def corpus_disagreement(a, b, depth, grid):
    """First admissible corpus formula with different truth values at the two points."""
    (ma, wa), (mb, wb) = a, b
    for f in enumerate_formulas(sorted(ma.valuation), depth, grid):
        if not (oracles.admissible(ma, f) and oracles.admissible(mb, f)):
            continue
        if (wa in oracles.truth(ma, f)) != (wb in oracles.truth(mb, f)):
            return f
    return None


class TestCorpus:
    def test_single_atom_depth_one(self):
        corpus = enumerate_formulas(["p"], 1, {F(1, 2)})
        assert len(corpus) == 4 + 3 * 2 * 2
        assert [render(f) for f in corpus[:4]] == ["p", "!p", "T", "F"]
        assert "Bel>1/2 !p" in {render(f) for f in corpus}

    def test_depth_bound(self):
        corpus = enumerate_formulas(["p", "q"], 2, {F(0), F(1)})
        assert max(modal_depth(f) for f in corpus) == 2
        assert len(corpus) == len(set(corpus))

    def test_propositional_classes_are_all_truth_tables(self):
        assert len(propositional_classes(["p", "q"])) == 16

    def test_threshold_grid_is_closed_under_complement(self):
        grid = threshold_grid(documents.read("ex1"))
        assert grid == {F(0), F(1, 10), F(2, 5), F(3, 5), F(9, 10), F(1)}
        assert all(1 - r in grid for r in grid)


class TestExamples:
    def test_kripke_and_its_belief_model(self):
        v = modally_equivalent((documents.read("ex1"), "w1"), (documents.read("ex4_belief"), "w1"), 2)
        assert v.equivalent and v.witness is None and v.skipped == []

    def test_different_worlds_are_separated(self):
        k = documents.read("ex1")
        v = modally_equivalent((k, "w1"), (k, "w2"), 1)
        assert not v.equivalent and v.depth == 0
        assert v.witness == Atom("p")

    def test_example_five_against_a_sample(self):
        m = documents.read("ex5_belief")
        k = compatible_kripke_sample(m, seed=0)
        v = modally_equivalent((m, "w1"), (k, "w1"), 1)
        assert not v.equivalent
        assert render(v.witness) == "Bel>=2/5 p"
        assert "w1" not in oracles.truth(m, v.witness)
        assert "w1" in oracles.truth(k, v.witness)

    def test_vocabularies_must_match(self):
        k = documents.read("ex1")
        with pytest.raises(ValueError, match="vocabularies"):
            modally_equivalent((k, "w1"), (vacuous(k.worlds, {"p": 1}), "w1"))

    def test_ill_defined_operands_are_skipped(self):
        m = from_mass(("w1", "w2", "w3"), [{0b011: F(1, 2), 0b110: F(1, 2)}] * 3, {"p": 0b001})
        v = modally_equivalent((m, "w1"), (m, "w1"), 1)
        assert v.equivalent
        assert Atom("p") in v.skipped


class TestAgainstCorpus:
    @settings(max_examples=40, deadline=None)
    @given(kripke_models(max_worlds=3, atoms=("p",)), belief_models(max_worlds=3, atoms=("p",)), st.data())
    def test_depth_one_is_exact(self, k, m, data):
        wa = data.draw(st.sampled_from(k.worlds))
        wb = data.draw(st.sampled_from(m.worlds))
        grid = threshold_grid(k, m)
        v = modally_equivalent((k, wa), (m, wb), 1, grid)
        hit = corpus_disagreement((k, wa), (m, wb), 1, grid)
        assert v.equivalent == (hit is None)

    @settings(max_examples=25, deadline=None)
    @given(belief_models(max_worlds=3, atoms=("p",)), belief_models(max_worlds=3, atoms=("p",)))
    def test_depth_two_witnesses_are_genuine(self, ma, mb):
        grid = {F(0), F(1, 2), F(1)} | {F(1, 3), F(2, 3)}
        v = modally_equivalent((ma, "w1"), (mb, "w1"), 2, grid)
        hit = corpus_disagreement((ma, "w1"), (mb, "w1"), 2, grid)
        if hit is not None:
            assert not v.equivalent
        if not v.equivalent:
            f = v.witness
            assert modal_depth(f) <= 2
            assert oracles.admissible(ma, f) and oracles.admissible(mb, f)
            assert ("w1" in oracles.truth(ma, f)) != ("w1" in oracles.truth(mb, f))

    @settings(max_examples=40, deadline=None)
    @given(kripke_models(max_worlds=3))
    def test_conversions_are_equivalent(self, k):
        m = kripke_to_belief(k)
        for w in k.worlds:
            v = modally_equivalent((k, w), (m, w), 2)
            assert v.equivalent and not v.skipped


class TestNecessity:
    def test_certainty_family_is_successor_upset(self):
        k = documents.read("ex1")
        assert r_necessity_check(k, kripke_to_belief(k))
        assert not r_necessity_check(k, vacuous(k.worlds, k.valuation))

    @settings(max_examples=50, deadline=None)
    @given(kripke_models())
    def test_holds_for_every_conversion(self, k):
        assert r_necessity_check(k, kripke_to_belief(k))


class TestGenerators:
    def test_deterministic(self):
        assert gen_kripke(4, 2, 7) == gen_kripke(4, 2, 7)
        assert gen_belief(4, 2, 7) == gen_belief(4, 2, 7)
        assert gen_kripke(4, 2, 7) != gen_kripke(4, 2, 8)

    @pytest.mark.parametrize("seed", range(20))
    def test_valid(self, seed):
        assert validate_kripke(gen_kripke(5, 2, seed)).valid
        assert validate_belief(gen_belief(5, 2, seed)).valid

    def test_single_world(self):
        k = gen_kripke(1, 1, 0)
        assert k.mu == ((F(1),),)
