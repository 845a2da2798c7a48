from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from probmodal import documents
from probmodal.belief import additivity, from_mass, vacuous, validate_belief
from probmodal.kripke import validate_kripke
from probmodal.transform import (
    NotAdditive,
    PolicyError,
    SplitPolicy,
    belief_to_kripke,
    compatibility_violation,
    compatible_kripke_sample,
    is_compatible,
    kripke_to_belief,
)
from strategies import belief_models, kripke_models

F = Fraction


@pytest.fixture
def ex1():
    return documents.read("ex1_kripke")


class TestForward:
    def test_example_four_values(self, ex1):
        m = kripke_to_belief(ex1)
        assert m.b(0, 0b0010) == F(2, 5)
        assert m.b(0, 0b0100) == F(3, 5)
        assert m.b(0, 0b0001) == 0
        assert m.b(0, 0b0101) == F(3, 5)
        assert m.b(0, 0b1111) == 1

    def test_matches_shipped_fixture(self, ex1):
        assert kripke_to_belief(ex1) == documents.read("ex4_belief")

    @settings(max_examples=100, deadline=None)
    @given(kripke_models())
    def test_belief_equals_probability(self, k):
        m = kripke_to_belief(k)
        assert validate_belief(m).valid
        report = additivity(m)
        assert report.additive_direct and report.additive_elementary
        for w in k.worlds:
            for X in oracles.powerset(k.worlds):
                assert oracles.bel(m, w, X) == oracles.pr(k, w, X)


class TestBackward:
    def test_example_four(self, ex1):
        k = belief_to_kripke(documents.read("ex4_belief"))
        assert k.mu[0] == (0, F(2, 5), F(3, 5), 0)
        assert k == ex1

    def test_example_five_is_refused(self):
        with pytest.raises(NotAdditive) as info:
            belief_to_kripke(documents.read("ex5_belief"))
        assert info.value.world == 0
        assert info.value.deficit == F(3, 10)
        assert "w1" in str(info.value)

    @settings(max_examples=100, deadline=None)
    @given(kripke_models())
    def test_round_trip(self, k):
        assert belief_to_kripke(kripke_to_belief(k)) == k

    def test_uniform_split_of_a_larger_elementary_set(self):
        # b gives 1 to {w1, w2} and 0 to every proper subset: one elementary set
        m = vacuous(("w1", "w2"))
        k = belief_to_kripke(m)
        assert k.mu == ((F(1, 2), F(1, 2)), (F(1, 2), F(1, 2)))
        assert validate_kripke(k).valid

    def test_weighted_split(self):
        m = vacuous(("w1", "w2"))
        policy = SplitPolicy.weighted({(0, 0b11): [F(1, 4), F(3, 4)]})
        k = belief_to_kripke(m, policy)
        assert k.mu[0] == (F(1, 4), F(3, 4))
        assert k.mu[1] == (F(1, 2), F(1, 2))

    @pytest.mark.parametrize("weights", [[F(1)], [F(1, 2), F(1, 4)], [F(3, 2), F(-1, 2)]])
    def test_bad_weights(self, weights):
        policy = SplitPolicy.weighted({(0, 0b11): weights})
        with pytest.raises(PolicyError):
            belief_to_kripke(vacuous(("w1", "w2")), policy)

    def test_overlapping_elementary_sets(self):
        masses = [{0b011: F(1, 2), 0b110: F(1, 2)}] * 3
        m = from_mass(("w1", "w2", "w3"), masses, {})
        with pytest.raises(ValueError, match="overlap"):
            belief_to_kripke(m)


class TestCompatibility:
    def test_example_five_sample(self):
        m = documents.read("ex5_belief")
        k = compatible_kripke_sample(m, seed=0)
        assert validate_kripke(k).valid
        assert is_compatible(k, m)

    @settings(max_examples=100, deadline=None)
    @given(belief_models(), st.integers(0, 1000))
    def test_samples_dominate(self, m, seed):
        k = compatible_kripke_sample(m, seed)
        assert validate_kripke(k).valid
        assert is_compatible(k, m)
        for w in m.worlds:
            for X in oracles.powerset(m.worlds):
                assert oracles.pr(k, w, X) >= oracles.bel(m, w, X)

    def test_seed_is_reproducible(self):
        m = documents.read("ex5_belief")
        assert compatible_kripke_sample(m, 3) == compatible_kripke_sample(m, 3)

    def test_violations_are_located(self, ex1):
        m = documents.read("ex5_belief")
        assert compatibility_violation(ex1, kripke_to_belief(ex1)) is None
        wrong = documents.load(
            {
                "type": "kripke",
                "worlds": ["w1", "w2", "w3", "w4"],
                "mu": [["0", "9/10", "1/10", "0"], ["2/5", "0", "3/5", "0"], ["0", "0", "1/10", "9/10"], ["0", "0", "0", "1"]],
                "valuation": {"p": ["w1", "w3"], "q": ["w1", "w2"]},
            }
        )
        assert compatibility_violation(wrong, m) == (0, 0b0100)
        assert compatibility_violation(documents.read("ex1"), vacuous(m.worlds, m.valuation)) is None
        outside = documents.load({**documents.dump(ex1), "mu": [["1", "0", "0", "0"]] + documents.dump(ex1)["mu"][1:]})
        assert compatibility_violation(outside, m) == (0, -1)
