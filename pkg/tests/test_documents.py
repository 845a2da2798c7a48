import json
import re
from fractions import Fraction

import pytest
from hypothesis import given, settings

from probmodal import documents
from probmodal.belief import BeliefNbhdModel
from probmodal.documents import DocumentError
from probmodal.kripke import ProbKripkeModel
from strategies import belief_models, kripke_models

F = Fraction


def kripke_doc(**changes):
    doc = {"type": "kripke", "worlds": ["a", "b"], "mu": [["1/2", "0.5"], ["0", "1"]], "valuation": {"p": ["a"]}}
    doc.update(changes)
    return doc


class TestLoad:
    def test_kripke(self):
        k = documents.load(kripke_doc())
        assert isinstance(k, ProbKripkeModel)
        assert k.mu == ((F(1, 2), F(1, 2)), (0, 1))
        assert k.valuation == {"p": 0b01}

    def test_mass_document(self):
        doc = {"type": "belief", "worlds": ["a", "b"], "mass": {"a": {"a": "1/2", "a b": "1/2"}, "b": {"b a": "1"}}}
        m = documents.load(doc)
        assert isinstance(m, BeliefNbhdModel)
        assert m.capacity[0] == (0, F(1, 2), 0, 1)
        assert m.capacity[1] == (0, 0, 0, 1)

    @pytest.mark.parametrize(
        "doc, message",
        [
            ([], "JSON object"),
            ({"type": "graph"}, "unknown model type"),
            (kripke_doc(extra=1), "unknown fields: extra"),
            (kripke_doc(worlds=[]), "non-empty"),
            (kripke_doc(worlds=["a", "a"]), "distinct"),
            (kripke_doc(mu=[["1"]]), "2 rows"),
            (kripke_doc(mu=[["1"], ["0", "1"]]), "row 0"),
            (kripke_doc(mu=[[0.5, 0.5], ["0", "1"]]), "mu[0]"),
            (kripke_doc(valuation={"p": ["z"]}), "unknown world"),
            (kripke_doc(valuation={"p": "a"}), "must be a list"),
            ({"type": "belief", "worlds": ["a"], "belief": {"a": {"z": "1"}}}, "unknown world 'z'"),
            ({"type": "belief", "worlds": ["a"], "belief": {}}, "no table for: a"),
            ({"type": "belief", "worlds": ["a"], "belief": {"a": {}, "b": {}}}, "unknown worlds: b"),
            ({"type": "belief", "worlds": ["a"]}, "exactly one"),
            ({"type": "belief", "worlds": ["a"], "belief": {"a": {"a": "1"}}, "mass": {}}, "exactly one"),
            ({"type": "belief", "worlds": ["a"], "mass": {"a": {"a": "1/2"}}}, "sum to 1/2"),
            ({"type": "belief", "worlds": ["a"], "belief": {"a": {"a": "1", "a ": "1"}}}, "given twice"),
            ({"type": "belief", "worlds": ["a"], "belief": {"a": {"a a": "1"}}}, "repeated"),
            ({"type": "belief", "worlds": [f"w{i}" for i in range(17)], "belief": {}}, "cap of 16"),
        ],
    )
    def test_rejects(self, doc, message):
        with pytest.raises(DocumentError, match=re.escape(message)):
            documents.load(doc)

    def test_malformed_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{")
        with pytest.raises(DocumentError, match="malformed JSON"):
            documents.read(path)


class TestFixtures:
    def test_shipped(self):
        assert documents.fixture_names() == ["ex1_kripke.json", "ex2_partial.json", "ex4_belief.json", "ex5_belief.json"]

    @pytest.mark.parametrize("name", ["ex1", "ex1_kripke", "ex1_kripke.json", "examples/ex1_kripke.json"])
    def test_resolution(self, name):
        assert documents.resolve(name).name == "ex1_kripke.json"

    def test_unknown(self):
        with pytest.raises(DocumentError, match="no such file"):
            documents.resolve("ex9")

    def test_local_file_wins(self, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        (tmp_path / "ex1").write_text(json.dumps(kripke_doc()))
        assert documents.read("ex1").worlds == ("a", "b")


class TestRoundTrip:
    @settings(max_examples=60, deadline=None)
    @given(kripke_models())
    def test_kripke(self, k):
        assert documents.load(json.loads(json.dumps(documents.dump(k)))) == k

    @settings(max_examples=60, deadline=None)
    @given(belief_models())
    def test_belief_tables_and_masses(self, m):
        for form in ("belief", "mass"):
            assert documents.load(json.loads(json.dumps(documents.dump(m, form)))) == m

    def test_write(self, tmp_path):
        m = documents.read("ex4_belief")
        documents.write(m, tmp_path / "out.json", "mass")
        data = json.loads((tmp_path / "out.json").read_text())
        assert data["mass"]["w1"] == {"w2": "2/5", "w3": "3/5"}
        assert documents.read(tmp_path / "out.json") == m
