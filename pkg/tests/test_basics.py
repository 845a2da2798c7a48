from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from probmodal import worldsets as ws
from probmodal.rationals import RationalError, format_rational, parse_rational, parse_unit


class TestRationals:
    @pytest.mark.parametrize(
        "text, value",
        [("0.6", Fraction(3, 5)), ("3/5", Fraction(3, 5)), ("6/10", Fraction(3, 5)), ("1", Fraction(1)), (" 2 / 4 ", Fraction(1, 2))],
    )
    def test_parse(self, text, value):
        assert parse_rational(text) == value

    @pytest.mark.parametrize("bad", ["", "-1/2", "1e3", "0.", ".5", "a", 0.5, True, None, "1/0"])
    def test_rejects(self, bad):
        with pytest.raises(RationalError):
            parse_rational(bad)

    def test_unit_interval(self):
        assert parse_unit("1") == 1
        with pytest.raises(RationalError):
            parse_unit("3/2")

    def test_format(self):
        assert format_rational(Fraction(6, 10)) == "3/5"
        assert format_rational(Fraction(2, 1)) == "2"
        assert format_rational(Fraction(0)) == "0"
        assert format_rational(Fraction(3, 5), decimals=True) == "0.6"
        assert format_rational(Fraction(1, 3), decimals=True) == "0.333333333333"

    @given(st.fractions(min_value=0, max_value=100))
    def test_round_trip(self, x):
        assert parse_rational(format_rational(x)) == x


class TestWorldSets:
    def test_members_and_size(self):
        assert ws.members(0b1011) == [0, 1, 3]
        assert ws.size(0b1011) == 3

    def test_submasks(self):
        assert sorted(ws.submasks(0b101)) == [0, 1, 4, 5]

    def test_upset(self):
        fam = ws.upset(0b01, 2)
        assert ws.family_members(fam) == [0b01, 0b11]

    def test_keys(self):
        worlds = ("w1", "w2", "w3")
        index = {w: i for i, w in enumerate(worlds)}
        assert ws.key_for(0b101, worlds) == "w1 w3"
        assert ws.parse_key("w3 w1", index) == 0b101
        assert ws.parse_key("", index) == 0
        assert ws.show(0b110, worlds) == "{w2, w3}"
        with pytest.raises(KeyError):
            ws.parse_key("w9", index)
        with pytest.raises(ValueError):
            ws.parse_key("w1 w1", index)

    def test_size_cap(self):
        ws.check_size(16)
        with pytest.raises(ws.ModelTooLarge):
            ws.check_size(17)
