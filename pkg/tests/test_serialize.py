import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tightcm.classify import decompose
from tightcm.cmmod import RankTwoSpec, build_rank1, build_rank2
from tightcm.combinat import Rim, interlacing, model_rims
from tightcm.errors import BadParameters
from tightcm.serialize import (
    interlacing_from_json,
    interlacing_to_json,
    rep_from_json,
    rep_to_json,
    result_from_json,
    result_to_json,
    rim_from_json,
    rim_to_json,
    series_from_json,
    series_to_json,
    spec_from_json,
    spec_to_json,
    strip_witness,
)
from tightcm.series import SeriesRing

R = SeriesRing()
t, one, zero = R.t, R.one, R.zero


def through_text(obj):
    return json.loads(json.dumps(obj))


def test_series_format():
    s = one - t * Fraction(1, 2)
    assert series_to_json(s) == ["1", "-1/2"]
    assert series_from_json(["1", "-1/2"], R) == s
    assert series_from_json([1, 0, "3/4"], R) == R.poly([1, 0, Fraction(3, 4)])
    assert series_to_json(zero) == ["0"]


@pytest.mark.parametrize("bad", [[], "1", [1.5], [True], ["x"], ["1/0"], [0] * 16 + [1]])
def test_series_rejects_bad_input(bad):
    with pytest.raises(BadParameters):
        series_from_json(bad, R)


def test_rim_format():
    assert rim_to_json(Rim(8, (1, 4, 5))) == {"n": 8, "members": [1, 4, 5]}
    assert rim_from_json({"n": 8, "members": [5, 1, 4]}) == Rim(8, (1, 4, 5))
    with pytest.raises(BadParameters):
        rim_from_json({"n": 8})
    with pytest.raises(BadParameters):
        rim_from_json({"n": 8, "members": [9]})


def test_spec_format():
    spec = RankTwoSpec.model((one, zero, t, zero, -one, zero, -t, zero))
    data = spec_to_json(spec)
    assert data["truncation"] == 16 and data["b"][2] == ["0", "1"]
    assert spec_from_json(through_text(data)) == spec
    assert spec_from_json(data, truncation=32) == spec.with_order(32)


def test_spec_rejects_bad_sum():
    data = {"I": {"n": 4, "members": [1, 3]}, "J": {"n": 4, "members": [2, 4]},
            "b": [["1"], ["0"], ["0"], ["0"]]}
    with pytest.raises(BadParameters):
        spec_from_json(data)


def test_rep_round_trip():
    for M in (build_rank1(Rim(5, (2, 3))),
              build_rank2(RankTwoSpec.model((one, -t, t, -one)))):
        assert rep_from_json(through_text(rep_to_json(M))) == M


def test_interlacing_round_trip():
    rep = interlacing(*model_rims(3))
    assert interlacing_from_json(through_text(interlacing_to_json(rep))) == rep


@pytest.mark.parametrize("b", [
    (one, zero, t, zero, -one, zero, -t, zero),
    (one, zero, R(-2), zero, one, zero),
    (zero, zero, zero, zero),
])
def test_result_round_trip(b):
    res = decompose(RankTwoSpec.model(b))
    data = through_text(result_to_json(res))
    back = result_from_json(data)
    assert back == res
    assert result_to_json(back) == data
    slim = through_text(result_to_json(res, with_witness=False))
    assert "witness" not in slim
    assert result_from_json(slim) == strip_witness(res)


def test_result_formats():
    split = result_to_json(decompose(RankTwoSpec.model((one, zero, t, zero, -one, zero, -t, zero))))
    assert split["verdict"] == "split"
    assert split["X"] == {"n": 8, "members": [1, 2, 4, 7]}
    assert set(split["witness"]) == {"phi", "w", "v"}
    ind = result_to_json(decompose(RankTwoSpec.model((one, zero, R(-2), zero, one, zero))))
    assert ind == {"verdict": "indecomposable", "S": [0, 1, 2], "failing_pair": [0, 1]}


@settings(max_examples=50, deadline=None)
@given(st.lists(st.fractions(max_denominator=9), min_size=1, max_size=16))
def test_series_round_trip(coeffs):
    s = R.poly(coeffs)
    assert series_from_json(through_text(series_to_json(s)), R) == s
