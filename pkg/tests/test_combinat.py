from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from tightcm.combinat import (
    Rim,
    height_profile,
    interlacing,
    model_reduction,
    model_rims,
    peaks,
    succ,
    valleys,
)
from tightcm.errors import BadParameters, NotTight


@st.composite
def rims(draw, max_n=9):
    n = draw(st.integers(1, max_n))
    members = draw(st.sets(st.integers(1, n)))
    return Rim(n, tuple(members))


@st.composite
def rim_pairs(draw, max_n=9):
    n = draw(st.integers(2, max_n))
    k = draw(st.integers(1, n - 1))
    labels = st.lists(st.integers(1, n), min_size=k, max_size=k, unique=True)
    return Rim(n, tuple(draw(labels))), Rim(n, tuple(draw(labels)))


def test_rim_sorts_and_validates():
    assert Rim(8, (5, 1, 4)).members == (1, 4, 5)
    with pytest.raises(BadParameters):
        Rim(8, (1, 1))
    with pytest.raises(BadParameters):
        Rim(8, (0, 2))
    with pytest.raises(BadParameters):
        Rim(4, (5,))


def test_succ_wraps():
    assert succ(8, 8) == 1
    assert succ(3, 8) == 4


def test_peaks_and_valleys_of_145():
    I = Rim(8, (1, 4, 5))
    assert peaks(I) == {3, 8}
    assert valleys(I) == {1, 5}


def test_peaks_of_initial_block():
    assert peaks(Rim(7, (1, 2, 3))) == {7}
    assert valleys(Rim(7, (1, 2, 3))) == {3}


def test_peaks_and_valleys_of_alternating_rim():
    I = Rim(8, (1, 3, 5, 7))
    assert peaks(I) == {2, 4, 6, 8}
    assert valleys(I) == {1, 3, 5, 7}


def test_height_profiles():
    assert height_profile(Rim(8, (1, 4, 5))) == (0, -1, 0, 1, 0, -1, 0, 1, 2)
    assert height_profile(Rim(5, ())) == (0, 1, 2, 3, 4, 5)
    assert height_profile(Rim(6, (1, 3, 5))) == (0, -1, 0, -1, 0, -1, 0)


def test_interlacing_examples():
    rep = interlacing(Rim(6, (1, 3, 5)), Rim(6, (2, 4, 6)))
    assert (rep.r, rep.tight) == (3, True)
    assert rep.i_positions == (1, 3, 5) and rep.j_positions == (2, 4, 6)
    same = interlacing(Rim(4, (1, 2)), Rim(4, (1, 2)))
    assert (same.r, same.tight) == (0, True)
    rep = interlacing(Rim(6, (1, 2, 5)), Rim(6, (2, 4, 6)))
    assert (rep.r, rep.tight) == (2, True)


def test_non_tight_pair():
    rep = interlacing(Rim(4, (1, 2)), Rim(4, (3, 4)))
    assert rep.r == 1 and not rep.tight
    with pytest.raises(NotTight):
        model_reduction(Rim(4, (1, 2)), Rim(4, (3, 4)))


def test_interlacing_needs_matching_sizes():
    with pytest.raises(BadParameters):
        interlacing(Rim(6, (1, 2)), Rim(6, (1, 2, 3)))
    with pytest.raises(BadParameters):
        interlacing(Rim(6, (1,)), Rim(7, (1,)))


def test_model_reduction_with_empty_labels():
    red = model_reduction(Rim(8, (1, 4, 6)), Rim(8, (2, 5, 7)))
    assert red.r == 3
    assert red.position_map == (1, 2, 4, 5, 6, 7)
    assert red.common == () and red.empty == (3, 8)


def test_model_reduction_of_model_is_identity():
    red = model_reduction(*model_rims(4))
    assert red.position_map == tuple(range(1, 9))
    assert [red.model_vertex(v) for v in range(8)] == list(range(8))


def test_model_reduction_with_common_label():
    red = model_reduction(Rim(6, (1, 2, 4)), Rim(6, (2, 3, 5)))
    assert red.r == 2 and red.common == (2,) and red.empty == (6,)
    assert red.position_map == (1, 3, 4, 5)


def test_model_vertex_collapses_scalar_edges():
    red = model_reduction(Rim(8, (1, 4, 6)), Rim(8, (2, 5, 7)))
    # edges 3 and 8 are scalar, so vertices on either side share a model vertex
    assert red.model_vertex(2) == red.model_vertex(3)
    assert red.model_vertex(7) == red.model_vertex(0) == 0


@given(rims())
def test_peaks_and_valleys_have_equal_size(rim):
    assert len(peaks(rim)) == len(valleys(rim))


@given(rims())
def test_height_profile_ends_at_n_minus_2k(rim):
    h = height_profile(rim)
    assert len(h) == rim.n + 1 and h[-1] == rim.n - 2 * rim.k


@given(rim_pairs())
def test_interlacing_is_symmetric(pair):
    I, J = pair
    a, b = interlacing(I, J), interlacing(J, I)
    assert (a.r, a.tight) == (b.r, b.tight)


@given(rim_pairs())
def test_tight_reduction_preserves_r(pair):
    I, J = pair
    rep = interlacing(I, J)
    if not rep.tight or rep.r == 0:
        return
    red = model_reduction(I, J)
    assert red.r == rep.r
    labels = set(red.position_map) | set(red.common) | set(red.empty)
    assert labels == set(range(1, I.n + 1))
    only_i = [p for p in red.position_map[0::2]]
    only_j = [p for p in red.position_map[1::2]]
    assert set(only_i) == set(I.members) - set(J.members)
    assert set(only_j) == set(J.members) - set(I.members)
    X, Y = model_rims(red.r)
    assert interlacing(X, Y).r == red.r


def test_model_peaks_are_r_in_number():
    for r in range(1, 6):
        I, _ = model_rims(r)
        assert peaks(I) == set(range(2, 2 * r + 1, 2))


def test_every_tight_pair_alternates_from_i():
    for n in range(2, 9):
        for k in range(1, n):
            subsets = [Rim(n, c) for c in combinations(range(1, n + 1), k)]
            for I in subsets:
                for J in subsets:
                    rep = interlacing(I, J)
                    if rep.tight and rep.r:
                        red = model_reduction(I, J)
                        cyc = sorted(red.position_map, key=lambda x: (x - red.position_map[0]) % n)
                        assert list(cyc) == list(red.position_map)
