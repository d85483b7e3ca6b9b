import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ascentlab.core import (
    LatticePath,
    Permutation,
    first_ascent_position,
    is_123_avoiding,
    is_123_avoiding_reference,
    parse_permutation,
    position_of_max,
    regular_descent_length,
    right_to_left_maxima,
)

perms = st.integers(1, 12).flatmap(lambda n: st.permutations(range(1, n + 1)))


def test_permutation_rejects_bad_input():
    with pytest.raises(ValueError):
        Permutation([])
    with pytest.raises(ValueError):
        Permutation([1, 1, 2])
    with pytest.raises(ValueError):
        Permutation([0, 1])


@pytest.mark.parametrize(
    "text, expected",
    [
        ("76584213", (7, 6, 5, 8, 4, 2, 1, 3)),
        ("3 1 2", (3, 1, 2)),
        ("3,1,2", (3, 1, 2)),
        ("10, 1 2,3 4 5 6 7 8 9", (10, 1, 2, 3, 4, 5, 6, 7, 8, 9)),
    ],
)
def test_parse_permutation(text, expected):
    assert parse_permutation(text).entries == expected


def test_parse_rejects_garbage():
    for bad in ("", "12a", "1122"):
        with pytest.raises(ValueError):
            parse_permutation(bad)


def test_str_roundtrip():
    p = Permutation(range(12, 0, -1))
    assert parse_permutation(str(p)) == p
    assert str(parse_permutation("312")) == "312"


@pytest.mark.parametrize(
    "word, expected",
    [("76584213", True), ("123", False), ("321", True), ("312", True), ("132", True)],
)
def test_is_123_avoiding_examples(word, expected):
    assert is_123_avoiding(parse_permutation(word).entries) is expected


def test_fast_scan_matches_triple_scan_exhaustively():
    for n in range(1, 8):
        for p in itertools.permutations(range(1, n + 1)):
            assert is_123_avoiding(p) == is_123_avoiding_reference(p), p


@given(perms)
def test_fast_scan_matches_lis(p):
    # Longest increasing subsequence by patience-free DP.
    best = [1] * len(p)
    for j in range(len(p)):
        for i in range(j):
            if p[i] < p[j]:
                best[j] = max(best[j], best[i] + 1)
    assert is_123_avoiding(p) == (max(best) <= 2)


@pytest.mark.parametrize("word, k", [("321", 3), ("213", 2), ("132", 1), ("1", 1)])
def test_first_ascent(word, k):
    assert first_ascent_position(parse_permutation(word).entries) == k


@given(perms)
def test_first_ascent_range_and_descending(p):
    k = first_ascent_position(p)
    assert 1 <= k <= len(p)
    assert (k == len(p)) == (list(p) == sorted(p, reverse=True))


@pytest.mark.parametrize("word, k", [("321", 1), ("76584213", 4), ("213", 3)])
def test_position_of_max(word, k):
    assert position_of_max(parse_permutation(word).entries) == k


def test_rlm_worked_example():
    dec = right_to_left_maxima((7, 6, 5, 8, 4, 2, 1, 3))
    assert dec.values == (8, 4, 3)
    assert dec.words == ((7, 6, 5), (), (2, 1))
    assert [pos for pos, _ in dec.maxima] == [4, 5, 8]


def test_rlm_small_cases():
    assert right_to_left_maxima((3, 2, 1)).values == (3, 2, 1)
    assert right_to_left_maxima((3, 2, 1)).words == ((), (), ())
    dec = right_to_left_maxima((1, 3, 2))
    assert dec.values == (3, 2) and dec.words == ((1,), ())


@given(perms)
def test_rlm_reassembles(p):
    dec = right_to_left_maxima(p)
    assert dec.reassemble() == tuple(p)
    assert dec.values[0] == len(p)
    assert dec.maxima[-1] == (len(p), p[-1])
    assert all(a > b for a, b in zip(dec.values, dec.values[1:]))


def test_non_rlm_letters_decrease_in_avoiders(avoiders_by_n):
    for n, avs in avoiders_by_n.items():
        for p in avs:
            rest = [x for w in right_to_left_maxima(p).words for x in w]
            assert rest == sorted(rest, reverse=True), p


def test_regular_descent_length():
    assert regular_descent_length((4, 3, 1, 2)) == 2
    assert regular_descent_length((3, 1, 2)) == 1
    assert regular_descent_length((1, 3, 2)) == 0
    assert regular_descent_length((3, 2, 1)) == 3


class TestLatticePath:
    def test_xy_roundtrip(self):
        path = LatticePath.from_xy("XXXXYYYYXYXXXYYY")
        assert path.steps == "EEEENNNNENEEENNN"
        assert path.to_xy() == "XXXXYYYYXYXXXYYY"
        assert path.end == (8, 8)
        assert path.is_dyck(8)

    def test_goodness(self):
        assert LatticePath((0, 0), "EN").is_good()
        assert not LatticePath((0, 0), "NE").is_good()
        assert LatticePath((3, 1), "NN").is_good()
        assert not LatticePath((3, 1), "NNN").is_good()

    def test_dyck_requires_origin_and_diagonal(self):
        assert not LatticePath((1, 0), "EN").is_dyck()
        assert not LatticePath((0, 0), "EEN").is_dyck()

    def test_rejects_alphabet(self):
        with pytest.raises(ValueError):
            LatticePath((0, 0), "EX")
        with pytest.raises(ValueError):
            LatticePath.from_xy("XZ")
