from collections import deque
from itertools import product

import pytest
from hypothesis import given, strategies as st

from weaksperner.permutations import (
    MAX_N,
    Permutation,
    all_permutations,
    apply_simple,
    apply_transposition,
    crossing_count,
    from_lehmer_code,
    lehmer_code,
    length,
    strong_covers_down,
    strong_covers_down_by_length,
    weak_covers_down,
    weak_covers_up,
)

P = Permutation.from_string


def perms(n_max=6):
    return st.integers(1, n_max).flatmap(
        lambda n: st.permutations(range(1, n + 1)).map(lambda w: Permutation(tuple(w))))


def cayley_distances(n):
    """BFS over right multiplication by simple transpositions."""
    start = tuple(range(1, n + 1))
    dist = {start: 0}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for i in range(n - 1):
            v = list(w)
            v[i], v[i + 1] = v[i + 1], v[i]
            v = tuple(v)
            if v not in dist:
                dist[v] = dist[w] + 1
                queue.append(v)
    return dist


def test_rejects_non_permutations():
    with pytest.raises(ValueError):
        Permutation((1, 1, 2))
    with pytest.raises(ValueError):
        Permutation((0, 1))


def test_positions_are_one_based():
    w = P("312")
    assert (w[1], w[2], w[3]) == (3, 1, 2)
    with pytest.raises(IndexError):
        w[0]


@pytest.mark.parametrize("word, expected", [("123", 0), ("321", 3), ("312", 2)])
def test_length_examples(word, expected):
    assert length(P(word)) == expected


@pytest.mark.parametrize("n", range(1, 7))
def test_length_is_cayley_distance(n):
    dist = cayley_distances(n)
    assert all(length(Permutation(w)) == d for w, d in dist.items())
    assert max(dist.values()) == n * (n - 1) // 2


@pytest.mark.parametrize("word, expected", [
    ("1234", (0, 0, 0, 0)),
    ("4321", (3, 2, 1, 0)),
    ("312", (2, 0, 0)),
])
def test_lehmer_code_examples(word, expected):
    assert lehmer_code(P(word)) == expected


def test_lehmer_rejects_out_of_box():
    with pytest.raises(ValueError):
        from_lehmer_code((3, 0, 0))


@given(perms())
def test_lehmer_sum_and_last_entry(w):
    code = lehmer_code(w)
    assert code[-1] == 0
    assert sum(code) == length(w)
    assert all(0 <= c <= w.n - 1 - i for i, c in enumerate(code))


@pytest.mark.parametrize("word, i, expected", [("123", 1, "213"), ("213", 2, "231")])
def test_apply_simple_examples(word, i, expected):
    assert apply_simple(P(word), i) == P(expected)


@pytest.mark.parametrize("word, i, j, expected", [("231", 1, 3, "132"), ("312", 1, 3, "213")])
def test_apply_transposition_examples(word, i, j, expected):
    assert apply_transposition(P(word), i, j) == P(expected)


@pytest.mark.parametrize("bad", [0, 3])
def test_apply_simple_range(bad):
    with pytest.raises(ValueError):
        apply_simple(P("123"), bad)


@pytest.mark.parametrize("i, j", [(2, 2), (3, 1), (0, 2), (1, 4)])
def test_apply_transposition_range(i, j):
    with pytest.raises(ValueError):
        apply_transposition(P("123"), i, j)


@given(perms(), st.data())
def test_actions_are_involutions_and_change_length_by_one(w, data):
    if w.n < 2:
        return
    i = data.draw(st.integers(1, w.n - 1))
    v = apply_simple(w, i)
    assert apply_simple(v, i) == w
    expected = 1 if w[i] < w[i + 1] else -1
    assert length(v) - length(w) == expected
    a = data.draw(st.integers(1, w.n - 1))
    b = data.draw(st.integers(a + 1, w.n))
    assert apply_transposition(apply_transposition(w, a, b), a, b) == w


def test_weak_covers_up_examples():
    assert weak_covers_up(P("123")) == [(1, P("213")), (2, P("132"))]
    assert weak_covers_up(P("321")) == []
    assert weak_covers_up(P("213")) == [(2, P("231"))]


@given(perms())
def test_weak_cover_counts(w):
    ups = weak_covers_up(w)
    downs = weak_covers_down(w)
    assert len(ups) + len(downs) == max(w.n - 1, 0)
    assert all(length(v) == length(w) + 1 for _, v in ups)


def test_strong_covers_down_examples():
    assert strong_covers_down(P("312")) == [((1, 2), P("132")), ((1, 3), P("213"))]
    assert strong_covers_down(P("123")) == []
    assert strong_covers_down(P("231")) == [((1, 3), P("132")), ((2, 3), P("213"))]


@pytest.mark.parametrize("n", range(1, 7))
def test_strong_cover_criterion_matches_length_recomputation(n):
    for w in all_permutations(n):
        assert strong_covers_down(w) == strong_covers_down_by_length(w)


@pytest.mark.parametrize("n", range(2, 7))
def test_weak_down_covers_are_adjacent_strong_covers(n):
    for w in all_permutations(n):
        strong = {(ij, v) for ij, v in strong_covers_down(w)}
        weak = {((i, i + 1), v) for i, v in weak_covers_down(w)}
        assert weak <= strong
        assert {e for e in strong if e[0][1] == e[0][0] + 1} == weak


@pytest.mark.parametrize("word, i, j, expected", [
    ("231", 2, 3, 1),
    ("312", 1, 2, 0),
    ("321", 2, 3, 0),
])
def test_crossing_count_examples(word, i, j, expected):
    assert crossing_count(P(word), i, j) == expected


def test_crossing_count_requires_inversion():
    with pytest.raises(ValueError):
        crossing_count(P("123"), 1, 2)


@pytest.mark.parametrize("n", range(2, 7))
def test_strong_cover_weights_positive_odd(n):
    for w in all_permutations(n):
        for (i, j), _ in strong_covers_down(w):
            a = crossing_count(w, i, j)
            assert a <= w[i] - w[j] - 1
            c = 2 * (w[i] - w[j] - a) - 1
            assert c >= 1 and c % 2 == 1


def test_lehmer_code_bijection_onto_box():
    for n in range(1, 7):
        box = set(product(*(range(n - i) for i in range(n))))
        codes = {lehmer_code(w) for w in all_permutations(n)}
        assert codes == box
        for code in box:
            assert lehmer_code(from_lehmer_code(code)) == code


def test_n_bound():
    with pytest.raises(ValueError):
        next(all_permutations(MAX_N + 1))
    with pytest.raises(ValueError):
        next(all_permutations(0))


def test_str_and_ordering():
    assert str(P("2413")) == "2413"
    assert [str(w) for w in all_permutations(3)] == ["123", "132", "213", "231", "312", "321"]
