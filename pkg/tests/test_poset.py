from collections import deque

import pytest

from weaksperner.permutations import Permutation, all_permutations, ascents, length
from weaksperner.poset import (
    RankedPoset,
    antichain,
    build_weak_order,
    chain,
    closure_pairs,
    disjoint_union,
    export_dot,
    from_covers,
    rank_profile,
    strong_order_closure,
    transitive_closure,
)

P3 = build_weak_order(3)


def idx(P, word):
    return P.index(Permutation.from_string(word))


def reachable_pairs(P):
    """Path existence by BFS from every element (oracle for the closure)."""
    pairs = set()
    for x in range(len(P)):
        seen = set()
        queue = deque(P.up_covers[x])
        while queue:
            y = queue.popleft()
            if y in seen:
                continue
            seen.add(y)
            queue.extend(P.up_covers[y])
        pairs |= {(x, y) for y in seen}
    return pairs


def mahonian(n):
    coeffs = [1]
    for i in range(1, n):
        new = [0] * (len(coeffs) + i)
        for a, c in enumerate(coeffs):
            for b in range(i + 1):
                new[a + b] += c
        coeffs = new
    return tuple(coeffs)


def test_weak_order_n3():
    assert len(P3) == 6
    assert rank_profile(P3).sizes == (1, 2, 2, 1)
    assert len(P3.cover_edges()) == 6
    assert P3.r == 3


def test_weak_order_n1():
    P = build_weak_order(1)
    assert len(P) == 1 and P.r == 0 and P.cover_edges() == []


def test_weak_order_n4_profile():
    prof = rank_profile(build_weak_order(4))
    assert prof.sizes == (1, 3, 5, 6, 5, 3, 1)
    assert prof.symmetric and prof.unimodal


@pytest.mark.parametrize("n", range(1, 7))
def test_cover_edge_count(n):
    P = build_weak_order(n)
    brute = sum(len(ascents(w)) for w in all_permutations(n))
    assert len(P.cover_edges()) == brute
    assert 2 * brute == (n - 1) * len(P)


@pytest.mark.parametrize("n", range(1, 8))
def test_rank_sizes_are_mahonian(n):
    assert rank_profile(build_weak_order(n)).sizes == mahonian(n)


def test_in_rank_order_is_lexicographic():
    P = build_weak_order(4)
    for rng in P.ranks():
        words = [P.elements[x].word for x in rng]
        assert words == sorted(words)
    assert all(P.rank_of[x] == length(w) for x, w in enumerate(P.elements))


def test_profiles_of_small_posets():
    prof = rank_profile(chain(4))
    assert prof.sizes == (1, 1, 1, 1) and prof.symmetric and prof.unimodal
    P = from_covers("abcd", [0, 1, 1, 2], [("a", "b"), ("a", "c"), ("b", "d")])
    assert rank_profile(P).sizes == (1, 2, 1)
    skew = from_covers("abcd", [0, 0, 1, 1], [("a", "c"), ("b", "d")])
    assert not rank_profile(from_covers("abc", [0, 1, 1], [("a", "b"), ("a", "c")])).symmetric
    assert rank_profile(skew).symmetric


def test_unimodality_flag():
    bad = from_covers(range(5), [0, 1, 1, 2, 3],
                      [(0, 1), (0, 2), (1, 3), (3, 4)])
    prof = rank_profile(bad)
    assert prof.sizes == (1, 2, 1, 1)
    assert prof.unimodal and not prof.symmetric
    valley = from_covers(range(5), [0, 0, 1, 2, 2], [(0, 2), (1, 2), (2, 3), (2, 4)])
    assert not rank_profile(valley).unimodal


def test_invalid_posets_rejected():
    with pytest.raises(ValueError):
        RankedPoset(("a", "b"), (0, 2), ((1,), ()))
    with pytest.raises(ValueError):
        RankedPoset(("a", "b"), (0, 1), ((), (0,)))
    with pytest.raises(ValueError):
        RankedPoset(("a", "a"), (0, 0), ((), ()))


def test_closure_examples_w3():
    pairs = closure_pairs(P3)
    bottom = idx(P3, "123")
    assert {y for x, y in pairs if x == bottom} == set(range(1, 6))
    a, b = idx(P3, "213"), idx(P3, "132")
    assert (a, b) not in pairs and (b, a) not in pairs
    assert len(pairs) == len(reachable_pairs(P3)) == 11


@pytest.mark.parametrize("n", range(1, 6))
def test_closure_matches_bfs(n):
    P = build_weak_order(n)
    pairs = closure_pairs(P)
    assert pairs == reachable_pairs(P)
    assert all(x != y for x, y in pairs)
    for x, y in pairs:
        for z in range(len(P)):
            if (y, z) in pairs:
                assert (x, z) in pairs


@pytest.mark.parametrize("n", range(2, 6))
def test_closure_on_consecutive_ranks_is_cover_relation(n):
    P = build_weak_order(n)
    pairs = closure_pairs(P)
    consecutive = {(x, y) for x, y in pairs if P.rank_of[y] == P.rank_of[x] + 1}
    assert consecutive == set(P.cover_edges())


@pytest.mark.parametrize("n", range(1, 6))
def test_weak_closure_inside_strong_closure(n):
    W = build_weak_order(n)
    S, above = strong_order_closure(n)
    assert S.elements == W.elements
    strong = closure_pairs(S, above)
    assert closure_pairs(W) <= strong


def test_strong_order_closure_count_n3():
    S, above = strong_order_closure(3)
    assert len(closure_pairs(S, above)) == 13


def test_transitive_closure_bitrows():
    above = transitive_closure(chain(4))
    assert above == [0b1110, 0b1100, 0b1000, 0]


def test_disjoint_union():
    U = disjoint_union(chain(2), antichain(3))
    assert len(U) == 5
    assert rank_profile(U).sizes == (4, 1)
    assert len(closure_pairs(U)) == 1


def test_dot_export_u_weights_w3():
    from weaksperner.sl2 import build_U

    U = build_U(P3)
    labels = {(c, r): v for r, c, v in U.entries()}
    dot = export_dot(P3, labels)
    assert dot.startswith('digraph "weak_order(3)" {')
    assert "rankdir=BT;" in dot
    for edge in ['"123" -> "213" [label="1"]', '"123" -> "132" [label="2"]',
                 '"213" -> "231" [label="2"]', '"132" -> "312" [label="1"]',
                 '"231" -> "321" [label="1"]', '"312" -> "321" [label="2"]']:
        assert edge in dot
    assert dot.count("->") == 6
    assert '{ rank=same; "132" "213" }' in dot
    assert export_dot(P3, labels) == dot


def test_dot_export_single_point():
    dot = export_dot(build_weak_order(1))
    assert '"1";' in dot and "->" not in dot


def test_dot_export_rejects_label_on_non_edge():
    with pytest.raises(ValueError):
        export_dot(P3, {(0, 5): 1})
