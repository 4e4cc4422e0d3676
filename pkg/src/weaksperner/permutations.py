"""
Permutations of ``{1, ..., n}`` in one-line notation.

Positions are 1-based in every public function, so ``w[i]`` is the image of
position ``i``.  Internally the word is stored as a 0-based tuple.  Both the
simple transpositions ``s_i`` and the transpositions ``t_ij`` act on the right,
i.e. they swap the entries sitting at positions ``i`` and ``j``.

>>> w = Permutation.from_string("312")
>>> length(w), lehmer_code(w)
(2, (2, 0, 0))
>>> [(i, str(v)) for i, v in weak_covers_up(Permutation.from_string("123"))]
[(1, '213'), (2, '132')]
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations as _itertools_permutations
from typing import Iterator, Sequence

__all__ = [
    "MAX_N", "Permutation",
    "length", "lehmer_code", "from_lehmer_code",
    "apply_simple", "apply_transposition",
    "weak_covers_up", "weak_covers_down", "strong_covers_down",
    "strong_covers_down_by_length", "crossing_count",
    "all_permutations", "descents", "ascents",
]

# 9! = 362880 elements; anything larger is refused up front
MAX_N = 9


def check_n(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if n > MAX_N:
        raise ValueError(f"n={n} exceeds the configured bound MAX_N={MAX_N}")


@dataclass(frozen=True, order=True)
class Permutation:
    """An immutable permutation of ``{1..n}`` in one-line notation."""

    word: tuple[int, ...]

    def __post_init__(self) -> None:
        word = tuple(self.word)
        object.__setattr__(self, "word", word)
        if sorted(word) != list(range(1, len(word) + 1)):
            raise ValueError(f"{word!r} is not a permutation of 1..{len(word)}")

    @classmethod
    def from_string(cls, s: str) -> Permutation:
        """Parse compact notation such as ``"312"`` (only for n <= 9)."""
        return cls(tuple(int(c) for c in s))

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def longest(cls, n: int) -> Permutation:
        return cls(tuple(range(n, 0, -1)))

    @property
    def n(self) -> int:
        return len(self.word)

    def __getitem__(self, i: int) -> int:
        # 1-based position access
        if not 1 <= i <= len(self.word):
            raise IndexError(f"position {i} outside 1..{len(self.word)}")
        return self.word[i - 1]

    def __len__(self) -> int:
        return len(self.word)

    def __str__(self) -> str:
        if self.n <= 9:
            return "".join(map(str, self.word))
        return " ".join(map(str, self.word))

    def __repr__(self) -> str:
        return f"Permutation({str(self)!r})"


def length(w: Permutation) -> int:
    """Coxeter length, computed as the number of inversions."""
    word = w.word
    n = len(word)
    return sum(1 for i in range(n) for j in range(i + 1, n) if word[i] > word[j])


def lehmer_code(w: Permutation) -> tuple[int, ...]:
    """``L_i = #{j > i : w_j < w_i}`` for ``i = 1..n``."""
    word = w.word
    n = len(word)
    return tuple(
        sum(1 for j in range(i + 1, n) if word[j] < word[i]) for i in range(n)
    )


def from_lehmer_code(code: Sequence[int]) -> Permutation:
    """Inverse of :func:`lehmer_code`."""
    n = len(code)
    remaining = list(range(1, n + 1))
    word = []
    for i, c in enumerate(code):
        if not 0 <= c <= n - 1 - i:
            raise ValueError(f"entry {c} at position {i + 1} is outside 0..{n - 1 - i}")
        word.append(remaining.pop(c))
    return Permutation(tuple(word))


def _swap(word: tuple[int, ...], a: int, b: int) -> tuple[int, ...]:
    lst = list(word)
    lst[a], lst[b] = lst[b], lst[a]
    return tuple(lst)


def apply_simple(w: Permutation, i: int) -> Permutation:
    """Right multiplication by ``s_i``: swap positions ``i`` and ``i+1``."""
    if not 1 <= i <= w.n - 1:
        raise ValueError(f"simple transposition s_{i} undefined for n={w.n}")
    return Permutation(_swap(w.word, i - 1, i))


def apply_transposition(w: Permutation, i: int, j: int) -> Permutation:
    """Right multiplication by ``t_ij``: swap positions ``i < j``."""
    if not 1 <= i < j <= w.n:
        raise ValueError(f"need 1 <= i < j <= {w.n}, got i={i}, j={j}")
    return Permutation(_swap(w.word, i - 1, j - 1))


def ascents(w: Permutation) -> list[int]:
    word = w.word
    return [i + 1 for i in range(len(word) - 1) if word[i] < word[i + 1]]


def descents(w: Permutation) -> list[int]:
    word = w.word
    return [i + 1 for i in range(len(word) - 1) if word[i] > word[i + 1]]


def weak_covers_up(w: Permutation) -> list[tuple[int, Permutation]]:
    """Pairs ``(i, w s_i)`` over the ascents ``i`` of ``w``."""
    return [(i, apply_simple(w, i)) for i in ascents(w)]


def weak_covers_down(w: Permutation) -> list[tuple[int, Permutation]]:
    return [(i, apply_simple(w, i)) for i in descents(w)]


def strong_covers_down(w: Permutation) -> list[tuple[tuple[int, int], Permutation]]:
    """
    All ``((i, j), w t_ij)`` with ``l(w t_ij) = l(w) - 1``.

    A pair ``i < j`` qualifies when ``w_i > w_j`` and no position strictly
    between them carries a value strictly between ``w_j`` and ``w_i``.
    """
    word = w.word
    n = len(word)
    out = []
    for i in range(n):
        wi = word[i]
        # smallest value seen between i and j that is still below w_i;
        # (i, j) is a cover iff w_j < w_i and w_j > every such value
        floor = 0
        for j in range(i + 1, n):
            wj = word[j]
            if wj < wi and wj > floor:
                out.append(((i + 1, j + 1), Permutation(_swap(word, i, j))))
                floor = wj
    return out


def strong_covers_down_by_length(w: Permutation) -> list[tuple[tuple[int, int], Permutation]]:
    """Same edge set as :func:`strong_covers_down`, found by recomputing lengths."""
    ell = length(w)
    out = []
    for i in range(1, w.n + 1):
        for j in range(i + 1, w.n + 1):
            v = apply_transposition(w, i, j)
            if length(v) == ell - 1:
                out.append(((i, j), v))
    return out


def crossing_count(w: Permutation, i: int, j: int) -> int:
    """``#{k < i : w_j < w_k < w_i}`` for a pair with ``i < j`` and ``w_i > w_j``."""
    if not 1 <= i < j <= w.n:
        raise ValueError(f"need 1 <= i < j <= {w.n}, got i={i}, j={j}")
    wi, wj = w[i], w[j]
    if wi < wj:
        raise ValueError(f"({i}, {j}) is not an inversion of {w}")
    return sum(1 for k in range(i - 1) if wj < w.word[k] < wi)


def all_permutations(n: int) -> Iterator[Permutation]:
    """All of S_n in lexicographic order of one-line notation."""
    check_n(n)
    for p in _itertools_permutations(range(1, n + 1)):
        yield Permutation(p)
