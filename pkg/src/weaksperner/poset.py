"""Ranked posets stored by up-cover lists, plus builders and DOT export."""

from __future__ import annotations

from collections.abc import Hashable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Iterable

from .permutations import (
    all_permutations,
    check_n,
    length,
    weak_covers_up,
)

__all__ = [
    "RankedPoset", "RankProfile",
    "build_weak_order", "from_covers", "chain", "antichain", "disjoint_union",
    "rank_profile", "transitive_closure", "closure_pairs", "export_dot",
    "strong_order_closure",
]


@dataclass(frozen=True)
class RankedPoset:
    """
    A finite graded poset.

    Elements are numbered ``0..N-1``.  Indices within a rank are contiguous,
    and ranks appear in increasing order, so ``range(N)`` is a linear
    extension.  ``up_covers[x]`` lists the elements covering ``x``.
    """

    elements: tuple[Hashable, ...]
    rank_of: tuple[int, ...]
    up_covers: tuple[tuple[int, ...], ...]
    name: str = "P"
    _index: dict = field(default=None, repr=False, compare=False)  # type: ignore[assignment]
    _starts: tuple = field(default=(), repr=False, compare=False)

    def __post_init__(self) -> None:
        n = len(self.elements)
        if len(self.rank_of) != n or len(self.up_covers) != n:
            raise ValueError("elements, rank_of and up_covers must have equal length")
        if n == 0:
            raise ValueError("empty poset")
        if any(b < a for a, b in zip(self.rank_of, self.rank_of[1:])):
            raise ValueError("elements must be grouped by nondecreasing rank")
        if self.rank_of[0] != 0:
            raise ValueError("lowest rank must be 0")
        if any(b - a > 1 for a, b in zip(self.rank_of, self.rank_of[1:])):
            raise ValueError("every rank 0..r must be nonempty")
        for x, ups in enumerate(self.up_covers):
            for y in ups:
                if self.rank_of[y] != self.rank_of[x] + 1:
                    raise ValueError(f"cover {x}->{y} does not raise rank by one")
        index = {e: i for i, e in enumerate(self.elements)}
        if len(index) != n:
            raise ValueError("element labels must be distinct")
        object.__setattr__(self, "_index", index)
        starts = [0] * (self.rank_of[-1] + 2)
        for k in self.rank_of:
            starts[k + 1] += 1
        for k in range(1, len(starts)):
            starts[k] += starts[k - 1]
        object.__setattr__(self, "_starts", tuple(starts))

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def r(self) -> int:
        """Top rank."""
        return self.rank_of[-1]

    def index(self, element: Hashable) -> int:
        return self._index[element]

    def rank(self, k: int) -> range:
        """Element indices of rank ``k``."""
        if not 0 <= k <= self.r:
            raise ValueError(f"rank {k} outside 0..{self.r}")
        return range(self._starts[k], self._starts[k + 1])

    def ranks(self) -> list[range]:
        return [self.rank(k) for k in range(self.r + 1)]

    def cover_edges(self) -> list[tuple[int, int]]:
        return [(x, y) for x, ups in enumerate(self.up_covers) for y in ups]

    def down_covers(self) -> list[list[int]]:
        down: list[list[int]] = [[] for _ in self.elements]
        for x, ups in enumerate(self.up_covers):
            for y in ups:
                down[y].append(x)
        return down

    def height(self) -> int:
        """Number of elements in a longest chain (``r + 1`` for graded posets)."""
        return self.r + 1

    def relabel(self, order: Sequence[int], name: str | None = None) -> RankedPoset:
        """
        The same poset with elements renumbered; ``order`` lists old indices
        in their new order and must keep ranks nondecreasing.
        """
        new_of_old = {old: new for new, old in enumerate(order)}
        return RankedPoset(
            elements=tuple(self.elements[o] for o in order),
            rank_of=tuple(self.rank_of[o] for o in order),
            up_covers=tuple(
                tuple(sorted(new_of_old[y] for y in self.up_covers[o])) for o in order
            ),
            name=self.name if name is None else name,
        )


@dataclass(frozen=True)
class RankProfile:
    sizes: tuple[int, ...]
    symmetric: bool
    unimodal: bool

    @property
    def total(self) -> int:
        return sum(self.sizes)


def from_covers(
    elements: Sequence[Hashable],
    rank_of: Mapping[Hashable, int] | Sequence[int],
    covers: Iterable[tuple[Hashable, Hashable]],
    name: str = "P",
    sort_key=None,
) -> RankedPoset:
    """
    Build a :class:`RankedPoset` from labels, ranks and cover pairs ``(x, y)``
    meaning ``x`` is covered by ``y``.  Within a rank, elements are ordered by
    ``sort_key`` (default: the given order).
    """
    elements = list(elements)
    if not isinstance(rank_of, Mapping):
        rank_of = dict(zip(elements, rank_of))
    pos = {e: i for i, e in enumerate(elements)}
    key = sort_key if sort_key is not None else pos.__getitem__
    ordered = sorted(elements, key=lambda e: (rank_of[e], key(e)))
    index = {e: i for i, e in enumerate(ordered)}
    ups: list[list[int]] = [[] for _ in ordered]
    for x, y in covers:
        ups[index[x]].append(index[y])
    return RankedPoset(
        elements=tuple(ordered),
        rank_of=tuple(rank_of[e] for e in ordered),
        up_covers=tuple(tuple(sorted(u)) for u in ups),
        name=name,
    )


def build_weak_order(n: int) -> RankedPoset:
    """
    The weak order on S_n, ranked by length, lexicographic within each rank.

    >>> P = build_weak_order(3)
    >>> [str(w) for w in P.elements]
    ['123', '132', '213', '231', '312', '321']
    >>> rank_profile(P).sizes
    (1, 2, 2, 1)
    """
    check_n(n)
    perms = list(all_permutations(n))
    lengths = {w: length(w) for w in perms}
    covers = [(w, v) for w in perms for _, v in weak_covers_up(w)]
    # all_permutations is lexicographic, so the default in-rank key suffices
    return from_covers(perms, lengths, covers, name=f"weak_order({n})")


def chain(m: int) -> RankedPoset:
    """A chain with ``m`` elements ``0 < 1 < ... < m-1``."""
    return from_covers(range(m), list(range(m)), [(i, i + 1) for i in range(m - 1)],
                       name=f"chain({m})")


def antichain(m: int) -> RankedPoset:
    return from_covers(range(m), [0] * m, [], name=f"antichain({m})")


def disjoint_union(*posets: RankedPoset) -> RankedPoset:
    """Disjoint union; labels become ``(summand index, label)``."""
    elements, ranks, covers = [], [], []
    for s, P in enumerate(posets):
        labels = [(s, e) for e in P.elements]
        elements.extend(labels)
        ranks.extend(P.rank_of)
        covers.extend((labels[x], labels[y]) for x, y in P.cover_edges())
    return from_covers(elements, ranks, covers,
                       name="+".join(P.name for P in posets))


def rank_profile(P: RankedPoset) -> RankProfile:
    sizes = [0] * (P.r + 1)
    for k in P.rank_of:
        sizes[k] += 1
    return RankProfile(tuple(sizes), _is_symmetric(sizes), _is_unimodal(sizes))


def _is_symmetric(sizes: Sequence[int]) -> bool:
    return list(sizes) == list(reversed(sizes))


def _is_unimodal(sizes: Sequence[int]) -> bool:
    i = 0
    while i + 1 < len(sizes) and sizes[i] <= sizes[i + 1]:
        i += 1
    while i + 1 < len(sizes) and sizes[i] >= sizes[i + 1]:
        i += 1
    return i == len(sizes) - 1


def transitive_closure(P: RankedPoset) -> list[int]:
    """
    Strict order as bit rows: bit ``y`` of ``above[x]`` is set iff ``x < y``.

    Accumulated in reverse topological order over the cover lists.
    """
    above = [0] * len(P)
    for x in range(len(P) - 1, -1, -1):
        acc = 0
        for y in P.up_covers[x]:
            acc |= above[y] | (1 << y)
        above[x] = acc
    return above


def closure_pairs(P: RankedPoset, above: list[int] | None = None) -> set[tuple[int, int]]:
    """The strict order as a set of index pairs ``(x, y)`` with ``x < y``."""
    if above is None:
        above = transitive_closure(P)
    pairs = set()
    for x, row in enumerate(above):
        while row:
            low = row & -row
            pairs.add((x, low.bit_length() - 1))
            row ^= low
    return pairs


def strong_order_closure(n: int) -> tuple[RankedPoset, list[int]]:
    """
    Strong (Bruhat) order on S_n, indexed like :func:`build_weak_order`,
    together with its closure bit rows.
    """
    from .permutations import strong_covers_down

    perms = list(all_permutations(n))
    lengths = {w: length(w) for w in perms}
    covers = [(v, w) for w in perms for _, v in strong_covers_down(w)]
    P = from_covers(perms, lengths, covers, name=f"strong_order({n})")
    return P, transitive_closure(P)


def _dot_id(label: Hashable) -> str:
    s = str(label).replace('"', '\\"')
    return f'"{s}"'


def export_dot(
    P: RankedPoset,
    edge_labels: Mapping[tuple[int, int], int] | None = None,
    *,
    edges: Iterable[tuple[int, int]] | None = None,
    graph_name: str | None = None,
) -> str:
    """
    Render ``P`` as a DOT digraph with ``rankdir=BT`` and one same-rank group
    per rank.

    ``edges`` defaults to the up-cover edges.  Any other directed edge set on
    the elements (for instance the downward edges of a lowering operator) may
    be passed instead.  ``edge_labels`` keys must be edges of that set.
    """
    edge_list = sorted(set(P.cover_edges() if edges is None else edges))
    edge_set = set(edge_list)
    labels = dict(edge_labels or {})
    for e in labels:
        if e not in edge_set:
            raise ValueError(f"label given for non-edge {e}")
    name = graph_name or P.name
    lines = [f"digraph {_dot_id(name)} {{", "  rankdir=BT;"]
    for x, lab in enumerate(P.elements):
        lines.append(f"  {_dot_id(lab)};")
    for rng in P.ranks():
        members = " ".join(_dot_id(P.elements[x]) for x in rng)
        lines.append(f"  {{ rank=same; {members} }}")
    for x, y in edge_list:
        attr = f' [label="{labels[(x, y)]}"]' if (x, y) in labels else ""
        lines.append(f"  {_dot_id(P.elements[x])} -> {_dot_id(P.elements[y])}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"
