"""
The raising operator U, lowering operator D and weight operator H on the
span of S_n, with exact checks of the sl2 commutation relations.

U sends ``w`` to the sum of ``i * w s_i`` over ascents ``i``.  D sends ``w`` to
the sum of ``c(w, w t_ij) * w t_ij`` over strong down-covers, where

    c(w, w t_ij) = 2 * (w_i - w_j - #{k < i : w_j < w_k < w_i}) - 1.

H is diagonal with ``2 l(w) - n(n-1)/2`` at ``w``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Iterator

from .exactlinalg import IntMatrix, multiply
from .permutations import (
    Permutation,
    apply_simple,
    apply_transposition,
    crossing_count,
    lehmer_code,
    length,
    strong_covers_down,
    weak_covers_up,
)
from .poset import RankedPoset, RankProfile, build_weak_order, rank_profile

__all__ = [
    "Sl2Triple", "Sl2Report", "RelationResidual", "IrrepDecomposition", "Diamond",
    "build_U", "build_D", "build_H", "build_triple",
    "weight_c", "weight_c_lehmer", "verify_sl2",
    "raising_power_block", "decompose", "diamonds",
]


def _perm_n(P: RankedPoset) -> int:
    first = P.elements[0]
    if not isinstance(first, Permutation):
        raise TypeError("operator needs a poset on permutations (build_weak_order)")
    return first.n


def _check_strong_cover(w: Permutation, i: int, j: int) -> None:
    if not 1 <= i < j <= w.n:
        raise ValueError(f"need 1 <= i < j <= {w.n}, got ({i}, {j})")
    wi, wj = w[i], w[j]
    if wi < wj or any(wj < w[k] < wi for k in range(i + 1, j)):
        raise ValueError(f"w t_{i}{j} is not a strong down-cover of {w}")


def weight_c(w: Permutation, i: int, j: int) -> int:
    """
    Coefficient of ``w t_ij`` in ``D w``.

    >>> weight_c(Permutation.from_string("312"), 1, 2)
    3
    """
    _check_strong_cover(w, i, j)
    return 2 * (w[i] - w[j] - crossing_count(w, i, j)) - 1


def weight_c_lehmer(w: Permutation, i: int, j: int) -> int:
    """The same coefficient as the L1 distance between Lehmer codes of ``w``, ``w t_ij``."""
    _check_strong_cover(w, i, j)
    a = lehmer_code(w)
    b = lehmer_code(apply_transposition(w, i, j))
    return abs(a[i - 1] - b[i - 1]) + abs(b[j - 1] - a[j - 1])


def build_U(P: RankedPoset) -> IntMatrix:
    """``U[w s_i, w] = i`` over the weak up-covers."""
    _perm_n(P)
    N = len(P)
    entries = {}
    for c, w in enumerate(P.elements):
        for i, v in weak_covers_up(w):
            entries[(P.index(v), c)] = i
    return IntMatrix(N, N, entries)


def build_D(P: RankedPoset) -> IntMatrix:
    """``D[w t_ij, w] = c(w, w t_ij)`` over the strong down-covers."""
    _perm_n(P)
    N = len(P)
    entries = {}
    for c, w in enumerate(P.elements):
        for (i, j), v in strong_covers_down(w):
            entries[(P.index(v), c)] = 2 * (w[i] - w[j] - crossing_count(w, i, j)) - 1
    return IntMatrix(N, N, entries)


def build_H(P: RankedPoset) -> IntMatrix:
    """Diagonal ``2 * rank - r``; for the weak order this is ``2 l(w) - C(n, 2)``."""
    return IntMatrix.diagonal([2 * k - P.r for k in P.rank_of])


@dataclass(frozen=True)
class Sl2Triple:
    U: IntMatrix
    D: IntMatrix
    H: IntMatrix
    basis: RankedPoset

    @property
    def r(self) -> int:
        return self.basis.r

    @property
    def n(self) -> int:
        return _perm_n(self.basis)


def build_triple(n_or_poset: int | RankedPoset) -> Sl2Triple:
    P = build_weak_order(n_or_poset) if isinstance(n_or_poset, int) else n_or_poset
    n = _perm_n(P)
    if P.r != comb(n, 2):
        raise ValueError("poset is not the full weak order")
    return Sl2Triple(build_U(P), build_D(P), build_H(P), P)


@dataclass(frozen=True)
class RelationResidual:
    relation: str
    max_abs_residual: int
    nonzero_entries: int
    first_offending: tuple[str, str] | None = None   # (row element, column element)

    @property
    def holds(self) -> bool:
        return self.max_abs_residual == 0

    def to_dict(self) -> dict:
        return {
            "relation": self.relation,
            "holds": self.holds,
            "max_abs_residual": str(self.max_abs_residual),
            "nonzero_entries": self.nonzero_entries,
            "first_offending": list(self.first_offending) if self.first_offending else None,
        }


@dataclass(frozen=True)
class Sl2Report:
    n: int
    dimension: int
    residuals: tuple[RelationResidual, ...]

    @property
    def ok(self) -> bool:
        return all(r.holds for r in self.residuals)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "dimension": self.dimension,
            "ok": self.ok,
            "relations": [r.to_dict() for r in self.residuals],
        }


def _residual(name: str, R: IntMatrix, P: RankedPoset) -> RelationResidual:
    first = None
    if not R.is_zero():
        r, c, _ = min(R.entries(), key=lambda e: (e[1], e[0]))
        first = (str(P.elements[r]), str(P.elements[c]))
    return RelationResidual(name, R.max_abs(), R.nnz, first)


def verify_sl2(T: Sl2Triple) -> Sl2Report:
    """Residuals of ``[H,U] - 2U``, ``[H,D] + 2D`` and ``[U,D] - H``, computed exactly."""
    U, D, H = T.U, T.D, T.H
    if not (U.shape == D.shape == H.shape) or U.rows != U.cols:
        raise RuntimeError("operator dimensions disagree")
    HU = multiply(H, U) - multiply(U, H) - U.scale(2)
    HD = multiply(H, D) - multiply(D, H) + D.scale(2)
    UD = multiply(U, D) - multiply(D, U) - H
    P = T.basis
    return Sl2Report(
        n=T.n,
        dimension=len(P),
        residuals=(
            _residual("[H,U] = 2U", HU, P),
            _residual("[H,D] = -2D", HD, P),
            _residual("[U,D] = H", UD, P),
        ),
    )


def _complement(w: Permutation) -> Permutation:
    # left multiplication by the longest element: w_i -> n + 1 - w_i
    return Permutation(tuple(w.n + 1 - x for x in w.word))


def raising_power_block(T: Sl2Triple, k: int, paired: bool = True) -> IntMatrix:
    """
    ``U^(r-2k)`` restricted to rank ``k``, as a square ``p_k x p_k`` matrix.

    Columns follow the in-rank order of rank ``k``.  With ``paired=True``
    row ``j`` is ``w0 * w`` for the column element ``w``, which fixes the
    determinant's sign independently of how rank ``r-k`` is sorted; with
    ``paired=False`` rows follow the in-rank order of rank ``r-k``.

    Computed by repeatedly applying U to each basis column.

    >>> raising_power_block(build_triple(3), 1).to_dense()
    [[1, 0], [0, 2]]
    """
    r = T.r
    if not 0 <= 2 * k < r:
        raise ValueError(f"need 0 <= k < r/2 with r={r}, got k={k}")
    P = T.basis
    src, tgt = P.rank(k), P.rank(r - k)
    if paired:
        row_of = {P.index(_complement(P.elements[c])): j for j, c in enumerate(src)}
    else:
        row_of = {c: j for j, c in enumerate(tgt)}
    cols = {}
    for j, c in enumerate(src):
        vec = {c: 1}
        for _ in range(r - 2 * k):
            vec = T.U.apply(vec)
        cols[j] = {row_of[row]: v for row, v in vec.items()}
    return IntMatrix._from_columns(len(tgt), len(src), cols)


@dataclass(frozen=True)
class IrrepDecomposition:
    """Multiplicity of each irreducible sl2 module, keyed by highest weight."""

    multiplicities: dict[int, int]
    dimension: int = field(default=0)

    def total_dimension(self) -> int:
        return sum((m + 1) * mult for m, mult in self.multiplicities.items())


def decompose(profile: RankProfile | RankedPoset) -> IrrepDecomposition:
    """
    Highest-weight multiplicities forced by the rank sizes: the irreducible of
    highest weight ``r - 2k`` occurs ``p_k - p_(k-1)`` times.

    >>> decompose(rank_profile(build_weak_order(3))).multiplicities
    {3: 1, 1: 1}
    """
    if isinstance(profile, RankedPoset):
        profile = rank_profile(profile)
    p = profile.sizes
    r = len(p) - 1
    if not profile.symmetric:
        raise ValueError("rank sizes are not symmetric, so they cannot be sl2 weight spaces")
    mult = {}
    for k in range(r // 2 + 1):
        m = p[k] - (p[k - 1] if k else 0)
        if m < 0:
            raise ValueError(
                "not consistent with an sl2-representation with these weight spaces "
                f"(p_{k} < p_{k - 1})")
        if m:
            mult[r - 2 * k] = m
    dec = IrrepDecomposition(mult, dimension=profile.total)
    if dec.total_dimension() != profile.total:
        raise ValueError("multiplicities do not account for every element")
    return dec


@dataclass(frozen=True)
class Diamond:
    """
    One cancelling pair of length-two paths from ``u`` to ``w != u``.

    Up-then-down: ``u -> v = u s_b -> w = v t_ij``.  Down-then-up:
    ``u -> x = u t -> w = x s_b``.
    """

    case: int
    u: Permutation
    v: Permutation
    w: Permutation
    x: Permutation
    b: int
    ij: tuple[int, int]
    t: tuple[int, int]
    # both stored as (up-edge weight, down-edge weight)
    up_down_weight: tuple[int, int]    # (U[v,u], D[w,v])
    down_up_weight: tuple[int, int]    # (U[w,x], D[x,u])


def _diamond_case(b: int, i: int, j: int) -> tuple[int, tuple[int, int]]:
    """Case number and the transposition ``t`` with ``x = u t``."""
    if b not in (i, j) and b + 1 not in (i, j):
        return 1, (i, j)
    if b == i:
        return 2, (i + 1, j)
    if b + 1 == i:
        return 3, (b, j)
    if b == j:
        return 4, (i, j + 1)
    return 5, (i, j - 1)


def diamonds(n: int) -> Iterator[Diamond]:
    """
    Every up-down path ``u -> u s_b -> w`` with ``w != u``, matched with its
    down-up partner.  Raises if the partner predicted by the case analysis is
    not a valid path.
    """
    for u in build_weak_order(n).elements:
        for b, v in weak_covers_up(u):
            for (i, j), w in strong_covers_down(v):
                if w == u:
                    continue
                case, t = _diamond_case(b, i, j)
                x = apply_transposition(u, *t)
                if length(x) != length(u) - 1 or x.word != apply_simple(w, b).word:
                    raise AssertionError(f"case {case} partner fails for u={u}, b={b}, ij={(i, j)}")
                if not x[b] < x[b + 1]:
                    raise AssertionError(f"x={x} has no ascent at {b}")
                yield Diamond(
                    case=case, u=u, v=v, w=w, x=x, b=b, ij=(i, j), t=t,
                    up_down_weight=(b, weight_c(v, i, j)),
                    down_up_weight=(b, weight_c(u, *t)),
                )
