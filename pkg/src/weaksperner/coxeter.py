"""
Finite Coxeter groups by exact matrix representations, and their weak orders.

Three exact realizations are used, chosen from the Coxeter matrix:

* every ``m_st`` in {2, 3, 4, 6}: the integer Cartan-matrix representation
  ``s_i(a_j) = a_j - A_ij a_i`` with ``A_ij A_ji = 4 cos^2(pi / m_ij)``;
* every ``m_st`` in {2, 3, 5}: the geometric representation over Q(sqrt 5),
  ``s_i(a_j) = a_j + 2 cos(pi / m_ij) a_i``;
* rank two with any other ``m``: the dihedral action on the vertices of a
  regular ``m``-gon, as permutation matrices.

Elements are found by breadth-first search from the identity, multiplying
by generators on the right, so the BFS depth is the Coxeter length.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, gcd
from typing import Sequence, Union

from .poset import RankedPoset, from_covers, rank_profile
from .sperner import SpernerCertificate, certify

__all__ = [
    "ENUMERATION_CAP", "LARGE_GROUP_THRESHOLD", "BudgetExceeded", "UnsupportedCoxeterType",
    "QSqrt5", "CoxeterSpec", "CoxeterWord", "GroupElement",
    "coxeter_type", "parse_coxeter", "parse_coxeter_matrix", "known_order",
    "reflection_representation", "enumerate_group", "build_weak_order_coxeter",
    "a_type_isomorphism", "conjecture_check", "element_order",
]

# refuse to enumerate beyond this many elements
ENUMERATION_CAP = 20000
# certification of larger groups (H4) must be requested explicitly
LARGE_GROUP_THRESHOLD = 5000


class BudgetExceeded(RuntimeError):
    pass


class UnsupportedCoxeterType(ValueError):
    pass


class QSqrt5:
    """
    Exact element ``(a + b*sqrt(5)) / d`` of Q(sqrt 5).

    Stored with integer ``a``, ``b`` and a positive denominator ``d`` in
    lowest terms, so equal numbers have equal representations.
    """

    __slots__ = ("num_a", "num_b", "den")

    def __init__(self, a: Fraction | int = 0, b: Fraction | int = 0):
        a, b = Fraction(a), Fraction(b)
        d = a.denominator * b.denominator // gcd(a.denominator, b.denominator)
        self._set(a.numerator * (d // a.denominator), b.numerator * (d // b.denominator), d)

    def _set(self, a: int, b: int, d: int) -> None:
        g = gcd(gcd(a, b), d)
        if g > 1:
            a, b, d = a // g, b // g, d // g
        self.num_a, self.num_b, self.den = a, b, d

    @classmethod
    def _raw(cls, a: int, b: int, d: int) -> QSqrt5:
        x = cls.__new__(cls)
        x._set(a, b, d)
        return x

    @property
    def a(self) -> Fraction:
        return Fraction(self.num_a, self.den)

    @property
    def b(self) -> Fraction:
        return Fraction(self.num_b, self.den)

    def _coerce(self, other) -> QSqrt5:
        return other if isinstance(other, QSqrt5) else QSqrt5(other)

    def __add__(self, other) -> QSqrt5:
        o = self._coerce(other)
        d1, d2 = self.den, o.den
        if d1 == d2:
            return QSqrt5._raw(self.num_a + o.num_a, self.num_b + o.num_b, d1)
        return QSqrt5._raw(self.num_a * d2 + o.num_a * d1, self.num_b * d2 + o.num_b * d1, d1 * d2)

    __radd__ = __add__

    def __neg__(self) -> QSqrt5:
        return QSqrt5._raw(-self.num_a, -self.num_b, self.den)

    def __sub__(self, other) -> QSqrt5:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> QSqrt5:
        return self._coerce(other) - self

    def __mul__(self, other) -> QSqrt5:
        o = self._coerce(other)
        a, b, c, d = self.num_a, self.num_b, o.num_a, o.num_b
        return QSqrt5._raw(a * c + 5 * b * d, a * d + b * c, self.den * o.den)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.num_b == 0 and self.a == other
        if not isinstance(other, QSqrt5):
            return NotImplemented
        return (self.num_a, self.num_b, self.den) == (other.num_a, other.num_b, other.den)

    def __hash__(self) -> int:
        return hash((self.num_a, self.num_b, self.den)) if self.num_b else hash(self.a)

    def __bool__(self) -> bool:
        return bool(self.num_a or self.num_b)

    def __repr__(self) -> str:
        return f"QSqrt5({self.a}, {self.b})"


Scalar = Union[int, QSqrt5]
Matrix = tuple[tuple[Scalar, ...], ...]

# 2 cos(pi/m) for the non-crystallographic entries we support
_TWO_COS = {2: QSqrt5(0), 3: QSqrt5(1), 5: QSqrt5(Fraction(1, 2), Fraction(1, 2))}
# (A_ij, A_ji) for i < j, product 4 cos^2(pi/m)
_CARTAN = {2: (0, 0), 3: (-1, -1), 4: (-1, -2), 6: (-1, -3)}


@dataclass(frozen=True)
class CoxeterSpec:
    label: str
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        M = self.matrix
        n = len(M)
        if n == 0:
            raise ValueError("Coxeter matrix must have rank at least 1")
        for i in range(n):
            if len(M[i]) != n:
                raise ValueError("Coxeter matrix must be square")
            if M[i][i] != 1:
                raise ValueError("Coxeter matrix must have 1 on the diagonal")
            for j in range(n):
                if M[i][j] != M[j][i]:
                    raise ValueError("Coxeter matrix must be symmetric")
                if i != j and M[i][j] < 2:
                    raise ValueError("off-diagonal Coxeter entries must be at least 2")

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def m(self, i: int, j: int) -> int:
        return self.matrix[i][j]


def _matrix_from_edges(rank: int, edges: dict[tuple[int, int], int]) -> tuple[tuple[int, ...], ...]:
    M = [[1 if i == j else 2 for j in range(rank)] for i in range(rank)]
    for (i, j), m in edges.items():
        M[i][j] = M[j][i] = m
    return tuple(map(tuple, M))


def coxeter_type(family: str, n: int) -> CoxeterSpec:
    """
    Coxeter matrix of a named finite type; for ``I`` the second argument is
    ``m`` and the rank is two.

    >>> coxeter_type("B", 3).matrix
    ((1, 3, 2), (3, 1, 4), (2, 4, 1))
    """
    family = family.upper()
    path = {(i, i + 1): 3 for i in range(n - 1)}
    if family == "A":
        if n < 1:
            raise ValueError("A_n needs n >= 1")
        return CoxeterSpec(f"A{n}", _matrix_from_edges(n, path))
    if family == "B":
        if n < 2:
            raise ValueError("B_n needs n >= 2")
        path[(n - 2, n - 1)] = 4
        return CoxeterSpec(f"B{n}", _matrix_from_edges(n, path))
    if family == "D":
        if n < 3:
            raise ValueError("D_n needs n >= 3")
        edges = {(i, i + 1): 3 for i in range(n - 2)}
        edges[(n - 3, n - 1)] = 3
        return CoxeterSpec(f"D{n}", _matrix_from_edges(n, edges))
    if family == "F" and n == 4:
        return CoxeterSpec("F4", _matrix_from_edges(4, {(0, 1): 3, (1, 2): 4, (2, 3): 3}))
    if family == "H" and n in (3, 4):
        edges = {(0, 1): 5, **{(i, i + 1): 3 for i in range(1, n - 1)}}
        return CoxeterSpec(f"H{n}", _matrix_from_edges(n, edges))
    if family == "E" and n in (6, 7, 8):
        edges = {(i, i + 1): 3 for i in range(n - 2)}
        edges[(2, n - 1)] = 3
        return CoxeterSpec(f"E{n}", _matrix_from_edges(n, edges))
    if family == "I":
        if n < 2:
            raise ValueError("I2(m) needs m >= 2")
        return CoxeterSpec(f"I2:{n}", ((1, n), (n, 1)))
    raise UnsupportedCoxeterType(f"unknown finite Coxeter type {family}{n}")


def parse_coxeter(text: str) -> CoxeterSpec:
    """Parse ``A4``, ``B3``, ``D4``, ``F4``, ``H3``, ``I2:7`` or ``I2(7)``."""
    s = text.strip().replace(" ", "")
    m = re.fullmatch(r"[Ii]2[:(](\d+)\)?", s)
    if m:
        return coxeter_type("I", int(m.group(1)))
    m = re.fullmatch(r"([A-Za-z])(\d+)", s)
    if not m:
        raise ValueError(f"cannot parse Coxeter type {text!r}")
    return coxeter_type(m.group(1), int(m.group(2)))


def parse_coxeter_matrix(text: str, label: str = "custom") -> CoxeterSpec:
    """
    Parse the plain-text Coxeter matrix format: the rank on the first line,
    then the strict upper triangle of ``m_st`` values in row order.
    """
    tokens = text.split()
    if not tokens:
        raise ValueError("empty Coxeter matrix text")
    rank = int(tokens[0])
    values = [int(t) for t in tokens[1:]]
    if len(values) != rank * (rank - 1) // 2:
        raise ValueError(f"expected {rank * (rank - 1) // 2} entries for rank {rank}, got {len(values)}")
    it = iter(values)
    edges = {(i, j): next(it) for i in range(rank) for j in range(i + 1, rank)}
    return CoxeterSpec(label, _matrix_from_edges(rank, edges))


def known_order(spec: CoxeterSpec) -> int | None:
    """Group order for labels of named types, else ``None``."""
    m = re.fullmatch(r"([A-Z])(\d+)", spec.label)
    if spec.label.startswith("I2:"):
        return 2 * int(spec.label[3:])
    if not m:
        return None
    fam, n = m.group(1), int(m.group(2))
    return {
        "A": lambda: factorial(n + 1),
        "B": lambda: 2 ** n * factorial(n),
        "D": lambda: 2 ** (n - 1) * factorial(n),
        "F": lambda: 1152,
        "H": lambda: {3: 120, 4: 14400}[n],
        "E": lambda: {6: 51840, 7: 2903040, 8: 696729600}[n],
    }[fam]()


def _identity(n: int, one: Scalar = 1, zero: Scalar = 0) -> Matrix:
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def _matmul(A: Matrix, B: Matrix) -> Matrix:
    Bt = list(zip(*B))
    return tuple(tuple(sum((a * b for a, b in zip(row, col)), start=0 * row[0]) for col in Bt)
                 for row in A)


def reflection_representation(spec: CoxeterSpec) -> list[Matrix]:
    """
    Exact generator matrices; each is an involution and ``s_i s_j`` has order
    ``m_ij``.
    """
    n = spec.rank
    ms = {spec.m(i, j) for i in range(n) for j in range(n) if i != j}
    if ms <= set(_CARTAN):
        A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                A[i][j], A[j][i] = _CARTAN[spec.m(i, j)]
        gens = []
        for i in range(n):
            M = [[int(r == c) for c in range(n)] for r in range(n)]
            for j in range(n):
                M[i][j] -= A[i][j]
            gens.append(tuple(map(tuple, M)))
        return gens
    if ms <= set(_TWO_COS):
        gens = []
        for i in range(n):
            M = [[QSqrt5(int(r == c)) for c in range(n)] for r in range(n)]
            for j in range(n):
                M[i][j] = QSqrt5(-1) if i == j else M[i][j] + _TWO_COS[spec.m(i, j)]
            gens.append(tuple(map(tuple, M)))
        return gens
    if n == 2:
        m = spec.m(0, 1)
        # reflections x -> -x and x -> 1 - x of Z/m; their product is a rotation of order m
        def perm_matrix(f):
            return tuple(tuple(int(f(c) % m == r) for c in range(m)) for r in range(m))
        return [perm_matrix(lambda x: -x), perm_matrix(lambda x: 1 - x)]
    raise UnsupportedCoxeterType(
        f"{spec.label}: no exact representation for Coxeter entries {sorted(ms)}")


def element_order(M: Matrix, limit: int = 1000) -> int:
    one = _identity(len(M), 1, 0)
    P = M
    for k in range(1, limit + 1):
        if P == one:
            return k
        P = _matmul(P, M)
    raise RuntimeError(f"order exceeds {limit}")


@dataclass(frozen=True, order=True)
class CoxeterWord:
    """Lexicographically least reduced word (generators numbered from 1)."""

    word: tuple[int, ...]

    def __str__(self) -> str:
        if not self.word:
            return "e"
        if max(self.word) <= 9:
            return "".join(map(str, self.word))
        return ".".join(map(str, self.word))


@dataclass(frozen=True)
class GroupElement:
    matrix: Matrix
    length: int
    word: CoxeterWord


def enumerate_group(spec: CoxeterSpec, cap: int = ENUMERATION_CAP) -> list[GroupElement]:
    """
    All elements by breadth-first search, in order of length and then of
    least reduced word.
    """
    gens = reflection_representation(spec)
    dim = len(gens[0])
    one = gens[0][0][0] * 0 + 1
    identity = _identity(dim, one, one * 0)
    seen = {identity: 0}
    elements = [GroupElement(identity, 0, CoxeterWord(()))]
    frontier = [0]
    while frontier:
        nxt = []
        for idx in frontier:
            g = elements[idx]
            for s, S in enumerate(gens):
                h = _matmul(g.matrix, S)
                if h in seen:
                    continue
                if len(elements) >= cap:
                    raise BudgetExceeded(
                        f"{spec.label}: more than {cap} elements (raise the enumeration cap)")
                seen[h] = len(elements)
                nxt.append(len(elements))
                elements.append(GroupElement(h, g.length + 1, CoxeterWord(g.word.word + (s + 1,))))
        frontier = nxt
    return elements


def build_weak_order_coxeter(
    spec: CoxeterSpec, elements: Sequence[GroupElement] | None = None,
    cap: int = ENUMERATION_CAP,
) -> RankedPoset:
    """
    Right weak order: ``u`` is covered by ``u s`` when the length goes up by
    one.  Rank symmetry is checked through the longest element ``w0``:
    ``l(w0 w) = l(w0) - l(w)`` for every ``w``.
    """
    if elements is None:
        elements = enumerate_group(spec, cap)
    gens = reflection_representation(spec)
    index = {g.matrix: i for i, g in enumerate(elements)}
    covers = []
    for g in elements:
        for S in gens:
            h = elements[index[_matmul(g.matrix, S)]]
            if h.length == g.length + 1:
                covers.append((g.word, h.word))
    top = max(g.length for g in elements)
    tops = [g for g in elements if g.length == top]
    if len(tops) != 1:
        raise AssertionError(f"{spec.label}: {len(tops)} elements of maximal length")
    w0 = tops[0].matrix
    for g in elements:
        partner = elements[index[_matmul(w0, g.matrix)]]
        if partner.length != top - g.length:
            raise AssertionError(f"{spec.label}: left multiplication by w0 does not reverse length")
    P = from_covers(
        [g.word for g in elements],
        {g.word: g.length for g in elements},
        covers,
        name=f"weak_order({spec.label})",
    )
    if not rank_profile(P).symmetric:
        raise AssertionError(f"{spec.label}: rank profile not symmetric")
    return P


def a_type_isomorphism(P: RankedPoset, n: int) -> dict:
    """
    Map each reduced word of the type ``A_(n-1)`` weak order to the
    permutation it spells (``s_i`` swapping positions ``i, i+1``), checking
    that covers correspond.  Returns ``{word: Permutation}``.
    """
    from .permutations import Permutation, apply_simple, length
    from .poset import build_weak_order

    W = build_weak_order(n)
    mapping = {}
    for word in P.elements:
        w = Permutation.identity(n)
        for s in word.word:
            w = apply_simple(w, s)
        if length(w) != len(word.word):
            raise AssertionError(f"word {word} is not reduced in S_{n}")
        mapping[word] = w
    if len(set(mapping.values())) != len(W) or len(P) != len(W):
        raise AssertionError("not a bijection onto S_n")
    covers_P = {(mapping[P.elements[x]], mapping[P.elements[y]]) for x, y in P.cover_edges()}
    covers_W = {(W.elements[x], W.elements[y]) for x, y in W.cover_edges()}
    if covers_P != covers_W:
        raise AssertionError("cover relations differ")
    return mapping


def conjecture_check(
    spec: CoxeterSpec,
    allow_large: bool = False,
    with_oracle: bool = False,
    seed: int = 0,
    workers: int = 1,
) -> SpernerCertificate:
    """
    Strong Sperner certificate for the weak order of ``spec``.  Groups with
    more than ``LARGE_GROUP_THRESHOLD`` elements (H4) need ``allow_large``.
    """
    expected = known_order(spec)
    if expected is not None and expected > LARGE_GROUP_THRESHOLD and not allow_large:
        raise BudgetExceeded(
            f"{spec.label} has {expected} elements; certification needs the opt-in flag")
    elements = enumerate_group(spec)
    if expected is not None and len(elements) != expected:
        raise AssertionError(f"{spec.label}: enumerated {len(elements)} elements, expected {expected}")
    if len(elements) > LARGE_GROUP_THRESHOLD and not allow_large:
        raise BudgetExceeded(
            f"{spec.label} has {len(elements)} elements; certification needs the opt-in flag")
    P = build_weak_order_coxeter(spec, elements)
    meta = {
        "coxeter_type": spec.label,
        "coxeter_rank": spec.rank,
        "group_order": len(elements),
        "expected_order": expected,
        "longest_length": P.r,
        "note": "sl2 operators are only constructed in type A; this certificate uses flows only",
    }
    return certify(P, with_oracle=with_oracle, seed=seed, metadata=meta, workers=workers)
