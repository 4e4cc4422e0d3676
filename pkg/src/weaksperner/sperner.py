"""
Maximum unions of k antichains and strong Sperner certificates.

The flow route uses Greene-Kleitman duality: the largest union of ``k``
antichains equals the minimum over chain partitions of ``sum min(|C|, k)``.
Each augmenting unit in the network below is a chain ``C`` costing
``k - |C|``; augmenting while that is negative leaves ``|P| + cost`` as the
answer.  The oracle route is an independent exhaustive search.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .poset import RankedPoset, RankProfile, rank_profile, transitive_closure

__all__ = [
    "ORACLE_MAX_ELEMENTS", "Method", "FlowResult", "KRecord", "SpernerCertificate",
    "max_k_antichain_flow", "max_k_antichain_flow_result", "max_k_antichain_oracle",
    "oracle_witness", "top_k_rank_sums", "certify",
]

ORACLE_MAX_ELEMENTS = 24

_INF = float("inf")


class Method(str, Enum):
    FLOW = "FLOW"
    ORACLE = "ORACLE"
    SKIPPED = "SKIPPED"


@dataclass(frozen=True)
class FlowResult:
    k: int
    value: int
    cost: int
    chains: tuple[tuple[int, ...], ...]   # chains with more than k elements

    def dual_bound(self, size: int) -> int:
        """``sum min(|C|, k)`` over the chains plus the uncovered singletons."""
        covered = sum(len(c) for c in self.chains)
        return sum(min(len(c), self.k) for c in self.chains) + (size - covered)


class _Network:
    """Residual graph in flat arrays; edge ``e ^ 1`` is the reverse of ``e``."""

    __slots__ = ("head", "cap", "cost", "adj")

    def __init__(self, nodes: int):
        self.head: list[int] = []
        self.cap: list[int] = []
        self.cost: list[int] = []
        self.adj: list[list[int]] = [[] for _ in range(nodes)]

    def add(self, u: int, v: int, cap: int, cost: int) -> None:
        e = len(self.head)
        self.head += (v, u)
        self.cap += (cap, 0)
        self.cost += (cost, -cost)
        self.adj[u].append(e)
        self.adj[v].append(e + 1)


def _build_network(P: RankedPoset, above: Sequence[int], k: int) -> _Network:
    # node 0 = source, 1 = sink, 2v = v_in + 2, 2v + 3 = v_out
    N = len(P)
    net = _Network(2 * N + 2)
    for v in range(N):
        net.add(0, 2 * v + 2, 1, k)
        net.add(2 * v + 2, 2 * v + 3, 1, -1)
        net.add(2 * v + 3, 1, 1, 0)
    for u in range(N):
        row = above[u]
        out = 2 * u + 3
        while row:
            low = row & -row
            net.add(out, 2 * (low.bit_length() - 1) + 2, 1, 0)
            row ^= low
    return net


def _initial_potentials(P: RankedPoset, net: _Network) -> list[float]:
    # the network without residual arcs is a DAG; index order is topological
    N = len(P)
    dist = [_INF] * (2 * N + 2)
    dist[0] = 0
    for e in net.adj[0]:
        dist[net.head[e]] = net.cost[e]
    for v in range(N):
        vin, vout = 2 * v + 2, 2 * v + 3
        for e in net.adj[vin]:
            if net.cap[e] and net.head[e] == vout:
                dist[vout] = min(dist[vout], dist[vin] + net.cost[e])
        d = dist[vout]
        for e in net.adj[vout]:
            if net.cap[e]:
                w = net.head[e]
                if d + net.cost[e] < dist[w]:
                    dist[w] = d + net.cost[e]
    return dist


def max_k_antichain_flow_result(
    P: RankedPoset, k: int, above: Sequence[int] | None = None,
) -> FlowResult:
    """Min-cost flow computation of the largest union of ``k`` antichains."""
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    N = len(P)
    if k >= P.height():
        return FlowResult(k, N, 0, ())
    if above is None:
        above = transitive_closure(P)
    net = _build_network(P, above, k)
    pot = _initial_potentials(P, net)
    head, cap, cost, adj = net.head, net.cap, net.cost, net.adj
    nodes = len(adj)
    total = 0
    while True:
        dist = [_INF] * nodes
        parent = [-1] * nodes
        dist[0] = 0
        heap = [(0, 0)]
        while heap:
            d, u = heapq.heappop(heap)
            if d > dist[u]:
                continue
            pu = pot[u]
            for e in adj[u]:
                if cap[e]:
                    v = head[e]
                    nd = d + cost[e] + pu - pot[v]
                    if nd < dist[v]:
                        dist[v] = nd
                        parent[v] = e
                        heapq.heappush(heap, (nd, v))
        if dist[1] == _INF:
            break
        path_cost = dist[1] + pot[1] - pot[0]
        if path_cost >= 0:
            break
        for v in range(nodes):
            if dist[v] < _INF:
                pot[v] += dist[v]
        v = 1
        while v != 0:
            e = parent[v]
            cap[e] -= 1
            cap[e ^ 1] += 1
            v = head[e ^ 1]
        total += int(path_cost)
    return FlowResult(k, N + total, total, _extract_chains(net, N))


def _extract_chains(net: _Network, N: int) -> tuple[tuple[int, ...], ...]:
    # a forward arc (even id) carries flow iff its residual capacity dropped to 0
    chains = []
    for e in net.adj[0]:
        if e % 2 == 0 and net.cap[e] == 0:
            node = net.head[e]
            chain = []
            while node != 1:
                v = (node - 2) // 2
                chain.append(v)
                nxt = None
                for f in net.adj[2 * v + 3]:
                    if f % 2 == 0 and net.cap[f] == 0:
                        nxt = net.head[f]
                        break
                node = nxt
            chains.append(tuple(chain))
    return tuple(sorted(chains))


def max_k_antichain_flow(P: RankedPoset, k: int, above: Sequence[int] | None = None) -> int:
    """
    Size of the largest union of ``k`` antichains of ``P``.

    >>> from .poset import build_weak_order
    >>> [max_k_antichain_flow(build_weak_order(3), k) for k in (1, 2, 3, 4)]
    [2, 4, 5, 6]
    """
    return max_k_antichain_flow_result(P, k, above).value


def _greedy_chain_partition(P: RankedPoset, above: Sequence[int]) -> list[list[int]]:
    chains: list[list[int]] = []
    for v in range(len(P)):
        for c in chains:
            if above[c[-1]] >> v & 1:
                c.append(v)
                break
        else:
            chains.append([v])
    return chains


def _oracle_search(P: RankedPoset, k: int, above: Sequence[int]) -> tuple[int, list[int]]:
    N = len(P)
    below = [0] * N
    for u, row in enumerate(above):
        while row:
            low = row & -row
            below[low.bit_length() - 1] |= 1 << u
            row ^= low
    chains = _greedy_chain_partition(P, above)
    chain_of = [0] * N
    for ci, c in enumerate(chains):
        for v in c:
            chain_of[v] = ci
    left_in_chain = [len(c) for c in chains]
    used_in_chain = [0] * len(chains)
    height = [0] * N

    best_size = 0
    best_set: list[int] = []
    chosen: list[int] = []

    def bound() -> int:
        return sum(min(left, k - used) if used < k else 0
                   for left, used in zip(left_in_chain, used_in_chain))

    def search(v: int) -> None:
        nonlocal best_size, best_set
        if len(chosen) > best_size:
            best_size = len(chosen)
            best_set = list(chosen)
        if v == N or len(chosen) + bound() <= best_size:
            return
        ci = chain_of[v]
        left_in_chain[ci] -= 1
        # include v if the longest chain ending at v stays within k
        h = 1
        mask = below[v]
        for u in chosen:
            if mask >> u & 1 and height[u] + 1 > h:
                h = height[u] + 1
        if h <= k:
            height[v] = h
            chosen.append(v)
            used_in_chain[ci] += 1
            search(v + 1)
            used_in_chain[ci] -= 1
            chosen.pop()
        search(v + 1)
        left_in_chain[ci] += 1

    search(0)
    return best_size, sorted(best_set)


def _check_oracle_size(P: RankedPoset, cap: int) -> None:
    if len(P) > cap:
        raise ValueError(f"oracle refuses posets with more than {cap} elements (got {len(P)})")


def max_k_antichain_oracle(P: RankedPoset, k: int, cap: int = ORACLE_MAX_ELEMENTS) -> int:
    """
    Exhaustive branch-and-bound maximum of a subset with no chain of ``k+1``
    elements.  The bound uses a fixed greedy chain partition: each chain
    contributes at most ``k`` elements.
    """
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    _check_oracle_size(P, cap)
    return _oracle_search(P, k, transitive_closure(P))[0]


def oracle_witness(P: RankedPoset, k: int, cap: int = ORACLE_MAX_ELEMENTS) -> list[list[int]]:
    """An optimal family of ``k`` antichains, from the Mirsky layering of the optimum."""
    _check_oracle_size(P, cap)
    above = transitive_closure(P)
    _, best = _oracle_search(P, k, above)
    height = {}
    for v in best:
        height[v] = 1 + max((height[u] for u in best if u < v and above[u] >> v & 1), default=0)
    layers = [[v for v in best if height[v] == i] for i in range(1, k + 1)]
    return layers


def top_k_rank_sums(profile: RankProfile) -> list[int]:
    """``[sum of the k largest rank sizes for k = 1..r+1]``."""
    out, acc = [], 0
    for s in sorted(profile.sizes, reverse=True):
        acc += s
        out.append(acc)
    return out


@dataclass(frozen=True)
class KRecord:
    k: int
    max_k_antichain: int | None
    top_k_rank_sum: int
    method: Method
    oracle_value: int | None = None

    @property
    def equal(self) -> bool | None:
        if self.max_k_antichain is None:
            return None
        return self.max_k_antichain == self.top_k_rank_sum


@dataclass(frozen=True)
class SpernerCertificate:
    poset: str
    n_elements: int
    profile: RankProfile
    per_k: tuple[KRecord, ...]
    seed: int = 0
    metadata: dict = field(default_factory=dict)

    @property
    def sperner_k(self) -> dict[int, bool | None]:
        return {rec.k: rec.equal for rec in self.per_k}

    @property
    def complete(self) -> bool:
        return all(rec.method is not Method.SKIPPED for rec in self.per_k)

    @property
    def strongly_sperner(self) -> bool:
        return self.complete and all(rec.equal for rec in self.per_k)

    @property
    def peck(self) -> bool:
        return self.strongly_sperner and self.profile.symmetric and self.profile.unimodal

    def concave(self) -> bool:
        """Greene-Kleitman: the values grow with nonincreasing increments up to ``|P|``."""
        vals = [0] + [rec.max_k_antichain for rec in self.per_k] + [self.n_elements]
        if any(v is None for v in vals):
            return False
        steps = [b - a for a, b in zip(vals, vals[1:])]
        return all(s >= 0 for s in steps) and all(a >= b for a, b in zip(steps, steps[1:]))

    def to_dict(self) -> dict:
        from . import __version__

        d = {
            "schema": 1,
            "poset": self.poset,
            "n_elements": self.n_elements,
            "rank_sizes": list(self.profile.sizes),
            "rank_symmetric": self.profile.symmetric,
            "rank_unimodal": self.profile.unimodal,
            "per_k": [
                {
                    "k": rec.k,
                    "a_k": rec.max_k_antichain,
                    "rank_sum": rec.top_k_rank_sum,
                    "equal": rec.equal,
                    "method": rec.method.value,
                    **({"oracle": rec.oracle_value} if rec.oracle_value is not None else {}),
                }
                for rec in self.per_k
            ],
            "strongly_sperner": self.strongly_sperner,
            "peck": self.peck,
            "seed": self.seed,
            "versions": {"weaksperner": __version__},
        }
        d.update(self.metadata)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)


def certify(
    P: RankedPoset,
    with_oracle: bool = False,
    seed: int = 0,
    metadata: dict | None = None,
    workers: int = 1,
) -> SpernerCertificate:
    """
    Compare the largest union of ``k`` antichains with the ``k`` largest ranks
    for ``k = 1..r``.

    ``with_oracle`` also runs the exhaustive search where the poset is small
    enough; a disagreement raises.  ``workers > 1`` spreads the values of
    ``k`` over processes.
    """
    profile = rank_profile(P)
    sums = top_k_rank_sums(profile)
    above = transitive_closure(P)
    ks = list(range(1, P.r + 1))
    if workers > 1 and len(ks) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(max_k_antichain_flow, [P] * len(ks), ks, [above] * len(ks)))
    else:
        values = [max_k_antichain_flow(P, k, above) for k in ks]
    records = []
    for k, value in zip(ks, values):
        oracle_value = None
        if with_oracle and len(P) <= ORACLE_MAX_ELEMENTS:
            oracle_value = _oracle_search(P, k, above)[0]
            if oracle_value != value:
                raise AssertionError(f"flow {value} != oracle {oracle_value} at k={k} on {P.name}")
        records.append(KRecord(k, value, sums[k - 1], Method.FLOW, oracle_value))
    return SpernerCertificate(P.name, len(P), profile, tuple(records), seed, dict(metadata or {}))
