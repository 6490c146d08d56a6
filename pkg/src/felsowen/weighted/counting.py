"""Felsenthal and Felsenthal Owen indices of weighted games without enumerating coalitions."""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import comb, gcd
from typing import Iterable, Sequence

from ..errors import CapacityError, DomainError, InvariantError
from ..games import LeastSizeSummary, ids_of
from ..indices import ZERO, PowerVector
from ..unions import Partition
from .table import MEMORY_BUDGET, SizeWeightTable, crt

#: Default cap on the number of unions for listing least-size quotient coalitions.
QUOTIENT_BUDGET = 30
#: Default cap on how many least-size quotient coalitions may be listed.
LISTING_CAP = 2_000_000


def _validate(q: int, weights: Sequence[int]) -> tuple[int, ...]:
    ws = tuple(weights)
    if not ws:
        raise DomainError("at least one player is required")
    for w in ws:
        if not isinstance(w, int) or isinstance(w, bool) or w < 0:
            raise DomainError(f"weights must be nonnegative integers, got {w!r}")
    if not isinstance(q, int) or isinstance(q, bool):
        raise DomainError("quota must be an integer")
    if not 0 < q <= sum(ws):
        raise DomainError(f"infeasible quota {q}: need 0 < q <= {sum(ws)}")
    return ws


def min_winning_size(q: int, weights: Sequence[int]) -> int:
    """Smallest coalition size able to reach the quota (greedy over the heaviest players)."""
    ws = _validate(q, weights)
    total = 0
    for s, w in enumerate(sorted(ws, reverse=True), start=1):
        total += w
        if total >= q:
            return s
    raise InvariantError("quota unreachable despite validation")


def _rescale(q: int, ws: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    g = reduce(gcd, ws)
    if g <= 1:
        return q, ws
    return -(-q // g), tuple(w // g for w in ws)


def count_least_size(
    q: int,
    weights: Sequence[int],
    kernel: str | None = None,
    memory_budget: int = MEMORY_BUDGET,
) -> LeastSizeSummary:
    """Least winning size, number of least-size winning coalitions and per-player memberships.

    A forward pass builds the size-by-weight table once; each player's count
    comes from undoing that player's insertion (only the row of size ``c`` is
    needed, so two scratch rows suffice).
    """
    ws = _validate(q, weights)
    n = len(ws)
    c = min_winning_size(q, ws)
    qr, wr = _rescale(q, ws)
    table = SizeWeightTable(qr, c, n, kernel=kernel, memory_budget=memory_budget)
    for w in wr:
        table.add(w)
    moduli = table.moduli
    losing = table.losing_residues(c)
    total_c = comb(n, c)
    if moduli == (0,):
        p = total_c - losing[0]
    else:
        p = crt([(total_c - r) % m for r, m in zip(losing, moduli)], moduli)
    if p < 1:
        raise InvariantError("no least-size winning coalition counted")
    base = p - comb(n - 1, c)
    cache: dict[int, int] = {}
    per = []
    for w in wr:
        if w not in cache:
            res = table.losing_without_residues(w, c)
            if moduli == (0,):
                cache[w] = base + res[0]
            else:
                cache[w] = crt([(base + r) % m for r, m in zip(res, moduli)], moduli)
        per.append(cache[w])
    return LeastSizeSummary(c=c, p=p, per_player=tuple(per))


def felsenthal_weighted(q: int, weights: Sequence[int], kernel: str | None = None, **kw) -> PowerVector:
    summary = count_least_size(q, weights, kernel=kernel, **kw)
    denom = summary.p * summary.c
    return PowerVector(tuple(Fraction(x, denom) for x in summary.per_player), "felsenthal", "weighted_dp")


def _as_partition(n: int, partition: Partition | Iterable) -> Partition:
    if isinstance(partition, Partition):
        if partition.n != n:
            raise DomainError("partition and weights must cover the same players")
        return partition
    return Partition(n, partition)


def least_size_quotient(
    q: int,
    union_weights: Sequence[int],
    budget: int = QUOTIENT_BUDGET,
    cap: int = LISTING_CAP,
) -> tuple[int, list[int]]:
    """Least winning size of the union-level game and its least-size winning coalitions (bitsets)."""
    uw = _validate(q, union_weights)
    u = len(uw)
    if u > budget:
        raise CapacityError(f"{u} unions exceeds the quotient listing budget {budget}")
    c = min_winning_size(q, uw)
    order = sorted(range(u), key=lambda k: (-uw[k], k))
    ws = [uw[k] for k in order]
    out: list[int] = []

    def top(start: int, count: int) -> int:
        return sum(ws[start : start + count])

    def dfs(start: int, depth: int, mask: int, total: int) -> None:
        need = c - depth
        if need == 0:
            if total >= q:
                out.append(mask)
                if len(out) > cap:
                    raise CapacityError(f"more than {cap} least-size union coalitions")
            return
        for t in range(start, u - need + 1):
            # remaining picks are at most the next heaviest ones
            if total + top(t, need) < q:
                return
            dfs(t + 1, depth + 1, mask | (1 << order[t]), total + ws[t])

    dfs(0, 0, 0, 0)
    out.sort(key=lambda m: ids_of(m))
    return c, out


def felsenthal_owen_weighted(
    q: int,
    weights: Sequence[int],
    partition: Partition | Iterable,
    kernel: str | None = None,
    budget: int = QUOTIENT_BUDGET,
    memory_budget: int = MEMORY_BUDGET,
) -> PowerVector:
    """Felsenthal Owen index of ``[q; weights]`` with a priori unions, via counting."""
    ws = _validate(q, weights)
    part = _as_partition(len(ws), partition)
    members = [part.members(k) for k in range(part.u)]
    uw = [sum(ws[i] for i in mem) for mem in members]
    _, ls_bar = least_size_quotient(q, uw, budget=budget)
    outer = Fraction(1, len(ls_bar))
    values = [ZERO] * len(ws)
    cache: dict[tuple[int, int], LeastSizeSummary] = {}
    for r in ls_bar:
        r_weight = sum(uw[k] for k in ids_of(r))
        share = outer / r.bit_count()
        for k in ids_of(r):
            q_int = q - (r_weight - uw[k])
            if not 0 < q_int <= uw[k]:
                raise InvariantError(f"internal quota {q_int} out of range for union {k}")
            key = (k, q_int)
            if key not in cache:
                cache[key] = count_least_size(
                    q_int, [ws[i] for i in members[k]], kernel=kernel, memory_budget=memory_budget
                )
            summ = cache[key]
            denom = summ.p * summ.c
            for j, i in enumerate(members[k]):
                if summ.per_player[j]:
                    values[i] += share * Fraction(summ.per_player[j], denom)
    return PowerVector(tuple(values), "felsenthal_owen", "weighted_dp")
