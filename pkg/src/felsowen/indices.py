"""Exact power indices over explicit games.

All values are :class:`fractions.Fraction`; nothing here touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence

import numpy as np

from .errors import CapacityError, DomainError
from .games import (
    ENUMERATION_BOUND,
    ExplicitGame,
    SimpleGame,
    ids_of,
    popcount,
    to_explicit,
    winning_table,
)
from .unions import GameWithUnions, _internal_masks, least_size_of, localize

ZERO = Fraction(0)


@dataclass(frozen=True)
class PowerVector:
    """Exact power value per player, tagged with the index and backend that produced it."""

    values: tuple[Fraction, ...]
    index_kind: str
    backend: str = "enumeration"

    def __getitem__(self, i):
        return self.values[i]

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def total(self) -> Fraction:
        return sum(self.values, ZERO)

    def as_floats(self) -> list[float]:
        return [float(v) for v in self.values]

    def same_values(self, other: PowerVector | Sequence) -> bool:
        return tuple(self.values) == tuple(Fraction(v) for v in other)

    def __repr__(self) -> str:
        vals = ", ".join(str(v) for v in self.values)
        return f"PowerVector[{self.index_kind}/{self.backend}]({vals})"


def _felsenthal_from_ls(n: int, ls_masks: Iterable[int]) -> list[Fraction]:
    ls_masks = tuple(ls_masks)
    p = len(ls_masks)
    c = popcount(ls_masks[0])
    counts = [0] * n
    for m in ls_masks:
        for i in ids_of(m):
            counts[i] += 1
    return [Fraction(x, p * c) for x in counts]


def felsenthal(game: SimpleGame) -> PowerVector:
    """Felsenthal index: equal chance for every least-size winning coalition, equal split inside it."""
    g = to_explicit(game)
    return PowerVector(tuple(_felsenthal_from_ls(g.n, g.least_size_masks)), "felsenthal")


def _internal_ls(gwu: GameWithUnions, r: int, k: int) -> tuple[int, ...]:
    return least_size_of(_internal_masks(gwu, r, k))


def felsenthal_owen(gwu: GameWithUnions, form: str = "sum") -> PowerVector:
    """Felsenthal Owen index of a game with a priori unions.

    ``form="sum"`` evaluates the double sum over least-size essential
    coalitions directly; ``form="composition"`` weights the Felsenthal index of
    each internal game.  Both give identical rationals.
    """
    if form not in ("sum", "composition"):
        raise DomainError(f"unknown form {form!r}")
    part = gwu.partition
    ls_bar = gwu.quotient_ls
    outer = Fraction(1, len(ls_bar))
    values = [ZERO] * gwu.n
    for r in ls_bar:
        share = outer / popcount(r)
        for k in ids_of(r):
            if form == "sum":
                els = _internal_ls(gwu, r, k)
                inner = share / len(els)
                for s in els:
                    piece = inner / popcount(s)
                    for i in ids_of(s):
                        values[i] += piece
            else:
                members = part.members(k)
                local = ExplicitGame._trusted(
                    len(members), tuple(localize(m, members) for m in _internal_masks(gwu, r, k))
                )
                psi = felsenthal(local)
                for j, i in enumerate(members):
                    values[i] += share * psi[j]
    return PowerVector(tuple(values), "felsenthal_owen")


def _popcounts(size: int) -> np.ndarray:
    idx = np.arange(size, dtype=np.int64)
    out = np.zeros(size, dtype=np.int64)
    while idx.any():
        out += idx & 1
        idx >>= 1
    return out


def _swing_counts_by_size(game: SimpleGame, bound: int) -> tuple[int, list[np.ndarray]]:
    n = game.n
    if n > bound:
        raise CapacityError(f"{n} players exceeds the enumeration bound {bound}")
    win = winning_table(game, bound)
    sizes = _popcounts(1 << n)
    idx = np.arange(1 << n, dtype=np.int64)
    per_player = []
    for i in range(n):
        without = idx[(idx >> i & 1) == 0]
        swing = win[without | (1 << i)] & ~win[without]
        per_player.append(np.bincount(sizes[without][swing], minlength=n))
    return n, per_player


def shapley_shubik(game: SimpleGame, bound: int = ENUMERATION_BOUND) -> PowerVector:
    n, swings = _swing_counts_by_size(game, bound)
    nf = factorial(n)
    weights = [Fraction(factorial(s) * factorial(n - s - 1), nf) for s in range(n)]
    vals = tuple(sum((int(cnt[s]) * weights[s] for s in range(n)), ZERO) for cnt in swings)
    return PowerVector(vals, "shapley_shubik")


def banzhaf_normalized(game: SimpleGame, bound: int = ENUMERATION_BOUND) -> PowerVector:
    _, swings = _swing_counts_by_size(game, bound)
    raw = [int(cnt.sum()) for cnt in swings]
    total = sum(raw)
    return PowerVector(tuple(Fraction(x, total) for x in raw), "banzhaf_normalized")


def deegan_packel(game: SimpleGame, bound: int = ENUMERATION_BOUND) -> PowerVector:
    g = to_explicit(game, bound)
    values = [ZERO] * g.n
    share = Fraction(1, len(g.masks))
    for m in g.masks:
        piece = share / popcount(m)
        for i in ids_of(m):
            values[i] += piece
    return PowerVector(tuple(values), "deegan_packel")


_REFERENCE = {
    "shapley_shubik": shapley_shubik,
    "banzhaf_normalized": banzhaf_normalized,
    "deegan_packel": deegan_packel,
}


def reference_index(game: SimpleGame, kind: str, bound: int = ENUMERATION_BOUND) -> PowerVector:
    """Classical small-n reference indices: Shapley-Shubik, normalized Banzhaf, Deegan-Packel."""
    try:
        fn = _REFERENCE[kind]
    except KeyError:
        raise DomainError(f"unknown reference index {kind!r}") from None
    return fn(game, bound)


def union_totals(gwu: GameWithUnions, vector: Sequence[Fraction]) -> list[Fraction]:
    """Sum of a per-player vector over each union."""
    return [sum((vector[i] for i in ids_of(m)), ZERO) for m in gwu.partition.masks]


__all__ = [
    "PowerVector",
    "felsenthal",
    "felsenthal_owen",
    "reference_index",
    "shapley_shubik",
    "banzhaf_normalized",
    "deegan_packel",
    "union_totals",
]
