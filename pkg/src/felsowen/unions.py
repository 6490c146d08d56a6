"""A priori unions: partitions, quotient games, internal games and essential coalitions."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .errors import CapacityError, DomainError
from .games import (
    ENUMERATION_BOUND,
    Coalition,
    CoalitionLike,
    ExplicitGame,
    SimpleGame,
    WeightedGame,
    as_coalition,
    ids_of,
    minimize_masks,
    popcount,
    weighted_minimal_masks,
)


class Partition:
    """An ordered partition of ``{0..n-1}`` into nonempty blocks.

    Block order is the input order, so union ids are reproducible.
    """

    def __init__(self, n: int, blocks: Iterable[CoalitionLike]):
        masks = tuple(as_coalition(b).mask for b in blocks)
        seen = 0
        for m in masks:
            if m == 0:
                raise DomainError("partition blocks must be nonempty")
            if m & seen:
                raise DomainError("partition blocks must be pairwise disjoint")
            seen |= m
        if n < 1 or seen != (1 << n) - 1:
            raise DomainError(f"partition blocks must cover exactly the players 0..{n - 1}")
        self.n = n
        self.masks = masks

    @property
    def u(self) -> int:
        return len(self.masks)

    @cached_property
    def blocks(self) -> tuple[Coalition, ...]:
        return tuple(Coalition.from_mask(m) for m in self.masks)

    @cached_property
    def block_of(self) -> tuple[int, ...]:
        out = [0] * self.n
        for k, m in enumerate(self.masks):
            for i in ids_of(m):
                out[i] = k
        return tuple(out)

    def members(self, k: int) -> list[int]:
        return ids_of(self.masks[k])

    def as_set(self) -> frozenset[int]:
        """Order-free view, for comparing partitions as sets of blocks."""
        return frozenset(self.masks)

    def union_mask(self, union_ids: int) -> int:
        """Players covered by the unions in the bitset ``union_ids``."""
        out = 0
        for k in ids_of(union_ids):
            out |= self.masks[k]
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self.n == other.n and self.masks == other.masks

    def __hash__(self) -> int:
        return hash((self.n, self.masks))

    def __repr__(self) -> str:
        return "Partition(" + ", ".join(repr(b) for b in self.blocks) + ")"


def trivial_partition(n: int, kind: str = "singletons") -> Partition:
    """``singletons`` gives every player its own union, ``grand`` a single union."""
    if n < 1:
        raise DomainError("n must be at least 1")
    if kind == "singletons":
        return Partition(n, [[i] for i in range(n)])
    if kind == "grand":
        return Partition(n, [range(n)])
    raise DomainError(f"unknown trivial partition kind {kind!r}")


@dataclass(frozen=True)
class EssentialFamily:
    """Essential coalitions of union ``k`` with respect to ``r`` (global player ids)."""

    r: Coalition
    k: int
    minimal: frozenset[Coalition]
    least_size: frozenset[Coalition]


class GameWithUnions:
    """A simple game together with an a priori union structure."""

    def __init__(self, game: SimpleGame, partition: Partition | Iterable[CoalitionLike] | None = None):
        if partition is None:
            partition = trivial_partition(game.n)
        elif not isinstance(partition, Partition):
            partition = Partition(game.n, partition)
        if partition.n != game.n:
            raise DomainError("partition and game must have the same player set")
        self.game = game
        self.partition = partition

    @property
    def n(self) -> int:
        return self.game.n

    @cached_property
    def quotient(self) -> ExplicitGame:
        return quotient_game(self)

    @cached_property
    def quotient_ls(self) -> tuple[int, ...]:
        return self.quotient.least_size_masks

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GameWithUnions):
            return NotImplemented
        return self.game == other.game and self.partition == other.partition

    def __hash__(self) -> int:
        return hash((self.game, self.partition))

    def __repr__(self) -> str:
        return f"GameWithUnions({self.game!r}, {self.partition!r})"


def _representatives_mask(partition: Partition, mask: int) -> int:
    out = 0
    for k, m in enumerate(partition.masks):
        if m & mask:
            out |= 1 << k
    return out


def representatives(gwu: GameWithUnions, s: CoalitionLike) -> Coalition:
    """The unions that ``s`` intersects."""
    mask = as_coalition(s).mask
    if mask >> gwu.n:
        raise DomainError("coalition has ids outside the player set")
    return Coalition.from_mask(_representatives_mask(gwu.partition, mask))


def quotient_game(gwu: GameWithUnions, bound: int = ENUMERATION_BOUND) -> ExplicitGame:
    """The game played by the unions, returned by its minimal antichain."""
    part = gwu.partition
    game = gwu.game
    if isinstance(game, WeightedGame):
        if part.u > bound:
            raise CapacityError(f"{part.u} unions exceeds the quotient enumeration bound {bound}")
        union_w = tuple(sum(game.weights[i] for i in ids_of(m)) for m in part.masks)
        masks = minimize_masks(weighted_minimal_masks(game.quota, union_w))
    else:
        # a set of unions wins iff it covers the representatives of some minimal winner
        masks = minimize_masks(_representatives_mask(part, m) for m in game.masks)
    return ExplicitGame._trusted(part.u, masks)


def is_irrelevant(gwu: GameWithUnions, s: CoalitionLike) -> bool:
    """True iff minimal winning ``s`` has non-minimal representatives in the quotient game."""
    mask = as_coalition(s).mask
    game = gwu.game
    if isinstance(game, ExplicitGame):
        if mask not in game.masks:
            raise DomainError(f"{Coalition.from_mask(mask)} is not a minimal winning coalition")
    else:
        if mask >> game.n or not game.wins(mask) or any(game.wins(mask & ~(1 << i)) for i in ids_of(mask)):
            raise DomainError(f"{Coalition.from_mask(mask)} is not a minimal winning coalition")
    return _representatives_mask(gwu.partition, mask) not in gwu.quotient.masks


def _internal_masks(gwu: GameWithUnions, r: int, k: int) -> tuple[int, ...]:
    """Minimal winning coalitions (global ids) of union ``k``'s internal game under ``r``."""
    part = gwu.partition
    if not r >> k & 1:
        raise DomainError(f"union {k} is not a member of {Coalition.from_mask(r)}")
    if r >> part.u:
        raise DomainError("union ids out of range")
    block = part.masks[k]
    others = part.union_mask(r & ~(1 << k))
    game = gwu.game
    if not game.wins(block | others):
        raise DomainError(f"{Coalition.from_mask(r)} is not winning in the quotient game")
    if game.wins(others):
        raise DomainError(
            f"union {k} is inessential in {Coalition.from_mask(r)}: the internal game would let the empty set win"
        )
    if isinstance(game, WeightedGame):
        members = ids_of(block)
        others_w = sum(game.weights[i] for i in ids_of(others))
        local = weighted_minimal_masks(game.quota - others_w, tuple(game.weights[i] for i in members))
        out = []
        for lm in local:
            g = 0
            for j in ids_of(lm):
                g |= 1 << members[j]
            out.append(g)
        return minimize_masks(out)
    allowed = block | others
    return minimize_masks(m & block for m in game.masks if m & ~allowed == 0)


def localize(mask: int, members: list[int]) -> int:
    """Re-index a global bitset onto positions in ``members``."""
    out = 0
    for j, i in enumerate(members):
        if mask >> i & 1:
            out |= 1 << j
    return out


def globalize(mask: int, members: list[int]) -> int:
    out = 0
    for j in ids_of(mask):
        out |= 1 << members[j]
    return out


def internal_game(gwu: GameWithUnions, r: CoalitionLike, k: int) -> ExplicitGame:
    """Internal game of union ``k`` given that the other unions of ``r`` join in full.

    Players of the returned game are the members of block ``k`` re-indexed in
    ascending id order (``gwu.partition.members(k)`` gives the map back).
    Its minimal winning coalitions are the essential coalitions of ``k``.
    """
    r_mask = as_coalition(r).mask
    members = gwu.partition.members(k)
    masks = _internal_masks(gwu, r_mask, k)
    return ExplicitGame._trusted(len(members), minimize_masks(localize(m, members) for m in masks))


def least_size_of(masks: Iterable[int]) -> tuple[int, ...]:
    masks = tuple(masks)
    c = min(popcount(m) for m in masks)
    return tuple(m for m in masks if popcount(m) == c)


def essential_families(gwu: GameWithUnions) -> list[EssentialFamily]:
    """One family per least-size winning union coalition ``R`` and member union ``k``."""
    out = []
    for r in sorted(gwu.quotient_ls, key=lambda m: (popcount(m), ids_of(m))):
        for k in ids_of(r):
            em = _internal_masks(gwu, r, k)
            els = least_size_of(em)
            out.append(
                EssentialFamily(
                    r=Coalition.from_mask(r),
                    k=k,
                    minimal=frozenset(Coalition.from_mask(m) for m in em),
                    least_size=frozenset(Coalition.from_mask(m) for m in els),
                )
            )
    return out


def essential_least_size(gwu: GameWithUnions) -> frozenset[Coalition]:
    """All least-size essential coalitions of the game, over every ``(R, k)``."""
    out: set[Coalition] = set()
    for fam in essential_families(gwu):
        out |= fam.least_size
    return frozenset(out)
