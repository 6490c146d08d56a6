"""Simple games: coalitions, explicit and weighted representations, game algebra.

Coalitions are stored as Python integers used as bitsets (bit ``i`` set means
player ``i`` belongs to the coalition).  Python integers are unbounded, so the
same representation serves a 3-player toy game and a 188-member assembly.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Union

from .errors import CapacityError, DomainError

#: Default player-count bound for anything that enumerates coalitions.
ENUMERATION_BOUND = 25


def popcount(mask: int) -> int:
    return mask.bit_count()


def mask_of(ids: Iterable[int]) -> int:
    mask = 0
    for i in ids:
        if not isinstance(i, int) or isinstance(i, bool) or i < 0:
            raise DomainError(f"invalid player id {i!r}")
        mask |= 1 << i
    return mask


def ids_of(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class Coalition:
    """An immutable set of player ids with bitset semantics.

    >>> Coalition([2, 0]) == Coalition([0, 2])
    True
    >>> sorted(Coalition([3, 1]) | Coalition([0]))
    [0, 1, 3]
    """

    __slots__ = ("mask",)

    def __init__(self, members: Iterable[int] = ()):
        object.__setattr__(self, "mask", mask_of(members))

    @classmethod
    def from_mask(cls, mask: int) -> Coalition:
        if mask < 0:
            raise DomainError("coalition mask must be nonnegative")
        obj = cls.__new__(cls)
        object.__setattr__(obj, "mask", mask)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("Coalition is immutable")

    def __iter__(self) -> Iterator[int]:
        return iter(ids_of(self.mask))

    def __len__(self) -> int:
        return popcount(self.mask)

    def __bool__(self) -> bool:
        return self.mask != 0

    def __contains__(self, i: object) -> bool:
        return isinstance(i, int) and i >= 0 and bool(self.mask >> i & 1)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Coalition):
            return self.mask == other.mask
        if isinstance(other, (set, frozenset)):
            try:
                return self.mask == mask_of(other)
            except DomainError:
                return False
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("Coalition", self.mask))

    def __le__(self, other: Coalition) -> bool:
        return self.mask & ~other.mask == 0

    def __lt__(self, other: Coalition) -> bool:
        return self.mask != other.mask and self <= other

    def __ge__(self, other: Coalition) -> bool:
        return other <= self

    def __gt__(self, other: Coalition) -> bool:
        return other < self

    def __or__(self, other: Coalition) -> Coalition:
        return Coalition.from_mask(self.mask | other.mask)

    def __and__(self, other: Coalition) -> Coalition:
        return Coalition.from_mask(self.mask & other.mask)

    def __sub__(self, other: Coalition) -> Coalition:
        return Coalition.from_mask(self.mask & ~other.mask)

    def issubset(self, other: Coalition) -> bool:
        return self <= other

    def max_id(self) -> int:
        return self.mask.bit_length() - 1

    def sort_key(self) -> tuple[int, list[int]]:
        return (len(self), ids_of(self.mask))

    def __repr__(self) -> str:
        return "{" + ", ".join(map(str, self)) + "}"


CoalitionLike = Union[Coalition, Iterable[int]]


def as_coalition(s: CoalitionLike) -> Coalition:
    return s if isinstance(s, Coalition) else Coalition(s)


def minimize_masks(masks: Iterable[int]) -> tuple[int, ...]:
    """Return the minimal elements (under inclusion) of a family of bitsets."""
    kept: list[int] = []
    for m in sorted(set(masks), key=lambda x: (popcount(x), x)):
        if not any(k & ~m == 0 for k in kept):
            kept.append(m)
    return tuple(kept)


def sorted_coalitions(family: Iterable[Coalition]) -> list[Coalition]:
    return sorted(family, key=Coalition.sort_key)


@dataclass(frozen=True)
class LeastSizeSummary:
    """Least winning size ``c``, number ``p`` of least-size winning
    coalitions, and how many of those each player belongs to."""

    c: int
    p: int
    per_player: tuple[int, ...]

    def __post_init__(self):
        if sum(self.per_player) != self.p * self.c:
            raise DomainError("inconsistent least-size summary: sum(per_player) != p*c")


class ExplicitGame:
    """A simple game given by its minimal winning coalitions.

    The supplied family is reduced to its minimal antichain on construction,
    so callers may pass any generating family of winning coalitions.
    """

    def __init__(self, n: int, minimal_winning: Iterable[CoalitionLike]):
        if n < 1:
            raise DomainError("a game needs at least one player")
        raw = []
        full = (1 << n) - 1
        for s in minimal_winning:
            m = as_coalition(s).mask
            if m == 0:
                raise DomainError("the empty coalition cannot be winning")
            if m & ~full:
                raise DomainError(f"coalition {Coalition.from_mask(m)} has ids outside 0..{n - 1}")
            raw.append(m)
        if not raw:
            raise DomainError("a simple game needs at least one winning coalition")
        self.n = n
        self.masks = minimize_masks(raw)

    @classmethod
    def _trusted(cls, n: int, masks: tuple[int, ...]) -> ExplicitGame:
        obj = cls.__new__(cls)
        obj.n = n
        obj.masks = masks
        return obj

    @cached_property
    def minimal_winning(self) -> frozenset[Coalition]:
        return frozenset(Coalition.from_mask(m) for m in self.masks)

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def least_size(self) -> int:
        return min(popcount(m) for m in self.masks)

    @cached_property
    def least_size_masks(self) -> tuple[int, ...]:
        c = self.least_size
        return tuple(m for m in self.masks if popcount(m) == c)

    @cached_property
    def support(self) -> int:
        """Bitset of non-null players."""
        out = 0
        for m in self.masks:
            out |= m
        return out

    def wins(self, mask: int) -> bool:
        return any(m & ~mask == 0 for m in self.masks)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExplicitGame):
            return NotImplemented
        return self.n == other.n and set(self.masks) == set(other.masks)

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.masks)))

    def __repr__(self) -> str:
        fam = ", ".join(repr(c) for c in sorted_coalitions(self.minimal_winning))
        return f"ExplicitGame(n={self.n}, W^m=[{fam}])"


@dataclass(frozen=True)
class WeightedGame:
    """The weighted majority game ``[quota; w_0, ..., w_{n-1}]``."""

    quota: int
    weights: tuple[int, ...] = field(default=())

    def __post_init__(self):
        w = tuple(self.weights)
        object.__setattr__(self, "weights", w)
        if not w:
            raise DomainError("a game needs at least one player")
        for x in w:
            if not isinstance(x, int) or isinstance(x, bool) or x < 0:
                raise DomainError(f"weights must be nonnegative integers, got {x!r}")
        if not isinstance(self.quota, int) or isinstance(self.quota, bool):
            raise DomainError("quota must be an integer")
        if not 0 < self.quota <= sum(w):
            raise DomainError(f"quota must satisfy 0 < q <= {sum(w)}, got {self.quota}")

    @property
    def n(self) -> int:
        return len(self.weights)

    def weight(self, mask: int) -> int:
        return sum(self.weights[i] for i in ids_of(mask))

    def wins(self, mask: int) -> bool:
        return self.weight(mask) >= self.quota


SimpleGame = Union[ExplicitGame, WeightedGame]


def _check_coalition(game: SimpleGame, s: CoalitionLike) -> int:
    mask = as_coalition(s).mask
    if mask >> game.n:
        raise DomainError(f"coalition {Coalition.from_mask(mask)} has ids outside 0..{game.n - 1}")
    return mask


def is_winning(game: SimpleGame, s: CoalitionLike) -> bool:
    """True iff ``s`` is a winning coalition of ``game``."""
    return game.wins(_check_coalition(game, s))


def weighted_minimal_masks(quota: int, weights: tuple[int, ...]) -> list[int]:
    """Minimal winning coalitions of ``[quota; weights]`` by pruned depth-first search.

    Players are visited by decreasing weight; a coalition that reaches the quota
    is minimal exactly when dropping its lightest member falls below it.
    """
    order = sorted(range(len(weights)), key=lambda i: (-weights[i], i))
    ws = [weights[i] for i in order]
    suffix = [0] * (len(ws) + 1)
    for t in range(len(ws) - 1, -1, -1):
        suffix[t] = suffix[t + 1] + ws[t]
    out: list[int] = []

    def dfs(start: int, mask: int, total: int) -> None:
        for t in range(start, len(ws)):
            if total + suffix[t] < quota:
                return
            new_total = total + ws[t]
            new_mask = mask | (1 << order[t])
            if new_total >= quota:
                if new_total - ws[t] < quota:
                    out.append(new_mask)
            else:
                dfs(t + 1, new_mask, new_total)

    dfs(0, 0, 0)
    return out


def minimal_winning(game: WeightedGame, bound: int = ENUMERATION_BOUND) -> frozenset[Coalition]:
    """Minimal winning coalitions of a weighted game (``n`` must not exceed ``bound``)."""
    if game.n > bound:
        raise CapacityError(
            f"{game.n} players exceeds the enumeration bound {bound}; "
            "use the weighted_dp summaries instead"
        )
    return frozenset(Coalition.from_mask(m) for m in weighted_minimal_masks(game.quota, game.weights))


def to_explicit(game: SimpleGame, bound: int = ENUMERATION_BOUND) -> ExplicitGame:
    if isinstance(game, ExplicitGame):
        return game
    if game.n > bound:
        raise CapacityError(f"{game.n} players exceeds the enumeration bound {bound}")
    return ExplicitGame._trusted(game.n, minimize_masks(weighted_minimal_masks(game.quota, game.weights)))


def least_size_winning(game: SimpleGame) -> tuple[frozenset[Coalition], LeastSizeSummary]:
    """Least-size winning coalitions together with their summary counts."""
    g = to_explicit(game)
    ls = g.least_size_masks
    per = [0] * g.n
    for m in ls:
        for i in ids_of(m):
            per[i] += 1
    summary = LeastSizeSummary(c=g.least_size, p=len(ls), per_player=tuple(per))
    return frozenset(Coalition.from_mask(m) for m in ls), summary


def unanimity_game(n: int, s: CoalitionLike) -> ExplicitGame:
    s = as_coalition(s)
    if not s:
        raise DomainError("unanimity game of the empty coalition is not a simple game")
    return ExplicitGame(n, [s])


class FormulaMismatchWarning(UserWarning):
    """The literal W^m-union / W^m-intersection formula disagrees with the minimized family."""


def literal_formula_masks(a: ExplicitGame, b: ExplicitGame, mode: str) -> set[int]:
    if mode == "disjunction":
        return set(a.masks) | set(b.masks)
    if mode == "conjunction":
        return set(a.masks) & set(b.masks)
    raise DomainError(f"unknown combine mode {mode!r}")


def combine(a: ExplicitGame, b: ExplicitGame, mode: str, on_mismatch: str = "warn") -> ExplicitGame:
    """Disjunction or conjunction of two games on the same player set.

    The result carries the minimal antichain of the combined winning family.
    ``on_mismatch`` ("warn", "ignore" or "raise") controls what happens when
    that antichain differs from the plain union/intersection of the operands'
    minimal families.
    """
    if a.n != b.n:
        raise DomainError("combined games must share the player set")
    if mode == "disjunction":
        masks = minimize_masks(a.masks + b.masks)
    elif mode == "conjunction":
        masks = minimize_masks(x | y for x in a.masks for y in b.masks)
    else:
        raise DomainError(f"unknown combine mode {mode!r}")
    assert masks, "N wins in both operands, so the combined family is never empty"
    if on_mismatch != "ignore" and set(masks) != literal_formula_masks(a, b, mode):
        msg = f"{mode}: minimized winning family differs from the literal minimal-family formula"
        if on_mismatch == "raise":
            raise DomainError(msg)
        warnings.warn(msg, FormulaMismatchWarning, stacklevel=2)
    return ExplicitGame._trusted(a.n, masks)


def disjunction(a: ExplicitGame, b: ExplicitGame, on_mismatch: str = "warn") -> ExplicitGame:
    return combine(a, b, "disjunction", on_mismatch)


def conjunction(a: ExplicitGame, b: ExplicitGame, on_mismatch: str = "warn") -> ExplicitGame:
    return combine(a, b, "conjunction", on_mismatch)


class PlayerRole(str, enum.Enum):
    NULL = "null"
    DICTATOR = "dictator"
    VETOER = "vetoer"
    REGULAR = "regular"


def _check_player(game: SimpleGame, i: int) -> None:
    if not 0 <= i < game.n:
        raise DomainError(f"player {i} outside 0..{game.n - 1}")


def classify_player(game: ExplicitGame, i: int) -> PlayerRole:
    _check_player(game, i)
    bit = 1 << i
    if game.masks == (bit,):
        return PlayerRole.DICTATOR
    containing = sum(1 for m in game.masks if m & bit)
    if containing == 0:
        return PlayerRole.NULL
    if containing == len(game.masks):
        return PlayerRole.VETOER
    return PlayerRole.REGULAR


def swap_bits(mask: int, i: int, j: int) -> int:
    bi, bj = mask >> i & 1, mask >> j & 1
    if bi != bj:
        mask ^= (1 << i) | (1 << j)
    return mask


def are_symmetric(game: ExplicitGame, i: int, j: int) -> bool:
    """True iff the transposition of ``i`` and ``j`` maps the game onto itself."""
    _check_player(game, i)
    _check_player(game, j)
    if i == j:
        raise DomainError("symmetry is tested between two distinct players")
    fam = set(game.masks)
    return all(swap_bits(m, i, j) in fam for m in game.masks)


def winning_table(game: SimpleGame, bound: int = ENUMERATION_BOUND):
    """Boolean numpy vector ``v`` with ``v[mask]`` true iff ``mask`` wins."""
    import numpy as np

    n = game.n
    if n > bound:
        raise CapacityError(f"{n} players exceeds the enumeration bound {bound}")
    if isinstance(game, WeightedGame):
        idx = np.arange(1 << n, dtype=np.int64)
        totals = np.zeros(1 << n, dtype=np.int64)
        for i, w in enumerate(game.weights):
            totals += ((idx >> i) & 1) * w
        return totals >= game.quota
    win = np.zeros(1 << n, dtype=bool)
    win[list(game.masks)] = True
    # upward closure, one coordinate at a time
    for i in range(n):
        view = win.reshape(-1, 2, 1 << i)
        view[:, 1, :] |= view[:, 0, :]
    return win
