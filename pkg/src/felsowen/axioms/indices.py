"""Coalitional indices used by the axiom laboratory.

``PSI`` is the Felsenthal Owen index; ``counterexample_index(k)`` builds the
k-th index designed to drop exactly one axiom of a characterization.
Player labels in label-weighted formulas are 1-based (``id + 1``).
"""

from __future__ import annotations

from collections import OrderedDict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from ..errors import DomainError
from ..games import ExplicitGame, PlayerRole, classify_player, ids_of, minimize_masks, popcount, to_explicit
from ..indices import ZERO, PowerVector, felsenthal, felsenthal_owen, shapley_shubik
from ..unions import GameWithUnions, Partition, _internal_masks, least_size_of, trivial_partition

Values = tuple[Fraction, ...]


@dataclass(eq=False)
class CoalitionalIndex:
    """A named map from games with a priori unions to per-player values."""

    name: str
    fn: Callable[[GameWithUnions], Values]
    cache_size: int = 20000
    _cache: OrderedDict = field(default_factory=OrderedDict, repr=False)

    def __call__(self, gwu: GameWithUnions) -> PowerVector:
        if not isinstance(gwu.game, ExplicitGame):
            gwu = GameWithUnions(to_explicit(gwu.game), gwu.partition)
        key = (gwu.game, gwu.partition)
        hit = self._cache.get(key)
        if hit is None:
            hit = tuple(self.fn(gwu))
            self._cache[key] = hit
            if len(self._cache) > self.cache_size:
                self._cache.popitem(last=False)
        return PowerVector(hit, self.name)


def _psi(gwu: GameWithUnions) -> Values:
    return felsenthal_owen(gwu).values


PSI = CoalitionalIndex("Psi", _psi)


def _singleton(gwu: GameWithUnions) -> GameWithUnions:
    return GameWithUnions(gwu.game, trivial_partition(gwu.n))


def _label_weighted(values: Values) -> Values:
    weighted = [(i + 1) * v for i, v in enumerate(values)]
    total = sum(weighted, ZERO)
    return tuple(x / total for x in weighted)


def _union_in_quotient_ls(gwu: GameWithUnions) -> int:
    out = 0
    for r in gwu.quotient_ls:
        out |= r
    return out


# rows for NN, CFI, QG, PELS ------------------------------------------------


def _f1(gwu):
    return (ZERO,) * gwu.n


def _f2(gwu):
    vals = list(_psi(gwu))
    support = gwu.game.support
    for m in gwu.partition.masks:
        members = ids_of(m)
        if len(members) > 1 and not (m & support):
            for i in members:
                vals[i] = ZERO
            vals[members[0]] = Fraction(-1)
            vals[members[-1]] = Fraction(1)
    return tuple(vals)


def _f3(gwu):
    vals = list(_psi(gwu))
    psi = felsenthal(gwu.game).values
    active = _union_in_quotient_ls(gwu)
    for k, m in enumerate(gwu.partition.masks):
        if not active >> k & 1:
            for i in ids_of(m):
                vals[i] = psi[i]
    return tuple(vals)


def _f4(gwu):
    """Deegan-Packel-flavoured inner split over the minimal essential coalitions."""
    ls_bar = gwu.quotient_ls
    vals = [ZERO] * gwu.n
    outer = Fraction(1, len(ls_bar))
    for r in ls_bar:
        for k in ids_of(r):
            em = _internal_masks(gwu, r, k)
            inner = outer / popcount(r) / len(em)
            for s in em:
                piece = inner / popcount(s)
                for i in ids_of(s):
                    vals[i] += piece
    return tuple(vals)


# rows for E, NP, S-AU, S-IU, TCLS-AU, TCLS-IU, IIC, ILSE -------------------


def _f5(gwu):
    part = gwu.partition
    vals = [ZERO] * gwu.n
    for m in part.masks:
        share = Fraction(1, part.u * popcount(m))
        for i in ids_of(m):
            vals[i] = share
    return tuple(vals)


def _is_unanimity_of_all(game: ExplicitGame) -> bool:
    return game.masks == (game.full_mask,)


def _is_all_singletons(game: ExplicitGame) -> bool:
    return set(game.masks) == {1 << i for i in range(game.n)}


def _f6(gwu):
    game = gwu.game
    if _is_unanimity_of_all(game) or _is_all_singletons(game):
        return _label_weighted(_psi(_singleton(gwu)))
    return _psi(gwu)


def _f7(gwu):
    if _is_unanimity_of_all(gwu.game) and gwu.partition.u == 1:
        return _label_weighted(_psi(gwu))
    return _psi(gwu)


def _fixed(n: int, coalitions, blocks) -> tuple[int, frozenset[int], frozenset[int]]:
    """Identity key of a fixed game given with 1-based labels."""
    masks = minimize_masks(sum(1 << (i - 1) for i in s) for s in coalitions)
    return n, frozenset(masks), frozenset(sum(1 << (i - 1) for i in b) for b in blocks)


def _key(gwu: GameWithUnions):
    return gwu.n, frozenset(gwu.game.masks), gwu.partition.as_set()


F8_GAME = _fixed(5, [{1, 5}, {1, 2, 3, 4}], [{1}, {2, 3, 4}, {5}])
F10_GAME = _fixed(5, [{1, 5}, {1, 2, 4}, {2, 3, 5}, {1, 2, 5}], [{1}, {2, 3, 4}, {5}])


def fixed_game(key) -> GameWithUnions:
    n, masks, blocks = key
    return GameWithUnions(ExplicitGame(n, [ids_of(m) for m in masks]), Partition(n, [ids_of(b) for b in sorted(blocks)]))


def _f8(gwu):
    psi = _psi(gwu)
    if _key(gwu) != F8_GAME:
        return psi
    phi = shapley_shubik(gwu.quotient).values
    vals = [ZERO] * gwu.n
    for k, m in enumerate(gwu.partition.masks):
        block_total = sum((psi[i] for i in ids_of(m)), ZERO)
        for i in ids_of(m):
            vals[i] = phi[k] * psi[i] / block_total
    return tuple(vals)


def ls_players(game: ExplicitGame) -> int:
    """Bitset of players lying in some least-size winning coalition."""
    out = 0
    for m in game.least_size_masks:
        out |= m
    return out


def _make_f9(literal: bool):
    def _f9(gwu):
        if gwu.n != 3 or gwu.partition.u != 1:
            return _psi(gwu)
        game = gwu.game
        ls = ls_players(game)
        zero_test = game.support if literal else ls
        share = Fraction(1, popcount(ls))
        return tuple(share if zero_test >> i & 1 else ZERO for i in range(3))

    return _f9


def _make_f10(eps: Fraction):
    def _f10(gwu):
        psi = _psi(gwu)
        if _key(gwu) != F10_GAME:
            return psi
        vals = list(psi)
        vals[2] -= eps  # label 3
        vals[3] += eps  # label 4
        return tuple(vals)

    return _f10


def _make_f11(multiset: bool):
    def _f11(gwu):
        part = gwu.partition
        ls_bar = gwu.quotient_ls
        outer = Fraction(1, len(ls_bar))
        vals = [ZERO] * gwu.n
        reps = {}
        for s in gwu.game.masks:
            r = 0
            for k, b in enumerate(part.masks):
                if b & s:
                    r |= 1 << k
            reps.setdefault(r, []).append(s)
        for r in ls_bar:
            share = outer / popcount(r)
            for k in ids_of(r):
                pieces = [s & part.masks[k] for s in reps[r]]
                if multiset:
                    if popcount(r) == 1:
                        pieces = list(least_size_of(_internal_masks(gwu, r, k)))
                    else:
                        c = min(popcount(x) for x in pieces)
                        pieces = [x for x in pieces if popcount(x) == c]
                else:
                    pieces = sorted(set(pieces))
                inner = share / len(pieces)
                for s in pieces:
                    piece = inner / popcount(s)
                    for i in ids_of(s):
                        vals[i] += piece
        return tuple(vals)

    return _f11


DEFAULT_EPSILON = Fraction(1, 1000)


def counterexample_index(k: int, epsilon: Fraction = DEFAULT_EPSILON, variant: str = "default") -> CoalitionalIndex:
    """The k-th independence counterexample, ``1 <= k <= 11``.

    ``variant`` selects alternative readings where the displayed formula is
    ambiguous or defective:

    * ``k=9``: ``"default"`` zeroes players outside every least-size winning
      coalition; ``"literal"`` zeroes only null players.
    * ``k=11``: ``"default"`` follows the displayed set-based formula;
      ``"multiset"`` counts each least-size piece with multiplicity and falls
      back to the internal game when the union coalition is a singleton.
    """
    epsilon = Fraction(epsilon)
    table: dict[int, Callable] = {
        1: _f1,
        2: _f2,
        3: _f3,
        4: _f4,
        5: _f5,
        6: _f6,
        7: _f7,
        8: _f8,
    }
    if k in table:
        if variant != "default":
            raise DomainError(f"F{k} has no variant {variant!r}")
        return CoalitionalIndex(f"F{k}", table[k])
    if k == 9:
        if variant not in ("default", "literal"):
            raise DomainError(f"F9 has no variant {variant!r}")
        return CoalitionalIndex("F9" if variant == "default" else "F9-literal", _make_f9(variant == "literal"))
    if k == 10:
        if variant != "default":
            raise DomainError(f"F10 has no variant {variant!r}")
        base = PSI(fixed_game(F10_GAME)).values
        if not 0 < epsilon < base[2]:
            raise DomainError(f"epsilon must lie in (0, {base[2]}) to keep values nonnegative")
        return CoalitionalIndex("F10", _make_f10(epsilon))
    if k == 11:
        if variant not in ("default", "multiset"):
            raise DomainError(f"F11 has no variant {variant!r}")
        return CoalitionalIndex("F11" if variant == "default" else "F11-multiset", _make_f11(variant == "multiset"))
    raise DomainError(f"counterexample index must be in 1..11, got {k}")


def is_null(game: ExplicitGame, i: int) -> bool:
    return classify_player(game, i) is PlayerRole.NULL
