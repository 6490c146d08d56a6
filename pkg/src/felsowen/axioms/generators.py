"""Instance generators that satisfy each axiom's hypotheses by construction or by filtering.

Streams are reproducible from ``seed``.  Each stream starts with a fixed set
of anchor instances (the worked examples and the counterexamples' special
games), then continues with random instances over at most ``max_n`` players.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterator

from ..errors import DomainError
from ..games import ExplicitGame, ids_of, minimize_masks, popcount
from ..unions import GameWithUnions, Partition, _representatives_mask, trivial_partition
from .checks import AXIOMS, Instance, IrrelevantInstance, PairInstance, hypotheses_hold
from .indices import F8_GAME, F10_GAME, fixed_game


def _game(n: int, coalitions) -> ExplicitGame:
    return ExplicitGame(n, coalitions)


# players a..g of the worked examples are ids 0..6
EXAMPLE_ESSENTIAL = GameWithUnions(
    _game(7, [{0, 1, 5}, {0, 2, 5}, {0, 1, 2, 3}, {0, 6}, {4, 6}]),
    Partition(7, [{0, 1, 2}, {3, 4, 5}, {6}]),
)
EXAMPLE_ILSE_PARTITION = Partition(6, [{0, 1, 2, 3}, {4, 5}])
EXAMPLE_ILSE_W1 = _game(6, [{0, 1, 4}, {2, 3, 5}, {0, 1, 5}])
EXAMPLE_ILSE_W2 = _game(6, [{0, 1, 4}, {2, 3, 5}])
EXAMPLE_ILSE_V = _game(6, [{0, 1}, {2, 3}, {4}, {5}])


def all_simple_games(n: int) -> list[ExplicitGame]:
    """Every simple game on ``n`` players, as its minimal antichain (exhaustive; small ``n`` only)."""
    if not 1 <= n <= 4:
        raise DomainError("exhaustive game enumeration is limited to 1 <= n <= 4")
    subsets = list(range(1, 1 << n))
    out = []

    def extend(start: int, chosen: list[int]) -> None:
        if chosen:
            out.append(ExplicitGame._trusted(n, tuple(chosen)))
        for t in range(start, len(subsets)):
            s = subsets[t]
            if all(s & c != c and s & c != s for c in chosen):
                chosen.append(s)
                extend(t + 1, chosen)
                chosen.pop()

    extend(0, [])
    return out


def all_partitions(n: int) -> list[Partition]:
    """Every partition of ``n`` players, blocks ordered by smallest member."""

    def rec(i: int, blocks: list[int]) -> Iterator[list[int]]:
        if i == n:
            yield list(blocks)
            return
        for b in range(len(blocks)):
            blocks[b] |= 1 << i
            yield from rec(i + 1, blocks)
            blocks[b] &= ~(1 << i)
        blocks.append(1 << i)
        yield from rec(i + 1, blocks)
        blocks.pop()

    return [Partition(n, [ids_of(m) for m in bs]) for bs in rec(0, [])]


def exhaustive_games_with_unions(max_n: int = 4) -> Iterator[GameWithUnions]:
    for n in range(1, max_n + 1):
        parts = all_partitions(n)
        for game in all_simple_games(n):
            for p in parts:
                yield GameWithUnions(game, p)


# random building blocks -------------------------------------------------------


def random_partition(rng: random.Random, n: int) -> Partition:
    roll = rng.random()
    if roll < 0.15:
        return trivial_partition(n, "singletons")
    if roll < 0.3:
        return trivial_partition(n, "grand")
    labels: list[int] = []
    for i in range(n):
        labels.append(rng.randint(0, (max(labels) + 1) if labels else 0))
    blocks: dict[int, list[int]] = {}
    for i, b in enumerate(labels):
        blocks.setdefault(b, []).append(i)
    return Partition(n, [blocks[b] for b in sorted(blocks)])


def random_subset(rng: random.Random, pool: int, density: float | None = None) -> int:
    members = ids_of(pool)
    density = rng.uniform(0.2, 0.8) if density is None else density
    s = 0
    for i in members:
        if rng.random() < density:
            s |= 1 << i
    if not s:
        s = 1 << rng.choice(members)
    return s


def random_antichain(rng: random.Random, pool: int, max_coalitions: int = 5) -> tuple[int, ...]:
    count = rng.randint(1, max_coalitions)
    density = rng.uniform(0.15, 0.75)
    return minimize_masks(random_subset(rng, pool, density) for _ in range(count))


def random_game(rng: random.Random, n: int) -> ExplicitGame:
    return ExplicitGame._trusted(n, random_antichain(rng, (1 << n) - 1))


def random_gwu(rng: random.Random, max_n: int) -> GameWithUnions:
    n = rng.randint(1, max_n)
    return GameWithUnions(random_game(rng, n), random_partition(rng, n))


def _random_n(rng: random.Random, max_n: int, low: int = 2) -> int:
    # small games expose special cases more often
    return min(max_n, rng.choice([low, low + 1, 3, 4, 5, 6, max_n]))


# anchors ----------------------------------------------------------------------


def anchor_games(max_n: int = 6) -> list[GameWithUnions]:
    out = [EXAMPLE_ESSENTIAL, fixed_game(F8_GAME), fixed_game(F10_GAME)]
    for g in (EXAMPLE_ILSE_W1, EXAMPLE_ILSE_W2, EXAMPLE_ILSE_V):
        out.append(GameWithUnions(g, EXAMPLE_ILSE_PARTITION))
    for n in range(2, min(max_n, 5) + 1):
        full = (1 << n) - 1
        for masks in ((full,), tuple(1 << i for i in range(n))):
            g = ExplicitGame._trusted(n, masks)
            for kind in ("singletons", "grand"):
                out.append(GameWithUnions(g, trivial_partition(n, kind)))
    out.append(GameWithUnions(_game(3, [{0}, {1, 2}]), trivial_partition(3, "grand")))
    return [g for g in out if g.n <= max_n]


def _groups_by_representatives(gwu: GameWithUnions) -> list[tuple[int, ...]]:
    groups: dict[int, list[int]] = {}
    for m in gwu.game.masks:
        groups.setdefault(_representatives_mask(gwu.partition, m), []).append(m)
    return [tuple(groups[r]) for r in sorted(groups)]


def splits(gwu: GameWithUnions, rng: random.Random | None = None, limit: int = 64) -> Iterator[PairInstance]:
    """Pairs ``(W, V)`` whose disjunction is ``gwu.game``, split along representative sets.

    With ``rng`` one random two-colouring is drawn; otherwise colourings are
    enumerated (up to ``limit``).
    """
    groups = _groups_by_representatives(gwu)
    if len(groups) < 2:
        return
    n = gwu.n
    if rng is None:
        colourings = itertools.islice(itertools.product((0, 1), repeat=len(groups) - 1), limit)
        colourings = ((0,) + c for c in colourings)
    else:
        colourings = [tuple(rng.randint(0, 1) for _ in groups)]
    for colour in colourings:
        if len(set(colour)) < 2:
            continue
        a = [m for g, c in zip(groups, colour) if c == 0 for m in g]
        b = [m for g, c in zip(groups, colour) if c == 1 for m in g]
        yield PairInstance(ExplicitGame._trusted(n, tuple(a)), ExplicitGame._trusted(n, tuple(b)), gwu.partition)


def decompose(w: ExplicitGame, partition: Partition) -> ExplicitGame:
    """Split every minimal winning coalition of the unique least-size union coalition into its union parts."""
    gwu = GameWithUnions(w, partition)
    if len(gwu.quotient_ls) != 1:
        raise DomainError("decomposition needs a single least-size winning union coalition")
    (r,) = gwu.quotient_ls
    pieces = []
    for m in w.masks:
        if _representatives_mask(partition, m) == r:
            pieces.extend(m & partition.masks[k] for k in ids_of(r))
    return ExplicitGame._trusted(w.n, minimize_masks(pieces))


def irrelevant_coalitions(gwu: GameWithUnions) -> list[int]:
    quotient = set(gwu.quotient.masks)
    return [m for m in gwu.game.masks if _representatives_mask(gwu.partition, m) not in quotient]


# per-axiom streams --------------------------------------------------------------


def _single_stream(rng: random.Random, max_n: int) -> Iterator[GameWithUnions]:
    yield from anchor_games(max_n)
    while True:
        n = _random_n(rng, max_n, low=1)
        yield GameWithUnions(random_game(rng, n), random_partition(rng, n))


def _tcls_unions_stream(rng: random.Random, max_n: int) -> Iterator[PairInstance]:
    for base in anchor_games(max_n):
        yield from splits(base)
    while True:
        roll = rng.random()
        n = _random_n(rng, max_n)
        part = random_partition(rng, n)
        if roll < 0.5:
            yield from splits(GameWithUnions(random_game(rng, n), part), rng)
        elif roll < 0.8:
            yield PairInstance(random_game(rng, n), random_game(rng, n), part)
        else:
            full = (1 << n) - 1
            s1, s2 = random_subset(rng, full), random_subset(rng, full)
            yield PairInstance(ExplicitGame._trusted(n, (s1,)), ExplicitGame._trusted(n, (s2,)), part)


def _tcls_inside_stream(rng: random.Random, max_n: int) -> Iterator[PairInstance]:
    for n in range(2, min(max_n, 3) + 1):
        grand = trivial_partition(n, "grand")
        for base in all_simple_games(n):
            for a, b in _within_splits(base):
                yield PairInstance(a, b, grand)
    while True:
        n = _random_n(rng, max_n)
        part = random_partition(rng, n)
        block = part.masks[rng.randrange(part.u)]
        roll = rng.random()
        if roll < 0.25 and popcount(block) >= 2:
            # two unanimity games of equal size inside one union
            size = rng.randint(1, popcount(block) - 1)
            combos = list(itertools.combinations(ids_of(block), size))
            l1, l2 = rng.sample(combos, 2)
            w = ExplicitGame._trusted(n, (sum(1 << i for i in l1),))
            v = ExplicitGame._trusted(n, (sum(1 << i for i in l2),))
            yield PairInstance(w, v, part)
        elif roll < 0.6:
            game = ExplicitGame._trusted(n, random_antichain(rng, block))
            for a, b in _within_splits(game, rng):
                yield PairInstance(a, b, part)
        else:
            w = ExplicitGame._trusted(n, random_antichain(rng, block, 3))
            v = ExplicitGame._trusted(n, random_antichain(rng, block, 3))
            yield PairInstance(w, v, part)


def _within_splits(game: ExplicitGame, rng: random.Random | None = None) -> Iterator[tuple[ExplicitGame, ExplicitGame]]:
    masks = game.masks
    if len(masks) < 2:
        return
    n = game.n
    if rng is None:
        colourings = ((0,) + c for c in itertools.product((0, 1), repeat=len(masks) - 1))
    else:
        colourings = [tuple(rng.randint(0, 1) for _ in masks)]
    for colour in colourings:
        if len(set(colour)) < 2:
            continue
        a = tuple(m for m, c in zip(masks, colour) if c == 0)
        b = tuple(m for m, c in zip(masks, colour) if c == 1)
        yield ExplicitGame._trusted(n, a), ExplicitGame._trusted(n, b)


def _add_irrelevant(rng: random.Random, gwu: GameWithUnions) -> IrrelevantInstance | None:
    """Add a coalition whose representatives strictly contain a winning union coalition."""
    part = gwu.partition
    game = gwu.game
    r = rng.choice(gwu.quotient.masks)
    outside = ((1 << part.u) - 1) & ~r
    if not outside:
        return None
    extra_unions = random_subset(rng, outside)
    target_unions = r | extra_unions
    s = 0
    for k in ids_of(target_unions):
        s |= random_subset(rng, part.masks[k])
    if any(m & s == m or m & s == s for m in game.masks):
        return None
    bigger = ExplicitGame._trusted(game.n, game.masks + (s,))
    return IrrelevantInstance(GameWithUnions(bigger, part), s)


def _iic_stream(rng: random.Random, max_n: int) -> Iterator[IrrelevantInstance]:
    for base in anchor_games(max_n):
        for s in irrelevant_coalitions(base):
            yield IrrelevantInstance(base, s)
        for _ in range(8):
            inst = _add_irrelevant(rng, base)
            if inst is not None:
                yield inst
    while True:
        n = _random_n(rng, max_n)
        base = GameWithUnions(random_game(rng, n), random_partition(rng, n))
        found = irrelevant_coalitions(base)
        if found:
            yield IrrelevantInstance(base, rng.choice(found))
        inst = _add_irrelevant(rng, base)
        if inst is not None:
            yield inst


def _ilse_w(rng: random.Random, n: int, part: Partition) -> ExplicitGame:
    """A game whose quotient has the single least-size winner ``R`` (random)."""
    r = random_subset(rng, (1 << part.u) - 1)
    families = []
    for k in ids_of(r):
        count = rng.randint(1, 3)
        families.append([random_subset(rng, part.masks[k]) for _ in range(count)])
    product = [sum(choice) for choice in itertools.product(*families)]
    chosen = [m for m in product if rng.random() < 0.7] or [rng.choice(product)]
    extra = []
    # optional coalitions over larger union sets not containing R keep the quotient's least-size family
    for _ in range(rng.randint(0, 2)):
        outer = random_subset(rng, (1 << part.u) - 1)
        if popcount(outer) > popcount(r) and outer & r != r:
            extra.append(sum(random_subset(rng, part.masks[k]) for k in ids_of(outer)))
    return ExplicitGame._trusted(n, minimize_masks(chosen + extra))


def _perturb_v(rng: random.Random, v: ExplicitGame, part: Partition) -> ExplicitGame:
    masks = list(v.masks)
    for _ in range(rng.randint(1, 2)):
        roll = rng.random()
        if roll < 0.5:
            k = rng.randrange(part.u)
            masks.append(random_subset(rng, part.masks[k]))
        else:
            masks.append(random_subset(rng, (1 << v.n) - 1))
    return ExplicitGame._trusted(v.n, minimize_masks(masks))


def _ilse_stream(rng: random.Random, max_n: int) -> Iterator[PairInstance]:
    p = EXAMPLE_ILSE_PARTITION
    yield PairInstance(EXAMPLE_ILSE_W1, decompose(EXAMPLE_ILSE_W1, p), p)
    yield PairInstance(EXAMPLE_ILSE_W2, EXAMPLE_ILSE_V, p)
    while True:
        n = _random_n(rng, max_n)
        part = random_partition(rng, n)
        w = _ilse_w(rng, n, part)
        v = decompose(w, part)
        yield PairInstance(w, v, part)
        if rng.random() < 0.5:
            yield PairInstance(w, _perturb_v(rng, v, part), part)


_STREAMS = {
    "TCLS-AU": _tcls_unions_stream,
    "TCLS-IU": _tcls_inside_stream,
    "IIC": _iic_stream,
    "ILSE": _ilse_stream,
}


def generate_instances(axiom: str, seed: int = 0, count: int | None = None, max_n: int = 6) -> Iterator[Instance]:
    """Instances satisfying ``axiom``'s hypotheses, reproducible from ``seed``.

    Infinite unless ``count`` is given.  Candidates failing the hypothesis
    validator are discarded before being emitted.
    """
    if axiom not in AXIOMS:
        raise DomainError(f"unknown axiom {axiom!r}")
    if max_n < 2:
        raise DomainError("max_n must be at least 2")
    rng = random.Random(f"{axiom}:{seed}")
    stream = _STREAMS.get(axiom, _single_stream)(rng, max_n)
    emitted = 0
    for inst in stream:
        if count is not None and emitted >= count:
            return
        if hypotheses_hold(axiom, inst):
            emitted += 1
            yield inst
