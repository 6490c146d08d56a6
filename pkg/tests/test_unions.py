from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import antichains, games_with_unions
from felsowen import (
    Coalition,
    DomainError,
    ExplicitGame,
    GameWithUnions,
    Partition,
    WeightedGame,
    essential_families,
    essential_least_size,
    internal_game,
    is_irrelevant,
    least_size_winning,
    quotient_game,
    representatives,
    trivial_partition,
)
from felsowen.axioms.checks import drop_coalition
from felsowen.axioms.generators import EXAMPLE_ILSE_PARTITION, EXAMPLE_ILSE_V, EXAMPLE_ILSE_W1
from felsowen.games import winning_table
from felsowen.unions import localize

# players a..g are 0..6; unions 1..3 are 0..2
a, b, c, d, e, f, g = range(7)
EXAMPLE = GameWithUnions(
    ExplicitGame(7, [{a, b, f}, {a, c, f}, {a, b, c, d}, {a, g}, {e, g}]),
    [[a, b, c], [d, e, f], [g]],
)
# five players 1..5 are 0..4; {1,2,5} is absorbed by {1,5} on construction
F10_GAME = GameWithUnions(ExplicitGame(5, [{0, 4}, {0, 1, 3}, {1, 2, 4}, {0, 1, 4}]), [[0], [1, 2, 3], [4]])


def C(*ids):
    return Coalition(ids)


def build(n, masks, blocks):
    return GameWithUnions(ExplicitGame(n, [Coalition.from_mask(m) for m in masks]), blocks)


class TestPartition:
    def test_trivial(self):
        assert trivial_partition(3, "singletons").blocks == (C(0), C(1), C(2))
        assert trivial_partition(3, "grand").blocks == (C(0, 1, 2),)
        assert trivial_partition(1, "singletons") == trivial_partition(1, "grand")

    @pytest.mark.parametrize("blocks", [[[0], [0, 1]], [[0]], [[0], [], [1]], [[0], [1], [2]]])
    def test_invalid(self, blocks):
        with pytest.raises(DomainError):
            Partition(2, blocks)

    def test_block_of(self):
        assert EXAMPLE.partition.block_of == (0, 0, 0, 1, 1, 1, 2)


class TestQuotient:
    def test_example(self):
        assert quotient_game(EXAMPLE).minimal_winning == {C(0, 1), C(0, 2), C(1, 2)}

    def test_grand_union(self):
        gwu = GameWithUnions(EXAMPLE.game, trivial_partition(7, "grand"))
        assert quotient_game(gwu).minimal_winning == {C(0)}

    def test_weighted_quotient(self):
        gwu = GameWithUnions(WeightedGame(4, (3, 1, 1, 1)), [[0], [1, 2, 3]])
        assert quotient_game(gwu).minimal_winning == {C(0, 1)}

    @given(antichains(max_n=6))
    def test_trivial_structures(self, nm):
        n, masks = nm
        game = ExplicitGame(n, [Coalition.from_mask(m) for m in masks])
        assert quotient_game(GameWithUnions(game, trivial_partition(n))) == game
        assert quotient_game(GameWithUnions(game, trivial_partition(n, "grand"))).minimal_winning == {C(0)}

    @given(games_with_unions(max_n=6))
    def test_matches_definition(self, gm):
        n, masks, blocks = gm
        gwu = build(n, masks, blocks)
        quo = winning_table(quotient_game(gwu))
        for r in range(1 << len(blocks)):
            pooled = gwu.partition.union_mask(r)
            assert bool(quo[r]) == gwu.game.wins(pooled)


class TestRepresentatives:
    def test_examples(self):
        assert representatives(EXAMPLE, {a, b, f}) == C(0, 1)
        assert representatives(EXAMPLE, set()) == C()
        assert representatives(EXAMPLE, {a, g}) == C(0, 2)

    @given(games_with_unions(max_n=6), st.data())
    def test_monotone(self, gm, data):
        n, masks, blocks = gm
        gwu = build(n, masks, blocks)
        s = data.draw(st.integers(0, (1 << n) - 1))
        t = s | data.draw(st.integers(0, (1 << n) - 1))
        assert representatives(gwu, Coalition.from_mask(s)) <= representatives(gwu, Coalition.from_mask(t))


class TestIrrelevant:
    def test_absorbed_coalition_is_not_minimal(self):
        # {1,2,5} contains {1,5}, so it never reaches the minimal family
        with pytest.raises(DomainError):
            is_irrelevant(F10_GAME, {0, 1, 4})

    def test_relevant(self):
        assert not is_irrelevant(F10_GAME, {0, 4})
        assert not is_irrelevant(F10_GAME, {0, 1, 3})

    def test_irrelevant_example(self):
        gwu = GameWithUnions(ExplicitGame(3, [{0, 2}, {1}]), [[0, 1], [2]])
        assert is_irrelevant(gwu, {0, 2})
        assert not is_irrelevant(gwu, {1})

    @given(antichains(max_n=6))
    def test_singletons_never_irrelevant(self, nm):
        n, masks = nm
        gwu = build(n, masks, trivial_partition(n))
        assert not any(is_irrelevant(gwu, s) for s in gwu.game.minimal_winning)

    @given(games_with_unions(max_n=6))
    def test_dropping_irrelevant_keeps_essentials(self, gm):
        n, masks, blocks = gm
        gwu = build(n, masks, blocks)
        for s in gwu.game.minimal_winning:
            if len(gwu.game.masks) > 1 and is_irrelevant(gwu, s):
                reduced = GameWithUnions(drop_coalition(gwu.game, s.mask), gwu.partition)
                assert reduced.quotient_ls == gwu.quotient_ls
                assert [(x.r, x.k, x.least_size) for x in essential_families(reduced)] == [
                    (x.r, x.k, x.least_size) for x in essential_families(gwu)
                ]


class TestInternalGame:
    def test_example_families(self):
        g12 = internal_game(EXAMPLE, {0, 1}, 0)
        assert least_size_winning(g12)[0] == {C(0, 1), C(0, 2)}
        g23 = internal_game(EXAMPLE, {1, 2}, 1)
        # block 2 is {d,e,f}; e has local id 1
        assert least_size_winning(g23)[0] == {C(1)}

    def test_grand_union_is_base_game(self):
        gwu = GameWithUnions(EXAMPLE.game, trivial_partition(7, "grand"))
        assert internal_game(gwu, {0}, 0) == EXAMPLE.game

    def test_errors(self):
        with pytest.raises(DomainError):
            internal_game(EXAMPLE, {0, 1}, 2)
        with pytest.raises(DomainError):
            internal_game(EXAMPLE, {0}, 0)

    @given(games_with_unions(max_n=6))
    def test_matches_definition(self, gm):
        n, masks, blocks = gm
        gwu = build(n, masks, blocks)
        part = gwu.partition
        for r in gwu.quotient_ls:
            for k in range(part.u):
                if not r >> k & 1:
                    continue
                others = part.union_mask(r & ~(1 << k))
                members = part.members(k)
                inner = internal_game(gwu, Coalition.from_mask(r), k)
                for size in range(len(members) + 1):
                    for sub in combinations(members, size):
                        s = sum(1 << i for i in sub)
                        assert inner.wins(localize(s, members)) == gwu.game.wins(s | others)
                # R \ {k} loses, so the empty set never wins inside
                assert not inner.wins(0)


class TestEssentialFamilies:
    def test_example_six_families(self):
        got = {(x.r, x.k): x.least_size for x in essential_families(EXAMPLE)}
        assert got == {
            (C(0, 1), 0): {C(a, b), C(a, c)},
            (C(0, 1), 1): {C(d), C(f)},
            (C(0, 2), 0): {C(a)},
            (C(0, 2), 2): {C(g)},
            (C(1, 2), 1): {C(e)},
            (C(1, 2), 2): {C(g)},
        }

    def test_essential_equality_of_decomposed_pair(self):
        part = EXAMPLE_ILSE_PARTITION
        w1 = GameWithUnions(EXAMPLE_ILSE_W1, part)
        v = GameWithUnions(EXAMPLE_ILSE_V, part)
        expected = {C(0, 1), C(2, 3), C(4), C(5)}
        assert essential_least_size(w1) == expected == essential_least_size(v)

    def test_singletons(self):
        gwu = GameWithUnions(EXAMPLE.game, trivial_partition(7))
        for fam in essential_families(gwu):
            assert fam.least_size == {C(fam.k)}

    @given(games_with_unions(max_n=6))
    def test_shape(self, gm):
        n, masks, blocks = gm
        gwu = build(n, masks, blocks)
        fams = essential_families(gwu)
        pairs = [(x.r.mask, x.k) for x in fams]
        assert sorted(pairs) == sorted((r, k) for r in gwu.quotient_ls for k in range(len(blocks)) if r >> k & 1)
        for x in fams:
            block = gwu.partition.masks[x.k]
            assert x.least_size <= x.minimal
            assert all(s.mask and s.mask & ~block == 0 for s in x.minimal)
