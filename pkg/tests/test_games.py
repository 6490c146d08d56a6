import warnings
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import antichains, weighted_games
from felsowen import (
    CapacityError,
    Coalition,
    DomainError,
    ExplicitGame,
    LeastSizeSummary,
    PlayerRole,
    WeightedGame,
    are_symmetric,
    classify_player,
    combine,
    is_winning,
    least_size_winning,
    minimal_winning,
    to_explicit,
    unanimity_game,
)
from felsowen.games import FormulaMismatchWarning, minimize_masks, winning_table
import oracle

DICTATOR = WeightedGame(4, (4, 2, 1))
EXAMPLE_MW = [{0, 1, 5}, {0, 2, 5}, {0, 1, 2, 3}, {0, 6}, {4, 6}]


def C(*ids):
    return Coalition(ids)


class TestCoalition:
    def test_order_free_equality_and_hash(self):
        assert C(3, 1, 2) == C(1, 2, 3)
        assert hash(C(3, 1, 2)) == hash(C(2, 3, 1))
        assert C(1, 2) == {1, 2} == frozenset({2, 1})

    def test_large_ids_share_the_representation(self):
        big = Coalition(range(100, 188))
        assert len(big) == 88 and 187 in big and 99 not in big
        assert big == Coalition(reversed(range(100, 188)))

    def test_set_algebra(self):
        assert C(1, 2) | C(3) == C(1, 2, 3)
        assert C(1, 2) & C(2, 3) == C(2)
        assert C(1, 2) - C(2) == C(1)
        assert C(1) < C(1, 2) and C(1, 2) <= C(1, 2)

    def test_immutable(self):
        with pytest.raises(AttributeError):
            C(1).mask = 3

    def test_negative_id_rejected(self):
        with pytest.raises(DomainError):
            Coalition([-1])


class TestIsWinning:
    def test_dictator_wins_alone(self):
        assert is_winning(DICTATOR, {0})

    def test_remaining_weight_loses(self):
        assert not is_winning(DICTATOR, {1, 2})

    def test_empty_loses(self):
        assert not is_winning(DICTATOR, set())
        assert not is_winning(ExplicitGame(3, [{0, 1}]), set())

    def test_out_of_range(self):
        with pytest.raises(DomainError):
            is_winning(DICTATOR, {3})


class TestMinimalWinning:
    def test_dictator(self):
        assert minimal_winning(DICTATOR) == {C(0)}

    def test_unanimity_weights(self):
        assert minimal_winning(WeightedGame(5, (1,) * 5)) == {C(0, 1, 2, 3, 4)}

    def test_brute_force_example(self):
        assert minimal_winning(WeightedGame(5, (3, 2, 2, 1))) == {C(0, 1), C(0, 2), C(1, 2, 3)}

    def test_capacity(self):
        with pytest.raises(CapacityError):
            minimal_winning(WeightedGame(14, (1,) * 26))
        assert len(minimal_winning(WeightedGame(3, (1,) * 4), bound=4)) == 4

    @given(weighted_games(max_n=12))
    def test_round_trip_on_every_subset(self, qw):
        q, w = qw
        game = WeightedGame(q, tuple(w))
        explicit = to_explicit(game)
        direct = winning_table(game)
        via = winning_table(explicit)
        assert (direct == via).all()
        assert minimal_winning(game) == explicit.minimal_winning
        assert {frozenset(s) for s in explicit.minimal_winning} == oracle.minimal_winning(
            range(len(w)), oracle.weighted_pred(q, w)
        )


class TestExplicitGame:
    def test_minimizes_input(self):
        g = ExplicitGame(3, [{0}, {0, 1}, {1, 2}])
        assert g.minimal_winning == {C(0), C(1, 2)}

    @pytest.mark.parametrize("family", [[], [set()], [{3}]])
    def test_rejects_invalid(self, family):
        with pytest.raises(DomainError):
            ExplicitGame(3, family)

    def test_equality_ignores_order(self):
        assert ExplicitGame(3, [{0}, {1, 2}]) == ExplicitGame(3, [{2, 1}, {0}])

    @given(antichains(max_n=8))
    def test_antichain(self, nm):
        n, masks = nm
        g = ExplicitGame(n, [Coalition.from_mask(m) for m in masks])
        for a in g.masks:
            for b in g.masks:
                assert a == b or a & b != a

    @given(antichains(max_n=7), st.data())
    def test_monotone(self, nm, data):
        n, masks = nm
        g = ExplicitGame(n, [Coalition.from_mask(m) for m in masks])
        s = data.draw(st.integers(0, (1 << n) - 1))
        t = s | data.draw(st.integers(0, (1 << n) - 1))
        if g.wins(s):
            assert g.wins(t)


class TestLeastSize:
    def test_example_family(self):
        ls, summ = least_size_winning(ExplicitGame(7, EXAMPLE_MW))
        assert ls == {C(0, 6), C(4, 6)}
        assert (summ.c, summ.p) == (2, 2)
        assert summ.per_player == (1, 0, 0, 0, 1, 0, 2)

    def test_equal_sizes(self):
        ls, summ = least_size_winning(ExplicitGame(4, [{0, 1}, {2, 3}]))
        assert ls == {C(0, 1), C(2, 3)} and (summ.c, summ.p) == (2, 2)

    def test_unanimity(self):
        ls, summ = least_size_winning(unanimity_game(5, {1, 3, 4}))
        assert ls == {C(1, 3, 4)} and (summ.c, summ.p) == (3, 1)

    def test_summary_consistency_enforced(self):
        with pytest.raises(DomainError):
            LeastSizeSummary(c=2, p=1, per_player=(1, 0))

    @given(antichains(max_n=7))
    def test_summary_sum(self, nm):
        n, masks = nm
        _, s = least_size_winning(ExplicitGame(n, [Coalition.from_mask(m) for m in masks]))
        assert sum(s.per_player) == s.p * s.c and 1 <= s.c <= n and s.p >= 1


class TestUnanimity:
    def test_examples(self):
        assert unanimity_game(3, {0, 1}).minimal_winning == {C(0, 1)}
        assert unanimity_game(1, {0}).minimal_winning == {C(0)}
        assert unanimity_game(5, range(5)).minimal_winning == {C(*range(5))}

    def test_empty(self):
        with pytest.raises(DomainError):
            unanimity_game(3, set())


class TestCombine:
    def test_disjunction_of_dictators(self):
        g = combine(unanimity_game(2, {0}), unanimity_game(2, {1}), "disjunction")
        assert g.minimal_winning == {C(0), C(1)}

    def test_conjunction_of_dictators(self):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", FormulaMismatchWarning)
            g = combine(unanimity_game(2, {0}), unanimity_game(2, {1}), "conjunction")
        assert g.minimal_winning == {C(0, 1)}

    def test_absorbed_coalition_is_flagged(self):
        a, b = unanimity_game(2, {0, 1}), unanimity_game(2, {0})
        with pytest.warns(FormulaMismatchWarning):
            g = combine(a, b, "disjunction")
        assert g.minimal_winning == {C(0)}
        with pytest.raises(DomainError):
            combine(a, b, "disjunction", on_mismatch="raise")

    def test_formula_agreement_is_silent(self):
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            combine(unanimity_game(3, {0}), unanimity_game(3, {1, 2}), "disjunction")

    def test_player_sets_must_match(self):
        with pytest.raises(DomainError):
            combine(unanimity_game(2, {0}), unanimity_game(3, {0}), "disjunction")

    @given(antichains(max_n=10), antichains(max_n=10), st.sampled_from(["disjunction", "conjunction"]))
    def test_winning_family_semantics(self, a, b, mode):
        n = max(a[0], b[0])
        ga = ExplicitGame(n, [Coalition.from_mask(m) for m in a[1]])
        gb = ExplicitGame(n, [Coalition.from_mask(m) for m in b[1]])
        g = combine(ga, gb, mode, on_mismatch="ignore")
        ta, tb, t = winning_table(ga), winning_table(gb), winning_table(g)
        assert ((ta | tb) == t).all() if mode == "disjunction" else ((ta & tb) == t).all()


class TestRoles:
    def test_dictator_and_nulls(self):
        g = to_explicit(DICTATOR)
        assert classify_player(g, 0) is PlayerRole.DICTATOR
        assert classify_player(g, 1) is PlayerRole.NULL
        assert classify_player(g, 2) is PlayerRole.NULL

    def test_vetoer(self):
        assert classify_player(ExplicitGame(3, [{0, 1}, {0, 2}]), 0) is PlayerRole.VETOER

    def test_regular(self):
        assert classify_player(ExplicitGame(4, [{0, 1}, {2, 3}]), 0) is PlayerRole.REGULAR

    def test_symmetry(self):
        g = ExplicitGame(4, [{0, 1}, {2, 3}])
        assert are_symmetric(g, 0, 1)
        # swapping 0 and 2 alone sends {0,1} to {1,2}, which is losing
        assert not are_symmetric(g, 0, 2)
        assert are_symmetric(to_explicit(DICTATOR), 1, 2)

    def test_symmetry_needs_two_players(self):
        with pytest.raises(DomainError):
            are_symmetric(ExplicitGame(2, [{0}]), 1, 1)

    @given(antichains(max_n=6), st.data())
    def test_symmetry_matches_definition(self, nm, data):
        n, masks = nm
        if n < 2:
            return
        g = ExplicitGame(n, [Coalition.from_mask(m) for m in masks])
        i, j = data.draw(st.lists(st.integers(0, n - 1), min_size=2, max_size=2, unique=True))
        rest = [p for p in range(n) if p not in (i, j)]
        expected = all(
            g.wins(sum(1 << p for p in s) | 1 << i) == g.wins(sum(1 << p for p in s) | 1 << j)
            for r in range(len(rest) + 1)
            for s in combinations(rest, r)
        )
        assert are_symmetric(g, i, j) == expected


def test_minimize_masks_drops_supersets():
    assert set(minimize_masks([0b011, 0b001, 0b110, 0b111])) == {0b001, 0b110}
