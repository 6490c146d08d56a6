import os
import random
import subprocess
import sys
from fractions import Fraction as Fr
from math import comb

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import partitions, weighted_games
from felsowen import CapacityError, DomainError, GameWithUnions, WeightedGame, felsenthal, felsenthal_owen
from felsowen.weighted import (
    DEFAULT_KERNEL,
    KERNELS,
    SizeWeightTable,
    count_least_size,
    felsenthal_owen_weighted,
    felsenthal_weighted,
    least_size_quotient,
    min_winning_size,
)
from felsowen.weighted.table import PLAIN_LIMIT, PRIMES, crt, moduli_for
import oracle

kernels = pytest.mark.parametrize("kernel", list(KERNELS))

BIG_PER_PLAYER = [
    332, 332, 332, 332, 332, 8, 0, 332, 332, 0, 0, 332, 101, 0, 0, 332, 0, 332, 332, 0,
    0, 332, 0, 0, 0, 8, 8, 0, 332, 276, 332, 8, 332, 8, 101, 332, 0, 0, 332, 101,
    332, 332, 0, 101, 276, 8, 332, 101, 0, 0, 0, 332, 0, 101, 332, 0, 0, 0, 8, 8,
    0, 332, 332, 332, 332, 0, 8, 101, 276, 0, 101, 276, 0, 332, 0, 0, 8, 0, 0, 0,
]


def big_case():
    rng = random.Random(11)
    w = [rng.randint(1, 9) for _ in range(80)]
    return sum(w) * 2 // 3, w


class TestMinWinningSize:
    def test_examples(self):
        assert min_winning_size(5, [3, 2, 2, 1]) == 2
        assert min_winning_size(8, [3, 2, 2, 1]) == 4
        assert min_winning_size(1, [1, 1, 1]) == 1

    @pytest.mark.parametrize("q", [0, 9])
    def test_infeasible(self, q):
        with pytest.raises(DomainError):
            min_winning_size(q, [3, 2, 2, 1])


@kernels
class TestCounting:
    def test_example(self, kernel):
        s = count_least_size(5, [3, 2, 2, 1], kernel=kernel)
        assert (s.c, s.p, s.per_player) == (2, 2, (2, 1, 1, 0))

    def test_unanimity(self, kernel):
        s = count_least_size(10, [4, 3, 2, 1], kernel=kernel)
        assert (s.c, s.p, s.per_player) == (4, 1, (1, 1, 1, 1))

    def test_symmetric(self, kernel):
        s = count_least_size(2, [1, 1, 1, 1], kernel=kernel)
        assert (s.c, s.p, s.per_player) == (2, 6, (3, 3, 3, 3))

    def test_zero_weight(self, kernel):
        assert felsenthal_weighted(2, [2, 0], kernel=kernel).same_values([1, 0])

    def test_felsenthal_example(self, kernel):
        assert felsenthal_weighted(5, [3, 2, 2, 1], kernel=kernel).same_values([Fr(1, 2), Fr(1, 4), Fr(1, 4), 0])
        assert felsenthal_weighted(4, [4, 2, 1], kernel=kernel).same_values([1, 0, 0])

    def test_frozen_eighty_players(self, kernel):
        q, w = big_case()
        s = count_least_size(q, w, kernel=kernel)
        assert (q, s.c, s.p) == (249, 33, 332)
        assert list(s.per_player) == BIG_PER_PLAYER

    def test_counts_beyond_one_word(self, kernel):
        # C(90, 45) needs several residues
        s = count_least_size(45, [1] * 90, kernel=kernel)
        assert s.p == comb(90, 45) > PLAIN_LIMIT
        assert set(s.per_player) == {comb(89, 44)}

    def test_large_counts_match_oracle(self, kernel):
        # with tens and nines at quota 10c - 9, up to nine nines can stand in for tens
        w = [10, 9] * 45
        random.Random(5).shuffle(w)
        q = 10 * 25 - 9
        c, p, per = oracle.least_size_counts(q, w)
        s = count_least_size(q, w, kernel=kernel)
        assert p > PLAIN_LIMIT
        assert (s.c, s.p, list(s.per_player)) == (c, p, per)

    def test_owen_example(self, kernel):
        v = felsenthal_owen_weighted(4, [3, 1, 1, 1], [[0], [1, 2, 3]], kernel=kernel)
        assert v.same_values([Fr(1, 2), Fr(1, 6), Fr(1, 6), Fr(1, 6)])

    def test_owen_trivial_structures(self, kernel):
        q, w = 5, [3, 2, 2, 1]
        psi = felsenthal_weighted(q, w, kernel=kernel).values
        assert felsenthal_owen_weighted(q, w, [[i] for i in range(4)], kernel=kernel).values == psi
        assert felsenthal_owen_weighted(q, w, [range(4)], kernel=kernel).values == psi


@given(weighted_games(max_n=12, max_weight=30))
def test_counts_match_oracle(qw):
    q, w = qw
    c, p, per = oracle.least_size_counts(q, w)
    for kernel in KERNELS:
        s = count_least_size(q, w, kernel=kernel)
        assert (s.c, s.p, list(s.per_player)) == (c, p, per)
        assert sum(s.per_player) == s.p * s.c


@given(weighted_games(max_n=10, max_weight=30), st.data())
def test_backends_agree(qw, data):
    q, w = qw
    blocks = data.draw(partitions(len(w)))
    gwu = GameWithUnions(WeightedGame(q, tuple(w)), blocks)
    assert felsenthal_weighted(q, w).values == felsenthal(gwu.game).values
    assert felsenthal_owen_weighted(q, w, blocks).values == felsenthal_owen(gwu).values


@given(weighted_games(max_n=10, max_weight=40), st.data())
def test_gcd_rescale_invariance(qw, data):
    q, w = qw
    k = data.draw(st.integers(2, 7))
    assert count_least_size(q * k, [x * k for x in w]) == count_least_size(q, w)


class TestTable:
    @kernels
    @given(weighted_games(max_n=10, max_weight=25), st.data())
    def test_remove_then_add_restores(self, kernel, qw, data):
        q, w = qw
        t = SizeWeightTable(q, len(w), len(w), kernel=kernel)
        for x in w:
            t.add(x)
        i = data.draw(st.integers(0, len(w) - 1))
        back = t.removed(w[i])
        back.add(w[i])
        assert back.same_counts(t)

    @kernels
    @given(weighted_games(max_n=10, max_weight=25))
    def test_rows_are_binomials(self, kernel, qw):
        q, w = qw
        t = SizeWeightTable(q, len(w), len(w), kernel=kernel)
        for x in w:
            t.add(x)
        for s in range(len(w) + 1):
            assert t.row_total(s) == comb(len(w), s)

    @kernels
    def test_entries_match_oracle(self, kernel):
        w = [3, 5, 1, 4, 4, 2]
        q = 9
        t = SizeWeightTable(q, 6, 6, kernel=kernel)
        for x in w:
            t.add(x)
        rows = oracle.size_weight_counts(w, 6)
        for s in range(7):
            for v in range(q):
                assert t.entry(s, v) == rows[s].get(v, 0)
            assert t.saturated(s) == sum(cnt for v, cnt in rows[s].items() if v >= q)

    def test_multimodular_table_matches(self):
        a = SizeWeightTable(7, 20, 200)
        b = SizeWeightTable(7, 20, 3)
        assert len(a.moduli) > 1 and b.moduli == (0,)
        for x in (3, 2, 4):
            a.add(x)
            b.add(x)
        assert all(a.entry(s, v) == b.entry(s, v) for s in range(21) for v in range(7))

    def test_capacity_message(self):
        with pytest.raises(CapacityError, match="rescale"):
            SizeWeightTable(10**9, 40, 200)

    def test_capacity_from_counting(self):
        rng = random.Random(3)
        w = [rng.randint(10**9, 2 * 10**9) | 1 for _ in range(40)]
        with pytest.raises(CapacityError):
            count_least_size(sum(w) // 2 + 1, w)

    def test_overfull(self):
        t = SizeWeightTable(5, 1, 1)
        t.add(1)
        with pytest.raises(DomainError):
            t.add(1)


class TestModularArithmetic:
    def test_primes(self):
        assert len(set(PRIMES)) == len(PRIMES)
        assert all(sympy.isprime(p) and p < 2**62 for p in PRIMES)

    @given(st.integers(0, 2**400))
    def test_crt_round_trip(self, x):
        moduli = moduli_for(x + 1)
        if moduli == (0,):
            assert crt([x], moduli) == x
        else:
            assert crt([x % m for m in moduli], moduli) == x

    def test_bound_beyond_primes(self):
        with pytest.raises(CapacityError):
            moduli_for(2**600)


class TestQuotientListing:
    def test_listing(self):
        c, ls = least_size_quotient(5, [3, 2, 2, 1])
        assert c == 2 and sorted(ls) == [0b011, 0b101]

    def test_budget(self):
        with pytest.raises(CapacityError):
            least_size_quotient(16, [1] * 31)


def test_default_kernel_falls_back_when_forced():
    env = dict(os.environ, FELSOWEN_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from felsowen.weighted import DEFAULT_KERNEL, KERNELS; print(DEFAULT_KERNEL, list(KERNELS))"],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.split()[0] == "numpy"


def test_compiled_kernel_is_default_when_built():
    assert DEFAULT_KERNEL == ("cython" if "cython" in KERNELS else "numpy")
