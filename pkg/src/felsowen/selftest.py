"""Worked-example checks runnable from the command line."""

from __future__ import annotations

from fractions import Fraction as Fr
from typing import Callable

from .games import Coalition
from .indices import felsenthal, felsenthal_owen
from .unions import essential_families, essential_least_size, quotient_game
from .weighted import KERNELS, count_least_size, felsenthal_owen_weighted

EXPECTED_PSI = (Fr(1, 4), Fr(1, 24), Fr(1, 24), Fr(1, 12), Fr(1, 6), Fr(1, 12), Fr(1, 3))


def _example_game():
    from .axioms.generators import EXAMPLE_ESSENTIAL

    return EXAMPLE_ESSENTIAL


def _owen_sum():
    return felsenthal_owen(_example_game(), form="sum").values == EXPECTED_PSI


def _owen_composition():
    return felsenthal_owen(_example_game(), form="composition").values == EXPECTED_PSI


def _felsenthal_plain():
    return felsenthal(_example_game().game).values == (Fr(1, 4), 0, 0, 0, Fr(1, 4), 0, Fr(1, 2))


def _quotient():
    return set(quotient_game(_example_game()).masks) == {0b011, 0b101, 0b110}


def _families():
    C = Coalition
    want = {
        (C({0, 1}), 0): {C({0, 1}), C({0, 2})},
        (C({0, 1}), 1): {C({3}), C({5})},
        (C({0, 2}), 0): {C({0})},
        (C({0, 2}), 2): {C({6})},
        (C({1, 2}), 1): {C({4})},
        (C({1, 2}), 2): {C({6})},
    }
    got = {(f.r, f.k): set(f.least_size) for f in essential_families(_example_game())}
    return got == want


def _ilse_example():
    from .axioms.generators import EXAMPLE_ILSE_PARTITION, EXAMPLE_ILSE_V, EXAMPLE_ILSE_W1
    from .unions import GameWithUnions

    want = {Coalition(s) for s in ({0, 1}, {2, 3}, {4}, {5})}
    a = essential_least_size(GameWithUnions(EXAMPLE_ILSE_W1, EXAMPLE_ILSE_PARTITION))
    b = essential_least_size(GameWithUnions(EXAMPLE_ILSE_V, EXAMPLE_ILSE_PARTITION))
    return a == want == b


def _weighted():
    ok = True
    for kernel in KERNELS:
        vec = felsenthal_owen_weighted(4, [3, 1, 1, 1], [[0], [1, 2, 3]], kernel=kernel)
        ok &= vec.values == (Fr(1, 2), Fr(1, 6), Fr(1, 6), Fr(1, 6))
        s = count_least_size(5, [3, 2, 2, 1], kernel=kernel)
        ok &= (s.c, s.p, s.per_player) == (2, 2, (2, 1, 1, 0))
    return ok


CHECKS: list[tuple[str, Callable[[], bool]]] = [
    ("owen index, essential-coalition sum", _owen_sum),
    ("owen index, internal-game composition", _owen_composition),
    ("felsenthal index without unions", _felsenthal_plain),
    ("quotient game", _quotient),
    ("least-size essential families", _families),
    ("least-size essential coalitions match after decomposition", _ilse_example),
    ("weighted counting on every kernel", _weighted),
]


def run(echo: Callable[[str], None] = print) -> bool:
    all_ok = True
    for name, fn in CHECKS:
        ok = bool(fn())
        all_ok &= ok
        echo(f"{'PASS' if ok else 'FAIL'}  {name}")
    return all_ok
