"""Compiled vs numpy counting kernels on weighted games of growing size.

Usage: python benchmarks/bench_dp.py [--quick] [--repeat N]

The largest case is a synthetic body shaped like a large financial
institution's board: 188 members with heavy-tailed integer votes (about five
million in total) grouped into 25 blocs, at a simple-majority quota.
"""

from __future__ import annotations

import argparse
import random
import time

from felsowen.weighted import KERNELS, count_least_size, felsenthal_owen_weighted


def synthetic_board(seed: int = 2025, members: int = 188, blocs: int = 25, total: int = 5_000_000):
    rng = random.Random(seed)
    raw = sorted((rng.paretovariate(1.1) for _ in range(members)), reverse=True)
    scale = total / sum(raw)
    weights = [max(1, int(x * scale)) for x in raw]
    rng.shuffle(weights)
    # each bloc gets at least one member, the rest are spread at random
    labels = list(range(blocs)) + [rng.randrange(blocs) for _ in range(members - blocs)]
    rng.shuffle(labels)
    partition = [[i for i, b in enumerate(labels) if b == k] for k in range(blocs)]
    return weights, partition


def random_case(seed: int, n: int, wmax: int):
    rng = random.Random(seed)
    weights = [rng.randint(1, wmax) for _ in range(n)]
    return weights, sum(weights) // 2 + 1


def timed(fn, repeat: int) -> tuple[float, object]:
    best, out = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--quick", action="store_true", help="skip the board-sized case")
    ap.add_argument("--repeat", type=int, default=1)
    args = ap.parse_args(argv)

    cases = [(f"n={n} w<={w}", *random_case(n, n, w)) for n, w in ((20, 50), (60, 1000), (120, 10_000))]
    if not args.quick:
        weights, partition = synthetic_board()
        cases.append(("board 188/25", weights, sum(weights) // 2 + 1))
    print(f"kernels: {', '.join(KERNELS)}")
    print(f"{'case':<16} {'kernel':<8} {'felsenthal s':>13} {'owen s':>9}")
    for name, weights, q in cases:
        part = partition if name.startswith("board") else [list(range(0, len(weights), 2)), list(range(1, len(weights), 2))]
        results = {}
        for kernel in KERNELS:
            t1, summ = timed(lambda: count_least_size(q, weights, kernel=kernel), args.repeat)
            t2, vec = timed(lambda: felsenthal_owen_weighted(q, weights, part, kernel=kernel), args.repeat)
            results[kernel] = (summ, vec.values)
            print(f"{name:<16} {kernel:<8} {t1:>13.3f} {t2:>9.3f}")
        first = next(iter(results.values()))
        assert all(r == first for r in results.values()), "kernels disagree"
        summ = first[0]
        print(f"{'':<16} c={summ.c} p={summ.p}")


if __name__ == "__main__":
    main()
