"""Size-by-weight subset counting table with exact, arbitrarily large counts.

Counts are held in ``uint64`` arrays.  When every count the table can ever hold
is provably below ``2**63`` a single plain array is used.  Otherwise the table
keeps one residue array per prime modulus and reconstructs exact integers by
the Chinese remainder theorem; all entries are nonnegative and bounded by a
binomial coefficient known in advance, so the reconstruction is unique.
"""

from __future__ import annotations

import logging
import os
from math import comb, prod
from types import ModuleType

import numpy as np

from ..errors import CapacityError, DomainError
from . import _kernel_py

log = logging.getLogger(__name__)

try:
    from . import _kernel as _kernel_ext
except ImportError:  # extension not built
    _kernel_ext = None

KERNELS: dict[str, ModuleType] = {"numpy": _kernel_py}
if _kernel_ext is not None:
    KERNELS["cython"] = _kernel_ext

if os.environ.get("FELSOWEN_PURE_PYTHON") or _kernel_ext is None:
    DEFAULT_KERNEL = "numpy"
else:
    DEFAULT_KERNEL = "cython"

# Largest primes below 2**62: two residues always add without wrapping a uint64.
PRIMES = (
    4611686018427387847,
    4611686018427387817,
    4611686018427387787,
    4611686018427387761,
    4611686018427387751,
    4611686018427387737,
    4611686018427387733,
    4611686018427387709,
)

PLAIN_LIMIT = (1 << 63) - 1

#: Default memory budget for one table, in bytes.
MEMORY_BUDGET = 2 * 1024**3


def get_kernel(kernel: str | None = None) -> ModuleType:
    name = kernel or DEFAULT_KERNEL
    try:
        return KERNELS[name]
    except KeyError:
        raise DomainError(f"kernel {name!r} unavailable; have {sorted(KERNELS)}") from None


def count_bound(n: int, s_max: int) -> int:
    """Upper bound on any entry of a table over at most ``n`` players and sizes ``<= s_max``."""
    return comb(n, min(s_max, n // 2))


def moduli_for(bound: int) -> tuple[int, ...]:
    """Moduli representing every integer in ``[0, bound]``; ``(0,)`` means plain uint64."""
    if bound <= PLAIN_LIMIT:
        return (0,)
    chosen = []
    for p in PRIMES:
        chosen.append(p)
        if prod(chosen) > bound:
            return tuple(chosen)
    raise CapacityError(f"counts up to {bound.bit_length()} bits exceed the modular representation")


def crt(residues: list[int], moduli: tuple[int, ...]) -> int:
    """Smallest nonnegative integer with the given residues."""
    if moduli == (0,):
        return residues[0]
    total = prod(moduli)
    x = 0
    for r, m in zip(residues, moduli):
        rest = total // m
        x += r * rest * pow(rest, -1, m)
    return x % total


def estimate_bytes(q: int, s_max: int, n_moduli: int) -> int:
    # table plus two scratch rows per modulus
    return n_moduli * ((s_max + 1) * q + 2 * q) * 8


class SizeWeightTable:
    """Counts of subsets by (size, weight) for weights below ``quota``, plus a saturated bucket.

    ``entry(s, w)`` is the number of processed-player subsets with ``s``
    members and total weight ``w`` (``w < quota``); ``saturated(s)`` counts
    those whose weight is at least ``quota``.
    """

    def __init__(
        self,
        quota: int,
        s_max: int,
        n_max: int,
        kernel: str | None = None,
        memory_budget: int = MEMORY_BUDGET,
        _empty: bool = False,
    ):
        if quota < 1:
            raise DomainError("quota must be positive")
        if s_max < 0:
            raise DomainError("s_max must be nonnegative")
        self.quota = quota
        self.s_max = s_max
        self.n_max = n_max
        self.kernel = get_kernel(kernel)
        self.moduli = moduli_for(count_bound(n_max, s_max))
        need = estimate_bytes(quota, s_max, len(self.moduli))
        if need > memory_budget:
            raise CapacityError(
                f"counting table needs about {need / 2**20:.0f} MiB (budget {memory_budget / 2**20:.0f} MiB); "
                "rescale the weights (e.g. divide weights and quota by a common factor) or raise the budget"
            )
        self.processed = 0
        if _empty:
            return
        self.tables = []
        self.sats = []
        for _ in self.moduli:
            t = np.zeros((s_max + 1, quota), dtype=np.uint64)
            t[0, 0] = 1
            self.tables.append(t)
            self.sats.append(np.zeros(s_max + 1, dtype=np.uint64))

    def _clone_empty(self) -> SizeWeightTable:
        other = SizeWeightTable.__new__(SizeWeightTable)
        other.__dict__.update(self.__dict__)
        return other

    def add(self, weight: int) -> None:
        if self.processed >= self.n_max:
            raise DomainError("table already holds n_max players")
        for t, sat, mod in zip(self.tables, self.sats, self.moduli):
            self.kernel.add_item(t, sat, weight, mod)
        self.processed += 1

    def removed(self, weight: int) -> SizeWeightTable:
        """A new table with one player of ``weight`` taken back out (exact reverse step)."""
        if self.processed == 0:
            raise DomainError("no player to remove")
        other = self._clone_empty()
        other.tables, other.sats = [], []
        for t, sat, mod in zip(self.tables, self.sats, self.moduli):
            nt, ns = self.kernel.remove_item(t, sat, weight, mod)
            other.tables.append(nt)
            other.sats.append(ns)
        other.processed = self.processed - 1
        return other

    def entry(self, s: int, w: int) -> int:
        return crt([int(t[s, w]) for t in self.tables], self.moduli)

    def saturated(self, s: int) -> int:
        return crt([int(sat[s]) for sat in self.sats], self.moduli)

    def losing(self, s: int) -> int:
        """Subsets of size ``s`` with weight below the quota."""
        return crt([self.kernel.row_sum(t[s], mod) for t, mod in zip(self.tables, self.moduli)], self.moduli)

    def losing_residues(self, s: int) -> list[int]:
        return [self.kernel.row_sum(t[s], mod) for t, mod in zip(self.tables, self.moduli)]

    def losing_without_residues(self, weight: int, s: int) -> list[int]:
        """Residues of ``losing(s)`` after removing a player of ``weight``, without building the table."""
        return [self.kernel.losing_without(t, weight, s, mod) for t, mod in zip(self.tables, self.moduli)]

    def row_total(self, s: int) -> int:
        return self.losing(s) + self.saturated(s)

    def same_counts(self, other: SizeWeightTable) -> bool:
        return (
            self.moduli == other.moduli
            and all(np.array_equal(a, b) for a, b in zip(self.tables, other.tables))
            and all(np.array_equal(a, b) for a, b in zip(self.sats, other.sats))
        )
