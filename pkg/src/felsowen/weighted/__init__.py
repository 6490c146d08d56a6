"""Exact counting backend for weighted voting games.

The hot loops live in a compiled extension when it is available; a numpy
implementation with the same contract is used otherwise (or when the
``FELSOWEN_PURE_PYTHON`` environment variable is set).
"""

from .counting import (
    count_least_size,
    felsenthal_owen_weighted,
    felsenthal_weighted,
    least_size_quotient,
    min_winning_size,
)
from .table import DEFAULT_KERNEL, KERNELS, SizeWeightTable

__all__ = [
    "DEFAULT_KERNEL",
    "KERNELS",
    "SizeWeightTable",
    "count_least_size",
    "felsenthal_owen_weighted",
    "felsenthal_weighted",
    "least_size_quotient",
    "min_winning_size",
]
