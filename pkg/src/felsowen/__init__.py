"""Felsenthal and Felsenthal Owen power indices for simple games with a priori unions."""

from .errors import CapacityError, DomainError, HypothesisError, ParseError, PowerIndexError
from .games import (
    Coalition,
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
from .indices import PowerVector, felsenthal, felsenthal_owen, reference_index
from .unions import (
    EssentialFamily,
    GameWithUnions,
    Partition,
    essential_families,
    essential_least_size,
    internal_game,
    is_irrelevant,
    quotient_game,
    representatives,
    trivial_partition,
)

__version__ = "0.1.0"
