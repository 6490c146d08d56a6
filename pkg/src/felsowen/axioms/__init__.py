"""Axiom laboratory: exact axiom checks, instance generators, counterexample indices."""

from .checks import (
    AXIOMS,
    AxiomReport,
    IrrelevantInstance,
    PairInstance,
    check_axiom,
    hypotheses_hold,
    validate_iic,
    validate_ilse,
    validate_tcls_inside,
    validate_tcls_unions,
)
from .generators import (
    all_partitions,
    all_simple_games,
    decompose,
    exhaustive_games_with_unions,
    generate_instances,
    irrelevant_coalitions,
)
from .indices import PSI, CoalitionalIndex, counterexample_index, ls_players
from .matrix import DESIGNED_VIOLATION, IndependenceMatrix, index_by_name, independence_matrix

__all__ = [
    "AXIOMS",
    "AxiomReport",
    "CoalitionalIndex",
    "DESIGNED_VIOLATION",
    "IndependenceMatrix",
    "IrrelevantInstance",
    "PSI",
    "PairInstance",
    "all_partitions",
    "all_simple_games",
    "check_axiom",
    "counterexample_index",
    "decompose",
    "exhaustive_games_with_unions",
    "generate_instances",
    "hypotheses_hold",
    "independence_matrix",
    "index_by_name",
    "irrelevant_coalitions",
    "ls_players",
    "validate_iic",
    "validate_ilse",
    "validate_tcls_inside",
    "validate_tcls_unions",
]
