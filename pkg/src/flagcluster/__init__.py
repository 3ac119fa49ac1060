"""Cluster seeds of Schubert cells and their lifts to partial flag varieties."""

from .cartan import DynkinType, CartanMatrix, cartan_matrix, reflect, symmetrizer
from .cluster import (
    ExtendedExchangeMatrix,
    MutationError,
    Seed,
    check_laurent,
    column_degree_defect,
    enumerate_exchange_graph,
    formal_seed,
    is_skew_symmetrizable,
    mutate_matrix,
    mutate_seed,
    mutate_sequence,
)
from .laurent import LaurentPolynomial, NotDivisibleError, exact_divide, substitute, symbols
from .lift import LiftConvention, LiftedSeed, lift_matrix, lift_seed, project, verify_commutation
from .schubert import CellSpec, MinorLabel, build_Bw, classify_frozen, schubert_seed, variable_labels
from .weyl import act, is_reduced, longest_word, pred_succ, support

__version__ = "0.1.0"
