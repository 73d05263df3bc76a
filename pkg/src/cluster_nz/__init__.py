"""Y-seed mutation sequences, mutation networks and their Jacobian determinants."""

from .ratfun import Poly, RatFun
from .cluster import (
    ExchangeMatrix,
    MutationSequence,
    YSeed,
    mutation_sequence,
    run_sequence,
    validate_exchange_matrix,
)

__all__ = [
    "Poly",
    "RatFun",
    "ExchangeMatrix",
    "MutationSequence",
    "YSeed",
    "mutation_sequence",
    "run_sequence",
    "validate_exchange_matrix",
]
__version__ = "0.1.0"
