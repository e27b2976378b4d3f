"""Exact-arithmetic engine for cluster algebras from quivers."""

from .errors import ClusterWorkbenchError, DomainError, IntegrityError
from .laurent import FactoredRational, LaurentPolynomial
from .quiver import CanonicalKey, IceQuiver, canonical_form, mutate_matrix, mutate_sequence
from .seeds import (
    ExchangeGraph,
    Seed,
    all_cluster_variables,
    denominator_vector,
    exchange_graph,
    mutate_seed,
)

__version__ = "0.1.0"

__all__ = [
    "ClusterWorkbenchError",
    "DomainError",
    "IntegrityError",
    "LaurentPolynomial",
    "FactoredRational",
    "IceQuiver",
    "CanonicalKey",
    "canonical_form",
    "mutate_matrix",
    "mutate_sequence",
    "Seed",
    "ExchangeGraph",
    "exchange_graph",
    "all_cluster_variables",
    "denominator_vector",
    "mutate_seed",
    "__version__",
]
