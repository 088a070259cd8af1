"""Spectral Erdos-Ko-Rado certificates for uniform set partitions."""
from ._accel import BACKEND
from .graph import are_adjacent, build_dense, degree, is_clique, is_coclique
from .partitions import (
    PartitionFamily,
    UniformPartition,
    apply_permutation,
    canonical_coclique,
    count_partitions,
    enumerate_partitions,
)
from .quotients import pair_stabilizer_quotient, tau, theta, triple_stabilizer_quotient
from .spectra import ratio_bound, spectrum_by_moments, spectrum_dense
from .tables import canonicalize, count_adjacency_tables, meet_table

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "PartitionFamily",
    "UniformPartition",
    "apply_permutation",
    "are_adjacent",
    "build_dense",
    "canonical_coclique",
    "canonicalize",
    "count_adjacency_tables",
    "count_partitions",
    "degree",
    "enumerate_partitions",
    "is_clique",
    "is_coclique",
    "meet_table",
    "pair_stabilizer_quotient",
    "ratio_bound",
    "spectrum_by_moments",
    "spectrum_dense",
    "tau",
    "theta",
    "triple_stabilizer_quotient",
]
