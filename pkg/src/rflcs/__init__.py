"""Repetition-free longest common subsequences of random k-ary sequences:
domain types, seeded generators, exact and heuristic solvers, urn
occupancy models, closed-form tail bounds, and a Monte Carlo harness."""

from .errors import CapacityError
from .model import (
    Instance,
    NoncrossingMatching,
    PlantedCertificate,
    SolveResult,
    is_common_subsequence,
    is_repetition_free,
    validate_certificate,
    validate_matching,
)
from .rng import RngStream

__all__ = [
    "CapacityError",
    "Instance",
    "NoncrossingMatching",
    "PlantedCertificate",
    "RngStream",
    "SolveResult",
    "is_common_subsequence",
    "is_repetition_free",
    "validate_certificate",
    "validate_matching",
]
