"""Numerical oracle: eigensolver, realizable samplers, soundness and equivalence checks."""

from .checks import EMBEDDINGS, cross_checks, embedding_matrix, equivalence_check, report_json, soundness_check
from .linalg import (
    dilation,
    eigenvalues_hermitian,
    eigh,
    jacobi_eigh,
    random_hermitian,
    random_matrix,
    random_real_symmetric,
    random_unitary,
    singular_values,
    svd,
)
from .sampling import e2_projection, sample_cone_point, sample_cone_points, trial_generators

__all__ = [
    "EMBEDDINGS",
    "cross_checks",
    "embedding_matrix",
    "equivalence_check",
    "report_json",
    "soundness_check",
    "dilation",
    "eigenvalues_hermitian",
    "eigh",
    "jacobi_eigh",
    "random_hermitian",
    "random_matrix",
    "random_real_symmetric",
    "random_unitary",
    "singular_values",
    "svd",
    "e2_projection",
    "sample_cone_point",
    "sample_cone_points",
    "trial_generators",
]
