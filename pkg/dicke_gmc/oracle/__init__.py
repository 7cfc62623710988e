"""
Oracle package for dicke-gmc.
Brute-force 2^N-dimensional reference used to certify the closed forms.
"""
from .oracle import (
    MAX_MATRIX_QUBITS,
    MAX_VECTOR_QUBITS,
    DenseState,
    dense_dicke_state,
    dense_mixture_state,
    dense_partial_trace,
    dense_reduced_eigenvalues,
    eigen_entropy,
    oracle_gmc_higher,
    rate_matrix_exponential,
)

__all__ = [
    'MAX_MATRIX_QUBITS', 'MAX_VECTOR_QUBITS', 'DenseState', 'dense_dicke_state', 'dense_mixture_state',
    'dense_partial_trace', 'dense_reduced_eigenvalues', 'eigen_entropy', 'oracle_gmc_higher',
    'rate_matrix_exponential',
]
