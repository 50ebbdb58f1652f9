"""Fixture generators for the two sharpness families."""

import numpy as np

from .errors import InvalidParameter
from .matcore import BipartiteOperator

PAULIS = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
PAULI_BASIS = tuple(p / np.sqrt(2) for p in PAULIS)


def gen_pauli_family(d2, d3, d4):
    """``g1 (x) g1 + d2 g2 (x) g2 + d3 g3 (x) g3 + d4 g4 (x) g4`` in the
    normalized Pauli basis (``g1 = Id/sqrt(2)``).

    Evaluated as ``(Id + sum d_i s_i (x) s_i) / 2`` so the entries are exact.
    """
    mat = np.eye(4, dtype=complex)
    for d, x in zip((d2, d3, d4), PAULIS[1:]):
        mat = mat + float(d) * np.kron(x, x)
    return BipartiteOperator(mat / 2, 2, 2)


def an_factors(n):
    """``(gamma_1, gamma_2)`` in ``M_{n+1}``: ``Id/sqrt(n+1)`` and
    ``diag(n, -1, ..., -1)/sqrt(n^2+n)``."""
    g1 = np.eye(n + 1, dtype=complex) / np.sqrt(n + 1)
    diag = -np.ones(n + 1)
    diag[0] = n
    g2 = np.diag(diag).astype(complex) / np.sqrt(n * n + n)
    return g1, g2


def gen_an_family(n, lambda1, lambda2):
    """``A(n) = lambda1 g1 (x) g1 - lambda2 g2 (x) g2``; PSD iff ``lambda1 >= n lambda2``."""
    if int(n) != n or n < 1:
        raise InvalidParameter(f"n must be a positive integer, got {n!r}")
    if not (lambda1 > 0 and lambda2 > 0):
        raise InvalidParameter("lambda1 and lambda2 must be positive")
    n = int(n)
    g1, g2 = an_factors(n)
    mat = float(lambda1) * np.kron(g1, g1) - float(lambda2) * np.kron(g2, g2)
    return BipartiteOperator(mat, n + 1, n + 1)
