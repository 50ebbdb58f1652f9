"""Generalized Schur product (the ``*``-product) on ``C^n (x) C^m`` and on
``M_n (x) M_m``, its identity ``u u^t`` and the Choi test.

For vectors the product contracts the inner factor with the bilinear
pairing ``r^t w``; identified with ``n x m`` matrices it is the ordinary
matrix product.  For operators::

    A * B = sum_{i,j} A_i (x) C_j tr(D_i B_j^t)
          = (F_A((.)^t) (x) Id)(B)
"""

import numpy as np

from .errors import DimensionMismatch
from .matcore import DEFAULT_TOL, BipartiteOperator, check_hermitian, is_psd


def identity_vector(m):
    """``u = sum_i e_i (x) e_i`` in ``C^m (x) C^m``."""
    return np.eye(m, dtype=complex).reshape(m * m)


def star_vec(v, w, dims_v, dims_w):
    """``*``-product of ``v`` in ``C^n (x) C^m`` with ``w`` in ``C^m (x) C^l``.

    ``dims_v = (n, m)`` and ``dims_w = (m, l)``; the result lives in
    ``C^n (x) C^l``.
    """
    n, m = dims_v
    m2, l = dims_w
    if m != m2:
        raise DimensionMismatch(f"inner dimensions differ: {m} vs {m2}")
    v = np.asarray(v, dtype=complex)
    w = np.asarray(w, dtype=complex)
    if v.shape != (n * m,) or w.shape != (m * l,):
        raise DimensionMismatch("vector lengths do not match the given dimensions")
    return (v.reshape(n, m) @ w.reshape(m, l)).reshape(n * l)


def star_identity(m):
    """The identity ``u u^t`` of the ``*``-product on ``M_m (x) M_m``."""
    u = identity_vector(m)
    return BipartiteOperator(np.outer(u, u.conj()), m, m)


def star_mat(a, b):
    """``A * B`` for ``A`` in ``M_n (x) M_m`` and ``B`` in ``M_m (x) M_l``.

    Evaluated as ``F_A((.)^t) (x) Id`` applied to ``B``: entry
    ``[(a,c),(b,d)] = sum_{p,q} A[(a,p),(b,q)] B[(p,c),(q,d)]``, which is
    independent of any decomposition of ``A`` or ``B``.
    """
    if a.m != b.k:
        raise DimensionMismatch(f"inner dimensions differ: {a.m} vs {b.k}")
    t = np.einsum("apbq,pcqd->acbd", a.tensor(), b.tensor(), optimize=True)
    n, l = a.k, b.m
    return BipartiteOperator(t.reshape(n * l, n * l), n, l)


def choi_matrix(channel, m, n=None):
    """``T (x) Id (u u^t) = sum_{ij} T(e_i e_j^t) (x) e_i e_j^t`` for a linear
    map ``channel: M_m -> M_n`` given as a Python callable."""
    blocks = {}
    for i in range(m):
        for j in range(m):
            e = np.zeros((m, m), dtype=complex)
            e[i, j] = 1
            blocks[i, j] = np.asarray(channel(e), dtype=complex)
    if n is None:
        n = blocks[0, 0].shape[0]
    out = np.zeros((n * m, n * m), dtype=complex)
    for (i, j), t in blocks.items():
        e = np.zeros((m, m), dtype=complex)
        e[i, j] = 1
        out += np.kron(t, e)
    return BipartiteOperator(out, n, m)


def is_completely_positive(choi, cfg=DEFAULT_TOL):
    """Choi's criterion: the map is completely positive iff its Choi matrix is PSD."""
    check_hermitian(choi.mat, cfg)
    return is_psd(choi.mat, cfg)[0]
