"""Hermitian Schmidt decomposition ``A = sum_i lambda_i gamma_i (x) delta_i``,
supports and tensor rank."""

from dataclasses import dataclass

import numpy as np

from .matcore import (
    DEFAULT_TOL,
    BipartiteOperator,
    check_hermitian,
    coefficient_matrix,
    expand,
    fro,
)


@dataclass(frozen=True, eq=False)
class SchmidtDecomposition:
    """``lambdas`` descending and positive; ``gammas[i]`` (``k x k``) and
    ``deltas[i]`` (``m x m``) orthonormal Hermitian under the trace product."""

    lambdas: np.ndarray
    gammas: np.ndarray
    deltas: np.ndarray
    k: int
    m: int

    def __len__(self):
        return len(self.lambdas)

    def reconstruct(self):
        mat = np.zeros((self.k * self.m,) * 2, dtype=complex)
        for lam, g, d in zip(self.lambdas, self.gammas, self.deltas):
            mat += lam * np.kron(g, d)
        return BipartiteOperator(mat, self.k, self.m)

    def terms(self):
        return list(zip(self.lambdas, self.gammas, self.deltas))


@dataclass(frozen=True, eq=False)
class SupportPair:
    basis1: np.ndarray
    basis2: np.ndarray

    def __len__(self):
        return len(self.basis1)


def _canonical_sign(g):
    """+1/-1 such that the largest-modulus entry of ``sign * g`` has positive
    real part (falls back to the imaginary part for purely imaginary entries)."""
    flat = g.reshape(-1)
    mod = np.abs(flat)
    top = mod.max()
    idx = int(np.flatnonzero(mod >= top * (1 - 1e-12))[0])
    z = flat[idx]
    ref = z.real if abs(z.real) > 1e-12 * top else z.imag
    return -1.0 if ref < 0 else 1.0


def hermitian_schmidt(a, cfg=DEFAULT_TOL):
    """Hermitian Schmidt decomposition via the real SVD of the coefficient
    matrix in orthonormal Hermitian bases of both factors.

    Singular values at or below ``rank_tol * lambda_1`` are discarded.  Each
    ``(gamma_i, delta_i)`` pair is sign-normalized jointly; inside a cluster
    of equal ``lambda`` the factors are only determined up to rotation.
    """
    check_hermitian(a.mat, cfg)
    c = coefficient_matrix(a)
    u, s, vt = np.linalg.svd(c, full_matrices=False)
    if s.size == 0 or s[0] <= 0 or fro(a.mat) <= cfg.rank_tol:
        empty_k = np.zeros((0, a.k, a.k), dtype=complex)
        empty_m = np.zeros((0, a.m, a.m), dtype=complex)
        return SchmidtDecomposition(np.zeros(0), empty_k, empty_m, a.k, a.m)
    n = int(np.sum(s > cfg.rank_tol * s[0]))
    gammas = np.array([expand(u[:, i], a.k) for i in range(n)])
    deltas = np.array([expand(vt[i], a.m) for i in range(n)])
    for i in range(n):
        sign = _canonical_sign(gammas[i])
        gammas[i] *= sign
        deltas[i] *= sign
    return SchmidtDecomposition(s[:n].copy(), gammas, deltas, a.k, a.m)


def supports(a, cfg=DEFAULT_TOL):
    """Orthonormal bases of ``supp_1(A)`` and ``supp_2(A)``."""
    sd = hermitian_schmidt(a, cfg)
    return SupportPair(sd.gammas, sd.deltas)


def tensor_rank(a, cfg=DEFAULT_TOL):
    return len(hermitian_schmidt(a, cfg))


def realignment(a):
    """Realigned matrix ``R[(a,b),(p,q)] = A[(a,p),(b,q)]``; its singular
    values are the operator Schmidt coefficients of ``A``."""
    return a.tensor().transpose(0, 2, 1, 3).reshape(a.k * a.k, a.m * a.m)
