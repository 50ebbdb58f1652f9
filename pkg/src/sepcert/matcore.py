"""Dense complex-matrix layer: bipartite operators, partial transpose,
Hermitian bases and the two partial-contraction maps ``F_A`` / ``G_A``.

Every bipartite matrix lives in ``M_k (x) M_m`` identified with ``M_km``
through the Kronecker product, i.e. row index ``a*m + p`` for the pair
``(a, p)``.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatch, NonHermitianInput


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical thresholds shared by every routine.

    ``rank_tol`` and ``degeneracy_tol`` are relative to the largest
    singular/eigen value involved; the others are relative to
    ``max(1, ||H||_F)``.
    """

    herm_tol: float = 1e-10
    psd_tol: float = 1e-9
    rank_tol: float = 1e-9
    degeneracy_tol: float = 1e-8
    recon_tol: float = 1e-8

    def __post_init__(self):
        for name in ("herm_tol", "psd_tol", "rank_tol", "degeneracy_tol", "recon_tol"):
            value = getattr(self, name)
            if not (value >= 0 and np.isfinite(value)):
                raise ValueError(f"{name} must be a finite nonnegative number, got {value!r}")

    def replace(self, **changes):
        fields = {**self.as_dict(), **{k: v for k, v in changes.items() if v is not None}}
        return ToleranceConfig(**fields)

    def as_dict(self):
        return {
            "herm_tol": self.herm_tol,
            "psd_tol": self.psd_tol,
            "rank_tol": self.rank_tol,
            "degeneracy_tol": self.degeneracy_tol,
            "recon_tol": self.recon_tol,
        }


DEFAULT_TOL = ToleranceConfig()


class EigenSystem(NamedTuple):
    values: np.ndarray
    vectors: np.ndarray


def fro(x):
    return float(np.linalg.norm(x))


def hermiticity_residual(h):
    h = np.asarray(h)
    return fro(h - h.conj().T)


def check_hermitian(h, cfg=DEFAULT_TOL):
    """Validate ``h`` as a finite square Hermitian matrix and return its
    exactly-symmetrized complex copy."""
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {h.shape}")
    if not np.all(np.isfinite(h)):
        raise NonHermitianInput("matrix has non-finite entries")
    res = hermiticity_residual(h)
    scale = max(1.0, fro(h))
    if res > cfg.herm_tol * scale or np.max(np.abs(np.diag(h).imag), initial=0.0) > cfg.herm_tol * scale:
        raise NonHermitianInput(f"matrix is not Hermitian (residual {res:.3e})", residual=res)
    return (h + h.conj().T) / 2


@dataclass(frozen=True, eq=False)
class BipartiteOperator:
    """A Hermitian ``km x km`` matrix viewed as an element of ``M_k (x) M_m``."""

    mat: np.ndarray
    k: int
    m: int

    def __post_init__(self):
        k, m = int(self.k), int(self.m)
        if k < 1 or m < 1:
            raise DimensionMismatch(f"factor dimensions must be >= 1, got ({k}, {m})")
        mat = np.asarray(self.mat, dtype=complex)
        if mat.shape != (k * m, k * m):
            raise DimensionMismatch(f"matrix of shape {mat.shape} does not match dims ({k}, {m})")
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "mat", mat)
        mat.setflags(write=False)

    @classmethod
    def from_matrix(cls, mat, k, m, cfg=DEFAULT_TOL):
        """Build an operator after checking hermiticity (the matrix is symmetrized)."""
        mat = np.asarray(mat, dtype=complex)
        if mat.ndim != 2 or mat.shape != (k * m, k * m):
            raise DimensionMismatch(f"matrix of shape {mat.shape} does not match dims ({k}, {m})")
        return cls(check_hermitian(mat, cfg), k, m)

    @property
    def dims(self):
        return (self.k, self.m)

    @property
    def norm(self):
        return fro(self.mat)

    def tensor(self):
        """View as a rank-4 array indexed ``[a, p, b, q]``."""
        return self.mat.reshape(self.k, self.m, self.k, self.m)

    def with_matrix(self, mat):
        return BipartiteOperator(mat, self.k, self.m)

    def __add__(self, other):
        if self.dims != other.dims:
            raise DimensionMismatch("cannot add operators with different factor dimensions")
        return self.with_matrix(self.mat + other.mat)

    def __sub__(self, other):
        if self.dims != other.dims:
            raise DimensionMismatch("cannot subtract operators with different factor dimensions")
        return self.with_matrix(self.mat - other.mat)

    def __mul__(self, scalar):
        return self.with_matrix(self.mat * scalar)

    __rmul__ = __mul__

    def __repr__(self):
        return f"BipartiteOperator(k={self.k}, m={self.m}, norm={self.norm:.6g})"


def kron(a, b):
    return np.kron(np.asarray(a), np.asarray(b))


def product_operator(c, d):
    """``C (x) D`` as a BipartiteOperator."""
    c = np.asarray(c, dtype=complex)
    d = np.asarray(d, dtype=complex)
    return BipartiteOperator(np.kron(c, d), c.shape[0], d.shape[0])


def partial_transpose(a):
    """Transpose on the first factor: block ``(i, j)`` becomes block ``(j, i)``."""
    t = a.tensor().transpose(2, 1, 0, 3)
    return a.with_matrix(t.reshape(a.k * a.m, a.k * a.m))


def eigh(h, cfg=DEFAULT_TOL):
    """Eigen-decomposition of a Hermitian matrix, values ascending."""
    h = check_hermitian(h, cfg)
    values, vectors = np.linalg.eigh(h)
    return EigenSystem(values, vectors)


def is_psd(h, cfg=DEFAULT_TOL):
    """Return ``(is_psd, min_eigenvalue)``; the test is relative to ``max(1, ||H||_F)``."""
    h = check_hermitian(h, cfg)
    if h.size == 0:
        return True, 0.0
    lo = float(np.linalg.eigvalsh(h)[0])
    return lo >= -cfg.psd_tol * max(1.0, fro(h)), lo


@lru_cache(maxsize=None)
def _hermitian_basis(d):
    mats = [np.eye(d, dtype=complex) / np.sqrt(d)]
    pairs = [(j, k) for j in range(d) for k in range(j + 1, d)]
    for j, k in pairs:
        e = np.zeros((d, d), dtype=complex)
        e[j, k] = e[k, j] = 1 / np.sqrt(2)
        mats.append(e)
    for j, k in pairs:
        e = np.zeros((d, d), dtype=complex)
        e[j, k] = -1j / np.sqrt(2)
        e[k, j] = 1j / np.sqrt(2)
        mats.append(e)
    for l in range(1, d):
        diag = np.zeros(d)
        diag[:l] = 1.0
        diag[l] = -l
        mats.append(np.diag(diag / np.sqrt(l * (l + 1))).astype(complex))
    out = np.array(mats)
    out.setflags(write=False)
    return out


def hermitian_basis(d):
    """Orthonormal Hermitian basis of ``M_d`` under ``<C, D> = tr(C D*)``.

    Order: ``Id/sqrt(d)``; symmetric off-diagonal elements for ``j < k``
    row-major; the matching antisymmetric (imaginary) elements; finally the
    traceless diagonal generalized Gell-Mann matrices.  For ``d = 2`` this is
    ``(Id, sigma_x, sigma_y, sigma_z) / sqrt(2)``.

    Returns a read-only array of shape ``(d*d, d, d)``.
    """
    if d < 1:
        raise ValueError("dimension must be >= 1")
    return _hermitian_basis(int(d))


def coefficient_matrix(a):
    """Real ``k^2 x m^2`` matrix ``C[x, y] = tr(A (sigma_x (x) tau_y))``."""
    bk = hermitian_basis(a.k)
    bm = hermitian_basis(a.m)
    c = np.einsum("apbq,xba,yqp->xy", a.tensor(), bk, bm, optimize=True)
    return c.real


def from_coefficients(c, k, m):
    bk = hermitian_basis(k)
    bm = hermitian_basis(m)
    t = np.einsum("xy,xab,ypq->apbq", np.asarray(c, dtype=complex), bk, bm, optimize=True)
    return BipartiteOperator(t.reshape(k * m, k * m), k, m)


def expand(coeffs, d):
    """Hermitian matrix ``sum_x coeffs[x] * sigma_x`` in the basis of ``M_d``."""
    return np.tensordot(np.asarray(coeffs, dtype=complex), hermitian_basis(d), axes=1)


def hermitian_coords(h):
    """Real coordinates of a Hermitian matrix in :func:`hermitian_basis`."""
    h = np.asarray(h)
    return np.einsum("xab,ba->x", hermitian_basis(h.shape[0]), h).real


def f_map(a, y):
    """``F_A(Y) = sum_i tr(Y D_i) A_i`` computed by contracting A's entries."""
    y = np.asarray(y, dtype=complex)
    if y.shape != (a.m, a.m):
        raise DimensionMismatch(f"Y must be {a.m}x{a.m}, got {y.shape}")
    return np.einsum("apbq,qp->ab", a.tensor(), y)


def g_map(a, x):
    """``G_A(X) = sum_i tr(X A_i) D_i`` computed by contracting A's entries."""
    x = np.asarray(x, dtype=complex)
    if x.shape != (a.k, a.k):
        raise DimensionMismatch(f"X must be {a.k}x{a.k}, got {x.shape}")
    return np.einsum("apbq,ba->pq", a.tensor(), x)


def image_projector(h, cfg=DEFAULT_TOL):
    """Orthogonal projector onto the image of Hermitian ``h``; eigenvalues below
    ``rank_tol * max|eig|`` count as zero."""
    values, vectors = np.linalg.eigh(np.asarray(h, dtype=complex))
    scale = np.max(np.abs(values), initial=0.0)
    if scale == 0:
        return np.zeros_like(vectors)
    keep = np.abs(values) > cfg.rank_tol * scale
    v = vectors[:, keep]
    return v @ v.conj().T


def matrix_rank(h, cfg=DEFAULT_TOL):
    values = np.linalg.eigvalsh(np.asarray(h, dtype=complex))
    scale = np.max(np.abs(values), initial=0.0)
    if scale == 0:
        return 0
    return int(np.sum(np.abs(values) > cfg.rank_tol * scale))


def least_positive_eigenvalue(h, cfg=DEFAULT_TOL):
    values = np.linalg.eigvalsh(np.asarray(h, dtype=complex))
    top = np.max(values, initial=0.0)
    pos = values[values > cfg.rank_tol * top]
    if top <= 0 or pos.size == 0:
        return 0.0
    return float(pos[0])


def psd_sign(h, cfg=DEFAULT_TOL):
    """Return ``+1`` or ``-1`` so that ``sign * h`` is PSD, or ``0`` if neither is."""
    values = np.linalg.eigvalsh(np.asarray(h, dtype=complex))
    tol = cfg.psd_tol * max(1.0, float(np.max(np.abs(values), initial=0.0)))
    if values[0] >= -tol:
        return 1
    if values[-1] <= tol:
        return -1
    return 0
