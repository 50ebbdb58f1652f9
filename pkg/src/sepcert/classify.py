"""PSD / PPT / SPC predicates, weak irreducibility and the reducibility bounds."""

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionTooSmall, InputNotPSD, NumericalDegeneracy
from .matcore import (
    DEFAULT_TOL,
    check_hermitian,
    coefficient_matrix,
    fro,
    image_projector,
    is_psd,
    matrix_rank,
    partial_transpose,
    psd_sign,
)
from .schmidt import hermitian_schmidt


class Verdict(str, enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


class Route(str, enum.Enum):
    SPC_PPT_CRITERION = "spc_ppt_criterion"
    FULL_RANK_SHORTCUT = "full_rank_shortcut"
    FULL_TENSOR_RANK_SHORTCUT = "full_tensor_rank_shortcut"
    RANK_ONE = "rank_one"
    SPLIT_WITNESS = "split_witness"
    # outside SPC/PPT the three conditions are only sufficient
    SUFFICIENT_CONDITION = "sufficient_condition"


@dataclass(frozen=True, eq=False)
class PptReport:
    is_ppt: bool
    min_pt_eigenvalue: float
    witness: np.ndarray


@dataclass(frozen=True, eq=False)
class SpcReport:
    is_spc: bool
    coeff_matrix_min_eig: float
    symmetry_residual: float
    is_psd: bool = True


@dataclass(frozen=True, eq=False)
class SplitWitness:
    """Complementary projection pairs with ``A = sum_i (V_i x W_i) A (V_i x W_i)``
    and both blocks nonzero."""

    v1: np.ndarray
    w1: np.ndarray
    v2: np.ndarray
    w2: np.ndarray
    block1: object
    block2: object


@dataclass(frozen=True, eq=False)
class WeakIrreducibilityReport:
    verdict: Verdict
    route: Route
    details: dict = field(default_factory=dict)
    witness: SplitWitness = None


def _require_psd(a, cfg):
    ok, lo = is_psd(a.mat, cfg)
    if not ok:
        raise InputNotPSD(f"matrix is not positive semidefinite (min eigenvalue {lo:.3e})", lo)


def is_ppt(a, cfg=DEFAULT_TOL):
    """Partial-transpose test.  The witness is a unit eigenvector of ``A^{t_1}``
    for its smallest eigenvalue."""
    check_hermitian(a.mat, cfg)
    _require_psd(a, cfg)
    pt = partial_transpose(a).mat
    ok, _ = is_psd(pt, cfg)
    values, vectors = np.linalg.eigh((pt + pt.conj().T) / 2)
    return PptReport(bool(ok), float(values[0]), vectors[:, 0])


def is_spc(a, cfg=DEFAULT_TOL):
    """SPC test: ``k == m``, ``A`` PSD, and the real coefficient matrix in a common
    orthonormal Hermitian basis is symmetric and PSD."""
    check_hermitian(a.mat, cfg)
    if a.k != a.m:
        return SpcReport(False, float("nan"), float("nan"), is_psd(a.mat, cfg)[0])
    psd, _ = is_psd(a.mat, cfg)
    c = coefficient_matrix(a)
    scale = max(1.0, fro(c))
    sym_res = fro(c - c.T) / scale
    lo = float(np.linalg.eigvalsh((c + c.T) / 2)[0])
    ok = psd and sym_res <= cfg.recon_tol and lo >= -cfg.psd_tol * scale
    return SpcReport(bool(ok), lo, sym_res, psd)


def reducibility_bounds(k, m):
    """``(max tensor rank, max rank)`` attainable by a PSD matrix in
    ``M_k (x) M_m`` that is not weak irreducible."""
    if k < 2 or m < 2:
        raise DimensionTooSmall(f"both dimensions must be >= 2, got ({k}, {m})")
    return min((k - 1) ** 2 + 1, (m - 1) ** 2 + 1), min((k - 1) * m, (m - 1) * k)


def containment_residual(x, p):
    """``||(Id - P) X||_F / ||X||_F``: zero iff ``Im(X)`` lies in ``Im(P)``."""
    nx = fro(x)
    if nx == 0:
        return 0.0
    return fro(x - p @ x) / nx


def three_conditions(sd, cfg=DEFAULT_TOL):
    """Evaluate the sufficient conditions for weak irreducibility on a Schmidt
    decomposition: a strict top gap and image containment in ``Im(gamma_1)``,
    ``Im(delta_1)`` for every factor."""
    lam = sd.lambdas
    gap = float((lam[0] - lam[1]) / lam[0]) if len(lam) > 1 else float("inf")
    pg = image_projector(sd.gammas[0], cfg)
    pd = image_projector(sd.deltas[0], cfg)
    g_res = max((containment_residual(g, pg) for g in sd.gammas[1:]), default=0.0)
    d_res = max((containment_residual(d, pd) for d in sd.deltas[1:]), default=0.0)
    holds = gap > cfg.degeneracy_tol and g_res <= cfg.rank_tol and d_res <= cfg.rank_tol
    return {
        "lambda_gap": gap,
        "gamma_containment_residual": g_res,
        "delta_containment_residual": d_res,
        "holds": bool(holds),
    }


def split_witness(a, cfg=DEFAULT_TOL, mode=None):
    from .split import split_decomposition

    dec = split_decomposition(a, cfg, mode=mode)
    v1, w1 = dec.projections[0]
    v2 = np.eye(a.k) - v1
    w2 = np.eye(a.m) - w1
    p1 = np.kron(v1, w1)
    p2 = np.kron(v2, w2)
    b1 = a.with_matrix(p1 @ a.mat @ p1)
    b2 = a.with_matrix(p2 @ a.mat @ p2)
    tiny = cfg.recon_tol * max(a.norm, 1e-300)
    if b1.norm <= tiny or b2.norm <= tiny:
        raise NumericalDegeneracy("split decomposition did not produce two nonzero blocks")
    return SplitWitness(v1, w1, v2, w2, b1, b2)


def is_weak_irreducible(a, cfg=DEFAULT_TOL):
    """Weak irreducibility report.

    Decided exactly for SPC or PPT inputs; otherwise the three conditions are
    only sufficient and a failure yields ``Verdict.UNKNOWN``.
    """
    check_hermitian(a.mat, cfg)
    _require_psd(a, cfg)
    sd = hermitian_schmidt(a, cfg)
    n = len(sd)
    if n <= 1:
        return WeakIrreducibilityReport(Verdict.YES, Route.RANK_ONE, {"tensor_rank": n})

    details = {"tensor_rank": n, "lambdas": sd.lambdas.tolist()}
    if a.k >= 2 and a.m >= 2:
        max_tr, max_rank = reducibility_bounds(a.k, a.m)
        rank = matrix_rank(a.mat, cfg)
        details["rank"] = rank
        if rank > max_rank:
            return WeakIrreducibilityReport(Verdict.YES, Route.FULL_RANK_SHORTCUT, details)
        if n > max_tr:
            return WeakIrreducibilityReport(Verdict.YES, Route.FULL_TENSOR_RANK_SHORTCUT, details)

    cond = three_conditions(sd, cfg)
    details.update(cond)
    spc = is_spc(a, cfg).is_spc
    ppt = spc or is_ppt(a, cfg).is_ppt
    if not (spc or ppt):
        verdict = Verdict.YES if cond["holds"] else Verdict.UNKNOWN
        return WeakIrreducibilityReport(verdict, Route.SUFFICIENT_CONDITION, details)

    if cond["lambda_gap"] > cfg.degeneracy_tol:
        # the top term is +-(PSD (x) PSD) for SPC/PPT inputs
        sg, sdl = psd_sign(sd.gammas[0], cfg), psd_sign(sd.deltas[0], cfg)
        if sg == 0 or sdl == 0:
            raise NumericalDegeneracy("top Schmidt factor is not semidefinite on an SPC/PPT input")
    details["type"] = "SPC" if spc else "PPT"
    if cond["holds"]:
        return WeakIrreducibilityReport(Verdict.YES, Route.SPC_PPT_CRITERION, details)
    witness = split_witness(a, cfg, mode="SPC" if spc else "PPT")
    return WeakIrreducibilityReport(Verdict.NO, Route.SPLIT_WITNESS, details, witness)
