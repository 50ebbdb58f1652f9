"""Constructive separability certificates.

* :func:`kernel_shift` - move a PSD matrix along ``-B`` until its kernel grows.
* :func:`separate_rank2` - minimal separable decomposition of any PSD matrix
  of tensor rank at most two (and :func:`separate_rank2_multipartite`).
* :func:`spc_inequality_certificate` / :func:`ppt_inequality_certificate` -
  explicit decompositions for weak irreducible SPC / PPT matrices whose
  dominant Schmidt term outweighs the rest.
* :func:`certify` - the end-to-end pipeline.
"""

import enum
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .classify import Verdict as WIVerdict
from .classify import is_ppt, is_spc, is_weak_irreducible, containment_residual
from .errors import (
    DimensionMismatch,
    ImageNotContained,
    InputNotPSD,
    MultipleOfGamma,
    NotWeakIrreduciblePPT,
    NotWeakIrreducibleSPC,
    NumericalDegeneracy,
    PreconditionViolated,
    SepcertError,
    TensorRankTooHigh,
    ZeroB,
)
from .matcore import (
    DEFAULT_TOL,
    BipartiteOperator,
    check_hermitian,
    fro,
    image_projector,
    is_psd,
    least_positive_eigenvalue,
    psd_sign,
)
from .schmidt import hermitian_schmidt
from .split import PPT, SPC, psd_schmidt_basis, weak_irreducible_tree

INEQUALITY_SLACK = 1e-12


def _herm(x):
    x = np.asarray(x, dtype=complex)
    return (x + x.conj().T) / 2


@dataclass(frozen=True, eq=False)
class SeparableDecomposition:
    """``A = sum_i C_i (x) D_i`` with every ``C_i``, ``D_i`` PSD."""

    pairs: list

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def reconstruct(self):
        if not self.pairs:
            return None
        return sum(np.kron(c, d) for c, d in self.pairs)

    def residual(self, a):
        rec = self.reconstruct()
        if rec is None:
            return fro(a.mat)
        return fro(a.mat - rec)

    def min_factor_eigenvalue(self):
        """Smallest eigenvalue over all factors, each scaled by its own norm."""
        worst = math.inf
        for pair in self.pairs:
            for x in pair:
                n = max(fro(x), 1e-300)
                worst = min(worst, float(np.linalg.eigvalsh(_herm(x))[0]) / n)
        return worst

    def is_valid(self, a, cfg=DEFAULT_TOL):
        if self.residual(a) > cfg.recon_tol * max(a.norm, 1e-300):
            return False
        return all(is_psd(x, cfg)[0] for pair in self.pairs for x in pair)


@dataclass(frozen=True, eq=False)
class MultipartiteOperator:
    mat: np.ndarray
    dims: tuple

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 1 for d in dims):
            raise DimensionMismatch(f"invalid dimensions {self.dims}")
        mat = np.asarray(self.mat, dtype=complex)
        total = math.prod(dims)
        if mat.shape != (total, total):
            raise DimensionMismatch(f"matrix of shape {mat.shape} does not match dims {dims}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "mat", mat)

    def flatten(self):
        """View as ``M_{k_1} (x) M_{k_2...k_n}``."""
        return BipartiteOperator(self.mat, self.dims[0], math.prod(self.dims[1:]))


class CertVerdict(str, enum.Enum):
    SEPARABLE = "separable"
    ENTANGLED_NPT = "entangled_npt"
    INCONCLUSIVE = "inconclusive"


@dataclass(eq=False)
class Certificate:
    verdict: CertVerdict
    decomposition: SeparableDecomposition = None
    witness: np.ndarray = None
    negative_eigenvalue: float = None
    reason: str = None
    diagnostics: dict = field(default_factory=dict)

    @property
    def is_separable(self):
        return self.verdict == CertVerdict.SEPARABLE


class KernelShift(NamedTuple):
    lam: float
    shifted: np.ndarray
    x: np.ndarray


def kernel_shift(gamma, b, cfg=DEFAULT_TOL):
    """Real ``lam`` with ``gamma - lam*B`` PSD and a strictly larger kernel.

    Requires ``gamma`` PSD, ``Im(B)`` inside ``Im(gamma)`` and ``B`` not a
    multiple of ``gamma``.  ``gamma`` is congruent to ``Id (+) 0`` through its
    image eigenvectors; ``1/lam`` is the largest-modulus eigenvalue of the
    compressed ``B`` (ties go to the positive one).  Also returns a unit
    vector ``x`` in ``Im(gamma)`` and in the kernel of the shifted matrix.
    """
    gamma = _herm(gamma)
    b = _herm(b)
    nb = fro(b)
    if nb == 0 or nb <= cfg.rank_tol * fro(gamma) * 1e-3:
        raise ZeroB("B must be nonzero")
    vals, vecs = np.linalg.eigh(gamma)
    top = vals[-1]
    if top <= 0:
        raise PreconditionViolated("gamma must be a nonzero PSD matrix")
    keep = vals > cfg.rank_tol * top
    u = vecs[:, keep]
    a = vals[keep]
    if containment_residual(b, u @ u.conj().T) > cfg.rank_tol * 10:
        raise ImageNotContained("Im(B) is not contained in Im(gamma)")
    ratio = np.trace(b @ gamma).real / np.trace(gamma @ gamma).real
    if fro(b - ratio * gamma) <= cfg.rank_tol * nb:
        raise MultipleOfGamma("B is a multiple of gamma")

    r = u.conj().T / np.sqrt(a)[:, None]
    bt = _herm(r @ b @ r.conj().T)
    w, y = np.linalg.eigh(bt)
    big = np.max(np.abs(w))
    ties = np.flatnonzero(np.abs(w) >= big * (1 - 1e-12))
    pos = [i for i in ties if w[i] > 0]
    idx = int(pos[-1] if pos else ties[0])
    lam = 1.0 / w[idx]
    shifted = _herm(gamma - lam * b)
    x = r.conj().T @ y[:, idx]
    x = x / np.linalg.norm(x)
    return KernelShift(float(lam), shifted, x)


def _rank_one_pair(lam, g, d, cfg):
    sign = psd_sign(g, cfg)
    if sign == 0 or psd_sign(sign * d, cfg) != 1:
        raise NumericalDegeneracy("rank-one term of a PSD matrix is not a PSD product")
    return (_herm(lam * sign * g), _herm(sign * d))


def _double_shift_pairs(c1, d1, c2, d2, cfg):
    """Two PSD product terms for ``C1 (x) D1 + C2 (x) D2`` with ``C1, D1`` PSD,
    ``Im(C2)`` in ``Im(C1)`` and ``Im(D2)`` in ``Im(D1)``."""
    lam, _, v = kernel_shift(c1, c2, cfg)
    alpha1 = c1 - lam * c2
    t = float(np.real(v.conj() @ c2 @ v))
    beta1 = d1
    beta2 = t * (d2 + lam * d1)
    alpha2 = c2 / t
    eps, _, w = kernel_shift(beta1, beta2, cfg)
    tau = float(np.real(w.conj() @ beta2 @ w))
    return [
        (_herm(alpha1), _herm(beta1 - eps * beta2)),
        (_herm(tau * (alpha2 + eps * alpha1)), _herm(beta2 / tau)),
    ]


def _equal_lambda_pairs(a, sd, cfg):
    lam1 = sd.lambdas[0]
    basis = psd_schmidt_basis(a * (1.0 / lam1), PPT, cfg)
    return [(_herm(g), _herm(lam1 * d)) for g, d in zip(basis.gammas_prime, basis.deltas_prime)]


def _dominant_pairs(a, sd, cfg):
    (l1, l2), (g1, g2), (d1, d2) = sd.lambdas, sd.gammas, sd.deltas
    sign = psd_sign(g1, cfg)
    if sign == 0 or psd_sign(sign * d1, cfg) != 1:
        raise NumericalDegeneracy("dominant Schmidt term is not a PSD product")
    c1, dd1 = l1 * sign * g1, sign * d1
    pv = image_projector(c1, cfg)
    pw = image_projector(dd1, cfg)
    inside = (
        containment_residual(g2, pv) <= cfg.rank_tol * 10
        and containment_residual(d2, pw) <= cfg.rank_tol * 10
    )
    if inside:
        return _double_shift_pairs(c1, dd1, l2 * g2, d2, cfg)
    # not weak irreducible: the split has two tensor-rank-one blocks
    pairs = []
    for v, w in ((pv, pw), (np.eye(a.k) - pv, np.eye(a.m) - pw)):
        p = np.kron(v, w)
        block = a.with_matrix(p @ a.mat @ p)
        bsd = hermitian_schmidt(block, cfg)
        if len(bsd) != 1:
            raise NumericalDegeneracy("split of a tensor-rank-2 matrix left a block of tensor rank != 1")
        pairs.append(_rank_one_pair(bsd.lambdas[0], bsd.gammas[0], bsd.deltas[0], cfg))
    return pairs


def separate_rank2(a, cfg=DEFAULT_TOL):
    """Minimal separable decomposition of a PSD matrix with tensor rank <= 2."""
    check_hermitian(a.mat, cfg)
    ok, lo = is_psd(a.mat, cfg)
    if not ok:
        raise InputNotPSD(f"matrix is not positive semidefinite (min eigenvalue {lo:.3e})", lo)
    sd = hermitian_schmidt(a, cfg)
    n = len(sd)
    if n > 2:
        raise TensorRankTooHigh(f"tensor rank {n} > 2")
    if n == 0:
        return SeparableDecomposition([])
    if n == 1:
        pairs = [_rank_one_pair(sd.lambdas[0], sd.gammas[0], sd.deltas[0], cfg)]
    else:
        pairs = None
        if sd.lambdas[0] - sd.lambdas[1] <= cfg.degeneracy_tol * sd.lambdas[0]:
            try:
                pairs = _equal_lambda_pairs(a, sd, cfg)
            except (NumericalDegeneracy, PreconditionViolated):
                pairs = None
        if pairs is None:
            pairs = _dominant_pairs(a, sd, cfg)
    dec = SeparableDecomposition(pairs)
    if not dec.is_valid(a, cfg):
        raise NumericalDegeneracy(
            f"tensor-rank-2 construction failed verification "
            f"(residual {dec.residual(a):.3e}, min factor eig {dec.min_factor_eigenvalue():.3e})"
        )
    return dec


def separate_rank2_multipartite(a, cfg=DEFAULT_TOL):
    """PSD factor tuples ``(P_1, ..., P_n)`` with ``A = sum P_1 (x) ... (x) P_n``.

    Flattens to ``M_{k_1} (x) M_{k_2...k_n}``, separates there, and recurses on
    each right factor, which again has tensor rank at most two.
    """
    check_hermitian(a.mat, cfg)
    ok, lo = is_psd(a.mat, cfg)
    if not ok:
        raise InputNotPSD(f"matrix is not positive semidefinite (min eigenvalue {lo:.3e})", lo)
    if len(a.dims) == 1:
        return [(_herm(a.mat),)]
    dec = separate_rank2(a.flatten(), cfg)
    if len(a.dims) == 2:
        return [tuple(p) for p in dec.pairs]
    out = []
    for c, e in dec.pairs:
        for tail in separate_rank2_multipartite(MultipartiteOperator(e, a.dims[1:]), cfg):
            out.append((c,) + tail)
    return out


def _inequality_certificate(a, cfg, kind):
    sd = hermitian_schmidt(a, cfg)
    lam = sd.lambdas
    sign = psd_sign(sd.gammas[0], cfg)
    if sign == 0:
        raise NumericalDegeneracy("dominant factor is not semidefinite")
    g1, d1 = sign * sd.gammas[0], sign * sd.deltas[0]
    if kind == SPC:
        mu = least_positive_eigenvalue(g1, cfg) ** 2
        threshold = 0.5
    else:
        mu = least_positive_eigenvalue(g1, cfg) * least_positive_eigenvalue(d1, cfg)
        threshold = 1.0
    diag = {
        "route": f"{kind.lower()}_inequality",
        "lambdas": lam.tolist(),
        "s": 1,
        "mu": mu,
        "threshold": threshold,
    }
    if len(lam) == 1:
        diag["margin"] = math.inf
        diag["excess"] = math.inf
        dec = SeparableDecomposition([(_herm(lam[0] * g1), _herm(d1))])
        return Certificate(CertVerdict.SEPARABLE, decomposition=dec, diagnostics=diag)
    rest = float(np.sum(lam[1:]))
    ratio = lam[0] * mu / rest
    diag["margin"] = ratio
    diag["excess"] = ratio - threshold
    if ratio < threshold - INEQUALITY_SLACK:
        return Certificate(CertVerdict.INCONCLUSIVE, reason="inequality margin negative", diagnostics=diag)

    # A = (l1 mu - t*rest)(1/mu) g1(x)d1 + sum_i l_i (t/mu g1(x)d1 + g_i(x)d_i), t = threshold
    pairs = []
    lead = lam[0] * mu - threshold * rest
    if lead > 0:
        pairs.append((_herm(lead / mu * g1), _herm(d1)))
    for li, gi, di in zip(lam[1:], sd.gammas[1:], sd.deltas[1:]):
        term = BipartiteOperator(threshold / mu * np.kron(g1, d1) + np.kron(gi, di), a.k, a.m)
        for c, d in separate_rank2(term, cfg):
            pairs.append((_herm(li * c), d))
    dec = SeparableDecomposition(pairs)
    if not dec.is_valid(a, cfg):
        return Certificate(
            CertVerdict.INCONCLUSIVE,
            reason=f"assembled decomposition failed verification (residual {dec.residual(a):.3e})",
            diagnostics=diag,
        )
    return Certificate(CertVerdict.SEPARABLE, decomposition=dec, diagnostics=diag)


def spc_inequality_certificate(a, cfg=DEFAULT_TOL):
    """Separable when ``lambda_1 mu / (lambda_2 + ... + lambda_n) >= 1/2`` for a
    weak irreducible SPC matrix, ``mu`` the least positive eigenvalue of
    ``gamma_1 (x) gamma_1``; otherwise Inconclusive."""
    if not is_spc(a, cfg).is_spc:
        raise NotWeakIrreducibleSPC("input is not SPC")
    if is_weak_irreducible(a, cfg).verdict != WIVerdict.YES:
        raise NotWeakIrreducibleSPC("input is not weak irreducible")
    return _inequality_certificate(a, cfg, SPC)


def ppt_inequality_certificate(a, cfg=DEFAULT_TOL):
    """Separable when ``lambda_1 mu / (lambda_2 + ... + lambda_n) >= 1`` for a
    weak irreducible PPT matrix, ``mu`` the least positive eigenvalue of
    ``gamma_1 (x) delta_1``; otherwise Inconclusive."""
    try:
        ppt = is_ppt(a, cfg).is_ppt
    except InputNotPSD as exc:
        raise NotWeakIrreduciblePPT(str(exc)) from exc
    if not ppt:
        raise NotWeakIrreduciblePPT("input is not PPT")
    if is_weak_irreducible(a, cfg).verdict != WIVerdict.YES:
        raise NotWeakIrreduciblePPT("input is not weak irreducible")
    return _inequality_certificate(a, cfg, PPT)


def _certify_leaf(leaf, cfg):
    if len(hermitian_schmidt(leaf, cfg)) <= 2:
        return Certificate(
            CertVerdict.SEPARABLE,
            decomposition=separate_rank2(leaf, cfg),
            diagnostics={"route": "tensor_rank_2"},
        )
    first = None
    if is_spc(leaf, cfg).is_spc:
        first = spc_inequality_certificate(leaf, cfg)
        if first.is_separable:
            return first
    if is_ppt(leaf, cfg).is_ppt:
        second = ppt_inequality_certificate(leaf, cfg)
        if second.is_separable or first is None:
            return second
    return first


def certify(a, cfg=DEFAULT_TOL):
    """Separable / EntangledNPT / Inconclusive certificate for a PSD matrix.

    Stages: PSD check (error on failure), PPT test (failure gives an NPT
    witness), tensor rank <= 2, then the weak irreducible decomposition with
    an inequality certificate on every leaf.
    """
    check_hermitian(a.mat, cfg)
    ok, lo = is_psd(a.mat, cfg)
    if not ok:
        raise InputNotPSD(f"matrix is not positive semidefinite (min eigenvalue {lo:.3e})", lo)
    sd = hermitian_schmidt(a, cfg)
    diag = {"lambdas": sd.lambdas.tolist(), "tensor_rank": len(sd), "min_eigenvalue": lo}

    ppt = is_ppt(a, cfg)
    diag["min_pt_eigenvalue"] = ppt.min_pt_eigenvalue
    if not ppt.is_ppt:
        diag["route"] = "npt"
        return Certificate(
            CertVerdict.ENTANGLED_NPT,
            witness=ppt.witness,
            negative_eigenvalue=ppt.min_pt_eigenvalue,
            diagnostics=diag,
        )

    try:
        if len(sd) <= 2:
            diag["route"] = "tensor_rank_2"
            return Certificate(CertVerdict.SEPARABLE, decomposition=separate_rank2(a, cfg), diagnostics=diag)

        tree = weak_irreducible_tree(a, cfg, mode=SPC if is_spc(a, cfg).is_spc else PPT)
        diag["route"] = "weak_irreducible_split"
        diag["type"] = tree.type_tag
        diag["leaves"] = []
        pairs, reasons = [], []
        for i, leaf in enumerate(tree.leaves):
            cert = _certify_leaf(leaf, cfg)
            diag["leaves"].append({"verdict": cert.verdict.value, **cert.diagnostics})
            if cert.is_separable:
                pairs.extend(cert.decomposition.pairs)
            else:
                reasons.append(f"leaf {i}: {cert.reason}")
        if len(tree.leaves) == 1:
            diag.update({k: v for k, v in diag["leaves"][0].items() if k in ("mu", "margin", "excess", "s")})
    except SepcertError as exc:
        return Certificate(CertVerdict.INCONCLUSIVE, reason=f"{type(exc).__name__}: {exc}", diagnostics=diag)

    if reasons:
        return Certificate(CertVerdict.INCONCLUSIVE, reason="; ".join(reasons), diagnostics=diag)
    dec = SeparableDecomposition(pairs)
    if not dec.is_valid(a, cfg):
        return Certificate(
            CertVerdict.INCONCLUSIVE,
            reason=f"assembled decomposition failed verification (residual {dec.residual(a):.3e})",
            diagnostics=diag,
        )
    return Certificate(CertVerdict.SEPARABLE, decomposition=dec, diagnostics=diag)
