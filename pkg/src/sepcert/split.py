"""Unique PSD Schmidt bases of top blocks, split decompositions, and the
recursive decomposition of SPC/PPT matrices into weak irreducible pieces."""

from dataclasses import dataclass, field

import numpy as np

from .classify import is_ppt, is_spc
from .errors import (
    EmptyDecomposition,
    NotSpcNorPpt,
    NumericalDegeneracy,
    PreconditionViolated,
)
from .matcore import (
    DEFAULT_TOL,
    BipartiteOperator,
    coefficient_matrix,
    expand,
    fro,
    g_map,
    image_projector,
    is_psd,
    psd_sign,
)
from .schmidt import hermitian_schmidt
from .starprod import star_mat

SPC = "SPC"
PPT = "PPT"


@dataclass(frozen=True, eq=False)
class PsdSchmidtBasis:
    gammas_prime: list
    deltas_prime: list

    def __len__(self):
        return len(self.gammas_prime)

    def reconstruct(self):
        return sum(np.kron(g, d) for g, d in zip(self.gammas_prime, self.deltas_prime))


@dataclass(frozen=True, eq=False)
class SplitDecomposition:
    s: int
    projections: list
    blocks: list
    type_tag: str
    basis: PsdSchmidtBasis = None


@dataclass(frozen=True, eq=False)
class WeakIrreducibleTree:
    leaves: list
    provenance: list = field(default_factory=list)
    type_tag: str = None

    def __len__(self):
        return len(self.leaves)


def extract_top_block(sd, cfg=DEFAULT_TOL):
    """Size ``s`` of the ``lambda_1`` cluster and ``D = sum_{i<=s} gamma_i (x) delta_i``."""
    if len(sd) == 0:
        raise EmptyDecomposition("Schmidt decomposition has no terms")
    lam = sd.lambdas
    s = int(np.sum(lam[0] - lam <= cfg.degeneracy_tol * lam[0]))
    mat = sum(np.kron(sd.gammas[i], sd.deltas[i]) for i in range(s))
    d = BipartiteOperator(mat, sd.k, sd.m)
    ok, lo = is_psd(d.mat, cfg)
    if not ok:
        raise NumericalDegeneracy(f"top block is not PSD (min eigenvalue {lo:.3e})")
    return s, d


def _unit_factors(d, cfg):
    """Symmetric factors of ``D = sum gamma_i (x) gamma_i`` from the spectral
    decomposition of its coefficient matrix (all nonzero eigenvalues ~ 1)."""
    c = coefficient_matrix(d)
    scale = max(1.0, fro(c))
    if fro(c - c.T) > 1e3 * cfg.recon_tol * scale:
        raise PreconditionViolated("block is not symmetric in its two factors")
    w, u = np.linalg.eigh((c + c.T) / 2)
    top = np.max(np.abs(w), initial=0.0)
    keep = np.abs(w) > cfg.rank_tol * max(top, 1e-300)
    if top == 0 or not keep.any():
        raise NumericalDegeneracy("empty block in PSD Schmidt recursion")
    kept = w[keep]
    if np.any(np.abs(kept - 1) > 2 * cfg.degeneracy_tol + 1e-12):
        raise PreconditionViolated(f"Schmidt coefficients deviate from 1: {np.sort(kept)}")
    return [expand(u[:, i], d.k) for i in np.flatnonzero(keep)]


def _complete_basis(first, gammas, cfg):
    """Orthonormal basis of ``span(gammas)`` starting with ``first`` (pivoted
    Gram-Schmidt under ``<X, Y> = tr(XY)``, deterministic)."""
    basis = [first]
    cands = [g.copy() for g in gammas]
    for _ in range(len(gammas) - 1):
        resid = []
        for g in cands:
            r = g.copy()
            for b in basis:
                r -= np.trace(b @ r).real * b
            resid.append(r)
        norms = [fro(r) for r in resid]
        j = int(np.argmax(norms))
        if norms[j] <= 1e-8:
            raise NumericalDegeneracy("support basis completion collapsed")
        r = resid[j]
        r = r - sum(np.trace(b @ r).real * b for b in basis)
        basis.append((r + r.conj().T) / (2 * fro(r)))
        del cands[j]
    return basis


def _block(mat_op, v):
    p = np.kron(v, v)
    return mat_op.with_matrix(p @ mat_op.mat @ p)


def _spc_psd_basis(d, cfg, depth=0):
    from .separate import kernel_shift

    if depth > 4 * d.k * d.k:
        raise NumericalDegeneracy("PSD Schmidt recursion did not terminate")
    gammas = _unit_factors(d, cfg)
    n = len(gammas)
    if n == 1:
        sign = psd_sign(gammas[0], cfg)
        if sign == 0:
            raise NumericalDegeneracy("rank-one factor is not semidefinite")
        return [sign * gammas[0]]

    g = sum(np.trace(x).real * x for x in gammas)
    if fro(g) <= cfg.rank_tol:
        raise NumericalDegeneracy("sum tr(gamma_i) gamma_i vanished on a nonzero PSD block")
    if psd_sign(g, cfg) != 1:
        raise NumericalDegeneracy("sum tr(gamma_i) gamma_i is not PSD")
    first = g / fro(g)
    eye = np.eye(d.k)
    for _ in range(2):
        basis = _complete_basis(first, gammas, cfg)
        v1 = image_projector(first, cfg)
        escapes = [fro(b - v1 @ b) > cfg.rank_tol * fro(b) for b in basis[1:]]
        if any(escapes):
            v2 = eye - v1
            d1, d2 = _block(d, v1), _block(d, v2)
            tiny = cfg.recon_tol * d.norm
            if d1.norm <= tiny or d2.norm <= tiny:
                raise NumericalDegeneracy("image split produced an empty block")
            return _spc_psd_basis(d1, cfg, depth + 1) + _spc_psd_basis(d2, cfg, depth + 1)
        # every factor lives inside Im(first): shrink Im(first) by a kernel shift
        shift = kernel_shift(first, basis[1], cfg)
        first = shift.shifted / fro(shift.shifted)
    raise NumericalDegeneracy("kernel shift did not expose an escaping factor")


def psd_schmidt_basis(d, mode=SPC, cfg=DEFAULT_TOL):
    """The unique orthonormal Schmidt factorization of ``D`` (all coefficients 1)
    whose factors are PSD.

    ``mode="SPC"``: ``D = sum gamma_i (x) gamma_i``, returns ``delta' = gamma'``.
    ``mode="PPT"``: ``D`` PSD and PPT; the left factors come from the SPC
    problem for ``D * B`` with ``B = sum delta_i^t (x) gamma_i`` and the right
    ones are ``delta_i' = G_D(gamma_i')``.
    """
    sd = hermitian_schmidt(d, cfg)
    if len(sd) == 0:
        raise EmptyDecomposition("D is zero")
    if np.any(np.abs(sd.lambdas - 1) > cfg.degeneracy_tol + 1e-12):
        raise PreconditionViolated(f"Schmidt coefficients of D must all be 1, got {sd.lambdas}")
    if mode == SPC:
        if d.k != d.m:
            raise PreconditionViolated("SPC mode needs equal factor dimensions")
        gammas = _spc_psd_basis(d, cfg)
        deltas = [g.copy() for g in gammas]
    elif mode == PPT:
        b_mat = sum(np.kron(dl.T, g) for g, dl in zip(sd.gammas, sd.deltas))
        b = BipartiteOperator(b_mat, d.m, d.k)
        gammas = _spc_psd_basis(star_mat(d, b), cfg)
        deltas = []
        for g in gammas:
            dl = g_map(d, g)
            deltas.append((dl + dl.conj().T) / 2)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if len(gammas) != len(sd):
        raise NumericalDegeneracy(f"expected {len(sd)} PSD factors, found {len(gammas)}")
    _check_psd_basis(gammas, deltas, cfg)
    return PsdSchmidtBasis(gammas, deltas)


def _check_psd_basis(gammas, deltas, cfg):
    tol = max(cfg.degeneracy_tol, 1e-9)
    for fam in (gammas, deltas):
        gram = np.array([[np.trace(x @ y).real for y in fam] for x in fam])
        if np.max(np.abs(gram - np.eye(len(fam)))) > 10 * tol:
            raise NumericalDegeneracy("PSD Schmidt factors are not orthonormal")
        for x in fam:
            if psd_sign(x, cfg) != 1:
                raise NumericalDegeneracy("PSD Schmidt factor failed its PSD check")


def _detect_mode(a, cfg):
    if is_spc(a, cfg).is_spc:
        return SPC
    ok, _ = is_psd(a.mat, cfg)
    if ok and is_ppt(a, cfg).is_ppt:
        return PPT
    raise NotSpcNorPpt("split decompositions exist only for SPC or PPT matrices")


def split_decomposition(a, cfg=DEFAULT_TOL, mode=None):
    """``A = sum_{i=1}^{s+1} (V_i x W_i) A (V_i x W_i)`` with ``V_i``, ``W_i``
    the image projectors of the PSD Schmidt basis of the top block.

    ``mode`` forces the SPC or PPT variant; by default SPC is preferred.
    """
    if mode is None:
        mode = _detect_mode(a, cfg)
    sd = hermitian_schmidt(a, cfg)
    s, d = extract_top_block(sd, cfg)
    basis = psd_schmidt_basis(d, mode, cfg)
    vs = [image_projector(g, cfg) for g in basis.gammas_prime]
    ws = [image_projector(x, cfg) for x in basis.deltas_prime]
    vs.append(np.eye(a.k) - sum(vs))
    ws.append(np.eye(a.m) - sum(ws))
    for fam in (vs, ws):
        for i in range(len(fam)):
            for j in range(i + 1, len(fam)):
                if fro(fam[i] @ fam[j]) > 1e-8:
                    raise NumericalDegeneracy("split projections are not mutually orthogonal")
    blocks = []
    for v, w in zip(vs, ws):
        p = np.kron(v, w)
        blocks.append(a.with_matrix(p @ a.mat @ p))
    if fro(a.mat - sum(b.mat for b in blocks)) > cfg.recon_tol * max(a.norm, 1e-300):
        raise NumericalDegeneracy("split blocks do not add up to A")
    return SplitDecomposition(s, list(zip(vs, ws)), blocks, mode, basis)


def weak_irreducible_tree(a, cfg=DEFAULT_TOL, mode=None):
    """Leaves (weak irreducible, same type as ``a``) summing to ``a``.

    Blocks ``1..s`` of each split are leaves; block ``s+1`` is split again
    while nonzero.  ``provenance[i]`` lists the projection pairs that cut out
    leaf ``i``.
    """
    if mode is None:
        mode = _detect_mode(a, cfg)
    tiny = cfg.recon_tol * max(a.norm, 1e-300)
    leaves, provenance = [], []

    def walk(op, path, budget):
        if budget < 0:
            raise NumericalDegeneracy("weak irreducible recursion exceeded the tensor rank")
        if len(hermitian_schmidt(op, cfg)) <= 1:
            leaves.append(op)
            provenance.append(path)
            return
        dec = split_decomposition(op, cfg, mode=mode)
        for i in range(dec.s):
            leaves.append(dec.blocks[i])
            provenance.append(path + [dec.projections[i]])
        rest = dec.blocks[dec.s]
        if rest.norm > tiny:
            walk(rest, path + [dec.projections[dec.s]], budget - dec.s)

    if a.norm > tiny:
        walk(a, [], len(hermitian_schmidt(a, cfg)))
    return WeakIrreducibleTree(leaves, provenance, mode)
