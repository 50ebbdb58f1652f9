import numpy as np
import pytest

from conftest import rand_complex, rand_unitary
from sepcert import BipartiteOperator, gen_pauli_family, psd_schmidt_basis, split_decomposition, weak_irreducible_tree
from sepcert.errors import NotSpcNorPpt, PreconditionViolated
from sepcert.schmidt import hermitian_schmidt
from sepcert.split import extract_top_block

E = np.eye(2)
P1, P2 = np.outer(E[0], E[0]), np.outer(E[1], E[1])
DIAG_PAIR = BipartiteOperator(np.kron(P1, P1) + np.kron(P2, P2), 2, 2)


def as_set(mats):
    return sorted(tuple(np.round(np.asarray(m).reshape(-1).real, 10)) for m in mats)


def test_extract_top_block_examples():
    s, d = extract_top_block(hermitian_schmidt(BipartiteOperator(np.eye(6), 2, 3)))
    assert s == 1
    np.testing.assert_allclose(d.mat, np.kron(np.eye(2) / np.sqrt(2), np.eye(3) / np.sqrt(3)), atol=1e-14)
    s, d = extract_top_block(hermitian_schmidt(DIAG_PAIR))
    assert s == 2
    np.testing.assert_allclose(d.mat, DIAG_PAIR.mat, atol=1e-14)
    s, d = extract_top_block(hermitian_schmidt(gen_pauli_family(0.5, 0.3, 0.1)))
    assert s == 1
    np.testing.assert_allclose(d.mat, np.eye(4) / 2, atol=1e-14)


def test_psd_basis_sign_fix():
    g = -P1
    basis = psd_schmidt_basis(BipartiteOperator(np.kron(g, g), 2, 2))
    assert len(basis) == 1
    np.testing.assert_allclose(basis.gammas_prime[0], P1, atol=1e-12)


@pytest.mark.parametrize("mode", ["SPC", "PPT"])
def test_psd_basis_from_rotated_presentation(mode):
    g1, g2 = (P1 + P2) / np.sqrt(2), (P1 - P2) / np.sqrt(2)
    d = BipartiteOperator(np.kron(g1, g1) + np.kron(g2, g2), 2, 2)
    np.testing.assert_allclose(d.mat, DIAG_PAIR.mat, atol=1e-14)
    basis = psd_schmidt_basis(d, mode)
    assert as_set(basis.gammas_prime) == as_set([P1, P2])
    assert as_set(basis.deltas_prime) == as_set([P1, P2])


@pytest.mark.parametrize("mode", ["SPC", "PPT"])
def test_psd_basis_random_rank_one(rng, mode):
    u = rand_unitary(rng, 3)
    w = u if mode == "SPC" else rand_unitary(rng, 3)
    ps = [np.outer(u[:, i], u[:, i].conj()) for i in range(3)]
    qs = [np.outer(w[:, i], w[:, i].conj()) for i in range(3)]
    d = BipartiteOperator(sum(np.kron(p, q) for p, q in zip(ps, qs)), 3, 3)
    basis = psd_schmidt_basis(d, mode)
    for found, planted in ((basis.gammas_prime, ps), (basis.deltas_prime, qs)):
        for p in planted:
            assert min(np.linalg.norm(f - p) for f in found) < 1e-9


def test_psd_basis_requires_unit_coefficients():
    with pytest.raises(PreconditionViolated):
        psd_schmidt_basis(BipartiteOperator(2 * np.kron(P1, P1) + np.kron(P2, P2), 2, 2))


def test_split_of_weak_irreducible_pauli():
    a = gen_pauli_family(0.4, 0.3, 0.2)
    dec = split_decomposition(a)
    assert dec.s == 1 and dec.type_tag == "SPC"
    np.testing.assert_allclose(dec.blocks[0].mat, a.mat, atol=1e-12)
    v2, w2 = dec.projections[-1]
    np.testing.assert_allclose(v2, 0, atol=1e-12)
    np.testing.assert_allclose(w2, 0, atol=1e-12)


def test_split_of_diagonal_pair():
    dec = split_decomposition(DIAG_PAIR)
    assert dec.s == 2
    projs = as_set([v for v, _ in dec.projections[:2]])
    assert projs == as_set([P1, P2])
    np.testing.assert_allclose(sum(b.mat for b in dec.blocks), DIAG_PAIR.mat, atol=1e-12)


def _embed(block, basis):
    big = np.kron(basis, basis)
    return big @ block @ big.conj().T


def test_split_of_two_pauli_blocks():
    u = np.eye(4)
    b1 = gen_pauli_family(0.4, 0.3, 0.2).mat
    b2 = gen_pauli_family(0.1, 0.5, 0.2).mat
    a = BipartiteOperator(_embed(b1, u[:, :2]) + _embed(b2, u[:, 2:]), 4, 4)
    dec = split_decomposition(a)
    assert dec.s == 2
    blocks = sorted((b.mat for b in dec.blocks[:2]), key=lambda m: -abs(m[0, 0]))
    targets = sorted((_embed(b1, u[:, :2]), _embed(b2, u[:, 2:])), key=lambda m: -abs(m[0, 0]))
    for got, want in zip(blocks, targets):
        np.testing.assert_allclose(got, want, atol=1e-10)
    assert np.linalg.norm(dec.blocks[2].mat) < 1e-10


def test_tree_examples(rng):
    a = gen_pauli_family(0.4, 0.3, 0.2)
    tree = weak_irreducible_tree(a)
    assert len(tree) == 1
    np.testing.assert_allclose(tree.leaves[0].mat, a.mat, atol=1e-12)
    assert len(weak_irreducible_tree(DIAG_PAIR)) == 2

    u, w = rand_unitary(rng, 3), rand_unitary(rng, 3)
    mat = sum(
        (i + 1) * np.kron(np.outer(u[:, i], u[:, i].conj()), np.outer(w[:, i], w[:, i].conj())) for i in range(3)
    )
    tree = weak_irreducible_tree(BipartiteOperator(mat, 3, 3))
    assert len(tree) == 3 and tree.type_tag == "PPT"
    np.testing.assert_allclose(sum(leaf.mat for leaf in tree.leaves), mat, atol=1e-10)
    assert all(len(p) >= 1 for p in tree.provenance)


def test_tree_rejects_npt():
    v = np.array([1, 0, 0, 1.0])
    with pytest.raises(NotSpcNorPpt):
        weak_irreducible_tree(BipartiteOperator(np.outer(v, v), 2, 2))


def test_tree_of_random_ppt_pairs(rng):
    # two rank-one blocks with different weights on orthogonal supports
    for _ in range(10):
        x, y = rand_complex(rng, 2), rand_complex(rng, 3)
        u, w = rand_unitary(rng, 4), rand_unitary(rng, 5)
        c1 = u[:, :2] @ np.outer(x, x.conj()) @ u[:, :2].conj().T
        c2 = u[:, 2:] @ np.outer(x, x.conj()) @ u[:, 2:].conj().T
        d1 = w[:, :3] @ np.outer(y, y.conj()) @ w[:, :3].conj().T
        d2 = w[:, 3:] @ (np.eye(2) + 0.1) @ w[:, 3:].conj().T
        a = BipartiteOperator(np.kron(c1, d1) + 0.5 * np.kron(c2, d2), 4, 5)
        tree = weak_irreducible_tree(a)
        assert len(tree) == 2
