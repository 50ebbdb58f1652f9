import numpy as np
import pytest

from conftest import rand_herm
from sepcert import BipartiteOperator, gen_an_family, gen_pauli_family, hermitian_schmidt, realignment, supports, tensor_rank


def weighted_pure(l1=2.0, l2=1.0, k=2):
    v = np.zeros(k * k)
    v[0] = l1
    v[k + 1] = l2
    return BipartiteOperator(np.outer(v, v), k, k)


def span_residual(basis, targets):
    """Largest distance from a target (normalized) to the real span of ``basis``."""
    mat = np.array([b.reshape(-1) for b in basis]).T
    mat = np.concatenate([mat.real, mat.imag])
    q, _ = np.linalg.qr(mat)
    worst = 0.0
    for t in targets:
        v = np.concatenate([t.reshape(-1).real, t.reshape(-1).imag])
        v = v / np.linalg.norm(v)
        worst = max(worst, np.linalg.norm(v - q @ (q.T @ v)))
    return worst


def test_identity_single_term():
    sd = hermitian_schmidt(BipartiteOperator(np.eye(6), 2, 3))
    assert len(sd) == 1
    assert sd.lambdas[0] == pytest.approx(np.sqrt(6))
    np.testing.assert_allclose(sd.gammas[0], np.eye(2) / np.sqrt(2))
    np.testing.assert_allclose(sd.deltas[0], np.eye(3) / np.sqrt(3))


@pytest.mark.parametrize("k", [2, 3])
def test_weighted_pure_state_coefficients(k):
    a = weighted_pure(k=k)
    np.testing.assert_allclose(hermitian_schmidt(a).lambdas, [4, 2, 2, 1], rtol=1e-12)
    assert tensor_rank(a) == 4


def test_bell_projector_coefficients():
    u = np.array([1, 0, 0, 1.0])
    sd = hermitian_schmidt(BipartiteOperator(np.outer(u, u) / 2, 2, 2))
    np.testing.assert_allclose(sd.lambdas, [0.5] * 4, rtol=1e-12)


def test_orthonormal_factors_and_sign_convention(rng):
    a = BipartiteOperator(rand_herm(rng, 12), 3, 4)
    sd = hermitian_schmidt(a)
    assert np.all(np.diff(sd.lambdas) <= 0)
    for fam in (sd.gammas, sd.deltas):
        gram = np.einsum("iab,jba->ij", fam, fam).real
        np.testing.assert_allclose(gram, np.eye(len(sd)), atol=1e-12)
    for g in sd.gammas:
        flat = g.reshape(-1)
        z = flat[np.argmax(np.abs(flat))]
        assert z.real > 0 or (abs(z.real) < 1e-12 and z.imag > 0)


def test_zero_matrix_is_empty():
    sd = hermitian_schmidt(BipartiteOperator(np.zeros((4, 4)), 2, 2))
    assert len(sd) == 0


def test_supports_examples(rng):
    sp = supports(BipartiteOperator(np.eye(6), 2, 3))
    np.testing.assert_allclose(sp.basis1[0], np.eye(2) / np.sqrt(2))
    c, d, d2, c2 = rand_herm(rng, 3), rand_herm(rng, 2), rand_herm(rng, 3), rand_herm(rng, 2)
    sp = supports(BipartiteOperator(np.kron(c, d) + np.kron(d2, c2), 3, 2))
    assert len(sp) == 2
    assert span_residual(sp.basis1, [c, d2]) < 1e-10
    assert span_residual(sp.basis2, [d, c2]) < 1e-10
    sp = supports(gen_pauli_family(0.3, 0.2, 0.1))
    assert len(sp) == 4
    assert span_residual(sp.basis1, [np.eye(2), np.diag([1, -1]), np.array([[0, 1], [1, 0]]), np.array([[0, -1j], [1j, 0]])]) < 1e-12


def test_tensor_rank_of_an_family():
    assert tensor_rank(gen_an_family(4, 5.0, 1.0)) == 2


def test_realignment_of_product(rng):
    c, d = rand_herm(rng, 2), rand_herm(rng, 3)
    r = realignment(BipartiteOperator(np.kron(c, d), 2, 3))
    np.testing.assert_allclose(r, np.outer(c.reshape(-1), d.reshape(-1)))
