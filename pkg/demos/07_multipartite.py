"""Tensor-rank-two PSD matrices in M_2 (x) M_3 (x) M_2 split into PSD triples."""

import numpy as np

from sepcert import MultipartiteOperator, separate_rank2_multipartite

rng = np.random.default_rng(2)


def rand_psd(d):
    x = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return x @ x.conj().T


dims = (2, 3, 2)
mat = sum(np.kron(np.kron(rand_psd(2), rand_psd(3)), rand_psd(2)) for _ in range(2))
terms = separate_rank2_multipartite(MultipartiteOperator(mat, dims))
rec = sum(np.kron(np.kron(p, q), r) for p, q, r in terms)
print("terms:", len(terms))
print("relative reconstruction error:", np.linalg.norm(rec - mat) / np.linalg.norm(mat))
print("smallest factor eigenvalue:", min(np.linalg.eigvalsh(f).min() for t in terms for f in t))
