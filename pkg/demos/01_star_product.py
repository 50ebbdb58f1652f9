"""The *-product on M_n (x) M_m, its identity, and Choi's criterion."""

import numpy as np

from sepcert import BipartiteOperator, choi_matrix, is_completely_positive, star_identity, star_mat

rng = np.random.default_rng(0)

# a random 2x3 bipartite matrix and the identity element u u^t in M_3 (x) M_3
x = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
a = BipartiteOperator(x + x.conj().T, 2, 3)
print("A * uu^t == A:", np.allclose(star_mat(a, star_identity(3)).mat, a.mat))

# the product of two PSD matrices stays PSD
p = rng.standard_normal((6, 6))
q = rng.standard_normal((9, 9))
pa = BipartiteOperator(p @ p.T, 2, 3)
pb = BipartiteOperator(q @ q.T, 3, 3)
print("min eigenvalue of PSD * PSD:", np.linalg.eigvalsh(star_mat(pa, pb).mat).min())

# Choi matrices: identity and depolarizing maps are CP, the transpose is not
for name, channel in [
    ("identity", lambda m: m),
    ("depolarizing", lambda m: np.trace(m) * np.eye(2) / 2),
    ("transpose", lambda m: m.T),
]:
    print(f"{name:>13}: completely positive = {is_completely_positive(choi_matrix(channel, 2))}")
