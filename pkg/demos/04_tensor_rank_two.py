"""Every PSD matrix of tensor rank two has a two-term separable decomposition."""

import numpy as np

from sepcert import BipartiteOperator, gen_an_family, kernel_shift, separate_rank2

# the kernel shift moves gamma along -B until a new kernel direction appears
ks = kernel_shift(np.eye(2), np.diag([1.0, -1.0]) / np.sqrt(2))
print("kernel shift: lambda =", round(ks.lam, 6), "shifted =", np.round(ks.shifted.real, 6).tolist())

# A(2) on its PSD boundary: lambda1 = 2, lambda2 = 1
a = gen_an_family(2, 2.0, 1.0)
dec = separate_rank2(a)
print("\nA(2) boundary terms:", len(dec), " residual:", dec.residual(a))
for c, d in dec:
    print("  C eigenvalues", np.round(np.linalg.eigvalsh(c), 6), " D eigenvalues", np.round(np.linalg.eigvalsh(d), 6))

# a random dominant product plus a small indefinite correction
rng = np.random.default_rng(1)
c1 = np.eye(3) + 0.2 * np.ones((3, 3))
d1 = np.diag([1.0, 2.0])
h = rng.standard_normal((3, 3))
k = np.array([[0.0, 1], [1, 0]])
a = BipartiteOperator(np.kron(c1, d1) + 0.1 * np.kron(h + h.T, k), 3, 2)
dec = separate_rank2(a)
print("\nrandom instance:", len(dec), "terms, residual", dec.residual(a),
      "min factor eigenvalue", dec.min_factor_eigenvalue())
