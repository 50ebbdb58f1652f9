"""Hermitian Schmidt decomposition, checked against the realignment spectrum."""

import numpy as np

from sepcert import BipartiteOperator, hermitian_schmidt, realignment

# A = v v^t with v = 2 e1 (x) e1 + e2 (x) e2 has coefficients 4, 2, 2, 1
v = np.array([2.0, 0, 0, 1])
a = BipartiteOperator(np.outer(v, v), 2, 2)
sd = hermitian_schmidt(a)
print("lambdas:", np.round(sd.lambdas, 12))
print("realignment singular values:", np.round(np.linalg.svd(realignment(a), compute_uv=False), 12))
print("reconstruction error:", np.linalg.norm(sd.reconstruct().mat - a.mat))

for lam, g, d in sd.terms():
    print(f"\nlambda = {lam:.3f}")
    print("gamma =\n", np.round(g, 3))
    print("delta =\n", np.round(d, 3))
