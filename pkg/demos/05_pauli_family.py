"""The Pauli family (Id + sum d_i s_i (x) s_i)/2 on the positive octant.

Inside the octant the PSD region and the separable region coincide: both are
the simplex d2 + d3 + d4 <= 1.  Past that face the matrix is not PSD, so
certify refuses the input instead of returning an entanglement verdict.
"""

import numpy as np

from sepcert import InputNotPSD, certify, gen_pauli_family

grid = np.arange(1, 22) / 21
counts = {}
for d2 in grid:
    for d3 in grid:
        for d4 in grid:
            try:
                verdict = certify(gen_pauli_family(d2, d3, d4)).verdict.value
            except InputNotPSD:
                verdict = "input not PSD"
            side = "sum <= 1" if d2 + d3 + d4 <= 1 + 1e-9 else "sum > 1"
            counts[side, verdict] = counts.get((side, verdict), 0) + 1
for key, n in sorted(counts.items()):
    print(f"{key[0]:>9} -> {key[1]:<14} {n}")

cert = certify(gen_pauli_family(1 / 3, 1 / 3, 1 / 3))
print("\nboundary point: ", cert.verdict.value, "margin", cert.diagnostics["margin"], "mu", cert.diagnostics["mu"])

# signs matter: (-1, 1, 1) points at a PSD Bell projector, which is NPT
cert = certify(gen_pauli_family(-1, 1, 1))
print("d = (-1, 1, 1):", cert.verdict.value, "negative eigenvalue", cert.negative_eigenvalue)
