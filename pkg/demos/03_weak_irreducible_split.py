"""Split an SPC matrix into its weak irreducible blocks."""

import numpy as np

from sepcert import BipartiteOperator, gen_pauli_family, is_weak_irreducible, weak_irreducible_tree

# two Pauli-family blocks placed on orthogonal 2-dim subspaces of C^4
eye = np.eye(4)
blocks = [gen_pauli_family(0.4, 0.3, 0.2).mat, 0.6 * gen_pauli_family(0.1, 0.5, 0.2).mat]
mat = np.zeros((16, 16), dtype=complex)
for blk, basis in zip(blocks, (eye[:, :2], eye[:, 2:])):
    big = np.kron(basis, basis)
    mat += big @ blk @ big.T
a = BipartiteOperator(mat, 4, 4)

rep = is_weak_irreducible(a)
print("weak irreducible:", rep.verdict.value, "via", rep.route.value)

tree = weak_irreducible_tree(a)
print("type:", tree.type_tag, "leaves:", len(tree))
for i, leaf in enumerate(tree.leaves):
    print(f"leaf {i}: norm {leaf.norm:.4f}, weak irreducible: {is_weak_irreducible(leaf).verdict.value}")
print("leaves sum to A:", np.allclose(sum(l.mat for l in tree.leaves), a.mat))
