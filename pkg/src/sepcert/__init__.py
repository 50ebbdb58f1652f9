"""Separability certificates for positive semidefinite bipartite matrices."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .matcore import (
    DEFAULT_TOL,
    BipartiteOperator,
    ToleranceConfig,
    coefficient_matrix,
    f_map,
    g_map,
    hermitian_basis,
    is_psd,
    partial_transpose,
)
from .starprod import choi_matrix, is_completely_positive, star_identity, star_mat, star_vec
from .schmidt import SchmidtDecomposition, hermitian_schmidt, realignment, supports, tensor_rank
from .classify import is_ppt, is_spc, is_weak_irreducible, reducibility_bounds
from .split import psd_schmidt_basis, split_decomposition, weak_irreducible_tree
from .separate import (
    Certificate,
    CertVerdict,
    MultipartiteOperator,
    SeparableDecomposition,
    certify,
    kernel_shift,
    ppt_inequality_certificate,
    separate_rank2,
    separate_rank2_multipartite,
    spc_inequality_certificate,
)
from .families import gen_an_family, gen_pauli_family
from .report import Report, parse_matrix_file
