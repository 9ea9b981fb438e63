"""Exact computation of relations between permutation modules of finite
groups: mark-homomorphism kernels, their primitive quotients, explicit
generator families, and structural classification oracles.
"""

__version__ = "0.1.0"

from .burnside import (
    BurnsideElement,
    element_from_subgroups,
    fixed_points,
    induct,
    inflate,
    mark_vector,
    marks_table,
    multiply,
    restrict,
)
from .classify import (
    classify_group,
    dress_decomposition,
    dress_primes,
    is_p_hypo_elementary,
    is_pq_dress,
    is_q_quasi_elementary,
    main_case_classify,
    p_core,
    q_residual,
)
from .constructions import (
    affine_group,
    alternating_group,
    cyclic_group,
    dihedral_group,
    direct_product,
    frobenius_group,
    quaternion_group,
    symmetric_group,
)
from .errors import CapExceeded, InputError, InternalCheckError, PermrelError
from .perm import Group, Permutation, from_cycles, generate, parse_cycles
from .presets import CORPUS_CHARACTERISTICS, CORPUS_NAMES, preset_group
from .relations import (
    KernelBasis,
    Prediction,
    PrimReport,
    brauer_kernel,
    effective_prime,
    generates_quotient,
    imprimitive_lattice,
    predict_prim,
    prim,
    theta_highdim,
    theta_mn,
    theta_qk,
    verify_relation,
)
from .subgroups import (
    Subgroup,
    SubgroupClassTable,
    enumerate_classes,
    normal_subgroups,
    quotient,
    subgroup_as_group,
)
from .zlattice import IntMatrix, hnf, kernel_basis, quotient_invariants, snf

__all__ = [
    "BurnsideElement",
    "CapExceeded",
    "CORPUS_CHARACTERISTICS",
    "CORPUS_NAMES",
    "Group",
    "InputError",
    "IntMatrix",
    "InternalCheckError",
    "KernelBasis",
    "Permutation",
    "PermrelError",
    "Prediction",
    "PrimReport",
    "Subgroup",
    "SubgroupClassTable",
    "affine_group",
    "alternating_group",
    "brauer_kernel",
    "classify_group",
    "cyclic_group",
    "dihedral_group",
    "direct_product",
    "dress_decomposition",
    "dress_primes",
    "effective_prime",
    "element_from_subgroups",
    "enumerate_classes",
    "fixed_points",
    "frobenius_group",
    "from_cycles",
    "generate",
    "generates_quotient",
    "hnf",
    "imprimitive_lattice",
    "induct",
    "inflate",
    "is_p_hypo_elementary",
    "is_pq_dress",
    "is_q_quasi_elementary",
    "kernel_basis",
    "main_case_classify",
    "mark_vector",
    "marks_table",
    "multiply",
    "normal_subgroups",
    "p_core",
    "parse_cycles",
    "predict_prim",
    "preset_group",
    "prim",
    "q_residual",
    "quaternion_group",
    "quotient",
    "quotient_invariants",
    "restrict",
    "snf",
    "subgroup_as_group",
    "symmetric_group",
    "theta_highdim",
    "theta_mn",
    "theta_qk",
    "verify_relation",
]
