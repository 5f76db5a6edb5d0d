"""Exact-arithmetic workbench for Morita witnesses and Hochschild
(co)homology of finite Brandt semigroup algebras.

Everything is computed over the rationals with no rounding: subspaces
carry canonical echelon bases, so set-level identities collapse to
syntactic equality, and every claimed isomorphism ships with an explicit
matrix that is re-verified from scratch.
"""

__version__ = "0.1.0"

from .exactla import (
    LinearMap,
    QuotientMaps,
    RationalMatrix,
    Subspace,
    image,
    inverse,
    kernel,
    kronecker,
    l1_operator_norm,
    quotient,
    rank,
    rref,
    solve,
    subspace_equal,
)
from .structures import (
    AlgebraElement,
    BrandtSemigroup,
    CayleyTableError,
    FiniteGroup,
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotLatinSquare,
    StructureAlgebra,
    algebra_tensor,
    brandt,
    builtin_group,
    contracted_brandt_algebra,
    cyclic_group,
    direct_sum,
    find_unit,
    group_algebra,
    group_from_cayley,
    index_pair_iso,
    klein_four_group,
    load_cayley,
    matrix_algebra,
    parse_cayley,
    scalar_algebra,
    semigroup_algebra,
    symmetric_group,
    triple_basis_iso,
)
from .bimodules import (
    ActionNotWellDefined,
    BalancedTensor,
    Bimodule,
    BimoduleAxiomError,
    BimoduleMap,
    IntertwiningError,
    InducedFlags,
    balanced_tensor,
    balancing_subspace,
    column_module,
    dual_bimodule,
    index_space_induced,
    induced_completion,
    induced_map,
    is_induced,
    is_self_induced,
    mirror_mu_map,
    mu_map,
    regular_bimodule,
    row_module,
    seeded_random_bimodule,
    tensor,
    trace_pairing,
)
from .morita import (
    MoritaWitness,
    SplitSequence,
    VerificationFailed,
    WitnessReport,
    split_sequence,
    swap_witness,
    verify_witness,
    witness_brandt_contracted,
    witness_brandt_full,
    witness_matrix_vs_scalars,
)
from .homology import (
    ChainComplex,
    DerivationSpaces,
    HomologyResult,
    NotUnitalError,
    SizeLimitError,
    VanishingReport,
    bar_complex,
    derivation_space,
    diagonal_check,
    hochschild_cohomology,
    hochschild_homology,
    vanishing_suite,
)
