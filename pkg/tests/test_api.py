"""The package exposes its public surface at the top level."""

import moritalab


def test_version():
    assert moritalab.__version__ == "0.1.0"


def test_public_surface():
    expected = [
        # exact linear algebra
        "RationalMatrix", "Subspace", "LinearMap", "rref", "kernel", "image",
        "solve", "quotient", "subspace_equal", "l1_operator_norm", "kronecker",
        # structures
        "FiniteGroup", "BrandtSemigroup", "StructureAlgebra", "AlgebraElement",
        "cyclic_group", "symmetric_group", "group_from_cayley", "brandt",
        "matrix_algebra", "group_algebra", "contracted_brandt_algebra",
        "semigroup_algebra", "direct_sum", "algebra_tensor", "find_unit",
        # bimodules
        "Bimodule", "BimoduleMap", "regular_bimodule", "row_module",
        "column_module", "tensor", "balancing_subspace", "balanced_tensor",
        "mu_map", "is_induced", "is_self_induced", "dual_bimodule",
        "induced_completion",
        # witnesses
        "MoritaWitness", "SplitSequence", "witness_matrix_vs_scalars",
        "split_sequence", "witness_brandt_contracted", "witness_brandt_full",
        "verify_witness",
        # homology
        "ChainComplex", "HomologyResult", "bar_complex", "hochschild_homology",
        "hochschild_cohomology", "derivation_space", "diagonal_check",
        "vanishing_suite",
    ]
    for name in expected:
        assert hasattr(moritalab, name), name
