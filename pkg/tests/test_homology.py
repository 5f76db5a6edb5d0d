"""Bar complex, Hochschild (co)homology, derivations, diagonals."""

import random

import pytest

from moritalab.structures import (
    StructureAlgebra,
    brandt,
    cyclic_group,
    group_algebra,
    matrix_algebra,
    scalar_algebra,
    semigroup_algebra,
    symmetric_group,
)
from moritalab.bimodules import (
    Bimodule,
    dual_bimodule,
    induced_completion,
    regular_bimodule,
    seeded_random_bimodule,
)
from moritalab.homology import (
    NotUnitalError,
    SizeLimitError,
    bar_complex,
    derivation_space,
    diagonal_check,
    hochschild_cohomology,
    hochschild_homology,
    vanishing_suite,
)
from moritalab.exactla import RationalMatrix

from oracles import dense_rank, matrix_of_linear_map


# ----------------------------------------------------------------- bar complex

def test_bar_boundary_commutative_trivial():
    sc = scalar_algebra()
    cx = bar_complex(sc, regular_bimodule(sc), 1)
    assert cx.boundary(1).matrix.is_zero()


def test_bar_space_dimensions():
    m2 = matrix_algebra(2)
    cx = bar_complex(m2, regular_bimodule(m2), 2)
    assert cx.spaces == [4, 16, 64, 256]


def test_bar_composite_zero_checked_on_construction():
    sa = semigroup_algebra(brandt(2, cyclic_group(2)))
    cx = bar_complex(sa, regular_bimodule(sa), 2)
    for n in range(1, 3):
        comp = cx.boundary(n).compose(cx.boundary(n + 1))
        assert comp.matrix.is_zero()


def test_bar_degree_one_is_commutator_map():
    m2 = matrix_algebra(2)
    cx = bar_complex(m2, regular_bimodule(m2), 1)
    b1 = cx.boundary(1)
    # b1(x (x) a) = x.a - a.x on basis pairs
    for x in range(4):
        for a in range(4):
            expected = dict(m2.structure.get((x, a), {}))
            for r, v in m2.structure.get((a, x), {}).items():
                y = expected.get(r, 0) - v
                if y:
                    expected[r] = y
                elif r in expected:
                    del expected[r]
            assert b1.col(x * 4 + a) == expected


def test_bar_size_limit_total_entry_count():
    sa = semigroup_algebra(brandt(2, symmetric_group(3)))
    with pytest.raises(SizeLimitError) as err:
        bar_complex(sa, regular_bimodule(sa), 3)
    assert err.value.total == 25 * (1 + 25 + 625 + 15625 + 390625)
    assert err.value.worst_dim == 25 ** 5 // 25 * 25  # 9765625
    # one degree lower fits comfortably
    bar_complex(sa, regular_bimodule(sa), 1)


# -------------------------------------------------------------------- homology

def test_h0_scalars():
    sc = scalar_algebra()
    res = hochschild_homology(sc, regular_bimodule(sc), 0)
    assert res.betti == 1
    assert len(res.cycle_reps) == 1


def test_h0_matrix_algebra_is_trace_line():
    m2 = matrix_algebra(2)
    res = hochschild_homology(m2, regular_bimodule(m2), 0)
    # oracle: the commutator image has rank 3, frozen via dense elimination
    cx = bar_complex(m2, regular_bimodule(m2), 0)
    assert dense_rank(matrix_of_linear_map(cx.boundary(1))) == 3
    assert res.boundary_rank == 3
    assert res.betti == 1


def test_h1_h2_matrix_algebra_vanish():
    m2 = matrix_algebra(2)
    reg = regular_bimodule(m2)
    cx = bar_complex(m2, reg, 2)
    assert hochschild_homology(m2, reg, 1, complex=cx).betti == 0
    assert hochschild_homology(m2, reg, 2, complex=cx).betti == 0


def test_homology_nonvanishing_case_has_representatives():
    # dual numbers (x^2 = 0) are not separable; H_1 with regular
    # coefficients is nonzero and representatives must be genuine cycles
    dual = StructureAlgebra(
        2, ["1", "x"], {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}},
        unit={0: 1}, name="dual-numbers",
    )
    reg = regular_bimodule(dual)
    res = hochschild_homology(dual, reg, 1)
    assert res.betti > 0
    assert len(res.cycle_reps) == res.betti
    cx = bar_complex(dual, reg, 1)
    for rep in res.cycle_reps:
        assert cx.boundary(1).apply(rep) == {}


def test_rank_arithmetic_cross_checked_against_dense_oracle():
    sa = semigroup_algebra(brandt(1, cyclic_group(2)))
    reg = regular_bimodule(sa)
    cx = bar_complex(sa, reg, 2)
    for n in (1, 2, 3):
        ours = cx.col_rank(n)
        dense = dense_rank(matrix_of_linear_map(cx.boundary(n)))
        assert ours == dense


# ------------------------------------------------------------------ cohomology

def test_h0_cohomology_scalars():
    sc = scalar_algebra()
    assert hochschild_cohomology(sc, regular_bimodule(sc), 0).betti == 1


def test_h1_cohomology_brandt_one_c2_dual_regular():
    sa = semigroup_algebra(brandt(1, cyclic_group(2)))
    res = hochschild_cohomology(sa, regular_bimodule(sa), 1)
    assert res.betti == 0


def test_duality_cross_check_runs_on_every_degree():
    # the cohomology path recomputes homology internally and must agree
    m2 = matrix_algebra(2)
    reg = regular_bimodule(m2)
    cx = bar_complex(m2, reg, 2)
    for n in (0, 1, 2):
        h = hochschild_homology(m2, reg, n, complex=cx)
        c = hochschild_cohomology(m2, reg, n, complex=cx)
        assert h.betti == c.betti


def test_cohomology_representatives_are_cocycles():
    dual = StructureAlgebra(
        2, ["1", "x"], {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}},
        unit={0: 1}, name="dual-numbers",
    )
    reg = regular_bimodule(dual)
    res = hochschild_cohomology(dual, reg, 1)
    assert res.betti > 0
    cx = bar_complex(dual, reg, 1)
    bt = cx.boundary(2).matrix.transpose()
    for rep in res.cycle_reps:
        assert bt.apply(rep) == {}


# ----------------------------------------------------------------- derivations

def test_derivations_of_scalars_vanish():
    sc = scalar_algebra()
    ds = derivation_space(sc, regular_bimodule(sc))
    assert ds.derivations.dim == 0
    assert ds.inner.dim == 0


def test_derivations_matrix_algebra_dual_regular():
    m2 = matrix_algebra(2)
    ds = derivation_space(m2, dual_bimodule(regular_bimodule(m2)))
    assert ds.derivations.dim == 3
    assert ds.inner.dim == 3
    assert ds.h1_betti == 0


def test_derivations_nontrivial_outer():
    dual = StructureAlgebra(
        2, ["1", "x"], {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}},
        unit={0: 1}, name="dual-numbers",
    )
    ds = derivation_space(dual, regular_bimodule(dual))
    assert ds.derivations.dim - ds.inner.dim == ds.h1_betti
    assert ds.h1_betti > 0


def test_derivations_on_acceptance_scale_instance():
    sa = semigroup_algebra(brandt(2, cyclic_group(2)))
    mod = induced_completion(sa, dual_bimodule(regular_bimodule(sa)))
    ds = derivation_space(sa, mod)
    assert ds.h1_betti == 0
    assert ds.derivations.dim == ds.inner.dim


def test_inner_contained_in_derivations_random_modules(seed=12):
    rng = random.Random(seed)
    sa = semigroup_algebra(brandt(1, cyclic_group(2)))
    m2 = matrix_algebra(2)
    count = 0
    for algebra in (sa, m2):
        for _ in range(10):
            mod = seeded_random_bimodule(algebra, rng.randrange(10 ** 6))
            ds = derivation_space(algebra, mod)
            # containment is re-verified inside; the dimension count is the
            # visible consequence here
            assert ds.inner.dim <= ds.derivations.dim
            count += 1
    assert count == 20


# -------------------------------------------------------------------- diagonal

def test_diagonal_scalars():
    diag = diagonal_check(scalar_algebra())
    assert diag is not None and len(diag) == 1


def test_diagonal_c2_group_algebra_and_known_solution():
    ga = group_algebra(cyclic_group(2))
    diag = diagonal_check(ga)
    assert diag is not None
    # the halved sum of squares is itself a valid diagonal: verify the
    # known solution independently through the algebra product
    from fractions import Fraction as QQ

    m = {(0, 0): QQ(1, 2), (1, 1): QQ(1, 2)}
    unit = {0: 1}
    collapse = {}
    for (p, q), c in m.items():
        for r, v in ga.mul_basis(p, q).items():
            collapse[r] = collapse.get(r, 0) + c * v
    assert collapse == unit
    for t in range(2):
        left = {}
        right = {}
        for (p, q), c in m.items():
            for r, v in ga.mul_basis(t, p).items():
                left[(r, q)] = left.get((r, q), 0) + c * v
            for r, v in ga.mul_basis(q, t).items():
                right[(p, r)] = right.get((p, r), 0) + c * v
        assert {k: v for k, v in left.items() if v} == {k: v for k, v in right.items() if v}


def test_diagonal_exists_for_brandt_two_c2():
    sa = semigroup_algebra(brandt(2, cyclic_group(2)))
    assert diagonal_check(sa) is not None


def test_no_diagonal_for_dual_numbers():
    dual = StructureAlgebra(
        2, ["1", "x"], {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}},
        unit={0: 1}, name="dual-numbers",
    )
    assert diagonal_check(dual) is None


def test_diagonal_requires_unit():
    zero = StructureAlgebra(2, ["x", "y"], {}, name="null")
    with pytest.raises(NotUnitalError):
        diagonal_check(zero)


# ------------------------------------------------------------- vanishing suite

def test_vanishing_suite_smallest_algebra():
    sa = semigroup_algebra(brandt(1, cyclic_group(1)))
    rep = vanishing_suite(sa, [regular_bimodule(sa)], 3)
    assert rep.passed
    entry = rep.entries[0]
    assert entry.degrees == [(1, 0, 0), (2, 0, 0), (3, 0, 0)]
    assert not entry.routed_through_completion


def test_vanishing_suite_routes_non_induced_module():
    # left action by multiplication, right action zero: left-induced only,
    # so the suite must reroute through the induced completion
    sa = semigroup_algebra(brandt(1, cyclic_group(2)))
    reg = regular_bimodule(sa)
    zero = [RationalMatrix(sa.dim, sa.dim) for _ in range(sa.dim)]
    lopsided = Bimodule(sa, sa, sa.dim, list(reg.left_action), zero, name="lopsided")
    rep = vanishing_suite(sa, [lopsided], 2)
    entry = rep.entries[0]
    assert entry.routed_through_completion
    assert "completion" in entry.note
    assert rep.passed


def test_vanishing_suite_brandt_two_c2_battery():
    sa = semigroup_algebra(brandt(2, cyclic_group(2)))
    reg = regular_bimodule(sa)
    mods = [reg, induced_completion(sa, dual_bimodule(reg))]
    rep = vanishing_suite(sa, mods, 2)
    assert rep.passed
    for entry in rep.entries:
        assert entry.degrees == [(1, 0, 0), (2, 0, 0)]
        assert entry.h0_dim is not None


def test_vanishing_suite_size_limit_skips_with_note():
    sa = semigroup_algebra(brandt(2, symmetric_group(3)))
    rep = vanishing_suite(sa, [regular_bimodule(sa)], 3)
    assert rep.entries[0].status == "skipped"
    assert "limit" in rep.entries[0].note


def test_h0_dimensions_match_semisimple_decomposition():
    # over the rationals these algebras decompose into matrix rings over
    # fields; the degree-0 homology is the commutator quotient, one
    # dimension per matrix factor plus the full dimension of each field
    # factor. Frozen expectations:
    #   B(1,C1): Q + Q                          -> 2
    #   B(1,C2): Q[C2] + Q = Q^3                -> 3
    #   B(1,C3): Q + quadratic field + Q        -> 4
    #   B(2,C1): M2(Q) + Q                      -> 2
    #   B(2,C2): M2(Q) + M2(Q) + Q              -> 3
    expected = {
        (1, 1): 2, (1, 2): 3, (1, 3): 4, (2, 1): 2, (2, 2): 3,
    }
    for (i_size, order), h0 in expected.items():
        algebra = semigroup_algebra(brandt(i_size, cyclic_group(order)))
        res = hochschild_homology(algebra, regular_bimodule(algebra), 0)
        assert res.betti == h0, (i_size, order, res.betti)


# ------------------------------------------------- cross-cutting invariants

def test_diagonal_and_vanishing_co_occur():
    # both are finite-scale amenability certificates and must agree
    sa = semigroup_algebra(brandt(1, cyclic_group(3)))
    assert diagonal_check(sa) is not None
    assert vanishing_suite(sa, [regular_bimodule(sa)], 2).passed
    # and the negative side: no diagonal, nonzero degree-1 homology
    dual = StructureAlgebra(
        2, ["1", "x"], {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}},
        unit={0: 1}, name="dual-numbers",
    )
    assert diagonal_check(dual) is None
    assert hochschild_homology(dual, regular_bimodule(dual), 1).betti > 0


def test_morita_invariant_betti_on_witness_pairs():
    # regular-coefficient betti vectors agree across certified witness
    # pairs; covered for the pairs with both sides of dimension <= 19
    # (the dim 25 and 28 sides cost minutes each and add no new logic)
    def betti_vector(i_size, g):
        algebra = semigroup_algebra(brandt(i_size, g))
        reg = regular_bimodule(algebra)
        cx = bar_complex(algebra, reg, 2)
        return [
            hochschild_homology(algebra, reg, n, complex=cx).betti
            for n in (0, 1, 2)
        ]

    cache = {}

    def cached(i_size, gname):
        if (i_size, gname) not in cache:
            g = cyclic_group(int(gname[1:]))
            cache[(i_size, gname)] = betti_vector(i_size, g)
        return cache[(i_size, gname)]

    for i_size, j_size, gname in [(1, 2, "C1"), (1, 3, "C2"), (2, 3, "C2")]:
        left = cached(i_size, gname)
        right = cached(j_size, gname)
        assert left == right, (i_size, j_size, gname, left, right)
        assert left[1:] == [0, 0]
