"""Construction and certification of Morita witness bimodules.

A witness between algebras A and B is a pair of two-sided induced
bimodules P (B on the left, A on the right) and Q (A left, B right)
together with bijective bimodule maps from the balanced products
P (x)_A Q and Q (x)_B P onto B and A. verify_witness re-derives every
one of those conditions from scratch, so a corrupted input is caught no
matter how it was produced.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exactla import (
    LinearMap,
    RationalMatrix,
    image,
    inverse,
    kernel,
    l1_operator_norm,
    subspace_equal,
)
from .bimodules import (
    Bimodule,
    BimoduleMap,
    balanced_tensor,
    column_module,
    induced_map,
    is_induced,
    regular_bimodule,
    row_module,
    trace_pairing,
)
from .structures import (
    BrandtSemigroup,
    FiniteGroup,
    StructureAlgebra,
    brandt,
    contracted_brandt_algebra,
    direct_sum,
    find_unit,
    matrix_algebra,
    scalar_algebra,
    semigroup_algebra,
)

QQ = Fraction


class VerificationFailed(RuntimeError):
    """A constructed object failed its own certification.

    This signals a bug in the construction, not a mathematical failure;
    the offending condition and detail ride along for debugging.
    """

    def __init__(self, condition: str, detail: str = ""):
        self.condition = condition
        self.detail = detail
        super().__init__(f"{condition}: {detail}" if detail else condition)


@dataclass
class MoritaWitness:
    algebra_a: StructureAlgebra
    algebra_b: StructureAlgebra
    p: Bimodule            # B-mod-A
    q: Bimodule            # A-mod-B
    iso_pq: BimoduleMap    # P (x)_A Q -> B
    iso_qp: BimoduleMap    # Q (x)_B P -> A


@dataclass
class ConditionResult:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)


@dataclass
class WitnessReport:
    conditions: list

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.conditions)

    def condition(self, name: str) -> ConditionResult:
        for c in self.conditions:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "conditions": [
                {"name": c.name, "passed": c.passed, "details": c.details}
                for c in self.conditions
            ],
        }


def _module_condition(name: str, mod: Bimodule, left_alg, right_alg) -> ConditionResult:
    details = {"dim": mod.dim}
    if mod.left_algebra != left_alg or mod.right_algebra != right_alg:
        return ConditionResult(name, False, {**details, "reason": "wrong algebras"})
    violations = mod.check_axioms()
    if violations:
        details["reason"] = violations[0]
        details["violations"] = len(violations)
        return ConditionResult(name, False, details)
    try:
        flags = is_induced(mod)
    except Exception as exc:  # a broken module can poison the tensor construction
        details["reason"] = f"induced check failed: {exc}"
        return ConditionResult(name, False, details)
    details["left_induced"] = flags.left
    details["right_induced"] = flags.right
    return ConditionResult(name, flags.two_sided, details)


def _iso_condition(name: str, iso: BimoduleMap, expected_target: Bimodule,
                   recompute_source) -> ConditionResult:
    details = {
        "source_dim": iso.map.source_dim,
        "target_dim": iso.map.target_dim,
    }
    if iso.target != expected_target:
        details["reason"] = "target is not the regular bimodule of the expected algebra"
        return ConditionResult(name, False, details)
    if recompute_source is not None:
        try:
            fresh = recompute_source()
        except Exception as exc:
            details["reason"] = f"balanced tensor recomputation failed: {exc}"
            return ConditionResult(name, False, details)
        if fresh.module != iso.source:
            details["reason"] = "stored source differs from recomputed balanced tensor"
            return ConditionResult(name, False, details)
    bad = iso.intertwining_failures(stop_early=True)
    if bad:
        details["reason"] = bad[0]
        return ConditionResult(name, False, details)
    rk = iso.map.rank()
    details["rank"] = rk
    bij = iso.map.source_dim == iso.map.target_dim and rk == iso.map.source_dim
    details["bijective"] = bij
    details["norm"] = str(l1_operator_norm(iso.map))
    if bij:
        details["inverse_norm"] = str(l1_operator_norm(inverse(iso.map)))
    else:
        details["reason"] = "map is not bijective"
    return ConditionResult(name, bij, details)


def verify_witness(wit: MoritaWitness) -> WitnessReport:
    """Re-check all four witness conditions from scratch."""
    a, b = wit.algebra_a, wit.algebra_b
    cond_p = _module_condition("p_two_sided_induced", wit.p, b, a)
    cond_q = _module_condition("q_two_sided_induced", wit.q, a, b)
    modules_ok = cond_p.passed and cond_q.passed
    cond_pq = _iso_condition(
        "pq_tensor_iso", wit.iso_pq, regular_bimodule(b),
        (lambda: balanced_tensor(wit.p, wit.q, a)) if modules_ok else None,
    )
    cond_qp = _iso_condition(
        "qp_tensor_iso", wit.iso_qp, regular_bimodule(a),
        (lambda: balanced_tensor(wit.q, wit.p, b)) if modules_ok else None,
    )
    return WitnessReport(conditions=[cond_p, cond_q, cond_pq, cond_qp])


def _certify(wit: MoritaWitness) -> MoritaWitness:
    report = verify_witness(wit)
    if not report.passed:
        bad = next(c for c in report.conditions if not c.passed)
        raise VerificationFailed(bad.name, str(bad.details.get("reason", bad.details)))
    return wit


def swap_witness(wit: MoritaWitness) -> MoritaWitness:
    """The same witness viewed from the other algebra."""
    return MoritaWitness(
        algebra_a=wit.algebra_b,
        algebra_b=wit.algebra_a,
        p=wit.q,
        q=wit.p,
        iso_pq=wit.iso_qp,
        iso_qp=wit.iso_pq,
    )


def witness_matrix_vs_scalars(index_size: int) -> MoritaWitness:
    """Witness between the matrix-units algebra and the scalars.

    P is the index space as a (scalars, matrix) module, Q the mirror; the
    pairing sum_i a(i) b(i) collapses P (x) Q onto the scalars and the
    basis bijection (i, j) -> matrix unit (i, j) identifies Q (x) P with
    the matrix algebra.
    """
    if index_size < 1:
        raise ValueError("index size must be >= 1")
    n = index_size
    a = matrix_algebra(n)
    b = scalar_algebra()
    p = row_module(n)
    q = column_module(n)
    bt_pq = balanced_tensor(p, q, a)
    iso_pq = induced_map(bt_pq, trace_pairing(n), regular_bimodule(b))
    bt_qp = balanced_tensor(q, p, b)
    unit_cols = [{i * n + j: 1} for i in range(n) for j in range(n)]
    raw_qp = LinearMap.from_cols(unit_cols, n * n)
    iso_qp = induced_map(bt_qp, raw_qp, regular_bimodule(a))
    return _certify(MoritaWitness(a, b, p, q, iso_pq, iso_qp))


@dataclass
class SplitSequence:
    """The split exact sequence realizing the semigroup algebra as the
    contracted algebra plus a scalar line.

    u embeds the contracted algebra (sending each triple to itself minus
    the zero point mass), v is the integral functional, w restricts to
    the triples, and theta = (w, v) is the resulting algebra bijection
    onto the coordinatewise direct sum.
    """

    u: LinearMap
    v: LinearMap
    w: LinearMap
    theta: LinearMap
    theta_inv: LinearMap
    contracted: StructureAlgebra
    semigroup: StructureAlgebra
    scalars: StructureAlgebra
    sum_algebra: StructureAlgebra
    brandt_semigroup: BrandtSemigroup


def _is_algebra_hom(f: LinearMap, src: StructureAlgebra, dst: StructureAlgebra) -> tuple[bool, str]:
    for pp in range(src.dim):
        fp = f.col(pp)
        for qq in range(src.dim):
            lhs = f.apply(src.structure.get((pp, qq), {}))
            rhs = dst.mul(fp, f.col(qq))
            if lhs != rhs:
                return False, f"not multiplicative at basis pair ({pp},{qq})"
    return True, ""


def split_sequence(index_size: int, g: FiniteGroup) -> SplitSequence:
    """Build and certify the splitting of the semigroup algebra."""
    s = brandt(index_size, g)
    alg_t = contracted_brandt_algebra(index_size, g)
    alg_s = semigroup_algebra(s)
    scalars = scalar_algebra()
    sum_alg = direct_sum(alg_t, scalars)
    nt = alg_t.dim
    ns = alg_s.dim
    z = s.zero_index

    u_m = RationalMatrix(ns, nt)
    for t in range(nt):
        u_m._rows[t][t] = 1
        u_m._rows[z][t] = -1
    u = LinearMap(nt, ns, u_m)

    v_m = RationalMatrix(1, ns)
    for t in range(ns):
        v_m._rows[0][t] = 1
    v = LinearMap(ns, 1, v_m)

    w_m = RationalMatrix(nt, ns)
    for t in range(nt):
        w_m._rows[t][t] = 1
    w = LinearMap(ns, nt, w_m)

    theta_m = RationalMatrix(nt + 1, ns)
    for t in range(nt):
        theta_m._rows[t][t] = 1
    for t in range(ns):
        theta_m._rows[nt][t] = 1
    theta = LinearMap(ns, nt + 1, theta_m)

    ok, why = _is_algebra_hom(u, alg_t, alg_s)
    if not ok:
        raise VerificationFailed("u_homomorphism", why)
    ok, why = _is_algebra_hom(v, alg_s, scalars)
    if not ok:
        raise VerificationFailed("v_homomorphism", why)
    ok, why = _is_algebra_hom(w, alg_s, alg_t)
    if not ok:
        raise VerificationFailed("w_homomorphism", why)
    ok, why = _is_algebra_hom(theta, alg_s, sum_alg)
    if not ok:
        raise VerificationFailed("theta_homomorphism", why)

    if w.compose(u) != LinearMap.identity(nt):
        raise VerificationFailed("wu_identity", "w after u is not the identity")
    if not v.compose(u).matrix.is_zero():
        raise VerificationFailed("vu_zero", "v after u is not zero")
    if kernel(u).dim != 0:
        raise VerificationFailed("u_injective", "u has a kernel")
    if image(v).dim != 1:
        raise VerificationFailed("v_surjective", "v is not onto")
    if not subspace_equal(image(u), kernel(v)):
        raise VerificationFailed("exactness", "image of u differs from kernel of v")

    theta_inv = inverse(theta)
    if theta_inv is None:
        raise VerificationFailed("theta_bijective", "theta is not invertible")
    formula = RationalMatrix(ns, nt + 1)
    for t in range(nt):
        formula._rows[t][t] = 1
        formula._rows[z][t] = -1
    formula._rows[z][nt] = formula._rows[z].get(nt, 0) + 1
    if theta_inv != LinearMap(nt + 1, ns, formula):
        raise VerificationFailed("theta_inverse_formula",
                                 "inverse of theta differs from u(b) + z * zero point mass")
    if theta.apply({z: 1}) != {nt: 1}:
        raise VerificationFailed("zero_transport", "theta of the zero point mass is not (0, 1)")

    unit_s = find_unit(alg_s)
    if unit_s is None:
        raise VerificationFailed("semigroup_unit", "semigroup algebra has no unit")
    expected_unit = dict(alg_t.unit)
    coeff = 1 - index_size
    if coeff:
        expected_unit[z] = coeff
    if unit_s.coeffs != expected_unit:
        raise VerificationFailed("unit_formula",
                                 "unit differs from identity triples plus (1-|I|) zero mass")
    if sum_alg.unit is None or theta.apply(unit_s.coeffs) != sum_alg.unit:
        raise VerificationFailed("unit_transport", "theta does not carry unit to unit")

    return SplitSequence(
        u=u, v=v, w=w, theta=theta, theta_inv=theta_inv,
        contracted=alg_t, semigroup=alg_s, scalars=scalars,
        sum_algebra=sum_alg, brandt_semigroup=s,
    )


def _rect_module(left_n: int, right_n: int, g: FiniteGroup,
                 left_alg: StructureAlgebra, right_alg: StructureAlgebra) -> Bimodule:
    """Triples (l, g, r) with convolution actions of the two contracted
    algebras: the left algebra glues onto the left index, the right one
    onto the right index."""
    og = g.order
    dim = left_n * og * right_n

    def idx(l, gi, r):
        return ((l - 1) * og + gi) * right_n + (r - 1)

    sl = BrandtSemigroup(left_n, g)
    sr = BrandtSemigroup(right_n, g)
    left_action = []
    for l1 in range(1, left_n + 1):
        for hi in range(og):
            for l2 in range(1, left_n + 1):
                m = RationalMatrix(dim, dim)
                for gi in range(og):
                    for r in range(1, right_n + 1):
                        m._rows[idx(l1, g.mul(hi, gi), r)][idx(l2, gi, r)] = 1
                left_action.append(m)
    right_action = []
    for r1 in range(1, right_n + 1):
        for hi in range(og):
            for r2 in range(1, right_n + 1):
                m = RationalMatrix(dim, dim)
                for gi in range(og):
                    for l in range(1, left_n + 1):
                        m._rows[idx(l, g.mul(gi, hi), r2)][idx(l, gi, r1)] = 1
                right_action.append(m)
    labels = [
        f"({l},{g.names[gi]},{r})"
        for l in range(1, left_n + 1) for gi in range(og) for r in range(1, right_n + 1)
    ]
    assert left_alg.dim == left_n * og * left_n and right_alg.dim == right_n * og * right_n
    return Bimodule(
        left_alg, right_alg, dim, left_action, right_action,
        labels=labels, name=f"span({left_n}x{g.name}x{right_n})",
    )


def _rect_pairing(left_n: int, mid_n: int, right_n: int, g: FiniteGroup) -> LinearMap:
    """Convolution pairing (l,g,m) (x) (m',h,r) -> [m=m'] (l,gh,r), from the
    tensor of two rectangle modules into the (left_n, right_n) rectangle."""
    og = g.order

    def idx(a, gi, b, nb):
        return ((a - 1) * og + gi) * nb + (b - 1)

    src = (left_n * og * mid_n) * (mid_n * og * right_n)
    tgt_dim = left_n * og * right_n
    m = RationalMatrix(tgt_dim, src)
    qdim = mid_n * og * right_n
    for l in range(1, left_n + 1):
        for gi in range(og):
            for mid in range(1, mid_n + 1):
                pcol = idx(l, gi, mid, mid_n)
                for hi in range(og):
                    for r in range(1, right_n + 1):
                        qcol = idx(mid, hi, r, right_n)
                        m._rows[idx(l, g.mul(gi, hi), r, right_n)][pcol * qdim + qcol] = 1
    return LinearMap(src, tgt_dim, m)


def witness_brandt_contracted(i_size: int, j_size: int, g: FiniteGroup) -> MoritaWitness:
    """Witness between the contracted triple algebras over index sets of
    sizes i_size and j_size with the same group."""
    if i_size < 1 or j_size < 1:
        raise ValueError("index sizes must be >= 1")
    a = contracted_brandt_algebra(i_size, g)
    b = contracted_brandt_algebra(j_size, g)
    p = _rect_module(j_size, i_size, g, b, a)
    q = _rect_module(i_size, j_size, g, a, b)
    bt_pq = balanced_tensor(p, q, a)
    iso_pq = induced_map(bt_pq, _rect_pairing(j_size, i_size, j_size, g), regular_bimodule(b))
    bt_qp = balanced_tensor(q, p, b)
    iso_qp = induced_map(bt_qp, _rect_pairing(i_size, j_size, i_size, g), regular_bimodule(a))
    return _certify(MoritaWitness(a, b, p, q, iso_pq, iso_qp))


def _extend_block(m: RationalMatrix, dim: int) -> RationalMatrix:
    out = RationalMatrix(dim, dim)
    for r, c, v in m.entries():
        out._rows[r][c] = v
    return out


def _star_block(dim: int) -> RationalMatrix:
    out = RationalMatrix(dim, dim)
    out._rows[dim - 1][dim - 1] = 1
    return out


def _transport_actions(base_actions, theta: LinearMap):
    """Actions of the semigroup algebra obtained by pushing its basis
    through theta into the direct sum and combining the sum actions."""
    out = []
    for s in range(theta.source_dim):
        coeffs = theta.col(s)
        dim = base_actions[0].rows
        acc = RationalMatrix(dim, dim)
        for k, c in coeffs.items():
            acc = acc + base_actions[k].scale(c)
        out.append(acc)
    return out


def witness_brandt_full(i_size: int, j_size: int, g: FiniteGroup) -> MoritaWitness:
    """Witness between the full semigroup algebras of two Brandt semigroups
    over the same group.

    The rectangle witness between the contracted algebras is padded with
    one extra basis line on which only the scalar summands act, and the
    direct-sum actions are transported through the splitting bijections
    so that the final statement is about the semigroup algebras
    themselves.
    """
    split_i = split_sequence(i_size, g)
    split_j = split_sequence(j_size, g)
    a_full, b_full = split_i.semigroup, split_j.semigroup
    a_con, b_con = split_i.contracted, split_j.contracted

    p_rect = _rect_module(j_size, i_size, g, b_con, a_con)
    q_rect = _rect_module(i_size, j_size, g, a_con, b_con)
    pd = p_rect.dim + 1
    qd = q_rect.dim + 1

    # direct-sum actions: contracted part acts on the rectangle block, the
    # scalar line acts on the star line, cross actions vanish
    p_left_sum = [_extend_block(m, pd) for m in p_rect.left_action] + [_star_block(pd)]
    p_right_sum = [_extend_block(m, pd) for m in p_rect.right_action] + [_star_block(pd)]
    q_left_sum = [_extend_block(m, qd) for m in q_rect.left_action] + [_star_block(qd)]
    q_right_sum = [_extend_block(m, qd) for m in q_rect.right_action] + [_star_block(qd)]

    p = Bimodule(
        b_full, a_full, pd,
        _transport_actions(p_left_sum, split_j.theta),
        _transport_actions(p_right_sum, split_i.theta),
        labels=list(p_rect.labels) + ["*"],
        name=f"P({i_size},{j_size},{g.name})",
    )
    q = Bimodule(
        a_full, b_full, qd,
        _transport_actions(q_left_sum, split_i.theta),
        _transport_actions(q_right_sum, split_j.theta),
        labels=list(q_rect.labels) + ["*"],
        name=f"Q({i_size},{j_size},{g.name})",
    )

    def full_pairing(left_dim, right_dim, rect_pairing, split_out):
        """Pair rectangle with rectangle by convolution and star with star
        into the scalar line, then pull back along the splitting."""
        nt = split_out.contracted.dim
        ns = split_out.semigroup.dim
        m = RationalMatrix(ns, left_dim * right_dim)
        theta_inv = split_out.theta_inv
        for pcol in range(left_dim - 1):
            for qcol in range(right_dim - 1):
                sum_coords = rect_pairing.col(pcol * (right_dim - 1) + qcol)
                out = theta_inv.apply(sum_coords)
                for r, v in out.items():
                    m._rows[r][pcol * right_dim + qcol] = v
        star = theta_inv.apply({nt: 1})
        for r, v in star.items():
            m._rows[r][(left_dim - 1) * right_dim + (right_dim - 1)] = v
        return LinearMap(left_dim * right_dim, ns, m)

    raw_pq = full_pairing(pd, qd, _rect_pairing(j_size, i_size, j_size, g), split_j)
    raw_qp = full_pairing(qd, pd, _rect_pairing(i_size, j_size, i_size, g), split_i)

    bt_pq = balanced_tensor(p, q, a_full)
    iso_pq = induced_map(bt_pq, raw_pq, regular_bimodule(b_full))
    bt_qp = balanced_tensor(q, p, b_full)
    iso_qp = induced_map(bt_qp, raw_qp, regular_bimodule(a_full))
    return _certify(MoritaWitness(a_full, b_full, p, q, iso_pq, iso_qp))
