"""Hochschild homology and cohomology via the full bar complex.

The chain space in degree n is the coefficient module tensored with n
copies of the algebra; the boundary folds the first tensor leg into the
module on the right, the last leg into the module on the left, and
multiplies adjacent legs with alternating signs. Cohomology with dual
coefficients is the transpose complex, computed by an independent
elimination so the finite-dimensional duality betti(H^n) = betti(H_n)
acts as a built-in cross-check rather than an assumption.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .exactla import (
    LinearMap,
    RationalMatrix,
    Subspace,
    _echelon_insert,
    _forward_echelon,
    _rref_rows,
    kronecker,
    solve,
)
from .bimodules import (
    Bimodule,
    dual_bimodule,
    induced_completion,
    is_induced,
)
from .structures import AlgebraElement, StructureAlgebra, find_unit

QQ = Fraction

DEFAULT_SIZE_LIMIT = 10_000_000


class SizeLimitError(RuntimeError):
    """A bar complex would exceed the configured entry budget."""

    def __init__(self, total: int, limit: int, worst_dim: int, degree: int):
        self.total = total
        self.limit = limit
        self.worst_dim = worst_dim
        self.degree = degree
        super().__init__(
            f"bar complex needs {total} basis entries across degrees 0..{degree} "
            f"(limit {limit}); the top space alone has dimension {worst_dim}"
        )


class NotUnitalError(ValueError):
    """The operation needs a unital algebra but no unit exists."""


class ChainComplex:
    """Chain spaces C_0..C_top with verified boundaries b_n: C_n -> C_{n-1}."""

    __slots__ = ("algebra", "coefficients", "spaces", "boundaries",
                 "_col_ranks", "_row_ranks", "_col_pivots")

    def __init__(self, algebra, coefficients, spaces, boundaries, check=True):
        self.algebra = algebra
        self.coefficients = coefficients
        self.spaces = list(spaces)
        self.boundaries = list(boundaries)  # boundaries[k] is b_{k+1}
        self._col_ranks = {}
        self._row_ranks = {}
        self._col_pivots = {}
        if check:
            for k in range(len(self.boundaries) - 1):
                comp = self.boundaries[k].compose(self.boundaries[k + 1])
                if not comp.matrix.is_zero():
                    raise RuntimeError(f"boundary composite b_{k + 1} b_{k + 2} is nonzero")

    @property
    def top_degree(self) -> int:
        return len(self.spaces) - 1

    def boundary(self, n: int) -> LinearMap:
        """b_n: C_n -> C_{n-1}; the zero map to a point for n = 0 and for
        degrees beyond the computed range of interest."""
        if 1 <= n <= len(self.boundaries):
            return self.boundaries[n - 1]
        raise IndexError(f"boundary b_{n} not stored (have 1..{len(self.boundaries)})")

    def col_rank(self, n: int) -> int:
        """Rank of b_n by elimination on its columns (cached)."""
        if n not in self._col_ranks:
            self._col_ranks[n] = len(self.col_pivots(n))
        return self._col_ranks[n]

    def col_pivots(self, n: int) -> dict:
        if n not in self._col_pivots:
            b = self.boundary(n)
            cols = b.matrix._columns()
            self._col_pivots[n] = _forward_echelon(cols)
        return self._col_pivots[n]

    def row_rank(self, n: int) -> int:
        """Rank of b_n by an independent elimination on its rows (cached)."""
        if n not in self._row_ranks:
            b = self.boundary(n)
            self._row_ranks[n] = len(_forward_echelon(b.matrix._rows))
        return self._row_ranks[n]


def check_bar_budget(algebra_dim: int, coeff_dim: int, n_max: int,
                     size_limit: int = DEFAULT_SIZE_LIMIT) -> None:
    """Raise SizeLimitError when a bar complex of these dimensions would
    blow the entry budget; cheap enough to call before any construction."""
    top = n_max + 1
    dims = [coeff_dim * algebra_dim ** k for k in range(top + 1)]
    total = sum(dims)
    if total > size_limit:
        raise SizeLimitError(total, size_limit, dims[-1], top)


def bar_complex(a: StructureAlgebra, e: Bimodule, n_max: int,
                size_limit: int = DEFAULT_SIZE_LIMIT) -> ChainComplex:
    """Bar chain complex of the algebra with coefficients in e, carrying
    boundaries b_1 .. b_{n_max+1} with the composite-zero law verified."""
    if e.left_algebra != a or e.right_algebra != a:
        raise ValueError("coefficients must form a bimodule over the algebra")
    check_bar_budget(a.dim, e.dim, n_max, size_limit)
    top = n_max + 1
    dims = [e.dim * a.dim ** k for k in range(top + 1)]

    right_cols = [m._columns() for m in e.right_action]
    left_cols = [m._columns() for m in e.left_action]
    struct = a.structure
    da = a.dim

    boundaries = []
    for n in range(1, top + 1):
        src_dim = dims[n]
        tgt_dim = dims[n - 1]
        mat = RationalMatrix(tgt_dim, src_dim)
        rows = mat._rows
        for col, key in enumerate(itertools.product(range(e.dim), *([range(da)] * n))):
            x = key[0]
            legs = key[1:]
            acc: dict = {}
            # fold the first leg into the module from the right
            tail = 0
            for t in legs[1:]:
                tail = tail * da + t
            base = da ** (n - 1)
            for r, v in right_cols[legs[0]][x].items():
                idx = r * base + tail
                y = acc.get(idx, 0) + v
                if y:
                    acc[idx] = y
                elif idx in acc:
                    del acc[idx]
            # multiply adjacent legs
            sign = 1
            for i in range(n - 1):
                sign = -sign
                prod = struct.get((legs[i], legs[i + 1]))
                if prod:
                    head = 0
                    for t in legs[:i]:
                        head = head * da + t
                    rest = 0
                    for t in legs[i + 2:]:
                        rest = rest * da + t
                    shift = da ** (n - 2 - i)
                    lead = (x * (da ** i) + head) * da
                    for s, v in prod.items():
                        idx = (lead + s) * shift + rest
                        y = acc.get(idx, 0) + sign * v
                        if y:
                            acc[idx] = y
                        elif idx in acc:
                            del acc[idx]
            # fold the last leg into the module from the left
            sign = -sign
            head = 0
            for t in legs[:-1]:
                head = head * da + t
            for r, v in left_cols[legs[-1]][x].items():
                idx = r * base + head
                y = acc.get(idx, 0) + sign * v
                if y:
                    acc[idx] = y
                elif idx in acc:
                    del acc[idx]
            for idx, v in acc.items():
                rows[idx][col] = v
        boundaries.append(LinearMap(src_dim, tgt_dim, mat))
    return ChainComplex(a, e, dims, boundaries, check=True)


@dataclass
class HomologyResult:
    degree: int
    betti: int
    cycle_reps: list
    boundary_rank: int
    cycle_rank: int

    def __post_init__(self):
        if self.betti != self.cycle_rank - self.boundary_rank or self.betti < 0:
            raise ValueError("betti must equal cycle rank minus boundary rank, nonnegative")


def _representatives(kernel_vectors, boundary_pivots: dict, want: int) -> list:
    """Kernel vectors that remain independent modulo the boundary image."""
    reps = []
    piv = dict(boundary_pivots)
    for v in kernel_vectors:
        if len(reps) == want:
            break
        if _echelon_insert(piv, v) is not None:
            reps.append(v)
    return reps


def _kernel_vectors(b: LinearMap):
    """Nullspace basis vectors of b, yielded lazily."""
    rr = _rref_rows(b.matrix._rows)
    pivot_set = {c for c, _ in rr}
    for free in range(b.source_dim):
        if free in pivot_set:
            continue
        v = {free: 1}
        for c, row in rr:
            x = row.get(free)
            if x:
                v[c] = -x
        yield v


def hochschild_homology(a: StructureAlgebra, e: Bimodule, n: int,
                        size_limit: int = DEFAULT_SIZE_LIMIT,
                        complex: ChainComplex | None = None) -> HomologyResult:
    """H_n as exact ranks of the bar boundaries; representatives are kernel
    vectors independent modulo the boundary image."""
    cx = complex if complex is not None else bar_complex(a, e, n, size_limit)
    if n == 0:
        cycle_rank = cx.spaces[0]
        boundary_rank = cx.col_rank(1)
        betti = cycle_rank - boundary_rank
        reps = _representatives(({i: 1} for i in range(cx.spaces[0])),
                                cx.col_pivots(1), betti)
    else:
        cycle_rank = cx.spaces[n] - cx.col_rank(n)
        boundary_rank = cx.col_rank(n + 1)
        betti = cycle_rank - boundary_rank
        reps = []
        if betti:
            reps = _representatives(_kernel_vectors(cx.boundary(n)),
                                    cx.col_pivots(n + 1), betti)
    if betti and len(reps) != betti:
        raise RuntimeError("representative count disagrees with rank arithmetic")
    return HomologyResult(degree=n, betti=betti, cycle_reps=reps,
                          boundary_rank=boundary_rank, cycle_rank=cycle_rank)


def hochschild_cohomology(a: StructureAlgebra, e: Bimodule, n: int,
                          size_limit: int = DEFAULT_SIZE_LIMIT,
                          complex: ChainComplex | None = None) -> HomologyResult:
    """H^n with coefficients in the dual of e, as the transpose complex.

    Ranks come from an elimination independent of the homology path, and
    the result is cross-checked against betti(H_n): at finite dimension
    the two must agree, so a mismatch means an internal defect.
    """
    cx = complex if complex is not None else bar_complex(a, e, n, size_limit)
    cocycle_rank = cx.spaces[n] - cx.row_rank(n + 1)
    coboundary_rank = cx.row_rank(n) if n >= 1 else 0
    betti = cocycle_rank - coboundary_rank
    homology = hochschild_homology(a, e, n, size_limit, complex=cx)
    if betti != homology.betti:
        raise RuntimeError(
            f"duality cross-check failed in degree {n}: "
            f"cohomology betti {betti} vs homology betti {homology.betti}"
        )
    reps = []
    if betti:
        coboundary_pivots = _forward_echelon(cx.boundary(n).matrix._rows) if n >= 1 else {}
        transpose = LinearMap(
            cx.spaces[n], cx.spaces[n + 1], cx.boundary(n + 1).matrix.transpose()
        )
        reps = _representatives(_kernel_vectors(transpose), coboundary_pivots, betti)
        if len(reps) != betti:
            raise RuntimeError("cocycle representative count disagrees with rank arithmetic")
    return HomologyResult(degree=n, betti=betti, cycle_reps=reps,
                          boundary_rank=coboundary_rank, cycle_rank=cocycle_rank)


@dataclass
class DerivationSpaces:
    derivations: Subspace
    inner: Subspace
    h1_betti: int


def derivation_space(a: StructureAlgebra, e: Bimodule) -> DerivationSpaces:
    """Derivations of the algebra into e and the inner ones among them.

    A map D is flattened as the vector (D(e_p))_p; the Leibniz rule is one
    linear equation per basis pair and output coordinate. Inner
    derivations are the image of x -> (a.x - x.a). Containment and the
    first-cohomology dimension count are verified before returning.
    """
    if e.left_algebra != a or e.right_algebra != a:
        raise ValueError("coefficients must form a bimodule over the algebra")
    da, de = a.dim, e.dim
    unknowns = da * de

    def slot(p, t):
        return p * de + t

    rows = []
    left_cols = [m._columns() for m in e.left_action]
    right_cols = [m._columns() for m in e.right_action]
    for p in range(da):
        for q in range(da):
            eq = [dict() for _ in range(de)]
            for s, c in a.structure.get((p, q), {}).items():
                for t in range(de):
                    eq[t][slot(s, t)] = eq[t].get(slot(s, t), 0) + c
            # minus e_p . D(e_q): column m of the left action hits coord t
            for m, col in enumerate(left_cols[p]):
                for t, v in col.items():
                    y = eq[t].get(slot(q, m), 0) - v
                    if y:
                        eq[t][slot(q, m)] = y
                    elif slot(q, m) in eq[t]:
                        del eq[t][slot(q, m)]
            for m, col in enumerate(right_cols[q]):
                for t, v in col.items():
                    y = eq[t].get(slot(p, m), 0) - v
                    if y:
                        eq[t][slot(p, m)] = y
                    elif slot(p, m) in eq[t]:
                        del eq[t][slot(p, m)]
            rows.extend(r for r in eq if r)
    system = LinearMap(unknowns, len(rows), RationalMatrix.from_rows(rows, unknowns))
    from .exactla import image, kernel

    derivations = kernel(system)
    inner_cols = []
    for m in range(de):
        col = {}
        for p in range(da):
            for t, v in left_cols[p][m].items():
                col[slot(p, t)] = col.get(slot(p, t), 0) + v
            for t, v in right_cols[p][m].items():
                y = col.get(slot(p, t), 0) - v
                if y:
                    col[slot(p, t)] = y
                elif slot(p, t) in col:
                    del col[slot(p, t)]
        inner_cols.append(col)
    inner = image(LinearMap.from_cols(inner_cols, unknowns))
    for r in range(inner.basis.rows):
        if not derivations.contains(inner.basis._rows[r]):
            raise RuntimeError("an inner derivation fails the Leibniz system")
    h1 = hochschild_cohomology(a, dual_bimodule(e), 1).betti
    if derivations.dim - inner.dim != h1:
        raise RuntimeError(
            f"derivation count {derivations.dim} - {inner.dim} disagrees "
            f"with first cohomology {h1}"
        )
    return DerivationSpaces(derivations=derivations, inner=inner, h1_betti=h1)


def diagonal_check(a: StructureAlgebra):
    """Search for a separating diagonal: a tensor m with a.m = m.a for all
    a and multiplication collapsing m onto the unit.

    Returns the diagonal as a list of (left factor, right factor) element
    pairs, or None when the linear system is inconsistent. The returned
    tensor is re-verified by substitution through the algebra product.
    """
    unit = find_unit(a)
    if unit is None:
        raise NotUnitalError(f"{a.name} has no unit")
    d = a.dim
    rows = []
    rhs_entries = {}
    ide = LinearMap.identity(d)
    for t in range(d):
        lt = LinearMap(d, d, a.left_mult_matrix(t))
        rt = LinearMap(d, d, a.right_mult_matrix(t))
        block = kronecker(lt, ide).matrix - kronecker(ide, rt).matrix
        rows.extend(block._rows)
    base = len(rows)
    for r in range(d):
        rows.append({})
    for (p, q), vec in a.structure.items():
        col = p * d + q
        for r, v in vec.items():
            rows[base + r][col] = rows[base + r].get(col, 0) + v
    for r, v in unit.coeffs.items():
        rhs_entries[base + r] = v
    system = LinearMap(d * d, len(rows), RationalMatrix.from_rows(rows, d * d))
    m = solve(system, rhs_entries)
    if m is None:
        return None
    by_left: dict[int, dict] = {}
    for idx, v in m.items():
        by_left.setdefault(idx // d, {})[idx % d] = v
    pairs = [
        (a.basis_element(p), AlgebraElement(a, right))
        for p, right in sorted(by_left.items())
    ]
    # substitution check through the algebra product itself
    for t in range(d):
        et = {t: 1}
        left_side: dict = {}
        right_side: dict = {}
        collapse: dict = {}
        for x, y in pairs:
            tx = a.mul(et, x.coeffs)
            for p, cp in tx.items():
                for q, cq in y.coeffs.items():
                    k = p * d + q
                    z = left_side.get(k, 0) + cp * cq
                    if z:
                        left_side[k] = z
                    elif k in left_side:
                        del left_side[k]
            yt = a.mul(y.coeffs, et)
            for p, cp in x.coeffs.items():
                for q, cq in yt.items():
                    k = p * d + q
                    z = right_side.get(k, 0) + cp * cq
                    if z:
                        right_side[k] = z
                    elif k in right_side:
                        del right_side[k]
        if left_side != right_side:
            raise RuntimeError(f"diagonal substitution failed at basis {t}")
    for x, y in pairs:
        for r, v in a.mul(x.coeffs, y.coeffs).items():
            z = collapse.get(r, 0) + v
            if z:
                collapse[r] = z
            elif r in collapse:
                del collapse[r]
    if collapse != unit.coeffs:
        raise RuntimeError("diagonal does not collapse onto the unit")
    return pairs


@dataclass
class ModuleVanishing:
    label: str
    status: str                  # pass / fail / skipped
    routed_through_completion: bool
    dim: int
    h0_dim: int | None
    degrees: list = field(default_factory=list)  # (n, betti_homology, betti_cohomology)
    note: str = ""


@dataclass
class VanishingReport:
    algebra: str
    n_max: int
    entries: list

    @property
    def passed(self) -> bool:
        return all(e.status == "pass" for e in self.entries if e.status != "skipped") and \
            any(e.status == "pass" for e in self.entries)

    def to_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "n_max": self.n_max,
            "passed": self.passed,
            "entries": [
                {
                    "module": e.label,
                    "status": e.status,
                    "routed_through_completion": e.routed_through_completion,
                    "dim": e.dim,
                    "h0_dim": e.h0_dim,
                    "degrees": [
                        {"n": n, "betti_homology": bh, "betti_cohomology": bc}
                        for (n, bh, bc) in e.degrees
                    ],
                    "note": e.note,
                }
                for e in self.entries
            ],
        }


def vanishing_suite(a: StructureAlgebra, modules, n_max: int,
                    size_limit: int = DEFAULT_SIZE_LIMIT) -> VanishingReport:
    """Betti numbers of H_n and of H^n with dual coefficients, for every
    supplied module in degrees 1..n_max.

    Modules that are not two-sided induced are first routed through the
    induced completion, with a note. The degree-zero homology is reported
    with its dimension; its quotient seminorm being a norm is automatic
    at finite dimension (closed images) and recorded as such.
    """
    entries = []
    for mod in modules:
        label = mod.name
        routed = False
        note = ""
        use = mod
        if not is_induced(mod).two_sided:
            use = induced_completion(a, mod)
            routed = True
            note = "not two-sided induced as supplied; replaced by its induced completion"
        try:
            cx = bar_complex(a, use, n_max, size_limit)
        except SizeLimitError as exc:
            entries.append(ModuleVanishing(
                label=label, status="skipped", routed_through_completion=routed,
                dim=use.dim, h0_dim=None, degrees=[],
                note=(note + "; " if note else "") + str(exc),
            ))
            continue
        h0 = hochschild_homology(a, use, 0, size_limit, complex=cx)
        degrees = []
        ok = True
        for n in range(1, n_max + 1):
            hn = hochschild_homology(a, use, n, size_limit, complex=cx)
            cn = hochschild_cohomology(a, use, n, size_limit, complex=cx)
            degrees.append((n, hn.betti, cn.betti))
            if hn.betti != 0 or cn.betti != 0:
                ok = False
        h0_note = "degree-0 quotient seminorm is a norm automatically at finite dimension"
        entries.append(ModuleVanishing(
            label=label, status="pass" if ok else "fail",
            routed_through_completion=routed, dim=use.dim, h0_dim=h0.betti,
            degrees=degrees, note=(note + "; " if note else "") + h0_note,
        ))
    return VanishingReport(algebra=a.name, n_max=n_max, entries=entries)
