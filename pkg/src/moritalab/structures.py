"""Finite groups, Brandt semigroups, and structure-constant algebras.

Groups are ingested as Cayley tables only. Every algebra built here is a
finite-dimensional associative algebra with a labeled basis and a sparse
table of structure constants; associativity is verified eagerly at
construction, since the constructors are the trust root for everything
checked downstream.
"""

from __future__ import annotations

import itertools
import random

from fractions import Fraction

from .exactla import LinearMap, RationalMatrix, nrat, solve, vec_add, vec_scale

QQ = Fraction

ASSOC_FULL_LIMIT = 200
ASSOC_SAMPLE = 4000


class CayleyTableError(ValueError):
    """A multiplication table failed validation."""


class NotLatinSquare(CayleyTableError):
    def __init__(self, cell, why):
        self.cell = cell
        super().__init__(f"NotLatinSquare at cell {cell}: {why}")


class NotAssociative(CayleyTableError):
    def __init__(self, triple):
        self.triple = triple
        super().__init__(f"NotAssociative at triple {triple}")


class NoIdentity(CayleyTableError):
    def __init__(self):
        super().__init__("NoIdentity: no two-sided identity element")


class NoInverse(CayleyTableError):
    def __init__(self, element):
        self.element = element
        super().__init__(f"NoInverse for element {element}")


class FiniteGroup:
    """A finite group given by its Cayley table over indices 0..order-1."""

    __slots__ = ("order", "cayley", "identity_index", "inverse", "names", "name")

    def __init__(self, cayley, names=None, name="G", check=True):
        order = len(cayley)
        table = tuple(tuple(row) for row in cayley)
        if check:
            _validate_cayley(table)
        self.order = order
        self.cayley = table
        self.name = name
        e = None
        for i in range(order):
            if all(table[i][x] == x == table[x][i] for x in range(order)):
                e = i
                break
        if e is None:
            raise NoIdentity()
        self.identity_index = e
        inv = [None] * order
        for a in range(order):
            for b in range(order):
                if table[a][b] == e and table[b][a] == e:
                    inv[a] = b
                    break
            if inv[a] is None:
                raise NoInverse(a)
        self.inverse = tuple(inv)
        self.names = tuple(names) if names else tuple(str(k) for k in range(order))
        if len(self.names) != order:
            raise ValueError("names length does not match order")

    def mul(self, a: int, b: int) -> int:
        return self.cayley[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def is_abelian(self) -> bool:
        n = self.order
        return all(self.cayley[a][b] == self.cayley[b][a] for a in range(n) for b in range(n))

    def __repr__(self):
        return f"FiniteGroup({self.name}, order {self.order})"


def _validate_cayley(table):
    n = len(table)
    if n == 0:
        raise CayleyTableError("empty table")
    for i, row in enumerate(table):
        if len(row) != n:
            raise CayleyTableError(f"row {i} has length {len(row)}, expected {n}")
        for j, v in enumerate(row):
            if not isinstance(v, int) or not 0 <= v < n:
                raise CayleyTableError(f"entry at cell ({i},{j}) is {v!r}, expected 0..{n - 1}")
    for i in range(n):
        seen = {}
        for j in range(n):
            v = table[i][j]
            if v in seen:
                raise NotLatinSquare((i, j), f"row {i} repeats value {v}")
            seen[v] = j
    for j in range(n):
        seen = {}
        for i in range(n):
            v = table[i][j]
            if v in seen:
                raise NotLatinSquare((i, j), f"column {j} repeats value {v}")
            seen[v] = i
    for i in range(n):
        for j in range(n):
            tij = table[i][j]
            ri = table[i]
            for k in range(n):
                if table[tij][k] != ri[table[j][k]]:
                    raise NotAssociative((i, j, k))


def group_from_cayley(table, names=None, name="G") -> FiniteGroup:
    """Validate a square Cayley table and wrap it as a group."""
    return FiniteGroup(table, names=names, name=name, check=True)


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group order must be >= 1")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    names = ["e"] + [f"g{k}" for k in range(1, n)]
    return FiniteGroup(table, names=names, name=f"C{n}", check=False)


def symmetric_group(n: int) -> FiniteGroup:
    """Permutations of n letters under composition; table size guard n <= 4."""
    if not 1 <= n <= 4:
        raise ValueError("symmetric_group supports 1 <= n <= 4")
    perms = sorted(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [
        [index[tuple(p[q[x]] for x in range(n))] for q in perms]
        for p in perms
    ]
    names = ["".join(map(str, p)) for p in perms]
    return FiniteGroup(table, names=names, name=f"S{n}", check=False)


def klein_four_group() -> FiniteGroup:
    table = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]
    return FiniteGroup(table, names=["e", "a", "b", "c"], name="K4", check=False)


BUILTIN_GROUPS = {
    **{f"C{k}": (lambda k=k: cyclic_group(k)) for k in range(1, 9)},
    "S2": lambda: symmetric_group(2),
    "S3": lambda: symmetric_group(3),
    "S4": lambda: symmetric_group(4),
    "K4": klein_four_group,
}


def builtin_group(name: str) -> FiniteGroup:
    try:
        return BUILTIN_GROUPS[name]()
    except KeyError:
        raise KeyError(f"unknown builtin group {name!r}; choose from {sorted(BUILTIN_GROUPS)}")


def parse_cayley(text: str, name="G") -> FiniteGroup:
    """Parse the Cayley table file format.

    Line 1: ``order n``; then n lines of n whitespace-separated 0-based
    indices; an optional trailing line ``identity k``. Malformed input is
    rejected with a line/column diagnostic.
    """
    lines = text.splitlines()
    pos = 0

    def fail(lineno, col, msg):
        raise CayleyTableError(f"line {lineno}, column {col}: {msg}")

    while pos < len(lines) and not lines[pos].strip():
        pos += 1
    if pos >= len(lines):
        fail(1, 1, "missing 'order n' header")
    head = lines[pos].split()
    if len(head) != 2 or head[0] != "order" or not head[1].isdigit():
        fail(pos + 1, 1, f"expected 'order n', got {lines[pos]!r}")
    n = int(head[1])
    if n < 1:
        fail(pos + 1, 7, "order must be >= 1")
    pos += 1
    table = []
    for r in range(n):
        while pos < len(lines) and not lines[pos].strip():
            pos += 1
        if pos >= len(lines):
            fail(len(lines) + 1, 1, f"missing table row {r + 1} of {n}")
        parts = lines[pos].split()
        if len(parts) != n:
            fail(pos + 1, 1, f"expected {n} entries, got {len(parts)}")
        row = []
        for c, tok in enumerate(parts):
            if not tok.isdigit():
                fail(pos + 1, c + 1, f"entry {tok!r} is not a 0-based index")
            v = int(tok)
            if v >= n:
                fail(pos + 1, c + 1, f"entry {v} out of range 0..{n - 1}")
            row.append(v)
        table.append(row)
        pos += 1
    declared_identity = None
    while pos < len(lines):
        if lines[pos].strip():
            parts = lines[pos].split()
            if len(parts) == 2 and parts[0] == "identity" and parts[1].isdigit():
                declared_identity = int(parts[1])
            else:
                fail(pos + 1, 1, f"unexpected trailing content {lines[pos]!r}")
        pos += 1
    g = group_from_cayley(table, name=name)
    if declared_identity is not None and declared_identity != g.identity_index:
        raise CayleyTableError(
            f"declared identity {declared_identity} but table identity is {g.identity_index}"
        )
    return g


def load_cayley(path, name=None) -> FiniteGroup:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    import os

    return parse_cayley(text, name=name or os.path.splitext(os.path.basename(path))[0])


class BrandtSemigroup:
    """Index triples (i, g, j) plus an absorbing zero.

    The product of (i, g, j) and (i', g', j') is (i, g g', j') when the
    inner indices match and the zero element otherwise; the zero absorbs
    everything. Triples use 1-based i, j and a 0-based group index, listed
    lexicographically, with the zero element last.
    """

    __slots__ = ("index_size", "group", "size", "zero_index")

    def __init__(self, index_size: int, group: FiniteGroup):
        if index_size < 1:
            raise ValueError("index size must be >= 1")
        self.index_size = index_size
        self.group = group
        self.size = index_size * index_size * group.order + 1
        self.zero_index = self.size - 1

    def triple_index(self, i: int, g: int, j: int) -> int:
        n, og = self.index_size, self.group.order
        if not (1 <= i <= n and 1 <= j <= n and 0 <= g < og):
            raise IndexError(f"triple ({i},{g},{j}) out of range")
        return ((i - 1) * og + g) * n + (j - 1)

    def triple_of(self, idx: int):
        """The (i, g, j) triple for a non-zero element index, else None."""
        if idx == self.zero_index:
            return None
        n, og = self.index_size, self.group.order
        j = idx % n
        rest = idx // n
        g = rest % og
        i = rest // og
        return (i + 1, g, j + 1)

    def mul(self, s: int, t: int) -> int:
        if s == self.zero_index or t == self.zero_index:
            return self.zero_index
        i, g, j = self.triple_of(s)
        i2, g2, j2 = self.triple_of(t)
        if j != i2:
            return self.zero_index
        return self.triple_index(i, self.group.mul(g, g2), j2)

    def label(self, idx: int) -> str:
        if idx == self.zero_index:
            return "ø"
        i, g, j = self.triple_of(idx)
        return f"({i},{self.group.names[g]},{j})"

    def labels(self) -> list[str]:
        return [self.label(k) for k in range(self.size)]

    def __repr__(self):
        return f"BrandtSemigroup(|I|={self.index_size}, {self.group.name}, size {self.size})"


def brandt(index_size: int, g: FiniteGroup) -> BrandtSemigroup:
    return BrandtSemigroup(index_size, g)


class StructureAlgebra:
    """Associative algebra with a labeled basis and sparse structure constants.

    structure[(p, q)] holds the sparse coefficient vector of e_p * e_q;
    pairs with zero product are absent. Associativity is checked on all
    basis triples at construction (sampled above ASSOC_FULL_LIMIT unless
    strict is set). A claimed unit is verified against every basis vector.
    """

    __slots__ = ("dim", "labels", "structure", "unit", "name", "_left_cache", "_right_cache",
                 "_regular_cache")

    def __init__(self, dim, labels, structure, unit=None, name="A", check=True, strict=False):
        if len(labels) != dim:
            raise ValueError("label count does not match dimension")
        clean = {}
        for (p, q), vec in structure.items():
            if not (0 <= p < dim and 0 <= q < dim):
                raise IndexError(f"structure key ({p},{q}) out of range")
            v = {}
            for r, x in vec.items():
                x = nrat(x)
                if x:
                    if not 0 <= r < dim:
                        raise IndexError(f"structure value index {r} out of range")
                    v[r] = x
            if v:
                clean[(p, q)] = v
        self.dim = dim
        self.labels = tuple(labels)
        self.structure = clean
        self.unit = None
        self.name = name
        self._left_cache = {}
        self._right_cache = {}
        self._regular_cache = None
        if check:
            self._check_associativity(strict=strict)
        if unit is not None:
            u = {k: nrat(v) for k, v in unit.items() if v}
            if check and not self._is_two_sided_unit(u):
                raise ValueError(f"claimed unit of {name} is not a two-sided identity")
            self.unit = u

    def _check_associativity(self, strict=False):
        d = self.dim
        if d <= ASSOC_FULL_LIMIT or strict:
            triples = itertools.product(range(d), repeat=3)
        else:
            rng = random.Random(0xA55)
            triples = (
                (rng.randrange(d), rng.randrange(d), rng.randrange(d))
                for _ in range(ASSOC_SAMPLE)
            )
        get = self.structure.get
        for p, q, r in triples:
            left = {}
            pq = get((p, q))
            if pq:
                for s, x in pq.items():
                    sr = get((s, r))
                    if sr:
                        for t, y in sr.items():
                            z = left.get(t, 0) + x * y
                            if z:
                                left[t] = z
                            elif t in left:
                                del left[t]
            right = {}
            qr = get((q, r))
            if qr:
                for s, x in qr.items():
                    ps = get((p, s))
                    if ps:
                        for t, y in ps.items():
                            z = right.get(t, 0) + x * y
                            if z:
                                right[t] = z
                            elif t in right:
                                del right[t]
            if left != right:
                raise ValueError(
                    f"algebra {self.name} is not associative at basis triple ({p},{q},{r})"
                )

    def _is_two_sided_unit(self, u: dict) -> bool:
        for p in range(self.dim):
            e = {p: 1}
            if self.mul(u, e) != e or self.mul(e, u) != e:
                return False
        return True

    def mul_basis(self, p: int, q: int) -> dict:
        return dict(self.structure.get((p, q), {}))

    def mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        get = self.structure.get
        for p, a in x.items():
            for q, b in y.items():
                vec = get((p, q))
                if vec:
                    ab = a * b
                    for r, c in vec.items():
                        z = out.get(r, 0) + ab * c
                        if z:
                            out[r] = z
                        elif r in out:
                            del out[r]
        return out

    def left_mult_matrix(self, p: int) -> RationalMatrix:
        """Matrix of x -> e_p * x."""
        m = self._left_cache.get(p)
        if m is None:
            cols = [self.structure.get((p, q), {}) for q in range(self.dim)]
            m = RationalMatrix.from_cols(cols, self.dim)
            self._left_cache[p] = m
        return m

    def right_mult_matrix(self, p: int) -> RationalMatrix:
        """Matrix of x -> x * e_p."""
        m = self._right_cache.get(p)
        if m is None:
            cols = [self.structure.get((q, p), {}) for q in range(self.dim)]
            m = RationalMatrix.from_cols(cols, self.dim)
            self._right_cache[p] = m
        return m

    def basis_element(self, p: int) -> "AlgebraElement":
        return AlgebraElement(self, {p: 1})

    def element(self, coeffs: dict) -> "AlgebraElement":
        return AlgebraElement(self, coeffs)

    def label_index(self, label: str) -> int:
        return self.labels.index(label)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, StructureAlgebra)
            and self.dim == other.dim
            and self.labels == other.labels
            and self.structure == other.structure
            and self.unit == other.unit
        )

    def __hash__(self):
        return hash((self.dim, self.labels))

    def __repr__(self):
        return f"StructureAlgebra({self.name}, dim {self.dim})"


class AlgebraElement:
    """A sparse rational coefficient vector attached to its algebra."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: StructureAlgebra, coeffs: dict):
        self.algebra = algebra
        self.coeffs = {}
        for k, v in coeffs.items():
            v = nrat(v)
            if v:
                if not 0 <= k < algebra.dim:
                    raise IndexError(f"coefficient index {k} out of range")
                self.coeffs[k] = v

    def __add__(self, other):
        self._same(other)
        return AlgebraElement(self.algebra, vec_add(self.coeffs, other.coeffs))

    def __sub__(self, other):
        self._same(other)
        return AlgebraElement(self.algebra, vec_add(self.coeffs, vec_scale(other.coeffs, -1)))

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            self._same(other)
            return AlgebraElement(self.algebra, self.algebra.mul(self.coeffs, other.coeffs))
        return AlgebraElement(self.algebra, vec_scale(self.coeffs, nrat(other)))

    def __rmul__(self, other):
        return AlgebraElement(self.algebra, vec_scale(self.coeffs, nrat(other)))

    def __neg__(self):
        return AlgebraElement(self.algebra, vec_scale(self.coeffs, -1))

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraElement)
            and self.algebra is other.algebra
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def _same(self, other):
        if other.algebra is not self.algebra:
            raise ValueError("elements of different algebras")

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            v = self.coeffs[k]
            lbl = self.algebra.labels[k]
            parts.append(f"{v}*{lbl}" if v != 1 else lbl)
        return " + ".join(parts)


def scalar_algebra() -> StructureAlgebra:
    """The rationals as a one-dimensional unital algebra."""
    return StructureAlgebra(
        1, ["1"], {(0, 0): {0: 1}}, unit={0: 1}, name="Q", check=False
    )


def matrix_algebra(index_size: int) -> StructureAlgebra:
    """Matrix units e_(i,p) e_(q,j) = [p=q] e_(i,j) on basis I x I (1-based)."""
    n = index_size
    if n < 1:
        raise ValueError("index size must be >= 1")
    labels = [f"({i},{j})" for i in range(1, n + 1) for j in range(1, n + 1)]
    structure = {}
    for i in range(n):
        for p in range(n):
            for j in range(n):
                structure[(i * n + p, p * n + j)] = {i * n + j: 1}
    unit = {i * n + i: 1 for i in range(n)}
    return StructureAlgebra(n * n, labels, structure, unit=unit, name=f"M{n}")


def group_algebra(g: FiniteGroup) -> StructureAlgebra:
    structure = {
        (a, b): {g.mul(a, b): 1} for a in range(g.order) for b in range(g.order)
    }
    return StructureAlgebra(
        g.order,
        list(g.names),
        structure,
        unit={g.identity_index: 1},
        name=f"l1({g.name})",
    )


def contracted_brandt_algebra(index_size: int, g: FiniteGroup) -> StructureAlgebra:
    """Convolution algebra on the triples alone: products that would fall on
    the semigroup zero are identified with the zero vector."""
    s = BrandtSemigroup(index_size, g)
    n, og = index_size, g.order
    dim = n * n * og
    labels = [s.label(k) for k in range(dim)]
    structure = {}
    for i in range(1, n + 1):
        for gi in range(og):
            for k in range(1, n + 1):
                p = s.triple_index(i, gi, k)
                for hi in range(og):
                    for j in range(1, n + 1):
                        q = s.triple_index(k, hi, j)
                        structure[(p, q)] = {s.triple_index(i, g.mul(gi, hi), j): 1}
    unit = {s.triple_index(i, g.identity_index, i): 1 for i in range(1, n + 1)}
    return StructureAlgebra(dim, labels, structure, unit=unit, name=f"l1(T:{n},{g.name})")


def semigroup_algebra(s: BrandtSemigroup) -> StructureAlgebra:
    """The full semigroup algebra: the semigroup zero is an honest basis
    vector, so products falling on it give that basis vector, not 0."""
    dim = s.size
    structure = {}
    for a in range(dim):
        for b in range(dim):
            structure[(a, b)] = {s.mul(a, b): 1}
    alg = StructureAlgebra(dim, s.labels(), structure, name=f"l1(B({s.index_size},{s.group.name}))")
    u = find_unit(alg)
    if u is not None:
        alg.unit = u.coeffs
    return alg


def direct_sum(a: StructureAlgebra, b: StructureAlgebra) -> StructureAlgebra:
    """Coordinatewise product on the disjoint union of the two bases."""
    labels = [f"[{l}|0]" for l in a.labels] + [f"[0|{l}]" for l in b.labels]
    structure = {}
    for (p, q), vec in a.structure.items():
        structure[(p, q)] = dict(vec)
    off = a.dim
    for (p, q), vec in b.structure.items():
        structure[(p + off, q + off)] = {r + off: v for r, v in vec.items()}
    unit = None
    if a.unit is not None and b.unit is not None:
        unit = dict(a.unit)
        unit.update({k + off: v for k, v in b.unit.items()})
    return StructureAlgebra(
        a.dim + b.dim, labels, structure, unit=unit, name=f"{a.name}(+){b.name}"
    )


def algebra_tensor(a: StructureAlgebra, b: StructureAlgebra) -> StructureAlgebra:
    """Tensor product algebra on the lexicographic product basis."""
    labels = [f"{la}(x){lb}" for la in a.labels for lb in b.labels]
    db = b.dim
    structure = {}
    for (p1, q1), v1 in a.structure.items():
        for (p2, q2), v2 in b.structure.items():
            vec = {}
            for r1, x in v1.items():
                for r2, y in v2.items():
                    vec[r1 * db + r2] = x * y
            structure[(p1 * db + p2, q1 * db + q2)] = vec
    unit = None
    if a.unit is not None and b.unit is not None:
        unit = {}
        for p, x in a.unit.items():
            for q, y in b.unit.items():
                unit[p * db + q] = x * y
    return StructureAlgebra(
        a.dim * b.dim, labels, structure, unit=unit, name=f"{a.name}(x){b.name}"
    )


def find_unit(a: StructureAlgebra) -> AlgebraElement | None:
    """Solve u * e_p = e_p * u = e_p for all p; verify by substitution."""
    d = a.dim
    rows = []
    rhs = {}
    eq = 0
    for p in range(d):
        # sum_q u_q (e_q e_p) = e_p   and   sum_q u_q (e_p e_q) = e_p
        right_rows = [{} for _ in range(d)]
        left_rows = [{} for _ in range(d)]
        for q in range(d):
            for r, v in a.structure.get((q, p), {}).items():
                right_rows[r][q] = v
            for r, v in a.structure.get((p, q), {}).items():
                left_rows[r][q] = v
        for r in range(d):
            if right_rows[r]:
                rows.append(right_rows[r])
                if r == p:
                    rhs[eq] = QQ(1)
                eq += 1
            elif r == p:
                rows.append({})
                rhs[eq] = QQ(1)
                eq += 1
            if left_rows[r]:
                rows.append(left_rows[r])
                if r == p:
                    rhs[eq] = QQ(1)
                eq += 1
            elif r == p:
                rows.append({})
                rhs[eq] = QQ(1)
                eq += 1
    f = LinearMap(d, len(rows), RationalMatrix.from_rows(rows, d))
    u = solve(f, rhs)
    if u is None:
        return None
    elem = AlgebraElement(a, u)
    for p in range(d):
        e = {p: 1}
        if a.mul(elem.coeffs, e) != e or a.mul(e, elem.coeffs) != e:
            return None
    return elem


def triple_basis_iso(index_size: int, g: FiniteGroup) -> tuple[LinearMap, LinearMap]:
    """Basis bijection between the matrix-units/group tensor algebra and the
    contracted triple algebra: (i,j) tensor g goes to the triple (i,g,j).

    Returns the map and its inverse; both are permutation matrices with
    l1 operator norm exactly 1, and both are multiplicative.
    """
    n, og = index_size, g.order
    s = BrandtSemigroup(index_size, g)
    dim = n * n * og
    fwd = RationalMatrix(dim, dim)
    bwd = RationalMatrix(dim, dim)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            pair = (i - 1) * n + (j - 1)
            for gi in range(og):
                src = pair * og + gi
                dst = s.triple_index(i, gi, j)
                fwd._rows[dst][src] = 1
                bwd._rows[src][dst] = 1
    return LinearMap(dim, dim, fwd), LinearMap(dim, dim, bwd)


def index_pair_iso(index_size: int) -> LinearMap:
    """Basis bijection sending the pair (i, j) of the tensor-square basis of
    the index space to the matrix unit with the same label."""
    n = index_size
    m = RationalMatrix(n * n, n * n)
    for i in range(n):
        for j in range(n):
            m._rows[i * n + j][i * n + j] = 1
    return LinearMap(n * n, n * n, m)
