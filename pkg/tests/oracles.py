"""Independent oracles for cross-checking the sparse kernels.

Dense textbook Gaussian elimination over Fractions, written with no code
shared with the package; the point is a second opinion, not speed.
"""

from fractions import Fraction


def dense_from_sparse(rows, nrows, ncols):
    out = [[Fraction(0)] * ncols for _ in range(nrows)]
    for r, row in enumerate(rows):
        for c, v in row.items():
            out[r][c] = Fraction(v)
    return out


def dense_rref(mat):
    """Returns (rref matrix, rank, pivot columns)."""
    m = [[Fraction(x) for x in row] for row in mat]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots = []
    lead = 0
    for r in range(nrows):
        while lead < ncols:
            pivot_row = None
            for i in range(r, nrows):
                if m[i][lead] != 0:
                    pivot_row = i
                    break
            if pivot_row is None:
                lead += 1
                continue
            m[r], m[pivot_row] = m[pivot_row], m[r]
            pv = m[r][lead]
            m[r] = [x / pv for x in m[r]]
            for i in range(nrows):
                if i != r and m[i][lead] != 0:
                    f = m[i][lead]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            pivots.append(lead)
            lead += 1
            break
        else:
            break
    return m, len(pivots), pivots


def dense_rank(mat):
    return dense_rref(mat)[1]


def dense_nullity(mat):
    if not mat:
        return 0
    return len(mat[0]) - dense_rank(mat)


def dense_matmul(a, b):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = [[Fraction(0)] * m for _ in range(n)]
    for i in range(n):
        for j in range(m):
            out[i][j] = sum((a[i][t] * b[t][j] for t in range(k)), Fraction(0))
    return out


def matrix_of_linear_map(f):
    """Dense matrix of a package LinearMap, via public accessors only."""
    out = [[Fraction(0)] * f.source_dim for _ in range(f.target_dim)]
    for c in range(f.source_dim):
        for r, v in f.col(c).items():
            out[r][c] = Fraction(v)
    return out


def span_contains(vectors, candidate, dim):
    """Whether candidate lies in the span of vectors (all sparse dicts)."""
    rows = dense_from_sparse(list(vectors), len(vectors), dim)
    rank_without = dense_rank(rows) if rows else 0
    rows_with = rows + dense_from_sparse([candidate], 1, dim)
    return dense_rank(rows_with) == rank_without
