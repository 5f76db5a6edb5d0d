"""Tour of the exact linear algebra substrate.

Everything downstream rests on one idea: subspaces kept in canonical
reduced echelon form make set-level statements ("these two spans are the
same subspace") decidable by literal equality of matrices, with no
tolerances anywhere.
"""

from fractions import Fraction as QQ

from moritalab import (
    LinearMap,
    RationalMatrix,
    Subspace,
    kernel,
    image,
    l1_operator_norm,
    quotient,
    rref,
    solve,
    subspace_equal,
)

print("# Canonical forms")
m = RationalMatrix.from_rows([{0: 2, 1: 4}, {0: 1, 1: 2}, {0: QQ(1, 3), 1: QQ(2, 3)}], 2)
echelon, rank = rref(m)
print(f"three proportional rows reduce to rank {rank}: {echelon.to_dense()[0]}")

print()
print("# Two spans, one subspace")
a = Subspace.from_spanning(3, [{0: 1, 1: 1}, {1: 2, 2: 2}])
b = Subspace.from_spanning(3, [{0: 3, 1: 3}, {0: 1, 2: -1}])
print(f"span A basis rows: {[a.basis.row(r) for r in range(a.dim)]}")
print(f"span B basis rows: {[b.basis.row(r) for r in range(b.dim)]}")
print(f"equal as sets: {subspace_equal(a, b)}")

print()
print("# Kernels, images, quotients")
f = LinearMap(4, 1, RationalMatrix.from_rows([{0: 1, 3: 1}], 4))
ker = kernel(f)
print(f"a functional on dim 4 has kernel of dim {ker.dim}")
q = quotient(4, ker)
print(f"quotient by the kernel has dim {q.dim};"
      f" proj . section = identity: {q.proj.compose(q.section) == LinearMap.identity(q.dim)}")

print()
print("# Solving exactly")
g = LinearMap(3, 2, RationalMatrix.from_rows([{0: 2, 1: 1}, {1: 3, 2: QQ(1, 2)}], 3))
x = solve(g, [QQ(5), QQ(7, 2)])
print(f"a solution: {x}; substituting gives {g.apply(x)}")

print()
print("# Operator norms on point-mass bases")
perm = RationalMatrix(3, 3)
perm._rows[1][0] = 1
perm._rows[2][1] = 1
perm._rows[0][2] = 1
print(f"permutation matrices always have norm {l1_operator_norm(LinearMap(3, 3, perm))}")
print(f"image of the functional is the full line: {image(f).dim == 1}")
