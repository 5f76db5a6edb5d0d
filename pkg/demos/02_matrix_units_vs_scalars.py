"""The matrix-units algebra is Morita equivalent to the scalars.

The witness pair is the index space with its two one-sided matrix
actions. The balanced product over the matrix algebra collapses to a
single line, and the collapse is precisely the trace pairing: its kernel
is the balancing subspace, computed here both ways and compared as
canonical subspaces (exact equality, not a tolerance in sight).
"""

from moritalab import (
    balancing_subspace,
    column_module,
    kernel,
    l1_operator_norm,
    matrix_algebra,
    row_module,
    subspace_equal,
    trace_pairing,
    verify_witness,
    witness_matrix_vs_scalars,
)

for n in (1, 2, 3, 4):
    rel = balancing_subspace(row_module(n), column_module(n), matrix_algebra(n))
    pairing = trace_pairing(n)
    same = subspace_equal(rel, kernel(pairing))
    print(f"|I| = {n}: balancing subspace dim {rel.dim} of {n * n},"
          f" equals the pairing kernel: {same}")

print()
print("membership facts inside the balancing subspace for |I| = 3:")
rel = balancing_subspace(row_module(3), column_module(3), matrix_algebra(3))
n = 3
print(f"  off-diagonal pair (1,2): {rel.contains({0 * n + 1: 1})}")
print(f"  difference (2,2) - (1,1): {rel.contains({1 * n + 1: 1, 0: -1})}")
print(f"  diagonal pair (1,1) alone: {rel.contains({0: 1})}  (it had better not be)")

print()
print("full witness verification:")
for n in (1, 2, 3):
    wit = witness_matrix_vs_scalars(n)
    report = verify_witness(wit)
    norms = report.condition("qp_tensor_iso").details
    print(f"  |I| = {n}: all four conditions pass = {report.passed};"
          f" basis-to-basis iso norm {norms['norm']}")

print()
print("the basis bijection pair (i, j) <-> matrix unit is isometric:")
from moritalab import index_pair_iso

for n in (2, 3, 4):
    print(f"  |I| = {n}: norm {l1_operator_norm(index_pair_iso(n))}")
