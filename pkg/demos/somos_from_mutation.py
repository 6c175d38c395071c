"""The Somos-4 sequence out of cluster mutation.

The rank-4 exchange matrix mutated cyclically at 0, 1, 2, 3, ... realizes the
recurrence s_{n+4} s_n = s_{n+3} s_{n+1} + s_{n+2}^2.  Starting from
(1, 1, 1, 1) every term is an integer even though each step divides — the
Laurent phenomenon at work.
"""

from clusterflow.dynamics import somos_sequence
from clusterflow.matrices import somos4_matrix
from clusterflow.poisson import skew_kernel

terms = somos_sequence(14)
print("Somos-4:", ", ".join(str(t) for t in terms))
assert all(t.denominator == 1 for t in terms)

B = somos4_matrix()
print("\nexchange matrix B:")
for row in B.to_dense():
    print("  ", [int(v) for v in row])

basis = skew_kernel(B)
print(f"\nskew solutions of PB = cD: dimension {len(basis)}")
P, c = basis[0]
print(f"compatibility constant c = {c}; P =")
for row in P.to_dense():
    print("  ", [str(v) for v in row])
print("(proportional to p_ij = j - i: the unique compatible bracket)")
