"""Discrete Liouville equation and its Poisson geometry.

Even rings (N = 2m) use a bipartite quiver whose matrix is invertible for
m >= 3: the compatible bracket is P = c_x B^{-1} and the compatible 2-form
pairs with the extended structure as PW = (c_x + c_y) I.  For m = 2 the
matrix is singular and only PB = O structures exist.  The initial-data
brackets reproduce the classical lattice Liouville bracket.
"""

from fractions import Fraction

from clusterflow import linalg
from clusterflow.dynamics import (
    liouville_initial_brackets,
    liouville_report,
    liouville_run,
)
from clusterflow.matrices import liouville_even_matrix
from clusterflow.poisson import assemble_extended, skew_kernel, solve_poisson, two_form

for N in (4, 5, 6):
    recs = liouville_report(liouville_run(N, 3))
    print(f"N={N}: {len(recs)} residuals, all zero: {all(r['residual_zero'] for r in recs)}")

print("\nN = 6 (m = 3): invertible case")
B = liouville_even_matrix(3)
cx, cy = Fraction(2), Fraction(3)
P = solve_poisson(B, cx)
ext = assemble_extended(B, cx, cy, Px=P)
tf = two_form(B, cx, cy, P=P)
prod = linalg.mat_mul(ext.big_dense(), tf.extended)
print("P W == (c_x + c_y) I:", linalg.mat_eq(prod, linalg.mat_scale(linalg.identity(2 * B.n), cx + cy)))

print("\nN = 4 (m = 2): singular case")
B2 = liouville_even_matrix(2)
try:
    solve_poisson(B2, Fraction(1))
except ValueError as e:
    print("PB = c D with c != 0 impossible:", e)
print("PB = O kernel dimension:", len(skew_kernel(B2)))

print("\ninitial-data brackets {y(0), y(1)} (coefficient of the product):")
for N in (4, 5):
    table = liouville_initial_brackets(N, Fraction(1))
    nonzero = {k: str(v) for k, v in sorted(table.items()) if v}
    print(f"N={N}: {nonzero}")
