"""C-matrices, G-matrices, F-polynomials, and the separation formulas.

Along any mutation word the coefficient and cluster data factor through
integer matrices C and G (with G^T C = I) and polynomials F with constant
term 1.  Reconstructing y' and x' from (C, G, F) must agree with direct
mutation — an exact, highly over-determined consistency check.
"""

from clusterflow.algebra import format_poly
from clusterflow.matrices import a2_matrix
from clusterflow.tropical import c_walk, f_polynomials, g_matrix, separation_check

WORD = (0, 1, 0, 1, 0)

print(f"rank-2 pentagon word {WORD}:")
for step, (b, c) in enumerate(c_walk(a2_matrix(), WORD)):
    g = g_matrix(c)
    print(f"  after {step} steps: C = {c}  G = {g}")

f = f_polynomials(a2_matrix(), WORD)
print("\nF-polynomials:")
for i, p in sorted(f.items()):
    print(f"  F_{i} = {format_poly(p)}")

rep = separation_check(a2_matrix(), WORD)
print(
    "\nseparation reconstruction — y:", rep.y_match,
    " x:", rep.x_match,
    " tropical leading = C columns:", rep.tropical_match,
    " G^T C = I:", rep.g_inverse_ok,
)
