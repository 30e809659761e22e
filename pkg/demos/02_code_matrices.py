"""
Generator, dual and encoders of a small polar code
===================================================

Build the (8, 4) code on BEC(1/2), print G_U and H_U, check that they are
orthogonal and encode a few messages.
"""

from polarss import BEC, build_code, column_weight, encode, systematic_encode
from polarss.construction import dual_submatrix, format_code, generator_submatrix, is_orthogonal
from polarss.gf2 import format_matrix

spec = build_code(BEC(0.5), n=3, k=4)
print(format_code(spec))

G_U = generator_submatrix(spec)
H_U = dual_submatrix(spec)
print("G_U (rows A = %s):" % (spec.A,))
print(format_matrix(G_U))
print("row weights:", G_U.sum(axis=1))
print("\nH_U (rows A^c = %s):" % (spec.frozen,))
print(format_matrix(H_U))
print("G_U H_U^T == 0:", is_orthogonal(G_U, H_U))

# column weights of G_8: 2 ** (number of zero bits of j-1)
print("\ncolumn weights:", [column_weight(j, 8) for j in range(1, 9)])

# coset encoding of u_A = (1, 1, 1, 0), i.e. rows 4, 6 and 7 of G_8
print("\nx = u_A G_U =", encode(spec, [1, 1, 1, 0]))

# systematic encoding puts the message on A directly
x = systematic_encode(spec, [1, 0, 1, 1])
print("systematic x =", x, " x[A] =", x[[i - 1 for i in spec.A]])
