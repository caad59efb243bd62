"""Multiplying in the divided-power algebra and checking it against matrices.

Run: python demos/straightening.py
"""

import numpy as np

from sl2hyper import AlgebraElement, H, X, Y, operator_matrix
from sl2hyper.hyperalgebra import basis_u
from sl2hyper.linalg import rank

p = 3

# X Y is not in normal order; straightening moves X to the right
print("X(1)*Y(1) =", X(1, p) * Y(1, p))
print("X(2)*Y(2) =", X(2, p) * Y(2, p))

# divided powers multiply with binomial coefficients, so X*X*X = 3! X(3) = 0 mod 3
print("X(1)^3    =", X(1, p) ** 3)

# X(m) slides right past binom(H, n) by shifting its argument: X binom(H,1) = binom(H-2,1) X
print("X(1)*H(1) =", X(1, p) * H(1, p))

# the same products, computed as matrices on polynomials in x, y
D = 2 * p
a, b = X(2, p), Y(1, p) * H(1, p)
lhs = operator_matrix(a * b, D)
rhs = operator_matrix(a, D) @ operator_matrix(b, D)
print("matrix check on S^d V, d <= %d:" % D, lhs == rhs)

# symmetric powers alone miss part of U_1; tensoring with the Steinberg module fixes it
mons = [AlgebraElement.monomial(p, *m) for m in basis_u(p, 1)]
plain = np.array([operator_matrix(m, D).flat() for m in mons])
extended = np.array([operator_matrix(m, D, 1).flat() for m in mons])
print(f"rank of the {len(mons)} basis operators: {rank(plain, p)} on S^d V, {rank(extended, p)} with St (x) S^d")
