"""A walk up the Cayley-Dickson ladder.

Run with ``python demos/01_algebra_tour.py``.  Each doubling step loses a
structural property: quaternions stop commuting, octonions stop associating,
and sedenions acquire zero divisors.
"""
# %% Quaternion arithmetic
import numpy as np

from hyperpr import HyperNum, find_zero_divisor
from hyperpr.algebra import associator, inverse, multiplication_table
from hyperpr.properties import format_matrix, property_matrix

i, j = HyperNum.unit(4, 1), HyperNum.unit(4, 2)
print("i*j =", (i * j).coeffs, " j*i =", (j * i).coeffs)

q = HyperNum.quaternion(1.0, 2.0, -1.0, 0.5)
print("|q| =", abs(q), " q * q^-1 =", np.round((q * inverse(q)).coeffs, 12))

# %% Octonion units and the multiplication table
for row in multiplication_table(8):
    print(" ".join(f"{c:>4}" for c in row))

e = [HyperNum.unit(8, k) for k in range(8)]
print("associator (e1, e2, e4) =", associator(e[1].coeffs, e[2].coeffs, e[4].coeffs))

# %% Sedenions: two nonzero elements whose product vanishes
u, v = find_zero_divisor(16)
print("u =", u.coeffs.nonzero()[0], " v =", v.coeffs.nonzero()[0], " |uv| =", abs(u * v))

# %% Property matrix, decided by basis scans plus random samples
print(format_matrix(property_matrix(samples=2000)))
