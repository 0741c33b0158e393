"""Real matrix pictures of quaternion and octonion linear maps.

A hypercomplex vector is flattened by ``aleph`` and a matrix by ``gimel``.
The product ``A x`` then becomes an ordinary real matrix-vector product.
"""
# %% Setup
import numpy as np

from hyperpr import HMatrix, HVector, aleph, gimel, matvec
from hyperpr.linalg import outer, power_method

rng = np.random.default_rng(0)

# %% The octonion left-multiplication matrix of a single element
x = rng.standard_normal(8)
print(np.round(gimel(HMatrix(x.reshape(1, 1, 8))), 2))

# %% Matrix-vector products survive the flattening
A = HMatrix(rng.standard_normal((5, 3, 8)))
v = HVector(rng.standard_normal((3, 8)))
err = np.linalg.norm(aleph(matvec(A, v)) - gimel(A) @ aleph(v))
print(f"|aleph(Ax) - gimel(A) aleph(x)| = {err:.2e}")

# %% Leading eigenvector of a quaternion Hermitian matrix
u = HVector(rng.standard_normal((6, 4)))
u = HVector(u.data / u.norm())
Y = HMatrix(outer(u, u).data + 0.01 * np.eye(6)[..., None] * np.eye(4)[0])
res = power_method(Y)
print("eigenvalue", round(res.value, 6), "converged", res.converged)
