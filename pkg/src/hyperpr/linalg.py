"""Dense vectors and matrices over a Cayley-Dickson algebra.

Arrays keep the coefficient axis last: an ``HVector`` wraps an ``(n, dim)``
array and an ``HMatrix`` an ``(m, n, dim)`` array.  The real embeddings are

* ``aleph``: stack the coefficient blocks of a vector into ``R^(dim n)``;
* ``gimel``: replace every matrix entry by its ``dim x dim`` left
  multiplication matrix, so that ``gimel(A) @ aleph(x) == aleph(A x)``.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .algebra import (
    AlgebraError,
    HyperNum,
    check_level,
    hconj,
    hmul,
    left_matrix,
)


@dataclass(frozen=True, eq=False)
class HVector:
    data: np.ndarray

    def __post_init__(self):
        d = np.array(self.data, dtype=float)
        if d.ndim != 2:
            raise AlgebraError(f"HVector data must be (n, dim), got shape {d.shape}")
        check_level(d.shape[1])
        d.setflags(write=False)
        object.__setattr__(self, "data", d)

    @classmethod
    def from_nums(cls, nums) -> HVector:
        return cls(np.stack([x.coeffs for x in nums]))

    @classmethod
    def zeros(cls, n: int, dim: int) -> HVector:
        return cls(np.zeros((n, check_level(dim))))

    @property
    def level(self) -> int:
        return self.data.shape[1]

    def __len__(self):
        return self.data.shape[0]

    def __getitem__(self, i) -> HyperNum:
        return HyperNum(self.data[i])

    def __iter__(self):
        return (HyperNum(row) for row in self.data)

    def __add__(self, other: HVector) -> HVector:
        _match(self, other)
        return HVector(self.data + other.data)

    def __sub__(self, other: HVector) -> HVector:
        _match(self, other)
        return HVector(self.data - other.data)

    def __neg__(self):
        return HVector(-self.data)

    def scale(self, t: float) -> HVector:
        return HVector(self.data * float(t))

    def right_mul(self, w: HyperNum) -> HVector:
        """Entrywise ``x_j w``."""
        if w.dim != self.level:
            raise AlgebraError("level mismatch")
        return HVector(hmul(self.data, w.coeffs))

    def left_mul(self, w: HyperNum) -> HVector:
        """Entrywise ``w x_j``."""
        if w.dim != self.level:
            raise AlgebraError("level mismatch")
        return HVector(hmul(w.coeffs, self.data))

    def conj(self) -> HVector:
        return HVector(hconj(self.data))

    def norm(self) -> float:
        """Euclidean norm, equal to ``||aleph(x)||_2``."""
        return float(np.linalg.norm(self.data))

    def norm_l1(self) -> float:
        """Sum of entry moduli (the vector norm of the identities table)."""
        return float(np.sum(np.linalg.norm(self.data, axis=1)))


@dataclass(frozen=True, eq=False)
class HMatrix:
    data: np.ndarray

    def __post_init__(self):
        d = np.array(self.data, dtype=float)
        if d.ndim != 3:
            raise AlgebraError(f"HMatrix data must be (m, n, dim), got shape {d.shape}")
        check_level(d.shape[2])
        d.setflags(write=False)
        object.__setattr__(self, "data", d)

    @classmethod
    def identity(cls, n: int, dim: int) -> HMatrix:
        d = np.zeros((n, n, check_level(dim)))
        d[np.arange(n), np.arange(n), 0] = 1.0
        return cls(d)

    @property
    def level(self) -> int:
        return self.data.shape[2]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape[:2]

    def __getitem__(self, ij) -> HyperNum:
        return HyperNum(self.data[ij])

    def conj_transpose(self) -> HMatrix:
        return HMatrix(hconj(np.transpose(self.data, (1, 0, 2))))

    @property
    def H(self) -> HMatrix:
        return self.conj_transpose()

    def is_hermitian(self, tol: float = 1e-10) -> bool:
        m, n = self.shape
        if m != n:
            return False
        scale = max(1.0, float(np.abs(self.data).max(initial=0.0)))
        return bool(np.abs(self.data - self.conj_transpose().data).max(initial=0.0) <= tol * scale)


def _match(a, b):
    if a.data.shape != b.data.shape:
        raise AlgebraError(f"shape/level mismatch: {a.data.shape} vs {b.data.shape}")


def matvec(A: HMatrix, x: HVector) -> HVector:
    """``y_i = sum_j A[i, j] x[j]`` with the matrix entry on the left."""
    _m, n = A.shape
    if n != len(x) or A.level != x.level:
        raise AlgebraError(f"cannot apply {A.data.shape} matrix to {x.data.shape} vector")
    return HVector(hmul(A.data, x.data[None, :, :]).sum(axis=1))


def matmul_array(a, b) -> np.ndarray:
    """Product of coefficient arrays ``(m, k, dim) @ (k, n, dim)``."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape[1] != b.shape[0] or a.shape[2] != b.shape[2]:
        raise AlgebraError(f"cannot multiply {a.shape} by {b.shape}")
    return np.einsum("mkpq,knq->mnp", left_matrix(a), b, optimize=True)


def matmul(A: HMatrix, B: HMatrix) -> HMatrix:
    return HMatrix(matmul_array(A.data, B.data))


def inner(a: HVector, x: HVector) -> HyperNum:
    """``sum_j conj(a_j) x_j``."""
    _match(a, x)
    return HyperNum(hmul(hconj(a.data), x.data).sum(axis=0))


def outer(a: HVector, b: HVector) -> HMatrix:
    """``a b^H`` with entries ``a_i conj(b_j)``."""
    if a.level != b.level:
        raise AlgebraError("level mismatch")
    return HMatrix(hmul(a.data[:, None, :], hconj(b.data)[None, :, :]))


def aleph(x: HVector) -> np.ndarray:
    return x.data.reshape(-1).copy()


def aleph_inv(v, level: int, n: int | None = None) -> HVector:
    v = np.asarray(v, dtype=float).reshape(-1)
    level = check_level(level)
    if v.size % level:
        raise AlgebraError(f"length {v.size} is not a multiple of {level}")
    if n is not None and v.size != n * level:
        raise AlgebraError(f"expected {n * level} coordinates, got {v.size}")
    return HVector(v.reshape(-1, level))


def gimel_array(a) -> np.ndarray:
    """Block real matrix of a coefficient array of shape ``(m, n, dim)``."""
    a = np.asarray(a, dtype=float)
    m, n, dim = a.shape
    blocks = left_matrix(a)  # (m, n, dim, dim)
    return blocks.transpose(0, 2, 1, 3).reshape(m * dim, n * dim)


def gimel(A) -> np.ndarray:
    """Real matrix representation of a scalar, vector (as a column) or matrix."""
    if isinstance(A, HyperNum):
        return left_matrix(A.coeffs)
    if isinstance(A, HVector):
        return gimel_array(A.data[:, None, :])
    if isinstance(A, HMatrix):
        return gimel_array(A.data)
    raise TypeError(f"cannot represent {type(A).__name__}")


class EigenResult(NamedTuple):
    vector: HVector
    value: float
    converged: bool
    iterations: int


def power_iteration(M: np.ndarray, iters: int = 1000, tol: float = 1e-10, seed: int = 0):
    """Leading eigenpair of a real symmetric matrix by plain power iteration.

    Convergence is declared when successive Rayleigh quotients agree to
    ``tol`` relative.  Returns ``(v, lam, converged, iterations)``.
    """
    M = np.asarray(M, dtype=float)
    v = np.random.default_rng(seed).standard_normal(M.shape[0])
    v /= np.linalg.norm(v)
    lam = float(v @ M @ v)
    for it in range(1, iters + 1):
        w = M @ v
        nw = np.linalg.norm(w)
        if nw == 0.0:
            return v, 0.0, True, it
        v = w / nw
        new = float(v @ M @ v)
        if abs(new - lam) <= tol * max(abs(new), np.finfo(float).tiny):
            return v, new, True, it
        lam = new
    return v, lam, False, iters


def power_method(Y: HMatrix, iters: int = 1000, tol: float = 1e-10, seed: int = 0) -> EigenResult:
    """Leading eigenvector of a Hermitian hypercomplex matrix.

    Power iteration runs on the symmetric real matrix ``gimel(Y)``; the real
    eigenvector is mapped back with ``aleph_inv``.  For a rank-one ``Y = x x^H``
    the real leading eigenspace has dimension ``dim`` and every vector in it is
    ``x`` times some right unit factor, so the returned vector is only defined
    up to that factor.
    """
    if not Y.is_hermitian():
        raise AlgebraError("power_method requires a Hermitian matrix")
    v, lam, ok, it = power_iteration(gimel(Y), iters, tol, seed)
    if not ok:
        warnings.warn(f"power method did not converge in {iters} iterations", RuntimeWarning)
    return EigenResult(aleph_inv(v, Y.level), lam, ok, it)
