"""Cayley-Dickson algebras of dimension 1, 2, 4, 8 and 16.

Elements are stored as flat real coefficient arrays whose trailing axis has
length ``dim``; index 0 is the scalar part and index ``i`` the coefficient of
the unit ``e_i``.  For quaternions ``(e1, e2, e3) = (i, j, k)``.

Multiplication is driven by a structure tensor ``C`` with
``(x y)[k] = sum_ij x[i] y[j] C[i, j, k]``.

Conventions
-----------
* Levels 2 and 4 come from the doubling ``(a,b)(c,d) = (ac - d*b, da + bc*)``,
  which yields Hamilton's quaternions (``ij = k``).
* Level 8 is read off the octonion real matrix representation
  :data:`GIMEL_PATTERN`, interpreted as the left-multiplication matrix
  ``gimel(x) aleph(y) = aleph(x y)``.  The same table is produced by the
  doubling ``(a,b)(c,d) = (ac - d b*, a* d + c b)`` started from the reals.
* Level 16 is that same doubling applied to level 8.

Inside the octonions the span of ``{1, e1, e2, e3}`` therefore multiplies as
``e1 e2 = -e3``; it is isomorphic to the level-4 quaternions through
``k -> -e3`` but is not coefficient-identical to them.
"""
from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass
from functools import cache

import numpy as np

LEVELS = (1, 2, 4, 8, 16)

#: Relative tolerance used for "exact" algebraic identities.
EXACT_RTOL = 1e-12

# Printed 8x8 real matrix representation of an octonion x = sum x_p e_p.
# Entry (r, c) is "+p" or "-p", meaning +x_p or -x_p.
GIMEL_PATTERN = (
    "+0 -1 -2 -3 -4 -5 -6 -7",
    "+1 +0 +3 -2 +5 -4 -7 +6",
    "+2 -3 +0 +1 +6 +7 -4 -5",
    "+3 +2 -1 +0 +7 -6 +5 -4",
    "+4 -5 -6 -7 +0 +1 +2 +3",
    "+5 +4 -7 +6 -1 +0 -3 +2",
    "+6 +7 +4 -5 -2 +3 +0 -1",
    "+7 -6 +5 +4 -3 -2 +1 +0",
)

UNIT_NAMES = {4: ("1", "i", "j", "k")}


class AlgebraError(ValueError):
    """Raised on level mismatches and invalid algebra arguments."""


def check_level(dim: int) -> int:
    dim = int(dim)
    if dim not in LEVELS:
        raise AlgebraError(f"unsupported algebra dimension {dim}; expected one of {LEVELS}")
    return dim


def _conj_vec(x):
    y = -np.asarray(x, dtype=float)
    y[..., 0] = -y[..., 0]
    return y


def _table_from_rule(lower: np.ndarray, rule: str) -> np.ndarray:
    """Double the structure tensor ``lower`` using the named doubling rule."""
    h = lower.shape[0]
    dim = 2 * h

    def mul(x, y):
        return np.einsum("i,j,ijk->k", x, y, lower)

    C = np.zeros((dim, dim, dim))
    eye = np.eye(dim)
    for p, q in itertools.product(range(dim), repeat=2):
        a, b = eye[p, :h], eye[p, h:]
        c, d = eye[q, :h], eye[q, h:]
        if rule == "hamilton":
            first = mul(a, c) - mul(_conj_vec(d), b)
            second = mul(d, a) + mul(b, _conj_vec(c))
        elif rule == "gimel":
            first = mul(a, c) - mul(d, _conj_vec(b))
            second = mul(_conj_vec(a), d) + mul(c, b)
        else:
            raise AlgebraError(f"unknown doubling rule {rule!r}")
        C[p, q] = np.concatenate([first, second])
    return C


def table_from_gimel() -> np.ndarray:
    """Octonion structure tensor read from :data:`GIMEL_PATTERN`."""
    C = np.zeros((8, 8, 8))
    for r, row in enumerate(GIMEL_PATTERN):
        for c, tok in enumerate(row.split()):
            sign = -1.0 if tok[0] == "-" else 1.0
            # column c of gimel(e_p) is aleph(e_p e_c)
            C[int(tok[1:]), c, r] = sign
    return C


def doubling_tower(rule: str, top: int = 16) -> dict[int, np.ndarray]:
    """Structure tensors of every level up to ``top`` from one doubling rule."""
    tables = {1: np.ones((1, 1, 1))}
    dim = 1
    while dim < top:
        tables[2 * dim] = _table_from_rule(tables[dim], rule)
        dim *= 2
    return tables


@cache
def structure_tensor(dim: int) -> np.ndarray:
    """Read-only structure tensor ``C[i, j, k]`` for the given level."""
    dim = check_level(dim)
    if dim in (1, 2, 4):
        C = doubling_tower("hamilton", dim)[dim]
    elif dim == 8:
        C = table_from_gimel()
    else:
        C = _table_from_rule(structure_tensor(8), "gimel")
    C.setflags(write=False)
    return C


@cache
def _left_tensor(dim: int) -> np.ndarray:
    # L[i, k, j] so that left_matrix(x) = x . L
    L = np.ascontiguousarray(np.transpose(structure_tensor(dim), (0, 2, 1)))
    L.setflags(write=False)
    return L


@cache
def _right_tensor(dim: int) -> np.ndarray:
    # R[j, k, i] so that right_matrix(y) = y . R
    R = np.ascontiguousarray(np.transpose(structure_tensor(dim), (1, 2, 0)))
    R.setflags(write=False)
    return R


# ---------------------------------------------------------------------------
# array-level kernels (trailing axis = coefficients)


def left_matrix(x) -> np.ndarray:
    """Real matrix of ``y -> x y``; shape ``(..., dim, dim)``."""
    x = np.asarray(x, dtype=float)
    return np.tensordot(x, _left_tensor(x.shape[-1]), axes=([-1], [0]))


def right_matrix(y) -> np.ndarray:
    """Real matrix of ``x -> x y``; shape ``(..., dim, dim)``."""
    y = np.asarray(y, dtype=float)
    return np.tensordot(y, _right_tensor(y.shape[-1]), axes=([-1], [0]))


def hmul(x, y) -> np.ndarray:
    """Broadcasting product of coefficient arrays."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape[-1] != y.shape[-1]:
        raise AlgebraError(f"level mismatch: {x.shape[-1]} vs {y.shape[-1]}")
    return np.einsum("...kj,...j->...k", left_matrix(x), y)


def hconj(x) -> np.ndarray:
    return _conj_vec(x)


def habs(x) -> np.ndarray:
    return np.linalg.norm(np.asarray(x, dtype=float), axis=-1)


def hinv(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    n2 = np.sum(x * x, axis=-1, keepdims=True)
    if np.any(n2 == 0):
        raise ZeroDivisionError("inverse of a zero hypercomplex number")
    return _conj_vec(x) / n2


def hsign(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    r = habs(x)[..., None]
    if np.any(r == 0):
        raise ZeroDivisionError("sign of a zero hypercomplex number")
    return x / r


def basis(dim: int, index: int) -> np.ndarray:
    e = np.zeros(check_level(dim))
    e[index] = 1.0
    return e


# ---------------------------------------------------------------------------
# scalar type


@dataclass(frozen=True, eq=False)
class HyperNum:
    """An immutable element of the level-``len(coeffs)`` Cayley-Dickson algebra."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=float).reshape(-1)
        check_level(c.size)
        if not np.all(np.isfinite(c)):
            raise AlgebraError("coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def unit(cls, dim: int, index: int) -> HyperNum:
        return cls(basis(dim, index))

    @classmethod
    def real(cls, value: float, dim: int) -> HyperNum:
        return cls(float(value) * basis(dim, 0))

    @classmethod
    def quaternion(cls, a=0.0, b=0.0, c=0.0, d=0.0) -> HyperNum:
        return cls([a, b, c, d])

    @property
    def dim(self) -> int:
        return self.coeffs.size

    @property
    def level(self) -> int:
        return self.dim

    @property
    def scalar(self) -> float:
        return float(self.coeffs[0])

    @property
    def vector(self) -> np.ndarray:
        return self.coeffs[1:]

    def _coerce(self, other) -> HyperNum:
        if isinstance(other, HyperNum):
            if other.dim != self.dim:
                raise AlgebraError(f"level mismatch: {self.dim} vs {other.dim}")
            return other
        if np.isscalar(other):
            return HyperNum.real(other, self.dim)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return HyperNum(self.coeffs + other.coeffs)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return HyperNum(self.coeffs - other.coeffs)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return HyperNum(other.coeffs - self.coeffs)

    def __neg__(self):
        return HyperNum(-self.coeffs)

    def __mul__(self, other):
        if np.isscalar(other):
            return HyperNum(self.coeffs * float(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return mul(self, other)

    def __rmul__(self, other):
        if np.isscalar(other):
            return HyperNum(self.coeffs * float(other))
        return NotImplemented

    def __truediv__(self, other):
        if np.isscalar(other):
            return HyperNum(self.coeffs / float(other))
        return NotImplemented

    def __abs__(self):
        return modulus(self)

    def __eq__(self, other):
        if not isinstance(other, HyperNum):
            return NotImplemented
        return self.dim == other.dim and bool(np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.dim, self.coeffs.tobytes()))

    def isclose(self, other: HyperNum, atol: float = EXACT_RTOL) -> bool:
        other = self._coerce(other)
        return bool(np.allclose(self.coeffs, other.coeffs, rtol=0.0, atol=atol))

    def conj(self) -> HyperNum:
        return conj(self)

    def __repr__(self):
        names = UNIT_NAMES.get(self.dim) or ["1"] + [f"e{i}" for i in range(1, self.dim)]
        terms = " ".join(f"{c:+.6g}{'' if n == '1' else n}" for c, n in zip(self.coeffs, names))
        return f"HyperNum({terms})"


def mul(x: HyperNum, y: HyperNum) -> HyperNum:
    if x.dim != y.dim:
        raise AlgebraError(f"level mismatch: {x.dim} vs {y.dim}")
    return HyperNum(hmul(x.coeffs, y.coeffs))


def conj(x: HyperNum) -> HyperNum:
    return HyperNum(hconj(x.coeffs))


def modulus(x: HyperNum) -> float:
    return float(habs(x.coeffs))


def inverse(x: HyperNum) -> HyperNum:
    """``x* / |x|^2``.

    At level 16 this is only a two-sided inverse when ``x`` is not a zero
    divisor; no check is made.
    """
    return HyperNum(hinv(x.coeffs))


def sign(x: HyperNum) -> HyperNum:
    return HyperNum(hsign(x.coeffs))


def rotate(x: HyperNum, mu: HyperNum) -> HyperNum:
    """Quaternion rotation ``mu x mu^-1`` of the vector part of ``x``."""
    if x.dim != 4 or mu.dim != 4:
        raise AlgebraError("rotate is defined for quaternions only")
    return mul(mul(mu, x), inverse(mu))


def associator(x, y, z) -> np.ndarray:
    """``(xy)z - x(yz)`` on coefficient arrays."""
    return hmul(hmul(x, y), z) - hmul(x, hmul(y, z))


def _two_unit_sums(dim: int):
    eye = np.eye(dim)
    for i, j in itertools.combinations(range(dim), 2):
        for s in (1.0, -1.0):
            yield eye[i] + s * eye[j]


def find_zero_divisor(dim: int, tol: float = 1e-12) -> tuple[HyperNum, HyperNum] | None:
    """Brute-force search for ``(u, v)`` with ``u v = 0`` among sums ``e_i +- e_j``.

    Returns ``None`` when the algebra has no such pair (all division algebras).
    """
    dim = check_level(dim)
    cands = np.array(list(_two_unit_sums(dim))) if dim > 1 else np.ones((1, 1))
    # products of every candidate pair at once
    prods = np.einsum("ai,bj,ijk->abk", cands, cands, structure_tensor(dim))
    hits = np.argwhere(np.linalg.norm(prods, axis=-1) < tol)
    if hits.size == 0:
        return None
    a, b = hits[0]
    return HyperNum(cands[a]), HyperNum(cands[b])


def require_zero_divisor(dim: int) -> tuple[HyperNum, HyperNum]:
    pair = find_zero_divisor(dim)
    if pair is None:
        raise RuntimeError(f"no zero divisor found at level {dim}; multiplication table is broken")
    return pair


def multiplication_table(dim: int) -> list[list[str]]:
    """Signed unit labels: entry ``[i][j]`` names ``e_i e_j``."""
    C = structure_tensor(dim)
    out = []
    for i in range(dim):
        row = []
        for j in range(dim):
            k = int(np.argmax(np.abs(C[i, j])))
            row.append(("-" if C[i, j, k] < 0 else "+") + ("1" if k == 0 else f"e{k}"))
        out.append(row)
    return out


def dump_table_csv(dim: int) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([""] + ["1"] + [f"e{k}" for k in range(1, dim)])
    for i, row in enumerate(multiplication_table(dim)):
        writer.writerow(["1" if i == 0 else f"e{i}"] + row)
    return buf.getvalue()
