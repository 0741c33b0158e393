"""Hypercomplex Fourier-family operators used as structured sensing.

All transforms are evaluated directly (matrix products or separable sums);
no fast algorithms are attempted.  Quaternion images are ``(N, N, 4)``
coefficient arrays, octonion volumes ``(N, N, N, 8)``.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .algebra import AlgebraError, basis, hconj, hmul, left_matrix, right_matrix
from .linalg import HMatrix, matmul_array

#: Ordered quaternion coding alphabet; a ``d``-element code set is a prefix.
QUATERNION_CODES = np.array(
    [
        [1, 0, 0, 0],
        [-1, 0, 0, 0],
        [0, 1, 0, 0],
        [0, -1, 0, 0],
        [0, 0, 1, 0],
        [0, 0, -1, 0],
        [0, 0, 0, 1],
        [0, 0, 0, -1],
    ],
    dtype=float,
)


def unit_exponential(unit: int, theta, dim: int) -> np.ndarray:
    """``exp(e_unit * theta)`` as coefficient arrays, broadcasting over ``theta``."""
    theta = np.asarray(theta, dtype=float)
    out = np.zeros(theta.shape + (dim,))
    out[..., 0] = np.cos(theta)
    out[..., unit] = np.sin(theta)
    return out


def dft_matrix(N: int, unit: int, dim: int = 4) -> np.ndarray:
    """Unitary 1-D DFT matrix ``exp(-mu 2 pi r s / N) / sqrt(N)`` over unit ``mu``."""
    r = np.arange(N)
    return unit_exponential(unit, -2.0 * np.pi * np.outer(r, r) / N, dim) / math.sqrt(N)


@dataclass(frozen=True)
class Qdft2D:
    """Two-sided 2-D quaternion DFT: ``S = F_i X F_j``.

    Rows are paired with the ``i`` exponential (left) and columns with the
    ``j`` exponential (right).  ``norm="unitary"`` scales by ``1/sqrt(N)`` per
    side; ``norm="printed"`` uses the overall ``1/N^2`` of the double-sum form.
    """

    N: int
    norm: str = "unitary"
    F_i: np.ndarray = field(init=False, repr=False)
    F_j: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.norm not in ("unitary", "printed"):
            raise ValueError(f"unknown normalization {self.norm!r}")
        object.__setattr__(self, "F_i", dft_matrix(self.N, 1))
        object.__setattr__(self, "F_j", dft_matrix(self.N, 2))

    @property
    def scale(self) -> float:
        return 1.0 if self.norm == "unitary" else 1.0 / self.N

    def matrices(self) -> tuple[HMatrix, HMatrix]:
        return HMatrix(self.F_i), HMatrix(self.F_j)

    def _check(self, X):
        X = np.asarray(X, dtype=float)
        if X.shape[-3:] != (self.N, self.N, 4):
            raise AlgebraError(f"expected ({self.N}, {self.N}, 4) quaternion images, got {X.shape}")
        return X

    @cached_property
    def _ops(self):
        Fi_h = hconj(self.F_i.transpose(1, 0, 2))
        Fj_h = hconj(self.F_j.transpose(1, 0, 2))
        return left_matrix(self.F_i), right_matrix(self.F_j), left_matrix(Fi_h), right_matrix(Fj_h)

    @staticmethod
    def _sandwich(Lm, Rm, X):
        Y = np.einsum("rqab,...qcb->...rca", Lm, X, optimize=True)
        return np.einsum("csab,...rcb->...rsa", Rm, Y, optimize=True)

    def forward(self, X) -> np.ndarray:
        """Spectrum of one image or a stack of images along leading axes."""
        Li, Rj, _, _ = self._ops
        return self.scale * self._sandwich(Li, Rj, self._check(X))

    def inverse(self, S) -> np.ndarray:
        _, _, Li_h, Rj_h = self._ops
        return self._sandwich(Li_h, Rj_h, self._check(S)) / self.scale


def qdft2d_forward(X, norm: str = "unitary") -> np.ndarray:
    X = np.asarray(X, dtype=float)
    if X.ndim != 3 or X.shape[0] != X.shape[1]:
        raise AlgebraError(f"QDFT needs a square quaternion image, got {X.shape}")
    return Qdft2D(X.shape[0], norm).forward(X)


def qdft2d_inverse(S, norm: str = "unitary") -> np.ndarray:
    S = np.asarray(S, dtype=float)
    if S.ndim != 3 or S.shape[0] != S.shape[1]:
        raise AlgebraError(f"QDFT needs a square quaternion spectrum, got {S.shape}")
    return Qdft2D(S.shape[0], norm).inverse(S)


def odft3d_forward(f) -> np.ndarray:
    """3-D octonion DFT with units ``e1, e2, e4`` and ``1/N^3`` scaling.

    Each term is associated as ``((f E1) E2) E4``; since right multiplication
    by a fixed octonion is linear the triple sum separates axis by axis.
    """
    f = np.asarray(f, dtype=float)
    if f.ndim != 4 or f.shape[3] != 8 or not (f.shape[0] == f.shape[1] == f.shape[2]):
        raise AlgebraError(f"ODFT needs an (N, N, N, 8) octonion volume, got {f.shape}")
    N = f.shape[0]
    n = np.arange(N)
    out = f
    for axis, unit in enumerate((1, 2, 4)):
        E = unit_exponential(unit, -2.0 * np.pi * np.outer(n, n) / N, 8)  # (k, n, 8)
        R = right_matrix(E)  # (k, n, 8, 8)
        out = np.moveaxis(out, axis, 0)  # (n, ..., 8)
        out = np.einsum("knpq,n...q->k...p", R, out, optimize=True)
        out = np.moveaxis(out, 0, axis)
    return out / N**3


# ---------------------------------------------------------------------------
# DOE coding


@dataclass(frozen=True)
class DoeMask:
    N: int
    L: int
    code_set: np.ndarray
    masks: np.ndarray  # (L, N, N, 4)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["snapshot", "row", "col", "a", "b", "c", "d"])
        for k, r, c in np.ndindex(self.L, self.N, self.N):
            w.writerow([k, r, c, *(f"{v:g}" for v in self.masks[k, r, c])])
        return buf.getvalue()


def code_set(d: int) -> np.ndarray:
    if not 1 <= d <= len(QUATERNION_CODES):
        raise ValueError(f"number of coding elements must be in 1..8, got {d}")
    return QUATERNION_CODES[:d].copy()


def generate_doe(N: int, L: int, d: int, seed) -> DoeMask:
    """``L`` masks of i.i.d. uniform draws from the first ``d`` quaternion codes."""
    codes = code_set(d)
    rng = np.random.default_rng(seed)
    idx = rng.integers(0, d, size=(L, N, N))
    return DoeMask(N, L, codes, codes[idx])


# ---------------------------------------------------------------------------
# quaternion STFT


@dataclass(frozen=True)
class StftWindow:
    window: np.ndarray  # (T, 4)
    N: int
    hop: int

    def __post_init__(self):
        w = np.asarray(self.window, dtype=float)
        if w.ndim != 2 or w.shape[1] != 4:
            raise AlgebraError("window must be a (T, 4) quaternion array")
        if w.shape[0] > self.N:
            raise ValueError(f"window length {w.shape[0]} exceeds signal length {self.N}")
        if self.hop < 1:
            raise ValueError("hop must be positive")
        object.__setattr__(self, "window", w)

    @classmethod
    def rectangular(cls, N: int, T: int, hop: int | None = None) -> StftWindow:
        w = np.zeros((T, 4))
        w[:, 0] = 1.0
        return cls(w, N, hop if hop is not None else max(1, T // 2))

    @property
    def T(self) -> int:
        return self.window.shape[0]

    @property
    def sections(self) -> int:
        return math.ceil((self.N + self.T - 1) / self.hop)

    def shifted(self) -> np.ndarray:
        """Diagonals of every ``W_r``: entry ``[r, q] = w[(r hop - q) mod N]``."""
        pad = np.zeros((self.N, 4))
        pad[: self.T] = self.window
        r = np.arange(self.sections)[:, None]
        q = np.arange(self.N)[None, :]
        return pad[(r * self.hop - q) % self.N]

    def rows(self) -> np.ndarray:
        """Sensing rows ``f_s^* W_r`` stacked as an ``(R N, N, 4)`` array."""
        F = dft_matrix(self.N, 1)  # (s, q, 4)
        W = self.shifted()  # (r, q, 4)
        M = hmul(F[None, :, :, :], W[:, None, :, :])  # (r, s, q, 4)
        return M.reshape(self.sections * self.N, self.N, 4)


def qstft_measure(x, win: StftWindow) -> np.ndarray:
    """``Y[r, s] = sum_q F[s, q] w[(r hop - q) mod N] x[q]``, shape ``(R, N, 4)``."""
    x = np.asarray(x, dtype=float)
    if x.shape != (win.N, 4):
        raise AlgebraError(f"expected ({win.N}, 4) signal, got {x.shape}")
    windowed = hmul(win.shifted(), x[None, :, :])  # (r, q, 4)
    F = dft_matrix(win.N, 1)
    return np.stack([matmul_array(F, wx[:, None, :])[:, 0] for wx in windowed])


# ---------------------------------------------------------------------------
# quaternion wavelets


@dataclass(frozen=True)
class WaveletFamily:
    filters: np.ndarray  # (L, n, 4), zero padded
    scales: tuple = ()
    angles: tuple = ()

    def __post_init__(self):
        f = np.asarray(self.filters, dtype=float)
        if f.ndim != 3 or f.shape[2] != 4 or f.shape[0] < 1:
            raise AlgebraError("filters must be a non-empty (L, n, 4) array")
        object.__setattr__(self, "filters", f)

    @property
    def L(self) -> int:
        return self.filters.shape[0]

    @property
    def n(self) -> int:
        return self.filters.shape[1]

    @classmethod
    def from_taps(cls, taps, n: int) -> WaveletFamily:
        """Zero-pad a list of ``(T_k, 4)`` quaternion tap arrays to length ``n``."""
        out = np.zeros((len(taps), n, 4))
        for k, t in enumerate(taps):
            t = np.asarray(t, dtype=float)
            if t.shape[0] > n:
                raise ValueError("filter longer than the signal")
            out[k, : t.shape[0]] = t
        return cls(out)


def haar_family(n: int, L: int) -> WaveletFamily:
    """Real Haar filters embedded as quaternions.

    With ``L == 1`` a single detail pair.  Otherwise details at dyadic
    lengths ``2, 4, ..., 2^(L-1)`` followed by the averaging filter of length
    ``2^(L-1)``.
    """
    if L < 1:
        raise ValueError("need at least one filter")
    taps, scales = [], []
    n_detail = 1 if L == 1 else L - 1
    for s in range(1, n_detail + 1):
        T = 2**s
        h = np.zeros((T, 4))
        h[: T // 2, 0] = 1.0
        h[T // 2 :, 0] = -1.0
        taps.append(h / math.sqrt(T))
        scales.append(T)
    if L > 1:
        T = 2 ** (L - 1)
        h = np.zeros((T, 4))
        h[:, 0] = 1.0 / math.sqrt(T)
        taps.append(h)
        scales.append(T)
    fam = WaveletFamily.from_taps(taps, n)
    return WaveletFamily(fam.filters, tuple(scales), tuple(0.0 for _ in scales))


def delta_family(n: int) -> WaveletFamily:
    return WaveletFamily.from_taps([basis(4, 0)[None, :]], n)


def circulant_right(psi) -> np.ndarray:
    """Real matrix of ``x -> (sum_p x[p] psi[(r - p) mod n])_r``; shape ``(4n, 4n)``."""
    psi = np.asarray(psi, dtype=float)
    n = psi.shape[0]
    r = np.arange(n)[:, None]
    p = np.arange(n)[None, :]
    blocks = right_matrix(psi[(r - p) % n])  # (r, p, 4, 4)
    return blocks.transpose(0, 2, 1, 3).reshape(4 * n, 4 * n)


def qwt_measure(x, fam: WaveletFamily) -> np.ndarray:
    """Circular convolutions ``x * psi_k`` (signal sample on the left), ``(L, n, 4)``."""
    x = np.asarray(x, dtype=float)
    if x.shape != (fam.n, 4):
        raise AlgebraError(f"expected ({fam.n}, 4) signal, got {x.shape}")
    n = fam.n
    r = np.arange(n)[:, None]
    p = np.arange(n)[None, :]
    out = []
    for psi in fam.filters:
        out.append(hmul(x[None, :, :], psi[(r - p) % n]).sum(axis=1))
    return np.stack(out)
