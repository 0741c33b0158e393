"""Forward models ``y = |A x|^2``, noise and ambiguity-aware distances.

Every ensemble exposes its sensing map as a real-linear operator on aleph
coordinates (``scipy.sparse.linalg.LinearOperator`` of shape
``(dim m, dim n)``).  Row-based kinds additionally keep the hypercomplex
sensing rows ``M`` with ``z = M x``, i.e. ``M[l, j] = conj(a_l[j])``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.sparse.linalg import LinearOperator, aslinearoperator

from .algebra import AlgebraError, check_level, hconj, hmul
from .linalg import HVector, gimel_array
from .transforms import (
    DoeMask,
    Qdft2D,
    StftWindow,
    WaveletFamily,
    circulant_right,
    code_set,
    generate_doe,
    haar_family,
)

KINDS = ("gaussian_rows", "real_rows", "coded_fourier_row", "coded_fourier_2sided", "stft", "wavelet")
ROW_KINDS = ("gaussian_rows", "real_rows", "coded_fourier_row", "stft")


def as_array(x) -> np.ndarray:
    return x.data if isinstance(x, HVector) else np.asarray(x, dtype=float)


@dataclass(frozen=True, eq=False)
class MeasurementEnsemble:
    kind: str
    level: int
    n: int
    m: int
    seed: int | None = None
    params: dict = field(default_factory=dict)
    rows: np.ndarray | None = field(default=None, repr=False)  # (m, n, dim)
    doe: DoeMask | None = field(default=None, repr=False)
    qdft: Qdft2D | None = field(default=None, repr=False)
    window: StftWindow | None = field(default=None, repr=False)
    wavelets: WaveletFamily | None = field(default=None, repr=False)

    @property
    def is_row_model(self) -> bool:
        return self.rows is not None

    @cached_property
    def real_matrix(self) -> np.ndarray:
        """Dense real lift ``G`` with ``aleph(z) = G aleph(x)``."""
        if self.rows is not None:
            return gimel_array(self.rows)
        if self.wavelets is not None:
            return np.vstack([circulant_right(psi) for psi in self.wavelets.filters])
        op = self.operator
        return op.matmat(np.eye(op.shape[1]))

    @cached_property
    def operator(self) -> LinearOperator:
        dim = self.level
        shape = (dim * self.m, dim * self.n)
        if self.kind == "coded_fourier_2sided":
            return LinearOperator(shape, matvec=self._two_sided, rmatvec=self._two_sided_adjoint, dtype=float)
        return aslinearoperator(self.real_matrix)

    def _two_sided(self, v):
        N = self.qdft.N
        X = np.asarray(v, dtype=float).reshape(N, N, 4)
        return self.qdft.forward(hmul(self.doe.masks, X[None])).reshape(-1)

    def _two_sided_adjoint(self, v):
        N = self.qdft.N
        # unitary transform: inverse == adjoint
        back = self.qdft.inverse(np.asarray(v, dtype=float).reshape(-1, N, N, 4))
        return hmul(hconj(self.doe.masks), back).sum(axis=0).reshape(-1)

    def apply(self, x) -> np.ndarray:
        """Linear measurements ``z`` as an ``(m, dim)`` array."""
        x = as_array(x)
        if x.shape != (self.n, self.level):
            raise AlgebraError(f"signal shape {x.shape} does not match ensemble ({self.n}, {self.level})")
        return self.operator.matvec(x.reshape(-1)).reshape(self.m, self.level)

    def provenance(self) -> dict:
        out = {"kind": self.kind, "level": self.level, "n": self.n, "m": self.m, "seed": self.seed}
        out.update(self.params)
        return out


@dataclass(frozen=True)
class Measurements:
    y: np.ndarray
    snr_db: float | None = None
    noise_seed: int | None = None
    clamped: int = 0


def make_ensemble(
    kind: str,
    level: int = 4,
    n: int | None = None,
    m: int | None = None,
    L: int | None = None,
    d: int = 8,
    seed=0,
    shape: tuple[int, ...] | None = None,
    window: StftWindow | None = None,
    wavelets: WaveletFamily | None = None,
) -> MeasurementEnsemble:
    """Build a measurement ensemble deterministically from ``seed``.

    ``gaussian_rows`` / ``real_rows`` take ``m`` rows.  The coded Fourier
    kinds take ``L`` snapshots with ``d`` code elements; ``shape`` fixes the
    signal grid (``(N, N)`` for images, ``(n,)`` for 1-D signals).  ``stft``
    and ``wavelet`` take a window / filter family (defaults: rectangular
    window of length ``n // 2`` with hop ``T // 2``; ``L`` Haar filters).
    """
    level = check_level(level)
    if kind not in KINDS:
        raise ValueError(f"unknown ensemble kind {kind!r}")
    if kind not in ("gaussian_rows", "real_rows") and level != 4:
        raise ValueError(f"{kind} ensembles are only available for quaternions (level 4)")
    if shape is not None and n is None:
        n = int(np.prod(shape))
    if n is None or n < 1:
        raise ValueError("signal length n must be positive")
    rng = np.random.default_rng(seed)
    params: dict = {}

    if kind in ("gaussian_rows", "real_rows"):
        if m is None or m < 1:
            raise ValueError(f"{kind} needs a positive row count m")
        if kind == "gaussian_rows":
            rows = rng.standard_normal((m, n, level))
        else:
            rows = np.zeros((m, n, level))
            rows[..., 0] = rng.standard_normal((m, n))
        return MeasurementEnsemble(kind, level, n, m, seed, params, rows=rows)

    if kind in ("coded_fourier_row", "coded_fourier_2sided"):
        if L is None or L < 1:
            raise ValueError(f"{kind} needs a positive snapshot count L")
        if kind == "coded_fourier_2sided":
            N = math.isqrt(n)
            if shape is not None and (len(shape) != 2 or shape[0] != shape[1]):
                raise ValueError("two-sided Fourier model needs a square image")
            if N * N != n:
                raise ValueError("two-sided Fourier model needs n = N^2")
            doe = generate_doe(N, L, d, rng)
            params = {"L": L, "d": d, "N": N}
            return MeasurementEnsemble(kind, 4, n, n * L, seed, params, doe=doe, qdft=Qdft2D(N))
        shape = tuple(shape) if shape is not None else (n,)
        if len(shape) == 2:
            F1 = np.exp(-2j * np.pi * np.outer(np.arange(shape[0]), np.arange(shape[0])) / shape[0])
            F2 = np.exp(-2j * np.pi * np.outer(np.arange(shape[1]), np.arange(shape[1])) / shape[1])
            Fc = np.kron(F1, F2) / math.sqrt(n)
        elif len(shape) == 1:
            Fc = np.exp(-2j * np.pi * np.outer(np.arange(n), np.arange(n)) / n) / math.sqrt(n)
        else:
            raise ValueError("signal grid must be 1-D or 2-D")
        F = np.zeros((n, n, 4))
        F[..., 0], F[..., 1] = Fc.real, Fc.imag
        codes = code_set(d)[rng.integers(0, d, size=(L, n))]
        rows = hmul(F[None, :, :, :], codes[:, None, :, :]).reshape(L * n, n, 4)
        params = {"L": L, "d": d, "shape": "x".join(map(str, shape))}
        return MeasurementEnsemble(kind, 4, n, n * L, seed, params, rows=rows)

    if kind == "stft":
        win = window if window is not None else StftWindow.rectangular(n, max(1, n // 2))
        if win.N != n:
            raise ValueError("window signal length does not match n")
        rows = win.rows()
        params = {"T": win.T, "hop": win.hop, "R": win.sections}
        return MeasurementEnsemble(kind, 4, n, rows.shape[0], seed, params, rows=rows, window=win)

    fam = wavelets if wavelets is not None else haar_family(n, L or 1)
    if fam.n != n:
        raise ValueError("wavelet filters must be padded to the signal length")
    params = {"L": fam.L}
    return MeasurementEnsemble(kind, 4, n, n * fam.L, seed, params, wavelets=fam)


def forward(ens: MeasurementEnsemble, x) -> Measurements:
    z = ens.apply(x)
    return Measurements(np.sum(z * z, axis=1))


def add_noise(meas: Measurements, snr_db: float, seed=None) -> Measurements:
    """Additive white Gaussian noise at a measurement-domain SNR.

    ``snr_db = inf`` returns the measurements unchanged.  Negative noisy
    intensities are clamped to zero and counted.
    """
    if math.isinf(snr_db) and snr_db > 0:
        return meas
    if not math.isfinite(snr_db):
        raise ValueError("snr_db must be finite or +inf")
    y = np.asarray(meas.y, dtype=float)
    power = float(np.sum(y * y)) / y.size
    sigma = math.sqrt(power / 10.0 ** (snr_db / 10.0))
    noisy = y + sigma * np.random.default_rng(seed).standard_normal(y.size)
    neg = int(np.count_nonzero(noisy < 0))
    return Measurements(np.maximum(noisy, 0.0), float(snr_db), seed, neg)


def random_signal(n: int, level: int, seed=None, pure: bool = False) -> HVector:
    x = np.random.default_rng(seed).standard_normal((n, check_level(level)))
    if pure:
        x[:, 0] = 0.0
    return HVector(x)


# ---------------------------------------------------------------------------
# distances modulo a right unit factor

_QUATERNION_UNITS = np.vstack([np.eye(4), -np.eye(4)])


def best_right_factor(x, xt) -> np.ndarray:
    """Unit ``w`` minimising ``||xt - x w||`` (levels 1 to 8)."""
    x, xt = as_array(x), as_array(xt)
    if x.shape != xt.shape:
        raise AlgebraError(f"shape mismatch {x.shape} vs {xt.shape}")
    dim = x.shape[1]
    if dim == 16:
        raise AlgebraError("right-factor distance is not defined for sedenions")
    if dim == 8:
        return _octonion_factor(x, xt)
    s = hmul(hconj(x), xt).sum(axis=0)
    r = np.linalg.norm(s)
    if r == 0.0:
        cands = _QUATERNION_UNITS[:, :dim] if dim == 4 else np.vstack([np.eye(dim), -np.eye(dim)])
        errs = [np.linalg.norm(xt - hmul(x, w)) for w in cands]
        return cands[int(np.argmin(errs))]
    return s / r


def _octonion_factor(x, xt) -> np.ndarray:
    if not np.any(x):
        raise ValueError("distance reference signal is zero")
    G = gimel_array(x[:, None, :])  # (8n, 8)
    normal = G.T @ G
    rhs = G.T @ xt.reshape(-1)
    try:
        v = np.linalg.solve(normal, rhs)
    except np.linalg.LinAlgError:
        v = np.linalg.pinv(normal) @ rhs
    nv = np.linalg.norm(v)
    if nv == 0.0:
        v = np.zeros(8)
        v[0] = 1.0
        return v
    return v / nv


def distance(x, xt) -> float:
    """``min_{|w| = 1} ||xt - x w||_2``."""
    x, xt = as_array(x), as_array(xt)
    w = best_right_factor(x, xt)
    return float(np.linalg.norm(xt - hmul(x, w)))


def dist_quaternion(x, xt) -> float:
    if as_array(x).shape[-1] != 4:
        raise AlgebraError("dist_quaternion expects quaternion vectors")
    return distance(x, xt)


def dist_octonion(x, xt) -> float:
    if as_array(x).shape[-1] != 8:
        raise AlgebraError("dist_octonion expects octonion vectors")
    return distance(x, xt)


def relative_distance(x, xt) -> float:
    nx = float(np.linalg.norm(as_array(x)))
    d = distance(x, xt)
    return d / nx if nx > 0 else d


def align(x, xt) -> np.ndarray:
    """``xt w*`` with ``w`` the best right factor: ``xt`` rotated onto ``x``."""
    w = best_right_factor(x, xt)
    return hmul(as_array(xt), hconj(w))
