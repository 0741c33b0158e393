"""Wirtinger-flow family solvers for hypercomplex phase retrieval.

All solvers share one descent loop working on aleph coordinates.  Costs and
gradients follow these conventions (``z_l`` is the l-th linear measurement,
``r_l = |z_l|^2 - y_l``):

* ``qwf``: ``f = (1/2m) sum r_l^2``; the closed-form quaternion gradient
  ``(1/m) sum a_l (a_l^* x) r_l`` is half the real gradient of ``f``.
* ``qtwf``: Poisson negative log-likelihood ``(1/m) sum |z_l|^2 - y_l log|z_l|^2``
  with per-term truncation; gradient in the same (half) scaling.
* ``owf``: ``f = sum (1/2) r_l^2`` over ``R^(8n)`` with its exact real gradient.
* ``real_lift_wf``: ``f = (1/2m) sum r_l^2`` for any real-linear operator, with
  the exact real gradient.

Constant step sizes are normalised by the ensemble's mean entry energy
``rho = ||G||_F^2 / (dim m n)`` so that one ``step`` value works across
Gaussian and unitary (Fourier-type) sensing.
"""
from __future__ import annotations

import csv
import io
import math
import warnings
from collections.abc import Callable
from dataclasses import dataclass, field, replace
from typing import NamedTuple

import numpy as np

from .algebra import AlgebraError, hconj, hmul, structure_tensor
from .linalg import HMatrix, HVector, gimel, power_iteration
from .models import MeasurementEnsemble, Measurements, as_array, distance, relative_distance

ALGORITHMS = ("qwf", "qtwf", "owf", "real_lift_wf", "complex_wf_baseline")

#: Default base step per algorithm when ``SolverConfig.step`` is ``None``.
DEFAULT_STEPS = {"qwf": 0.1, "qtwf": 0.1, "owf": 0.5, "real_lift_wf": 0.3, "complex_wf_baseline": 0.2}


class SolverDiverged(FloatingPointError):
    """Iterates became non-finite; ``run`` holds the trace up to that point."""

    def __init__(self, message: str, run: SolverRun):
        super().__init__(message)
        self.run = run


@dataclass(frozen=True)
class SolverConfig:
    algorithm: str = "qwf"
    step: float | None = None
    schedule: str = "constant"  # or "backtracking"
    max_iters: int = 2000
    success_tol: float = 1e-5
    stop_tol: float = 1e-12
    stop_window: int = 10
    cost_floor: float = 1e-24  # stop once cost <= cost_floor * initial cost
    grad_tol: float = 1e-10  # stop once |grad| <= grad_tol * initial |grad|
    trim: tuple[float, float] = (0.01, 0.99)
    trim_residual: float | None = 5.0
    pure_quaternion: bool = False
    init: str = "spectral"  # "spectral", "provided" or "random"
    x0: np.ndarray | None = field(default=None, repr=False)
    scaling: str = "energy"  # spectral radius estimate: "energy", "mean" or "printed"
    power_iters: int = 1000
    power_tol: float = 1e-10
    seed: int = 0

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if self.step is not None and self.step <= 0:
            raise ValueError("step must be positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")
        if self.success_tol <= 0:
            raise ValueError("success_tol must be positive")
        if self.schedule not in ("constant", "backtracking"):
            raise ValueError(f"unknown step schedule {self.schedule!r}")
        if self.init not in ("spectral", "provided", "random"):
            raise ValueError(f"unknown init {self.init!r}")
        if self.init == "provided" and self.x0 is None:
            raise ValueError("init='provided' needs x0")

    @property
    def base_step(self) -> float:
        return self.step if self.step is not None else DEFAULT_STEPS[self.algorithm]


@dataclass
class SolverRun:
    estimate: HVector
    init: HVector
    cost: np.ndarray
    grad_norm: np.ndarray
    distance: np.ndarray | None
    iterations: int
    converged: bool
    status: str

    def relative_error(self, truth) -> float:
        return relative_distance(truth, self.estimate)

    def succeeded(self, truth, tol: float = 1e-5) -> bool:
        return self.relative_error(truth) < tol

    def trace_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["iteration", "cost", "distance", "grad_norm"])
        for i in range(len(self.cost)):
            d = "" if self.distance is None else f"{self.distance[i]:.17g}"
            w.writerow([i, f"{self.cost[i]:.17g}", d, f"{self.grad_norm[i]:.17g}"])
        return buf.getvalue()


class InitResult(NamedTuple):
    x0: HVector
    scale: float
    eigenvalue: float
    degenerate: bool


def _y(y) -> np.ndarray:
    return np.asarray(y.y if isinstance(y, Measurements) else y, dtype=float)


def entry_energy(ens: MeasurementEnsemble) -> float:
    """Mean squared modulus of a sensing entry, ``||G||_F^2 / (dim m n)``."""
    if ens.rows is not None:
        return float(np.sum(ens.rows**2) / (ens.m * ens.n))
    if ens.kind == "coded_fourier_2sided":
        # unit-modulus codes followed by a unitary transform
        return 1.0 / ens.n
    G = ens.real_matrix
    return float(np.sum(G * G) / (ens.level * ens.m * ens.n))


# ---------------------------------------------------------------------------
# spectral initialisation


def spectral_matrix(ens: MeasurementEnsemble, y) -> HMatrix:
    """``Y = (1/m) sum_l y_l a_l a_l^*`` for a row ensemble."""
    if ens.rows is None:
        raise AlgebraError(f"{ens.kind} ensembles have no a_l a_l^* form")
    y = _y(y)
    a = hconj(ens.rows)  # a_l[j] = conj(M[l, j])
    # W[p, q, i, j] = (1/m) sum_l y_l a_l[i]_p conj(a_l[j])_q
    W = np.einsum("lip,l,ljq->pqij", a, y, ens.rows, optimize=True) / ens.m
    Y = np.einsum("pqij,pqk->ijk", W, structure_tensor(ens.level), optimize=True)
    return HMatrix(Y)


def _radius(ens, y, how: str) -> float:
    if how == "energy":
        return math.sqrt(max(float(np.mean(y)), 0.0) / entry_energy(ens))
    if how == "mean":
        return math.sqrt(max(float(np.mean(y)), 0.0))
    if how == "printed":
        return math.sqrt(float(np.mean(y * y)))
    raise ValueError(f"unknown scaling {how!r}")


def spectral_init(ens: MeasurementEnsemble, y, cfg: SolverConfig | None = None) -> InitResult:
    """Leading eigenvector of ``Y`` scaled by an estimate of ``||x||``.

    ``Y`` is assembled as a hypercomplex matrix and its leading eigenvector is
    found by power iteration on the real representation.  The radius defaults
    to ``sqrt(mean(y) / rho)``; ``scaling="mean"`` gives ``sqrt(mean(y))``.
    Ensembles without a row form fall back to a random start with a warning.
    """
    cfg = cfg or SolverConfig()
    y = _y(y)
    n, dim = ens.n, ens.level
    if not np.any(y > 0):
        warnings.warn("all measurements are zero; returning the zero vector", RuntimeWarning)
        return InitResult(HVector.zeros(n, dim), 0.0, 0.0, True)
    if ens.rows is None:
        warnings.warn(f"{ens.kind} has no row form; using a random start", RuntimeWarning)
        return InitResult(HVector(_random_start(ens, y, cfg)), _radius(ens, y, cfg.scaling), 0.0, False)
    return _leading(gimel(spectral_matrix(ens, y)), ens, y, cfg)


def lifted_spectral_init(ens: MeasurementEnsemble, y, cfg: SolverConfig | None = None) -> InitResult:
    """Spectral start for any ensemble from ``(1/m) sum_l y_l G_l^T G_l``.

    ``G_l`` is the ``dim x dim n`` block of the real lift producing the l-th
    measurement.  For row ensembles this equals ``gimel(Y)``.
    """
    cfg = cfg or SolverConfig()
    y = _y(y)
    n, dim = ens.n, ens.level
    if not np.any(y > 0):
        return InitResult(HVector.zeros(n, dim), 0.0, 0.0, True)
    G = ens.real_matrix.reshape(ens.m, dim, n * dim)
    S = np.einsum("l,lab,lac->bc", y, G, G, optimize=True) / ens.m
    return _leading(S, ens, y, cfg)


def _leading(S, ens, y, cfg) -> InitResult:
    v, lam, ok, _ = power_iteration(S, cfg.power_iters, cfg.power_tol, cfg.seed)
    if not ok:
        warnings.warn("power method did not converge", RuntimeWarning)
    r = _radius(ens, y, cfg.scaling)
    return InitResult(HVector(v.reshape(ens.n, ens.level) * r), r, lam, False)


def _random_start(ens, y, cfg) -> np.ndarray:
    x0 = np.random.default_rng(cfg.seed).standard_normal((ens.n, ens.level))
    return x0 * _radius(ens, y, cfg.scaling) / np.linalg.norm(x0)


# ---------------------------------------------------------------------------
# costs and gradients


def _residuals(ens, y, x):
    z = ens.apply(x)
    return z, np.sum(z * z, axis=1) - y


def qwf_cost(ens: MeasurementEnsemble, y, xt) -> float:
    _, r = _residuals(ens, _y(y), as_array(xt))
    return float(np.sum(r * r) / (2 * ens.m))


def qwf_gradient(ens: MeasurementEnsemble, y, xt) -> HVector:
    """``(1/m) sum_l a_l (a_l^* x) (|a_l^* x|^2 - y_l)`` in quaternion arithmetic."""
    if ens.rows is None or ens.level != 4:
        raise AlgebraError("qwf_gradient needs a quaternion row ensemble")
    y = _y(y)
    x = as_array(xt)
    a = hconj(ens.rows)
    z = hmul(ens.rows, x[None, :, :]).sum(axis=1)  # a_l^* x
    r = np.sum(z * z, axis=1) - y
    g = hmul(a, (r[:, None] * z)[:, None, :]).sum(axis=0) / ens.m
    return HVector(g)


def _keep_mask(y, z2, trim, trim_residual, xnorm2, rho):
    mag = np.sqrt(z2)
    lo, hi = np.quantile(mag, trim)
    keep = (mag >= lo) & (mag <= hi) & (z2 > 0)
    if trim_residual is not None and xnorm2 > 0:
        res = np.abs(y - z2)
        bound = trim_residual * np.mean(res) * mag / math.sqrt(rho * xnorm2)
        keep &= res <= bound
    return keep


def qtwf_cost(ens: MeasurementEnsemble, y, xt) -> float:
    y = _y(y)
    z = ens.apply(as_array(xt))
    z2 = np.sum(z * z, axis=1)
    with np.errstate(divide="ignore"):
        logs = np.where(y > 0, y * np.log(np.where(z2 > 0, z2, 1.0)), 0.0)
    return float(np.sum(z2 - logs) / ens.m)


def qtwf_gradient(ens: MeasurementEnsemble, y, xt, trim=(0.0, 1.0), trim_residual=None) -> HVector:
    """Truncated Poisson gradient ``(1/m) sum_kept (1 - y_l/|z_l|^2) a_l z_l``."""
    y = _y(y)
    x = as_array(xt)
    v = x.reshape(-1)
    z = ens.apply(x)
    z2 = np.sum(z * z, axis=1)
    keep = _keep_mask(y, z2, trim, trim_residual, float(v @ v), entry_energy(ens))
    w = np.zeros_like(z2)
    w[keep] = 1.0 - y[keep] / z2[keep]
    g = ens.operator.rmatvec((w[:, None] * z).reshape(-1)) / ens.m
    return HVector(g.reshape(x.shape))


def owf_cost(ens: MeasurementEnsemble, y, v) -> float:
    """``sum_l (1/2)(||gimel(a_l^*) v||^2 - y_l)^2`` for real coordinates ``v``."""
    y = _y(y)
    z = ens.operator.matvec(np.asarray(v, dtype=float).reshape(-1)).reshape(ens.m, ens.level)
    r = np.sum(z * z, axis=1) - y
    return float(0.5 * np.sum(r * r))


def owf_gradient(ens: MeasurementEnsemble, y, v) -> np.ndarray:
    """Exact gradient ``2 sum_l r_l gimel(a_l^*)^T gimel(a_l^*) v`` of :func:`owf_cost`.

    The printed form omits the factor 2; :func:`owf_solve` halves its step
    to compensate, so iterates match the printed update.
    """
    y = _y(y)
    z = ens.operator.matvec(np.asarray(v, dtype=float).reshape(-1)).reshape(ens.m, ens.level)
    r = np.sum(z * z, axis=1) - y
    return 2.0 * ens.operator.rmatvec((r[:, None] * z).reshape(-1))


def real_lift_cost(op, y, v, dim: int) -> float:
    y = _y(y)
    z = op.matvec(np.asarray(v, dtype=float)).reshape(-1, dim)
    r = np.sum(z * z, axis=1) - y
    return float(np.sum(r * r) / (2 * y.size))


def real_lift_gradient(op, y, v, dim: int) -> np.ndarray:
    """Exact real gradient of ``(1/2m) sum (||B_l v||^2 - y_l)^2``."""
    y = _y(y)
    z = op.matvec(np.asarray(v, dtype=float)).reshape(-1, dim)
    r = np.sum(z * z, axis=1) - y
    return 2.0 * op.rmatvec((r[:, None] * z).reshape(-1)) / y.size


def check_adjoint(op, trials: int = 3, seed: int = 0, tol: float = 1e-10) -> float:
    """Largest relative mismatch of ``<L u, v>`` vs ``<u, L^T v>`` on random probes."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        u = rng.standard_normal(op.shape[1])
        v = rng.standard_normal(op.shape[0])
        lhs = float(op.matvec(u) @ v)
        rhs = float(u @ op.rmatvec(v))
        worst = max(worst, abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300))
    if worst > tol:
        raise ValueError(f"operator adjoint check failed (relative mismatch {worst:.2e})")
    return worst


def project_pure_quaternion(xt) -> HVector:
    x = np.array(as_array(xt), dtype=float)
    if x.shape[-1] != 4:
        raise AlgebraError("pure projection is defined for quaternion vectors")
    x[..., 0] = 0.0
    return HVector(x)


# ---------------------------------------------------------------------------
# descent loop


def _descend(
    x0: np.ndarray,
    objective: Callable[[np.ndarray], tuple[float, np.ndarray]],
    step: float,
    cfg: SolverConfig,
    truth=None,
    project: Callable[[np.ndarray], np.ndarray] | None = None,
    ramp: Callable[[int], float] | None = None,
    floor: bool = True,
) -> SolverRun:
    shape = x0.shape
    v = x0.reshape(-1).astype(float).copy()
    costs, gnorms, dists = [], [], []
    status, converged = "max_iters", False

    def record(c, g):
        costs.append(c)
        gnorms.append(float(np.linalg.norm(g)))
        if truth is not None:
            dists.append(distance(truth, v.reshape(shape)))

    def snapshot(st, conv):
        return SolverRun(
            estimate=HVector(v.reshape(shape)) if np.all(np.isfinite(v)) else HVector(np.zeros(shape)),
            init=HVector(x0),
            cost=np.array(costs),
            grad_norm=np.array(gnorms),
            distance=np.array(dists) if truth is not None else None,
            iterations=max(len(costs) - 1, 0),
            converged=conv,
            status=st,
        )

    f, g = objective(v)
    record(f, g)
    it = 0
    for it in range(1, cfg.max_iters + 1):
        if cfg.schedule == "backtracking":
            eta, g2 = step, float(g @ g)
            while True:
                cand = v - eta * g
                if project is not None:
                    cand = project(cand)
                fc, gc = objective(cand)
                if fc <= f - 1e-4 * eta * g2 or eta < 1e-20:
                    break
                eta *= 0.5
            v, f, g = cand, fc, gc
        else:
            v = v - (step if ramp is None else step * ramp(it)) * g
            if project is not None:
                v = project(v)
            f, g = objective(v)
        if not (np.isfinite(f) and np.all(np.isfinite(v))):
            costs.append(float("nan"))
            gnorms.append(float("nan"))
            if truth is not None:
                dists.append(float("nan"))
            raise SolverDiverged(f"non-finite iterate at iteration {it}", snapshot("diverged", False))
        record(f, g)
        if (floor and f <= cfg.cost_floor * costs[0]) or gnorms[-1] <= cfg.grad_tol * gnorms[0]:
            status, converged = "converged", True
            break
        # a plateau in the cost only signals convergence when its minimum is zero
        if floor and it >= cfg.stop_window:
            prev = costs[-1 - cfg.stop_window]
            if abs(prev - f) <= cfg.stop_tol * max(abs(prev), np.finfo(float).tiny):
                status, converged = "converged", True
                break
    return snapshot(status, converged)


def _initial(ens: MeasurementEnsemble, y, cfg: SolverConfig, lifted: bool = False) -> np.ndarray:
    if cfg.init == "provided":
        x0 = np.array(as_array(cfg.x0), dtype=float)
        if x0.shape != (ens.n, ens.level):
            raise ValueError(f"x0 has shape {x0.shape}, expected {(ens.n, ens.level)}")
        return x0
    if cfg.init == "random":
        return _random_start(ens, _y(y), cfg)
    init = lifted_spectral_init if lifted else spectral_init
    return np.array(init(ens, y, cfg).x0.data)


def _step_for(ens, x0, cfg, per_term: bool = True) -> float:
    rho = entry_energy(ens)
    nx2 = float(np.sum(x0 * x0))
    if nx2 == 0.0:
        return 0.0
    step = cfg.base_step / (rho * rho * nx2)
    return step if per_term else step / ens.m


def _require_rows(ens, level, name):
    if ens.rows is None:
        raise AlgebraError(f"{name} needs a row ensemble, got {ens.kind}")
    if ens.level != level:
        raise AlgebraError(f"{name} needs level {level}, got {ens.level}")


def _zero_run(ens, x0, truth) -> SolverRun:
    d = None if truth is None else np.array([distance(truth, x0)])
    return SolverRun(HVector(x0), HVector(x0), np.array([0.0]), np.array([0.0]), d, 0, True, "degenerate")


def qwf_solve(ens: MeasurementEnsemble, y, cfg: SolverConfig | None = None, truth=None) -> SolverRun:
    """Quaternion Wirtinger flow: spectral init then ``x <- x - eta grad``."""
    cfg = cfg or SolverConfig()
    _require_rows(ens, 4, "qwf")
    y = _y(y)
    x0 = _initial(ens, y, cfg)
    if cfg.pure_quaternion:
        x0[:, 0] = 0.0
    if not np.any(x0):
        return _zero_run(ens, x0, truth)
    op, m = ens.operator, ens.m

    def objective(v):
        z = op.matvec(v).reshape(m, 4)
        r = np.sum(z * z, axis=1) - y
        return float(r @ r / (2 * m)), op.rmatvec((r[:, None] * z).reshape(-1)) / m

    project = _pure_projector if cfg.pure_quaternion else None
    return _descend(x0, objective, _step_for(ens, x0, cfg), cfg, truth, project)


def _pure_projector(v):
    v = v.copy()
    v[0::4] = 0.0
    return v


def qtwf_solve(ens: MeasurementEnsemble, y, cfg: SolverConfig | None = None, truth=None) -> SolverRun:
    """Truncated Poisson-likelihood variant of QWF."""
    cfg = cfg or SolverConfig(algorithm="qtwf")
    _require_rows(ens, 4, "qtwf")
    y = _y(y)
    if np.any(y < 0):
        raise ValueError("qtwf needs non-negative measurements")
    x0 = _initial(ens, y, cfg)
    if cfg.pure_quaternion:
        x0[:, 0] = 0.0
    if not np.any(x0):
        return _zero_run(ens, x0, truth)
    op, m = ens.operator, ens.m
    rho = entry_energy(ens)
    safe_log = np.where(y > 0, y, 0.0)

    def objective(v):
        z = op.matvec(v).reshape(m, 4)
        z2 = np.sum(z * z, axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            logs = np.where(safe_log > 0, safe_log * np.log(np.where(z2 > 0, z2, 1.0)), 0.0)
        keep = _keep_mask(y, z2, cfg.trim, cfg.trim_residual, float(v @ v), rho)
        w = np.zeros(m)
        w[keep] = 1.0 - y[keep] / z2[keep]
        return float(np.sum(z2 - logs) / m), op.rmatvec((w[:, None] * z).reshape(-1)) / m

    project = _pure_projector if cfg.pure_quaternion else None
    # the Poisson cost has a non-zero (possibly negative) minimum: stop on the gradient only
    return _descend(x0, objective, cfg.base_step / rho, cfg, truth, project, floor=False)


def owf_solve(ens: MeasurementEnsemble, y, cfg: SolverConfig | None = None, truth=None) -> SolverRun:
    """Octonion Wirtinger flow over the real representation ``R^(8n)``."""
    cfg = cfg or SolverConfig(algorithm="owf")
    _require_rows(ens, 8, "owf")
    y = _y(y)
    # without associativity gimel(a a^*) differs from gimel(a^*)^T gimel(a^*);
    # the latter is the spectral matrix of the real-representation cost
    x0 = _initial(ens, y, cfg, lifted=True)
    if not np.any(x0):
        return _zero_run(ens, x0, truth)
    op, m = ens.operator, ens.m

    def objective(v):
        z = op.matvec(v).reshape(m, 8)
        r = np.sum(z * z, axis=1) - y
        return float(0.5 * r @ r), 2.0 * op.rmatvec((r[:, None] * z).reshape(-1))

    step = 0.5 * _step_for(ens, x0, cfg, per_term=False)
    return _descend(x0, objective, step, cfg, truth)


def real_lift_solve(ens: MeasurementEnsemble, y, cfg: SolverConfig | None = None, truth=None) -> SolverRun:
    """Gradient descent on the lifted squared-intensity cost of any ensemble."""
    cfg = cfg or SolverConfig(algorithm="real_lift_wf")
    y = _y(y)
    op, m, dim = ens.operator, ens.m, ens.level
    check_adjoint(op, seed=cfg.seed)
    x0 = _initial(ens, y, cfg, lifted=True)
    if cfg.pure_quaternion and dim == 4:
        x0[:, 0] = 0.0
    if not np.any(x0):
        return _zero_run(ens, x0, truth)

    def objective(v):
        z = op.matvec(v).reshape(m, dim)
        r = np.sum(z * z, axis=1) - y
        return float(r @ r / (2 * m)), 2.0 * op.rmatvec((r[:, None] * z).reshape(-1)) / m

    # the exact real gradient is twice the closed-form scale used by qwf
    step = 0.5 * _step_for(ens, x0, cfg)
    project = _pure_projector if (cfg.pure_quaternion and dim == 4) else None
    return _descend(x0, objective, step, cfg, truth, project)


# ---------------------------------------------------------------------------
# real / complex baselines


def wf_solve(A: np.ndarray, y, cfg: SolverConfig | None = None, truth=None) -> SolverRun:
    """Classical Wirtinger flow for a real or complex sensing matrix.

    The step follows the usual ramp ``min(1 - exp(-t / 330), step) / ||x0||^2``.

    Signals are returned as level-1 (real ``A``) or level-2 (complex ``A``)
    vectors so the common distance machinery applies.
    """
    cfg = cfg or SolverConfig(algorithm="complex_wf_baseline")
    A = np.asarray(A)
    y = _y(y)
    m, n = A.shape
    is_complex = np.iscomplexobj(A)
    dim = 2 if is_complex else 1
    rho = float(np.mean(np.abs(A) ** 2))

    def to_vec(v):
        return v.view(complex) if is_complex else v

    def to_real(c):
        return np.ascontiguousarray(c).view(float) if is_complex else c

    if not np.any(y > 0):
        x0 = np.zeros((n, dim))
        return _zero_run(None, x0, truth)
    if cfg.init == "provided":
        x0 = np.array(as_array(cfg.x0), dtype=float).reshape(n, dim)
    else:
        S = (A.conj().T * y) @ A / m
        if is_complex:
            S = np.block([[S.real, -S.imag], [S.imag, S.real]])
        v, _, _, _ = power_iteration(S, cfg.power_iters, cfg.power_tol, cfg.seed)
        if is_complex:
            v = v[:n] + 1j * v[n:]
            v = to_real(v)
        r = math.sqrt(float(np.mean(y)) / rho)
        x0 = (v / np.linalg.norm(v) * r).reshape(n, dim)

    def objective(v):
        z = A @ to_vec(v)
        r = np.abs(z) ** 2 - y
        g = A.conj().T @ (r * z) / m
        return float(r @ r / (2 * m)), to_real(g).astype(float)

    step = 1.0 / (rho * rho * float(np.sum(x0 * x0)))
    if not is_complex:
        step *= 0.5
    return _descend(x0, objective, step, cfg, truth, ramp=lambda t: min(1.0 - math.exp(-t / 330.0), cfg.base_step))


def complex_wf_baseline(ens_or_A, y, cfg: SolverConfig | None = None, truth=None, seed=0) -> SolverRun:
    """Concatenation baseline: a quaternion signal flattened to ``R^(4n)`` and
    treated as a complex vector sensed by a complex Gaussian matrix.

    ``ens_or_A`` is either a complex ``(m, 4n)`` matrix or an integer ``m``
    (a fresh complex normal matrix is drawn from ``seed``).  ``y`` are the
    intensities of that matrix applied to the flattened signal.  The returned
    estimate is mapped back to an ``(n, 4)`` quaternion vector after removing
    the global phase that makes it closest to real.
    """
    A = _complex_matrix(ens_or_A, truth, seed)
    n4 = A.shape[1]
    flat_truth = None if truth is None else np.stack([as_array(truth).reshape(-1), np.zeros(n4)], axis=1)
    run = wf_solve(A, y, cfg or SolverConfig(algorithm="complex_wf_baseline"), flat_truth)
    c = run.estimate.data[:, 0] + 1j * run.estimate.data[:, 1]
    s = np.sum(c * c)
    phase = np.exp(-0.5j * np.angle(s)) if abs(s) > 0 else 1.0
    q = (c * phase).real.reshape(-1, 4)
    return replace(run, estimate=HVector(q), init=HVector(run.init.data[:, 0].reshape(-1, 4)))


def _complex_matrix(ens_or_A, truth, seed):
    if isinstance(ens_or_A, (int, np.integer)):
        if truth is None:
            raise ValueError("need the signal size to draw a baseline matrix")
        n4 = as_array(truth).size
        return complex_gaussian(int(ens_or_A), n4, seed)
    return np.asarray(ens_or_A)


def complex_gaussian(m: int, n: int, seed=None) -> np.ndarray:
    """``CN(0, 1)`` entries: independent real and imaginary parts of variance 1/2."""
    rng = np.random.default_rng(seed)
    return (rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))) / math.sqrt(2.0)


def channelwise_wf_baseline(x_channels_measured, cfg: SolverConfig | None = None) -> np.ndarray:
    """Independent real WF per channel.

    ``x_channels_measured`` is a list of ``(A_c, y_c)`` pairs, one per channel.
    Each recovered channel is sign-corrected so that its sum is non-negative.
    Returns an ``(n, channels)`` array.
    """
    cfg = cfg or SolverConfig(algorithm="complex_wf_baseline")
    cols = []
    for A, y in x_channels_measured:
        try:
            est = wf_solve(np.asarray(A, dtype=float), y, cfg).estimate.data[:, 0]
        except SolverDiverged:
            est = np.zeros(np.asarray(A).shape[1])
        cols.append(est if est.sum() >= 0 else -est)
    return np.stack(cols, axis=1)


def solve(ens: MeasurementEnsemble, y, cfg: SolverConfig, truth=None) -> SolverRun:
    """Dispatch on ``cfg.algorithm``."""
    if cfg.algorithm == "qwf":
        return qwf_solve(ens, y, cfg, truth)
    if cfg.algorithm == "qtwf":
        return qtwf_solve(ens, y, cfg, truth)
    if cfg.algorithm == "owf":
        return owf_solve(ens, y, cfg, truth)
    if cfg.algorithm == "real_lift_wf":
        return real_lift_solve(ens, y, cfg, truth)
    raise ValueError(f"{cfg.algorithm} is not an ensemble solver; use complex_wf_baseline directly")
