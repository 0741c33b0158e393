"""Recovering a quaternion signal from intensity-only measurements.

The measurements ``|<a_l, x>|^2`` lose a global right unit factor, so the
error is measured up to that factor.
"""
# %% Problem
from hyperpr import SolverConfig, forward, make_ensemble, relative_distance, solve
from hyperpr.models import random_signal

n = 40
ens = make_ensemble("gaussian_rows", 4, n=n, m=12 * n, seed=1)
truth = random_signal(n, 4, seed=2)
y = forward(ens, truth).y

# %% Plain and truncated quaternion Wirtinger flow
for algorithm in ("qwf", "qtwf"):
    run = solve(ens, y, SolverConfig(algorithm=algorithm, max_iters=3000), truth=truth)
    init = relative_distance(truth, run.init)
    print(f"{algorithm}: init error {init:.3f} -> final {run.relative_error(truth):.2e} after {run.iterations} steps")

# %% Two-sided coded Fourier measurements, solved through the real lift
ens = make_ensemble("coded_fourier_2sided", n=64, L=10, d=8, seed=3)
truth = random_signal(64, 4, seed=4)
run = solve(ens, forward(ens, truth).y, SolverConfig(algorithm="real_lift_wf", max_iters=3000), truth=truth)
print(f"coded Fourier: final error {run.relative_error(truth):.2e}")
