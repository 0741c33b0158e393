"""Octonion Wirtinger flow on a phase-transition slice.

Success is declared at relative distance 1e-5 after alignment by the best
right unit factor.
"""
# %% Sweep a few oversampling ratios
from hyperpr.experiments import ExperimentSpec, run

spec = ExperimentSpec(
    kind="phase_transition", trials=4, seed=1, ensemble="gaussian_rows", level=8, n=20,
    mn=(6.0, 12.0, 16.0), algorithm="owf", max_iters=3000,
)
print(run(spec).summary.to_csv())

# %% Noise: the median error falls as the SNR rises
noise = spec.replace(kind="noise_sweep", mn=(16.0,), snr_db=(5.0, 15.0, 25.0), max_iters=800)
for row in run(noise).summary.rows:
    print(f"SNR {row['snr_db']:>4} dB  median error {row['median_relative_distance']:.3f}")
