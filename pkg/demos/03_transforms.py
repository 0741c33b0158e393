"""Quaternion Fourier, short-time Fourier and wavelet transforms."""
# %% A colour image as a pure quaternion array
import numpy as np

from hyperpr.testimages import load_rgb
from hyperpr.transforms import StftWindow, haar_family, qdft2d_forward, qdft2d_inverse, qstft_measure, qwt_measure

img = load_rgb()[:8, :8]
X = np.concatenate([np.zeros(img.shape[:2] + (1,)), img], axis=-1)

# %% Two-sided QDFT: unitary, so energy is preserved and inversion is exact
S = qdft2d_forward(X)
print(f"energy ratio {np.sum(S**2) / np.sum(X**2):.12f}")
print(f"round trip error {np.abs(qdft2d_inverse(S) - X).max():.2e}")

# %% Short-time transform of one image row
x = X[0]
Z = qstft_measure(x, StftWindow.rectangular(8, 4, 2))
print("STFT frames x frequencies:", Z.shape[:2])

# %% Haar filter bank
W = qwt_measure(x, haar_family(8, 3))
print("wavelet bands:", W.shape[0], " energy per band:", np.round(np.sum(W**2, axis=(1, 2)), 3))
