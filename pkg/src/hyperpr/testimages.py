"""Deterministic synthetic test images bundled with the package."""
from __future__ import annotations

from importlib import resources
from pathlib import Path

import numpy as np

from .imageio import read_ppm, read_stack, write_ppm, write_stack


def _scene(size: int):
    u, v = np.meshgrid(np.linspace(0, 1, size), np.linspace(0, 1, size), indexing="xy")
    disc = ((u - 0.35) ** 2 + (v - 0.4) ** 2 < 0.06).astype(float)
    bar = ((u > 0.6) & (u < 0.85) & (v > 0.15)).astype(float)
    return u, v, disc, bar


def synthetic_rgb(size: int = 16) -> np.ndarray:
    """Smooth gradients plus a disc and a bar, quantised to 8 bits."""
    u, v, disc, bar = _scene(size)
    r = 0.2 + 0.5 * u + 0.3 * disc
    g = 0.3 + 0.4 * v * (1 - bar) + 0.2 * np.sin(3 * u)
    b = 0.6 - 0.4 * u * v + 0.35 * bar
    img = np.clip(np.stack([r, g, b], axis=-1), 0, 1)
    return np.round(img * 255) / 255


def synthetic_multispectral(size: int = 16, bands: int = 8) -> np.ndarray:
    """Materials with distinct smooth spectra mixed over the scene."""
    u, v, disc, bar = _scene(size)
    lam = np.linspace(0, 1, bands)
    background = 0.3 + 0.3 * lam
    red_thing = 0.15 + 0.7 * np.exp(-((lam - 0.8) ** 2) / 0.05)
    green_thing = 0.2 + 0.6 * np.exp(-((lam - 0.35) ** 2) / 0.03)
    shade = 0.6 + 0.4 * (u + v) / 2
    img = shade[..., None] * background
    img = np.where(disc[..., None] > 0, red_thing, img)
    img = np.where(bar[..., None] > 0, green_thing * (0.7 + 0.3 * v[..., None]), img)
    img = np.clip(img, 0, 1)
    return np.round(img * 255) / 255


def data_dir() -> Path:
    return Path(str(resources.files("hyperpr") / "data"))


def rgb_path() -> Path:
    return data_dir() / "test_rgb.ppm"


def multispectral_path() -> Path:
    return data_dir() / "test_ms" / "manifest.txt"


def load_rgb() -> np.ndarray:
    return read_ppm(rgb_path())


def load_multispectral() -> np.ndarray:
    return read_stack(multispectral_path())


def write_bundled(root=None) -> None:
    """Regenerate the bundled files under ``root`` (default: the package data)."""
    root = Path(root) if root is not None else data_dir()
    (root / "test_ms").mkdir(parents=True, exist_ok=True)
    write_ppm(root / "test_rgb.ppm", synthetic_rgb())
    write_stack(root / "test_ms" / "manifest.txt", synthetic_multispectral())
