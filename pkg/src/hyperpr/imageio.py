"""Netpbm image I/O, patch coding and PSNR.

RGB images are binary PPM (P6); multispectral stacks are one binary PGM (P5)
per band listed in a plain-text manifest (one file name per line, band
order).  Pixel values are 8-bit and mapped to ``[0, 1]``.
"""
from __future__ import annotations

import math
from pathlib import Path

import numpy as np


def _header(data: bytes, count: int) -> tuple[list[bytes], int]:
    """First ``count`` header tokens and the offset of the raster."""
    tokens, pos = [], 0
    while len(tokens) < count:
        if pos >= len(data):
            raise ValueError("truncated netpbm header")
        ch = data[pos : pos + 1]
        if ch.isspace():
            pos += 1
        elif ch == b"#":
            pos = data.find(b"\n", pos) + 1 or len(data)
        else:
            end = pos
            while end < len(data) and not data[end : end + 1].isspace():
                end += 1
            tokens.append(data[pos:end])
            pos = end
    # a single whitespace byte separates the header from the raster
    return tokens, pos + 1


def _read(path, magic: bytes, channels: int) -> np.ndarray:
    data = Path(path).read_bytes()
    tokens, start = _header(data, 4)
    if tokens[0] != magic:
        raise ValueError(f"{path}: expected {magic.decode()} file, found {tokens[0]!r}")
    w, h, maxval = (int(t) for t in tokens[1:])
    if maxval != 255:
        raise ValueError(f"{path}: only 8-bit images are supported (maxval {maxval})")
    if len(data) - start < w * h * channels:
        raise ValueError(f"{path}: truncated raster")
    raster = np.frombuffer(data, dtype=np.uint8, count=w * h * channels, offset=start)
    shape = (h, w, channels) if channels > 1 else (h, w)
    return raster.reshape(shape).astype(float) / 255.0


def _write(path, magic: bytes, img: np.ndarray):
    img = np.asarray(img, dtype=float)
    q = np.round(np.clip(img, 0.0, 1.0) * 255.0).astype(np.uint8)
    h, w = q.shape[:2]
    Path(path).write_bytes(magic + f"\n{w} {h}\n255\n".encode() + q.tobytes())


def read_ppm(path) -> np.ndarray:
    """``(H, W, 3)`` float image in ``[0, 1]``."""
    return _read(path, b"P6", 3)


def write_ppm(path, img) -> None:
    _write(path, b"P6", img)


def read_pgm(path) -> np.ndarray:
    return _read(path, b"P5", 1)


def write_pgm(path, img) -> None:
    _write(path, b"P5", img)


def read_stack(manifest) -> np.ndarray:
    """``(H, W, B)`` stack from a band manifest; paths are relative to it."""
    manifest = Path(manifest)
    names = [ln.strip() for ln in manifest.read_text().splitlines() if ln.strip() and not ln.startswith("#")]
    if not names:
        raise ValueError(f"{manifest}: empty band manifest")
    bands = [read_pgm(manifest.parent / name) for name in names]
    if len({b.shape for b in bands}) != 1:
        raise ValueError(f"{manifest}: bands differ in size")
    return np.stack(bands, axis=-1)


def write_stack(manifest, stack, prefix: str = "band") -> list[Path]:
    manifest = Path(manifest)
    stack = np.asarray(stack, dtype=float)
    paths = []
    for b in range(stack.shape[-1]):
        p = manifest.parent / f"{prefix}{b:02d}.pgm"
        write_pgm(p, stack[..., b])
        paths.append(p)
    manifest.write_text("".join(p.name + "\n" for p in paths))
    return paths


def read_image(path) -> np.ndarray:
    """PPM as ``(H, W, 3)``; anything else is treated as a band manifest."""
    path = Path(path)
    if path.suffix.lower() == ".ppm":
        return read_ppm(path)
    if path.suffix.lower() == ".pgm":
        return read_pgm(path)[..., None]
    return read_stack(path)


# ---------------------------------------------------------------------------
# patches and pixel coding


def to_patches(img, size: int) -> tuple[np.ndarray, tuple[int, int]]:
    """Non-overlapping ``size x size`` patches, zero-padding the bottom/right edge.

    Returns ``(patches, grid)`` with patches shaped ``(P, size, size, C)`` in
    row-major grid order.
    """
    img = np.asarray(img, dtype=float)
    h, w, c = img.shape
    gh, gw = math.ceil(h / size), math.ceil(w / size)
    pad = np.zeros((gh * size, gw * size, c))
    pad[:h, :w] = img
    p = pad.reshape(gh, size, gw, size, c).transpose(0, 2, 1, 3, 4)
    return p.reshape(gh * gw, size, size, c), (gh, gw)


def from_patches(patches, grid: tuple[int, int], shape: tuple[int, int]) -> np.ndarray:
    gh, gw = grid
    _P, size, _, c = patches.shape
    img = patches.reshape(gh, gw, size, size, c).transpose(0, 2, 1, 3, 4).reshape(gh * size, gw * size, c)
    return img[: shape[0], : shape[1]]


def encode(patch, level: int) -> np.ndarray:
    """Pixels to hypercomplex entries.

    Level 4: RGB to the pure quaternion ``R i + G j + B k``.  Level 8: band
    ``b`` to coefficient ``b`` (band 0 is the scalar part).
    """
    px = np.asarray(patch, dtype=float).reshape(-1, patch.shape[-1])
    c = px.shape[1]
    out = np.zeros((px.shape[0], level))
    if level == 4 and c == 3:
        out[:, 1:] = px
    elif level == 8 and c == 8:
        out[:] = px
    else:
        raise ValueError(f"cannot encode {c}-channel pixels at level {level}")
    return out


def decode(x, size: int, channels: int) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    px = x[:, 1:] if channels == 3 else x[:, :channels]
    return px.reshape(size, size, channels)


def psnr(ref, est, peak: float = 1.0) -> float:
    mse = float(np.mean((np.asarray(ref, dtype=float) - np.asarray(est, dtype=float)) ** 2))
    return math.inf if mse == 0.0 else 10.0 * math.log10(peak * peak / mse)
