"""Structural property matrix of the Cayley-Dickson levels 1 to 16.

Each property is decided by an exhaustive scan over basis elements (or
two-unit sums, where basis elements alone cannot exhibit a failure) followed
by random-sample checks at a relative tolerance.  A property holds when no
witness of failure is found.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

import numpy as np

from .algebra import EXACT_RTOL, LEVELS, find_zero_divisor, hmul, structure_tensor

COLUMNS = ("commutative", "associative", "alternative", "division", "zero_divisors", "norm_multiplicative")
NAMES = {1: "R", 2: "C", 4: "H", 8: "O", 16: "S"}

#: Expected pattern for the five real Cayley-Dickson levels.
EXPECTED = {
    1: (True, True, True, True, False, True),
    2: (True, True, True, True, False, True),
    4: (False, True, True, True, False, True),
    8: (False, False, True, True, False, True),
    16: (False, False, False, False, True, False),
}


@dataclass
class LevelReport:
    dim: int
    values: dict[str, bool]
    witnesses: dict[str, str] = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def row(self) -> tuple[bool, ...]:
        return tuple(self.values[c] for c in COLUMNS)

    @property
    def matches(self) -> bool:
        return self.row == EXPECTED[self.dim]


def _label(v) -> str:
    terms = []
    for k, c in enumerate(np.asarray(v)):
        if c == 0:
            continue
        unit = "1" if k == 0 else f"e{k}"
        terms.append(f"{'-' if c < 0 else '+'}{unit}" if abs(c) == 1 else f"{c:+g}{unit}")
    return "".join(terms).lstrip("+") or "0"


def _exceeds(diff, scale) -> np.ndarray:
    return np.linalg.norm(diff, axis=-1) > EXACT_RTOL * scale


def _noncommuting_basis(C):
    bad = np.argwhere(np.any(np.abs(C - C.transpose(1, 0, 2)) > 0, axis=-1))
    if len(bad):
        i, j = bad[0]
        return f"e{i} e{j} != e{j} e{i}"
    return None


def _nonassociative_basis(C):
    left = np.einsum("ijm,mkn->ijkn", C, C)  # (e_i e_j) e_k
    right = np.einsum("jkm,imn->ijkn", C, C)  # e_i (e_j e_k)
    bad = np.argwhere(np.any(np.abs(left - right) > 0, axis=-1))
    if len(bad):
        i, j, k = bad[0]
        return f"(e{i} e{j}) e{k} != e{i} (e{j} e{k})"
    return None


def _nonalternative_sums(dim):
    # basis elements always pairwise generate an associative subalgebra,
    # so failures are searched among x = e_i + e_j against basis y
    eye = np.eye(dim)
    xs = np.array([eye[i] + eye[j] for i, j in itertools.combinations(range(dim), 2)])
    if len(xs) == 0:
        return None
    y = eye[None, :, :]
    x = xs[:, None, :]
    diff = hmul(hmul(y, x), x) - hmul(y, hmul(x, x))
    bad = np.argwhere(np.linalg.norm(diff, axis=-1) > EXACT_RTOL)
    if len(bad):
        a, b = bad[0]
        return f"(y x) x != y (x x) for x={_label(xs[a])}, y={_label(eye[b])}"
    return None


def check_level(dim: int, samples: int = 10_000, seed: int = 0) -> LevelReport:
    """Decide every column of the property matrix for one level."""
    t0 = time.perf_counter()
    C = structure_tensor(dim)
    rng = np.random.default_rng(seed)
    x, y, z = rng.standard_normal((3, samples, dim))
    nx, ny, nz = (np.linalg.norm(v, axis=1) for v in (x, y, z))
    xy = hmul(x, y)
    w: dict[str, str] = {}

    wit = _noncommuting_basis(C)
    if wit is None and np.any(_exceeds(xy - hmul(y, x), nx * ny)):
        wit = "random sample"
    if wit:
        w["commutative"] = wit

    wit = _nonassociative_basis(C)
    if wit is None and np.any(_exceeds(hmul(xy, z) - hmul(x, hmul(y, z)), nx * ny * nz)):
        wit = "random sample"
    if wit:
        w["associative"] = wit

    wit = _nonalternative_sums(dim)
    if wit is None and np.any(_exceeds(hmul(hmul(y, x), x) - hmul(y, hmul(x, x)), ny * nx * nx)):
        wit = "random sample"
    if wit:
        w["alternative"] = wit

    zd = find_zero_divisor(dim) if dim > 1 else None
    if zd is not None:
        u, v = zd
        w["zero_divisors"] = f"({_label(u.coeffs)}) ({_label(v.coeffs)}) = 0"

    norm_bad = np.any(np.abs(np.linalg.norm(xy, axis=1) - nx * ny) > EXACT_RTOL * nx * ny)
    if zd is not None:
        w["norm_multiplicative"] = "|uv| = 0 but |u||v| = 2 for the zero divisor pair"
    elif norm_bad:
        w["norm_multiplicative"] = "random sample"

    values = {
        "commutative": "commutative" not in w,
        "associative": "associative" not in w,
        "alternative": "alternative" not in w,
        "zero_divisors": zd is not None,
        "norm_multiplicative": "norm_multiplicative" not in w,
    }
    values["division"] = values["norm_multiplicative"] and not values["zero_divisors"]
    return LevelReport(dim, values, w, time.perf_counter() - t0)


def property_matrix(samples: int = 10_000, seed: int = 0) -> list[LevelReport]:
    return [check_level(dim, samples, seed + k) for k, dim in enumerate(LEVELS)]


def format_matrix(reports: list[LevelReport]) -> str:
    head = f"{'algebra':<8}" + "".join(f"{c:>20}" for c in COLUMNS) + "   match"
    lines = [head]
    for r in reports:
        cells = "".join(f"{('yes' if v else 'no'):>20}" for v in r.row)
        lines.append(f"{NAMES[r.dim] + str(r.dim):<8}{cells}   {'ok' if r.matches else 'MISMATCH'}")
    for r in reports:
        for col, wit in r.witnesses.items():
            lines.append(f"  {NAMES[r.dim]}: {col} witness: {wit}")
    return "\n".join(lines)
