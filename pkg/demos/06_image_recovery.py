"""Patch-wise recovery of a colour and a multispectral image.

Each patch is encoded as a hypercomplex vector (RGB in the imaginary
quaternion parts, eight bands in the octonion parts) and recovered from
intensities.  The baseline treats the channels separately.
"""
# %% Colour image with quaternion Wirtinger flow
import sys
from pathlib import Path

from hyperpr.experiments import ExperimentSpec, run

out = Path(sys.argv[1]) if len(sys.argv) > 1 else None
rgb = run(ExperimentSpec(kind="recover_image", level=4, algorithm="qwf", mn=(15.0,), patch=8))
print(rgb.summary.to_csv())

# %% Multispectral stack with octonion Wirtinger flow
ms = run(ExperimentSpec(kind="recover_image", level=8, algorithm="owf", mn=(16.0,), patch=4, max_iters=5000))
print(ms.summary.to_csv())

# %% Reconstructions are written as PPM / PGM files
if out is not None:
    for name, res in (("rgb", rgb), ("multispectral", ms)):
        res.write(out / name)
    print("wrote", out)
