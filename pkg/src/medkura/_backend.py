"""Select the compiled classification kernel, falling back to pure Python.

Set ``MEDKURA_PURE_PYTHON=1`` before import to force the fallback.
"""

import math
import os

import numpy as np

from . import _kernels_py

_ext = None
if os.environ.get("MEDKURA_PURE_PYTHON", "") in ("", "0"):
    try:
        from . import _kernels as _ext  # type: ignore[attr-defined]
    except ImportError:  # extension not built
        _ext = None

BACKEND = "cython" if _ext is not None else "python"


class BucketGrid:
    """CSR bucketing of sample points on a uniform grid."""

    def __init__(self, points: np.ndarray, cell: float, max_cells: int = 4096):
        lo = points.min(axis=0) - cell
        hi = points.max(axis=0) + cell
        cell = max(cell, float((hi - lo).max()) / max_cells)
        nx = int(math.floor((hi[0] - lo[0]) / cell)) + 1
        ny = int(math.floor((hi[1] - lo[1]) / cell)) + 1
        ix = np.floor((points[:, 0] - lo[0]) / cell).astype(np.int64)
        iy = np.floor((points[:, 1] - lo[1]) / cell).astype(np.int64)
        cid = iy * nx + ix
        self.order = np.ascontiguousarray(np.argsort(cid, kind="stable").astype(np.int64))
        counts = np.bincount(cid, minlength=nx * ny)
        self.offsets = np.ascontiguousarray(np.concatenate([[0], np.cumsum(counts)]).astype(np.int64))
        self.x0, self.y0, self.cell, self.nx, self.ny = float(lo[0]), float(lo[1]), cell, nx, ny


def classify_points(sampled, pts, dnear, eps_d, eta_sep, nb, on_tol, cap, backend=None):
    """(dmin, count, seed, seed2) for query points against one sample."""
    backend = backend or BACKEND
    pts = np.ascontiguousarray(pts, dtype=np.float64)
    dnear = np.ascontiguousarray(dnear, dtype=np.float64)
    if backend == "cython":
        if _ext is None:
            raise RuntimeError("compiled kernel not available")
        g = sampled.grid
        return _ext.classify_points(
            pts, dnear, sampled.points, g.order, g.offsets, g.x0, g.y0, g.cell, g.nx, g.ny,
            eps_d, eta_sep, nb, on_tol, cap,
        )
    return _kernels_py.classify_points(sampled.tree, sampled.points, pts, dnear, eps_d, eta_sep, nb, on_tol, cap)


__all__ = ["BACKEND", "BucketGrid", "classify_points"]
