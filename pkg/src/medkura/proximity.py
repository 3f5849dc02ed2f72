"""Distance fields and the nearest-point multifunction.

Multi-valuedness of ``m(x)`` is decided with two tolerances: samples whose
distance to ``x`` is within ``eps_d`` of the minimum are *near-minimizers*;
those that are local minima of the distance along the sample (no strictly
closer near-minimizer among their neighbours within 2 eps) are grouped into
clusters by leader clustering at radius ``eta_sep``, seeded in order of
increasing distance.  More than one cluster means ``x`` is a medial point.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.spatial import cKDTree

from . import _backend, _kernels_py
from .errors import EmptyOnWindow, OnSet, ToleranceConflict
from .params import Params
from .setrep import SetOracle, Window, as_point, default_margin

CHUNK = 1024


@dataclass(frozen=True)
class NearestResult:
    distance: float
    minimizers: np.ndarray  # (k, 2) cluster representatives
    cluster_count: int
    eps_d: float
    eta_sep: float


class Sampled:
    """An oracle's sample on a window (with safety margin) plus a KD-tree."""

    def __init__(self, oracle: SetOracle, window: Window, eps: float):
        self.oracle = oracle
        self.window = window
        self.eps = eps
        margin = default_margin(window)
        pts = oracle.sample(window.inflated(margin), eps)
        tries = 0
        while len(pts) == 0 and tries < 6:
            margin *= 4
            pts = oracle.sample(window.inflated(margin), eps)
            tries += 1
        if len(pts) == 0:
            raise EmptyOnWindow(f"{oracle.descriptor} has no points near the window")
        self.points = np.ascontiguousarray(pts, dtype=np.float64)
        self.tree = cKDTree(self.points)
        self._grid = None

    @property
    def grid(self) -> _backend.BucketGrid:
        if self._grid is None:
            self._grid = _backend.BucketGrid(self.points, 4 * self.eps)
        return self._grid

    def __len__(self):
        return len(self.points)

    def nearest(self, pts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        d, i = self.tree.query(np.asarray(pts, dtype=float).reshape(-1, 2), k=1)
        return np.asarray(d, dtype=float), np.asarray(i, dtype=np.int64)


@lru_cache(maxsize=64)
def prepare(oracle: SetOracle, window: Window, eps: float) -> Sampled:
    return Sampled(oracle, window, eps)


def _eps_for(window: Window, eps: float | None) -> float:
    return window.h / 4 if eps is None else eps


def distances(pts, oracle: SetOracle, window: Window, eps: float | None = None) -> np.ndarray:
    """Vectorized distance: exact when the oracle has a closed form, else sample minimum."""
    pts = np.asarray(pts, dtype=float).reshape(-1, 2)
    if oracle.has_exact:
        return oracle.exact_distance(pts)
    return prepare(oracle, window, _eps_for(window, eps)).nearest(pts)[0]


def distance(x, oracle: SetOracle, window: Window, eps: float | None = None) -> float:
    return float(distances([as_point(x)], oracle, window, eps)[0])


def squared_distance(x, oracle: SetOracle, window: Window, eps: float | None = None) -> float:
    return distance(x, oracle, window, eps) ** 2


# ---------------------------------------------------------------------------
# batch classification


@dataclass(frozen=True)
class Classification:
    distance: np.ndarray  # sample distance per query
    count: np.ndarray  # 0 on the set, else number of clusters
    seed: np.ndarray  # sample index of the best minimizer
    seed2: np.ndarray  # sample index of the second cluster seed or -1

    @property
    def medial(self) -> np.ndarray:
        return self.count >= 2

    @property
    def univalent(self) -> np.ndarray:
        return self.count == 1


def _classify_chunk(s: Sampled, pts: np.ndarray, p: Params, backend=None):
    dnear, _ = s.nearest(pts)
    return _backend.classify_points(s, pts, dnear, p.eps_d, p.eta_sep, 2 * s.eps, p.on_tol, p.cap, backend)


def classify(s: Sampled, pts, p: Params, backend: str | None = None) -> Classification:
    """Cluster-count every query point against the sample ``s``."""
    pts = np.ascontiguousarray(np.asarray(pts, dtype=float).reshape(-1, 2))
    chunks = [pts[i : i + CHUNK] for i in range(0, len(pts), CHUNK)]
    if not chunks:
        e = np.empty(0)
        return Classification(e, e.astype(np.int32), e.astype(np.int64), e.astype(np.int64))
    if p.threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=p.threads) as ex:
            parts = list(ex.map(lambda c: _classify_chunk(s, c, p, backend), chunks))
    else:
        parts = [_classify_chunk(s, c, p, backend) for c in chunks]
    return Classification(*(np.concatenate([part[j] for part in parts]) for j in range(4)))


# ---------------------------------------------------------------------------
# single-point operations


def _check_tolerances(eps: float, eps_d: float, eta_sep: float) -> None:
    if not eps_d > 0:
        raise ToleranceConflict("eps_d must be positive")
    if eta_sep <= 2 * (eps + eps_d):
        raise ToleranceConflict(f"eta_sep={eta_sep:g} must exceed 2*(eps+eps_d)={2 * (eps + eps_d):g}")


def nearest_clusters(s: Sampled, x, eps_d: float, eta_sep: float, on_tol: float = 0.0, cap: int = 64):
    """(dmin, seed indices) for one query, with every cluster seed listed."""
    x = np.asarray(as_point(x))
    dnear, _ = s.nearest(x)
    cd, ci = _kernels_py.candidates(s.tree, s.points, x, float(dnear[0]), eps_d)
    best, seeds, _ = _kernels_py.cluster_seeds(cd, ci, s.points, eps_d, eta_sep, 2 * s.eps, on_tol, cap)
    return best, seeds


def nearest_points(
    x,
    oracle: SetOracle,
    window: Window,
    eps_d: float | None = None,
    eta_sep: float | None = None,
    eps: float | None = None,
    cap: int = 64,
) -> NearestResult:
    eps = _eps_for(window, eps)
    defaults = Params.for_h(window.h, eps=eps, eps_d=4 * eps, eta_sep=12 * eps)
    eps_d = defaults.eps_d if eps_d is None else eps_d
    eta_sep = defaults.eta_sep if eta_sep is None else eta_sep
    _check_tolerances(eps, eps_d, eta_sep)
    s = prepare(oracle, window, eps)
    d, seeds = nearest_clusters(s, x, eps_d, eta_sep, 0.0, cap)
    return NearestResult(d, s.points[seeds].copy(), len(seeds), eps_d, eta_sep)


def distance_gradient(
    x,
    oracle: SetOracle,
    window: Window,
    eps: float | None = None,
    eps_d: float | None = None,
    eta_sep: float | None = None,
):
    """Unit gradient (x - m(x)) / d(x), or ``None`` where m(x) is not univalent."""
    eps_ = _eps_for(window, eps)
    xv = np.asarray(as_point(x))
    d = distance(xv, oracle, window, eps_)
    if d <= 2 * eps_:
        raise OnSet(f"point {tuple(xv)} lies on the set")
    res = nearest_points(xv, oracle, window, eps_d, eta_sep, eps_)
    if res.cluster_count != 1:
        return None
    y = oracle.project(xv[None, :])[0] if oracle.has_exact else res.minimizers[0]
    v = xv - y
    return v / math.hypot(v[0], v[1])
