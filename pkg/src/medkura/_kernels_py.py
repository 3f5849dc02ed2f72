"""Pure-Python twin of the compiled classification kernel (see ``_kernels.pyx``).

Candidates come from the sample's KD-tree instead of the bucket grid; the
candidate filter, ordering and clustering are the same operations.
"""

import numpy as np


def cluster_seeds(cd, ci, samples, eps_d, eta_sep, nb, on_tol, cap):
    """Classify one query from its candidates (any order, superset of the slack ball).

    Returns (dmin, seeds, first) where ``seeds`` is empty for on-set queries,
    ``first`` is the best sample and ``seeds[0] == first`` otherwise.
    """
    cd = np.asarray(cd, dtype=np.float64)
    ci = np.asarray(ci, dtype=np.int64)
    best = float(cd.min())
    keep = cd <= best + eps_d
    cd, ci = cd[keep], ci[keep]
    o = np.lexsort((ci, cd))
    cd, ci = cd[o], ci[o]
    if best <= on_tol:
        return best, [], int(ci[0])
    pts = samples[ci]
    eta2 = eta_sep * eta_sep
    dx = pts[1:, 0] - pts[0, 0]
    dy = pts[1:, 1] - pts[0, 1]
    if np.all(dx * dx + dy * dy <= eta2):
        return best, [int(ci[0])], int(ci[0])
    tie = 1e-12 * (1.0 + best)
    ex = pts[:, 0][:, None] - pts[:, 0][None, :]
    ey = pts[:, 1][:, None] - pts[:, 1][None, :]
    close = ex * ex + ey * ey <= nb * nb
    lower = cd[None, :] < cd[:, None] - tie
    blocked = np.tril(close & lower, k=-1).any(axis=1)
    seeds: list[int] = []
    for i in np.flatnonzero(~blocked):
        p = pts[i]
        joined = False
        for s in seeds:
            q = samples[s]
            ddx = p[0] - q[0]
            ddy = p[1] - q[1]
            if ddx * ddx + ddy * ddy <= eta2:
                joined = True
                break
        if not joined:
            seeds.append(int(ci[i]))
            if len(seeds) >= cap:
                break
    return best, seeds, seeds[0]


def candidates(tree, samples, x, dnear, eps_d):
    R = dnear + eps_d
    R = R + 1e-9 * (1.0 + R)
    ids = np.asarray(tree.query_ball_point(x, R), dtype=np.int64)
    dx = samples[ids, 0] - x[0]
    dy = samples[ids, 1] - x[1]
    dd = np.sqrt(dx * dx + dy * dy)
    keep = dd <= R
    return dd[keep], ids[keep]


def classify_points(tree, samples, pts, dnear, eps_d, eta_sep, nb, on_tol, cap):
    n = len(pts)
    dmin = np.zeros(n)
    count = np.zeros(n, dtype=np.int32)
    seed = np.full(n, -1, dtype=np.int64)
    seed2 = np.full(n, -1, dtype=np.int64)
    for r in range(n):
        cd, ci = candidates(tree, samples, pts[r], dnear[r], eps_d)
        best, seeds, first = cluster_seeds(cd, ci, samples, eps_d, eta_sep, nb, on_tol, cap)
        dmin[r] = best
        seed[r] = first
        count[r] = len(seeds)
        if len(seeds) > 1:
            seed2[r] = seeds[1]
    return dmin, count, seed, seed2
