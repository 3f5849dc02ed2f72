# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled near-minimizer retrieval and cluster classification.

Samples are bucketed on a uniform grid (CSR layout).  For a query x with
approximate nearest distance d only the cells meeting the annulus
d <= |y - x| <= d + eps_d are scanned: the open disc of radius d holds no
sample.  The classification matches ``medkura._kernels_py`` exactly.
"""

import numpy as np
from libc.math cimport sqrt, floor, ceil, fabs

cdef inline double _sq(double ax, double ay, double bx, double by) noexcept nogil:
    cdef double dx = ax - bx
    cdef double dy = ay - by
    return dx * dx + dy * dy


cdef inline bint _before(double da, long long ia, double db, long long ib) noexcept nogil:
    return da < db or (da == db and ia < ib)


cdef void _sort(double* d, long long* ix, Py_ssize_t m) noexcept nogil:
    # insertion sort on (distance, index); candidate lists are short
    cdef Py_ssize_t i, j
    cdef double dv
    cdef long long iv
    for i in range(1, m):
        dv = d[i]
        iv = ix[i]
        j = i - 1
        while j >= 0 and _before(dv, iv, d[j], ix[j]):
            d[j + 1] = d[j]
            ix[j + 1] = ix[j]
            j -= 1
        d[j + 1] = dv
        ix[j + 1] = iv


def classify_points(const double[:, ::1] pts, const double[::1] dnear,
                    const double[:, ::1] samples, const long long[::1] order,
                    const long long[::1] offsets, double gx0, double gy0, double cell,
                    long long nx, long long ny, double eps_d, double eta_sep,
                    double nb, double on_tol, int cap):
    """Return (dmin, count, seed, seed2) for every query point.

    A near-minimizer is a local minimum unless a strictly closer one lies
    within ``nb`` (the sample neighbourhood).  count is 0 when
    dmin <= on_tol, else the number of minimizer clusters
    (capped at ``cap``); seed/seed2 are sample indices of the first two
    cluster seeds (-1 when absent).
    """
    cdef Py_ssize_t n = pts.shape[0]
    cdef Py_ssize_t ns = samples.shape[0]
    dmin_a = np.zeros(n, dtype=np.float64)
    count_a = np.zeros(n, dtype=np.int32)
    seed_a = np.full(n, -1, dtype=np.int64)
    seed2_a = np.full(n, -1, dtype=np.int64)
    cd_a = np.empty(max(ns, 1), dtype=np.float64)
    ci_a = np.empty(max(ns, 1), dtype=np.int64)
    ismin_a = np.zeros(max(ns, 1), dtype=np.uint8)
    seeds_a = np.zeros(max(cap, 1), dtype=np.int64)
    cdef double[::1] dmin_v = dmin_a
    cdef int[::1] count = count_a
    cdef long long[::1] seed = seed_a
    cdef long long[::1] seed2 = seed2_a
    cdef double[::1] cd = cd_a
    cdef long long[::1] ci = ci_a
    cdef unsigned char[::1] ismin = ismin_a
    cdef long long[::1] seeds = seeds_a
    cdef double eta2 = eta_sep * eta_sep
    cdef double nb2 = nb * nb
    cdef Py_ssize_t r, i, j, m, mm, nseed
    cdef long long iy, ix, iy0, iy1, ix0, ix1, in0, in1, c, k, si, sj
    cdef double x, y, R, Rin, pad, ya, yb, dyn, dyf, w, wi, dd, best, lim, tie, px, py
    cdef bint ok, near

    with nogil:
        for r in range(n):
            x = pts[r, 0]
            y = pts[r, 1]
            R = dnear[r] + eps_d
            pad = 1e-9 * (1.0 + R)
            R = R + pad
            Rin = dnear[r] - pad
            m = 0
            iy0 = <long long>floor((y - R - gy0) / cell)
            iy1 = <long long>floor((y + R - gy0) / cell)
            if iy0 < 0:
                iy0 = 0
            if iy1 > ny - 1:
                iy1 = ny - 1
            for iy in range(iy0, iy1 + 1):
                ya = gy0 + iy * cell
                yb = ya + cell
                if y < ya:
                    dyn = ya - y
                elif y > yb:
                    dyn = y - yb
                else:
                    dyn = 0.0
                if dyn > R:
                    continue
                dyf = fabs(y - ya)
                if fabs(y - yb) > dyf:
                    dyf = fabs(y - yb)
                w = sqrt(R * R - dyn * dyn)
                ix0 = <long long>floor((x - w - gx0) / cell)
                ix1 = <long long>floor((x + w - gx0) / cell)
                if ix0 < 0:
                    ix0 = 0
                if ix1 > nx - 1:
                    ix1 = nx - 1
                in0 = 1
                in1 = 0
                if Rin > 0 and dyf < Rin:
                    wi = sqrt(Rin * Rin - dyf * dyf)
                    in0 = <long long>ceil((x - wi - gx0) / cell)
                    in1 = <long long>floor((x + wi - gx0) / cell) - 1
                for ix in range(ix0, ix1 + 1):
                    if in0 <= ix <= in1:
                        continue
                    c = iy * nx + ix
                    for k in range(offsets[c], offsets[c + 1]):
                        si = order[k]
                        dd = sqrt(_sq(samples[si, 0], samples[si, 1], x, y))
                        if dd <= R:
                            cd[m] = dd
                            ci[m] = si
                            m = m + 1
            if m == 0:
                # cannot happen for a consistent dnear; flag as on-set
                dmin_v[r] = 0.0
                count[r] = 0
                continue
            best = cd[0]
            for i in range(1, m):
                if cd[i] < best:
                    best = cd[i]
            dmin_v[r] = best
            lim = best + eps_d
            mm = 0
            for i in range(m):
                if cd[i] <= lim:
                    cd[mm] = cd[i]
                    ci[mm] = ci[i]
                    mm = mm + 1
            m = mm
            _sort(&cd[0], &ci[0], m)
            seed[r] = ci[0]
            if best <= on_tol:
                count[r] = 0
                continue
            si = ci[0]
            px = samples[si, 0]
            py = samples[si, 1]
            ok = True
            for i in range(1, m):
                sj = ci[i]
                if _sq(samples[sj, 0], samples[sj, 1], px, py) > eta2:
                    ok = False
                    break
            if ok:
                count[r] = 1
                continue
            tie = 1e-12 * (1.0 + best)
            for i in range(m):
                ismin[i] = 1
                si = ci[i]
                for j in range(i):
                    if cd[j] < cd[i] - tie:
                        sj = ci[j]
                        if _sq(samples[si, 0], samples[si, 1], samples[sj, 0], samples[sj, 1]) <= nb2:
                            ismin[i] = 0
                            break
            nseed = 0
            for i in range(m):
                if not ismin[i]:
                    continue
                si = ci[i]
                near = False
                for j in range(nseed):
                    sj = seeds[j]
                    if _sq(samples[si, 0], samples[si, 1], samples[sj, 0], samples[sj, 1]) <= eta2:
                        near = True
                        break
                if not near:
                    seeds[nseed] = si
                    nseed = nseed + 1
                    if nseed >= cap:
                        break
            count[r] = <int>nseed
            seed[r] = seeds[0]
            if nseed > 1:
                seed2[r] = seeds[1]
    return dmin_a, count_a, seed_a, seed2_a
