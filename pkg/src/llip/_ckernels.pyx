# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the routines in ``_pykernels``."""
import numpy as np
from libc.float cimport DBL_EPSILON
from libc.math cimport fabs, sqrt, nextafter, INFINITY

DEF EUCLIDEAN = 0
DEF CHEBYSHEV = 1

cdef double EPS = DBL_EPSILON
cdef double CROSS_ULPS = 4.0


cdef inline double _dist(const double[:, ::1] p, Py_ssize_t a, Py_ssize_t b, int metric) noexcept nogil:
    cdef Py_ssize_t k
    cdef double acc = 0.0, t
    if metric == CHEBYSHEV:
        for k in range(p.shape[1]):
            t = fabs(p[a, k] - p[b, k])
            if t > acc:
                acc = t
        return acc
    for k in range(p.shape[1]):
        t = p[a, k] - p[b, k]
        acc += t * t
    return sqrt(acc)


def distance_matrix(const double[:, ::1] points, int metric):
    cdef Py_ssize_t n = points.shape[0], a, b
    out = np.zeros((n, n))
    cdef double[:, ::1] d = out
    with nogil:
        for a in range(n):
            for b in range(a + 1, n):
                d[a, b] = _dist(points, a, b, metric)
                d[b, a] = d[a, b]
    return out


def close_pairs(const double[:, ::1] points, const double[::1] values, double radius, int metric):
    cdef Py_ssize_t n = points.shape[0], a, b, c = 0
    cdef double dd
    ii = np.empty(n * 8, dtype=np.intp)
    jj = np.empty(n * 8, dtype=np.intp)
    qq = np.empty(n * 8)
    cdef Py_ssize_t[::1] iv = ii
    cdef Py_ssize_t[::1] jv = jj
    cdef double[::1] qv = qq
    for a in range(n):
        for b in range(a + 1, n):
            dd = _dist(points, a, b, metric)
            if dd <= radius:
                if c == iv.shape[0]:
                    ii = np.resize(ii, 2 * c)
                    jj = np.resize(jj, 2 * c)
                    qq = np.resize(qq, 2 * c)
                    iv = ii
                    jv = jj
                    qv = qq
                iv[c] = a
                jv[c] = b
                qv[c] = fabs(values[a] - values[b]) / dd
                c += 1
    return ii[:c].copy(), jj[:c].copy(), qq[:c].copy()


def lipschitz_majorant(const double[:, ::1] points, const double[::1] phi, double lip, int metric):
    cdef Py_ssize_t n = points.shape[0], a, b
    cdef double best, t
    out = np.empty(n)
    cdef double[::1] o = out
    with nogil:
        for a in range(n):
            best = -INFINITY
            for b in range(n):
                t = phi[b] - lip * _dist(points, a, b, metric)
                if t > best:
                    best = t
            o[a] = best
    return out


def mcshane_whitney(const double[:, ::1] G, const double[:, ::1] TG,
                    const double[::1] phi, const double[::1] f):
    cdef Py_ssize_t m = G.shape[0], n = G.shape[1], j, w
    cdef double lo, hi, gap, t, glo, ghi, scale
    cdef Py_ssize_t pin, jl, jh
    cdef double tol = CROSS_ULPS * EPS
    lower = np.empty(n)
    upper = np.empty(n)
    cdef double[::1] lv = lower
    cdef double[::1] uv = upper
    with nogil:
        for w in range(n):
            lo = -INFINITY
            hi = INFINITY
            pin = -1
            jl = 0
            jh = 0
            glo = 0.0
            ghi = 0.0
            for j in range(m):
                if pin < 0 and G[j, w] == f[w]:
                    pin = j
                gap = phi[w] * fabs(G[j, w] - f[w])
                t = TG[j, w] - gap
                if t > lo:
                    lo = t
                    jl = j
                    glo = gap
                t = TG[j, w] + gap
                if t < hi:
                    hi = t
                    jh = j
                    ghi = gap
            if pin >= 0:
                lo = TG[pin, w]
                hi = lo
            elif lo > hi:
                scale = (fabs(TG[jl, w]) + glo) + (fabs(TG[jh, w]) + ghi)
                if lo - hi <= tol * scale:
                    lo = 0.5 * (lo + hi)
                    hi = lo
            lv[w] = lo
            uv[w] = hi
    return lower, upper


def pair_envelope(const double[:, ::1] G, const double[:, ::1] TG, double zero_tol):
    cdef Py_ssize_t m = G.shape[0], n = G.shape[1], j, l, w
    cdef double den, r, num
    env = np.zeros(n)
    cdef double[::1] e = env
    with nogil:
        for j in range(m):
            for l in range(j + 1, m):
                for w in range(n):
                    den = fabs(G[j, w] - G[l, w])
                    if den > zero_tol:
                        num = fabs(TG[j, w] - TG[l, w])
                        r = num / den
                        if r * den < num:
                            r = nextafter(r, INFINITY)
                        if r > e[w]:
                            e[w] = r
    return env


def pair_violation(const double[:, ::1] G, const double[:, ::1] TG, const double[::1] phi):
    cdef Py_ssize_t m = G.shape[0], n = G.shape[1], j, l, w
    cdef Py_ssize_t bj = -1, bl = -1, bw = -1
    cdef double best = -INFINITY, res
    with nogil:
        for j in range(m):
            for l in range(j + 1, m):
                for w in range(n):
                    res = fabs(TG[j, w] - TG[l, w]) - phi[w] * fabs(G[j, w] - G[l, w])
                    if res > best:
                        best = res
                        bj = j
                        bl = l
                        bw = w
    return best, bj, bl, bw


def field_eval(const Py_ssize_t[::1] offsets, const double[::1] bps, const double[::1] vals,
               const double[::1] left, const double[::1] right, const double[::1] x):
    cdef Py_ssize_t n = x.shape[0], w, lo, hi, mid
    cdef double r
    out = np.empty(n)
    cdef double[::1] o = out
    with nogil:
        for w in range(n):
            lo = offsets[w]
            hi = offsets[w + 1] - 1
            r = x[w]
            if r <= bps[lo]:
                o[w] = vals[lo] + left[w] * (r - bps[lo])
            elif r >= bps[hi]:
                o[w] = vals[hi] + right[w] * (r - bps[hi])
            else:
                # invariant: bps[lo] <= r < bps[hi]
                while hi - lo > 1:
                    mid = (lo + hi) // 2
                    if bps[mid] <= r:
                        lo = mid
                    else:
                        hi = mid
                o[w] = vals[lo] + (vals[hi] - vals[lo]) * ((r - bps[lo]) / (bps[hi] - bps[lo]))
    return out
