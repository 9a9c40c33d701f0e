"""Pure numpy implementations of the hot loops.

Used when the compiled ``_ckernels`` module is unavailable, or when
``LLIP_PURE_PYTHON=1`` is set. Every routine here must agree with its
compiled twin to the last bit on the inputs the package produces; the
test-suite checks this on random data.
"""
import numpy as np

EUCLIDEAN = 0
CHEBYSHEV = 1
EPS = float(np.finfo(np.float64).eps)
CROSS_ULPS = 4.0


def distance_matrix(points, metric):
    diff = points[:, None, :] - points[None, :, :]
    if metric == CHEBYSHEV:
        return np.abs(diff).max(axis=2)
    return np.sqrt((diff * diff).sum(axis=2))


def close_pairs(points, values, radius, metric):
    """All pairs ``i < j`` with ``d(i, j) <= radius``, in lexicographic order."""
    d = distance_matrix(points, metric)
    i, j = np.nonzero(np.triu(d <= radius, k=1))
    dist = d[i, j]
    q = np.abs(values[i] - values[j]) / dist
    return i.astype(np.intp), j.astype(np.intp), q


def lipschitz_majorant(points, phi, lip, metric):
    d = distance_matrix(points, metric)
    return (phi[None, :] - lip * d).max(axis=1)


def mcshane_whitney(G, TG, phi, f):
    """Pointwise McShane (max) and Whitney (min) envelopes at ``f``.

    Where ``f(w)`` equals some ``g_j(w)`` exactly, both envelopes are pinned
    to ``Tg_j(w)`` for the first such ``j``: that term attains the max and the
    min whenever ``phi`` is a valid bound, and pinning keeps rounding in the
    other terms from moving the value by an ulp.

    Where the extension is unique the exact envelopes coincide, and rounding
    can leave ``lower`` an ulp or two above ``upper``. Crossings within
    ``CROSS_ULPS * eps`` of the magnitude of the two active terms are
    collapsed to their midpoint; larger ones (an invalid ``phi``) are kept.
    """
    gap = phi[None, :] * np.abs(G - f[None, :])
    lo_terms = TG - gap
    hi_terms = TG + gap
    jl = np.argmax(lo_terms, axis=0)
    jh = np.argmin(hi_terms, axis=0)
    cols = np.arange(G.shape[1])
    lower = lo_terms[jl, cols]
    upper = hi_terms[jh, cols]
    scale = (np.abs(TG[jl, cols]) + gap[jl, cols]) + (np.abs(TG[jh, cols]) + gap[jh, cols])
    cross = (lower > upper) & (lower - upper <= CROSS_ULPS * EPS * scale)
    if cross.any():
        mid = 0.5 * (lower[cross] + upper[cross])
        lower[cross] = mid
        upper[cross] = mid
    hit = G == f[None, :]
    pinned = hit.any(axis=0)
    if pinned.any():
        first = np.argmax(hit, axis=0)
        pc = np.flatnonzero(pinned)
        lower[pc] = TG[first[pc], pc]
        upper[pc] = TG[first[pc], pc]
    return lower, upper


def pair_envelope(G, TG, zero_tol):
    """Pointwise max over sample pairs of ``|Tg_j - Tg_l| / |g_j - g_l|`` (0 where ``|g_j - g_l| <= zero_tol``).

    Each ratio is nudged up by one ulp when ``ratio * den`` would round below
    the numerator, so the envelope passes the residual check exactly.
    """
    m, n = G.shape
    env = np.zeros(n)
    for j in range(m):
        for l in range(j + 1, m):
            den = np.abs(G[j] - G[l])
            sep = den > zero_tol
            ratio = np.zeros(n)
            num = np.abs(TG[j, sep] - TG[l, sep])
            r = num / den[sep]
            # round up where needed so that r * den >= num holds in floating point
            low = r * den[sep] < num
            r[low] = np.nextafter(r[low], np.inf)
            ratio[sep] = r
            np.maximum(env, ratio, out=env)
    return env


def pair_violation(G, TG, phi):
    """Largest residual ``|Tg_j - Tg_l| - phi |g_j - g_l|`` over pairs and points.

    Returns ``(residual, j, l, w)``; ties go to the first hit in
    ``(j, l, w)`` lexicographic order. With fewer than two samples the
    residual is ``-inf`` and the indices are ``-1``.
    """
    m, n = G.shape
    best, bj, bl, bw = -np.inf, -1, -1, -1
    for j in range(m):
        for l in range(j + 1, m):
            res = np.abs(TG[j] - TG[l]) - phi * np.abs(G[j] - G[l])
            w = int(np.argmax(res))
            if res[w] > best:
                best, bj, bl, bw = float(res[w]), j, l, w
    return best, bj, bl, bw


def field_eval(offsets, bps, vals, left, right, x):
    """Evaluate slice ``w`` of a packed field at ``x[w]`` for every ``w``."""
    n = x.shape[0]
    out = np.empty(n)
    for w in range(n):
        lo, hi = offsets[w], offsets[w + 1]
        b = bps[lo:hi]
        v = vals[lo:hi]
        r = x[w]
        if r <= b[0]:
            out[w] = v[0] + left[w] * (r - b[0])
        elif r >= b[-1]:
            out[w] = v[-1] + right[w] * (r - b[-1])
        else:
            i = int(np.searchsorted(b, r, side="right")) - 1
            out[w] = v[i] + (v[i + 1] - v[i]) * ((r - b[i]) / (b[i + 1] - b[i]))
    return out
