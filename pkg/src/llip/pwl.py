"""Piecewise-linear real functions of a real variable.

A :class:`ScalarPWL` is given by strictly increasing breakpoints, the values
there, and the slopes of the two rays outside the breakpoint span. Interior
segment slopes are normally derived from the values; operations that know
them exactly (composition, linear combination, McShane envelopes) pass them
in explicitly so that Lipschitz constants carry no cancellation error.
"""
from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from .errors import BreakpointOverflow, InvalidParameter, InvalidRange, NonFiniteValue

COLLINEAR_TOL = 1e-12
MAX_BREAKPOINTS = 10_000


def _ro(a) -> np.ndarray:
    a = np.array(a, dtype=np.float64)
    a.setflags(write=False)
    return a


class ScalarPWL:
    __slots__ = ("breakpoints", "values", "left_slope", "right_slope", "slopes")

    def __init__(self, breakpoints, values, left_slope: float, right_slope: float, slopes=None):
        b = _ro(np.atleast_1d(breakpoints))
        v = _ro(np.atleast_1d(values))
        if b.ndim != 1 or b.shape != v.shape or len(b) == 0:
            raise InvalidRange("breakpoints and values must be non-empty 1-d arrays of equal length")
        if not (np.all(np.isfinite(b)) and np.all(np.isfinite(v))):
            raise NonFiniteValue("breakpoints and values must be finite")
        if np.any(np.diff(b) <= 0):
            raise InvalidRange("breakpoints must be strictly increasing")
        left_slope, right_slope = float(left_slope), float(right_slope)
        if not (np.isfinite(left_slope) and np.isfinite(right_slope)):
            raise NonFiniteValue("end slopes must be finite")
        if slopes is None:
            s = np.diff(v) / np.diff(b)
        else:
            s = np.asarray(slopes, dtype=np.float64)
            if s.shape != (len(b) - 1,):
                raise InvalidRange(f"expected {len(b) - 1} interior slopes, got shape {s.shape}")
        if not np.all(np.isfinite(s)):
            raise NonFiniteValue("segment slopes overflow")
        s = _ro(s)
        for name, val in zip(self.__slots__, (b, v, left_slope, right_slope, s)):
            object.__setattr__(self, name, val)

    def __setattr__(self, name, value):
        raise AttributeError("ScalarPWL is immutable")

    def __repr__(self) -> str:
        return (
            f"ScalarPWL(n={len(self.breakpoints)}, span=[{self.breakpoints[0]:g}, "
            f"{self.breakpoints[-1]:g}], lip={self.lip_constant():g})"
        )

    # -- construction -----------------------------------------------------

    @classmethod
    def identity(cls) -> ScalarPWL:
        return cls([0.0], [0.0], 1.0, 1.0)

    @classmethod
    def constant(cls, c: float) -> ScalarPWL:
        return cls([0.0], [c], 0.0, 0.0)

    @classmethod
    def linear(cls, slope: float, intercept: float = 0.0) -> ScalarPWL:
        return cls([0.0], [intercept], slope, slope)

    @classmethod
    def interpolate(cls, fn: Callable[[np.ndarray], np.ndarray], nodes) -> ScalarPWL:
        """Interpolant of ``fn`` at ``nodes``; the rays continue the outermost chords."""
        x = np.asarray(nodes, dtype=np.float64)
        if len(x) < 2:
            raise InvalidRange("interpolation needs at least 2 nodes")
        y = np.asarray(fn(x), dtype=np.float64)
        s = np.diff(y) / np.diff(x)
        return cls(x, y, s[0], s[-1])

    # -- evaluation -------------------------------------------------------

    def __call__(self, r):
        r = np.asarray(r, dtype=np.float64)
        b, v = self.breakpoints, self.values
        scalar = r.ndim == 0
        r = np.atleast_1d(r)
        out = np.empty(r.shape)
        lo = r <= b[0]
        hi = r >= b[-1]
        mid = ~(lo | hi)
        out[lo] = v[0] + self.left_slope * (r[lo] - b[0])
        out[hi] = v[-1] + self.right_slope * (r[hi] - b[-1])
        if mid.any():
            rm = r[mid]
            i = np.searchsorted(b, rm, side="right") - 1
            out[mid] = v[i] + (v[i + 1] - v[i]) * ((rm - b[i]) / (b[i + 1] - b[i]))
        return float(out[0]) if scalar else out

    def all_slopes(self) -> np.ndarray:
        """``[left ray, segment 0, ..., segment n-2, right ray]``."""
        return np.concatenate(([self.left_slope], self.slopes, [self.right_slope]))

    def slope_at(self, r) -> np.ndarray:
        """Slope of the piece containing each ``r``; a breakpoint belongs to the piece on its right."""
        k = np.searchsorted(self.breakpoints, np.asarray(r, dtype=np.float64), side="right")
        return self.all_slopes()[k]

    def lip_constant(self) -> float:
        return float(np.abs(self.all_slopes()).max())

    def argmax_piece(self) -> int:
        """Index into :meth:`all_slopes` of the first piece attaining the Lipschitz constant."""
        return int(np.argmax(np.abs(self.all_slopes())))

    def witness_pair(self) -> tuple[float, float]:
        """Two abscissas whose difference quotient equals the Lipschitz constant."""
        k = self.argmax_piece()
        b = self.breakpoints
        if k == 0:
            return float(b[0] - 1.0), float(b[0])
        if k == len(b):
            return float(b[-1]), float(b[-1] + 1.0)
        return float(b[k - 1]), float(b[k])

    # -- algebra ----------------------------------------------------------

    def pruned(self, tol: float = COLLINEAR_TOL) -> ScalarPWL:
        """Drop breakpoints where the adjacent slopes agree to ``tol`` (relative to max(1, |slope|))."""
        s = self.all_slopes()
        if len(self.breakpoints) == 1:
            return self
        keep = np.abs(s[1:] - s[:-1]) > tol * np.maximum(1.0, np.maximum(np.abs(s[1:]), np.abs(s[:-1])))
        if keep.all():
            return self
        if not keep.any():
            # globally affine; keep one anchor
            return ScalarPWL(self.breakpoints[:1], self.values[:1], s[0], s[-1])
        idx = np.flatnonzero(keep)
        # the piece left of kept breakpoint idx[t] starts at the previous kept breakpoint
        inner = s[idx[1:]]
        return ScalarPWL(self.breakpoints[idx], self.values[idx], s[0], s[-1], slopes=inner)

    def to_dict(self) -> dict:
        return {
            "breakpoints": self.breakpoints.tolist(),
            "values": self.values.tolist(),
            "left_slope": self.left_slope,
            "right_slope": self.right_slope,
        }

    @classmethod
    def from_dict(cls, d: dict) -> ScalarPWL:
        return cls(d["breakpoints"], d["values"], d["left_slope"], d["right_slope"])


def linear_combination(coeffs: Sequence[float], parts: Sequence[ScalarPWL]) -> ScalarPWL:
    """``sum_i coeffs[i] * parts[i]`` on the union of all breakpoints, slopes combined exactly."""
    if len(coeffs) != len(parts) or not parts:
        raise InvalidParameter("need one coefficient per part and at least one part")
    bps = np.unique(np.concatenate([p.breakpoints for p in parts]))
    vals = np.zeros(len(bps))
    seg = np.zeros(len(bps) - 1)
    left = right = 0.0
    mids = 0.5 * (bps[:-1] + bps[1:])
    for c, p in zip(coeffs, parts):
        c = float(c)
        vals += c * p(bps)
        if len(mids):
            seg += c * p.slope_at(mids)
        left += c * p.left_slope
        right += c * p.right_slope
    return ScalarPWL(bps, vals, left, right, slopes=seg)


def compose(outer: ScalarPWL, inner: ScalarPWL, max_breakpoints: int = MAX_BREAKPOINTS) -> ScalarPWL:
    """Exact ``outer o inner``.

    New breakpoints are those of ``inner`` plus, on every piece of ``inner``
    with non-zero slope, the preimages of ``outer``'s breakpoints. Each new
    piece has slope ``inner_slope * outer_slope`` computed as a single
    product, so the composite Lipschitz constant never exceeds the product
    of the factors' constants in floating point.
    """
    b1 = inner.breakpoints
    v1 = inner.values
    s1 = inner.all_slopes()
    c = outer.breakpoints
    # piece k of inner spans [lo_k, hi_k]; piece 0 and piece n are the rays
    lo = np.concatenate(([-np.inf], b1))
    hi = np.concatenate((b1, [np.inf]))
    anchor_x = np.concatenate(([b1[0]], b1))
    anchor_y = np.concatenate(([v1[0]], v1))
    nz = s1 != 0
    pre = (anchor_x[nz, None] + (c[None, :] - anchor_y[nz, None]) / s1[nz, None])
    inside = (pre > lo[nz, None]) & (pre < hi[nz, None])
    cand = np.concatenate((b1, pre[inside]))
    cand = cand[np.isfinite(cand)]
    cand.sort()
    if len(cand) > 1:
        # drop near-duplicates: tiny pieces would carry meaningless slopes
        gap = np.diff(cand)
        keep = np.concatenate(([True], gap > COLLINEAR_TOL * np.maximum(1.0, np.abs(cand[1:]))))
        cand = cand[keep]
    if len(cand) > max_breakpoints:
        raise BreakpointOverflow(f"composition needs {len(cand)} breakpoints (cap {max_breakpoints})")
    vals = outer(inner(cand))
    if len(cand) > 1:
        mids = 0.5 * (cand[:-1] + cand[1:])
        seg = inner.slope_at(mids) * outer.slope_at(inner(mids))
    else:
        seg = np.empty(0)

    left = inner.left_slope * (outer.left_slope if inner.left_slope > 0 else outer.right_slope)
    right = inner.right_slope * (outer.right_slope if inner.right_slope > 0 else outer.left_slope)
    return ScalarPWL(cand, vals, left, right, slopes=seg).pruned()


def mcshane_envelope(x, y, lip: float) -> ScalarPWL:
    """Largest ``lip``-Lipschitz extension ``r -> max_j (y_j - lip |x_j - r|)`` of data on ``R``.

    ``x`` must be strictly increasing. Kinks sit at the data abscissas and at
    crossings of a rising tent side with a falling one; every piece has slope
    exactly ``+lip`` or ``-lip``.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    lip = float(lip)
    if lip < 0:
        raise InvalidParameter("Lipschitz constant must be non-negative")
    if len(x) == 1 or lip == 0.0:
        if lip == 0.0:
            return ScalarPWL(x[:1], [y.max()], 0.0, 0.0)
        return ScalarPWL(x, y, lip, -lip)
    cross = 0.5 * (x[:, None] + x[None, :]) + (y[None, :] - y[:, None]) / (2.0 * lip)
    cross = cross[(cross > x[0]) & (cross < x[-1])]
    cand = np.unique(np.concatenate((x, cross)))
    gap = np.diff(cand)
    keep = np.concatenate(([True], gap > COLLINEAR_TOL * np.maximum(1.0, np.abs(cand[1:]))))
    cand = cand[keep]

    def envelope(r):
        return (y[None, :] - lip * np.abs(x[None, :] - r[:, None])).max(axis=1)

    vals = envelope(cand)
    mids = 0.5 * (cand[:-1] + cand[1:])
    active = np.argmax(y[None, :] - lip * np.abs(x[None, :] - mids[:, None]), axis=1)
    seg = np.where(x[active] > mids, lip, -lip)
    return ScalarPWL(cand, vals, lip, -lip, slopes=seg).pruned()
