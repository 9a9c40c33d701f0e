"""Pointwise McShane / Whitney extension of a sampled lattice Lipschitz operator.

For samples ``S = {(g_j, T g_j)}`` and a bound function ``phi``:

    mcshane(f)(w) = max_j  T g_j(w) - phi(w) |g_j(w) - f(w)|
    whitney(f)(w) = min_j  T g_j(w) + phi(w) |g_j(w) - f(w)|
    midpoint(f)   = (mcshane(f) + whitney(f)) / 2

All three reproduce ``T`` on ``S`` whenever ``phi`` is a valid bound. The
McShane and Whitney forms keep ``phi`` as a bound on all inputs. Whether
``mcshane(f)`` is continuous depends on ``phi`` being continuous, so it is
diagnosed rather than assumed.

At points where ``f(w)`` coincides with some ``g_j(w)`` the envelopes are
pinned to ``T g_j(w)`` (see :func:`llip._pykernels.mcshane_whitney`), so
interpolation of the samples is exact in floating point.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .bounds import BoundReport, verify_bound
from .errors import InvalidParameter, NegativeBound
from .grid import ContinuityReport, GridFunction, continuity_report
from .operators import SampleOperator, _check_function

METHODS = ("mcshane", "whitney", "midpoint")


@dataclass(frozen=True)
class ExtensionSpec:
    method: str
    phi: GridFunction
    source: SampleOperator

    def __post_init__(self):
        if self.method not in METHODS:
            raise InvalidParameter(f"unknown method {self.method!r}; expected one of {METHODS}")
        _check_function(self.source.grid, self.phi)
        if np.any(self.phi.values < 0):
            raise NegativeBound("bound function must be non-negative")


def _envelopes(spec: ExtensionSpec, f: GridFunction) -> tuple[np.ndarray, np.ndarray]:
    _check_function(spec.source.grid, f)
    s = spec.source
    return kernels.mcshane_whitney(s.inputs, s.outputs, spec.phi.values, f.values)


def extend(spec: ExtensionSpec, f: GridFunction) -> GridFunction:
    lower, upper = _envelopes(spec, f)
    if spec.method == "mcshane":
        out = lower
    elif spec.method == "whitney":
        out = upper
    else:
        out = 0.5 * (lower + upper)
    return GridFunction(f.grid, out)


def extension_gap(spec: ExtensionSpec, f: GridFunction) -> GridFunction:
    """``whitney(f) - mcshane(f)``; negative somewhere only if ``phi`` is not a valid bound."""
    lower, upper = _envelopes(spec, f)
    return GridFunction(f.grid, upper - lower)


def extend_and_diagnose(
    spec: ExtensionSpec,
    f: GridFunction,
    adjacency_radius: float | None = None,
    zero_tol: float = 1e-12,
    **continuity_kw,
) -> tuple[GridFunction, ContinuityReport, BoundReport]:
    """Extension, its continuity report, and the bound re-checked on ``S`` plus ``(f, extension)``."""
    ext = extend(spec, f)
    cont = continuity_report(ext, adjacency_radius, **continuity_kw)
    augmented = spec.source.augmented(f, ext)
    report = verify_bound(augmented, spec.phi, zero_tol, adjacency_radius=adjacency_radius, **continuity_kw)
    return ext, cont, report
