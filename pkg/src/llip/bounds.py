"""Bound functions and operator norms.

A bound function ``phi`` for ``T`` satisfies, for every pair of inputs and
every grid point,

    |T f (w) - T g (w)| <= phi(w) |f(w) - g(w)|.

For a finite sample the smallest such ``phi`` is the pointwise maximum of
the pair ratios; it may jump, so continuous alternatives (a constant, or the
least ``L``-Lipschitz majorant) are also provided.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import kernels
from .errors import DegenerateProbe, InsufficientSamples, InvalidParameter, NegativeBound
from .grid import ContinuityReport, GridFunction, constant, continuity_report
from .operators import (
    MultiplicationOperator,
    OperatorRep,
    SampleOperator,
    _check_function,
    as_field,
    evaluate,
)

SOURCES = ("minimal-envelope", "constant", "lipschitz-majorant", "user")


@dataclass(frozen=True)
class BoundReport:
    phi: GridFunction
    max_violation: float
    continuity: ContinuityReport
    source: str
    # (j, l, w): sample pair and grid point of the worst residual, if any residual is positive
    worst: tuple[int, int, int] | None = None

    def to_dict(self) -> dict:
        d = {
            "phi": {"grid_id": self.phi.grid_id, "values": self.phi.values.tolist()},
            "max_violation": self.max_violation,
            "continuity": self.continuity.to_dict(),
            "source": self.source,
        }
        if self.worst is not None:
            d["worst"] = {"pair": [self.worst[0], self.worst[1]], "point": self.worst[2]}
        return d


def ratio_function(T: OperatorRep, f: GridFunction, g: GridFunction, zero_tol: float = 1e-12) -> GridFunction:
    """``|Tf - Tg| / |f - g|`` pointwise, and 0 where ``|f - g| <= zero_tol``."""
    tf, tg = evaluate(T, f), evaluate(T, g)
    den = np.abs(f.values - g.values)
    num = np.abs(tf.values - tg.values)
    sep = den > zero_tol
    out = np.zeros(len(den))
    out[sep] = num[sep] / den[sep]
    return GridFunction(f.grid, out)


def _need_pairs(T: SampleOperator) -> None:
    if len(T) < 2:
        raise InsufficientSamples("need at least 2 samples to form a pair")


def _report(T: SampleOperator, phi: GridFunction, source: str, continuity_kw: dict) -> BoundReport:
    res, j, l, w = kernels.pair_violation(T.inputs, T.outputs, phi.values)
    worst = (int(j), int(l), int(w)) if res > 0 else None
    return BoundReport(
        phi=phi,
        max_violation=max(0.0, float(res)),
        continuity=continuity_report(phi, **continuity_kw),
        source=source,
        worst=worst,
    )


def minimal_envelope(T: SampleOperator, zero_tol: float = 1e-12, **continuity_kw) -> BoundReport:
    """Smallest bound function for a finite sample: the max over pairs of the ratio functions.

    ``continuity_kw`` is forwarded to :func:`~llip.grid.continuity_report`.
    """
    _need_pairs(T)
    env = kernels.pair_envelope(T.inputs, T.outputs, zero_tol)
    phi = GridFunction(T.grid, env)
    return _report(T, phi, "minimal-envelope", continuity_kw)


def constant_bound(T: SampleOperator, zero_tol: float = 1e-12, **continuity_kw) -> BoundReport:
    _need_pairs(T)
    env = kernels.pair_envelope(T.inputs, T.outputs, zero_tol)
    phi = constant(T.grid, env.max())
    return _report(T, phi, "constant", continuity_kw)


def lipschitz_majorant(phi_min: GridFunction, L: float) -> GridFunction:
    """Least ``L``-Lipschitz function (in the grid metric) lying above ``phi_min``."""
    if not L >= 0:
        raise InvalidParameter(f"negative-L: need L >= 0, got {L}")
    grid = phi_min.grid
    if L == 0:
        return constant(grid, phi_min.values.max())
    return GridFunction(grid, kernels.lipschitz_majorant(grid.points, phi_min.values, float(L), grid.metric_code))


def majorant_bound(T: SampleOperator, L: float, zero_tol: float = 1e-12, **continuity_kw) -> BoundReport:
    env = minimal_envelope(T, zero_tol, **continuity_kw).phi
    return _report(T, lipschitz_majorant(env, L), "lipschitz-majorant", continuity_kw)


def verify_bound(
    T: SampleOperator, phi: GridFunction, zero_tol: float = 1e-12, source: str = "user", **continuity_kw
) -> BoundReport:
    """Worst residual of the pointwise inequality over all sample pairs.

    ``zero_tol`` is accepted for interface symmetry; the residual needs no
    coincidence rule.
    """
    _check_function(T.grid, phi)
    if np.any(phi.values < 0):
        raise NegativeBound("bound function must be non-negative")
    if len(T) < 2:
        return BoundReport(phi, 0.0, continuity_report(phi, **continuity_kw), source)
    return _report(T, phi, source, continuity_kw)


def norm_kind(T: OperatorRep) -> str:
    """``"exact"`` for closed-form representations, ``"lower-bound"`` for finite samples."""
    return "lower-bound" if isinstance(T, SampleOperator) else "exact"


def llip_norm(T: OperatorRep, zero_tol: float = 1e-12) -> float:
    """Smallest constant bound.

    Exact for fields, tensors and multiplication operators (largest slice
    Lipschitz constant). For a sample it is the largest pair ratio, a lower
    bound for the norm of any extension.
    """
    if isinstance(T, SampleOperator):
        if len(T) < 2:
            return 0.0
        return float(kernels.pair_envelope(T.inputs, T.outputs, zero_tol).max())
    if isinstance(T, MultiplicationOperator):
        return float(np.abs(T.h.values).max())
    return float(as_field(T).lip_constants().max())


def lip_norm_estimate(T: OperatorRep, probes: Iterable[tuple[GridFunction, GridFunction]]) -> float:
    """Largest ``||Tf - Tg||_inf / ||f - g||_inf`` over the probe pairs (0 for no probes)."""
    best = 0.0
    for f, g in probes:
        den = float(np.abs(f.values - g.values).max())
        if den == 0.0:
            raise DegenerateProbe("probe pair is identical in sup norm")
        num = float(np.abs(evaluate(T, f).values - evaluate(T, g).values).max())
        best = max(best, num / den)
    return best


def witness_probes(T: OperatorRep) -> list[tuple[GridFunction, GridFunction]]:
    """A pair of constant functions whose sup-norm quotient attains :func:`llip_norm`.

    For a sample operator it is the sample pair with the largest sup-norm quotient.
    """
    if isinstance(T, SampleOperator):
        _need_pairs(T)
        best, pair = -1.0, (0, 1)
        for j in range(len(T)):
            for l in range(j + 1, len(T)):
                den = np.abs(T.inputs[j] - T.inputs[l]).max()
                q = np.abs(T.outputs[j] - T.outputs[l]).max() / den
                if q > best:
                    best, pair = q, (j, l)
        s = T.samples()
        return [(s[pair[0]][0], s[pair[1]][0])]
    field = as_field(T)
    w = int(np.argmax(field.lip_constants()))
    r, s = field.slices[w].witness_pair()
    return [(constant(T.grid, r), constant(T.grid, s))]


def random_constant_probes(grid, rng: np.random.Generator, n: int, spread: float = 10.0):
    """``n`` pairs of distinct random constant functions in ``[-spread, spread]``."""
    out = []
    while len(out) < n:
        a, b = rng.uniform(-spread, spread, size=2)
        if a != b:
            out.append((constant(grid, a), constant(grid, b)))
    return out
