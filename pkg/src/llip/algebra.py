"""Composition of superposition fields, slice by slice."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import CompactGrid
from .operators import SuperpositionField
from .pwl import MAX_BREAKPOINTS, ScalarPWL
from .pwl import compose as compose_pwl

SUBMULT_TOL = 1e-12


def identity_field(grid: CompactGrid) -> SuperpositionField:
    return SuperpositionField.uniform(grid, ScalarPWL.identity())


def compose(
    T2: SuperpositionField, T1: SuperpositionField, max_breakpoints: int = MAX_BREAKPOINTS
) -> SuperpositionField:
    """Field of ``T2 o T1``: slice ``w`` is ``T2.slices[w] o T1.slices[w]``."""
    T1.grid.check_same(T2.grid)
    return SuperpositionField(
        T1.grid, [compose_pwl(a, b, max_breakpoints) for a, b in zip(T2.slices, T1.slices)]
    )


@dataclass(frozen=True)
class SubmultReport:
    pointwise_ok: bool
    global_ok: bool
    worst_w: int
    # per point: Lip(T2 o T1)(w) - Lip(T2)(w) * Lip(T1)(w)
    slack: np.ndarray
    composed_norm: float
    norm_product: float

    def to_dict(self) -> dict:
        return {
            "pointwise_ok": self.pointwise_ok,
            "global_ok": self.global_ok,
            "worst_w": self.worst_w,
            "max_slack": float(self.slack[self.worst_w]),
            "composed_norm": self.composed_norm,
            "norm_product": self.norm_product,
        }


def submultiplicativity_check(
    T2: SuperpositionField,
    T1: SuperpositionField,
    composed: SuperpositionField | None = None,
    tol: float = SUBMULT_TOL,
) -> SubmultReport:
    """Check ``Lip(T2 o T1) <= Lip(T2) Lip(T1)`` at every point and for the norms.

    ``worst_w`` is the first point with the largest slack.
    """
    if composed is None:
        composed = compose(T2, T1)
    else:
        composed.grid.check_same(T1.grid)
    T1.grid.check_same(T2.grid)
    l1, l2, lc = T1.lip_constants(), T2.lip_constants(), composed.lip_constants()
    slack = lc - l2 * l1
    composed_norm, product = float(lc.max()), float(l2.max() * l1.max())
    return SubmultReport(
        pointwise_ok=bool(np.all(slack <= tol)),
        global_ok=composed_norm <= product + tol,
        worst_w=int(np.argmax(slack)),
        slack=slack,
        composed_norm=composed_norm,
        norm_product=product,
    )
