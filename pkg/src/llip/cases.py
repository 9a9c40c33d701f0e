"""Analytic golden data: the two worked examples with concrete numbers.

* A two-sample operator on ``[0, 1]`` whose smallest bound function is
  2 on ``[0, 1/4)``, 0 on ``[1/4, 3/4]`` and 1 on ``(3/4, 1]``.
* A two-sample operator on ``[-1, 1]`` (``S = {0, Id}``, ``T 0 = 0``,
  ``T Id = Id * 1_[0,1]``) whose McShane extension at ``f = 1`` jumps at 0
  with the bound ``1_[0,1]`` and is continuous with the bound
  ``1 + w`` (``w < 0``), ``1`` (``w >= 0``).
"""
from __future__ import annotations

import numpy as np

from .extension import ExtensionSpec
from .grid import GridFunction, constant, make_interval_grid
from .operators import SampleOperator


def jump_bound_operator(n: int = 401) -> SampleOperator:
    grid = make_interval_grid(0.0, 1.0, n)
    w = grid.coords()
    diff = np.where(w < 0.25, 0.25 - w, np.where(w < 0.75, 0.0, -0.75 + w))
    tdiff = np.where(w < 0.25, 0.5 - 2 * w, np.where(w < 0.75, 0.0, -0.75 + w))
    zero = constant(grid, 0.0)
    return SampleOperator(grid, [(GridFunction(grid, diff), GridFunction(grid, tdiff)), (zero, zero)])


def jump_bound_expected(grid) -> np.ndarray:
    w = grid.coords()
    return np.where(w < 0.25, 2.0, np.where(w <= 0.75, 0.0, 1.0))


def extension_source(n: int = 401) -> SampleOperator:
    grid = make_interval_grid(-1.0, 1.0, n)
    w = grid.coords()
    zero = constant(grid, 0.0)
    ident = GridFunction(grid, w)
    return SampleOperator(grid, [(zero, zero), (ident, GridFunction(grid, np.where(w >= 0, w, 0.0)))])


def extension_case(repaired: bool, n: int = 401) -> tuple[ExtensionSpec, GridFunction, np.ndarray]:
    """``(spec, f = 1, expected mcshane(f))`` for the discontinuous or the repaired bound."""
    src = extension_source(n)
    w = src.grid.coords()
    if repaired:
        phi = np.where(w < 0, 1.0 + w, 1.0)
        expected = np.where(w < 0, -1.0 - w, 2.0 * w - 1.0)
    else:
        phi = np.where(w >= 0, 1.0, 0.0)
        expected = np.where(w < 0, 0.0, 2.0 * w - 1.0)
    spec = ExtensionSpec("mcshane", GridFunction(src.grid, phi), src)
    return spec, constant(src.grid, 1.0), expected
