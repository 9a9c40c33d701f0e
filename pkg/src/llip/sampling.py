"""Random operators and functions for property suites and benchmarks."""
from __future__ import annotations

import numpy as np

from .grid import CompactGrid, GridFunction
from .operators import SampleOperator, SuperpositionField, TensorOperator
from .pwl import ScalarPWL


def random_pwl(
    rng: np.random.Generator,
    n_break: tuple[int, int] = (2, 6),
    span: float = 4.0,
    max_slope: float = 3.0,
    lattice: float | None = None,
) -> ScalarPWL:
    """Random PWL with slopes in ``[-max_slope, max_slope]``.

    With ``lattice`` set, breakpoints are distinct multiples of it in ``[-span, span]``.
    """
    n = int(rng.integers(n_break[0], n_break[1] + 1))
    if lattice is None:
        b = np.sort(rng.uniform(-span, span, size=n))
        while np.any(np.diff(b) < 1e-3):
            b = np.sort(rng.uniform(-span, span, size=n))
    else:
        ticks = np.arange(-span, span + lattice / 2, lattice)
        b = np.sort(rng.choice(ticks, size=n, replace=False))
    slopes = rng.uniform(-max_slope, max_slope, size=n + 1)
    v0 = rng.uniform(-2.0, 2.0)
    vals = v0 + np.concatenate(([0.0], np.cumsum(slopes[1:-1] * np.diff(b))))
    return ScalarPWL(b, vals, slopes[0], slopes[-1])


def random_field(rng: np.random.Generator, grid: CompactGrid, **kw) -> SuperpositionField:
    return SuperpositionField(grid, [random_pwl(rng, **kw) for _ in range(len(grid))])


def random_function(rng: np.random.Generator, grid: CompactGrid, scale: float = 5.0) -> GridFunction:
    return GridFunction(grid, rng.uniform(-scale, scale, size=len(grid)))


def random_smooth_function(rng: np.random.Generator, grid: CompactGrid, scale: float = 3.0) -> GridFunction:
    """Low-frequency trigonometric sum over the first coordinate; continuous in ``w``."""
    x = grid.points[:, 0]
    k = np.arange(1, 4)
    a = rng.normal(size=3) * scale / k
    p = rng.uniform(0, 2 * np.pi, size=3)
    return GridFunction(grid, rng.normal() * scale + (a[None, :] * np.sin(k[None, :] * x[:, None] + p)).sum(axis=1))


def random_tensor(
    rng: np.random.Generator, grid: CompactGrid, n_terms: tuple[int, int] = (1, 4), **kw
) -> TensorOperator:
    m = int(rng.integers(n_terms[0], n_terms[1] + 1))
    terms = [(random_smooth_function(rng, grid, 1.0), random_pwl(rng, **kw)) for _ in range(m)]
    return TensorOperator(grid, terms)


def random_sample_operator(
    rng: np.random.Generator, field: SuperpositionField, m: int, smooth: bool = True
) -> SampleOperator:
    """Samples of ``field`` at ``m`` random distinct inputs."""
    make = random_smooth_function if smooth else random_function
    inputs = [make(rng, field.grid) for _ in range(m)]
    return SampleOperator(field.grid, [(g, field.apply(g)) for g in inputs])
