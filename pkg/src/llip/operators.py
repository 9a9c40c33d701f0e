"""Operator representations on a shared grid and conversions between them.

Four concrete forms share the ``kind`` tag used in the JSON envelope:

* :class:`SampleOperator` -- a finite graph ``{(g_j, T g_j)}``
* :class:`SuperpositionField` -- ``T f (w) = psi_w(f(w))`` with one
  :class:`~llip.pwl.ScalarPWL` slice per grid point
* :class:`TensorOperator` -- ``T f (w) = sum_i f_i(w) phi_i(f(w))``
* :class:`MultiplicationOperator` -- ``T f = h * f``
"""
from __future__ import annotations

from typing import Sequence, Union

import numpy as np

from . import kernels
from .errors import GridMismatch, IllDefinedAtPoint, InsufficientSamples, InvalidParameter, NegativeBound, NotInDomain
from .grid import CompactGrid, GridFunction
from .pwl import ScalarPWL, linear_combination, mcshane_envelope


def _check_function(grid: CompactGrid, f: GridFunction) -> None:
    if f.grid_id != grid.id:
        raise GridMismatch(f"function lives on grid {f.grid_id}, operator on {grid.id}")


class SampleOperator:
    """Operator known only on finitely many inputs.

    ``inputs`` and ``outputs`` are ``(m, n)`` arrays: row ``j`` holds ``g_j``
    and ``T g_j`` over the grid.
    """

    kind = "sample"

    def __init__(self, grid: CompactGrid, samples: Sequence[tuple[GridFunction, GridFunction]]):
        if not samples:
            raise InsufficientSamples("a sample operator needs at least one sample")
        lookup = {}
        for j, (g, tg) in enumerate(samples):
            _check_function(grid, g)
            _check_function(grid, tg)
            key = g.values.tobytes()
            if key in lookup:
                raise InvalidParameter(f"sample {j} repeats the input of sample {lookup[key]}")
            lookup[key] = j
        self.grid = grid
        self.inputs = np.array([g.values for g, _ in samples])
        self.outputs = np.array([tg.values for _, tg in samples])
        self.inputs.setflags(write=False)
        self.outputs.setflags(write=False)
        self._lookup = lookup

    @classmethod
    def from_arrays(cls, grid: CompactGrid, inputs, outputs) -> SampleOperator:
        inputs = np.atleast_2d(np.asarray(inputs, dtype=np.float64))
        outputs = np.atleast_2d(np.asarray(outputs, dtype=np.float64))
        if inputs.shape != outputs.shape:
            raise InvalidParameter("inputs and outputs must have the same shape")
        return cls(grid, [(GridFunction(grid, g), GridFunction(grid, t)) for g, t in zip(inputs, outputs)])

    def __len__(self) -> int:
        return self.inputs.shape[0]

    def __repr__(self) -> str:
        return f"SampleOperator(m={len(self)}, grid={self.grid.id})"

    @property
    def grid_id(self) -> str:
        return self.grid.id

    def samples(self) -> list[tuple[GridFunction, GridFunction]]:
        return [(GridFunction(self.grid, g), GridFunction(self.grid, t)) for g, t in zip(self.inputs, self.outputs)]

    def index_of(self, f: GridFunction) -> int | None:
        _check_function(self.grid, f)
        return self._lookup.get(f.values.tobytes())

    def apply(self, f: GridFunction) -> GridFunction:
        j = self.index_of(f)
        if j is None:
            raise NotInDomain("function is not one of the stored samples")
        return GridFunction(self.grid, self.outputs[j])

    def augmented(self, f: GridFunction, tf: GridFunction) -> SampleOperator:
        """The sample set with ``(f, tf)`` added (unchanged if ``f`` is already a sample)."""
        if self.index_of(f) is not None:
            return self
        return SampleOperator(self.grid, self.samples() + [(f, tf)])


class SuperpositionField:
    """``T f (w) = slices[w](f(w))``."""

    kind = "superposition"

    def __init__(self, grid: CompactGrid, slices: Sequence[ScalarPWL]):
        slices = tuple(slices)
        if len(slices) != len(grid):
            raise InvalidParameter(f"need {len(grid)} slices, got {len(slices)}")
        self.grid = grid
        self.slices = slices
        counts = np.array([len(s.breakpoints) for s in slices])
        self._offsets = np.concatenate(([0], np.cumsum(counts))).astype(np.intp)
        self._bps = np.concatenate([s.breakpoints for s in slices])
        self._vals = np.concatenate([s.values for s in slices])
        self._left = np.array([s.left_slope for s in slices])
        self._right = np.array([s.right_slope for s in slices])

    @classmethod
    def uniform(cls, grid: CompactGrid, slice_: ScalarPWL) -> SuperpositionField:
        return cls(grid, [slice_] * len(grid))

    def __repr__(self) -> str:
        return f"SuperpositionField(n={len(self.slices)}, grid={self.grid.id})"

    @property
    def grid_id(self) -> str:
        return self.grid.id

    def at(self, r) -> np.ndarray:
        """Evaluate slice ``w`` at ``r[w]`` for every grid point."""
        r = np.ascontiguousarray(r, dtype=np.float64)
        return kernels.field_eval(self._offsets, self._bps, self._vals, self._left, self._right, r)

    def apply(self, f: GridFunction) -> GridFunction:
        _check_function(self.grid, f)
        return GridFunction(self.grid, self.at(f.values))

    def lip_constants(self) -> np.ndarray:
        return np.array([s.lip_constant() for s in self.slices])


class TensorOperator:
    """``T f (w) = sum_i f_i(w) * phi_i(f(w))``."""

    kind = "tensor"

    def __init__(self, grid: CompactGrid, terms: Sequence[tuple[GridFunction, ScalarPWL]]):
        terms = tuple(terms)
        if not terms:
            raise InvalidParameter("a tensor needs at least one term")
        for f, _ in terms:
            _check_function(grid, f)
        self.grid = grid
        self.terms = terms

    def __repr__(self) -> str:
        return f"TensorOperator(terms={len(self.terms)}, grid={self.grid.id})"

    @property
    def grid_id(self) -> str:
        return self.grid.id

    def apply(self, f: GridFunction) -> GridFunction:
        _check_function(self.grid, f)
        out = np.zeros(len(self.grid))
        for coef, phi in self.terms:
            out += coef.values * phi(f.values)
        return GridFunction(self.grid, out)


class MultiplicationOperator:
    """``T f = h * f``."""

    kind = "multiplication"

    def __init__(self, grid: CompactGrid, h: GridFunction):
        _check_function(grid, h)
        self.grid = grid
        self.h = h

    def __repr__(self) -> str:
        return f"MultiplicationOperator(grid={self.grid.id})"

    @property
    def grid_id(self) -> str:
        return self.grid.id

    def apply(self, f: GridFunction) -> GridFunction:
        _check_function(self.grid, f)
        return GridFunction(self.grid, self.h.values * f.values)


OperatorRep = Union[SampleOperator, SuperpositionField, TensorOperator, MultiplicationOperator]
KINDS = {c.kind: c for c in (SampleOperator, SuperpositionField, TensorOperator, MultiplicationOperator)}


def evaluate(op: OperatorRep, f: GridFunction) -> GridFunction:
    return op.apply(f)


def multiplication_operator(grid: CompactGrid, h: GridFunction) -> MultiplicationOperator:
    return MultiplicationOperator(grid, h)


def graded_nodes(lo: float, hi: float, n: int, scale: float) -> np.ndarray:
    """``n`` nodes on ``[lo, hi]`` clustered around 0 with local spacing ~``scale``.

    Nodes are ``scale * sinh(t)`` for equally spaced ``t``; if the interval
    straddles 0 the node nearest 0 is moved onto it.
    """
    t = np.linspace(np.arcsinh(lo / scale), np.arcsinh(hi / scale), n)
    x = scale * np.sinh(t)
    x[0], x[-1] = lo, hi
    if lo < 0 < hi:
        x[np.argmin(np.abs(x))] = 0.0
    return x


def saturating_operator(
    grid: CompactGrid,
    k: float,
    r_range: tuple[float, float] = (-10.0, 10.0),
    n_break: int = 201,
    spacing: str = "graded",
    grading: float = 1e-3,
) -> SuperpositionField:
    """PWL interpolant of ``T_k f (w) = k / (k + |f(w)|)``, the same slice at every point.

    With ``spacing="graded"`` nodes cluster at ``r = 0`` (local spacing about
    ``grading * k``), where the slope of ``k / (k + |r|)`` peaks at ``1/k``;
    ``"uniform"`` spaces them evenly. Chords of this function never exceed
    ``1/k`` in slope, so neither choice breaks that bound.
    """
    if not k > 0:
        raise InvalidParameter(f"invalid-k: need k > 0, got {k}")
    lo, hi = map(float, r_range)
    if not lo < hi or n_break < 3:
        raise InvalidParameter("need r_range[0] < r_range[1] and n_break >= 3")
    if spacing == "graded":
        nodes = graded_nodes(lo, hi, n_break, grading * k)
    elif spacing == "uniform":
        nodes = np.linspace(lo, hi, n_break)
        if lo < 0 < hi:
            nodes[np.argmin(np.abs(nodes))] = 0.0
    else:
        raise InvalidParameter(f"unknown spacing {spacing!r}")
    slice_ = ScalarPWL.interpolate(lambda r: k / (k + np.abs(r)), nodes)
    return SuperpositionField.uniform(grid, slice_)


def as_field(op: OperatorRep) -> SuperpositionField:
    """Superposition form of any non-sample representation."""
    if isinstance(op, SuperpositionField):
        return op
    if isinstance(op, TensorOperator):
        return tensor_to_superposition(op)
    if isinstance(op, MultiplicationOperator):
        return SuperpositionField(op.grid, [ScalarPWL.linear(h) for h in op.h.values])
    raise InvalidParameter("sample operators need a bound function; use sample_to_superposition")


def tensor_to_superposition(t: TensorOperator) -> SuperpositionField:
    coeffs = np.array([f.values for f, _ in t.terms])
    parts = [phi for _, phi in t.terms]
    return SuperpositionField(t.grid, [linear_combination(coeffs[:, w], parts) for w in range(len(t.grid))])


def sample_to_superposition(
    s: SampleOperator,
    phi: GridFunction,
    consistency_tol: float = 1e-9,
    zero_tol: float = 1e-12,
) -> SuperpositionField:
    """Slice-wise McShane extension of the sampled graph.

    At each point the abscissas ``g_j(w)`` and ordinates ``T g_j(w)`` are
    extended to all of ``R`` with constant ``phi(w)``. Inputs agreeing at
    ``w`` (within ``zero_tol``) must have images agreeing within
    ``consistency_tol``; they are merged by averaging.
    """
    _check_function(s.grid, phi)
    if np.any(phi.values < 0):
        raise NegativeBound("bound function must be non-negative")
    G, TG = s.inputs, s.outputs
    slices = []
    for w in range(len(s.grid)):
        order = np.argsort(G[:, w], kind="stable")
        x = G[order, w]
        y = TG[order, w]
        # group runs of coincident abscissas
        starts = np.concatenate(([0], np.flatnonzero(np.diff(x) > zero_tol) + 1))
        ends = np.concatenate((starts[1:], [len(x)]))
        xs = np.empty(len(starts))
        ys = np.empty(len(starts))
        for t, (a, b) in enumerate(zip(starts, ends)):
            spread = y[a:b].max() - y[a:b].min()
            if spread > consistency_tol:
                raise IllDefinedAtPoint(w, s.grid.points[w], spread)
            xs[t] = x[a:b].mean()
            ys[t] = y[a:b].mean()
        slices.append(mcshane_envelope(xs, ys, phi.values[w]))
    return SuperpositionField(s.grid, slices)


def superposition_to_tensor(field: SuperpositionField) -> TensorOperator:
    """Tensor form with one term per grid point: ``sum_w e_w (x) slice_w``.

    On a finite grid the point indicators ``e_w`` are continuous, so every
    field is an exact finite tensor.
    """
    n = len(field.grid)
    eye = np.eye(n)
    return TensorOperator(field.grid, [(GridFunction(field.grid, eye[w]), s) for w, s in enumerate(field.slices)])
