import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from llip.algebra import compose, identity_field, submultiplicativity_check
from llip.bounds import llip_norm
from llip.errors import GridMismatch
from llip.grid import constant, make_interval_grid
from llip.operators import SuperpositionField, as_field, multiplication_operator
from llip.pwl import ScalarPWL
from llip.sampling import random_field, random_function


@pytest.fixture
def grid():
    return make_interval_grid(0, 1, 11)


def dense_equal(a, b, rng, n=100, tol=1e-10):
    for _ in range(n):
        f = random_function(rng, a.grid, scale=10)
        if np.abs(a.apply(f).values - b.apply(f).values).max() > tol:
            return False
    return True


def test_identity_field(grid, rng):
    ident = identity_field(grid)
    f = random_function(rng, grid)
    assert ident.apply(f).values.tolist() == f.values.tolist()
    assert llip_norm(ident) == 1.0


def test_identity_is_two_sided_unit(grid, rng):
    T = random_field(rng, grid)
    ident = identity_field(grid)
    assert dense_equal(compose(ident, T), T, rng)
    assert dense_equal(compose(T, ident), T, rng)
    rep = submultiplicativity_check(T, ident)
    assert rep.pointwise_ok and np.all(rep.slack == 0.0)


def test_constant_is_absorbing(grid, rng):
    T = random_field(rng, grid)
    c = SuperpositionField.uniform(grid, ScalarPWL.constant(2.5))
    out = compose(c, T)
    assert llip_norm(out) == 0.0
    assert np.all(out.apply(random_function(rng, grid)).values == 2.5)


def test_multiplication_product(grid, rng):
    h1, h2 = random_function(rng, grid), random_function(rng, grid)
    T1 = as_field(multiplication_operator(grid, h1))
    T2 = as_field(multiplication_operator(grid, h2))
    out = compose(T2, T1)
    assert out.lip_constants().tolist() == np.abs(h2.values * h1.values).tolist()
    rep = submultiplicativity_check(T2, T1, out)
    assert rep.pointwise_ok and rep.global_ok


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_two_step_and_submultiplicativity(seed):
    rng = np.random.default_rng(seed)
    grid = make_interval_grid(0, 1, 6)
    T1, T2 = random_field(rng, grid), random_field(rng, grid)
    out = compose(T2, T1)
    for _ in range(20):
        f = random_function(rng, grid)
        np.testing.assert_allclose(out.apply(f).values, T2.apply(T1.apply(f)).values, rtol=0, atol=1e-10)
    rep = submultiplicativity_check(T2, T1, out)
    assert rep.pointwise_ok and rep.global_ok


def test_associative(grid, rng):
    A, B, C = (random_field(rng, grid) for _ in range(3))
    assert dense_equal(compose(compose(A, B), C), compose(A, compose(B, C)), rng)


def test_non_commutative(grid, rng):
    absval = SuperpositionField.uniform(grid, ScalarPWL.interpolate(np.abs, [-1.0, 0.0, 1.0]))
    shift = SuperpositionField.uniform(grid, ScalarPWL.linear(1.0, -1.0))
    f = constant(grid, 0.0)
    gap = np.abs(compose(absval, shift).apply(f).values - compose(shift, absval).apply(f).values).max()
    assert gap == 2.0


def test_grid_mismatch(grid, rng):
    other = make_interval_grid(0, 2, 11)
    with pytest.raises(GridMismatch):
        compose(random_field(rng, grid), random_field(rng, other))


def test_report_dict(grid, rng):
    d = submultiplicativity_check(random_field(rng, grid), random_field(rng, grid)).to_dict()
    assert set(d) == {"pointwise_ok", "global_ok", "worst_w", "max_slack", "composed_norm", "norm_product"}
