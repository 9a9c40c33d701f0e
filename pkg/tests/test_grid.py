import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from llip.errors import EmptyAdjacency, GridMismatch, InvalidRange, NonFiniteValue
from llip.grid import CompactGrid, GridFunction, constant, continuity_report, make_interval_grid, tabulate


def test_interval_grid_points():
    assert make_interval_grid(0, 1, 5).coords().tolist() == [0, 0.25, 0.5, 0.75, 1]
    assert make_interval_grid(-1, 1, 3).coords().tolist() == [-1, 0, 1]


def test_interval_grid_midpoint_exact():
    g = make_interval_grid(-1, 1, 401)
    assert g.coords()[200] == 0.0
    assert g.coords()[-1] == 1.0


@pytest.mark.parametrize("a, b, n", [(1, 0, 5), (0, 0, 5), (0, 1, 1)])
def test_interval_grid_invalid(a, b, n):
    with pytest.raises(InvalidRange):
        make_interval_grid(a, b, n)


def test_grid_rejects_close_points():
    with pytest.raises(InvalidRange):
        CompactGrid([[0.0], [1e-13], [1.0]])
    with pytest.raises(InvalidRange):
        CompactGrid([[0.0]])


def test_grid_identity_and_immutability():
    a = make_interval_grid(0, 1, 11)
    b = make_interval_grid(0, 1, 11)
    c = CompactGrid(a.points, "chebyshev")
    assert a == b and a.id == b.id
    assert a.id != c.id
    with pytest.raises(AttributeError):
        a.metric = "chebyshev"
    with pytest.raises(ValueError):
        a.points[0, 0] = 3.0


def test_chebyshev_metric_2d():
    g = CompactGrid([[0, 0], [1, 2], [3, 1]], "chebyshev")
    assert g.distances[0, 1] == 2.0
    assert g.distances[1, 2] == 2.0
    e = CompactGrid([[0, 0], [3, 4]])
    assert e.distances[0, 1] == 5.0


def test_tabulate():
    g = make_interval_grid(-1, 1, 3)
    assert tabulate(g, lambda w: 1.0).values.tolist() == [1, 1, 1]
    assert tabulate(g, lambda w: w).values.tolist() == [-1, 0, 1]
    with pytest.raises(NonFiniteValue):
        tabulate(g, lambda w: 1 / w if w else float("inf"))


def test_grid_function_validation():
    g = make_interval_grid(0, 1, 3)
    with pytest.raises(InvalidRange):
        GridFunction(g, [1.0, 2.0])
    with pytest.raises(NonFiniteValue):
        GridFunction(g, [1.0, np.nan, 2.0])
    other = make_interval_grid(0, 2, 3)
    with pytest.raises(GridMismatch):
        g.check_same(other)


def test_continuity_constant():
    rep = continuity_report(constant(make_interval_grid(0, 1, 11), 3.0))
    assert rep.modulus == 0.0 and not rep.is_flagged_discontinuous


def test_continuity_indicator_flagged():
    g = make_interval_grid(-1, 1, 201)
    chi = tabulate(g, lambda w: 1.0 if w >= 0 else 0.0)
    rep = continuity_report(chi, 2 * 0.01, threshold=10)
    # enumeration: the only nonzero quotients straddle 0; the adjacent pair gives 1/0.01
    assert rep.modulus == pytest.approx(100.0, rel=1e-12)
    assert rep.is_flagged_discontinuous
    assert rep.worst_pair == (99, 100)


def test_continuity_identity_not_flagged():
    g = make_interval_grid(-1, 1, 201)
    rep = continuity_report(tabulate(g, lambda w: w), 2 * 0.01, threshold=10)
    assert rep.modulus == pytest.approx(1.0, rel=1e-12)
    assert not rep.is_flagged_discontinuous


def test_continuity_default_threshold_kink_not_flagged():
    g = make_interval_grid(-1, 1, 401)
    rep = continuity_report(tabulate(g, lambda w: max(0.0, w)))
    assert not rep.is_flagged_discontinuous


def test_continuity_tie_break_lowest_pair():
    g = make_interval_grid(0, 10, 11)
    rep = continuity_report(GridFunction(g, np.arange(11.0)), 1.5)
    assert rep.modulus == 1.0
    assert rep.worst_pair == (0, 1)


def test_continuity_empty_adjacency():
    g = make_interval_grid(0, 1, 11)
    with pytest.raises(EmptyAdjacency):
        continuity_report(constant(g, 1.0), 0.01)


@settings(max_examples=60, deadline=None)
@given(
    lip=st.floats(0.0, 50.0),
    phase=st.floats(-3.0, 3.0),
    n=st.integers(5, 80),
    radius_mult=st.floats(1.01, 6.0),
)
def test_lipschitz_rule_modulus_bounded(lip, phase, n, radius_mult):
    # |sin| is 1-Lipschitz, so lip * sin(x + phase) is lip-Lipschitz
    g = make_interval_grid(-2, 2, n)
    f = tabulate(g, lambda w: lip * np.sin(w + phase))
    rep = continuity_report(f, radius_mult * 4 / (n - 1))
    assert rep.modulus <= lip * (1 + 1e-12) + 1e-12


def test_continuity_reverse_order_same_modulus(rng):
    pts = np.sort(rng.uniform(0, 1, 40))
    g = CompactGrid(pts)
    g_rev = CompactGrid(pts[::-1])
    v = rng.normal(size=40)
    a = continuity_report(GridFunction(g, v), 0.1, threshold=1.0)
    b = continuity_report(GridFunction(g_rev, v[::-1]), 0.1, threshold=1.0)
    assert a.modulus == b.modulus
