import numpy as np
import pytest

from src.adaptivity import (Decision, IndicatorThresholds, OrderField, apply_order_change, base_ranges,
                            correction_ranges, full_range, indicator_kernel, jump_indicator)
from src.dg import State
from src.dg.index_range import IndexRange
from src.errors import ConfigError
from tests.conftest import random_state


@pytest.mark.parametrize("b, hi", [(0, 1), (1, 3), (2, 6)])
def test_base_ranges(b, hi):
    assert base_ranges(b) == IndexRange(1, hi, 1, hi)


def test_correction_ranges():
    assert correction_ranges(0, 1) == (IndexRange(1, 1, 2, 3), IndexRange(2, 3, 1, 3))
    assert correction_ranges(1, 2) == (IndexRange(1, 3, 4, 6), IndexRange(4, 6, 1, 6))


def test_invalid_ranges():
    with pytest.raises(ValueError):
        base_ranges(3)
    with pytest.raises(ValueError):
        correction_ranges(0, 2)
    with pytest.raises(ValueError):
        IndexRange(0, 1, 1, 1)
    with pytest.raises(ValueError):
        IndexRange(1, 11, 1, 1)


def test_full_range_width():
    assert full_range(2).width == 6
    assert IndexRange(1, 1, 2, 3).width == 3


def test_static_fraction_every_kth_element():
    field = OrderField.static_fraction(100, 0, 1, 32)
    assert list(field.full_elements()) == [0, 32, 64, 96]
    assert field.fraction() == pytest.approx(0.04)
    assert field.adaptive


def test_order_field_validation():
    with pytest.raises(ValueError):
        OrderField(base=0, full=2, orders=np.zeros(4))
    with pytest.raises(ValueError):
        OrderField(base=0, full=1, orders=np.array([0, 1, 2]))
    assert not OrderField.uniform(5, 2).adaptive


def test_mode_mask():
    field = OrderField(base=1, full=2, orders=np.array([1, 2, 1]))
    mask = field.mode_mask(10)
    assert mask.shape == (3, 1, 10)
    assert mask[:, 0].sum(axis=1).tolist() == [3.0, 6.0, 3.0]


def _state_with_modes(seed=0):
    rng = np.random.default_rng(seed)
    state = State.allocate(4, 6, 2, 3)
    state.c[:, :, 0] = rng.uniform(1.0, 2.0, (4, 3))
    state.u[:, :, 0] = rng.uniform(-1.0, 1.0, (4, 2))
    return state


def test_raise_then_lower_restores_state():
    state = _state_with_modes()
    original = state.copy()
    field = OrderField(base=0, full=1, orders=np.zeros(4))
    apply_order_change(state, field, np.full(4, Decision.RAISE), step=1)
    assert field.full_count() == 4
    assert np.array_equal(state.c[:, :, 0], original.c[:, :, 0])
    state.c[:, :, 1:] = 0.25  # 고차 모드가 진화한 상태
    apply_order_change(state, field, np.full(4, Decision.LOWER), step=2)
    assert field.full_count() == 0
    assert np.array_equal(state.c, original.c)
    assert np.array_equal(state.u, original.u)
    assert [s.refined for s in field.history] == [4, 0]
    assert [s.coarsened for s in field.history] == [0, 4]


def test_raise_zero_initializes_new_modes():
    state = _state_with_modes(1)
    state.c[2, :, 1:] = 7.0
    field = OrderField(base=0, full=1, orders=np.zeros(4))
    decisions = np.array([Decision.KEEP, Decision.KEEP, Decision.RAISE, Decision.LOWER])
    stats = apply_order_change(state, field, decisions)
    assert np.all(state.c[2, :, 1:] == 0.0)
    assert stats.refined == 1
    assert stats.coarsened == 0
    assert field.orders.tolist() == [0, 0, 1, 0]


def test_mean_fraction():
    field = OrderField(base=0, full=1, orders=np.zeros(4))
    state = _state_with_modes()
    apply_order_change(state, field, np.array([1, 0, 0, 0]), step=0)
    apply_order_change(state, field, np.array([0, 1, 0, 0]), step=1)
    assert field.mean_fraction() == pytest.approx((0.25 + 0.5) / 2)
    assert field.mean_fraction(after_step=1) == pytest.approx(0.5)


def test_thresholds_need_hysteresis():
    with pytest.raises(ConfigError):
        IndicatorThresholds(refine=1e-3, coarsen=1e-3)
    with pytest.raises(ConfigError):
        IndicatorThresholds(max_fraction=0.0)
    with pytest.raises(ConfigError):
        IndicatorThresholds(max_fraction=1.5)
    thresholds = IndicatorThresholds()
    assert thresholds.refine == 1e-3
    assert thresholds.coarsen == 2e-4
    assert thresholds.budget(8192) == 655


def _lake(mesh, tables):
    state = State.allocate(mesh.n_elements, mesh.n_edges, mesh.boundary_edges.size, tables.size)
    state.c[:, 0, 0] = tables.sqrt_area
    state.hb[:, 0] = 0.5 * tables.sqrt_area
    return state


def test_constant_elevation_has_no_jumps(small_mesh, small_tables):
    state = _lake(small_mesh, small_tables)
    eta = jump_indicator(small_mesh, state, small_tables)
    assert np.allclose(eta, 0.0, atol=1e-14)

    field = OrderField.static_fraction(small_mesh.n_elements, 0, 1, 4)
    decisions = indicator_kernel(small_mesh, state, small_tables, field, IndicatorThresholds())
    assert np.all(decisions[field.orders == 1] == Decision.LOWER)
    assert np.all(decisions[field.orders == 0] == Decision.KEEP)


def test_perturbed_element_and_neighbors_raise(small_mesh, small_tables):
    mesh = small_mesh
    state = _lake(mesh, small_tables)
    target = 10
    state.c[target, 0, 0] += small_tables.sqrt_area[target]

    eta = jump_indicator(mesh, state, small_tables)
    edges = mesh.element_edges[target]
    inner = edges[mesh.edge_elements[edges, 1] >= 0]
    # H_ref = 2.5 (교란된 element 의 평균 수심), 가장 짧은 내부 edge 가 최대
    expected = 1.0 / 2.5 * mesh.edge_length.mean() / mesh.edge_length[inner].min()
    assert eta[target] == pytest.approx(expected, rel=1e-12)

    pairs = mesh.edge_elements[edges]
    neighbors = {int(e) for e in pairs.ravel() if e >= 0 and e != target}
    field = OrderField(base=0, full=1, orders=np.zeros(mesh.n_elements))
    decisions = indicator_kernel(mesh, state, small_tables, field, IndicatorThresholds(max_fraction=1.0))
    raised = set(np.flatnonzero(decisions == Decision.RAISE).tolist())
    assert raised == neighbors | {target}


def test_jump_scales_with_inverse_edge_length(small_mesh, small_tables):
    mesh = small_mesh
    state = _lake(mesh, small_tables)
    state.c[:, 0, 0] *= 1.0 + 0.1 * np.arange(mesh.n_elements) / mesh.n_elements
    eta = jump_indicator(mesh, state, small_tables)

    inner = mesh.interior_edges
    a, b = mesh.edge_elements[inner, 0], mesh.edge_elements[inner, 1]
    means = state.c[:, 0, 0] / small_tables.sqrt_area
    h_ref = (means + 0.5).max()
    jump = np.abs(means[a] - means[b]) / h_ref * mesh.edge_length.mean() / mesh.edge_length[inner]
    expected = np.zeros(mesh.n_elements)
    np.maximum.at(expected, a, jump)
    np.maximum.at(expected, b, jump)
    assert np.allclose(eta, expected, rtol=1e-12, atol=1e-15)


def test_hysteresis_band_keeps_both_orders(small_mesh, small_tables):
    state = random_state(small_mesh, small_tables, 1, seed=5)
    eta = jump_indicator(small_mesh, state, small_tables)
    target = int(np.argmax(eta))
    thresholds = IndicatorThresholds(refine=2.0 * eta[target], coarsen=0.5 * eta[target], max_fraction=1.0)
    for order in (0, 1):
        field = OrderField(base=0, full=1, orders=np.zeros(small_mesh.n_elements))
        field.orders[target] = order
        decisions = indicator_kernel(small_mesh, state, small_tables, field, thresholds)
        assert decisions[target] == Decision.KEEP


def _hysteresis_set(eta, orders, thresholds):
    return np.flatnonzero(((orders == 1) & (eta >= thresholds.coarsen)) | ((orders == 0) & (eta > thresholds.refine)))


def test_budget_keeps_largest_jumps(small_mesh, small_tables):
    state = random_state(small_mesh, small_tables, 1, seed=2)
    eta = jump_indicator(small_mesh, state, small_tables)
    thresholds = IndicatorThresholds(max_fraction=0.25)
    field = OrderField(base=0, full=1, orders=np.zeros(small_mesh.n_elements))
    field.orders[:8] = 1

    wanted = _hysteresis_set(eta, field.orders, thresholds)
    assert wanted.size > thresholds.budget(small_mesh.n_elements)
    top = set(wanted[np.lexsort((wanted, -eta[wanted]))][:8].tolist())

    decisions = indicator_kernel(small_mesh, state, small_tables, field, thresholds)
    assert set(np.flatnonzero(decisions == Decision.RAISE)) == top - set(range(8))
    assert set(np.flatnonzero(decisions == Decision.LOWER)) == set(range(8)) - top

    apply_order_change(state, field, decisions, step=1)
    assert set(field.full_elements().tolist()) == top
    assert field.fraction() <= thresholds.max_fraction


def test_budget_is_inactive_below_limit(small_mesh, small_tables):
    state = random_state(small_mesh, small_tables, 1, seed=2)
    field = OrderField(base=0, full=1, orders=np.zeros(small_mesh.n_elements))
    unlimited = indicator_kernel(small_mesh, state, small_tables, field, IndicatorThresholds(max_fraction=1.0))
    eta = jump_indicator(small_mesh, state, small_tables)
    assert np.array_equal(unlimited == Decision.RAISE, eta > 1e-3)


def test_indicator_is_nonnegative_per_element(small_mesh, small_tables):
    state = random_state(small_mesh, small_tables, 1, seed=4, amplitude=0.0)
    eta = jump_indicator(small_mesh, state, small_tables)
    assert eta.shape == (small_mesh.n_elements,)
    assert np.all(eta >= 0.0)
