import threading
import time

import pytest

from config import RunConfig
from runner import build_simulation, open_lanes
from src.errors import DepthDegeneracyError, LaneExecutionError
from src.executor import KERNELS, KernelExecutor, Schedule, ThreadLane, make_lanes, measure_kernels
from src.timestep import Stepper
from utils.benchmarks import KernelTimer


def test_lane_runs_jobs_in_submission_order():
    seen = []
    with ThreadLane("A", chunk_size=8) as lane:
        futures = [lane.submit(seen.append, i) for i in range(20)]
        for f in futures:
            f.result()
        assert lane.run(threading.current_thread) is not threading.current_thread()
    assert seen == list(range(20))


def test_lane_chunk_validation():
    with pytest.raises(ValueError):
        ThreadLane("A", chunk_size=0)
    lanes = make_lanes(64, None)
    try:
        assert lanes["A"].chunk_size == 64
        assert lanes["B"].chunk_size is None
    finally:
        for lane in lanes.values():
            lane.shutdown()


@pytest.fixture
def sim():
    return build_simulation(RunConfig(scenario="dam_break_static", nx=4, fraction=4, dt=1e-4, steps=1))


def test_kernel_failure_is_wrapped(sim, monkeypatch):
    def broken(ctx, chunk):
        raise KeyError("boom")

    monkeypatch.setitem(KERNELS, "min_depth", broken)
    with open_lanes(sim.config) as lanes:
        executor = KernelExecutor(sim.graph, sim.ctx, lanes)
        with pytest.raises(LaneExecutionError) as info:
            executor.run_substep(Schedule.homogeneous(sim.graph, "B"))
    assert info.value.kernel == "min_depth"
    assert info.value.lane == "B"


def test_numerical_errors_pass_through(sim, monkeypatch):
    def degenerate(ctx, chunk):
        raise DepthDegeneracyError(element=3)

    monkeypatch.setitem(KERNELS, "solve_uH", degenerate)
    with open_lanes(sim.config) as lanes:
        executor = KernelExecutor(sim.graph, sim.ctx, lanes)
        with pytest.raises(DepthDegeneracyError):
            executor.run_substep(Schedule.homogeneous(sim.graph, "A"))


def test_timed_substep_records_every_kernel(sim):
    timer = KernelTimer()
    with open_lanes(sim.config) as lanes:
        stepper = Stepper(KernelExecutor(sim.graph, sim.ctx, lanes))
        stepper.advance_step(Schedule.homogeneous(sim.graph, "A"), timer)
    summary = timer.summary()
    assert set(summary) == {(k, "A") for k in sim.graph.nodes}
    assert all(count == 2 for _, _, count in summary.values())


def test_measure_kernels(sim):
    with open_lanes(sim.config) as lanes:
        report = measure_kernels(sim.stepper(lanes), "B", warmup_substeps=1, measured_substeps=3)
    assert report.mode == "measure_B"
    assert len(report.substep_ms) == 3
    assert set(report.kernel_stats.kernels()) == set(sim.graph.nodes)
    assert report.kernel_stats.lanes() == ["B"]
    assert report.kernel_stats.get("edge_base", "B").samples == 3
    with pytest.raises(ValueError):
        measure_kernels(sim.stepper({}), "A", warmup_substeps=0, measured_substeps=0)


def _counting(monkeypatch, name, delay_calls=0, delay_s=0.0):
    original = KERNELS[name]
    calls = []

    def wrapped(ctx, chunk):
        calls.append(chunk)
        if len(calls) <= delay_calls:
            time.sleep(delay_s)
        original(ctx, chunk)

    monkeypatch.setitem(KERNELS, name, wrapped)
    return calls


def test_measure_kernels_sample_counts(sim, monkeypatch):
    calls = _counting(monkeypatch, "elem_rhs_base")
    with open_lanes(sim.config) as lanes:
        report = measure_kernels(sim.stepper(lanes), "A", warmup_substeps=3, measured_substeps=5)
    assert len(calls) == 8
    assert all(stat.samples == 5 for stat in report.kernel_stats.stats.values())
    assert len(report.kernel_stats) == sim.graph.number_of_nodes()


def test_measure_kernels_excludes_warmup(sim, monkeypatch):
    _counting(monkeypatch, "edge_base", delay_calls=2, delay_s=0.05)
    with open_lanes(sim.config) as lanes:
        report = measure_kernels(sim.stepper(lanes), "B", warmup_substeps=2, measured_substeps=3)
    assert report.kernel_stats.get("edge_base", "B").mean_ms < 25.0
    assert max(report.substep_ms) < 50.0


@pytest.mark.slow
def test_element_kernel_time_grows_linearly():
    means, sizes = [], []
    for nx in (64, 90):
        config = RunConfig(scenario="dam_break_static", nx=nx, base_order=1, full_order=2, fraction=8, dt=1e-5,
                           lane_b_chunk=None)
        sim = build_simulation(config)
        with open_lanes(config) as lanes:
            report = measure_kernels(sim.stepper(lanes), "B", warmup_substeps=5, measured_substeps=20)
        means.append(report.kernel_stats.get("elem_rhs_base", "B").mean_ms)
        sizes.append(sim.mesh.n_elements)
    expected = sizes[1] / sizes[0]
    assert expected == pytest.approx(2.0, rel=0.02)
    assert 0.7 * expected <= means[1] / means[0] <= 1.3 * expected
