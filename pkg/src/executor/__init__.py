from src.executor.executor import KernelExecutor, TimingReport, execute_schedule, measure_kernels
from src.executor.graph import build_kernel_graph, kernel_order, parallel_kernels, sequential_kernels
from src.executor.kernels import KERNELS, SolverContext
from src.executor.lane_interface import LaneInterface
from src.executor.scheduler import Schedule, enumerate_assignments, makespan, optimize_assignment
from src.executor.thread_lane import ThreadLane, make_lanes
from src.executor.timings import KernelStat, LaneTimings, read_timings, read_totals, write_timings
