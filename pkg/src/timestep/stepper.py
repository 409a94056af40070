import logging
import time
from typing import List, Optional

from src.timestep.ssp_rk import SUBSTEPS_PER_STEP

logger = logging.getLogger("TimeLoop")


class Stepper:
    """
    SSP-RK2 step 진행

    executor 는 ctx (SolverContext), run_substep(schedule), run_substep_timed(schedule, timer) 를 제공한다.
    """

    def __init__(self, executor):
        self.executor = executor
        self.ctx = executor.ctx

    @property
    def step(self) -> int:
        return self.ctx.step

    def substep(self, schedule, timer=None) -> None:
        ctx = self.ctx
        if ctx.stage == 1:
            ctx.begin_step()
        if timer is None:
            self.executor.run_substep(schedule)
        else:
            self.executor.run_substep_timed(schedule, timer)
        if ctx.stage == SUBSTEPS_PER_STEP:
            ctx.stage = 1
            ctx.step += 1
        else:
            ctx.stage += 1

    def advance_step(self, schedule, timer=None) -> List[float]:
        """한 step (substep 2회), substep 별 ms 반환"""
        if self.ctx.stage != 1:
            raise RuntimeError("step 중간에서 advance_step 을 호출할 수 없습니다.")
        times = []
        for _ in range(SUBSTEPS_PER_STEP):
            start = time.perf_counter_ns()
            self.substep(schedule, timer)
            times.append((time.perf_counter_ns() - start) / 1e6)
        return times

    def run(self, schedule, steps: int, timer=None, log_every: Optional[int] = None) -> List[float]:
        times: List[float] = []
        for n in range(steps):
            times.extend(self.advance_step(schedule, timer))
            if log_every and (n + 1) % log_every == 0:
                logger.debug(f"🔧 step {self.ctx.step}, t={self.ctx.state.t:.6f}")
        self.ctx.state.check_finite(self.ctx.step)
        return times
