#benchmark
import time
from collections import defaultdict
from typing import Dict, List, Tuple

import numpy as np


class KernelTimer:
    """
    kernel x lane 별 wall time 수집 (perf_counter_ns)
    """

    def __init__(self):
        self.samples: Dict[Tuple[str, str], List[int]] = defaultdict(list)

    def record(self, kernel: str, lane: str, elapsed_ns: int) -> None:
        self.samples[(kernel, lane)].append(int(elapsed_ns))

    def summary(self) -> Dict[Tuple[str, str], Tuple[float, float, int]]:
        """{(kernel, lane): (mean_ms, std_ms, count)}"""
        out = {}
        for key, values in self.samples.items():
            ms = np.asarray(values, dtype=float) / 1e6
            out[key] = (float(ms.mean()), float(ms.std()), int(ms.size))
        return out


def timer_resolution_ms() -> float:
    return time.get_clock_info("perf_counter").resolution * 1e3
