"""Timing harness comparing direct vs fast paths and both kernels.

Correctness fields in the report are deterministic; timings obviously
are not.  The shift kernel is a bit-serial fidelity model costing
O(exponent) per product, so expect it to be slow at large lengths.
"""

import statistics
import time
from dataclasses import dataclass

import numpy as np

from .transform import (
    ResidueSequence,
    build_plan,
    forward_direct,
    forward_fast,
)

CSV_HEADER = "n,modulus,kernel,path,median_ns,outputs_match"


@dataclass(frozen=True)
class BenchResult:
    n: int
    modulus: int
    kernel: str
    path: str
    median_ns: int
    outputs_match: bool

    def csv_row(self) -> str:
        return (
            f"{self.n},{self.modulus},{self.kernel},{self.path},"
            f"{self.median_ns},{str(self.outputs_match).lower()}"
        )


def run_benchmark(
    length: int,
    modulus,
    kernels=("mul",),
    repeats: int = 5,
    seed: int = 0,
) -> list[BenchResult]:
    """Time forward transforms on one random input for every requested
    (kernel, path) combination.

    outputs_match reports bit-exact agreement with the reference output
    (direct path, mul kernel) on the same input.
    """
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    reference_plan = build_plan(length, modulus, kernel="mul")
    rng = np.random.default_rng(seed)
    x = ResidueSequence(
        tuple(int(v) for v in rng.integers(0, reference_plan.modulus, size=length)),
        reference_plan.modulus,
    )
    reference = forward_direct(x, reference_plan)

    results = []
    for kernel in kernels:
        plan = build_plan(length, modulus, kernel=kernel)
        for path, fn in (("direct", forward_direct), ("fast", forward_fast)):
            timings = []
            out = None
            for _ in range(repeats):
                t0 = time.perf_counter_ns()
                out = fn(x, plan)
                timings.append(time.perf_counter_ns() - t0)
            results.append(
                BenchResult(
                    n=length,
                    modulus=plan.modulus,
                    kernel=kernel,
                    path=path,
                    median_ns=int(statistics.median(timings)),
                    outputs_match=(out == reference),
                )
            )
    return results


def direct_over_fast_ratio(results: list[BenchResult], kernel: str = "mul") -> float:
    """Median-time ratio direct/fast for one kernel (> 1 means fast wins)."""
    by_path = {r.path: r for r in results if r.kernel == kernel}
    return by_path["direct"].median_ns / max(by_path["fast"].median_ns, 1)
