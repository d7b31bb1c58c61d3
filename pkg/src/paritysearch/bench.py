"""Micro-benchmark of the hot kernels under both backends.

Times the categorical tally, the parity-sign construction, and the
axis-wise mean reflection on cap-scale inputs, reporting the best of
``repeats`` runs per backend.  JIT compilation is triggered before timing.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from . import backends


@dataclass(frozen=True)
class BenchRow:
    kernel: str
    backend: str
    size: int
    best_ms: float


def _time_best(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        started = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - started)
    return best * 1000.0


def _cases(dim: int, eta: int, draws: int):
    rng = np.random.default_rng(2024)
    dist = rng.random(dim)
    dist /= dist.sum()
    cum = np.cumsum(dist)
    uniforms = rng.random(draws)
    mask = np.zeros(dim, dtype=bool)
    mask[dim // 2] = True
    size = dim**eta
    amps = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    amps /= np.linalg.norm(amps)

    return [
        ("categorical_counts", draws, lambda mod: mod.categorical_counts(cum, uniforms, dim)),
        ("digit_parity_signs", size, lambda mod: mod.digit_parity_signs(dim, eta, mask)),
        (
            "reflect_about_axis_means",
            size,
            lambda mod: mod.reflect_about_axis_means(amps, dim, eta),
        ),
    ]


def run_bench(dim: int = 4, eta: int = 10, draws: int = 1_000_000, repeats: int = 3) -> list[BenchRow]:
    """Benchmark every kernel on each available backend."""
    backends.warm_up()
    rows = []
    for kernel, size, call in _cases(dim, eta, draws):
        for name in backends.available_backends():
            mod = backends.kernels(name)
            rows.append(
                BenchRow(
                    kernel=kernel,
                    backend=name,
                    size=size,
                    best_ms=_time_best(lambda: call(mod), repeats),
                )
            )
    return rows


def format_table(rows: list[BenchRow]) -> str:
    header = f"{'kernel':<26} {'backend':<8} {'size':>9} {'best_ms':>10}"
    lines = [header, "-" * len(header)]
    for row in rows:
        lines.append(f"{row.kernel:<26} {row.backend:<8} {row.size:>9} {row.best_ms:>10.3f}")
    by_kernel: dict[str, dict[str, float]] = {}
    for row in rows:
        by_kernel.setdefault(row.kernel, {})[row.backend] = row.best_ms
    for kernel, timings in by_kernel.items():
        if "numba" in timings and "numpy" in timings and timings["numba"] > 0:
            lines.append(f"{kernel}: numpy/numba = {timings['numpy'] / timings['numba']:.2f}x")
    return "\n".join(lines)
