"""Benchmark: compiled kernel twins vs the pure-Python fallback.

Runs the hot inner loops on representative acceptance-scale inputs and
prints one table row per kernel.  Also cross-checks that both backends
return identical exact results before timing anything.

    python benchmarks/bench_core.py [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

from qcayley._core import BACKEND, backends


CASES = [
    ("bfs_tree Au(3) r=14",
     lambda impl: impl.bfs_tree([0, 0], [1, -1], [False], [3], 14, 10**6)),
    ("bfs_tree Ao(3)*Au(3) r=10",
     lambda impl: impl.bfs_tree([0, 1, 1], [0, 1, -1], [True, False], [3, 3], 10, 10**6)),
    ("cn_lower_scaled N=3 n=8",
     lambda impl: impl.cn_lower_scaled(3, 8, (1,) * 8)),
    ("cn_lower_scaled N=4 n=8",
     lambda impl: impl.cn_lower_scaled(4, 8, (1, 2, 3, 4, 1, 2, 3, 4))),
    ("ql_sums_scaled N=4 n=8",
     lambda impl: impl.ql_sums_scaled(4, 8, (1, 2, 3, 4, 1, 2, 3, 4))),
    ("parseval_violations N=4 n=4",
     lambda impl: impl.parseval_violations(4, 4)),
]


def _normalize(value):
    if isinstance(value, tuple):  # bfs_tree returns arrays/lists; compare contents
        return tuple(list(part) for part in value)
    return value


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    impls = backends()
    print(f"selected backend: {BACKEND}; available: {sorted(impls)}")
    if len(impls) == 1:
        print("compiled kernels not built; timing the pure backend only")

    header = f"{'kernel':34s}" + "".join(f"{name:>14s}" for name in sorted(impls))
    if len(impls) == 2:
        header += f"{'speedup':>10s}"
    print(header)

    for label, runner in CASES:
        results = {}
        times = {}
        for name, impl in sorted(impls.items()):
            best = float("inf")
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                value = runner(impl)
                best = min(best, time.perf_counter() - t0)
            results[name] = _normalize(value)
            times[name] = best
        values = list(results.values())
        assert all(v == values[0] for v in values), f"backend mismatch on {label}"
        row = f"{label:34s}" + "".join(f"{times[name] * 1e3:>12.2f}ms" for name in sorted(times))
        if len(times) == 2:
            row += f"{times['python'] / times['compiled']:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
