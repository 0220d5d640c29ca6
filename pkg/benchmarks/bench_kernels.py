"""Time the numba and numpy kernels side by side and check they agree.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import time

import numpy as np

from singtool import kernels


def best_of(fn, repeat):
    fn()  # warm-up (JIT compile on first call)
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not kernels.HAVE_NUMBA:
        print("numba unavailable or disabled; nothing to compare")
        return
    rng = np.random.default_rng(0)
    pts = rng.uniform(-2, 2, size=(20000, 4))
    one = pts[:1]
    field = rng.normal(size=(401, 401)).cumsum(axis=0).cumsum(axis=1)
    centers = 0.25 * (field[:-1, :-1] + field[1:, :-1] + field[:-1, 1:] + field[1:, 1:])

    cases = [
        ("esp_ladder 20000x4 j<=24", kernels.esp_ladder_numpy, kernels.esp_ladder_numba, (pts, 24)),
        ("esp_ladder_dd 20000x4 j<=24", kernels.esp_ladder_dd_numpy, kernels.esp_ladder_dd_numba,
         (pts, 24)),
        ("esp_ladder_dd single point j<=30", kernels.esp_ladder_dd_numpy,
         kernels.esp_ladder_dd_numba, (one, 30)),
        ("marching 401x401", kernels.marching_segments_numpy, kernels.marching_segments_numba,
         (field, centers)),
    ]
    print(f"{'kernel':36s} {'numpy ms':>10s} {'numba ms':>10s} {'speedup':>8s}  agree")
    for name, slow, fast, argv in cases:
        a, b = slow(*argv), fast(*argv)
        agree = np.array_equal(a, b) if a.dtype.kind == "i" else np.allclose(a, b, rtol=1e-13)
        ts = best_of(lambda: slow(*argv), args.repeat)
        tf = best_of(lambda: fast(*argv), args.repeat)
        print(f"{name:36s} {ts * 1e3:10.2f} {tf * 1e3:10.2f} {ts / tf:8.1f}  {agree}")


if __name__ == "__main__":
    main()
