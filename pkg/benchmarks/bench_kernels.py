"""Compare the compiled and pure-Python stationary-point kernels.

Run with ``python3 benchmarks/bench_kernels.py [--repeat N]``. Both backends
are loaded side by side, so a single process measures both; the sweep timing
swaps ``spinlab.kernels`` entry points to route the whole pipeline through one
backend at a time.
"""

import argparse
import time
from contextlib import contextmanager

import numpy as np

from spinlab import kernels
from spinlab.diagram import SweepSpec, sweep

ROOT_ARGS = [
    (1.0, 0.5, 0.2, 0.0, 1.4, 2.3, 1.0),
    (1.0, 0.5, 0.2, 0.05, 1.0, 3.0, 1.0),
    (0.7, 1.1, -0.4, 0.3, 0.8, 1.2, -1.0),
]


@contextmanager
def backend(name):
    impl = kernels.available_backends()[name]
    names = ("surface_energy", "surface_d1", "surface_d2", "scan_roots")
    saved = {n: getattr(kernels, n) for n in names}
    try:
        for n in names:
            setattr(kernels, n, getattr(impl, n))
        yield impl
    finally:
        for n, f in saved.items():
            setattr(kernels, n, f)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--steps", type=int, default=50, help="sweep grid is steps x steps")
    args = parser.parse_args()

    names = sorted(kernels.available_backends())
    if len(names) < 2:
        print(f"only {names} available; build the extension to compare")
    spec = SweepSpec(j_steps=args.steps, jc_steps=args.steps)

    results = {}
    outputs = {}
    for name in names:
        with backend(name) as impl:
            scan = best_of(lambda: [impl.scan_roots(*a, 1024) for a in ROOT_ARGS for _ in range(50)], args.repeat)
            grid_time = best_of(lambda: outputs.__setitem__(name, sweep(spec)), args.repeat)
        results[name] = (scan / (50 * len(ROOT_ARGS)), grid_time)

    print(f"{'backend':<8} {'scan_roots [ms]':>16} {'sweep ' + str(args.steps) + 'x' + str(args.steps) + ' [s]':>16}")
    for name, (scan, grid_time) in results.items():
        print(f"{name:<8} {1e3 * scan:>16.3f} {grid_time:>16.3f}")
    if len(results) == 2:
        (s_c, g_c), (s_p, g_p) = results["cython"], results["python"]
        print(f"speed-up: scan_roots x{s_p / s_c:.1f}, sweep x{g_p / g_c:.1f}")
        a, b = outputs["cython"], outputs["python"]
        print(f"labels agree across backends: {np.array_equal(a.labels, b.labels)}")


if __name__ == "__main__":
    main()
