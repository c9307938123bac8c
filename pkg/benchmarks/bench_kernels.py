"""Time the compiled kernels against the NumPy fallback.

Usage: ``python benchmarks/bench_kernels.py [--repeat 5]``.  Prints one row per
kernel and input size with the best time of each backend and the speed-up.
"""

import argparse
import timeit

import numpy as np

from approxclones import _kernels_py as py

try:
    from approxclones import _ckernels as cy
except ImportError:  # extension not built
    cy = None


def cases(rng):
    for m, ballots in ((4, 50), (10, 500), (30, 2000)):
        R = np.ascontiguousarray(np.argsort(rng.random((ballots, m)), axis=1).astype(np.int64))
        W = rng.integers(1, 5, ballots).astype(np.int64)
        alive = (rng.random(m) < 0.7).astype(np.uint8)
        alive[0] = 1
        M = py.margins(R, W)
        tag = f"m={m} B={ballots}"
        yield "positions", tag, (R,)
        yield "margins", tag, (R, W)
        yield "pair_counts", tag, (R, W)
        yield "first_choice_counts", tag, (R, W, alive)
        yield "widest_paths", f"m={m}", (M,)
    for count in (10_000, 100_000):
        batch = np.argsort(rng.random((count, 5, 4)), axis=2).astype(np.int8)
        yield "perfect_clone_flags", f"{count} IC m=4 n=5", (batch,)


def best(fn, args, repeat):
    timer = timeit.Timer(lambda: fn(*args))
    loops, _ = timer.autorange()
    return min(timer.repeat(repeat, loops)) / loops


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':<22}{'input':<22}{'numpy':>12}{'cython':>12}{'speed-up':>10}")
    for name, tag, inputs in cases(rng):
        t_py = best(getattr(py, name), inputs, args.repeat)
        if cy is None:
            print(f"{name:<22}{tag:<22}{t_py * 1e6:>10.1f}us{'-':>12}{'-':>10}")
            continue
        a, b = getattr(py, name)(*inputs), getattr(cy, name)(*inputs)
        for x, y in zip(a if isinstance(a, tuple) else (a,), b if isinstance(b, tuple) else (b,)):
            assert np.array_equal(x, y), f"{name} backends disagree"
        t_cy = best(getattr(cy, name), inputs, args.repeat)
        print(f"{name:<22}{tag:<22}{t_py * 1e6:>10.1f}us{t_cy * 1e6:>10.1f}us{t_py / t_cy:>9.1f}x")


if __name__ == "__main__":
    main()
