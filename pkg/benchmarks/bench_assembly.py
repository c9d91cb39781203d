"""Timing comparison of the pairwise-assembly backends.

Fills the dense kernel matrix for each variant on n random points with the
compiled (numba) path and the pure-numpy path, reporting wall time and the
largest relative disagreement. Run as:

    python3 benchmarks/bench_assembly.py [--n 1200] [--repeats 3]

The compiled block is skipped when numba is unavailable or disabled via
EMDOF_DISABLE_NUMBA.
"""

import argparse
import math
import time

import numpy as np

from emdof import backend, kernels
from emdof.kernels import KernelSpec, pairwise_numpy
from emdof.quadrature import gauss_legendre_rule


def _cases():
    return [
        (KernelSpec.time1d(2 * math.pi), 1),
        (KernelSpec.disk2d(25.0), 2),
        (KernelSpec.ball3d(40.0), 3),
        (KernelSpec.shell3d(40.0, 15.0), 3),
        (KernelSpec.sphere3d(40.0), 3),
        (KernelSpec.spacetime(40.0, c=3e8), 4),
        (KernelSpec.dual_ball(0.5), 3),
        (KernelSpec.dual_cuboid(0.3, 0.5, 0.7), 3),
    ]


def _points(rng, n, dim, variant):
    pts = rng.uniform(-0.4, 0.4, size=(n, dim))
    if variant == kernels.SPACETIME:
        pts[:, 3] = rng.uniform(0.0, 2e-9, size=n)
    return np.ascontiguousarray(pts)


def _best_of(fn, repeats):
    best = math.inf
    for _ in range(repeats):
        start = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - start)
    return best, out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=1200, help="points per fill")
    parser.add_argument("--repeats", type=int, default=3, help="timing repeats")
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    use_compiled = backend.USE_NUMBA
    if use_compiled:
        from emdof import _accel

        # trigger compilation outside the timed region
        warm = _points(rng, 8, 3, kernels.BALL3D)
        for spec, dim in _cases():
            _accel.pairwise(spec, _points(rng, 8, dim, spec.variant))
        del warm
    else:
        print(
            "compiled path unavailable "
            "(numba missing or EMDOF_DISABLE_NUMBA set); timing numpy only"
        )

    header = f"{'kernel':<12} {'numpy':>10} {'numba':>10} {'speedup':>8} {'max rel diff':>13}"
    print(f"pairwise fill, n = {args.n} points, best of {args.repeats}")
    print(header)
    print("-" * len(header))
    for spec, dim in _cases():
        pts = _points(rng, args.n, dim, spec.variant)
        t_np, plain = _best_of(lambda: pairwise_numpy(spec, pts), args.repeats)
        if use_compiled:
            from emdof import _accel

            t_nb, compiled = _best_of(lambda: _accel.pairwise(spec, pts), args.repeats)
            scale = max(float(np.max(np.abs(plain))), 1e-30)
            diff = float(np.max(np.abs(compiled - plain))) / scale
            print(
                f"{spec.variant:<12} {t_np:>9.3f}s {t_nb:>9.3f}s "
                f"{t_np / t_nb:>7.1f}x {diff:>13.2e}"
            )
        else:
            print(f"{spec.variant:<12} {t_np:>9.3f}s {'-':>10} {'-':>8} {'-':>13}")

    n_rule = 2000
    t_rule, _ = _best_of(lambda: gauss_legendre_rule(n_rule), args.repeats)
    print(f"\ngauss_legendre_rule(n={n_rule}): {t_rule:.3f}s")


if __name__ == "__main__":
    main()
