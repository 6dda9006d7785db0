"""Compare the compiled kernel module against the pure-Python fallback.

Times each backend entry point on representative arguments and prints
per-call latency plus the speedup ratio.  Run from a checkout where the
extension has been built:

    python3 benchmarks/bench_backends.py [--target-ms 200]
"""

import argparse
import sys
import time

import mlf._kernels_py as py_kernels

try:
    import mlf._kernels as c_kernels
except ImportError:
    c_kernels = None

# name, args, kwargs-free call on both modules
CASES = [
    ("lgamma_pos(3.7)", "lgamma_pos", (3.7,)),
    ("rgamma_real(-5.3)", "rgamma_real", (-5.3,)),
    ("digamma_real(0.25)", "digamma_real", (0.25,)),
    ("erfc_real(2.0)", "erfc_real", (2.0,)),
    ("gamma_p(2.5, 4.0)", "gamma_p", (2.5, 4.0)),
    ("ml_taylor_sum a=0.7 z=-3+2j", "ml_taylor_sum",
     (0.7, 1.0, -3.0, 2.0, 1e-12, 2000)),
    ("e1b_series b=1.5 z=-6+3j", "e1b_series", (1.5, -6.0, 3.0)),
    ("neg_axis_integral a=0.6 x=1", "neg_axis_integral",
     (0.6, 1.0, 1.0, 1e-12, 1e-300, 2000)),
    ("neg_axis_integral a=0.9 x=50", "neg_axis_integral",
     (0.9, 0.9, 50.0, 1e-12, 1e-300, 2000)),
    ("stable_series a=0.6 t=2", "stable_series", (0.6, 2.0, 1e-12, 1)),
]


def per_call_seconds(fn, args, target_s):
    """Repeat fn(*args) until target_s of wall time; return seconds/call."""
    reps = 1
    while True:
        t0 = time.perf_counter()
        for _ in range(reps):
            fn(*args)
        dt = time.perf_counter() - t0
        if dt >= target_s or reps >= 1 << 24:
            return dt / reps
        # overshoot the projected count slightly so one more pass suffices
        reps = max(reps * 2, int(reps * 1.2 * target_s / max(dt, 1e-9)))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--target-ms", type=float, default=200.0,
                    help="wall time spent per measurement (default 200)")
    opts = ap.parse_args(argv)
    if c_kernels is None:
        print("compiled extension mlf._kernels is not importable; "
              "build it first (pip install -e .)", file=sys.stderr)
        return 1
    target = opts.target_ms / 1000.0
    width = max(len(label) for label, _, _ in CASES)
    print(f"{'case':<{width}}  {'compiled':>10}  {'python':>10}  speedup")
    for label, name, args in CASES:
        tc = per_call_seconds(getattr(c_kernels, name), args, target)
        tp = per_call_seconds(getattr(py_kernels, name), args, target)
        print(f"{label:<{width}}  {tc * 1e6:>8.2f}us  {tp * 1e6:>8.2f}us  "
              f"x{tp / tc:.1f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
