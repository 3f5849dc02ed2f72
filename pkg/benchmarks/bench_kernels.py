"""Time the compiled and pure-Python classification kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--h 0.02] [--repeat 3]
"""

import argparse
import time

import numpy as np

from medkura import _backend
from medkura.params import Params
from medkura.proximity import classify, prepare
from medkura.scenarios import lookup


CASES = (("circles", 0.5), ("parabola-shift", 0.8), ("trapezoid-b", 0.5), ("double-circle", -0.5))


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--h", type=float, default=0.02)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    backends = ["python"] + (["cython"] if _backend.BACKEND == "cython" else [])
    print(f"{'scenario':16s} {'nodes':>7s} " + " ".join(f"{b:>10s}" for b in backends) + "   speedup  equal")
    for name, t in CASES:
        sc = lookup(name)
        w = sc.window.with_h(args.h)
        p = Params.for_h(args.h)
        s = prepare(sc.at(t), w, p.eps)
        nodes = w.nodes()
        s.grid  # build lazily cached structures outside the timed region
        res = {b: best_of(lambda b=b: classify(s, nodes, p, backend=b), args.repeat) for b in backends}
        times = " ".join(f"{res[b][0]:9.3f}s" for b in backends)
        if len(backends) == 2:
            a, c = res["python"][1], res["cython"][1]
            same = all(np.array_equal(x, y) for x, y in zip(
                (a.distance, a.count, a.seed, a.seed2), (c.distance, c.count, c.seed, c.seed2)))
            extra = f"{res['python'][0] / res['cython'][0]:9.1f}x  {same}"
        else:
            extra = "        -  (compiled kernel not built)"
        print(f"{name:16s} {len(nodes):7d} {times} {extra}")


if __name__ == "__main__":
    main()
