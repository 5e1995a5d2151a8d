"""Compare the pure-Python and compiled PBW kernels.

    python3 benchmarks/bench_kernel.py [--repeat 3]

Kernel timings use fresh kernel objects (cold memo tables).  The end-to-end
timing runs the sl(4) coproduct table in a subprocess per backend, since
the backend is fixed at import.
"""

import argparse
import os
import random
import subprocess
import sys
import time

from twistlab import make_gl, normal_order, tensor
from twistlab._kernel import available_backends
from twistlab.pbw import _num

END_TO_END = """
import time
from twistlab import compose_twists, coproduct_table, extension_factor, jordanian_twist, make_gl
from twistlab._kernel import BACKEND
t = time.perf_counter()
g = make_gl(4, weight=(0, 0, 1, 1))
j = jordanian_twist(g, "H_12", "E_24", -1, 1, 4)
F = compose_twists(extension_factor("P'", g, {"A": "E_23", "B": "E_34"}, 4, j.sigma), j)
coproduct_table(F)
print(BACKEND, time.perf_counter() - t)
"""


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--words", type=int, default=400)
    args = ap.parse_args()

    g = make_gl(4)
    br = {k: [(m, _num(c)) for m, c in sorted(v.items())] for k, v in g.structure.items()}
    rng = random.Random(0)
    words = [[rng.randrange(16) for _ in range(rng.randint(2, 7))] for _ in range(args.words)]
    elems = [normal_order(g, w) for w in words[:40]]
    pairs = [(tensor(elems[i], elems[i + 1]).terms, tensor(elems[i + 2], elems[i + 3]).terms)
             for i in range(0, 36, 4)]

    backends = available_backends()
    results = {}
    for name, cls in backends.items():
        def order_words():
            k = cls(16, br)
            for w in words:
                k.normal_order(w)

        def mul_tensors():
            k = cls(16, br)
            for a, b in pairs:
                k.tensor_mul(a, b)

        results[name] = (best_of(order_words, args.repeat), best_of(mul_tensors, args.repeat))

    print("%-8s %14s %14s" % ("kernel", "normal_order", "tensor_mul"))
    for name, (a, b) in results.items():
        print("%-8s %13.3fs %13.3fs" % (name, a, b))
    if "cython" in results:
        py, cy = results["python"], results["cython"]
        print("speedup  %13.2fx %13.2fx" % (py[0] / cy[0], py[1] / cy[1]))
    else:
        print("compiled kernel not built; only the fallback was timed")

    print("\nend to end: sl(4) coproduct table at order 4")
    for name in backends:
        env = dict(os.environ)
        env.pop("TWISTLAB_PURE", None)
        if name == "python":
            env["TWISTLAB_PURE"] = "1"
        out = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True,
                             text=True, check=True).stdout.split()
        print("%-8s %13.2fs" % (out[0], float(out[1])))


if __name__ == "__main__":
    main()
