"""Compare the numba kernels against the pure-numpy fallback.

Two parts:

* micro: collect / product / derivative on random packed components,
  after a warm-up call so numba compilation is not timed;
* end to end: the radical test of a root-vector power, run in a child
  process once with NICHOLS_NUMBA=1 and once with NICHOLS_NUMBA=0.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--json]
"""

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np

from nichols import _kernels as K


def random_component(rng, n, L, theta, N, bound=5):
    codes = np.unique(rng.integers(0, theta**L, size=n)).astype(np.int64)
    num = rng.integers(-bound, bound + 1, size=(codes.size, N)).astype(np.int64)
    return codes, num


def best_of(fn, repeat):
    fn()  # warm-up (compilation on the numba path)
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def micro(repeat):
    rng = np.random.default_rng(0)
    N, theta = 12, 3
    red = K.reduction_matrix(N)
    expvec = rng.integers(0, N, size=theta)
    rows = []
    for n, L in ((2_000, 10), (50_000, 14), (400_000, 16)):
        codes, num = random_component(rng, n, L, theta, N)
        dup = np.concatenate([codes, codes[: codes.size // 2]])
        dnum = np.concatenate([num, num[: num.size // (2 * N)]])
        ca, na = codes[:300], num[:300]
        cb, nb = random_component(rng, 200, 4, theta, N)
        cases = {
            "collect": (
                lambda: K._nb_collect(dup, dnum, red),
                lambda: K.numpy_collect(dup, dnum, red),
            ),
            "product": (
                lambda: K._nb_product(ca, na, cb, nb, np.int64(theta**4), red),
                lambda: K.numpy_product(ca, na, cb, nb, theta**4, red),
            ),
            "derivative": (
                lambda: K._nb_derivative(codes, num, L, theta, 1, expvec, 0, red),
                lambda: K.numpy_derivative(codes, num, L, theta, 1, expvec, 0, red),
            ),
        }
        for name, (nb_fn, np_fn) in cases.items():
            t_nb = best_of(nb_fn, repeat)
            t_np = best_of(np_fn, repeat)
            rows.append({"kernel": name, "terms": int(codes.size), "numba_s": t_nb, "numpy_s": t_np})
    return rows


END_TO_END = """
import time
from nichols.cartanweyl import Bicharacter, root_system
from nichols.quotient import Nichols
from nichols.relations import root_vector
chi = Bicharacter(5, [[3, 2], [0, 1]])
nq = Nichols(chi)
x = root_vector(chi, (2, 3), nq) ** 5
nq.in_radical(root_vector(chi, (1, 1), nq) ** 5)  # warm-up
t = time.perf_counter()
assert nq.in_radical(x)
print(time.perf_counter() - t)
"""


def end_to_end():
    out = {}
    for flag in ("1", "0"):
        env = dict(os.environ, NICHOLS_NUMBA=flag)
        res = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True, text=True, check=True)
        out["numba_s" if flag == "1" else "numpy_s"] = float(res.stdout.strip().splitlines()[-1])
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", action="store_true")
    ap.add_argument("--skip-e2e", action="store_true")
    args = ap.parse_args()
    if not K.HAVE_NUMBA:
        sys.exit("numba is not installed; nothing to compare")
    rows = micro(args.repeat)
    e2e = None if args.skip_e2e else end_to_end()
    if args.json:
        print(json.dumps({"micro": rows, "end_to_end": e2e}, indent=1))
        return
    print(f"{'kernel':<12}{'terms':>9}{'numba ms':>11}{'numpy ms':>11}{'speedup':>9}")
    for r in rows:
        print(
            f"{r['kernel']:<12}{r['terms']:>9}{1e3 * r['numba_s']:>11.2f}"
            f"{1e3 * r['numpy_s']:>11.2f}{r['numpy_s'] / r['numba_s']:>9.1f}"
        )
    if e2e:
        print(
            f"G2 x_(2,3)^5 radical test: numba {e2e['numba_s']:.2f} s, numpy {e2e['numpy_s']:.2f} s"
            f" ({e2e['numpy_s'] / e2e['numba_s']:.1f}x)"
        )


if __name__ == "__main__":
    main()
