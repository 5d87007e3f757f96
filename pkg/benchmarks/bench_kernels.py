"""Compare the compiled elimination kernel with the numpy fallback.

Run: python benchmarks/bench_kernels.py [--repeat 5]
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from sl2triples import _pykernels

try:
    from sl2triples import _ckernels
except ImportError:  # extension not built
    _ckernels = None

# shapes that occur in the verifier: intertwiner systems, f-spaces, Lie bases
CASES = [
    ("intertwiner n=4", (48, 16), 3),
    ("f-space gl4", (32, 16), 3),
    ("f-space so6", (72, 15), 3),
    ("lie basis sp8", (64, 64), 5),
    ("hom n=8", (192, 64), 5),
    ("algebra A p=7", (144, 91), 7),
]


def time_kernel(fn, mats, p, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        for a in mats:
            fn(a, p)
        best = min(best, time.perf_counter() - t)
    return best / len(mats)


def end_to_end(pure: bool) -> float:
    env = dict(os.environ)
    if pure:
        env["SL2TRIPLES_PURE_PYTHON"] = "1"
    else:
        env.pop("SL2TRIPLES_PURE_PYTHON", None)
    code = (
        "import time;from sl2triples.verify import verify_sl2_property;"
        "from sl2triples.triples import standard_group;t=time.perf_counter();"
        "verify_sl2_property(standard_group('GL',4,3));print(time.perf_counter()-t)"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout.strip())


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--samples", type=int, default=20)
    ap.add_argument("--skip-e2e", action="store_true")
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled kernel not available; build with pip install -e . --no-build-isolation")
        return
    rng = np.random.default_rng(0)
    print(f"{'case':<20}{'python ms':>12}{'cython ms':>12}{'speedup':>10}")
    for name, shape, p in CASES:
        mats = [rng.integers(0, p, size=shape) for _ in range(args.samples)]
        for a in mats:
            # both backends must agree before timing means anything
            r1, p1 = _pykernels.rref(a, p)
            r2, p2 = _ckernels.rref(a, p)
            assert p1 == p2 and np.array_equal(r1, r2)
        tp = time_kernel(_pykernels.rref, mats, p, args.repeat)
        tc = time_kernel(_ckernels.rref, mats, p, args.repeat)
        print(f"{name:<20}{tp * 1e3:>12.3f}{tc * 1e3:>12.3f}{tp / tc:>10.1f}")
    if not args.skip_e2e:
        tp, tc = end_to_end(True), end_to_end(False)
        print(f"{'verify GL4 p=3':<20}{tp * 1e3:>12.0f}{tc * 1e3:>12.0f}{tp / tc:>10.1f}")


if __name__ == "__main__":
    main()
