"""Compare the compiled kernels with the numpy fallback.

Usage: python benchmarks/bench_kernels.py [--repeat 5]

Each backend runs in a fresh subprocess (the backend is fixed at import via
LFORGE_PURE_PYTHON), timing the three raw kernels and two end-to-end
workloads that lean on them.
"""
import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time, timeit
from fractions import Fraction
import numpy as np
from lforge import kernels, lfactors as lf, reptheory as rt
from lforge.archimedean import identities as ar
from lforge.archimedean.quadrature import QuadratureSpec

repeat = int(sys.argv[1])
rng = np.random.Generator(np.random.PCG64(0))
a = {tuple(rng.integers(-6, 7, 4)): Fraction(int(rng.integers(1, 9)), int(rng.integers(1, 9)))
     for _ in range(120)}
b = {tuple(rng.integers(-6, 7, 4)): Fraction(int(rng.integers(1, 9)), int(rng.integers(1, 9)))
     for _ in range(120)}
z = rng.uniform(-5, 5, 200_000) + 1j * rng.uniform(-60, 60, 200_000)
A = rng.normal(size=(801, 801)) + 1j * rng.normal(size=(801, 801))
B = rng.normal(size=(801, 801)) + 1j * rng.normal(size=(801, 801))
sym = rt.symbolic_satake()

def zeta_symbolic():
    rt.weyl_character.cache_clear()
    lf.verify_split(sym["gl4"], sym["gl2"], 6)

cases = {
    "poly_mul (120 x 120 terms)": lambda: kernels.poly_mul(a, b),
    "loggamma (2e5 points)": lambda: kernels.loggamma(z),
    "contract (801^3)": lambda: kernels.contract(A, B),
    "symbolic split identity, N=6": zeta_symbolic,
    "after_barnes1 zeta, generic": lambda: ar.arch_zeta_verify(ar.GENERIC_PARAMS, 1.0),
}
out = {"backend": kernels.BACKEND}
for name, fn in cases.items():
    fn()
    out[name] = min(timeit.repeat(fn, number=1, repeat=repeat))
print(json.dumps(out))
"""


def run(pure: bool, repeat: int) -> dict:
    env = dict(os.environ, LFORGE_PURE_PYTHON="1" if pure else "0", LFORGE_THREADS="1")
    proc = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env,
                          capture_output=True, text=True, check=True)
    return json.loads(proc.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    fast, slow = run(False, args.repeat), run(True, args.repeat)
    if fast["backend"] != "cython":
        print("note: compiled extension not available; both columns use the fallback")
    names = [k for k in fast if k != "backend"]
    width = max(len(n) for n in names)
    print(f"{'workload'.ljust(width)}  {'cython s':>10}  {'python s':>10}  {'speedup':>8}")
    for n in names:
        print(f"{n.ljust(width)}  {fast[n]:10.4f}  {slow[n]:10.4f}  {slow[n] / fast[n]:7.2f}x")


if __name__ == "__main__":
    main()
