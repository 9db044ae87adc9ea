"""Compiled vs pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat 5]

Times word normal forms, substitution and canonical codes on fixed random
inputs, then one end-to-end classification sweep (5-vertex graphs) per backend
in a subprocess so that backend selection happens at import.
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from raagrh import _pykernels

try:
    from raagrh import _ckernels
except ImportError:
    _ckernels = None


def workload(seed=1):
    rng = random.Random(seed)
    cases = []
    for _ in range(200):
        n = rng.randint(3, 8)
        adj = [0] * n
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < 0.4:
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
        noncomm = [[j for j in range(n) if j != i and not adj[i] >> j & 1] for i in range(n)]
        words = [tuple(rng.choice((1, -1)) * rng.randint(1, n) for _ in range(rng.randint(10, 60))) for _ in range(10)]
        images = [tuple(rng.choice((1, -1)) * rng.randint(1, n) for _ in range(3)) for _ in range(n)]
        cases.append((n, adj, noncomm, words, images))
    return cases


def run(mod, cases):
    def nf():
        for _, _, noncomm, words, _ in cases:
            k = mod.WordKernel(noncomm)
            for w in words:
                k.normal_form(w)

    def subst():
        for _, _, noncomm, words, images in cases:
            k = mod.WordKernel(noncomm)
            for w in words:
                k.substitute(w, images)

    def canon():
        for n, adj, _, _, _ in cases:
            mod.canonical_code(n, adj)

    return {"normal_form": nf, "substitute": subst, "canonical_code": canon}


SWEEP = ("import time; from raagrh import kernels; from raagrh.graph import enumerate_graphs; "
         "from raagrh.classifier import classify_aut, classify_out; t = time.perf_counter(); "
         "[(classify_aut(G), classify_out(G)) for G in enumerate_graphs(5)]; "
         "print(kernels.BACKEND, time.perf_counter() - t)")


def sweep(pure):
    env = dict(os.environ)
    if pure:
        env["RAAGRH_PURE_PYTHON"] = "1"
    else:
        env.pop("RAAGRH_PURE_PYTHON", None)
    out = subprocess.run([sys.executable, "-c", SWEEP], env=env, capture_output=True, text=True, check=True)
    backend, secs = out.stdout.split()
    return backend, float(secs)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _ckernels is None:
        sys.exit("compiled kernels are not built; run `pip install --no-build-isolation -e .` first")
    cases = workload()
    py, c = run(_pykernels, cases), run(_ckernels, cases)
    print(f"{'kernel':<16}{'python ms':>12}{'cython ms':>12}{'speedup':>10}")
    for name in py:
        tp = min(timeit.repeat(py[name], number=1, repeat=args.repeat)) * 1e3
        tc = min(timeit.repeat(c[name], number=1, repeat=args.repeat)) * 1e3
        print(f"{name:<16}{tp:>12.2f}{tc:>12.2f}{tp / tc:>9.1f}x")
    (bp, sp), (bc, sc) = sweep(True), sweep(False)
    print(f"{'sweep n=5':<16}{sp * 1e3:>12.0f}{sc * 1e3:>12.0f}{sp / sc:>9.1f}x   ({bp} vs {bc})")


if __name__ == "__main__":
    main()
