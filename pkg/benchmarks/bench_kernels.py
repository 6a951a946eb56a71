"""Compare the compiled and pure-Python pairing kernels.

Workloads:
  lattice-R   field inversion of the sinc field on the integer-lattice box of
              radius R (the restriction-isometry sum)
  random      field inversion at random group points for a translated field
  hs-pairing  <F, lambda(x) G> at random points

Usage: python benchmarks/bench_kernels.py [--repeat N] [--radius R ...]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from heisenberg_sampling import kernels
from heisenberg_sampling.fields import hs_pairing_many, inversion_evaluate_many
from heisenberg_sampling.group import GroupElement, StandardLattice, lattice_arrays
from heisenberg_sampling.sampling import LATTICE_QUADRATURE, sinc_field


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - start)
    return min(times), out


def workloads(radii):
    S = sinc_field(LATTICE_QUADRATURE)
    for R in radii:
        _, pts = lattice_arrays(StandardLattice(1), R)
        yield f"lattice-{R} ({len(pts)} pts)", lambda pts=pts: inversion_evaluate_many(S, pts)
    rng = np.random.default_rng(0)
    xs = np.column_stack([rng.integers(-32, 33, 2000) / 8, rng.integers(-32, 33, 2000) / 8, rng.uniform(-4, 4, 2000)])
    moved = S.translated(GroupElement(0.5, -0.5, 0.5))
    yield "random (2000 pts)", lambda: inversion_evaluate_many(moved, xs)
    yield "hs-pairing (500 pts)", lambda: hs_pairing_many(moved, S, xs[:500])


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--radius", type=int, nargs="+", default=[16, 32])
    args = parser.parse_args(argv)

    names = kernels.available_backends()
    if "compiled" not in names:
        print("compiled extension not built; only the python backend is available")
    before = kernels.backend()
    print(f"{'workload':<28}" + "".join(f"{n:>12}" for n in names) + f"{'speedup':>10}{'max diff':>12}")
    try:
        for label, fn in workloads(args.radius):
            row, outputs = {}, {}
            for name in names:
                kernels.set_backend(name)
                row[name], outputs[name] = _best(fn, args.repeat)
            speedup = row["python"] / row["compiled"] if "compiled" in row else float("nan")
            diff = max(float(np.abs(outputs[n] - outputs["python"]).max()) for n in names)
            print(f"{label:<28}" + "".join(f"{row[n]:>11.3f}s" for n in names) + f"{speedup:>9.1f}x{diff:>12.1e}")
    finally:
        kernels.set_backend(before)


if __name__ == "__main__":
    main()
