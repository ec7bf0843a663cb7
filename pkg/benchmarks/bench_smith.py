"""Compare the compiled and pure-Python Smith normal form kernels.

Run with ``python3 benchmarks/bench_smith.py``.  The matrices are the
boundary maps of the Grassmann complexes used by ``grasspoly homology``
plus a few dense random integer matrices.
"""

import random
import sys
import timeit

from grasspoly import smith
from grasspoly.chains import boundary_matrix, enumerate_orbit_points
from grasspoly.fields import prime_field


def homology_matrices():
    for p, m, n in [(5, 1, 3), (7, 1, 3), (5, 1, 4), (5, 2, 3), (7, 2, 3)]:
        field = prime_field(p)
        src = enumerate_orbit_points(field, m, n + 1)
        dst = enumerate_orbit_points(field, m, n)
        yield f"boundary F_{p} m={m} n={n} ({len(dst)}x{len(src)})", boundary_matrix(src, dst)


def random_matrices():
    rng = random.Random(0)
    for size in (40, 80):
        yield f"random {size}x{size}", [[rng.randint(-9, 9) for _ in range(size)] for _ in range(size)]


def main():
    if smith.BACKEND != "cython":
        print("compiled kernel not built; only the Python kernel is available")
        return 1
    print(f"{'matrix':40s} {'python [s]':>12s} {'cython [s]':>12s} {'speedup':>8s}")
    for name, mat in list(homology_matrices()) + list(random_matrices()):
        assert smith.smith_diagonal(mat, "python") == smith.smith_diagonal(mat, "cython")
        t_py = min(timeit.repeat(lambda: smith.smith_diagonal(mat, "python"), number=1, repeat=3))
        t_cy = min(timeit.repeat(lambda: smith.smith_diagonal(mat, "cython"), number=1, repeat=3))
        print(f"{name:40s} {t_py:12.4f} {t_cy:12.4f} {t_py / t_cy:8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
