"""Time the numba kernels against their pure-numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat N]

Numba timings exclude compilation: every kernel is called once before timing.
"""

import argparse
import timeit

import numpy as np

from chmetf import block_lift, catalog, fourier, tensor
from chmetf import kernels
from chmetf.matrix import to_complex


def exact_inputs(n):
    """Exponent grid of a Butson matrix of order n and its conjugate transpose."""
    if n == 36:
        m = block_lift(catalog("tao6").matrix).matrix
    else:
        m = fourier(n) if n != 64 else tensor(fourier(8), fourier(8))
    e = np.ascontiguousarray(m.exps)
    return e, np.ascontiguousarray(m.conj_transpose().exps), m.q


def hermitian_input(n, seed=0):
    rng = np.random.default_rng(seed)
    x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return x + x.conj().T


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    rows = []
    for n in (36, 64, 100):
        a, b, q = exact_inputs(n)
        kernels._exact_counts_nb(a, b, q)
        assert np.array_equal(kernels._exact_counts_nb(a, b, q), kernels._exact_counts_np(a, b, q))
        rows.append((f"exact counts n={n}",
                     best(lambda: kernels._exact_counts_nb(a, b, q), args.repeat),
                     best(lambda: kernels._exact_counts_np(a, b, q), args.repeat)))
    for n in (36, 64):
        h = to_complex(fourier(n))
        kernels._cmatmul_nb(h, h)
        rows.append((f"complex matmul n={n}",
                     best(lambda: kernels._cmatmul_nb(h, h), args.repeat),
                     best(lambda: kernels._cmatmul_np(h, h), args.repeat)))
    for n in (36, 64):
        m = hermitian_input(n)
        kernels._jacobi_nb(m, 1e-12, 100)
        rows.append((f"jacobi n={n}",
                     best(lambda: kernels._jacobi_nb(m, 1e-12, 100), args.repeat),
                     best(lambda: kernels._jacobi_np(m, 1e-12, 100), max(1, args.repeat // 2))))

    print(f"{'kernel':<22}{'numba ms':>12}{'numpy ms':>12}{'speedup':>10}")
    for name, t_nb, t_np in rows:
        print(f"{name:<22}{t_nb * 1e3:>12.3f}{t_np * 1e3:>12.3f}{t_np / t_nb:>9.1f}x")


if __name__ == "__main__":
    main()
