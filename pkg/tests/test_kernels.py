"""Both kernel flavours against each other and against independent references."""

import numpy as np
import pytest

from chmetf import kernels


def brute_counts(a, b, q):
    n, inner = a.shape
    out = np.zeros((n, b.shape[1], q), dtype=np.int64)
    for i in range(n):
        for j in range(b.shape[1]):
            for k in range(inner):
                if a[i, k] >= 0 and b[k, j] >= 0:
                    out[i, j, (a[i, k] + b[k, j]) % q] += 1
    return out


@pytest.mark.parametrize("impl", [kernels._exact_counts_nb, kernels._exact_counts_np])
@pytest.mark.parametrize("q", [1, 2, 3, 7])
def test_exact_counts(impl, q, rng):
    a = rng.integers(-1, q, (6, 5))
    b = rng.integers(-1, q, (5, 4))
    assert np.array_equal(impl(a, b, q), brute_counts(a, b, q))


@pytest.mark.parametrize("impl", [kernels._cmatmul_nb, kernels._cmatmul_np])
def test_complex_matmul(impl, rng):
    a = rng.normal(size=(7, 5)) + 1j * rng.normal(size=(7, 5))
    b = rng.normal(size=(5, 3)) + 1j * rng.normal(size=(5, 3))
    assert np.allclose(impl(a, b), a @ b, atol=1e-13)


def test_complex_matmul_is_reproducible(rng):
    a = rng.normal(size=(20, 20)) + 1j * rng.normal(size=(20, 20))
    for impl in (kernels._cmatmul_nb, kernels._cmatmul_np):
        assert np.array_equal(impl(a, a), impl(a, a))


def random_hermitian(rng, n):
    x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return x + x.conj().T


@pytest.mark.parametrize("impl", [kernels._jacobi_nb, kernels._jacobi_np])
@pytest.mark.parametrize("n", [1, 2, 3, 8, 20])
def test_jacobi_against_eigh(impl, n, rng):
    a = random_hermitian(rng, n)
    w, v, sweeps = impl(a, 1e-13, 100)
    assert sweeps >= 0
    assert np.allclose(np.sort(w), np.linalg.eigvalsh(a), atol=1e-10)
    assert np.abs(a @ v - v * w).max() < 1e-10
    assert np.abs(v.conj().T @ v - np.eye(n)).max() < 1e-12


@pytest.mark.parametrize("impl", [kernels._jacobi_nb, kernels._jacobi_np])
def test_jacobi_reports_iteration_cap(impl, rng):
    a = random_hermitian(rng, 10)
    _, _, sweeps = impl(a, 1e-300, 2)
    assert sweeps == -1


def test_backends_agree_on_jacobi(rng):
    a = random_hermitian(rng, 12)
    w1, _, _ = kernels._jacobi_nb(a, 1e-13, 100)
    w2, _, _ = kernels._jacobi_np(a, 1e-13, 100)
    assert np.allclose(np.sort(w1), np.sort(w2), atol=1e-11)


@pytest.mark.parametrize("flag, name", [("1", "numpy"), ("", "numba")])
def test_backend_flag(flag, name):
    import os
    import subprocess
    import sys

    code = (
        "from chmetf import backend_name, block_lift, catalog, is_hadamard\n"
        "K = block_lift(catalog('tao6').matrix)\n"
        "print(backend_name(), is_hadamard(K.matrix).passed)\n"
    )
    env = dict(os.environ, CHMETF_NO_NUMBA=flag)
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == [name, "True"]
