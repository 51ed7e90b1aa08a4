"""Hot numeric kernels, each in a numba flavour and a pure-numpy flavour.

The public entry points dispatch on :data:`chmetf._accel.USE_NUMBA`. Both
flavours stay importable so they can be cross-checked and benchmarked
side by side.

All products accumulate over the inner index in ascending order, so a
given backend is bit-reproducible from run to run.
"""

import numpy as np

from ._accel import USE_NUMBA, njit

INT64_MAX = np.iinfo(np.int64).max


# --------------------------------------------------------------------------
# exact products over roots of unity
#
# Matrices are int64 exponent grids, -1 marks a zero entry. The product
# entry (i, j) is a cyclotomic integer sum_e c_e zeta_q^e; we return the
# counts c as an (n, m, q) array.


@njit
def _exact_counts_nb(a, b, q):
    n, inner = a.shape
    m = b.shape[1]
    out = np.zeros((n, m, q), dtype=np.int64)
    for i in range(n):
        for j in range(m):
            for k in range(inner):
                x = a[i, k]
                y = b[k, j]
                if x >= 0 and y >= 0:
                    out[i, j, (x + y) % q] += 1
    return out


def _exact_counts_np(a, b, q):
    n, inner = a.shape
    m = b.shape[1]
    x = a[:, :, None]  # (n, inner, 1)
    y = b[None, :, :]  # (1, inner, m)
    live = (x >= 0) & (y >= 0)
    e = (x + y) % q
    rows = np.broadcast_to(np.arange(n)[:, None, None], e.shape)
    cols = np.broadcast_to(np.arange(m)[None, None, :], e.shape)
    flat = ((rows * m + cols) * q + e)[live]
    counts = np.bincount(flat, minlength=n * m * q)
    return counts.astype(np.int64).reshape(n, m, q)


def exact_product_counts(a, b, q):
    """Coefficient counts of the exact product of two exponent grids."""
    a = np.ascontiguousarray(a, dtype=np.int64)
    b = np.ascontiguousarray(b, dtype=np.int64)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} x {b.shape}")
    # each term adds 1 to one counter, so the inner size bounds every count
    if a.shape[1] >= INT64_MAX:
        raise OverflowError("inner dimension overflows int64 accumulation")
    if USE_NUMBA:
        return _exact_counts_nb(a, b, int(q))
    return _exact_counts_np(a, b, int(q))


# --------------------------------------------------------------------------
# float complex product with fixed accumulation order


@njit
def _cmatmul_nb(a, b):
    n, inner = a.shape
    m = b.shape[1]
    out = np.zeros((n, m), dtype=np.complex128)
    for i in range(n):
        for j in range(m):
            acc = 0j
            for k in range(inner):
                acc += a[i, k] * b[k, j]
            out[i, j] = acc
    return out


def _cmatmul_np(a, b):
    n, inner = a.shape
    m = b.shape[1]
    out = np.zeros((n, m), dtype=np.complex128)
    for k in range(inner):
        out += a[:, k, None] * b[None, k, :]
    return out


def complex_matmul(a, b):
    """``a @ b`` summed left to right over the inner index."""
    a = np.ascontiguousarray(a, dtype=np.complex128)
    b = np.ascontiguousarray(b, dtype=np.complex128)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} x {b.shape}")
    if USE_NUMBA:
        return _cmatmul_nb(a, b)
    return _cmatmul_np(a, b)


# --------------------------------------------------------------------------
# cyclic Jacobi for Hermitian matrices
#
# Each rotation first removes the phase of a[p, q] with diag(1, e^{-i phi})
# and then applies the real symmetric rotation [[c, s], [-s, c]].
# The kernels return (eigenvalues, eigenvectors, sweeps); sweeps is -1
# when the iteration cap is hit.


def _rotation(app, aqq, apq):
    r = abs(apq)
    ph = apq / r
    theta = (aqq - app) / (2.0 * r)
    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
    if theta < 0.0:
        t = -t
    c = 1.0 / np.sqrt(t * t + 1.0)
    return c, t * c, ph


_rotation_nb = njit(_rotation)


@njit
def _jacobi_nb(a, tol, max_sweeps):
    n = a.shape[0]
    a = a.copy()
    v = np.eye(n, dtype=np.complex128)
    norm = np.sqrt(np.sum(np.abs(a) ** 2))
    thresh = tol * norm
    sweeps = -1
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for p in range(n):
            for q in range(p + 1, n):
                x = abs(a[p, q])
                if x > off:
                    off = x
        if off < thresh or norm == 0.0:
            sweeps = sweep
            break
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0:
                    continue
                c, s, ph = _rotation_nb(a[p, p].real, a[q, q].real, apq)
                phc = np.conj(ph)
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * phc * akq
                    a[k, q] = s * akp + c * phc * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * ph * aqk
                    a[q, k] = s * apk + c * ph * aqk
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * phc * vkq
                    v[k, q] = s * vkp + c * phc * vkq
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
    w = np.empty(n)
    for i in range(n):
        w[i] = a[i, i].real
    return w, v, sweeps


def _jacobi_np(a, tol, max_sweeps):
    n = a.shape[0]
    a = a.copy()
    v = np.eye(n, dtype=np.complex128)
    norm = np.sqrt(np.sum(np.abs(a) ** 2))
    thresh = tol * norm
    iu = np.triu_indices(n, 1)
    sweeps = -1
    for sweep in range(max_sweeps + 1):
        off = np.abs(a[iu]).max() if n > 1 else 0.0
        if off < thresh or norm == 0.0:
            sweeps = sweep
            break
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0:
                    continue
                c, s, ph = _rotation(a[p, p].real, a[q, q].real, apq)
                phc = ph.conjugate()
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * phc * cq
                a[:, q] = s * cp + c * phc * cq
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * ph * rq
                a[q, :] = s * rp + c * ph * rq
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * phc * vq
                v[:, q] = s * vp + c * phc * vq
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
    return np.diag(a).real.copy(), v, sweeps


def jacobi_hermitian(a, tol, max_sweeps=100):
    a = np.ascontiguousarray(a, dtype=np.complex128)
    if USE_NUMBA:
        return _jacobi_nb(a, float(tol), int(max_sweeps))
    return _jacobi_np(a, float(tol), int(max_sweeps))
