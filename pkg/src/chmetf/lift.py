"""Block lifting of complex Hadamard matrices from order n to n**2.

With rows ``h_1..h_n`` of a CHM ``H``, the block matrix ``K`` whose
``(i, j)`` block is the outer product ``h_j^* h_i`` is again complex
Hadamard, self-adjoint and has constant diagonal 1. Scaling the blocks
with ``2 <= i, j <= n`` by unimodular ``x_ij`` keeps it Hadamard, which
yields parametric families.
"""

from dataclasses import dataclass
from functools import lru_cache
import re

import numpy as np

from .errors import (
    GridShapeMismatch,
    SelfAdjointConstraintViolated,
    UnknownName,
    UnsupportedOrder,
)
from .frames import SignatureMatrix, signature_check
from .matrix import (
    DEFAULT_TOL,
    ExactMatrix,
    HadamardCert,
    VerificationReport,
    certify_hadamard,
    is_exact,
    tensor,
    to_complex,
)

UNIT_TOL = 1e-12


def fourier(n):
    """Fourier matrix ``exp(2 pi i (i-1)(j-1) / n)`` as an exact matrix over ``zeta_n``."""
    if n < 1:
        raise ValueError("n must be positive")
    i = np.arange(n)
    return ExactMatrix(n, np.outer(i, i) % n)


def _cert(h, tol=DEFAULT_TOL):
    return h if isinstance(h, HadamardCert) else certify_hadamard(h, tol)


def _block_base(h):
    n = h.shape[0]
    if is_exact(h):
        e = h.exps
        # entry (i, a; j, b) = conj(h[j, a]) * h[i, b]
        k = (h.q - e.T[None, :, :, None] + e[:, None, None, :]) % h.q
        return ExactMatrix(h.q, k.reshape(n * n, n * n))
    m = to_complex(h)
    k = m.conj().T[None, :, :, None] * m[:, None, None, :]
    # SIMD complex products are not bitwise conjugate-symmetric, so mirror
    k = np.triu(k.reshape(n * n, n * n), 1)
    k = k + k.conj().T
    k[np.diag_indices(n * n)] = 1.0
    return k


def block_lift(H, tol=DEFAULT_TOL):
    """Self-adjoint CHM of order ``n**2`` with constant diagonal 1 built from ``H``."""
    H = _cert(H, tol)
    k = _block_base(H.matrix)
    return certify_hadamard(k, tol, seed_order=H.n, construction="block_lift")


@dataclass(frozen=True)
class ParamGrid:
    """Unimodular block scalings ``x_ij`` for ``2 <= i, j <= n``.

    ``values[i - 2, j - 2]`` holds ``x_ij``. In ``self_adjoint`` mode the
    grid must have unit diagonal and satisfy ``x_ij == conj(x_ji)``.
    """

    n: int
    values: np.ndarray
    mode: str = "general"

    def __post_init__(self):
        v = np.array(self.values, dtype=np.complex128)
        if self.mode not in ("general", "self_adjoint"):
            raise ValueError(f"unknown grid mode {self.mode!r}")
        if v.shape != (self.n - 1, self.n - 1):
            raise GridShapeMismatch(f"grid shape {v.shape} does not match n = {self.n}")
        if v.size and np.abs(np.abs(v) - 1).max() > UNIT_TOL:
            raise ValueError("grid entries must be unimodular")
        if self.mode == "self_adjoint" and v.size:
            if (np.diag(v) != 1).any():
                raise SelfAdjointConstraintViolated("x_ii must equal 1")
            if not np.array_equal(v, v.conj().T):
                raise SelfAdjointConstraintViolated("x_ij must equal conj(x_ji)")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def ones(cls, n, mode="general"):
        return cls(n, np.ones((n - 1, n - 1), dtype=np.complex128), mode)

    @classmethod
    def random(cls, n, seed=0, mode="general"):
        """Uniform phases from numpy's PCG64 generator seeded with ``seed``."""
        rng = np.random.default_rng(seed)
        v = np.exp(2j * np.pi * rng.random((n - 1, n - 1)))
        if mode == "self_adjoint":
            upper = np.triu(v, 1)
            v = upper + upper.conj().T
            v[np.diag_indices(n - 1)] = 1
        return cls(n, v, mode)

    def is_ones(self):
        return bool((self.values == 1).all())

    def full(self):
        """``n x n`` block multiplier with ones in the first block row and column."""
        x = np.ones((self.n, self.n), dtype=np.complex128)
        x[1:, 1:] = self.values
        return x


def parametric_block_lift(H, X, tol=DEFAULT_TOL):
    """Block lift with blocks ``(i, j)``, ``i, j >= 2``, scaled by ``x_ij``.

    An all-ones grid returns exactly :func:`block_lift`. In self-adjoint
    mode the output is Hermitian entry for entry.
    """
    H = _cert(H, tol)
    n = H.n
    if X.n != n:
        raise GridShapeMismatch(f"grid is for n = {X.n}, matrix has order {n}")
    if X.is_ones():
        return block_lift(H, tol)
    base = to_complex(_block_base(H.matrix))
    scale = np.repeat(np.repeat(X.full(), n, axis=0), n, axis=1)
    k = base * scale
    if X.mode == "self_adjoint":
        k = np.triu(k, 1)
        k = k + k.conj().T
        k[np.diag_indices(n * n)] = 1.0
    return certify_hadamard(k, tol, seed_order=n, construction="parametric_block_lift",
                            grid_mode=X.mode)


def free_param_count(n, m=0, mode="general"):
    """Free parameters of the lifted family from an ``m``-parameter dephased seed of order ``n``."""
    if n < 2 or m < 0:
        raise ValueError("need n >= 2 and m >= 0")
    if mode == "general":
        return m + (n - 1) ** 2
    if mode == "self_adjoint":
        return m + (n - 1) * (n - 2) // 2
    raise ValueError(f"unknown mode {mode!r}")


# --------------------------------------------------------------------------
# catalog

TAO6_ROWS = [
    (0, 0, 0, 0, 0, 0),
    (0, 0, 1, 1, 2, 2),
    (0, 1, 0, 2, 2, 1),
    (0, 1, 2, 0, 1, 2),
    (0, 2, 2, 1, 0, 1),
    (0, 2, 1, 2, 1, 0),
]

_ = None
Q9_ROWS = [
    [_, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, _, 0, 1, 1, 1, 2, 2, 2],
    [0, 0, _, 2, 2, 2, 1, 1, 1],
    [0, 2, 1, _, 1, 2, 0, 1, 2],
    [0, 2, 1, 2, _, 1, 1, 2, 0],
    [0, 2, 1, 1, 2, _, 2, 0, 1],
    [0, 1, 2, 0, 2, 1, _, 2, 1],
    [0, 1, 2, 2, 1, 0, 1, _, 2],
    [0, 1, 2, 1, 0, 2, 2, 1, _],
]

# entries 1, i, -i as exponents of zeta_4
Q4_ROWS = [
    [_, 0, 0, 0],
    [0, _, 1, 3],
    [0, 3, _, 1],
    [0, 1, 3, _],
]
del _


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    matrix: ExactMatrix
    provenance: str
    certificate: VerificationReport


def _signature_entry(name, q, rows, provenance):
    Q = SignatureMatrix(ExactMatrix.from_rows(q, rows))
    params = signature_check(Q)
    rep = VerificationReport("exact", 0.0).extend(Q.report).extend(params.report)
    return CatalogEntry(name, Q.body, provenance, rep)


@lru_cache(maxsize=None)
def catalog(name):
    """Named, certified exact matrices: ``fourier_<n>``, ``tao6``, ``q9``, ``q4``."""
    m = re.fullmatch(r"fourier_(\d+)", name)
    if m and int(m.group(1)) >= 1:
        n = int(m.group(1))
        cert = certify_hadamard(fourier(n))
        return CatalogEntry(name, cert.matrix, f"Fourier matrix of order {n}", cert.report)
    if name == "tao6":
        cert = certify_hadamard(ExactMatrix(3, TAO6_ROWS))
        return CatalogEntry(name, cert.matrix, "Butson BH(6,3) over cube roots of unity", cert.report)
    if name == "q9":
        return _signature_entry(name, 3, Q9_ROWS, "9x9 cube-root signature matrix of a (9,6) frame")
    if name == "q4":
        return _signature_entry(name, 4, Q4_ROWS, "4x4 signature matrix of a (4,2) frame")
    raise UnknownName(name)


def _is_prime(p):
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def butson_seed(p, a, b):
    """Exact BH(2^a p^b, p) from tensor powers of catalog matrices.

    Only the tensor-reachable orders are built: ``F_p^{(x) b}`` for
    ``a = 0`` and ``tao6^{(x) a} (x) F_3^{(x) (b-a)}`` for ``p = 3``.
    """
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not 0 <= a <= b:
        raise ValueError("need 0 <= a <= b")
    if a > 0 and p != 3:
        raise UnsupportedOrder(f"no BH({2**a * p**b}, {p}) seed is reachable from the catalog")
    seed = ExactMatrix(1, [[0]])
    for _ in range(a):
        seed = tensor(seed, catalog("tao6").matrix)
    for _ in range(b - a):
        seed = tensor(seed, fourier(p))
    return seed


def pth_root_signature(p, a, b):
    """Signature ``K - I`` of the block lift of a BH(2^a p^b, p) seed."""
    seed = butson_seed(p, a, b)
    if seed.n < 2:
        raise UnsupportedOrder("seed of order 1 gives no signature matrix")
    k = block_lift(seed).matrix
    e = k.exps.copy()
    e[np.diag_indices(k.n)] = -1
    return SignatureMatrix(ExactMatrix(k.q, e))
