"""Exact and float square matrices, products and Hadamard certification.

Two representations are used throughout:

* :class:`ExactMatrix` -- a grid of exponents of ``zeta_q`` with ``-1``
  standing for a zero entry (Butson-type matrices, signature matrices
  over roots of unity). Products are cyclotomic integers and checks on
  them are exact.
* plain ``complex128`` numpy arrays for everything else, verified to a
  tolerance.

Mixed inputs are converted to float; exactness is never claimed for them.
"""

from dataclasses import dataclass, field
from math import gcd

import numpy as np

from . import kernels
from .errors import CertificationError, ConvergenceError, DephaseError
from .scalar import reduction_matrix, root_table

ZERO = -1
DEFAULT_TOL = 1e-9


class ExactMatrix:
    """Square matrix whose entries are ``zeta_q**e`` or zero (``e == -1``)."""

    __slots__ = ("q", "exps")

    def __init__(self, q, exps):
        exps = np.array(exps, dtype=np.int64)
        if exps.ndim != 2 or exps.shape[0] != exps.shape[1]:
            raise ValueError(f"exponent grid must be square, got shape {exps.shape}")
        q = int(q)
        if q < 1:
            raise ValueError(f"root order must be positive, got {q}")
        if ((exps < ZERO) | (exps >= q)).any():
            raise ValueError(f"exponents must lie in [0, {q}) or be {ZERO} for zero")
        exps.setflags(write=False)
        self.q = q
        self.exps = exps

    @classmethod
    def from_rows(cls, q, rows):
        """Build from nested lists where ``None`` marks a zero entry."""
        return cls(q, [[ZERO if e is None else e for e in row] for row in rows])

    @property
    def n(self):
        return self.exps.shape[0]

    @property
    def shape(self):
        return self.exps.shape

    def rows(self):
        return [[None if e == ZERO else int(e) for e in row] for row in self.exps]

    def has_zeros(self):
        return bool((self.exps == ZERO).any())

    def conj_transpose(self):
        e = self.exps.T
        return ExactMatrix(self.q, np.where(e == ZERO, ZERO, (-e) % self.q))

    def with_order(self, q):
        """Same matrix written over ``zeta_q`` (``q`` a multiple of ``self.q``)."""
        if q % self.q:
            raise ValueError(f"{q} is not a multiple of {self.q}")
        e = self.exps
        return ExactMatrix(q, np.where(e == ZERO, ZERO, e * (q // self.q)))

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.q == other.q and np.array_equal(self.exps, other.exps)

    def __hash__(self):
        return hash((self.q, self.exps.tobytes()))

    def __repr__(self):
        return f"ExactMatrix(q={self.q}, n={self.n})"


def is_exact(m):
    return isinstance(m, ExactMatrix)


def to_complex(m):
    """Entrywise value of an exact matrix; float arrays pass through."""
    if not is_exact(m):
        return np.asarray(m, dtype=np.complex128)
    tab = root_table(m.q)
    out = np.zeros(m.shape, dtype=np.complex128)
    live = m.exps != ZERO
    out[live] = tab[m.exps[live]]
    return out


def _square(m):
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


# --------------------------------------------------------------------------
# products


def exact_product(a, b):
    """Exact product of two exact matrices over ``zeta_lcm``.

    Returns ``(q, counts)`` with ``counts[i, j]`` the coefficient vector of
    entry ``(i, j)``.
    """
    q = a.q * b.q // gcd(a.q, b.q)
    a, b = a.with_order(q), b.with_order(q)
    return q, kernels.exact_product_counts(a.exps, b.exps, q)


def matmul(a, b):
    """Float product with fixed accumulation order."""
    return kernels.complex_matmul(to_complex(a), to_complex(b))


def gram_product(m):
    """``M M*``.

    For an :class:`ExactMatrix` the result is an int64 array of shape
    ``(n, n, q)`` whose entry ``[i, j]`` is the coefficient vector of the
    cyclotomic integer ``(M M*)[i, j]``. For float input it is a complex
    array.
    """
    if is_exact(m):
        return exact_product(m, m.conj_transpose())[1]
    m = _square(to_complex(m))
    return kernels.complex_matmul(m, m.conj().T)


def reduce_counts(counts, q):
    """Canonical form of an array of coefficient vectors modulo ``Phi_q``."""
    return counts @ reduction_matrix(q)


def eval_counts(counts, q):
    return counts.astype(np.float64) @ root_table(q)


# --------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    residual: float


@dataclass
class VerificationReport:
    mode: str  # "exact" or "float"
    tolerance: float
    checks: list = field(default_factory=list)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def add(self, name, passed, residual):
        self.checks.append(Check(name, bool(passed), float(residual)))
        return self

    def extend(self, other):
        self.checks.extend(other.checks)
        if other.mode == "float":
            self.mode = "float"
        return self

    def to_dict(self):
        return {
            "mode": self.mode,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "checks": [{"name": c.name, "pass": c.passed, "residual": c.residual} for c in self.checks],
        }

    def summary(self):
        lines = [f"mode={self.mode} tol={self.tolerance:g} -> {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            lines.append(f"  [{'ok' if c.passed else 'FAIL'}] {c.name}: residual {c.residual:.3e}")
        return "\n".join(lines)


@dataclass
class HadamardCert:
    matrix: object  # ExactMatrix or complex ndarray
    mode: str
    report: VerificationReport
    meta: dict = field(default_factory=dict)

    @property
    def n(self):
        return self.matrix.shape[0]


def is_hadamard(m, tol=DEFAULT_TOL):
    """Check unimodular entries and ``M M* == n I``."""
    if is_exact(m):
        n, q = m.n, m.q
        rep = VerificationReport("exact", 0.0)
        zeros = int((m.exps == ZERO).sum())
        rep.add("unimodular entries", zeros == 0, zeros)
        counts = gram_product(m)
        counts[np.arange(n), np.arange(n), 0] -= n
        red = reduce_counts(counts, q)
        bad = red.any(axis=2)
        resid = np.abs(eval_counts(counts, q)).max() if bad.any() else 0.0
        rep.add("gram == nI (cyclotomic)", not bad.any(), resid)
        return rep
    m = _square(to_complex(m))
    n = m.shape[0]
    rep = VerificationReport("float", tol)
    dev = np.abs(np.abs(m) - 1.0).max() if n else 0.0
    rep.add("unimodular entries", dev <= tol, dev)
    g = gram_product(m) - n * np.eye(n)
    resid = np.abs(g).max() if n else 0.0
    rep.add("gram == nI", resid <= tol * n, resid)
    return rep


def certify_hadamard(m, tol=DEFAULT_TOL, **meta):
    rep = is_hadamard(m, tol)
    if not rep.passed:
        raise CertificationError("matrix is not complex Hadamard\n" + rep.summary(), rep)
    return HadamardCert(m, rep.mode, rep, dict(meta))


def is_self_adjoint(m, tol=DEFAULT_TOL):
    if is_exact(m):
        rep = VerificationReport("exact", 0.0)
        bad = int((m.exps != m.conj_transpose().exps).sum())
        return rep.add("M == M*", bad == 0, bad)
    m = _square(to_complex(m))
    rep = VerificationReport("float", tol)
    resid = np.abs(m - m.conj().T).max() if m.size else 0.0
    return rep.add("M == M*", resid <= tol, resid)


def dephase(h):
    """Scale rows and columns by unimodular factors so row 0 and column 0 are all 1."""
    if is_exact(h):
        e = h.exps
        if (e[0] == ZERO).any() or (e[:, 0] == ZERO).any():
            raise DephaseError("zero entry in the first row or column")
        out = (e - e[:, :1] - e[:1, :] + e[0, 0]) % h.q
        return ExactMatrix(h.q, np.where(e == ZERO, ZERO, out))
    h = _square(to_complex(h))
    if (h[0] == 0).any() or (h[:, 0] == 0).any():
        raise DephaseError("zero entry in the first row or column")
    col = h[:, :1] / np.abs(h[:, :1])
    out = h / col
    row = out[:1, :] / np.abs(out[:1, :])
    return out / row


def tensor(a, b):
    """Kronecker product; exact inputs stay exact over ``zeta_lcm(qa, qb)``."""
    if is_exact(a) and is_exact(b):
        q = a.q * b.q // gcd(a.q, b.q)
        ea, eb = a.with_order(q).exps, b.with_order(q).exps
        big = (ea[:, None, :, None] + eb[None, :, None, :]) % q
        zero = (ea[:, None, :, None] == ZERO) | (eb[None, :, None, :] == ZERO)
        n = a.n * b.n
        return ExactMatrix(q, np.where(zero, ZERO, big).reshape(n, n))
    return np.kron(to_complex(a), to_complex(b))


def hermitian_eigen(m, tol=1e-12, max_sweeps=100):
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Iterates until every off-diagonal modulus is below ``tol * ||M||_F``.
    Returns eigenvalues in descending order and the matching orthonormal
    eigenvectors as columns.
    """
    m = _square(to_complex(m))
    scale = max(np.abs(m).max(), 1.0) if m.size else 1.0
    if not is_self_adjoint(m, tol * scale).passed:
        raise ValueError("hermitian_eigen needs a self-adjoint matrix")
    m = (m + m.conj().T) / 2
    w, v, sweeps = kernels.jacobi_hermitian(m, tol, max_sweeps)
    if sweeps < 0:
        raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]
