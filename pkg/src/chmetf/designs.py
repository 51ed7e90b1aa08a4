"""Hadamard designs and the complex Hadamard matrices they induce.

A ``(4m-1, 2m-1, m-1)`` design with 0/1 incidence ``U`` becomes complex
Hadamard once every 0 is replaced by

    a = -1 + 1/(2m) +- i sqrt(4m - 1) / (2m).

For a skew design (``U + U^T + I == J``) the rescaled matrix
``conj(sqrt(a)) U + sqrt(a) U^T + sqrt(a) I`` has constant diagonal and a
self-adjoint off-diagonal part, i.e. it comes from a signature matrix.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import NotADesign, NotHadamardParameters, NotPrime, NotSkew, WrongResidueClass
from .frames import FrameParams, SignatureMatrix, signature_check
from .matrix import HadamardCert, certify_hadamard
from .scalar import UnitComplex

INDUCED_TOL = 1e-10


@dataclass(frozen=True)
class Design:
    v: int
    incidence: np.ndarray
    k_d: int
    lambda_d: int
    skew: bool

    @property
    def m(self):
        return (self.v + 1) // 4

    @property
    def params(self):
        return self.v, self.k_d, self.lambda_d

    def rows(self):
        return ["".join(str(int(x)) for x in row) for row in self.incidence]


def _is_prime(q):
    return q >= 2 and all(q % d for d in range(2, math.isqrt(q) + 1))


def quadratic_residues(q):
    return {(x * x) % q for x in range(1, q)}


def paley_design(q):
    """Paley design: ``U[i, j] = 1`` iff ``j - i`` is a nonzero square mod ``q``."""
    if not _is_prime(q):
        raise NotPrime(f"{q} is not prime")
    if q % 4 != 3:
        raise WrongResidueClass(f"{q} is not 3 mod 4")
    qr = np.zeros(q, dtype=np.int8)
    qr[sorted(quadratic_residues(q))] = 1
    i = np.arange(q)
    return verify_design(qr[(i[None, :] - i[:, None]) % q])


def verify_design(U):
    """Certify ``U`` as a Hadamard design and infer its parameters."""
    u = np.array(U, dtype=np.int64)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise NotADesign(f"incidence must be square, got shape {u.shape}")
    if not np.isin(u, (0, 1)).all():
        raise NotADesign("incidence entries must be 0 or 1")
    v = u.shape[0]
    rs, cs = u.sum(axis=1), u.sum(axis=0)
    if (rs != rs[0]).any() or (cs != rs[0]).any():
        raise NotADesign("row and column sums are not constant")
    k = int(rs[0])
    g = u @ u.T
    off = g[~np.eye(v, dtype=bool)]
    lam = int(off[0]) if off.size else 0
    if (np.diag(g) != k).any() or (off != lam).any():
        raise NotADesign("U U^T is not of the form (k - lambda) I + lambda J")
    if k <= lam:
        raise NotADesign("degenerate design: k == lambda")
    m = (v + 1) // 4
    if v < 3 or v != 4 * m - 1 or k != 2 * m - 1 or lam != m - 1:
        raise NotHadamardParameters(f"parameters ({v}, {k}, {lam}) are not (4m-1, 2m-1, m-1)")
    skew = bool(np.array_equal(u + u.T + np.eye(v, dtype=np.int64), np.ones((v, v), dtype=np.int64)))
    inc = u.astype(np.int8)
    inc.setflags(write=False)
    return Design(v, inc, k, lam, skew)


@dataclass(frozen=True)
class InducedScalar:
    m: int
    branch: str
    a: UnitComplex


def induced_scalar(m, branch="plus"):
    if m < 1:
        raise ValueError("m must be at least 1")
    if branch not in ("plus", "minus"):
        raise ValueError(f"branch must be 'plus' or 'minus', got {branch!r}")
    im = math.sqrt(4 * m - 1) / (2 * m)
    a = complex(-1 + 1 / (2 * m), im if branch == "plus" else -im)
    return InducedScalar(m, branch, UnitComplex.from_complex(a))


def _as_design(U):
    return U if isinstance(U, Design) else verify_design(U)


def induce_chm(U, branch="plus", tol=INDUCED_TOL):
    """Replace every 0 of the incidence (diagonal included) by ``a``."""
    U = _as_design(U)
    a = complex(induced_scalar(U.m, branch).a)
    h = np.where(U.incidence == 1, 1.0 + 0j, a)
    return certify_hadamard(h, tol, construction="induced", branch=branch, a=a)


def principal_sqrt(z):
    """Square root with argument in (-pi/2, pi/2]."""
    return cmath.sqrt(z)


def skew_to_selfadjoint_chm(U, branch="plus", tol=INDUCED_TOL):
    """Self-adjoint-shift CHM from a skew design, with its signature and frame parameters.

    Returns ``(H, Q, params)`` where ``H = conj(r) U + r U^T + r I`` for the
    principal root ``r = sqrt(a)``, ``Q = H - r I`` and ``params`` comes
    from ``signature_check(Q)``.
    """
    U = _as_design(U)
    if not U.skew:
        raise NotSkew("design is not skew: U + U^T + I != J")
    a = complex(induced_scalar(U.m, branch).a)
    r = principal_sqrt(a)
    u = U.incidence
    # entries are picked, not computed, so Q is Hermitian bit for bit
    q = np.where(u == 1, r.conjugate(), np.where(u.T == 1, r, 0j))
    h = q.copy()
    h[np.diag_indices(U.v)] = r
    cert = certify_hadamard(h, tol, construction="skew", branch=branch, a=a,
                            **{"lambda": UnitComplex.from_complex(r)})
    Q = SignatureMatrix(q, tol)
    params: FrameParams = signature_check(Q, tol)
    return cert, Q, params
