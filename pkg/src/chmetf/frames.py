"""Signature (Seidel) matrices of equiangular tight frames.

A signature matrix ``Q`` is hollow, self-adjoint and unimodular off the
diagonal. It belongs to an equiangular ``(n, k)`` Parseval frame exactly
when ``Q @ Q == (n - 1) I + mu Q`` for a real ``mu``; then ``k`` depends on
``n`` and ``mu`` alone and the frame's Gram matrix is

    G = (k / n) I + sqrt(k (n - k) / (n**2 (n - 1))) Q.

When ``|mu| <= 2`` the matrix ``Q + lam I`` is complex Hadamard for
``lam = -mu/2 +- i sqrt(1 - mu**2/4)``, and conversely.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    CertificationError,
    ClusterCountMismatch,
    DegenerateK,
    InconsistentMu,
    MuOutOfRange,
    NonConstantDiagonal,
    NonIntegerMultiplicity,
    NotASignature,
    NotSelfAdjointAfterShift,
    NotSquareOrder,
    RankMismatch,
)
from .matrix import (
    DEFAULT_TOL,
    ZERO,
    ExactMatrix,
    HadamardCert,
    VerificationReport,
    certify_hadamard,
    exact_product,
    hermitian_eigen,
    is_exact,
    is_self_adjoint,
    matmul,
    reduce_counts,
    to_complex,
)
from .scalar import UnitComplex, root_table

K_INTEGRAL_TOL = 1e-6
CLUSTER_TOL = 1e-6  # relative to sqrt(n)


class SignatureMatrix:
    """Hollow self-adjoint matrix with unimodular off-diagonal entries.

    ``body`` is an :class:`ExactMatrix` (zero diagonal encoded as ``-1``)
    or a complex array. The defining properties are certified on
    construction and :class:`NotASignature` is raised if they fail.
    """

    def __init__(self, body, tol=DEFAULT_TOL):
        if not is_exact(body):
            body = np.array(body, dtype=np.complex128)
            body.setflags(write=False)
        self.body = body
        self.tol = tol
        self.report = self._certify()
        if not self.report.passed:
            raise NotASignature("not a signature matrix\n" + self.report.summary())

    def _certify(self):
        n = self.n
        off = ~np.eye(n, dtype=bool)
        if is_exact(self.body):
            e = self.body.exps
            rep = VerificationReport("exact", 0.0)
            diag_bad = int((np.diag(e) != ZERO).sum())
            off_bad = int((e[off] == ZERO).sum())
        else:
            m = self.body
            rep = VerificationReport("float", self.tol)
            diag_bad = np.abs(np.diag(m)).max() if n else 0.0
            off_bad = np.abs(np.abs(m[off]) - 1.0).max() if n > 1 else 0.0
            diag_bad = diag_bad if diag_bad > self.tol else 0.0
            off_bad = off_bad if off_bad > self.tol else 0.0
        rep.add("hollow diagonal", not diag_bad, diag_bad)
        rep.add("unimodular off-diagonal", not off_bad, off_bad)
        rep.extend(is_self_adjoint(self.body, self.tol))
        return rep

    @property
    def n(self):
        return self.body.shape[0]

    @property
    def exact(self):
        return is_exact(self.body)

    def to_complex(self):
        return to_complex(self.body)

    def __eq__(self, other):
        if not isinstance(other, SignatureMatrix):
            return NotImplemented
        if self.exact and other.exact:
            return self.body == other.body
        return np.array_equal(self.to_complex(), other.to_complex())

    def __repr__(self):
        kind = f"exact q={self.body.q}" if self.exact else "float"
        return f"SignatureMatrix(n={self.n}, {kind})"


@dataclass
class FrameParams:
    n: int
    mu: float
    k: float
    k_rounded: int
    exact: bool = False
    report: VerificationReport = field(default=None, repr=False)

    @property
    def dual_k(self):
        return self.n - self.k_rounded

    def to_dict(self):
        return {"n": self.n, "mu": self.mu, "k": self.k, "k_rounded": self.k_rounded,
                "dual_k": self.dual_k, "exact": self.exact}


def frame_dim(n, mu):
    """Dimension ``k`` of the equiangular frame with ``n`` vectors and parameter ``mu``."""
    return n / 2 - mu * n / (2 * math.sqrt(4 * (n - 1) + mu * mu))


def _as_signature(q):
    return q if isinstance(q, SignatureMatrix) else SignatureMatrix(q)


def _finish(n, mu, exact, rep):
    k = frame_dim(n, mu)
    kr = int(round(k))
    rep.add("k integral", abs(k - kr) <= K_INTEGRAL_TOL, abs(k - kr))
    return FrameParams(n, mu, k, kr, exact, rep)


def _signature_check_exact(Q):
    body = Q.body
    n = Q.n
    q, counts = exact_product(body, body)
    e = body.with_order(q).exps
    idx = np.arange(n)
    rep = VerificationReport("exact", 0.0)

    diag = counts[idx, idx].copy()
    diag[:, 0] -= n - 1
    bad = reduce_counts(diag, q).any(axis=1)
    resid = float(np.abs(diag.astype(float) @ root_table(q)).max())
    rep.add("diag(Q^2) == n-1", not bad.any(), resid if bad.any() else 0.0)
    if bad.any():
        raise NotASignature("diagonal of Q^2 is not n-1\n" + rep.summary())

    # ratio (Q^2)_ij / Q_ij: rotate each coefficient vector by -e_ij
    off = ~np.eye(n, dtype=bool)
    shift = (np.arange(q)[None, None, :] + np.where(e == ZERO, 0, e)[:, :, None]) % q
    ratios = np.take_along_axis(counts, shift, axis=2)[off]
    red = reduce_counts(ratios, q)
    first = red[0]
    spread = (red != first).any(axis=1)
    vals = ratios.astype(float) @ root_table(q)
    mu_c = complex(vals[0])
    rep.add("mu consistent", not spread.any(), np.abs(vals - mu_c).max() if spread.any() else 0.0)
    conj = ratios[0][(-np.arange(q)) % q]
    real = not (reduce_counts(conj, q) != first).any()
    rep.add("mu real", real, 0.0 if real else abs(mu_c.imag))
    if not rep.passed:
        raise InconsistentMu("off-diagonal ratios do not give one real mu\n" + rep.summary())
    mu = mu_c.real
    if not first[1:].any():
        mu = float(first[0])  # rational integer, known exactly
    return _finish(n, mu, True, rep)


def _signature_check_float(Q, tol):
    m = Q.to_complex()
    n = Q.n
    q2 = matmul(m, m)
    rep = VerificationReport("float", tol)
    resid = np.abs(np.diag(q2) - (n - 1)).max()
    rep.add("diag(Q^2) == n-1", resid <= tol * n, resid)
    if not rep.passed:
        raise NotASignature("diagonal of Q^2 is not n-1\n" + rep.summary())
    off = ~np.eye(n, dtype=bool)
    ratios = q2[off] / m[off]
    mu_c = ratios.mean()
    dev = np.abs(ratios - mu_c).max()
    rep.add("mu consistent", dev <= tol * n, dev)
    rep.add("mu real", abs(mu_c.imag) <= tol, abs(mu_c.imag))
    if not rep.passed:
        raise InconsistentMu("off-diagonal ratios do not give one real mu\n" + rep.summary())
    return _finish(n, float(mu_c.real), False, rep)


def signature_check(Q, tol=DEFAULT_TOL):
    """Verify ``Q^2 = (n-1) I + mu Q`` and return the frame parameters.

    ``mu`` is read off the off-diagonal ratios ``(Q^2)_ij / Q_ij``, all of
    which must agree and be real. Exact signature matrices are checked in
    cyclotomic arithmetic.
    """
    Q = _as_signature(Q)
    if Q.n < 2:
        raise NotASignature("signature matrices need n >= 2")
    if Q.exact:
        return _signature_check_exact(Q)
    return _signature_check_float(Q, tol)


def negate(Q):
    """``-Q``; exact for even root order, float otherwise (-1 is not an odd-order root)."""
    Q = _as_signature(Q)
    if Q.exact and Q.body.q % 2 == 0:
        q = Q.body.q
        e = Q.body.exps
        return SignatureMatrix(ExactMatrix(q, np.where(e == ZERO, ZERO, (e + q // 2) % q)))
    return SignatureMatrix(-Q.to_complex(), Q.tol)


def _match_root(lam, q):
    tab = root_table(q)
    e = int(np.argmin(np.abs(tab - lam)))
    return e if abs(tab[e] - lam) < 1e-9 else None


def hadamard_from_signature(Q, branch="plus", tol=DEFAULT_TOL):
    """``H = Q + lam I`` with ``lam = -mu/2 +- i sqrt(1 - mu^2/4)``.

    ``branch="plus"`` takes the positive imaginary part. At ``|mu| = 2``
    both branches give the real ``lam = -mu/2``; this is flagged in
    ``meta["degenerate"]``. If ``Q`` is exact and ``lam`` is a root of
    unity of the same order, ``H`` is built and certified exactly.
    """
    if branch not in ("plus", "minus"):
        raise ValueError(f"branch must be 'plus' or 'minus', got {branch!r}")
    Q = _as_signature(Q)
    params = signature_check(Q, tol)
    mu = params.mu
    if abs(mu) > 2 + tol:
        raise MuOutOfRange(f"|mu| = {abs(mu):.6g} > 2; Q + lam I cannot be Hadamard")
    mu = min(2.0, max(-2.0, mu))
    degenerate = abs(abs(mu) - 2) <= tol
    if degenerate:
        lam = complex(-mu / 2, 0.0)
        lam = complex(round(lam.real), 0.0)
    else:
        im = math.sqrt(1 - mu * mu / 4)
        lam = complex(-mu / 2, im if branch == "plus" else -im)
    meta = {"lambda": UnitComplex.from_complex(lam), "branch": branch, "degenerate": degenerate,
            "mu": params.mu, "params": params}
    n = Q.n
    if Q.exact:
        e = _match_root(lam, Q.body.q)
        if e is not None:
            exps = Q.body.exps.copy()
            exps[np.arange(n), np.arange(n)] = e
            return certify_hadamard(ExactMatrix(Q.body.q, exps), tol, **meta)
    h = Q.to_complex().copy()
    h[np.arange(n), np.arange(n)] = lam
    return certify_hadamard(h, tol, **meta)


def signature_from_hadamard(H, tol=1e-10):
    """Split a Hadamard matrix with constant diagonal ``lam`` into ``(Q, lam)``."""
    if not isinstance(H, HadamardCert):
        H = certify_hadamard(H, max(tol, DEFAULT_TOL))
    m = H.matrix
    n = H.n
    idx = np.arange(n)
    if is_exact(m):
        d = np.diag(m.exps)
        if (d != d[0]).any():
            raise NonConstantDiagonal(f"diagonal exponents {d.tolist()} are not constant")
        exps = m.exps.copy()
        exps[idx, idx] = ZERO
        body = ExactMatrix(m.q, exps)
        if not is_self_adjoint(body).passed:
            raise NotSelfAdjointAfterShift("H - lam I is not self-adjoint")
        lam = root_table(m.q)[d[0]]
        return SignatureMatrix(body), UnitComplex.from_complex(lam)
    m = to_complex(m)
    d = np.diag(m)
    if np.abs(d - d[0]).max() > tol:
        raise NonConstantDiagonal("diagonal is not constant")
    lam = d.mean()
    lam /= abs(lam)
    body = m.copy()
    body[idx, idx] = 0
    if not is_self_adjoint(body, tol).passed:
        raise NotSelfAdjointAfterShift("H - lam I is not self-adjoint")
    return SignatureMatrix(body, max(tol, DEFAULT_TOL)), UnitComplex.from_complex(lam)


def cluster(values, width):
    """Group sorted-descending values into runs whose neighbours differ by at most ``width``."""
    groups = [[values[0]]]
    for v in values[1:]:
        if groups[-1][-1] - v <= width:
            groups[-1].append(v)
        else:
            groups.append([v])
    return groups


def two_eigenvalue_check(Q, tol=1e-6):
    """Confirm ``Q`` has exactly two eigenvalues, at the roots of ``x^2 - mu x - (n-1)``.

    Returns ``(rho1, rho2, mult1, mult2)`` with ``rho1 > rho2``.
    """
    Q = _as_signature(Q)
    params = signature_check(Q)
    n, mu = Q.n, params.mu
    w, _ = hermitian_eigen(Q.to_complex())
    groups = cluster(list(w), CLUSTER_TOL * math.sqrt(n))
    if len(groups) != 2:
        raise ClusterCountMismatch(f"expected 2 eigenvalue clusters, found {len(groups)}")
    rho1, rho2 = (float(np.mean(g)) for g in groups)
    m1, m2 = len(groups[0]), len(groups[1])
    disc = math.sqrt(mu * mu + 4 * (n - 1))
    want1, want2 = (mu + disc) / 2, (mu - disc) / 2
    if max(abs(rho1 - want1), abs(rho2 - want2)) > CLUSTER_TOL * math.sqrt(n):
        raise ClusterCountMismatch(
            f"clusters at {rho1:.9g}, {rho2:.9g}; expected {want1:.9g}, {want2:.9g}")
    if abs(m1 * rho1 + m2 * rho2) > tol * n:
        raise ClusterCountMismatch("eigenvalue multiplicities do not give trace zero")
    return rho1, rho2, m1, m2


@dataclass
class GramMatrix:
    body: np.ndarray
    n: int
    k: int


def gram_coefficient(n, k):
    """Off-diagonal weight of ``Q`` in the Gram matrix of an equiangular ``(n, k)`` frame."""
    return math.sqrt(k * (n - k) / (n * n * (n - 1)))


def gram_matrix(Q, tol=DEFAULT_TOL):
    Q = _as_signature(Q)
    params = signature_check(Q, tol)
    n, k = Q.n, params.k_rounded
    if k <= 0 or k >= n:
        raise DegenerateK(f"k = {k} leaves no proper frame for n = {n}")
    g = gram_coefficient(n, k) * Q.to_complex()
    g[np.arange(n), np.arange(n)] = k / n
    return GramMatrix(g, n, k)


def verify_projection(G, tol=DEFAULT_TOL):
    """Check ``G`` is a self-adjoint idempotent of trace ``k``."""
    g = to_complex(G.body)
    rep = VerificationReport("float", tol)
    rep.extend(is_self_adjoint(g, tol))
    idem = np.abs(matmul(g, g) - g).max()
    rep.add("G^2 == G", idem <= tol, idem)
    tr = abs(np.trace(g).real - G.k)
    rep.add("trace == k", tr <= tol * G.n, tr)
    return rep


@dataclass
class AnalysisMatrix:
    """``n x k`` analysis operator; row ``i`` is the conjugate of frame vector ``f_i``."""

    body: np.ndarray
    report: VerificationReport = field(default=None, repr=False)

    @property
    def n(self):
        return self.body.shape[0]

    @property
    def k(self):
        return self.body.shape[1]

    @property
    def vectors(self):
        """Frame vectors ``f_i`` as rows."""
        return self.body.conj()


def frame_vectors(G, tol=DEFAULT_TOL):
    """Extract an analysis operator ``V`` with ``V V* == G``.

    ``V`` is only determined up to a ``k x k`` unitary on the right; the
    returned columns are eigenvectors of ``G`` for the eigenvalue 1.
    """
    g = to_complex(G.body)
    n, k = G.n, G.k
    w, vecs = hermitian_eigen(g, tol=min(tol, 1e-12))
    sel = np.abs(w - 1.0) <= 10 * tol
    if int(sel.sum()) != k:
        raise RankMismatch(f"{int(sel.sum())} unit eigenvalues, expected k = {k}")
    v = vecs[:, sel]
    rep = VerificationReport("float", 10 * tol)
    vv = np.abs(matmul(v, v.conj().T) - g).max()
    rep.add("V V* == G", vv <= 10 * tol, vv)
    inner = matmul(v, v.conj().T)
    norms = np.abs(np.diag(inner).real - k / n).max()
    rep.add("|f_i|^2 == k/n", norms <= 10 * tol, norms)
    if n > 1:
        off = ~np.eye(n, dtype=bool)
        angle = np.abs(np.abs(inner[off]) - gram_coefficient(n, k)).max()
        rep.add("|<f_i,f_j>| constant", angle <= 10 * tol, angle)
    if not rep.passed:
        raise CertificationError("frame vectors fail their checks\n" + rep.summary(), rep)
    return AnalysisMatrix(v, rep)


def random_unit_vectors(k, trials, seed=0):
    """``trials`` Haar-random unit vectors in C^k from numpy's PCG64 stream ``seed``."""
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((trials, k)) + 1j * rng.standard_normal((trials, k))
    return x / np.linalg.norm(x, axis=1, keepdims=True)


def parseval_identity_check(V, trials=100, tol=DEFAULT_TOL, seed=0):
    """``sum_i |<x, f_i>|^2 == |x|^2`` on seeded random unit vectors ``x``."""
    v = V.body if isinstance(V, AnalysisMatrix) else np.asarray(V)
    xs = random_unit_vectors(v.shape[1], trials, seed)
    energy = np.array([np.sum(np.abs(matmul(v, x[:, None])) ** 2) for x in xs])
    dev = np.abs(energy - 1.0).max() if trials else 0.0
    rep = VerificationReport("float", tol)
    return rep.add(f"Parseval identity ({trials} trials, seed {seed})", dev <= tol, dev)


def sic_feasibility(k):
    """``mu`` forced on a ``(k^2, k)`` frame, and whether ``|mu| <= 2`` allows a Hadamard route."""
    if k < 2:
        raise ValueError("k must be at least 2")
    mu = math.sqrt(k + 1) * (k - 2)
    return mu, abs(mu) <= 2


def gow_square_check(H, tol=DEFAULT_TOL):
    """Multiplicity ``s`` of the eigenvalue ``+sqrt(n)`` of a self-adjoint CHM.

    ``H`` must have constant diagonal ``+1`` or ``-1``. Its order must be a
    perfect square and ``s = (n + tr(H)/sqrt(n)) / 2`` an integer; ``s`` is
    cross-checked against the computed spectrum.
    """
    if not isinstance(H, HadamardCert):
        H = certify_hadamard(H, tol)
    n = H.n
    r = math.isqrt(n)
    if r * r != n:
        raise NotSquareOrder(f"order {n} is not a perfect square")
    m = to_complex(H.matrix)
    rep = VerificationReport(H.mode, tol)
    rep.extend(is_self_adjoint(H.matrix, tol))
    d = np.diag(m)
    const = np.abs(d - d[0]).max()
    pm1 = min(abs(d[0] - 1), abs(d[0] + 1))
    rep.add("constant diagonal +-1", const <= tol and pm1 <= tol, max(const, pm1))
    if not rep.passed:
        raise NonConstantDiagonal("needs a self-adjoint CHM with constant diagonal +-1\n" + rep.summary())
    rep.add("square order", True, 0.0)
    s_real = (n + np.trace(m).real / r) / 2
    s = int(round(s_real))
    ok = abs(s_real - s) <= tol * n and 0 <= s <= n
    rep.add("s integral", ok, abs(s_real - s))
    if not ok:
        raise NonIntegerMultiplicity(f"s = {s_real} is not an integer in [0, n]")
    w, _ = hermitian_eigen(m)
    pos = int((w > 0).sum())
    spec = np.abs(np.abs(w) - r).max()
    rep.add("spectrum is +-sqrt(n)", spec <= 1e-8 * n, spec)
    rep.add("#(+sqrt(n)) == s", pos == s, abs(pos - s))
    return s, rep
