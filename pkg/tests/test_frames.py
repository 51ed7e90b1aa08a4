import math

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from chmetf import (
    ExactMatrix,
    GramMatrix,
    SignatureMatrix,
    block_lift,
    catalog,
    fourier,
    frame_dim,
    frame_vectors,
    gow_square_check,
    gram_matrix,
    hadamard_from_signature,
    is_hadamard,
    negate,
    parseval_identity_check,
    sic_feasibility,
    signature_check,
    signature_from_hadamard,
    to_complex,
    two_eigenvalue_check,
    verify_projection,
)
from chmetf.errors import (
    DegenerateK,
    InconsistentMu,
    MuOutOfRange,
    NonConstantDiagonal,
    NotASignature,
    NotSquareOrder,
    RankMismatch,
)
from chmetf.frames import AnalysisMatrix, gram_coefficient


def j_minus_i(n):
    return ExactMatrix(1, np.where(np.eye(n, dtype=bool), -1, 0))


def k36_signature(k36):
    e = k36.matrix.exps.copy()
    e[np.diag_indices(36)] = -1
    return SignatureMatrix(ExactMatrix(3, e))


# frame_dim oracle: exact symbolic evaluation


def frame_dim_exact(n, mu):
    n, mu = sympy.Integer(n), sympy.nsimplify(mu)
    return sympy.nsimplify(n / 2 - mu * n / (2 * sympy.sqrt(4 * (n - 1) + mu**2)))


def test_frame_dim_oracle_values():
    assert frame_dim_exact(9, -2) == 6
    assert frame_dim_exact(36, -2) == 21
    assert sympy.simplify(frame_dim_exact(7, -1 / sympy.sqrt(2)) - 4) == 0


@pytest.mark.parametrize("n, mu, k", [(9, -2, 6), (36, -2, 21), (7, -1 / math.sqrt(2), 4)])
def test_frame_dim(n, mu, k):
    assert frame_dim(n, mu) == pytest.approx(k, abs=1e-12)


@settings(max_examples=300, deadline=None)
@given(st.integers(2, 500), st.floats(-2, 2))
def test_frame_dim_duality(n, mu):
    assert abs(frame_dim(n, mu) + frame_dim(n, -mu) - n) <= 1e-10


def test_signature_check_examples(q9, q4):
    p = signature_check(q9)
    assert (p.mu, p.k, p.k_rounded, p.exact) == (-2.0, 6.0, 6, True)
    p = signature_check(q4)
    assert (p.mu, p.k_rounded) == (0.0, 2)
    p = signature_check(j_minus_i(3))
    assert (p.mu, p.k_rounded) == (1.0, 1)
    assert p.k == pytest.approx(1.0)


def test_signature_check_float_matches_exact(q9, q4):
    for q in (q9, q4):
        a, b = signature_check(q), signature_check(SignatureMatrix(to_complex(q)))
        assert b.exact is False
        assert b.mu == pytest.approx(a.mu, abs=1e-12)
        assert b.k_rounded == a.k_rounded


def test_signature_check_failures():
    # hollow, unimodular and symmetric, but the ratios (Q^2)_ij / Q_ij disagree
    s = np.array([[0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, -1], [1, 1, -1, 0]], dtype=float)
    with pytest.raises(InconsistentMu):
        signature_check(s)
    with pytest.raises(InconsistentMu):
        signature_check(ExactMatrix(2, np.where(np.eye(4, dtype=bool), -1, (s < 0).astype(int))))
    with pytest.raises(NotASignature):
        SignatureMatrix(to_complex(fourier(3)))
    with pytest.raises(NotASignature):
        SignatureMatrix(np.ones((3, 3)))


def test_negate(q9, k36):
    m = negate(q9)
    assert not m.exact  # q = 3 is odd
    assert signature_check(m).k_rounded == 3
    assert signature_check(negate(k36_signature(k36))).k_rounded == 15
    assert np.allclose(negate(negate(q9)).to_complex(), to_complex(q9))
    q4 = SignatureMatrix(catalog("q4").matrix)
    assert negate(q4).exact and negate(negate(q4)) == q4
    assert signature_check(negate(q4)).k_rounded == 2


def test_hadamard_from_signature_examples(q9, q4):
    for branch in ("plus", "minus"):
        h = hadamard_from_signature(q9, branch)
        assert h.mode == "exact" and h.meta["degenerate"]
        assert complex(h.meta["lambda"]) == 1
        assert h.matrix == ExactMatrix(3, np.where(q9.exps < 0, 0, q9.exps))
    h = hadamard_from_signature(q4, "plus")
    assert complex(h.meta["lambda"]) == pytest.approx(1j)
    assert np.allclose(to_complex(h.matrix) @ to_complex(h.matrix).conj().T, 4 * np.eye(4))
    h = hadamard_from_signature(j_minus_i(3), "minus")
    lam = complex(h.meta["lambda"])
    assert lam == pytest.approx(np.exp(-2j * np.pi / 3))
    assert is_hadamard(h.matrix).passed


def test_hadamard_from_signature_mu_out_of_range():
    # J - I of order 5 has mu = 3
    with pytest.raises(MuOutOfRange):
        hadamard_from_signature(j_minus_i(5))


def test_signature_from_hadamard_examples(q9, k4):
    h9 = ExactMatrix(3, np.where(q9.exps < 0, 0, q9.exps))
    Q, lam = signature_from_hadamard(h9)
    assert Q.body == q9 and complex(lam) == 1
    Q, lam = signature_from_hadamard(k4)
    e = k4.matrix.exps.copy()
    e[np.diag_indices(4)] = -1
    assert Q.body == ExactMatrix(2, e) and complex(lam) == 1
    with pytest.raises(NonConstantDiagonal):
        signature_from_hadamard(fourier(4))


@pytest.mark.parametrize("name", ["q9", "q4"])
@pytest.mark.parametrize("branch", ["plus", "minus"])
def test_round_trip(name, branch):
    Q = SignatureMatrix(catalog(name).matrix)
    h = hadamard_from_signature(Q, branch)
    back, lam = signature_from_hadamard(h)
    assert back == Q
    assert complex(lam) == pytest.approx(complex(h.meta["lambda"]), abs=1e-15)


def test_round_trip_float_branch():
    Q = j_minus_i(3)
    for branch in ("plus", "minus"):
        h = hadamard_from_signature(Q, branch)
        back, lam = signature_from_hadamard(h)
        assert np.allclose(back.to_complex(), to_complex(Q), atol=0)
        assert complex(lam) == pytest.approx(complex(h.meta["lambda"]), abs=1e-15)


def test_two_eigenvalue_examples(q4, q9):
    r1, r2, m1, m2 = two_eigenvalue_check(q4)
    assert (r1, r2) == pytest.approx((math.sqrt(3), -math.sqrt(3)))
    assert (m1, m2) == (2, 2)
    r1, r2, m1, m2 = two_eigenvalue_check(q9)
    assert (r1, r2) == pytest.approx((2, -4))
    assert (m1, m2) == (6, 3)
    r1, r2, m1, m2 = two_eigenvalue_check(j_minus_i(3))
    assert (r1, r2, m1, m2) == pytest.approx((2, -1, 1, 2))


def test_eigen_clusters_match_mu(q4, q9, k36):
    for Q in (q4, q9, k36_signature(k36)):
        Q = Q if isinstance(Q, SignatureMatrix) else SignatureMatrix(Q)
        n, mu = Q.n, signature_check(Q).mu
        r1, r2, _, _ = two_eigenvalue_check(Q)
        assert abs(r1 + r2 - mu) <= 1e-6 * n
        assert abs(r1 * r2 + (n - 1)) <= 1e-6 * n


def test_gram_matrix_examples(q4, q9):
    g = gram_matrix(q4)
    assert np.allclose(g.body, np.eye(4) / 2 + to_complex(q4) / (2 * math.sqrt(3)))
    g = gram_matrix(q9)
    assert gram_coefficient(9, 6) == pytest.approx(1 / 6)
    assert np.allclose(g.body, 2 / 3 * np.eye(9) + to_complex(q9) / 6)
    g = gram_matrix(negate(j_minus_i(3)))
    assert g.k == 2
    assert np.allclose(g.body, 2 / 3 * np.eye(3) - (np.ones((3, 3)) - np.eye(3)) / 3)


def test_gram_matrix_degenerate(monkeypatch):
    # k in {0, n} cannot come out of a genuine signature matrix, so force it
    from chmetf import frames

    orig = frames.signature_check

    def forced(Q, tol=1e-9):
        p = orig(Q, tol)
        p.k_rounded = 0
        return p

    monkeypatch.setattr(frames, "signature_check", forced)
    with pytest.raises(DegenerateK):
        frames.gram_matrix(j_minus_i(3))


def test_verify_projection(q4, q9):
    assert verify_projection(gram_matrix(q4)).passed
    rep = verify_projection(gram_matrix(q9))
    assert rep.passed
    assert np.trace(gram_matrix(q9).body).real == pytest.approx(6)
    bad = verify_projection(GramMatrix(np.eye(2) / 2, 2, 1))
    assert not bad.passed
    assert [c.name for c in bad.checks if not c.passed] == ["G^2 == G"]


@pytest.mark.parametrize("name, n, k", [("q4", 4, 2), ("q9", 9, 6)])
def test_frame_vectors(name, n, k):
    V = frame_vectors(gram_matrix(catalog(name).matrix))
    assert V.body.shape == (n, k)
    f = V.vectors
    assert np.allclose(np.sum(np.abs(f) ** 2, axis=1), k / n, atol=1e-10)
    inner = np.abs(f @ f.conj().T)
    off = ~np.eye(n, dtype=bool)
    assert np.allclose(inner[off], gram_coefficient(n, k), atol=1e-10)
    assert parseval_identity_check(V, 100).passed


def test_frame_vectors_k36(k36):
    V = frame_vectors(gram_matrix(k36_signature(k36)))
    assert V.body.shape == (36, 21)
    inner = np.abs(V.vectors @ V.vectors.conj().T)
    off = ~np.eye(36, dtype=bool)
    assert np.abs(inner[off] - gram_coefficient(36, 21)).max() <= 1e-8


def test_frame_vectors_rank_mismatch(q9):
    g = gram_matrix(q9)
    with pytest.raises(RankMismatch):
        frame_vectors(GramMatrix(g.body, 9, 5))


def test_parseval_detects_missing_vector(q9):
    V = frame_vectors(gram_matrix(q9))
    body = V.body.copy()
    body[0] = 0
    assert not parseval_identity_check(AnalysisMatrix(body), 100).passed


def test_parseval_is_seeded(q9):
    V = frame_vectors(gram_matrix(q9))
    a = parseval_identity_check(V, 20, seed=5).checks[0].residual
    b = parseval_identity_check(V, 20, seed=5).checks[0].residual
    assert a == b


def test_sic_feasibility():
    assert sic_feasibility(2) == (0.0, True)
    assert sic_feasibility(3) == (2.0, True)
    mu, ok = sic_feasibility(4)
    assert mu == pytest.approx(2 * math.sqrt(5)) and not ok
    assert [k for k in range(2, 51) if sic_feasibility(k)[1]] == [2, 3]


def test_sic_k3_matches_the_q9_family(q9):
    # mu = 2 is realised by -Q9 and gives k = 3 for n = 9
    p = signature_check(negate(q9))
    assert p.mu == pytest.approx(sic_feasibility(3)[0])
    assert p.k_rounded == 3


def test_gow_examples(k4, k36):
    s, rep = gow_square_check(k4)
    assert s == 3 and rep.passed
    s, rep = gow_square_check(block_lift(fourier(3)))
    assert s == 6 and rep.passed
    s, rep = gow_square_check(k36)
    assert s == 21 and rep.passed


def test_gow_rejects_non_square():
    h = np.kron(to_complex(fourier(2)), to_complex(fourier(3)))
    with pytest.raises(NotSquareOrder):
        gow_square_check(h)


def test_gow_negative_diagonal(k4):
    s, rep = gow_square_check(-to_complex(k4.matrix))
    assert s == 1 and rep.passed
