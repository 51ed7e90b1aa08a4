"""JSON matrix files.

Every file is one JSON object with a ``kind`` field:

``butson`` / ``signature-butson``
    ``{"kind", "q", "n", "exp"}`` -- ``exp`` is an n x n grid of exponents
    of ``zeta_q``, ``null`` for a zero entry.
``complex`` / ``signature-complex``
    ``{"kind", "n", "re", "im"}`` -- two n x n grids of floats.
``design``
    ``{"kind", "v", "rows"}`` -- ``rows`` are strings of ``0``/``1``.
``analysis``
    ``{"kind", "n", "k", "re", "im"}`` -- an n x k analysis operator.
``params``
    ``{"kind", "n", "mode", "re", "im"}`` -- an (n-1) x (n-1) grid of
    block scalings.

Floats are written with Python's shortest round-trip repr, so reading a
file back reproduces every value bit for bit.
"""

import json

import numpy as np

from .designs import Design, verify_design
from .errors import ChmError
from .frames import AnalysisMatrix, SignatureMatrix
from .lift import ParamGrid
from .matrix import ExactMatrix, HadamardCert, is_exact, to_complex


class MatrixFileError(ValueError):
    """Malformed or invariant-violating matrix file."""


def _grid(a):
    return [[float(x) for x in row] for row in a]


def serialize(obj):
    """Object -> JSON-ready dict."""
    if isinstance(obj, HadamardCert):
        obj = obj.matrix
    if isinstance(obj, SignatureMatrix):
        if obj.exact:
            return {"kind": "signature-butson", "q": obj.body.q, "n": obj.n, "exp": obj.body.rows()}
        m = obj.to_complex()
        return {"kind": "signature-complex", "n": obj.n, "re": _grid(m.real), "im": _grid(m.imag)}
    if is_exact(obj):
        return {"kind": "butson", "q": obj.q, "n": obj.n, "exp": obj.rows()}
    if isinstance(obj, Design):
        return {"kind": "design", "v": obj.v, "rows": obj.rows()}
    if isinstance(obj, AnalysisMatrix):
        b = obj.body
        return {"kind": "analysis", "n": obj.n, "k": obj.k, "re": _grid(b.real), "im": _grid(b.imag)}
    if isinstance(obj, ParamGrid):
        v = obj.values
        return {"kind": "params", "n": obj.n, "mode": obj.mode, "re": _grid(v.real), "im": _grid(v.imag)}
    m = np.asarray(obj)
    if m.ndim == 2 and np.issubdtype(m.dtype, np.number):
        m = to_complex(m)
        return {"kind": "complex", "n": m.shape[0], "re": _grid(m.real), "im": _grid(m.imag)}
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj):
    return json.dumps(serialize(obj), allow_nan=False)


def _field(d, key, typ=None):
    if key not in d:
        raise MatrixFileError(f"missing field {key!r}")
    v = d[key]
    if typ is int and (not isinstance(v, int) or isinstance(v, bool)):
        raise MatrixFileError(f"field {key!r} must be an integer")
    return v


def _float_grid(d, rows, cols):
    try:
        re = np.array(_field(d, "re"), dtype=np.float64)
        im = np.array(_field(d, "im"), dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise MatrixFileError(f"bad float grid: {exc}") from None
    if re.shape != (rows, cols) or im.shape != (rows, cols):
        raise MatrixFileError(f"float grids must have shape {(rows, cols)}")
    if not (np.isfinite(re).all() and np.isfinite(im).all()):
        raise MatrixFileError("non-finite entries")
    return re + 1j * im


def incidence_from_dict(d):
    """The raw 0/1 grid of a design file, shape-checked but not verified as a design."""
    v = _field(d, "v", int)
    rows = _field(d, "rows")
    if not isinstance(rows, list) or len(rows) != v or any(
            not isinstance(r, str) or len(r) != v or set(r) - {"0", "1"} for r in rows):
        raise MatrixFileError(f"rows must be {v} strings of {v} characters 0/1")
    return np.array([[int(c) for c in r] for r in rows], dtype=np.int64).reshape(v, v)


def deserialize(d):
    """JSON dict -> object, validating the invariants of its kind."""
    if not isinstance(d, dict):
        raise MatrixFileError("matrix file must hold a JSON object")
    kind = _field(d, "kind")
    try:
        if kind in ("butson", "signature-butson"):
            q, n = _field(d, "q", int), _field(d, "n", int)
            rows = _field(d, "exp")
            if not isinstance(rows, list) or len(rows) != n or any(
                    not isinstance(r, list) or len(r) != n for r in rows):
                raise MatrixFileError(f"exp must be a {n}x{n} grid")
            if any(e is not None and (not isinstance(e, int) or isinstance(e, bool)) for r in rows for e in r):
                raise MatrixFileError("exponents must be integers or null")
            m = ExactMatrix.from_rows(q, rows)
            return SignatureMatrix(m) if kind == "signature-butson" else m
        if kind in ("complex", "signature-complex"):
            n = _field(d, "n", int)
            m = _float_grid(d, n, n)
            return SignatureMatrix(m) if kind == "signature-complex" else m
        if kind == "design":
            return verify_design(incidence_from_dict(d))
        if kind == "analysis":
            n, k = _field(d, "n", int), _field(d, "k", int)
            return AnalysisMatrix(_float_grid(d, n, k))
        if kind == "params":
            n = _field(d, "n", int)
            return ParamGrid(n, _float_grid(d, n - 1, n - 1), _field(d, "mode"))
    except ChmError as exc:
        raise MatrixFileError(f"{kind} file violates its invariants: {exc}") from exc
    except ValueError as exc:
        if isinstance(exc, MatrixFileError):
            raise
        raise MatrixFileError(f"{kind} file is invalid: {exc}") from exc
    raise MatrixFileError(f"unknown kind {kind!r}")


def parse(text):
    try:
        d = json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise MatrixFileError(f"not valid JSON: {exc}") from None
    if not isinstance(d, dict):
        raise MatrixFileError("matrix file must hold a JSON object")
    return d


def loads(text):
    return deserialize(parse(text))
