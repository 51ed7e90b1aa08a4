"""Command line interface.

Matrices travel as JSON matrix files (see :mod:`chmetf.io`): read from
``--in`` (default standard input) and written to ``--out`` (default
standard output), so subcommands can be piped::

    chmetf construct catalog --name tao6 | chmetf lift block | chmetf frame analyze

Human-readable reports go to standard error; ``--report FILE`` writes the
machine-readable report. Exit status: 0 if every check passed, 1 if a
well-formed input failed verification, 2 on usage, parse or I/O errors.
"""

import argparse
import hashlib
import json
import sys
import time

from . import __version__
from ._accel import backend_name
from .designs import induce_chm, paley_design, skew_to_selfadjoint_chm, verify_design
from .errors import ChmError
from .frames import (
    SignatureMatrix,
    frame_vectors,
    gram_matrix,
    negate,
    signature_check,
    signature_from_hadamard,
    sic_feasibility,
    two_eigenvalue_check,
    gow_square_check,
)
from .io import MatrixFileError, deserialize, incidence_from_dict, parse, serialize
from .lift import ParamGrid, block_lift, catalog, fourier, free_param_count, parametric_block_lift
from .matrix import DEFAULT_TOL, VerificationReport, certify_hadamard, is_hadamard

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class Session:
    """Collects what one command read and produced, for the report file."""

    def __init__(self, argv, stdin, stdout, stderr):
        self.argv = list(argv)
        self.stdin, self.stdout, self.stderr = stdin, stdout, stderr
        self.inputs = {}
        self.report = None
        self.extra = {}

    def read(self, path):
        name = path or "-"
        if name == "-":
            data = self.stdin.read()
            if isinstance(data, str):
                data = data.encode()
        else:
            with open(name, "rb") as fh:
                data = fh.read()
        self.inputs[name] = hashlib.sha256(data).hexdigest()
        return parse(data.decode("utf-8", errors="strict") if data else "")

    def write(self, path, obj):
        text = json.dumps(serialize(obj) if not isinstance(obj, dict) else obj, allow_nan=False)
        if path in (None, "-"):
            self.stdout.write(text + "\n")
        else:
            with open(path, "w") as fh:
                fh.write(text + "\n")

    def say(self, line=""):
        self.stdout.write(line + "\n")

    def log(self, line=""):
        self.stderr.write(line + "\n")

    def set_report(self, rep):
        self.report = rep
        self.log(rep.summary())
        return EXIT_OK if rep.passed else EXIT_FAIL

    def report_dict(self, status):
        return {
            "command": self.argv,
            "version": __version__,
            "backend": backend_name(),
            "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
            "inputs": self.inputs,
            "report": self.report.to_dict() if self.report else None,
            **self.extra,
            "exit_status": status,
        }


# --------------------------------------------------------------------------
# loading helpers


def _load_matrix(s, path):
    d = s.read(path)
    kind = d.get("kind")
    if kind not in ("butson", "complex", "signature-butson", "signature-complex"):
        raise MatrixFileError(f"expected a matrix file, got kind {kind!r}")
    return kind, d


def _load_hadamard(s, path, tol):
    kind, d = _load_matrix(s, path)
    if kind.startswith("signature-"):
        raise MatrixFileError("expected a Hadamard matrix, got a signature matrix")
    m = deserialize(d)
    return certify_hadamard(m, tol)


def _load_signature(s, path, tol):
    """A signature file as is, or a Hadamard file with constant diagonal split into Q + lam I."""
    kind, d = _load_matrix(s, path)
    if kind.startswith("signature-"):
        return deserialize(d), None
    Q, lam = signature_from_hadamard(certify_hadamard(deserialize(d), tol))
    return Q, lam


# --------------------------------------------------------------------------
# commands


def cmd_construct(s, args):
    try:
        if args.what == "fourier":
            if args.n < 1:
                raise UsageError("--n must be positive")
            obj = fourier(args.n)
            rep = is_hadamard(obj)
        elif args.what == "paley":
            obj = paley_design(args.q)
            rep = VerificationReport("exact", 0.0).add(
                f"design {obj.params}, skew={obj.skew}", True, 0.0)
        else:
            entry = catalog(args.name)
            obj, rep = entry.matrix, entry.certificate
            if args.name in ("q9", "q4"):
                obj = SignatureMatrix(obj)
    except ChmError as exc:
        raise UsageError(str(exc)) from exc
    s.write(args.out, obj)
    return s.set_report(rep)


def cmd_lift(s, args):
    H = _load_hadamard(s, args.inp, args.tol)
    mode = "self_adjoint" if args.self_adjoint else "general"
    if args.params:
        grid = deserialize(s.read(args.params))
        if not isinstance(grid, ParamGrid):
            raise MatrixFileError("--params needs a params file")
        if args.self_adjoint and grid.mode != "self_adjoint":
            raise UsageError("--self-adjoint given but the params file is a general grid")
        K = parametric_block_lift(H, grid, args.tol)
    elif args.random_params:
        grid = ParamGrid.random(H.n, args.seed, mode)
        s.extra["seed"] = args.seed
        s.extra["rng"] = "numpy.random.default_rng (PCG64)"
        K = parametric_block_lift(H, grid, args.tol)
    else:
        K = block_lift(H, args.tol)
    s.write(args.out, K)
    return s.set_report(K.report)


def cmd_induce(s, args):
    d = s.read(args.inp)
    if d.get("kind") != "design":
        raise MatrixFileError("induce needs a design file")
    U = deserialize(d)
    if args.skew_selfadjoint:
        H, Q, params = skew_to_selfadjoint_chm(U, args.branch)
        rep = VerificationReport(H.mode, H.report.tolerance).extend(H.report).extend(params.report)
        s.extra["frame"] = params.to_dict()
        s.extra["lambda"] = [H.meta["lambda"].re, H.meta["lambda"].im]
    else:
        H = induce_chm(U, args.branch)
        rep = H.report
    s.extra["a"] = [H.meta["a"].real, H.meta["a"].imag]
    s.write(args.out, H)
    return s.set_report(rep)


def cmd_verify(s, args):
    d = s.read(args.inp)
    kind = d.get("kind")
    if args.what == "design":
        if kind != "design":
            raise MatrixFileError("verify design needs a design file")
        U = verify_design(incidence_from_dict(d))
        s.extra["design"] = {"v": U.v, "k": U.k_d, "lambda": U.lambda_d, "skew": U.skew}
        s.log(f"skew: {U.skew}")
        return s.set_report(VerificationReport("exact", 0.0).add(f"Hadamard design {U.params}", True, 0.0))
    if kind not in ("butson", "complex", "signature-butson", "signature-complex"):
        raise MatrixFileError(f"expected a matrix file, got kind {kind!r}")
    raw = deserialize(dict(d, kind=kind.replace("signature-", "")))
    if args.what == "hadamard":
        return s.set_report(is_hadamard(raw, args.tol))
    Q = SignatureMatrix(raw, args.tol)
    params = signature_check(Q, args.tol)
    s.extra["frame"] = params.to_dict()
    return s.set_report(VerificationReport(params.report.mode, args.tol).extend(Q.report).extend(params.report))


def cmd_frame(s, args):
    Q, lam = _load_signature(s, args.inp, args.tol)
    params = signature_check(Q, args.tol)
    if args.what == "vectors":
        V = frame_vectors(gram_matrix(Q, args.tol), args.tol)
        s.write(args.out, V)
        s.extra["frame"] = params.to_dict()
        return s.set_report(V.report)
    rho1, rho2, m1, m2 = two_eigenvalue_check(Q)
    dual = signature_check(negate(Q), args.tol)
    s.say(f"n = {params.n}")
    s.say(f"mu = {params.mu:.12g}{' (exact)' if params.exact else ''}")
    s.say(f"k = {params.k_rounded} (formula value {params.k:.12g})")
    if lam is not None:
        s.say(f"lambda = {complex(lam):.12g}")
    s.say(f"eigenvalues = {rho1:.12g} x{m1}, {rho2:.12g} x{m2}")
    s.say(f"frames: ({params.n},{params.k_rounded}) and dual k = {dual.k_rounded}: ({params.n},{dual.k_rounded})")
    s.extra["frame"] = params.to_dict()
    s.extra["eigenvalues"] = {"rho1": rho1, "mult1": m1, "rho2": rho2, "mult2": m2}
    s.extra["dual_k"] = dual.k_rounded
    rep = VerificationReport(params.report.mode, args.tol).extend(params.report)
    rep.add("two eigenvalue clusters", True, abs(m1 * rho1 + m2 * rho2))
    return s.set_report(rep)


def cmd_sic(s, args):
    if args.k < 2:
        raise UsageError("--k must be at least 2")
    mu, ok = sic_feasibility(args.k)
    s.say(f"k = {args.k}: mu = {mu:.4f}, {'feasible' if ok else 'infeasible'} (need |mu| <= 2)")
    s.extra["sic"] = {"k": args.k, "mu": mu, "feasible": ok}
    return s.set_report(VerificationReport("float", 0.0).add("|mu| <= 2", ok, max(0.0, abs(mu) - 2)))


def cmd_gow(s, args):
    H = _load_hadamard(s, args.inp, args.tol)
    sval, rep = gow_square_check(H, args.tol)
    s.say(f"n = {H.n}, s = {sval}")
    s.extra["s"] = sval
    return s.set_report(rep)


def cmd_params(s, args):
    try:
        c = free_param_count(args.n, args.m, "self_adjoint" if args.self_adjoint else "general")
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    s.say(str(c))
    s.extra["free_parameters"] = c
    return EXIT_OK


# --------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser():
    p = _Parser(prog="chmetf", description="Complex Hadamard matrices and equiangular tight frames.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, io_in=True, io_out=False, tol=True):
        if io_in:
            sp.add_argument("--in", dest="inp", default="-", metavar="FILE")
        if io_out:
            sp.add_argument("--out", default="-", metavar="FILE")
        if tol:
            sp.add_argument("--tol", type=float, default=DEFAULT_TOL)
        sp.add_argument("--report", metavar="FILE", help="write the machine-readable report here")

    c = sub.add_parser("construct").add_subparsers(dest="what", required=True, parser_class=_Parser)
    sp = c.add_parser("fourier")
    sp.add_argument("--n", type=int, required=True)
    common(sp, io_in=False, io_out=True, tol=False)
    sp = c.add_parser("paley")
    sp.add_argument("--q", type=int, required=True)
    common(sp, io_in=False, io_out=True, tol=False)
    sp = c.add_parser("catalog")
    sp.add_argument("--name", required=True)
    common(sp, io_in=False, io_out=True, tol=False)

    c = sub.add_parser("lift").add_subparsers(dest="what", required=True, parser_class=_Parser)
    sp = c.add_parser("block")
    common(sp, io_out=True)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--params", metavar="FILE")
    g.add_argument("--random-params", action="store_true")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--self-adjoint", action="store_true")

    sp = sub.add_parser("induce")
    common(sp, io_out=True, tol=False)
    sp.add_argument("--branch", choices=("plus", "minus"), required=True)
    sp.add_argument("--skew-selfadjoint", action="store_true")

    c = sub.add_parser("verify")
    c.add_argument("what", choices=("hadamard", "signature", "design"))
    common(c)

    c = sub.add_parser("frame").add_subparsers(dest="what", required=True, parser_class=_Parser)
    common(c.add_parser("analyze"))
    common(c.add_parser("vectors"), io_out=True)

    sp = sub.add_parser("sic")
    sp.add_argument("--k", type=int, required=True)
    common(sp, io_in=False, tol=False)

    sp = sub.add_parser("gow")
    common(sp)

    c = sub.add_parser("params").add_subparsers(dest="what", required=True, parser_class=_Parser)
    sp = c.add_parser("count")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, default=0)
    sp.add_argument("--self-adjoint", action="store_true")
    common(sp, io_in=False, tol=False)
    return p


COMMANDS = {
    "construct": cmd_construct,
    "lift": cmd_lift,
    "induce": cmd_induce,
    "verify": cmd_verify,
    "frame": cmd_frame,
    "sic": cmd_sic,
    "gow": cmd_gow,
    "params": cmd_params,
}


def main(argv=None, stdin=None, stdout=None, stderr=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    s = Session(argv, stdin or sys.stdin.buffer, stdout or sys.stdout, stderr or sys.stderr)
    args = None
    try:
        args = build_parser().parse_args(argv)
        status = COMMANDS[args.command](s, args)
    except (UsageError, MatrixFileError, OSError) as exc:
        s.log(f"error: {exc}")
        status = EXIT_USAGE
    except ChmError as exc:
        s.log(f"verification failed: {exc}")
        status = EXIT_FAIL
    except ValueError as exc:
        s.log(f"error: {exc}")
        status = EXIT_USAGE
    report = getattr(args, "report", None)
    if report:
        try:
            with open(report, "w") as fh:
                json.dump(s.report_dict(status), fh, indent=2)
        except OSError as exc:
            s.log(f"error: cannot write report: {exc}")
            status = EXIT_USAGE
    return status


def entry():  # console script
    sys.exit(main())
