"""Exact arithmetic over roots of unity.

A cyclotomic integer of order ``q`` is stored as its coefficient vector
``c`` over the powers ``zeta_q**0 .. zeta_q**(q-1)``. The representation
is not unique (``1 + w + w**2 == 0`` for ``q = 3``), so equality of values
is decided by reducing modulo the cyclotomic polynomial ``Phi_q``.

Polynomials are plain tuples of ints, lowest degree first.
"""

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import OrderMismatch

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1

UNIT_TOL = 1e-12


def _check_int64(values):
    for v in values:
        if not INT64_MIN <= v <= INT64_MAX:
            raise OverflowError(f"coefficient {v} does not fit in 64 bits")
    return values


def _trim(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return tuple(p)


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def poly_divmod(num, den):
    """Divide integer polynomials by a monic integer polynomial."""
    den = _trim(den)
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    rem = list(num)
    dd = len(den) - 1
    if len(rem) <= dd:
        return (0,), _trim(rem)
    quot = [0] * (len(rem) - dd)
    for i in range(len(rem) - 1, dd - 1, -1):
        c = rem[i]
        if c:
            quot[i - dd] = c
            for j in range(dd + 1):
                rem[i - dd + j] -= c * den[j]
    return _trim(quot), _trim(rem[:dd] or [0])


@lru_cache(maxsize=None)
def cyclotomic_poly(q: int) -> tuple:
    """Coefficients of the ``q``-th cyclotomic polynomial, lowest degree first.

    Computed as ``(x**q - 1)`` divided by ``Phi_d`` for every proper divisor
    ``d`` of ``q``.
    """
    if q < 1:
        raise ValueError(f"cyclotomic order must be positive, got {q}")
    num = tuple([-1] + [0] * (q - 1) + [1])
    for d in range(1, q):
        if q % d == 0:
            num, rem = poly_divmod(num, cyclotomic_poly(d))
            assert rem == (0,), "Phi_d must divide x^q - 1"
    return num


@lru_cache(maxsize=None)
def reduction_matrix(q: int) -> np.ndarray:
    """Row ``j`` holds the coefficients of ``x**j mod Phi_q``.

    Multiplying a coefficient vector by this matrix reduces it to the
    canonical basis ``1, x, ..., x**(phi(q)-1)``.
    """
    phi = cyclotomic_poly(q)
    deg = len(phi) - 1
    out = np.zeros((q, deg), dtype=np.int64)
    for j in range(q):
        _, rem = poly_divmod((0,) * j + (1,), phi)
        out[j, : len(rem)] = rem
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class RootOfUnity:
    order: int
    exponent: int

    def __post_init__(self):
        if self.order < 1:
            raise ValueError(f"order must be positive, got {self.order}")
        if not 0 <= self.exponent < self.order:
            raise ValueError(f"exponent {self.exponent} outside [0, {self.order})")

    def to_cyc(self):
        c = [0] * self.order
        c[self.exponent] = 1
        return CycInt(self.order, tuple(c))

    def __complex__(self):
        return root_to_complex(self)


@dataclass(frozen=True)
class CycInt:
    """``sum_j coeffs[j] * zeta_order**j`` with 64-bit integer coefficients."""

    order: int
    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        if len(coeffs) != self.order:
            raise ValueError(f"expected {self.order} coefficients, got {len(coeffs)}")
        _check_int64(coeffs)
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def zero(cls, q):
        return cls(q, (0,) * q)

    @classmethod
    def integer(cls, q, value):
        return cls(q, (value,) + (0,) * (q - 1))

    def __add__(self, other):
        return cyc_add(self, other)

    def __sub__(self, other):
        return cyc_add(self, -other)

    def __neg__(self):
        return CycInt(self.order, tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        return cyc_mul(self, other)

    def conjugate(self):
        q = self.order
        return CycInt(q, tuple(self.coeffs[(-j) % q] for j in range(q)))

    def reduced(self):
        """Canonical coefficients modulo ``Phi_order``."""
        return tuple(int(x) for x in np.asarray(self.coeffs, dtype=np.int64) @ reduction_matrix(self.order))

    def equals(self, other):
        """Exact equality of values (not of representations)."""
        return cyc_is_zero(self - other)

    def as_integer(self):
        """The value as an int if it is rational, else ``None``."""
        red = self.reduced()
        if all(c == 0 for c in red[1:]):
            return red[0] if red else 0
        return None

    def __complex__(self):
        return cyc_eval(self)


def _same_order(a, b):
    if a.order != b.order:
        raise OrderMismatch(f"orders differ: {a.order} vs {b.order}")


def cyc_add(a: CycInt, b: CycInt) -> CycInt:
    _same_order(a, b)
    return CycInt(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))


def cyc_mul(a: CycInt, b: CycInt) -> CycInt:
    """Cyclic convolution of the coefficient vectors (``zeta**q == 1``)."""
    _same_order(a, b)
    q = a.order
    out = [0] * q
    for i, x in enumerate(a.coeffs):
        if x:
            for j, y in enumerate(b.coeffs):
                if y:
                    out[(i + j) % q] += x * y
    return CycInt(q, tuple(_check_int64(out)))


def cyc_is_zero(a: CycInt) -> bool:
    """True iff the value is exactly zero, i.e. ``Phi_q`` divides the polynomial."""
    _, rem = poly_divmod(a.coeffs, cyclotomic_poly(a.order))
    return all(c == 0 for c in rem)


def root_to_complex(r: RootOfUnity) -> complex:
    q, e = r.order, r.exponent
    # quarter turns are returned exactly
    if (4 * e) % q == 0:
        return (1, 1j, -1, -1j)[(4 * e) // q]
    t = 2.0 * math.pi * e / q
    return complex(math.cos(t), math.sin(t))


@lru_cache(maxsize=None)
def root_table(q: int) -> np.ndarray:
    """``zeta_q**e`` for ``e = 0..q-1`` as complex128."""
    tab = np.array([root_to_complex(RootOfUnity(q, e)) for e in range(q)], dtype=np.complex128)
    tab.setflags(write=False)
    return tab


def cyc_eval(a: CycInt) -> complex:
    return complex(np.dot(np.asarray(a.coeffs, dtype=np.float64), root_table(a.order)))


@dataclass(frozen=True)
class UnitComplex:
    re: float
    im: float

    def __post_init__(self):
        if abs(self.re * self.re + self.im * self.im - 1.0) > UNIT_TOL:
            raise ValueError(f"{complex(self.re, self.im)} is not unimodular")

    @classmethod
    def from_complex(cls, z):
        z = complex(z)
        return cls(z.real, z.imag)

    @classmethod
    def from_angle(cls, theta):
        z = cmath.exp(1j * theta)
        return cls(z.real, z.imag)

    def __complex__(self):
        return complex(self.re, self.im)

    def conjugate(self):
        return UnitComplex(self.re, -self.im)
