"""Exact q-arithmetic: integer polynomials in q, q-binomials, cyclotomic quotients.

A polynomial is held as a dense tuple of integer coefficients starting with
the constant term, so QPoly(1, 0, 1) is 1 + q^2.  Everything is exact; no
floating point root of unity appears anywhere.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import RangeError


@dataclass(init=False, eq=True, frozen=True)
class QPoly:
    coeffs: tuple[int, ...]

    def __init__(self, *coeffs: int):
        end = len(coeffs)
        while end >= 1 and coeffs[end - 1] == 0:
            end -= 1
        object.__setattr__(self, "coeffs", tuple(coeffs[:end]))

    @staticmethod
    def from_coeffs(seq) -> QPoly:
        return QPoly(*seq)

    def deg(self) -> int:
        """Degree of the leading term; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: int | QPoly) -> QPoly:
        other = _aspoly(other)
        return QPoly(*(a + b for a, b in itertools.zip_longest(self.coeffs, other.coeffs, fillvalue=0)))

    def __sub__(self, other: int | QPoly) -> QPoly:
        other = _aspoly(other)
        return QPoly(*(a - b for a, b in itertools.zip_longest(self.coeffs, other.coeffs, fillvalue=0)))

    def __neg__(self) -> QPoly:
        return QPoly(*(-a for a in self.coeffs))

    def __mul__(self, other: int | QPoly) -> QPoly:
        if isinstance(other, int):
            return QPoly(*(a * other for a in self.coeffs))
        out = [0] * (len(self.coeffs) + len(other.coeffs))
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return QPoly(*out)

    __radd__ = __add__
    __rmul__ = __mul__

    def __pow__(self, n: int) -> QPoly:
        if n < 0:
            raise RangeError("negative power of a polynomial")
        result = QPoly(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: QPoly) -> tuple[QPoly, QPoly]:
        """Quotient and remainder; the divisor must be monic."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if other.coeffs[-1] not in (1, -1):
            raise RangeError("division only implemented for monic divisors (up to sign)")
        lead = other.coeffs[-1]
        rem = list(self.coeffs)
        dd, dn = len(rem) - 1, other.deg()
        quot = [0] * max(dd - dn + 1, 0)
        for i in range(dd - dn, -1, -1):
            c = rem[i + dn]
            if c == 0:
                continue
            c *= lead  # lead is +-1, so this is exact division
            quot[i] = c
            for j, b in enumerate(other.coeffs):
                rem[i + j] -= c * b
        return QPoly(*quot), QPoly(*rem)

    def __mod__(self, other: QPoly) -> QPoly:
        return divmod(self, other)[1]

    def evaluate(self, x):
        """Evaluate at x (int, Fraction, QPoly, ...)."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self):
        if not self.coeffs:
            return "QPoly(0)"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            term = "1" if i == 0 else ("q" if i == 1 else f"q^{i}")
            if i > 0 and abs(c) == 1:
                parts.append(("-" if c < 0 else "") + term)
            elif i == 0:
                parts.append(str(c))
            else:
                parts.append(f"{c}*{term}")
        return "QPoly(" + " + ".join(parts).replace("+ -", "- ") + ")"


ZERO = QPoly()
ONE = QPoly(1)
Q = QPoly(0, 1)


def _aspoly(x: int | QPoly) -> QPoly:
    return x if isinstance(x, QPoly) else QPoly(x)


def q_power(n: int) -> QPoly:
    if n < 0:
        raise RangeError("q_power needs n >= 0; reduce mod a cyclotomic first")
    return QPoly(*([0] * n + [1]))


def q_number(n: int) -> QPoly:
    """(n)_q = 1 + q + ... + q^(n-1)."""
    if n < 0:
        raise RangeError("q-number of a negative integer")
    return QPoly(*([1] * n))


def q_factorial(n: int) -> QPoly:
    if n < 0:
        raise RangeError("q-factorial of a negative integer")
    out = ONE
    for k in range(2, n + 1):
        out = out * q_number(k)
    return out


def q_binomial(n: int, i: int) -> QPoly:
    """Gaussian binomial coefficient as an integer polynomial in q.

    Computed by the Pascal recursion binom(n,i) = binom(n-1,i-1) + q^i*binom(n-1,i),
    which stays inside Z[q] at every step.
    """
    if not 0 <= i <= n:
        raise RangeError(f"q_binomial({n}, {i}) out of range")
    row = [ONE]
    for m in range(1, n + 1):
        new = [ONE]
        for k in range(1, m):
            new.append(row[k - 1] + q_power(k) * row[k])
        new.append(ONE)
        row = new
    return row[i]


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> QPoly:
    """The n-th cyclotomic polynomial, by exact division of q^n - 1."""
    if n < 1:
        raise RangeError("cyclotomic index must be >= 1")
    num = q_power(n) - ONE
    for d in range(1, n):
        if n % d == 0:
            q_, r = divmod(num, cyclotomic(d))
            assert r.is_zero()
            num = q_
    return num


@dataclass(frozen=True)
class CycloModulus:
    """Quotient modulus: either Phi_n(q) (phi=True) or q^n - 1 (phi=False)."""

    n: int
    phi: bool = True

    @property
    def poly(self) -> QPoly:
        return cyclotomic(self.n) if self.phi else q_power(self.n) - ONE


@dataclass(frozen=True)
class CycloElem:
    """An element of Z[q]/modulus, held as the reduced representative."""

    modulus: CycloModulus
    rep: QPoly

    @staticmethod
    def of(f: QPoly, modulus: CycloModulus) -> CycloElem:
        return CycloElem(modulus, f % modulus.poly)

    def is_zero(self) -> bool:
        return self.rep.is_zero()

    def _check(self, other: CycloElem):
        if other.modulus != self.modulus:
            raise RangeError("mixed cyclotomic moduli")

    def __add__(self, other: CycloElem) -> CycloElem:
        self._check(other)
        return CycloElem.of(self.rep + other.rep, self.modulus)

    def __sub__(self, other: CycloElem) -> CycloElem:
        self._check(other)
        return CycloElem.of(self.rep - other.rep, self.modulus)

    def __mul__(self, other: CycloElem | int | QPoly) -> CycloElem:
        if isinstance(other, CycloElem):
            self._check(other)
            return CycloElem.of(self.rep * other.rep, self.modulus)
        return CycloElem.of(self.rep * _aspoly(other), self.modulus)

    __rmul__ = __mul__


def reduce_mod_cyclotomic(f: QPoly, n: int, phi: bool = True) -> CycloElem:
    """Reduce f modulo Phi_n(q) (default) or modulo q^n - 1."""
    return CycloElem.of(f, CycloModulus(n, phi))
