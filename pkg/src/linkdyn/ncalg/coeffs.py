"""Coefficient ring for the rewriting engine.

An element is a polynomial in named parameters (lam12, mu1, ...) whose
coefficients live in Z[q]/Phi_p(q) for a prime p, or in the Laurent ring
Z[q, q^-1] when p is None.  Everything is exact integer arithmetic; the
cyclotomic quotient makes cancellations like (1-q)(1+q+...+q^(p-1)) = 0
exact, which the skew-primitivity certificates rely on.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..qcalc import QPoly


def _phi_reduce(vec: list[int], p: int) -> tuple[int, ...]:
    """Reduce a coefficient list (index = q-exponent) mod Phi_p into length p-1."""
    out = [0] * p
    for e, c in enumerate(vec):
        if c:
            out[e % p] += c
    top = out[p - 1]
    if top:
        for i in range(p - 1):
            out[i] -= top
    return tuple(out[: p - 1])


@dataclass(frozen=True)
class CoeffRing:
    params: tuple[str, ...]
    p: int | None = None  # None: Laurent Z[q, q^-1]; else Z[q]/Phi_p

    # -- q-part helpers (qpart is a tuple: dense mod Phi_p, or sorted
    #    ((exp, coeff), ...) pairs in the Laurent case) -------------------

    def q_zero(self):
        return tuple([0] * (self.p - 1)) if self.p else ()

    def q_int(self, n: int):
        if self.p:
            vec = [0] * (self.p - 1)
            vec[0] = n
            return tuple(vec)
        return ((0, n),) if n else ()

    def q_power(self, e: int, c: int = 1):
        if self.p:
            return _phi_reduce([0] * (e % self.p) + [c], self.p)
        return ((e, c),) if c else ()

    def q_add(self, a, b):
        if self.p:
            return tuple(x + y for x, y in zip(a, b))
        d = dict(a)
        for e, c in b:
            d[e] = d.get(e, 0) + c
        return tuple(sorted((e, c) for e, c in d.items() if c))

    def q_neg(self, a):
        if self.p:
            return tuple(-x for x in a)
        return tuple((e, -c) for e, c in a)

    def q_mul(self, a, b):
        if self.p:
            p = self.p
            vec = [0] * (2 * p - 3 if p > 1 else 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        if y:
                            vec[i + j] += x * y
            return _phi_reduce(vec, p)
        d = {}
        for e1, c1 in a:
            for e2, c2 in b:
                d[e1 + e2] = d.get(e1 + e2, 0) + c1 * c2
        return tuple(sorted((e, c) for e, c in d.items() if c))

    def q_is_zero(self, a) -> bool:
        return not any(a) if self.p else not a

    def q_from_poly(self, f: QPoly):
        """Image of an integer polynomial in q."""
        if self.p:
            return _phi_reduce(list(f.coeffs), self.p)
        return tuple((e, c) for e, c in enumerate(f.coeffs) if c)

    # -- elements -------------------------------------------------------

    def zero(self) -> "Coeff":
        return Coeff(self, {})

    def one(self) -> "Coeff":
        return self.from_int(1)

    def from_int(self, n: int) -> "Coeff":
        if n == 0:
            return self.zero()
        return Coeff(self, {(0,) * len(self.params): self.q_int(n)})

    def q(self, e: int, c: int = 1) -> "Coeff":
        """c * q^e as an element."""
        if c == 0:
            return self.zero()
        return Coeff(self, {(0,) * len(self.params): self.q_power(e, c)})

    def poly(self, f: QPoly) -> "Coeff":
        qq = self.q_from_poly(f)
        if self.q_is_zero(qq):
            return self.zero()
        return Coeff(self, {(0,) * len(self.params): qq})

    def param(self, name: str, power: int = 1) -> "Coeff":
        i = self.params.index(name)
        exps = tuple(power if k == i else 0 for k in range(len(self.params)))
        return Coeff(self, {exps: self.q_int(1)})

    def invert_unit(self, c: "Coeff") -> "Coeff":
        """Inverse of a parameter-free coefficient that is a unit of Z[q]/Phi_p.

        Solved exactly over Q and checked for integrality; raises for
        non-units, parameters, or the Laurent ring.
        """
        from fractions import Fraction

        if self.p is None:
            raise ValueError("unit inversion implemented for cyclotomic rings only")
        if len(c.terms) != 1:
            raise ValueError(f"cannot invert {c}")
        (pk, qv), = c.terms.items()
        if any(pk):
            raise ValueError("cannot invert a parameter-carrying coefficient")
        n = self.p - 1
        cols = [self.q_mul(qv, self.q_power(j)) for j in range(n)]
        mat = [[Fraction(cols[j][i]) for j in range(n)]
               + [Fraction(1) if i == 0 else Fraction(0)] for i in range(n)]
        for col in range(n):
            piv = next((r for r in range(col, n) if mat[r][col]), None)
            if piv is None:
                raise ValueError(f"{c} is not invertible")
            mat[col], mat[piv] = mat[piv], mat[col]
            inv = 1 / mat[col][col]
            mat[col] = [x * inv for x in mat[col]]
            for r in range(n):
                if r != col and mat[r][col]:
                    f = mat[r][col]
                    mat[r] = [x - f * y for x, y in zip(mat[r], mat[col])]
        vec = [mat[i][n] for i in range(n)]
        if any(x.denominator != 1 for x in vec):
            raise ValueError(f"{c} is not a unit of Z[q]/Phi_p")
        return Coeff(self, {pk: tuple(int(x) for x in vec)})


class Coeff:
    """Immutable in practice; ``terms`` maps param-exponent tuples to q-parts."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: CoeffRing, terms: dict):
        self.ring = ring
        self.terms = terms

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "Coeff") -> "Coeff":
        r = self.ring
        out = dict(self.terms)
        for k, v in other.terms.items():
            if k in out:
                s = r.q_add(out[k], v)
                if r.q_is_zero(s):
                    del out[k]
                else:
                    out[k] = s
            else:
                out[k] = v
        return Coeff(r, out)

    def __neg__(self) -> "Coeff":
        r = self.ring
        return Coeff(r, {k: r.q_neg(v) for k, v in self.terms.items()})

    def __sub__(self, other: "Coeff") -> "Coeff":
        return self + (-other)

    def __mul__(self, other: "Coeff") -> "Coeff":
        r = self.ring
        out: dict = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                prod = r.q_mul(v1, v2)
                if k in out:
                    s = r.q_add(out[k], prod)
                    if r.q_is_zero(s):
                        del out[k]
                    else:
                        out[k] = s
                elif not r.q_is_zero(prod):
                    out[k] = prod
        return Coeff(r, out)

    def q_shift(self, e: int) -> "Coeff":
        """Multiply by q^e (fast path used by group passage)."""
        if e == 0 or self.is_zero():
            return self
        r = self.ring
        qq = r.q_power(e)
        return Coeff(r, {k: r.q_mul(v, qq) for k, v in self.terms.items()})

    def scale_int(self, n: int) -> "Coeff":
        if n == 1:
            return self
        if n == 0:
            return self.ring.zero()
        r = self.ring
        out = {}
        for k, v in self.terms.items():
            if r.p:
                out[k] = tuple(x * n for x in v)
            else:
                out[k] = tuple((e, c * n) for e, c in v)
        return Coeff(r, out)

    def substitute(self, values: dict[str, int]) -> "Coeff":
        """Specialize parameters to integers (others untouched)."""
        r = self.ring
        idx = {name: r.params.index(name) for name in values}
        out = r.zero()
        for k, v in self.terms.items():
            factor = 1
            newk = list(k)
            for name, val in values.items():
                i = idx[name]
                factor *= val ** k[i]
                newk[i] = 0
            piece = Coeff(r, {tuple(newk): v}).scale_int(factor)
            out = out + piece
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Coeff) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def _q_str(self, v) -> str:
        r = self.ring
        if r.p:
            parts = []
            for e, c in enumerate(v):
                if c:
                    t = "1" if e == 0 else ("q" if e == 1 else f"q^{e}")
                    parts.append(t if c == 1 and e else (str(c) if e == 0 else f"{c}{t}"))
            return "+".join(parts).replace("+-", "-") or "0"
        return "+".join(
            (f"{c}" if e == 0 else (f"q^{e}" if c == 1 else f"{c}q^{e}")) for e, c in v
        ).replace("+-", "-") or "0"

    def __repr__(self):
        if self.is_zero():
            return "0"
        bits = []
        for k, v in sorted(self.terms.items()):
            mono = "*".join(
                f"{n}" + (f"^{e}" if e > 1 else "")
                for n, e in zip(self.ring.params, k) if e
            )
            qs = self._q_str(v)
            bits.append(f"({qs})" + (f"*{mono}" if mono else ""))
        return " + ".join(bits)
