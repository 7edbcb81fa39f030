"""PBW presentations of the A_n algebras U(D) at lambda = 0.

Generators are the root vectors E_{i,j} (intervals 1 <= i < j <= n+1, built
by the inductive braided-commutator definition), ordered lexicographically.
The straightening rule for each descending product E_{s,t} E_{i,j} is found
by exact linear algebra over Q(zeta_p): the product is expanded into the
free algebra on the x-letters and expressed in the PBW monomials modulo the
quantum Serre ideal at its multidegree.  Uniqueness of the expression is the
PBW theorem; local confluence of the derived system is certified separately.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement

from ..errors import ValidationError
from .coeffs import CoeffRing
from .engine import El, Presentation, Tensor
from .presentations import GroupSpec

# -- tiny exact field Q[q]/Phi_p ---------------------------------------------


class CycField:
    """Q(zeta_p): vectors of Fractions on the basis 1, q, ..., q^(p-2)."""

    def __init__(self, p: int):
        self.p = p
        self.dim = p - 1

    def zero(self):
        return (Fraction(0),) * self.dim

    def one(self):
        return self.from_qexp(0)

    def from_qexp(self, e: int, c=1):
        e %= self.p
        vec = [Fraction(0)] * self.dim
        if e == self.p - 1:
            for i in range(self.dim):
                vec[i] -= c
        else:
            vec[e] += c
        return tuple(vec)

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def scale(self, a, c):
        return tuple(x * c for x in a)

    def mul(self, a, b):
        p = self.p
        vec = [Fraction(0)] * (2 * p - 3)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        vec[i + j] += x * y
        out = [Fraction(0)] * p
        for e, c in enumerate(vec):
            if c:
                out[e % p] += c
        top = out[p - 1]
        if top:
            for i in range(p - 1):
                out[i] -= top
        return tuple(out[: p - 1])

    def is_zero(self, a) -> bool:
        return not any(a)

    def inv(self, a):
        """Solve a*x = 1 by Gaussian elimination on the multiplication matrix."""
        n = self.dim
        cols = [self.mul(a, self.from_qexp(j)) for j in range(n)]
        mat = [[cols[j][i] for j in range(n)] + [Fraction(1) if i == 0 else Fraction(0)]
               for i in range(n)]
        for col in range(n):
            piv = next((r for r in range(col, n) if mat[r][col]), None)
            if piv is None:
                raise ZeroDivisionError("non-invertible element of Q(zeta_p)")
            mat[col], mat[piv] = mat[piv], mat[col]
            inv = 1 / mat[col][col]
            mat[col] = [x * inv for x in mat[col]]
            for r in range(n):
                if r != col and mat[r][col]:
                    f = mat[r][col]
                    mat[r] = [x - f * y for x, y in zip(mat[r], mat[col])]
        return tuple(mat[i][n] for i in range(n))


# -- free-algebra elements: dict word -> field vector ---------------------------


def _fadd(F, a: dict, b: dict) -> dict:
    out = dict(a)
    for w, c in b.items():
        s = F.add(out.get(w, F.zero()), c)
        if F.is_zero(s):
            out.pop(w, None)
        else:
            out[w] = s
    return out


def _fscale(F, a: dict, c) -> dict:
    return {w: F.mul(v, c) for w, v in a.items()} if not F.is_zero(c) else {}


def _fmul(F, a: dict, b: dict) -> dict:
    out: dict = {}
    for w1, c1 in a.items():
        for w2, c2 in b.items():
            w = w1 + w2
            s = F.add(out.get(w, F.zero()), F.mul(c1, c2))
            if F.is_zero(s):
                out.pop(w, None)
            else:
                out[w] = s
    return out


class AnData:
    """Braiding exponents and root-vector expansions for one A_n instance."""

    def __init__(self, n: int, exponents, p: int):
        self.n = n
        self.p = p
        self.E = [list(row) for row in exponents]
        self.F = CycField(p)
        for i in range(n):
            for j in range(n):
                a = -1 if abs(i - j) == 1 else (2 if i == j else 0)
                if (self.E[i][j] + self.E[j][i] - a * self.E[i][i]) % p != 0:
                    raise ValidationError("exponent matrix is not of A_n Cartan type")
        self.intervals = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 2)]
        self.intervals.sort()
        self._expansion: dict[tuple[int, int], dict] = {}

    def b_exp(self, i: int, j: int, s: int, t: int) -> int:
        """q-exponent of B^{i,j}_{s,t} = prod q_{l,h} over [i,j) x [s,t)."""
        return sum(self.E[l - 1][h - 1] for l in range(i, j) for h in range(s, t))

    def expansion(self, iv: tuple[int, int]) -> dict:
        """Free-algebra expansion of E_iv over the x-letters (0-based)."""
        if iv in self._expansion:
            return self._expansion[iv]
        F = self.F
        i, j = iv
        if j == i + 1:
            out = {(i - 1,): F.one()}
        else:
            left = self.expansion((i, j - 1))
            right = self.expansion((j - 1, j))
            coef = F.from_qexp(self.b_exp(i, j - 1, j - 1, j))
            out = _fadd(F, _fmul(F, left, right),
                        _fscale(F, _fmul(F, right, left), F.neg(coef)))
        self._expansion[iv] = out
        return out

    def serre_relations(self) -> list[dict]:
        """Free-algebra generators of the lambda = 0 ideal."""
        F = self.F
        out = []
        q0 = self.E[0][0]  # common diagonal exponent
        for i in range(1, self.n + 1):
            for j in range(1, self.n + 1):
                if i == j:
                    continue
                bij = self.E[i - 1][j - 1]
                if abs(i - j) == 1:
                    xi, xj = i - 1, j - 1
                    rel = {(xi, xi, xj): F.one()}
                    c1 = F.add(F.from_qexp(bij), F.from_qexp(q0 + bij))
                    rel = _fadd(F, rel, {(xi, xj, xi): F.neg(c1)})
                    rel = _fadd(F, rel, {(xj, xi, xi): F.from_qexp(q0 + 2 * bij)})
                    out.append(rel)
                elif i < j:
                    rel = {(i - 1, j - 1): F.one(),
                           (j - 1, i - 1): F.neg(F.from_qexp(bij))}
                    out.append(rel)
        return out


def _multidegree(word, n):
    d = [0] * n
    for x in word:
        d[x] += 1
    return tuple(d)


def _words_of_degree(deg) -> list[tuple[int, ...]]:
    letters = []
    for x, m in enumerate(deg):
        letters.extend([x] * m)
    out = set()

    def rec(remaining, acc):
        if not remaining:
            out.add(tuple(acc))
            return
        seen = set()
        for k, x in enumerate(remaining):
            if x in seen:
                continue
            seen.add(x)
            rec(remaining[:k] + remaining[k + 1:], acc + [x])

    rec(letters, [])
    return sorted(out)


def _pbw_monomials(data: AnData, deg) -> list[tuple]:
    """Ascending interval-words of the given multidegree."""
    ivs = data.intervals
    out = []

    def rec(start, remaining, acc):
        if not any(remaining):
            out.append(tuple(acc))
            return
        for k in range(start, len(ivs)):
            i, j = ivs[k]
            ok = all(remaining[l - 1] >= 1 for l in range(i, j))
            if not ok:
                continue
            new = list(remaining)
            for l in range(i, j):
                new[l - 1] -= 1
            acc.append((i, j))
            rec(k, new, acc)
            acc.pop()

    rec(0, list(deg), [])
    return out


def _solve_structure(data: AnData, target: dict, deg) -> dict[tuple, tuple]:
    """Express target = sum c_M * (PBW monomial M) modulo the Serre ideal."""
    F = data.F
    words = _words_of_degree(deg)
    w_index = {w: k for k, w in enumerate(words)}
    pbw = _pbw_monomials(data, deg)
    columns = []
    for mono in pbw:
        el = {(): F.one()}
        for iv in mono:
            el = _fmul(F, el, data.expansion(iv))
        columns.append(el)
    # ideal spanners u * rel * v at this multidegree
    rels = data.serre_relations()
    spanners = []
    for rel in rels:
        rdeg = _multidegree(next(iter(rel)), data.n)
        rem = [deg[k] - rdeg[k] for k in range(data.n)]
        if any(x < 0 for x in rem):
            continue
        for left_deg in _sub_degrees(rem):
            right_deg = tuple(rem[k] - left_deg[k] for k in range(data.n))
            for u in _words_of_degree(left_deg):
                for v in _words_of_degree(right_deg):
                    sp = {u + w + v: c for w, c in rel.items()}
                    spanners.append(sp)
    ncols = len(pbw) + len(spanners)
    rows = len(words)
    mat = [[F.zero()] * (ncols + 1) for _ in range(rows)]
    for cidx, col in enumerate(columns + spanners):
        for w, c in col.items():
            mat[w_index[w]][cidx] = c
    for w, c in target.items():
        mat[w_index[w]][ncols] = c
    sol = _field_solve(F, mat, ncols)
    if sol is None:
        raise ValidationError("structure-constant system is inconsistent")
    return {pbw[k]: sol[k] for k in range(len(pbw)) if not F.is_zero(sol[k])}


def _sub_degrees(rem):
    ranges = [range(r + 1) for r in rem]
    out = [()]
    for rg in ranges:
        out = [t + (x,) for t in out for x in rg]
    return out


def _field_solve(F, mat, ncols):
    rows = len(mat)
    piv_of_col = {}
    r = 0
    for c in range(ncols):
        piv = next((k for k in range(r, rows) if not F.is_zero(mat[k][c])), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = F.inv(mat[r][c])
        mat[r] = [F.mul(x, inv) for x in mat[r]]
        for k in range(rows):
            if k != r and not F.is_zero(mat[k][c]):
                f = mat[k][c]
                mat[k] = [F.add(x, F.neg(F.mul(f, y))) for x, y in zip(mat[k], mat[r])]
        piv_of_col[c] = r
        r += 1
        if r == rows:
            break
    # consistency: rows with zero in all columns must have zero rhs
    for k in range(rows):
        if all(F.is_zero(mat[k][c]) for c in range(ncols)) and not F.is_zero(mat[k][ncols]):
            return None
    sol = [F.zero()] * ncols
    for c, rr in piv_of_col.items():
        sol[c] = mat[rr][ncols]
    return sol


def an_pbw_presentation(n: int, exponents, p: int, spec: GroupSpec | None = None,
                        budget: int | None = None) -> Presentation:
    """Root-vector presentation of U(D) for A_n (lambda = 0), n <= 3.

    Generators e_{i,j} in lexicographic order; every descending pair gets the
    straightening rule the PBW theorem dictates, derived by exact linear
    algebra over Q(zeta_p).
    """
    if n > 3:
        raise ValidationError("the PBW structure solver is sized for n <= 3")
    data = AnData(n, exponents, p)
    names = tuple(f"e{i}{j}" for (i, j) in data.intervals)
    weights = tuple(j - i for (i, j) in data.intervals)
    mdeg = tuple(tuple(1 if i <= l < j else 0 for l in range(1, n + 1))
                 for (i, j) in data.intervals)
    if spec is None:
        spec = GroupSpec((), (), ((),) * n, ())
    ring = CoeffRing((), p)
    chi_rows = []
    for row in spec.chi:
        chi_rows.append(tuple(sum(row[l] * d for l, d in enumerate(dv)) for dv in mdeg))
    P = Presentation(
        name=f"A{n}-pbw",
        gens=names,
        weights=weights,
        ring=ring,
        grp_names=spec.names,
        grp_orders=spec.orders,
        chi=tuple(chi_rows),
        multidegree=mdeg,
        braid_exponents=tuple(tuple(r) for r in data.E),
    )
    if budget:
        P.budget = budget
    F = data.F
    idx = {iv: k for k, iv in enumerate(data.intervals)}
    for a_pos, A in enumerate(data.intervals):
        for b_pos, B in enumerate(data.intervals):
            if b_pos >= a_pos:
                continue  # only descending pairs (A > B)
            target = _fmul(F, data.expansion(A), data.expansion(B))
            deg = tuple(x + y for x, y in zip(
                _multidegree(next(iter(data.expansion(A))), n),
                _multidegree(next(iter(data.expansion(B))), n)))
            combo = _solve_structure(data, target, deg)
            rhs = P.el({})
            for mono, cvec in combo.items():
                coeff = _field_to_ring(ring, cvec, p)
                word = tuple(idx[iv] for iv in mono)
                rhs = rhs + P.word_el(word, coeff)
            P.add_rule((idx[A], idx[B]), rhs, normalize=False)
    return P


def _field_to_ring(ring: CoeffRing, vec, p: int):
    ints = []
    for x in vec:
        if x.denominator != 1:
            raise ValidationError("non-integral PBW structure constant")
        ints.append(int(x))
    out = ring.zero()
    for e, c in enumerate(ints):
        if c:
            out = out + ring.q(e, c)
    return out


def build_root_vectors_an(n: int, exponents, p: int | None = None) -> dict[tuple[int, int], El]:
    """The n(n+1)/2 root vectors as elements of the free x-letter algebra."""
    ring = CoeffRing((), p)
    P = Presentation(
        name=f"A{n}-free",
        gens=tuple(f"x{i}" for i in range(1, n + 1)),
        weights=(1,) * n,
        ring=ring,
        multidegree=tuple(tuple(1 if k == i else 0 for k in range(n)) for i in range(n)),
        braid_exponents=tuple(tuple(row) for row in exponents),
    )
    out: dict[tuple[int, int], El] = {}
    for i in range(1, n + 1):
        out[(i, i + 1)] = P.gen(f"x{i}")
    for span in range(2, n + 1):
        for i in range(1, n + 2 - span):
            j = i + span
            left, right = out[(i, j - 1)], out[(j - 1, j)]
            bexp = sum(exponents[l - 1][j - 2] for l in range(i, j - 1))
            out[(i, j)] = (left * right) - (right * left).scale_q(bexp)
    return out


def crucial_commutation_residual(P: Presentation, data_exponents, n: int, N: int,
                                 iv1: tuple[int, int], iv2: tuple[int, int]) -> El:
    """e_{i,j} e_{s,t}^N - chi_{s,t}^N(g_{i,j}) e_{s,t}^N e_{i,j}, reduced."""
    intervals = sorted((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 2))
    idx = {iv: k for k, iv in enumerate(intervals)}
    a = P.word_el((idx[iv1],))
    b = P.word_el((idx[iv2],) * N)
    (i, j), (s, t) = iv1, iv2
    chi_exp = N * sum(data_exponents[l - 1][h - 1]
                      for l in range(i, j) for h in range(s, t))
    return ((a * b) - (b * a).scale_q(chi_exp)).normal_form()
