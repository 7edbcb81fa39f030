"""Noncommutative rewriting engine over parameterized cyclotomic coefficients.

Monomials are (word, group) pairs: ``word`` is a tuple of generator indices,
``group`` an exponent vector over declared abelian group generators, kept to
the right of the word (group generators q-commute past letters through the
character table).  Rules rewrite a fixed LHS word into an element; every rule
must strictly decrease the (weight, lex) monomial order, which makes
reduction terminate; local confluence is certified separately through the
overlap/inclusion ambiguity check (diamond lemma).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import BudgetExceededError, NonTerminatingError, ValidationError
from .coeffs import Coeff, CoeffRing

Word = tuple[int, ...]
Grp = tuple[int, ...]
Mono = tuple[Word, Grp]

DEFAULT_REDUCTION_BUDGET = 10**7


@dataclass
class Presentation:
    """Generators, group data, oriented rewrite rules and coproducts."""

    name: str
    gens: tuple[str, ...]  # index order = precedence, smallest first
    weights: tuple[int, ...]
    ring: CoeffRing
    grp_names: tuple[str, ...] = ()
    grp_orders: tuple[int, ...] = ()  # 0 = infinite order
    chi: tuple[tuple[int, ...], ...] = ()  # chi[k][g]: h_k x_g = q^chi[k][g] x_g h_k
    multidegree: tuple[tuple[int, ...], ...] = ()  # per generator, for brackets
    braid_exponents: tuple[tuple[int, ...], ...] = ()  # q-exponents on simple degrees
    budget: int = DEFAULT_REDUCTION_BUDGET

    def __post_init__(self):
        self.rules: dict[Word, "El"] = {}
        self._rules_by_first: dict[int, list[Word]] = {}
        self.coproducts: dict[int, "Tensor"] = {}
        self._nf_cache: dict[Word, dict[Mono, Coeff]] = {}
        self._spent = 0
        if not self.grp_names:
            self.grp_names = tuple()
        if len(self.grp_orders) != len(self.grp_names):
            raise ValidationError("group orders/names length mismatch")
        if self.chi and len(self.chi) != len(self.grp_names):
            raise ValidationError("character table must have one row per group generator")

    # -- bookkeeping ------------------------------------------------------

    def gen_index(self, name: str) -> int:
        return self.gens.index(name)

    def order_key(self, word: Word):
        return (sum(self.weights[g] for g in word), word)

    def reduce_grp(self, grp: Grp) -> Grp:
        if not self.grp_orders:
            return grp
        return tuple(e % o if o else e for e, o in zip(grp, self.grp_orders))

    def chi_pass(self, grp: Grp, word: Word) -> int:
        """q-exponent picked up when the group monomial moves right past word."""
        if not grp or not word:
            return 0
        total = 0
        for k, e in enumerate(grp):
            if e:
                row = self.chi[k]
                total += e * sum(row[g] for g in word)
        return total

    def charge(self, n: int = 1):
        self._spent += n
        if self._spent > self.budget:
            raise NonTerminatingError(
                f"reduction budget {self.budget} exhausted in presentation {self.name}")

    def reset_budget(self, budget: int | None = None):
        self._spent = 0
        if budget is not None:
            self.budget = budget

    def specialize(self, values: dict[str, int]) -> "Presentation":
        """Copy with parameters substituted in every rule and coproduct."""
        Q = Presentation(
            name=f"{self.name}[{','.join(f'{k}={v}' for k, v in sorted(values.items()))}]",
            gens=self.gens, weights=self.weights, ring=self.ring,
            grp_names=self.grp_names, grp_orders=self.grp_orders, chi=self.chi,
            multidegree=self.multidegree, braid_exponents=self.braid_exponents,
            budget=self.budget,
        )
        for lhs, rhs in self.rules.items():
            Q.add_rule(lhs, El(Q, rhs.substitute(values).terms), normalize=False)
        for g, t in self.coproducts.items():
            terms = {}
            for m, c in t.terms.items():
                c2 = c.substitute(values)
                if not c2.is_zero():
                    terms[m] = c2
            Q.coproducts[g] = Tensor(Q, terms)
        return Q

    # -- element constructors ----------------------------------------------

    def zero_grp(self) -> Grp:
        return (0,) * len(self.grp_names)

    def el(self, terms: dict[Mono, Coeff] | None = None) -> "El":
        return El(self, dict(terms or {}))

    def one(self) -> "El":
        return self.el({((), self.zero_grp()): self.ring.one()})

    def gen(self, name: str, coeff: Coeff | None = None) -> "El":
        g = self.gen_index(name)
        return self.el({((g,), self.zero_grp()): coeff or self.ring.one()})

    def word_el(self, word: Word, coeff: Coeff | None = None, grp: Grp | None = None) -> "El":
        return self.el({(tuple(word), self.reduce_grp(grp or self.zero_grp())):
                        coeff or self.ring.one()})

    def grp_el(self, exps: dict[str, int] | Grp, coeff: Coeff | None = None) -> "El":
        if isinstance(exps, dict):
            vec = [0] * len(self.grp_names)
            for n, e in exps.items():
                vec[self.grp_names.index(n)] = e
            exps = tuple(vec)
        return self.el({((), self.reduce_grp(tuple(exps))): coeff or self.ring.one()})

    # -- rules ---------------------------------------------------------------

    def add_rule(self, lhs: Word, rhs: "El", normalize: bool = True):
        lhs = tuple(lhs)
        if lhs in self.rules:
            raise ValidationError(f"duplicate rule LHS {self.word_str(lhs)}")
        if normalize:
            rhs = rhs.normal_form()
        key = self.order_key(lhs)
        for (w, g) in rhs.terms:
            if not self.order_key(w) < key:
                raise ValidationError(
                    f"rule {self.word_str(lhs)} -> ... does not decrease the order "
                    f"(offending monomial {self.word_str(w)})")
        self.rules[lhs] = rhs
        self._rules_by_first.setdefault(lhs[0], []).append(lhs)
        self._rules_by_first[lhs[0]].sort(key=lambda w: (len(w), w))
        self._nf_cache.clear()

    def first_reduction(self, word: Word):
        """Leftmost reducible position: (pos, lhs) or None."""
        n = len(word)
        for pos in range(n):
            cands = self._rules_by_first.get(word[pos])
            if not cands:
                continue
            for lhs in cands:
                if word[pos:pos + len(lhs)] == lhs:
                    return pos, lhs
        return None

    def is_normal_word(self, word: Word) -> bool:
        return self.first_reduction(word) is None

    # -- word-level normal forms (memoized) ----------------------------------

    def nf_word(self, word: Word) -> dict[Mono, Coeff]:
        cache = self._nf_cache
        hit = cache.get(word)
        if hit is not None:
            return hit
        stack = [tuple(word)]
        iterations = 0
        while stack:
            iterations += 1
            if iterations > self.budget:
                raise NonTerminatingError("reduction did not settle within the budget")
            w = stack[-1]
            if w in cache:
                stack.pop()
                continue
            red = self.first_reduction(w)
            if red is None:
                cache[w] = {(w, self.zero_grp()): self.ring.one()}
                stack.pop()
                continue
            pos, lhs = red
            rhs = self.rules[lhs]
            prefix, suffix = w[:pos], w[pos + len(lhs):]
            pending = []
            for (rw, rg) in rhs.terms:
                nw = prefix + rw + suffix
                if nw not in cache and nw != w:
                    pending.append(nw)
            if pending:
                stack.extend(pending)
                continue
            self.charge()
            acc: dict[Mono, Coeff] = {}
            for (rw, rg), c in rhs.terms.items():
                nw = prefix + rw + suffix
                if nw == w:
                    raise NonTerminatingError("reduction cycle detected")
                shift = self.chi_pass(rg, suffix)
                cc = c.q_shift(shift)
                for (w2, g2), c2 in cache[nw].items():
                    mono = (w2, self.reduce_grp(tuple(a + b for a, b in zip(g2, rg))))
                    prev = acc.get(mono)
                    val = cc * c2 if prev is None else prev + cc * c2
                    if val.is_zero():
                        acc.pop(mono, None)
                    else:
                        acc[mono] = val
            cache[w] = acc
            stack.pop()
        return cache[word]

    def word_str(self, word: Word) -> str:
        if not word:
            return "1"
        out = []
        run = None
        for g in word:
            if run and run[0] == g:
                run[1] += 1
            else:
                if run:
                    out.append(run)
                run = [g, 1]
        out.append(run)
        return "*".join(f"{self.gens[g]}" + (f"^{k}" if k > 1 else "") for g, k in out)

    def mono_str(self, mono: Mono) -> str:
        w, g = mono
        bits = [] if not any(g) else [
            "*".join(f"{n}" + (f"^{e}" if e != 1 else "")
                     for n, e in zip(self.grp_names, g) if e)]
        head = self.word_str(w) if w else ("1" if not bits else "")
        return "*".join(x for x in (head, *bits) if x) or "1"


class El:
    """Element: finite sum of coeff * (word, group-monomial)."""

    __slots__ = ("P", "terms")

    def __init__(self, P: Presentation, terms: dict[Mono, Coeff]):
        self.P = P
        self.terms = terms

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "El") -> "El":
        out = dict(self.terms)
        for m, c in other.terms.items():
            prev = out.get(m)
            val = c if prev is None else prev + c
            if val.is_zero():
                out.pop(m, None)
            else:
                out[m] = val
        return El(self.P, out)

    def __neg__(self) -> "El":
        return El(self.P, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "El") -> "El":
        return self + (-other)

    def scale(self, c: Coeff) -> "El":
        if c.is_zero():
            return El(self.P, {})
        out = {}
        for m, v in self.terms.items():
            val = v * c
            if not val.is_zero():
                out[m] = val
        return El(self.P, out)

    def scale_q(self, e: int, n: int = 1) -> "El":
        return self.scale(self.P.ring.q(e, n))

    def __mul__(self, other: "El") -> "El":
        P = self.P
        out: dict[Mono, Coeff] = {}
        for (w1, g1), c1 in self.terms.items():
            for (w2, g2), c2 in other.terms.items():
                shift = P.chi_pass(g1, w2)
                mono = (w1 + w2, P.reduce_grp(tuple(a + b for a, b in zip(g1, g2))))
                val = (c1 * c2).q_shift(shift)
                prev = out.get(mono)
                val = val if prev is None else prev + val
                if val.is_zero():
                    out.pop(mono, None)
                else:
                    out[mono] = val
        return El(P, out)

    def normal_form(self) -> "El":
        P = self.P
        out: dict[Mono, Coeff] = {}
        for (w, g), c in self.terms.items():
            if P.is_normal_word(w):
                items = [((w, g), P.ring.one())]
            else:
                items = []
                for (w2, g2), c2 in P.nf_word(w).items():
                    mono = (w2, P.reduce_grp(tuple(a + b for a, b in zip(g2, g))))
                    items.append((mono, c2))
            for mono, c2 in items:
                val = c * c2
                prev = out.get(mono)
                val = val if prev is None else prev + val
                if val.is_zero():
                    out.pop(mono, None)
                else:
                    out[mono] = val
        return El(P, out)

    def multidegree(self) -> tuple[int, ...]:
        P = self.P
        if not P.multidegree:
            raise ValidationError("presentation declares no multidegrees")
        s = len(P.multidegree[0])
        deg = None
        for (w, g) in self.terms:
            d = [0] * s
            for letter in w:
                for i, x in enumerate(P.multidegree[letter]):
                    d[i] += x
            d = tuple(d)
            if deg is None:
                deg = d
            elif deg != d:
                raise ValidationError("element is not homogeneous")
        if deg is None:
            raise ValidationError("zero element has no degree")
        return deg

    def substitute(self, values: dict[str, int]) -> "El":
        out = {}
        for m, c in self.terms.items():
            val = c.substitute(values)
            if not val.is_zero():
                out[m] = val
        return El(self.P, out)

    def __eq__(self, other) -> bool:
        return isinstance(other, El) and self.P is other.P and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        P = self.P
        bits = []
        for m in sorted(self.terms, key=lambda m: (P.order_key(m[0]), m[1])):
            bits.append(f"[{self.terms[m]}]*{P.mono_str(m)}")
        return " + ".join(bits)


def normal_form(e: El, P: Presentation | None = None) -> El:
    return e.normal_form()


# -- tensor square ---------------------------------------------------------------


class Tensor:
    """Element of the tensor-square algebra, componentwise multiplication."""

    __slots__ = ("P", "terms")

    def __init__(self, P: Presentation, terms: dict[tuple[Mono, Mono], Coeff]):
        self.P = P
        self.terms = terms

    @staticmethod
    def of(left: El, right: El) -> "Tensor":
        P = left.P
        out: dict[tuple[Mono, Mono], Coeff] = {}
        for ml, cl in left.terms.items():
            for mr, cr in right.terms.items():
                val = cl * cr
                if not val.is_zero():
                    out[(ml, mr)] = val
        return Tensor(P, out)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "Tensor") -> "Tensor":
        out = dict(self.terms)
        for k, c in other.terms.items():
            prev = out.get(k)
            val = c if prev is None else prev + c
            if val.is_zero():
                out.pop(k, None)
            else:
                out[k] = val
        return Tensor(self.P, out)

    def __neg__(self) -> "Tensor":
        return Tensor(self.P, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "Tensor") -> "Tensor":
        return self + (-other)

    def scale(self, c: Coeff) -> "Tensor":
        out = {}
        for k, v in self.terms.items():
            val = v * c
            if not val.is_zero():
                out[k] = val
        return Tensor(self.P, out)

    def __mul__(self, other: "Tensor") -> "Tensor":
        P = self.P
        out: dict[tuple[Mono, Mono], Coeff] = {}
        for ((lw1, lg1), (rw1, rg1)), c1 in self.terms.items():
            for ((lw2, lg2), (rw2, rg2)), c2 in other.terms.items():
                shift = P.chi_pass(lg1, lw2) + P.chi_pass(rg1, rw2)
                lmono = (lw1 + lw2, P.reduce_grp(tuple(a + b for a, b in zip(lg1, lg2))))
                rmono = (rw1 + rw2, P.reduce_grp(tuple(a + b for a, b in zip(rg1, rg2))))
                val = (c1 * c2).q_shift(shift)
                key = (lmono, rmono)
                prev = out.get(key)
                val = val if prev is None else prev + val
                if val.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = val
        return Tensor(P, out)

    def normal_form(self) -> "Tensor":
        P = self.P
        out: dict[tuple[Mono, Mono], Coeff] = {}
        for ((lw, lg), (rw, rg)), c in self.terms.items():
            for (lw2, lg2), cl in P.nf_word(lw).items():
                lmono = (lw2, P.reduce_grp(tuple(a + b for a, b in zip(lg2, lg))))
                for (rw2, rg2), cr in P.nf_word(rw).items():
                    rmono = (rw2, P.reduce_grp(tuple(a + b for a, b in zip(rg2, rg))))
                    val = c * cl * cr
                    key = (lmono, rmono)
                    prev = out.get(key)
                    val = val if prev is None else prev + val
                    if val.is_zero():
                        out.pop(key, None)
                    else:
                        out[key] = val
        return Tensor(P, out)

    def __repr__(self):
        if not self.terms:
            return "0"
        P = self.P
        bits = []
        for (ml, mr), c in sorted(self.terms.items(),
                                  key=lambda kv: (P.order_key(kv[0][0][0]), kv[0])):
            bits.append(f"[{c}]*{P.mono_str(ml)} (x) {P.mono_str(mr)}")
        return " + ".join(bits)


def coproduct(e: El, P: Presentation | None = None) -> Tensor:
    """Algebra-map extension of the declared generator coproducts."""
    P = e.P
    out = Tensor(P, {})
    for (w, g), c in e.terms.items():
        t = Tensor(P, {((((), P.zero_grp())), ((), P.zero_grp())): P.ring.one()})
        for letter in w:
            if letter not in P.coproducts:
                raise ValidationError(f"no coproduct declared for {P.gens[letter]}")
            t = (t * P.coproducts[letter]).normal_form()
        if any(g):
            gt = Tensor(P, {(((), g), ((), g)): P.ring.one()})
            t = (t * gt).normal_form()
        out = out + t.scale(c)
    return out.normal_form()


def is_skew_primitive(e: El, grp, P: Presentation | None = None):
    """True iff Delta(e) = g (x) e + e (x) 1; returns (bool, residual Tensor)."""
    P = e.P
    if isinstance(grp, dict):
        vec = [0] * len(P.grp_names)
        for n, v in grp.items():
            vec[P.grp_names.index(n)] = v
        grp = tuple(vec)
    grp = P.reduce_grp(tuple(grp))
    e = e.normal_form()
    delta = coproduct(e)
    gxe = Tensor(P, {(((), grp), m): c for m, c in e.terms.items()})
    ex1 = Tensor(P, {(m, ((), P.zero_grp())): c for m, c in e.terms.items()})
    residual = (delta - gxe - ex1).normal_form()
    return residual.is_zero(), residual


def is_central(e: El, P: Presentation | None = None):
    """Commutation with every generator and group generator; (bool, witness).

    Generators are tried from the top of the precedence order down, so the
    witness for a failure is the largest non-commuting letter (for the
    shipped presentations these are the simple letters x_theta, ..., x_1).
    """
    P = e.P
    e = e.normal_form()
    for gname in reversed(P.gens):
        x = P.gen(gname)
        if not ((x * e) - (e * x)).normal_form().is_zero():
            return False, gname
    for k, hname in enumerate(P.grp_names):
        h = P.grp_el({hname: 1})
        if not ((h * e) - (e * h)).normal_form().is_zero():
            return False, hname
    return True, None


def bracket(a, b, P: Presentation | None = None) -> El:
    """Braided commutator [a, b] = a*b - q^(deg a . B . deg b) * b*a, reduced."""
    if isinstance(a, str):
        a = P.gen(a)
    if isinstance(b, str):
        b = P.gen(b)
    P = a.P
    if not P.braid_exponents:
        raise ValidationError("presentation declares no braiding exponents")
    da, db = a.multidegree(), b.multidegree()
    ex = sum(da[i] * P.braid_exponents[i][j] * db[j]
             for i in range(len(da)) for j in range(len(db)))
    return ((a * b) - (b * a).scale_q(ex)).normal_form()


# -- diamond lemma -----------------------------------------------------------------


@dataclass(frozen=True)
class Ambiguity:
    word: Word
    rule1: Word
    rule2: Word
    difference_repr: str


def check_local_confluence(P: Presentation, progress=None) -> list[Ambiguity]:
    """Resolve every overlap/inclusion ambiguity; empty list = locally confluent."""
    failures: list[Ambiguity] = []
    lhss = sorted(P.rules, key=lambda w: (len(w), w))
    jobs = []
    for u in lhss:
        for v in lhss:
            for k in range(1, min(len(u), len(v))):
                if u[len(u) - k:] == v[:k]:
                    jobs.append(("overlap", u, v, k))
            if u != v:
                for pos in range(len(u) - len(v) + 1):
                    if u[pos:pos + len(v)] == v:
                        jobs.append(("inclusion", u, v, pos))
    for idx, (kind, u, v, k) in enumerate(jobs):
        if progress:
            progress(idx, len(jobs), kind, u, v)
        if kind == "overlap":
            w = u + v[k:]
            r1 = (P.rules[u] * P.word_el(v[k:])).normal_form()
            r2 = (P.word_el(u[:len(u) - k]) * P.rules[v]).normal_form()
        else:
            w = u
            r1 = P.rules[u].normal_form()
            r2 = (P.word_el(u[:k]) * P.rules[v] * P.word_el(u[k + len(v):])).normal_form()
        diff = r1 - r2
        if not diff.is_zero():
            failures.append(Ambiguity(w, u, v, repr(diff)))
    return failures


# -- basis enumeration -----------------------------------------------------------


def enumerate_basis(P: Presentation, caps: dict[str, int], with_listing: bool = False):
    """Count (optionally list) normal-form monomials under per-generator caps.

    Words are ascending in the generator precedence; caps bound each letter's
    multiplicity (exclusive).  The group contributes the product of its
    orders, which must all be finite when group generators are present.
    """
    grp_size = 1
    for o in P.grp_orders:
        if o == 0:
            raise ValidationError("basis enumeration needs finite group orders")
        grp_size *= o
    cap_vec = [caps.get(name, 1) for name in P.gens]
    words: list[Word] = []

    def rec(word: list[int], start: int):
        words.append(tuple(word))
        for g in range(start, len(P.gens)):
            if word.count(g) + 1 >= cap_vec[g]:
                continue
            word.append(g)
            if P.is_normal_word(tuple(word)):
                rec(word, g)
            word.pop()

    rec([], 0)
    count = len(words) * grp_size
    if not with_listing:
        return count, None
    listing = []
    for w in words:
        listing.append(P.word_str(w))
    return count, listing
