"""Shipped presentations and the generic linking-datum machinery.

The A2/B2/G2 self-link presentations transcribe the computed relation sets
for diagonal orders 3, 5 and 7.  Variants:

* ``upper``    -- straightening rules only (the infinite-dimensional algebra);
* ``ambient``  -- plus x_i^p = mu_i(1 - g_i^p);
* ``full``     -- plus the root-vector power rules (A2: z^3; B2: z^5, u^5).

G2 has no ``full`` variant: only the z^7 counterterm expression is known.
"""
from __future__ import annotations

from dataclasses import dataclass

from .. import qcalc
from ..errors import InvalidDatumError, NotAdmissibleError, ValidationError
from .coeffs import Coeff, CoeffRing
from .engine import El, Presentation, Tensor, coproduct

from math import comb


@dataclass(frozen=True)
class GroupSpec:
    """Concrete abelian group receiving the abstract g_1..g_theta.

    ``images[i]`` is g_{i+1} as an exponent vector over the group generators;
    ``chi[k][i]`` is the q-exponent of chi_{i+1} evaluated on generator k.
    """

    names: tuple[str, ...]
    orders: tuple[int, ...]
    images: tuple[tuple[int, ...], ...]
    chi: tuple[tuple[int, ...], ...]

    def vec(self, exps: dict[int, int]) -> tuple[int, ...]:
        """Exponent vector of prod g_{i}^{e_i} (1-based abstract indices)."""
        out = [0] * len(self.names)
        for i, e in exps.items():
            for k, x in enumerate(self.images[i - 1]):
                out[k] += e * x
        return tuple(out)


def free_group_spec(simple_chi_rows: tuple[tuple[int, ...], ...]) -> GroupSpec:
    """Free abelian Z^theta with g_i the canonical generators."""
    th = len(simple_chi_rows[0])
    names = tuple(f"g{i}" for i in range(1, th + 1))
    images = tuple(tuple(1 if k == i else 0 for k in range(th)) for i in range(th))
    return GroupSpec(names, (0,) * th, images, simple_chi_rows)


def cyclic_group_spec(order: int, simple_chi_row: tuple[int, ...],
                      n_abstract: int | None = None) -> GroupSpec:
    """Z/order with every abstract g_i mapped to the same generator g."""
    th = n_abstract or len(simple_chi_row)
    return GroupSpec(("g",), (order,), ((1,),) * th, (simple_chi_row,))


def _ring_poly(ring: CoeffRing, coeffs) -> Coeff:
    return ring.poly(qcalc.QPoly(*coeffs))


def _derived_chi(spec: GroupSpec, multidegrees) -> tuple[tuple[int, ...], ...]:
    """Character table rows extended from simple letters to all generators."""
    rows = []
    for row in spec.chi:
        rows.append(tuple(sum(row[s] * d for s, d in enumerate(deg)) for deg in multidegrees))
    return tuple(rows)


def _base_presentation(name, gens, weights, multidegrees, braid, params, p, spec, budget):
    ring = CoeffRing(tuple(params), p)
    P = Presentation(
        name=name,
        gens=tuple(gens),
        weights=tuple(weights),
        ring=ring,
        grp_names=spec.names,
        grp_orders=spec.orders,
        chi=_derived_chi(spec, multidegrees),
        multidegree=tuple(multidegrees),
        braid_exponents=braid,
    )
    if budget:
        P.budget = budget
    return P


def _declare_x_coproducts(P: Presentation, spec: GroupSpec, x_names):
    for i, xn in enumerate(x_names, start=1):
        g = P.reduce_grp(spec.vec({i: 1}))
        xi = P.gen_index(xn)
        P.coproducts[xi] = Tensor(P, {
            (((), g), ((xi,), P.zero_grp())): P.ring.one(),
            (((xi,), P.zero_grp()), ((), P.zero_grp())): P.ring.one(),
        })


def _derive_coproduct(P: Presentation, gen_name: str, defining: El):
    # the defining expression is over lower letters; do NOT normalize it
    # first (its normal form is the new generator itself)
    P.coproducts[P.gen_index(gen_name)] = coproduct(defining)


# -- A2 self-link, p = 3 ------------------------------------------------------


def a2_selflink(variant: str = "full", spec: GroupSpec | None = None,
                budget: int | None = None) -> Presentation:
    spec = spec or free_group_spec(((1, 1), (1, 1)))
    P = _base_presentation(
        "A2-selflink", ("z", "x1", "x2"), (2, 1, 1),
        ((1, 1), (1, 0), (0, 1)), ((1, 1), (1, 1)),
        ("lam12", "lam21", "mu1", "mu2", "lam"), 3, spec, budget)
    ring = P.ring
    q = ring.q
    z, x1, x2 = (P.gen_index(n) for n in ("z", "x1", "x2"))
    G1 = spec.vec({1: 2, 2: 1})
    G2 = spec.vec({2: 2, 1: 1})
    lam12, lam21 = ring.param("lam12"), ring.param("lam21")
    one_minus = lambda g: P.one() - P.grp_el(g)

    P.add_rule((x2, x1), P.word_el((x1, x2), q(2)) - P.word_el((z,), q(2)))
    P.add_rule((x1, z), P.word_el((z, x1), q(2)) + one_minus(G1).scale(lam12))
    P.add_rule((x2, z), P.word_el((z, x2), q(1)) - one_minus(G2).scale(q(1) * lam21))
    _declare_x_coproducts(P, spec, ("x1", "x2"))
    _derive_coproduct(P, "z",
                      P.word_el((x1, x2)) - P.word_el((x2, x1), q(1)))
    if variant == "upper":
        return P
    for i, xn in ((1, x1), (2, x2)):
        P.add_rule((xn,) * 3, one_minus(spec.vec({i: 3})).scale(ring.param(f"mu{i}")))
    if variant == "ambient":
        return P
    if variant != "full":
        raise ValidationError(f"unknown A2 variant {variant!r}")
    v_ct = a2_v_counterterms(P, spec)
    rhs = one_minus(spec.vec({1: 3, 2: 3})).scale(ring.param("lam")) - v_ct
    P.add_rule((z,) * 3, rhs)
    return P


def _cpow(c: Coeff, n: int) -> Coeff:
    out = c.ring.one()
    for _ in range(n):
        out = out * c
    return out


def a2_v_counterterms(P: Presentation, spec: GroupSpec) -> El:
    """v - z^3: (1-q)^3 mu1 mu2 (1-g2^3) + (1-q) q lam12 lam21 (1-g2^2 g1)."""
    ring = P.ring
    mu = ring.param("mu1") * ring.param("mu2")
    lam = ring.param("lam12") * ring.param("lam21")
    c1 = _cpow(_ring_poly(ring, (1, -1)), 3)
    c2 = _ring_poly(ring, (0, 1)) * _ring_poly(ring, (1, -1))
    return ((P.one() - P.grp_el(spec.vec({2: 3}))).scale(c1 * mu)
            + (P.one() - P.grp_el(spec.vec({2: 2, 1: 1}))).scale(c2 * lam))


def a2_v_element(P: Presentation, spec: GroupSpec) -> El:
    z = P.gen_index("z")
    return P.word_el((z,) * 3) + a2_v_counterterms(P, spec)


# -- B2 self-link, p = 5 ------------------------------------------------------


def b2_selflink(variant: str = "full", spec: GroupSpec | None = None,
                budget: int | None = None) -> Presentation:
    spec = spec or free_group_spec(((2, 1), (2, 1)))
    P = _base_presentation(
        "B2-selflink", ("u", "z", "x1", "x2"), (3, 2, 1, 1),
        ((1, 2), (1, 1), (1, 0), (0, 1)), ((2, 1), (2, 1)),
        ("lam12", "lam21", "mu1", "mu2", "gam1", "gam2"), 5, spec, budget)
    ring = P.ring
    q = ring.q
    u, z, x1, x2 = (P.gen_index(n) for n in ("u", "z", "x1", "x2"))
    G1 = spec.vec({1: 2, 2: 1})
    G2 = spec.vec({2: 3, 1: 1})
    lam12, lam21 = ring.param("lam12"), ring.param("lam21")
    mu1, mu2 = ring.param("mu1"), ring.param("mu2")
    one_minus = lambda g: P.one() - P.grp_el(g)
    W = P.word_el

    P.add_rule((x2, x1), W((x1, x2), q(2)) + W((z,)))
    P.add_rule((x2, z), W((z, x2), q(3)) + W((u,)))
    P.add_rule((x1, z), W((z, x1), q(1)) - one_minus(G1).scale(q(2) * lam12))
    P.add_rule((x2, u), W((u, x2), q(4)) + one_minus(G2).scale(lam21))
    P.add_rule((x1, u), (W((u, x1), q(4))
                         + W((z, z), q(2) * _ring_poly(ring, (1, -1)))
                         + W((x2,), _ring_poly(ring, (1, 0, 0, -1)) * lam12, G1)))
    P.add_rule((z, u), (W((u, z), q(1))
                        + W((x2, x2), q(1) * _ring_poly(ring, (1, -1)) * _ring_poly(ring, (1, 0, -1)) * lam12, G1)
                        - W((x1,), q(1) * _ring_poly(ring, (1, 0, -1)) * lam21)))
    _declare_x_coproducts(P, spec, ("x1", "x2"))
    _derive_coproduct(P, "z", W((x2, x1)) - W((x1, x2), q(2)))
    _derive_coproduct(P, "u", W((x2, z)) - W((z, x2), q(3)))
    if variant == "upper":
        return P
    for i, xn in ((1, x1), (2, x2)):
        P.add_rule((xn,) * 5, one_minus(spec.vec({i: 5})).scale(ring.param(f"mu{i}")))
    if variant == "ambient":
        return P
    if variant != "full":
        raise ValidationError(f"unknown B2 variant {variant!r}")
    v_ct = b2_v_counterterms(P, spec)
    P.add_rule((z,) * 5, one_minus(spec.vec({1: 5, 2: 5})).scale(ring.param("gam1")) - v_ct)
    w_ct = b2_w_counterterms(P, spec)
    P.add_rule((u,) * 5, one_minus(spec.vec({1: 5, 2: 10})).scale(ring.param("gam2")) - w_ct)
    return P


def b2_v_counterterms(P: Presentation, spec: GroupSpec) -> El:
    """v - z^5 from the computed relation figure."""
    ring = P.ring
    W = P.word_el
    G1 = spec.vec({1: 2, 2: 1})
    G2 = spec.vec({2: 3, 1: 1})
    G1G1 = tuple(2 * a for a in G1)
    lam12, lam21 = ring.param("lam12"), ring.param("lam21")
    mu = ring.param("mu1") * ring.param("mu2")
    l2l = _cpow(lam12, 2) * lam21
    z, x1 = P.gen_index("z"), P.gen_index("x1")
    addg = lambda a, b: P.reduce_grp(tuple(x + y for x, y in zip(a, b)))
    return (
        (P.one() - P.grp_el(spec.vec({1: 5}))).scale(_cpow(_ring_poly(ring, (1, 0, -1)), 5) * mu)
        - P.grp_el(addg(G1G1, G2)).scale(_ring_poly(ring, (1, -1, -1, 1)) * l2l)
        + P.grp_el(G1G1).scale(_ring_poly(ring, (1, 0, 2, 2)) * l2l)
        - P.grp_el(G1).scale(_ring_poly(ring, (0, 1, 3, 1)) * l2l)
        + W((z, x1), _ring_poly(ring, (-1, 3, 2, 1)) * lam12 * lam21, G1)
    )


def b2_w_counterterms(P: Presentation, spec: GroupSpec) -> El:
    """w - u^5, with v appearing inside (its z^5 is normalized away on use)."""
    ring = P.ring
    W = P.word_el
    G1 = spec.vec({1: 2, 2: 1})
    G2 = spec.vec({2: 3, 1: 1})
    lam12, lam21 = ring.param("lam12"), ring.param("lam21")
    mu2 = ring.param("mu2")
    u, z, x1, x2 = (P.gen_index(n) for n in ("u", "z", "x1", "x2"))
    ll3 = lam12 * _cpow(lam21, 3)
    ll2 = lam12 * _cpow(lam21, 2)
    ll1 = lam12 * lam21
    l2l = _cpow(lam12, 2) * lam21
    addg = lambda *gs: P.reduce_grp(tuple(sum(t) for t in zip(*gs)))
    v = b2_v_counterterms(P, spec) + W((z,) * 5)
    return (
        v.scale(_cpow(_ring_poly(ring, (1, -1)), 5) * mu2).scale(ring.from_int(2))
        - W((x1,) * 5, _cpow(_ring_poly(ring, (1, 0, -1)), 5) * _cpow(_ring_poly(ring, (1, -1)), 5) * _cpow(mu2, 2))
        - P.grp_el(addg(G1, G2, G2, G2)).scale(_ring_poly(ring, (2, -1, 1, 3)) * ll3)
        + P.grp_el(addg(G1, G2, G2)).scale(_ring_poly(ring, (2, 4, 1, 3)) * ll3)
        - P.grp_el(addg(G1, G2)).scale(_ring_poly(ring, (-2, 6, 4, 2)) * ll3)
        + P.grp_el(G1).scale(_ring_poly(ring, (-2, 1, 4, 2)) * ll3)
        - W((u, x2), _ring_poly(ring, (5, 0, 0, 5)) * ll2, addg(G1, G2))
        - W((u, x2), _ring_poly(ring, (-5, 0, 5, 5)) * ll2, G1)
        + W((u, u, x2, x2), _ring_poly(ring, (-5, 0, 0, 5)) * ll1, G1)
        - W((x2,) * 5, _ring_poly(ring, (-10, 5, -5, 10)) * l2l, addg(G1, G1, G2))
    )


def b2_v_element(P: Presentation, spec: GroupSpec) -> El:
    return P.word_el((P.gen_index("z"),) * 5) + b2_v_counterterms(P, spec)


def b2_w_element(P: Presentation, spec: GroupSpec) -> El:
    return P.word_el((P.gen_index("u"),) * 5) + b2_w_counterterms(P, spec)


# -- G2 self-link, p = 7 ------------------------------------------------------


def g2_selflink(variant: str = "ambient", spec: GroupSpec | None = None,
                budget: int | None = None) -> Presentation:
    """G2 self-link presentation, diagonal order 7.

    Only the four root-vector definitions and the two quantum Serre
    relations are taken as primitive; the remaining nine straightening
    rules are derived by reducing each descending product through its
    definition with the rules established so far (g2_printed_rules keeps
    the relation figure's literal lines for cross-checking).
    """
    spec = spec or free_group_spec(((1, 3), (1, 3)))
    P = _base_presentation(
        "G2-selflink", ("w", "v", "u", "z", "x1", "x2"), (12, 10, 7, 6, 4, 7),
        ((3, 2), (3, 1), (2, 1), (1, 1), (1, 0), (0, 1)), ((1, 3), (1, 3)),
        ("lam12", "lam21", "mu1", "mu2"), 7, spec, budget)
    ring = P.ring
    q = ring.q
    w, v, u, z, x1, x2 = (P.gen_index(n) for n in ("w", "v", "u", "z", "x1", "x2"))
    G1 = spec.vec({1: 4, 2: 1})
    G2 = spec.vec({2: 2, 1: 1})
    lam12, lam21 = ring.param("lam12"), ring.param("lam21")
    one_minus = lambda g: P.one() - P.grp_el(g)
    W = P.word_el

    # definitions of z, u, v, w and the two Serre relations
    P.add_rule((x2, x1), W((x1, x2), q(1)) + W((z,)))
    P.add_rule((x2, z), W((z, x2), q(4)) + one_minus(G2).scale(lam21))
    P.add_rule((x1, z), W((z, x1), q(5)) - W((u,), q(5)))
    P.add_rule((x1, u), W((u, x1), q(4)) - W((v,), q(4)))
    P.add_rule((z, u), W((u, z), q(3)) + W((w,)))
    P.add_rule((x1, v), W((v, x1), q(3)) - one_minus(G1).scale(q(6) * lam12))

    def derive(lhs, expansion: El):
        rhs = expansion.normal_form()
        # the expansion may reproduce the pair itself: solve (1-c)*lhs = rest
        self_c = rhs.terms.get((lhs, P.zero_grp()))
        if self_c is not None:
            rest = rhs - P.word_el(lhs, self_c)
            rhs = rest.scale(ring.invert_unit(ring.one() - self_c))
        if any(word == lhs for (word, _g) in rhs.terms):
            raise ValidationError(f"derivation of {P.word_str(lhs)} is degenerate")
        if any(not P.is_normal_word(word) for (word, _g) in rhs.terms):
            raise ValidationError(f"derivation of {P.word_str(lhs)} left reducible words")
        P.add_rule(lhs, rhs, normalize=False)

    def times_rule(letter: int, pair, scale=None) -> El:
        # letter * (straightened product of the pair), avoiding re-contraction
        e = W((letter,)) * P.rules[pair]
        return e if scale is None else e.scale(scale)

    # expand each descending pair through the definitions of its letters
    # where that route carries content ...
    derive((x2, u), W((x2, z, x1)) - W((x2, x1, z), q(2)))
    derive((x2, v), W((x2, u, x1)) - W((x2, x1, u), q(3)))
    derive((x2, w), W((x2, z, u)) - W((x2, u, z), q(3)))
    derive((x1, w), W((x1, z, u)) - W((x1, u, z), q(3)))
    derive((z, v), times_rule(x2, (x1, v)) - times_rule(x1, (x2, v), q(1)))
    derive((u, v), times_rule(z, (x1, v)) - times_rule(x1, (z, v), q(2)))
    # ... and resolve the remaining pairs from overlap ambiguities, whose
    # leading terms the diamond lemma forces (definition routes are tautological)
    _complete_pairs(P, [(z, w), (u, w), (v, w)])

    _declare_x_coproducts(P, spec, ("x1", "x2"))
    _derive_coproduct(P, "z", W((x2, x1)) - W((x1, x2), q(1)))
    _derive_coproduct(P, "u", W((z, x1)) - W((x1, z), q(2)))
    _derive_coproduct(P, "v", W((u, x1)) - W((x1, u), q(3)))
    _derive_coproduct(P, "w", W((z, u)) - W((u, z), q(3)))
    if variant == "commutation":
        return P
    if variant != "ambient":
        raise ValidationError(f"unknown G2 variant {variant!r}")
    for i, xn in ((1, x1), (2, x2)):
        P.add_rule((xn,) * 7, one_minus(spec.vec({i: 7})).scale(P.ring.param(f"mu{i}")))
    return P


def _complete_pairs(P: Presentation, missing: list):
    """Derive straightening rules for the listed pairs from ambiguities.

    Scans overlap ambiguities of the current rules; a nonzero resolution
    difference is zero in the algebra, so its leading monomial (one of the
    missing pair-words) can be solved for and oriented into a rule.
    """
    ring = P.ring
    todo = [tuple(p) for p in missing]
    guard = 0
    while todo:
        guard += 1
        if guard > 50:
            raise ValidationError(f"completion stalled; missing {todo}")
        progressed = False
        lhss = sorted(P.rules, key=lambda t: (len(t), t))
        for uu in lhss:
            for vv in lhss:
                for k in range(1, min(len(uu), len(vv))):
                    if uu[len(uu) - k:] != vv[:k]:
                        continue
                    r1 = (P.rules[uu] * P.word_el(vv[k:])).normal_form()
                    r2 = (P.word_el(uu[:len(uu) - k]) * P.rules[vv]).normal_form()
                    diff = r1 - r2
                    if diff.is_zero():
                        continue
                    lead = max(diff.terms, key=lambda m: (P.order_key(m[0]), m[1]))
                    word, grp = lead
                    if word not in todo or any(grp):
                        continue
                    c = diff.terms[lead]
                    rest = diff - P.word_el(word, c, grp)
                    P.add_rule(word, rest.scale(-ring.invert_unit(c)).normal_form(),
                               normalize=False)
                    todo.remove(word)
                    progressed = True
                    break
                if progressed:
                    break
            if progressed:
                break
        if not progressed:
            raise ValidationError(f"no ambiguity determines the pairs {todo}")


def g2_printed_rules(P: Presentation, spec: GroupSpec) -> dict:
    """The relation figure's straightening lines, literally, keyed by LHS."""
    ring = P.ring
    q = ring.q
    w, v, u, z, x1, x2 = (P.gen_index(n) for n in ("w", "v", "u", "z", "x1", "x2"))
    G1 = spec.vec({1: 4, 2: 1})
    G2 = spec.vec({2: 2, 1: 1})
    lam12, lam21 = ring.param("lam12"), ring.param("lam21")
    W = P.word_el
    pc = lambda *cs: _ring_poly(ring, cs)
    addg = lambda *gs: P.reduce_grp(tuple(sum(t) for t in zip(*gs)))
    ll = lam12 * lam21
    return {
        (x2, u): (W((u, x2), q(5)) + W((z, z), pc(0, 0, -1, 0, 1))
                  - W((x1,), pc(-1, 0, 0, 1) * lam21)),
        (x2, v): (W((v, x2), q(6)) - W((u, z), pc(-1, 0, 0, 0, 1))
                  + W((w,), pc(0, 0, -1, -1, 1))
                  - W((x1, x1), pc(-2, 0, 0, 1, 1) * lam21)),
        (z, v): (W((v, z), q(5)) + W((u, u), pc(1, 0, 1, 1, 1, 2))
                 - W((x1, x1, x1), pc(1, 2, 1, 3, -1, 1) * lam21)
                 + W((x2,), pc(2, 1, 0, 2, 0, 2) * lam12, G1)),
        (x2, w): (W((w, x2), q(2)) + W((z, z, z), pc(0, 2, 1, 1, 1, 2))
                  + W((z, x1), pc(-1, -1, 0, 0, 2) * lam21)
                  - W((u,), pc(-1, 0, 0, 0, 1) * lam21)),
        (x1, w): (W((w, x1), q(2)) + W((u, u), pc(-1, 1, -1, 1))
                  + W((x1, x1, x1), pc(2, 1, 2, 3, 2, 4) * lam21)
                  - W((x2,), pc(2, 0, 2, 1, 0, 2) * lam12, G1)),
        (u, v): (W((v, u), q(4)) + W((x1, x1, x1, x1), pc(2, 2, 0, 3, 4, 3) * lam21)
                 - W((z,), pc(0, 0, -1, 0, 0, 1) * lam12, G1)),
        (z, w): (W((w, z), q(4)) + W((u, x1), pc(-1, -1, 0, 0, 2) * lam21)
                 - W((v,), pc(-1, 0, 0, 0, 1) * lam21)
                 + W((x2, x2), pc(0, -1, -1, 0, 0, 2) * lam12, G1)),
        (u, w): (W((w, u), q(3)) + W((v, x1), pc(1, 2, 4, 4, 2, 1) * lam21)
                 + W((z, x2), pc(0, 1, -1, -1, 1) * lam12, G1)
                 - P.grp_el(addg(G1, G2)).scale(pc(1, 1, 2, 3, 4, 3) * ll)
                 + P.grp_el(G1).scale(pc(-1, -3, -1, 2, 2, 1) * ll)
                 + P.one().scale(pc(2, 4, 3, 1, 2, 2) * ll)),
        (v, w): (W((w, v), q(5)) - W((u, u, u), pc(3, -1, 3, 0, 1, 1))
                 + W((u, x1, x1, x1), pc(1, 1, 0, 5, 2, 5) * lam21)
                 + W((v, x1, x1), pc(0, -6, -5, -5, 0, 2) * lam21)
                 - W((u, x2), pc(4, 0, 3, 2, 2, 3) * lam12, G1)
                 + W((z, z), pc(0, 0, 1, -2, 1) * lam12, G1)
                 + W((x1,), pc(1, -4, -4, 0, 2, 5) * ll, G1)
                 - W((x1,), pc(4, 5, 2, 1, 1, 1) * ll)),
    }


def g2_Z_element(P: Presentation, spec: GroupSpec) -> El:
    """Z = z^7 plus its eight counterterms; (g1^7 g2^7, 1)-primitive."""
    ring = P.ring
    W = P.word_el
    pc = lambda *cs: _ring_poly(ring, cs)
    z, x1, x2 = (P.gen_index(n) for n in ("z", "x1", "x2"))
    G1 = spec.vec({1: 4, 2: 1})
    G2 = spec.vec({2: 2, 1: 1})
    addg = lambda *gs: P.reduce_grp(tuple(sum(t) for t in zip(*gs)))
    lam12, lam21 = ring.param("lam12"), ring.param("lam21")
    ll1 = lam12 * lam21
    ll2 = lam12 * _cpow(lam21, 2)
    ll3 = lam12 * _cpow(lam21, 3)
    mu = ring.param("mu1") * ring.param("mu2")
    return (
        W((z,) * 7)
        + (P.one() - P.grp_el(spec.vec({1: 7}))).scale(_cpow(pc(1, 0, 0, -1), 7) * mu)
        - W((z, z, x2, x2), pc(-2, -4, 1, -1, 4, 2) * ll1, G1)
        + W((z, x2), pc(-3, -3, 0, 6, 8, 6) * ll2, addg(G1, G2))
        - W((z, x2), pc(1, 3, -1, 3, 1) * ll2, G1)
        + P.grp_el(addg(G1, G2, G2, G2)).scale(pc(-1, 2, 5, 4, 2, 2) * ll3)
        + P.grp_el(addg(G1, G2, G2)).scale(pc(-3, -6, -7, -4, -2, 1) * ll3)
        - P.grp_el(addg(G1, G2)).scale(pc(-4, -2, -2, 2, 2, 4) * ll3)
        + P.grp_el(G1).scale(pc(0, 2, 0, 2, 2, 1) * ll3)
    )


# -- generic linking datum -------------------------------------------------------


@dataclass(frozen=True)
class LinkingDatum:
    """Group data, Cartan matrix, realizing characters, linking parameters.

    ``chi[k][i]`` holds the q-exponent of chi_{i+1} on group generator k;
    ``g_images[i]`` is g_{i+1} as an exponent vector.  ``lam`` maps ordered
    vertex pairs (1-based) to Coeff values of the target ring; pairs absent
    from the map have lambda = 0.  ``p`` is the order of q (None = generic).
    """

    cartan: tuple[tuple[int, ...], ...]
    links: frozenset[frozenset[int]]
    grp_names: tuple[str, ...]
    grp_orders: tuple[int, ...]
    g_images: tuple[tuple[int, ...], ...]
    chi: tuple[tuple[int, ...], ...]
    p: int | None
    params: tuple[str, ...] = ()
    lam: dict = None  # (i, j) -> Coeff; set via presentation_U/validate

    @property
    def theta(self) -> int:
        return len(self.cartan)

    def b_exponent(self, i: int, j: int) -> int:
        """q-exponent of b_ij = chi_j(g_i); 1-based."""
        return sum(gi * self.chi[k][j - 1] for k, gi in enumerate(self.g_images[i - 1]))

    def linkable(self, i: int, j: int) -> bool:
        return frozenset((i, j)) in self.links


def validate_linking_datum(datum: LinkingDatum,
                           ring: CoeffRing | None = None) -> list[str]:
    """Compatibility report: empty list means the datum is valid."""
    ring = ring or CoeffRing(datum.params, datum.p)
    out = []
    th = datum.theta
    a = datum.cartan
    lam = datum.lam or {}
    mod = datum.p

    def expo_zero(e: int) -> bool:
        return e % mod == 0 if mod else e == 0

    for (i, j), val in lam.items():
        if not datum.linkable(i, j) and not val.is_zero():
            out.append(f"lambda[{i},{j}] nonzero but {i} is not linkable to {j}")
    for link in datum.links:
        i, j = sorted(link)
        if a[i - 1][j - 1] == 0:
            lij = lam.get((i, j), ring.zero())
            lji = lam.get((j, i), ring.zero())
            # lambda_ij = -chi_j(g_i) lambda_ji
            if not (lij + lji.q_shift(datum.b_exponent(i, j))).is_zero():
                out.append(f"lambda[{i},{j}] != -chi_j(g_i) * lambda[{j},{i}]")
        for k in range(len(datum.grp_names)):
            e = (1 - a[i - 1][j - 1]) * datum.chi[k][i - 1] + datum.chi[k][j - 1]
            if not expo_zero(e):
                out.append(f"chi_{i}^(1-a_{i}{j}) * chi_{j} != 1 on group generator {k + 1}")
            e = (1 - a[j - 1][i - 1]) * datum.chi[k][j - 1] + datum.chi[k][i - 1]
            if not expo_zero(e):
                out.append(f"chi_{j}^(1-a_{j}{i}) * chi_{i} != 1 on group generator {k + 1}")
    # Cartan condition on the realized braiding
    for i in range(1, th + 1):
        for j in range(1, th + 1):
            if i == j:
                continue
            e = datum.b_exponent(i, j) + datum.b_exponent(j, i) \
                - a[i - 1][j - 1] * datum.b_exponent(i, i)
            if not expo_zero(e):
                out.append(f"b_{i}{j} * b_{j}{i} != b_{i}{i}^a_{i}{j}")
    return out


def ad_power_sum(P: Presentation, i: int, j: int, r: int, qi_exp: int, bij_exp: int) -> El:
    """(ad x_i)^r (x_j) as the explicit sum, in x-letter generators."""
    ring = P.ring
    xi, xj = P.gen_index(f"x{i}"), P.gen_index(f"x{j}")
    out = P.el({})
    for k in range(r + 1):
        binom = qcalc.q_binomial(r, k)
        # evaluate the q-binomial at q^qi_exp
        c = ring.zero()
        for e, coef in enumerate(binom.coeffs):
            if coef:
                c = c + ring.q(qi_exp * e, coef)
        c = c.q_shift(qi_exp * comb(k, 2) + bij_exp * k)
        if k % 2 == 1:
            c = -c
        word = (xi,) * (r - k) + (xj,) + (xi,) * k
        out = out + P.word_el(word, c)
    return out


def presentation_U(datum: LinkingDatum, budget: int | None = None,
                   validate: bool = True) -> Presentation:
    """The algebra of a linking datum as an oriented rewrite system.

    Quantum Serre relations are oriented toward the PBW order x_1 < ... <
    x_theta; for a_ij = 0 the rule is the two-letter exchange with the
    lambda term.  The emitted system is not certified confluent here; run
    check_local_confluence to certify specific instances.
    """
    if validate:
        bad = validate_linking_datum(datum)
        if bad:
            raise InvalidDatumError("; ".join(bad))
    th = datum.theta
    ring = CoeffRing(datum.params, datum.p)
    spec = GroupSpec(datum.grp_names, datum.grp_orders, datum.g_images, datum.chi)
    P = Presentation(
        name="U(datum)",
        gens=tuple(f"x{i}" for i in range(1, th + 1)),
        weights=(1,) * th,
        ring=ring,
        grp_names=datum.grp_names,
        grp_orders=datum.grp_orders,
        chi=datum.chi,
        multidegree=tuple(tuple(1 if k == i else 0 for k in range(th)) for i in range(th)),
        braid_exponents=tuple(tuple(datum.b_exponent(i, j) for j in range(1, th + 1))
                              for i in range(1, th + 1)),
    )
    if budget:
        P.budget = budget
    lam = datum.lam or {}
    a = datum.cartan

    def lam_rhs(i, j):
        val = lam.get((i, j))
        if val is None or val.is_zero():
            return P.el({})
        one_minus = P.one() - P.grp_el(spec.vec({i: 1 - a[i - 1][j - 1], j: 1}))
        return one_minus.scale(val)

    for i in range(1, th + 1):
        for j in range(1, th + 1):
            if i == j:
                continue
            aij = a[i - 1][j - 1]
            if aij == 0 and i > j:
                continue  # one exchange rule per unordered pair
            r = 1 - aij
            rel = ad_power_sum(P, i, j, r, datum.b_exponent(i, i), datum.b_exponent(i, j)) \
                - lam_rhs(i, j)
            # orient: divide by the coefficient of the largest monomial
            xi, xj = P.gen_index(f"x{i}"), P.gen_index(f"x{j}")
            if xj > xi:
                lhs = (xj,) + (xi,) * r
            else:
                lhs = (xi,) * r + (xj,)
            c = rel.terms.get((lhs, P.zero_grp()))
            if c is None:
                raise InvalidDatumError("Serre relation lost its leading monomial")
            inv = _unit_inverse(ring, c)
            rhs = (P.word_el(lhs) - rel.scale(inv)).normal_form()
            P.add_rule(lhs, rhs, normalize=False)
    for i in range(1, th + 1):
        g = P.reduce_grp(spec.vec({i: 1}))
        xi = P.gen_index(f"x{i}")
        P.coproducts[xi] = Tensor(P, {
            (((), g), ((xi,), P.zero_grp())): ring.one(),
            (((xi,), P.zero_grp()), ((), P.zero_grp())): ring.one(),
        })
    return P


def _unit_inverse(ring: CoeffRing, c: Coeff) -> Coeff:
    """Inverse of +-q^e (the only leading coefficients Serre rules produce)."""
    if len(c.terms) != 1:
        raise ValidationError(f"cannot invert non-unit coefficient {c}")
    (pk, qv), = c.terms.items()
    if any(pk):
        raise ValidationError("cannot invert a parameter-carrying coefficient")
    if ring.p:
        # qv is +-q^e reduced mod Phi_p: try all signed powers
        for e in range(ring.p):
            for sgn in (1, -1):
                if qv == ring.q_power(e, sgn):
                    return ring.q(-e % ring.p, sgn)
        raise ValidationError(f"leading coefficient {c} is not +-q^e")
    ((e, coef),) = qv
    if coef not in (1, -1):
        raise ValidationError(f"leading coefficient {c} is not a unit")
    return ring.q(-e, coef)


# -- the A_n root-vector parameter recursion ------------------------------------


def u_recursion(datum: LinkingDatum, gamma: dict, N: int,
                P: Presentation | None = None) -> dict[tuple[int, int], El]:
    """Group-algebra elements u_{i,j} for an admissible parameter family.

    ``gamma`` maps (i, j), 1 <= i < j <= n+1, to Coeff values of the target
    ring; missing pairs are zero.  Admissibility: gamma_{i,j} = 0 whenever
    chi_{i,j}^N != eps or h_{i,j} = 1, where chi_{i,j} and g_{i,j} are the
    products over i <= l < j and h_{i,j} = g_{i,j}^N.
    """
    P = P or presentation_U(datum)
    ring = P.ring
    n = datum.theta
    spec = GroupSpec(datum.grp_names, datum.grp_orders, datum.g_images, datum.chi)
    mod = datum.p

    def chiN_trivial(i, j):
        for k in range(len(datum.grp_names)):
            e = N * sum(datum.chi[k][l - 1] for l in range(i, j))
            if (e % mod if mod else e) != 0:
                return False
        return True

    def h_vec(i, j):
        return P.reduce_grp(spec.vec({l: N for l in range(i, j)}))

    for (i, j), val in gamma.items():
        if val.is_zero():
            continue
        if not chiN_trivial(i, j):
            raise NotAdmissibleError(f"gamma[{i},{j}] nonzero but chi_(i,j)^N != eps")
        if not any(h_vec(i, j)):
            raise NotAdmissibleError(f"gamma[{i},{j}] nonzero but h_(i,j) = 1")

    def B_exp(i, j, s, t):
        return sum(datum.b_exponent(l, h) for l in range(i, j) for h in range(s, t))

    one_minus_q_inv_N = _cpow(ring.one() - ring.q((-1) % (mod or 0) if mod else -1), N)
    out: dict[tuple[int, int], El] = {}
    for span in range(1, n + 1):
        for i in range(1, n + 2 - span):
            j = i + span
            g = gamma.get((i, j), ring.zero())
            u = (P.one() - P.grp_el(h_vec(i, j))).scale(g)
            for mid in range(i + 1, j):
                gp = gamma.get((i, mid), ring.zero())
                if gp.is_zero():
                    continue
                c = one_minus_q_inv_N.q_shift(B_exp(mid, j, i, mid) * comb(N, 2))
                u = u + out[(mid, j)].scale(c * gp)
            out[(i, j)] = u.normal_form()
    return out


# -- quantum binomial oracle ------------------------------------------------------


def quantum_binomial_check(n: int, N: int | None = None) -> bool:
    """normal_form((x+y)^n) == sum binom(n,i)_q y^i x^(n-i) with xy = q yx.

    Symbolic over Z[q, 1/q] when N is None, else over Z[q]/Phi_N.
    """
    ring = CoeffRing((), N)
    P = Presentation("qbinom", ("y", "x"), (1, 1), ring)
    y, x = 0, 1
    P.add_rule((x, y), P.word_el((y, x), ring.q(1)))
    s = P.word_el((x,)) + P.word_el((y,))
    power = P.one()
    for _ in range(n):
        power = (power * s).normal_form()
    expected = P.el({})
    for i in range(n + 1):
        c = ring.poly(qcalc.q_binomial(n, i))
        expected = expected + P.word_el((y,) * i + (x,) * (n - i), c)
    return power == expected
