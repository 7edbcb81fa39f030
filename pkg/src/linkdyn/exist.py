"""Existence decisions for (homogeneous) linkable braiding matrices.

Three modes share the same skeleton:

* ``decide_finite``   -- finite-type components, diagonal entries roots of unity;
* ``decide_affine``   -- finite+affine components, homogeneous prime order > 3;
* ``decide_nonroot``  -- finite-type, diagonal entries not roots of unity.

Condition codes: CD1 (two-vertex component with both vertices linkable),
CD2 (Cartan-entry equality across every pairing of disjoint dotted edges),
CD3 (cycle-genus divisibility), EXCLUDED_CASE, NOT_LINK_CONNECTED.

The doubly-linked two-vertex pairs G2...G2, A1(1)...A1(1), A2(2)...A2(2) are
excluded from the theorems; they are flagged and routed to the explicit
excluded-case matrices instead of being decided here.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import cycles as cy
from .diagram import LinkableDynkinDiagram, classify_components, to_cartan
from .errors import NotLinkConnectedError, SelfLinkPresentError, ZeroExponentError

_SMALL_PRIMES = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


@dataclass(frozen=True)
class ValidOrders:
    all_genera_zero: bool
    genus_gcd: int
    divisors: tuple[int, ...]  # admissible d (finite) or primes p (affine)
    default: int | None
    note: str = ""

    def as_json(self) -> dict:
        return {
            "all_genera_zero": self.all_genera_zero,
            "genus_gcd": self.genus_gcd,
            "divisors": list(self.divisors),
            "default": self.default,
            "note": self.note,
        }


@dataclass(frozen=True)
class Decision:
    exists: bool
    valid_orders: ValidOrders | None
    reasons: tuple[tuple[str, str], ...] = ()  # (code, detail)
    excluded_case: str | None = None  # "G2G2" | "A1affA1aff" | "A2affA2aff"
    mode: str = "finite"

    def __post_init__(self):
        assert self.exists == (not self.reasons)

    def as_json(self) -> dict:
        return {
            "exists": self.exists,
            "mode": self.mode,
            "valid_orders": self.valid_orders.as_json() if self.valid_orders else None,
            "reasons": [{"code": c, "detail": t} for c, t in self.reasons],
            "excluded_case": self.excluded_case,
        }


def _linkable_vertices(d: LinkableDynkinDiagram) -> set[int]:
    return {v for link in d.dotted_links for v in link}


def _detect_excluded(d: LinkableDynkinDiagram, comps) -> str | None:
    """Doubly-linked pair of G2 / A1(1) / A2(2) components."""
    if d.vertex_count != 4 or len(comps) != 2 or len(d.dotted_links) != 2:
        return None
    (c1, t1), (c2, t2) = comps
    if t1.name != t2.name or t1.name not in ("G2", "A1(1)", "A2(2)"):
        return None
    if _linkable_vertices(d) != set(range(1, 5)):
        return None
    return {"G2": "G2G2", "A1(1)": "A1affA1aff", "A2(2)": "A2affA2aff"}[t1.name]


def _check_cd1(d, comps, two_vertex_families) -> list[tuple[str, str]]:
    out = []
    linkable = _linkable_vertices(d)
    for comp, ctype in comps:
        if ctype.name in two_vertex_families and set(comp) <= linkable:
            out.append(("CD1", f"both vertices of {ctype.name} component {comp} are linkable"))
    return out


def _check_cd2(d) -> list[tuple[str, str]]:
    """Lemma-style equalities a_ij = a_kl across every pairing of dotted edges.

    With i...k and j...l the Cartan entries must satisfy a_ij = a_kl and
    a_ji = a_lk; each unordered pair of dotted edges is tested under both
    endpoint pairings.  A violation pinpoints the mismatching pair.
    """
    a = to_cartan(d)
    out = []
    links = sorted(map(sorted, d.dotted_links))
    for x in range(len(links)):
        for y in range(x + 1, len(links)):
            (i, k), (j, l) = links[x], links[y]
            # both endpoint pairings: (i,j) vs (k,l) and (k,j) vs (i,l)
            for (pi, pk) in ((i, k), (k, i)):
                pj, pl = j, l
                if a[pi - 1][pj - 1] != a[pk - 1][pl - 1] or a[pj - 1][pi - 1] != a[pl - 1][pk - 1]:
                    out.append((
                        "CD2",
                        f"dotted pairs {pi}...{pk} and {pj}...{pl}: "
                        f"a[{pi},{pj}]={a[pi-1][pj-1]}, a[{pk},{pl}]={a[pk-1][pl-1]}, "
                        f"a[{pj},{pi}]={a[pj-1][pi-1]}, a[{pl},{pk}]={a[pl-1][pk-1]}",
                    ))
    return out


def _divisors(n: int) -> list[int]:
    return [k for k in range(1, n + 1) if n % k == 0]


def decide_finite(d: LinkableDynkinDiagram, allowed_orders=None,
                  budget: int = cy.DEFAULT_CYCLE_BUDGET) -> Decision:
    """Existence of a linkable braiding matrix (Cartan type, root of unity)."""
    if any(len({*link}) == 2 and _same_component(d, link) for link in d.dotted_links):
        raise SelfLinkPresentError(
            "diagram has self-links; use the selflink machinery instead")
    if not d.is_link_connected():
        raise NotLinkConnectedError("decision requires a link-connected diagram")
    comps = classify_components(d)
    for comp, ctype in comps:
        if ctype.affine:
            raise ValueError(f"decide_finite on affine component {ctype.name}; use decide_affine")

    case = _detect_excluded(d, comps)
    if case == "G2G2":
        vo = ValidOrders(True, 0, (), None, "excluded case: explicit matrix, any order with q^n != 1")
        return Decision(True, vo, (), case, "finite")

    reasons = _check_cd1(d, comps, ("G2",)) + _check_cd2(d)
    has_g2 = any(ctype.name == "G2" for _, ctype in comps)

    genera = []
    for c in cy.enumerate_cycles(d, budget=budget):
        genera.append(cy.cycle_metrics(d, c, "finite").genus_finite)
    nonzero = [g for g in genera if g]
    gcd = math.gcd(*nonzero) if nonzero else 0
    if not nonzero:
        default = 5 if has_g2 else 3
        if allowed_orders is not None:
            ok = sorted(x for x in allowed_orders if x > 2 and not (has_g2 and x % 3 == 0))
            vo = ValidOrders(True, 0, tuple(ok), ok[0] if ok else None,
                             "all genera zero; any order > 2" + (" coprime to 3" if has_g2 else ""))
            if not ok:
                reasons.append(("CD3", "allowed-orders filter leaves no admissible order"))
        else:
            vo = ValidOrders(True, 0, (), default,
                             "all genera zero; any order > 2" + (" coprime to 3" if has_g2 else ""))
    else:
        ds = [k for k in _divisors(gcd) if k > 2 and not (has_g2 and k % 3 == 0)]
        if allowed_orders is not None:
            ds = [k for k in ds if k in set(allowed_orders)]
        if not ds:
            reasons.append(("CD3", f"cycle genera {sorted(set(nonzero))} admit no common order d > 2"
                                   + (" coprime to 3" if has_g2 else "")))
        vo = ValidOrders(False, gcd, tuple(ds), ds[0] if ds else None, "")
    if reasons:
        return Decision(False, None, tuple(reasons), None, "finite")
    return Decision(True, vo, (), None, "finite")


def decide_affine(d: LinkableDynkinDiagram, allowed_orders=None,
                  budget: int = cy.DEFAULT_CYCLE_BUDGET) -> Decision:
    """Existence of a homogeneous linkable braiding matrix (prime order > 3)."""
    if any(_same_component(d, link) for link in d.dotted_links):
        raise SelfLinkPresentError(
            "diagram has self-links; use the selflink machinery instead")
    if not d.is_link_connected():
        raise NotLinkConnectedError("decision requires a link-connected diagram")
    comps = classify_components(d)

    case = _detect_excluded(d, comps)
    if case in ("A1affA1aff", "A2affA2aff"):
        vo = ValidOrders(True, 0, (), None, "excluded case: explicit matrix")
        return Decision(True, vo, (), case, "affine")

    reasons = _check_cd1(d, comps, ("A1(1)", "A2(2)")) + _check_cd2(d)
    genera = []
    for c in cy.enumerate_cycles(d, budget=budget):
        genera.append(cy.cycle_metrics(d, c, "affine").genus_affine)
    nonzero = [g for g in genera if g]
    gcd = math.gcd(*nonzero) if nonzero else 0
    if not nonzero:
        primes = [p for p in _SMALL_PRIMES if p > 3]
        if allowed_orders is not None:
            primes = [p for p in primes if p in set(allowed_orders)]
        vo = ValidOrders(True, 0, (), primes[0] if primes else None,
                         "all genera zero; any prime > 3")
        if allowed_orders is not None and not primes:
            reasons.append(("CD3", "allowed-orders filter leaves no admissible prime"))
    else:
        ps = [p for p in _prime_divisors(gcd) if p > 3]
        if allowed_orders is not None:
            ps = [p for p in ps if p in set(allowed_orders)]
        if not ps:
            reasons.append(("CD3", f"no prime > 3 divides all cycle genera (gcd {gcd})"))
        vo = ValidOrders(False, gcd, tuple(ps), ps[0] if ps else None, "")
    if reasons:
        return Decision(False, None, tuple(reasons), None, "affine")
    return Decision(True, vo, (), None, "affine")


def decide_nonroot(d: LinkableDynkinDiagram, budget: int = cy.DEFAULT_CYCLE_BUDGET) -> Decision:
    """Existence with diagonal entries that are not roots of unity.

    Requires every cycle to have an even dotted count and balanced double
    edges, i.e. genus zero everywhere.
    """
    if any(_same_component(d, link) for link in d.dotted_links):
        raise SelfLinkPresentError(
            "diagram has self-links; use the selflink machinery instead")
    if not d.is_link_connected():
        raise NotLinkConnectedError("decision requires a link-connected diagram")
    comps = classify_components(d)
    for comp, ctype in comps:
        if ctype.affine:
            raise ValueError(f"decide_nonroot needs finite type; {ctype.name} found")
    if _detect_excluded(d, comps) == "G2G2":
        return Decision(False, None, (("EXCLUDED_CASE", "G2...G2 doubly linked"),), None, "nonroot")

    reasons = _check_cd1(d, comps, ("G2",)) + _check_cd2(d)
    for c in cy.enumerate_cycles(d, budget=budget):
        m = cy.cycle_metrics(d, c, "finite")
        if m.l % 2 != 0 or m.w2 != 0:
            reasons.append(("CD3", f"cycle {c.vertices}: dotted count {m.l}, "
                                   f"double-edge imbalance {m.w2} (genus {m.genus_finite})"))
    if reasons:
        return Decision(False, None, tuple(reasons), None, "nonroot")
    vo = ValidOrders(True, 0, (), None, "diagonal entries of infinite order")
    return Decision(True, vo, (), None, "nonroot")


def self_link_order_constraint(a_ij: int, a_ji: int) -> set[int]:
    """Admissible diagonal orders when neighbouring vertices are self-linked.

    The order of b_ii must divide |a_ij*a_ji - a_ij - a_ji|; returns that
    number's divisors greater than 1.
    """
    if a_ij == 0:
        raise ValueError("self_link_order_constraint needs neighbouring vertices (a_ij != 0)")
    k = abs(a_ij * a_ji - a_ij - a_ji)
    if k == 0:
        raise ZeroExponentError("order constraint degenerates: exponent expression is 0")
    return {x for x in _divisors(k) if x > 1}


def _same_component(d: LinkableDynkinDiagram, link) -> bool:
    comp_of = d._component_index()
    a, b = link
    return comp_of[a] == comp_of[b]


def _prime_divisors(n: int) -> list[int]:
    out = []
    k = 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out
