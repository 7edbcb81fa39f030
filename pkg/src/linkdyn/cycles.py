"""Cycle enumeration and the weight / length / genus / height metrics.

The diagram is treated as a multigraph whose edges are the solid edges plus
one parallel edge per dotted link, so a self-link across a solid edge yields
a 2-cycle.  Every simple cycle is produced exactly once, in canonical form:
it starts at its least vertex and of the two traversal directions the one
with the lexicographically smaller (vertex sequence, edge-id sequence) is
kept.  Results are sorted, so enumeration is deterministic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .diagram import Edge, LinkableDynkinDiagram
from .errors import BudgetExceededError, InvalidPathError, UnsupportedEdgeOnCycleError

DEFAULT_CYCLE_BUDGET = 10**6

DOTTED = "dotted"


@dataclass(frozen=True)
class MultiEdge:
    eid: int
    u: int
    v: int
    kind: object  # EdgeKind or the DOTTED marker

    def other(self, w: int) -> int:
        return self.v if w == self.u else self.u

    @property
    def dotted(self) -> bool:
        return self.kind is DOTTED


def multigraph_edges(d: LinkableDynkinDiagram) -> list[MultiEdge]:
    out = [MultiEdge(i, e.u, e.v, e.kind) for i, e in enumerate(d.solid_edges)]
    base = len(out)
    for i, link in enumerate(sorted(d.dotted_links, key=sorted)):
        a, b = sorted(link)
        out.append(MultiEdge(base + i, a, b, DOTTED))
    return out


@dataclass(frozen=True)
class Cycle:
    """Closed non-self-intersecting path: vertices[k] --edges[k]--> vertices[k+1 mod n]."""

    vertices: tuple[int, ...]
    edges: tuple[MultiEdge, ...]

    def __len__(self):
        return len(self.vertices)

    def steps(self, reverse: bool = False):
        n = len(self.vertices)
        if not reverse:
            for k in range(n):
                yield self.vertices[k], self.edges[k], self.vertices[(k + 1) % n]
        else:
            for k in range(n - 1, -1, -1):
                yield self.vertices[(k + 1) % n], self.edges[k], self.vertices[k]

    def rotated_to(self, v: int) -> "Cycle":
        """Same cycle and direction, starting at vertex v."""
        i = self.vertices.index(v)
        return Cycle(self.vertices[i:] + self.vertices[:i], self.edges[i:] + self.edges[:i])


@dataclass(frozen=True)
class CycleMetrics:
    l: int
    w2: int
    w3: int
    orientations_coincide: bool
    genus_finite: int | None
    genus_affine: int
    level0: tuple[int, ...]


@dataclass(frozen=True)
class HeightTrace:
    path_vertices: tuple[int, ...]
    values: tuple[int, ...]  # h after each vertex, starting value 0 included

    @property
    def height(self) -> int:
        return self.values[-1]


def enumerate_cycles(d: LinkableDynkinDiagram, budget: int = DEFAULT_CYCLE_BUDGET) -> list[Cycle]:
    """All simple cycles of the solid+dotted multigraph, canonical, sorted."""
    edges = multigraph_edges(d)
    incident: dict[int, list[MultiEdge]] = {v: [] for v in range(1, d.vertex_count + 1)}
    for e in edges:
        incident[e.u].append(e)
        incident[e.v].append(e)

    found: list[Cycle] = []

    def search(root: int, v: int, path_v: list[int], path_e: list[MultiEdge], on_path: set[int]):
        for e in incident[v]:
            w = e.other(v)
            if w == root:
                if len(path_v) >= 3 or (len(path_v) == 2 and e.eid != path_e[0].eid):
                    cand = Cycle(tuple(path_v), tuple(path_e) + (e,))
                    rev = Cycle((path_v[0],) + tuple(reversed(path_v[1:])),
                                tuple(reversed(cand.edges)))
                    key = (cand.vertices, tuple(x.eid for x in cand.edges))
                    rkey = (rev.vertices, tuple(x.eid for x in rev.edges))
                    if key <= rkey:
                        found.append(cand)
                        if len(found) > budget:
                            raise BudgetExceededError(f"more than {budget} cycles")
            elif w > root and w not in on_path:
                path_v.append(w)
                path_e.append(e)
                on_path.add(w)
                search(root, w, path_v, path_e, on_path)
                on_path.discard(w)
                path_e.pop()
                path_v.pop()

    for root in range(1, d.vertex_count + 1):
        search(root, root, [root], [], {root})
    found.sort(key=lambda c: (len(c.vertices), c.vertices, tuple(e.eid for e in c.edges)))
    return found


def _double_balance(c: Cycle, multiplicity: int, reverse: bool) -> int:
    """#with-orientation minus #against-orientation edges of the given multiplicity."""
    bal = 0
    for u, e, v in c.steps(reverse=reverse):
        if not e.dotted and not e.kind.a1aff and e.kind.multiplicity == multiplicity:
            bal += 1 if e.kind.arrow_target == v else -1
    return bal


def cycle_metrics(d: LinkableDynkinDiagram, c: Cycle, mode: str = "finite") -> CycleMetrics:
    """Weight/length/genus data of one cycle.

    finite mode refuses triple and quadruple edges on the cycle; affine mode
    weighs triple edges too and refuses only quadruple edges (which cannot
    lie on a cycle once the affine two-vertex condition holds).
    """
    if mode not in ("finite", "affine"):
        raise ValueError(f"unknown mode {mode!r}")
    mults = {e.kind.multiplicity for e in c.edges if not e.dotted and not e.kind.a1aff}
    if 4 in mults:
        raise UnsupportedEdgeOnCycleError("quadruple edge on a cycle")
    if mode == "finite" and 3 in mults:
        raise UnsupportedEdgeOnCycleError("triple edge on a finite-mode cycle")

    l = sum(1 for e in c.edges if e.dotted)
    bal2 = _double_balance(c, 2, reverse=False)
    bal3 = _double_balance(c, 3, reverse=False)
    w2, w3 = abs(bal2), abs(bal3)
    # natural orientation: the direction along which the balance is <= 0;
    # ties (weight 0) fall back to the stored canonical direction.
    coincide = w2 == 0 or w3 == 0 or (bal2 < 0) == (bal3 < 0)
    genus_finite: int | None = None
    if 3 not in mults:
        genus_finite = 2**w2 - (-1) ** l
    if coincide:
        genus_affine = 3**w3 * 2**w2 - (-1) ** l
    else:
        genus_affine = abs(3**w3 - 2**w2 * (-1) ** l)
    lvl = level0_vertices(d, c)
    return CycleMetrics(l, w2, w3, coincide, genus_finite, genus_affine, lvl)


def height(d: LinkableDynkinDiagram, i: int, j: int, path_edges, start: int | None = None) -> HeightTrace:
    """Height of i over j along the directed path given as a list of edges.

    Edges may be ``MultiEdge`` or solid ``Edge`` objects; the walk starts at j
    and must end at i without repeating a vertex.  Only double edges move the
    trace: +1 along the arrow, -1 against it but never below 0.
    """
    at = j if start is None else start
    verts = [at]
    values = [0]
    h = 0
    seen = {at}
    for e in path_edges:
        if not e.touches(at):
            raise InvalidPathError(f"edge {e} does not continue the path at {at}")
        nxt = e.other(at)
        if nxt in seen and not (nxt == i and e is path_edges[-1]):
            raise InvalidPathError(f"path repeats vertex {nxt}")
        kind = None if isinstance(e, MultiEdge) and e.dotted else e.kind
        if kind is not None and not kind.a1aff and kind.multiplicity == 2:
            if kind.arrow_target == nxt:
                h += 1
            elif h > 0:
                h -= 1
        at = nxt
        seen.add(at)
        verts.append(at)
        values.append(h)
    if at != i:
        raise InvalidPathError(f"path ends at {at}, not {i}")
    return HeightTrace(tuple(verts), tuple(values))


def _natural_steps(c: Cycle):
    """Steps of c along its natural orientation (ties: stored direction)."""
    bal = _double_balance(c, 2, reverse=False)
    return list(c.steps(reverse=bal > 0))


def absolute_height(d: LinkableDynkinDiagram, c: Cycle, v: int) -> int:
    steps = _natural_steps(c)
    k = next(i for i, (u, _, _) in enumerate(steps) if u == v)
    ordered = steps[k:] + steps[:k]
    h = 0
    for _, e, nxt in ordered:
        if not e.dotted and not e.kind.a1aff and e.kind.multiplicity == 2:
            if e.kind.arrow_target == nxt:
                h += 1
            elif h > 0:
                h -= 1
    return h


def level0_vertices(d: LinkableDynkinDiagram, c: Cycle) -> tuple[int, ...]:
    return tuple(v for v in sorted(set(c.vertices)) if absolute_height(d, c, v) == 0)


def genus_gcd(d: LinkableDynkinDiagram, mode: str = "finite",
              budget: int = DEFAULT_CYCLE_BUDGET) -> int:
    """gcd of the nonzero cycle genera; 0 when no cycle has positive genus."""
    g = 0
    for c in enumerate_cycles(d, budget=budget):
        m = cycle_metrics(d, c, mode)
        gc = m.genus_finite if mode == "finite" else m.genus_affine
        if gc:
            g = math.gcd(g, gc)
    return g


def cycle_report(d: LinkableDynkinDiagram, c: Cycle, mode: str = "finite") -> dict:
    """JSON-ready report for one cycle."""
    try:
        m = cycle_metrics(d, c, mode)
        genus_finite = m.genus_finite
        rest = m
    except UnsupportedEdgeOnCycleError:
        m = cycle_metrics(d, c, "affine")
        genus_finite = None
        rest = m
    return {
        "vertices": list(c.vertices),
        "l": rest.l,
        "w2": rest.w2,
        "w3": rest.w3,
        "genus_finite": genus_finite,
        "genus_affine": rest.genus_affine,
        "level0": list(rest.level0),
    }
