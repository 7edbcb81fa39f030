"""Linkable Dynkin diagrams: DSL parser, validation, Cartan matrices, catalog classification.

Vertices are 1-based everywhere.  A diagram is immutable after construction;
all operations here are pure.

Arrow convention: an edge of multiplicity m >= 2 with ``arrow_target`` j and
other endpoint i contributes a_ij = -1, a_ji = -m.  The symmetric affine
A1(1) edge is its own kind (``a1aff``) and contributes a_ij = a_ji = -2.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    AffineComponentError,
    DiagramSyntaxError,
    UnknownTypeError,
    ValidationError,
)

MULT_NAMES = {1: "single", 2: "double", 3: "triple", 4: "quadruple"}
NAME_MULTS = {v: k for k, v in MULT_NAMES.items()}


@dataclass(frozen=True)
class EdgeKind:
    """Solid edge type: multiplicity 1..4 with an arrow target, or 'a1aff'."""

    multiplicity: int  # 1..4; the a1aff edge is flagged separately
    arrow_target: int | None = None
    a1aff: bool = False

    def __post_init__(self):
        if self.a1aff:
            if self.arrow_target is not None:
                raise ValidationError("a1aff edge carries no arrow")
            return
        if self.multiplicity not in (1, 2, 3, 4):
            raise ValidationError(f"edge multiplicity {self.multiplicity} not in 1..4")
        if self.multiplicity == 1 and self.arrow_target is not None:
            raise ValidationError("single edge carries no arrow")
        if self.multiplicity >= 2 and self.arrow_target is None:
            raise ValidationError("multiple edge needs an arrow target")


def single() -> EdgeKind:
    return EdgeKind(1)


def arrow(multiplicity: int, target: int) -> EdgeKind:
    return EdgeKind(multiplicity, target)


def a1aff() -> EdgeKind:
    return EdgeKind(2, None, a1aff=True)


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    kind: EdgeKind

    def other(self, w: int) -> int:
        return self.v if w == self.u else self.u

    def touches(self, w: int) -> bool:
        return w in (self.u, self.v)


@dataclass(frozen=True)
class ComponentType:
    family: str  # "A".."G" for finite; affine names like "A1(1)", "A4(2)"
    rank: int  # finite rank, or vertex count for affine entries

    @property
    def affine(self) -> bool:
        return "(" in self.family

    @property
    def name(self) -> str:
        return self.family if self.affine else f"{self.family}{self.rank}"

    def positive_root_count(self) -> int:
        if self.affine:
            raise AffineComponentError(f"{self.name} has no finite root system")
        n = self.rank
        if self.family == "A":
            return n * (n + 1) // 2
        if self.family in ("B", "C"):
            return n * n
        if self.family == "D":
            return n * (n - 1)
        if self.family == "E":
            return {6: 36, 7: 63, 8: 120}[n]
        if self.family == "F":
            return 24
        return 6  # G2


@dataclass(frozen=True)
class LinkableDynkinDiagram:
    vertex_count: int
    solid_edges: tuple[Edge, ...]
    dotted_links: frozenset[frozenset[int]]
    allow_self_links: bool = False

    def __post_init__(self):
        self._validate()

    # -- validation ---------------------------------------------------------

    def _validate(self):
        th = self.vertex_count
        if th < 1:
            raise ValidationError("diagram needs at least one vertex")
        seen_pairs = set()
        for e in self.solid_edges:
            for w in (e.u, e.v):
                if not 1 <= w <= th:
                    raise ValidationError(f"edge vertex {w} outside 1..{th}")
            if e.u == e.v:
                raise ValidationError("solid self-loop")
            pair = frozenset((e.u, e.v))
            if pair in seen_pairs:
                raise ValidationError(f"duplicate solid edge {set(pair)}")
            seen_pairs.add(pair)
            if e.kind.arrow_target is not None and e.kind.arrow_target not in (e.u, e.v):
                raise ValidationError("arrow target must be an endpoint of its edge")
        used = set()
        for link in self.dotted_links:
            if len(link) != 2:
                raise ValidationError("dotted link must join two distinct vertices")
            for w in link:
                if not 1 <= w <= th:
                    raise ValidationError(f"link vertex {w} outside 1..{th}")
                if w in used:
                    raise ValidationError(f"dotted links share vertex {w}")
                used.add(w)
        if not self.allow_self_links:
            comp_of = self._component_index()
            for link in self.dotted_links:
                a, b = sorted(link)
                if comp_of[a] == comp_of[b]:
                    raise ValidationError(
                        f"self-link {a}...{b} inside one component (allow_self_links is off)"
                    )
        classify_components(self)  # every component must classify

    def _component_index(self) -> dict[int, int]:
        parent = list(range(self.vertex_count + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.solid_edges:
            parent[find(e.u)] = find(e.v)
        return {v: find(v) for v in range(1, self.vertex_count + 1)}

    # -- views --------------------------------------------------------------

    def components(self) -> list[tuple[int, ...]]:
        comp_of = self._component_index()
        groups: dict[int, list[int]] = {}
        for v in range(1, self.vertex_count + 1):
            groups.setdefault(comp_of[v], []).append(v)
        return sorted((tuple(sorted(g)) for g in groups.values()), key=lambda t: t[0])

    def neighbours(self, v: int) -> list[tuple[int, Edge]]:
        return sorted(
            ((e.other(v), e) for e in self.solid_edges if e.touches(v)),
            key=lambda t: t[0],
        )

    def link_partner(self, v: int) -> int | None:
        for link in self.dotted_links:
            if v in link:
                (w,) = link - {v}
                return w
        return None

    def is_link_connected(self) -> bool:
        if self.vertex_count == 1:
            return True
        adj: dict[int, set[int]] = {v: set() for v in range(1, self.vertex_count + 1)}
        for e in self.solid_edges:
            adj[e.u].add(e.v)
            adj[e.v].add(e.u)
        for link in self.dotted_links:
            a, b = link
            adj[a].add(b)
            adj[b].add(a)
        seen = {1}
        stack = [1]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.vertex_count


# -- Cartan matrices ----------------------------------------------------------


def to_cartan(d: LinkableDynkinDiagram) -> tuple[tuple[int, ...], ...]:
    th = d.vertex_count
    a = [[2 if i == j else 0 for j in range(th)] for i in range(th)]
    for e in d.solid_edges:
        i, j = e.u - 1, e.v - 1
        if e.kind.a1aff:
            a[i][j] = a[j][i] = -2
        elif e.kind.multiplicity == 1:
            a[i][j] = a[j][i] = -1
        else:
            head = e.kind.arrow_target - 1
            tail = j if head == i else i
            a[tail][head] = -1
            a[head][tail] = -e.kind.multiplicity
    return tuple(tuple(row) for row in a)


def from_cartan(a) -> LinkableDynkinDiagram:
    """Inverse builder: reconstruct the (link-free) diagram of a Cartan matrix."""
    th = len(a)
    for i in range(th):
        if a[i][i] != 2:
            raise ValidationError("Cartan diagonal must be 2")
    edges = []
    for i in range(th):
        for j in range(i + 1, th):
            pair = (a[i][j], a[j][i])
            if pair == (0, 0):
                continue
            if 0 in pair:
                raise ValidationError("a_ij = 0 must be symmetric")
            if pair == (-1, -1):
                kind = single()
            elif pair == (-2, -2):
                kind = a1aff()
            elif pair[0] == -1 and pair[1] in (-2, -3, -4):
                kind = arrow(-pair[1], j + 1)
            elif pair[1] == -1 and pair[0] in (-2, -3, -4):
                kind = arrow(-pair[0], i + 1)
            else:
                raise ValidationError(f"off-diagonal pair {pair} not in the catalog")
            edges.append(Edge(i + 1, j + 1, kind))
    return LinkableDynkinDiagram(th, tuple(edges), frozenset())


# -- catalog ------------------------------------------------------------------
#
# Each entry is a list of edges over vertices 1..n.  Classification is
# isomorphism of decorated graphs (multiplicities and arrow directions
# respected).  Affine entries are named by their Kac label; their arrow
# layouts are pinned by the end-to-end traversal weights the genus formulas
# require (e.g. crossing A_{2k}(2) passes two like-oriented double edges).


def _chain(n, special=()):
    """Chain 1-2-...-n; ``special`` overrides edge k = (k, k+1) by position."""
    over = dict(special)
    return [Edge(k, k + 1, over.get(k, single())) for k in range(1, n)]


def _fork_chain(n_vertices, end_kind):
    """Tips 1,2 joined to 3, then a chain whose last edge is ``end_kind``."""
    n = n_vertices
    edges = [Edge(1, 3, single()), Edge(2, 3, single())]
    edges += [Edge(k, k + 1, single()) for k in range(3, n - 1)]
    edges.append(Edge(n - 1, n, end_kind))
    return edges


def catalog_edges(name: str) -> list[Edge] | None:
    """Edges of the catalog diagram with the given name, or None."""
    fam, num = name[0], name[1:]
    if "(" not in name:
        n = int(num)
        if fam == "A" and n >= 1:
            return _chain(n)
        if fam == "B" and n >= 2:
            return _chain(n, {n - 1: arrow(2, n)})
        if fam == "C" and n >= 3:
            return _chain(n, {n - 1: arrow(2, n - 1)})
        if fam == "D" and n >= 4:
            return _chain(n - 1) + [Edge(n - 2, n, single())]
        if fam == "E" and n in (6, 7, 8):
            return _chain(n - 1) + [Edge(3, n, single())]
        if fam == "F" and n == 4:
            return _chain(4, {2: arrow(2, 3)})
        if fam == "G" and n == 2:
            return [Edge(1, 2, arrow(3, 1))]
        return None
    r = int(name[1:name.index("(")])
    twist = name[name.index("(") + 1 : -1]
    if name == "A1(1)":
        return [Edge(1, 2, a1aff())]
    if name == "A2(2)":
        return [Edge(1, 2, arrow(4, 1))]
    if fam == "A" and twist == "1" and r >= 2:
        return _chain(r + 1) + [Edge(1, r + 1, single())]  # (r+1)-cycle
    if fam == "A" and twist == "2" and r % 2 == 0 and r >= 4:
        k = r // 2  # k+1 vertices, doubles at both ends pointing down-chain
        return _chain(k + 1, {1: arrow(2, 1), k: arrow(2, k)})
    if fam == "A" and twist == "2" and r % 2 == 1 and r >= 5:
        k = (r + 1) // 2  # k+1 vertices, fork + inward double end
        return _fork_chain(k + 1, arrow(2, k))
    if fam == "B" and twist == "1" and r >= 3:
        return _fork_chain(r + 1, arrow(2, r + 1))
    if fam == "C" and twist == "1" and r >= 2:
        return _chain(r + 1, {1: arrow(2, 2), r: arrow(2, r)})
    if fam == "D" and twist == "1" and r >= 4:
        n = r + 1
        return ([Edge(1, 3, single()), Edge(2, 3, single())]
                + [Edge(k, k + 1, single()) for k in range(3, n - 2)]
                + [Edge(n - 2, n - 1, single()), Edge(n - 2, n, single())])
    if fam == "D" and twist == "2" and r >= 3:
        return _chain(r, {1: arrow(2, 1), r - 1: arrow(2, r)})  # outward doubles
    if name == "E6(1)":
        return _chain(5) + [Edge(3, 6, single()), Edge(6, 7, single())]
    if name == "E7(1)":
        return _chain(7) + [Edge(4, 8, single())]
    if name == "E8(1)":
        return _chain(8) + [Edge(3, 9, single())]
    if name == "F4(1)":
        return _chain(5, {3: arrow(2, 4)})
    if name == "E6(2)":
        return _chain(5, {3: arrow(2, 3)})
    if name == "G2(1)":
        return _chain(3, {2: arrow(3, 3)})
    if name == "D4(3)":
        return _chain(3, {2: arrow(3, 2)})
    return None


def catalog_vertex_count(name: str) -> int:
    edges = catalog_edges(name)
    if edges is None:
        raise UnknownTypeError(f"no catalog entry {name}")
    return max(max(e.u, e.v) for e in edges) if edges else 1


def _candidate_names(n: int) -> list[str]:
    names = [f"A{n}"]
    if n >= 2:
        names.append(f"B{n}")
    if n >= 3:
        names.append(f"C{n}")
    if n >= 4:
        names.append(f"D{n}")
    if n in (6, 7, 8):
        names.append(f"E{n}")
    if n == 4:
        names.append("F4")
    if n == 2:
        names += ["G2", "A1(1)", "A2(2)"]
    if n >= 3:
        names += [f"A{n - 1}(1)", f"A{2 * (n - 1)}(2)", f"C{n - 1}(1)", f"D{n}(2)"]
    if n >= 4:
        names += [f"A{2 * n - 3}(2)", f"B{n - 1}(1)"]
    if n >= 5:
        names.append(f"D{n - 1}(1)")
    names += {3: ["G2(1)", "D4(3)"], 5: ["F4(1)", "E6(2)"],
              7: ["E6(1)"], 8: ["E7(1)"], 9: ["E8(1)"]}.get(n, [])
    return [m for m in names if catalog_edges(m) is not None]


def _incidence_code(e: Edge, seen_from: int) -> str:
    """Edge type as seen walking out of ``seen_from``; arrow-aware."""
    if e.kind.a1aff:
        return "f"
    m = e.kind.multiplicity
    if m == 1:
        return "s"
    return f"{m}{'t' if e.kind.arrow_target == e.other(seen_from) else 'b'}"


def find_isomorphism(vertices1, edges1, vertices2, edges2) -> dict[int, int] | None:
    """Decorated-graph isomorphism (multiplicities and arrows respected).

    Returns a vertex map edges1 -> edges2 or None.
    """
    vertices1, vertices2 = tuple(vertices1), tuple(vertices2)
    if len(vertices1) != len(vertices2) or len(edges1) != len(edges2):
        return None

    def adjacency(es):
        adj: dict[int, list[tuple[int, str]]] = {}
        for e in es:
            adj.setdefault(e.u, []).append((e.v, _incidence_code(e, e.u)))
            adj.setdefault(e.v, []).append((e.u, _incidence_code(e, e.v)))
        return adj

    a1, a2 = adjacency(edges1), adjacency(edges2)
    prof1 = {v: sorted(c for _, c in a1.get(v, [])) for v in vertices1}
    prof2 = {w: sorted(c for _, c in a2.get(w, [])) for w in vertices2}
    if sorted(prof1.values()) != sorted(prof2.values()):
        return None

    order = sorted(vertices1, key=lambda v: (-len(a1.get(v, [])), v))
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def extend(k: int) -> bool:
        if k == len(order):
            return True
        v = order[k]
        for w in vertices2:
            if w in used or prof1[v] != prof2[w]:
                continue
            pairs2 = set(a2.get(w, []))
            if any(x in mapping and (mapping[x], code) not in pairs2
                   for (x, code) in a1.get(v, [])):
                continue
            mapping[v] = w
            used.add(w)
            if extend(k + 1):
                return True
            del mapping[v]
            used.discard(w)
        return False

    return dict(mapping) if extend(0) else None


def _isomorphic(vertices: tuple[int, ...], edges: list[Edge], cat_edges: list[Edge]) -> bool:
    n = len(vertices)
    return find_isomorphism(vertices, edges, range(1, n + 1), cat_edges) is not None


def classify_components(d: LinkableDynkinDiagram) -> list[tuple[tuple[int, ...], ComponentType]]:
    """Match every solid component against the finite/affine catalog."""
    out = []
    for comp in d.components():
        vs = set(comp)
        edges = [e for e in d.solid_edges if e.u in vs]
        found = None
        for name in _candidate_names(len(comp)):
            if _isomorphic(comp, edges, catalog_edges(name)):
                if "(" in name:
                    found = ComponentType(name, len(comp))
                else:
                    found = ComponentType(name[0], int(name[1:]))
                break
        if found is None:
            raise UnknownTypeError(f"component {comp} matches no catalog diagram")
        out.append((comp, found))
    return out


def hopf_dimension(d: LinkableDynkinDiagram, group_order: int, n_per_component) -> int:
    """group_order * prod_I N_I^(number of positive roots of component I).

    ``n_per_component`` is one integer for all components or a map from
    component index (0-based, in classify order) to N_I.  Every N_I must
    exceed 2 and every component must be of finite type.
    """
    if group_order < 1:
        raise ValidationError("group order must be positive")
    dim = group_order
    for idx, (comp, ctype) in enumerate(classify_components(d)):
        if ctype.affine:
            raise AffineComponentError(f"component {comp} is affine ({ctype.name})")
        n_i = n_per_component if isinstance(n_per_component, int) else n_per_component[idx]
        if n_i <= 2:
            raise ValidationError(f"N for component {comp} must exceed 2")
        dim *= n_i ** ctype.positive_root_count()
    return dim


# -- DSL ------------------------------------------------------------------------


def parse_diagram(text: str, allow_self_links: bool = False) -> LinkableDynkinDiagram:
    """Parse the line-oriented diagram DSL.

    Statements: ``edge I J single|a1aff``, ``edge I J double|triple|quadruple T``
    (T = arrow-target vertex, an endpoint), ``link I J``, ``vertex I`` for an
    isolated vertex, ``allow_self_links``, and ``#`` comments.
    """
    edges: list[Edge] = []
    links: list[frozenset[int]] = []
    mentioned: set[int] = set()
    asl = allow_self_links

    def vert(tok: str, lineno: int) -> int:
        try:
            v = int(tok)
        except ValueError:
            raise DiagramSyntaxError(f"line {lineno}: bad vertex id {tok!r}") from None
        if v < 1:
            raise DiagramSyntaxError(f"line {lineno}: vertex ids start at 1")
        mentioned.add(v)
        return v

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if tok[0] == "allow_self_links" and len(tok) == 1:
            asl = True
        elif tok[0] == "vertex" and len(tok) == 2:
            vert(tok[1], lineno)
        elif tok[0] == "link" and len(tok) == 3:
            a, b = vert(tok[1], lineno), vert(tok[2], lineno)
            if a == b:
                raise ValidationError(f"line {lineno}: link endpoints must differ")
            links.append(frozenset((a, b)))
        elif tok[0] == "edge" and len(tok) in (4, 5):
            u, v = vert(tok[1], lineno), vert(tok[2], lineno)
            kindname = tok[3]
            if kindname in ("single", "a1aff"):
                if len(tok) != 4:
                    raise DiagramSyntaxError(f"line {lineno}: {kindname} takes no arrow")
                kind = single() if kindname == "single" else a1aff()
            elif kindname in NAME_MULTS:
                if len(tok) != 5:
                    raise DiagramSyntaxError(f"line {lineno}: {kindname} needs an arrow target")
                t = vert(tok[4], lineno)
                if t not in (u, v):
                    raise ValidationError(f"line {lineno}: arrow target must be an endpoint")
                kind = arrow(NAME_MULTS[kindname], t)
            else:
                raise DiagramSyntaxError(f"line {lineno}: unknown edge kind {kindname!r}")
            edges.append(Edge(u, v, kind))
        else:
            raise DiagramSyntaxError(f"line {lineno}: cannot parse {raw!r}")

    if not mentioned:
        raise DiagramSyntaxError("empty diagram")
    th = max(mentioned)
    if mentioned != set(range(1, th + 1)):
        missing = sorted(set(range(1, th + 1)) - mentioned)
        raise ValidationError(f"vertex ids must cover 1..{th}; missing {missing}")
    return LinkableDynkinDiagram(th, tuple(edges), frozenset(links), asl)


def print_diagram(d: LinkableDynkinDiagram) -> str:
    """Emit DSL text; parse_diagram(print_diagram(d)) reproduces d."""
    lines = []
    if d.allow_self_links:
        lines.append("allow_self_links")
    covered: set[int] = set()
    for e in sorted(d.solid_edges, key=lambda e: (min(e.u, e.v), max(e.u, e.v))):
        u, v = sorted((e.u, e.v))
        if e.kind.a1aff:
            lines.append(f"edge {u} {v} a1aff")
        elif e.kind.multiplicity == 1:
            lines.append(f"edge {u} {v} single")
        else:
            lines.append(f"edge {u} {v} {MULT_NAMES[e.kind.multiplicity]} {e.kind.arrow_target}")
        covered.update((u, v))
    for link in sorted(d.dotted_links, key=sorted):
        a, b = sorted(link)
        lines.append(f"link {a} {b}")
        covered.update((a, b))
    for v in range(1, d.vertex_count + 1):
        if v not in covered:
            lines.append(f"vertex {v}")
    return "\n".join(lines) + "\n"


def to_dot(d: LinkableDynkinDiagram) -> str:
    """DOT export; dotted links use style=dashed, arrows become directed decorations."""
    lines = ["graph linkdyn {"]
    for v in range(1, d.vertex_count + 1):
        lines.append(f"  {v} [shape=circle];")
    for e in sorted(d.solid_edges, key=lambda e: (min(e.u, e.v), max(e.u, e.v))):
        u, v = sorted((e.u, e.v))
        attrs = []
        if e.kind.a1aff:
            attrs += ['label="a1aff"', "penwidth=2"]
        elif e.kind.multiplicity > 1:
            attrs.append(f"penwidth={e.kind.multiplicity}")
            attrs.append(f'dir={"forward" if e.kind.arrow_target == v else "back"}')
        lines.append(f"  {u} -- {v}" + (f" [{', '.join(attrs)}]" if attrs else "") + ";")
    for link in sorted(d.dotted_links, key=sorted):
        a, b = sorted(link)
        lines.append(f"  {a} -- {b} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- convenience builders --------------------------------------------------------


def shift_edges(edges: list[Edge], offset: int) -> list[Edge]:
    out = []
    for e in edges:
        kind = e.kind
        if kind.arrow_target is not None:
            kind = EdgeKind(kind.multiplicity, kind.arrow_target + offset)
        out.append(Edge(e.u + offset, e.v + offset, kind))
    return out


def compose(components: list[str], links: list[tuple[int, int]] = (),
            allow_self_links: bool = False) -> LinkableDynkinDiagram:
    """Stack catalog components (vertex ids consecutive) and add dotted links.

    ``components`` are catalog names like "A3", "B2", "A1(1)".  Vertex ids of
    the k-th component follow those of the previous ones.
    """
    edges: list[Edge] = []
    offset = 0
    for name in components:
        edges.extend(shift_edges(catalog_edges(name), offset))
        offset += catalog_vertex_count(name)
    return LinkableDynkinDiagram(offset, tuple(edges),
                                 frozenset(frozenset(l) for l in links), allow_self_links)
