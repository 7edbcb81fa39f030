"""Symbolic linkable braiding matrices and their independent verifier.

Entries are units q^e * prod z_s^{k_s}: a power of one primitive d-th root of
unity q (exponent mod d; d = 0 means "generic order", exponents over Z) times
integer powers of free symbols.  The verifier only uses the defining
conditions, never the construction, so the two sides check each other.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import cycles as cy
from .diagram import LinkableDynkinDiagram, to_cartan
from .errors import (
    NonInvertibleDivisorError,
    NotDecidedError,
    ValidationError,
)
from .exist import Decision


def _norm_exp(e: int, d: int) -> int:
    return e % d if d else e


@dataclass(frozen=True)
class SymbolicUnit:
    """q^q_exponent * prod z^k over z_powers; multiplication adds exponents."""

    d: int
    q_exponent: int
    z_powers: tuple[tuple[str, int], ...] = ()

    @staticmethod
    def make(d: int, q_exponent: int = 0, z_powers: dict | None = None) -> "SymbolicUnit":
        zp = tuple(sorted((s, k) for s, k in (z_powers or {}).items() if k != 0))
        return SymbolicUnit(d, _norm_exp(q_exponent, d), zp)

    def zdict(self) -> dict:
        return dict(self.z_powers)

    def __mul__(self, other: "SymbolicUnit") -> "SymbolicUnit":
        assert self.d == other.d
        z = self.zdict()
        for s, k in other.z_powers:
            z[s] = z.get(s, 0) + k
        return SymbolicUnit.make(self.d, self.q_exponent + other.q_exponent, z)

    def inverse(self) -> "SymbolicUnit":
        return SymbolicUnit.make(self.d, -self.q_exponent,
                                 {s: -k for s, k in self.z_powers})

    def __pow__(self, n: int) -> "SymbolicUnit":
        return SymbolicUnit.make(self.d, self.q_exponent * n,
                                 {s: k * n for s, k in self.z_powers})

    def is_one(self) -> bool:
        return _norm_exp(self.q_exponent, self.d) == 0 and not self.z_powers

    def as_json(self) -> dict:
        return {"q": self.q_exponent, "z": dict(self.z_powers)}

    def __repr__(self):
        parts = []
        if self.q_exponent or not self.z_powers:
            parts.append(f"q^{self.q_exponent}" if self.q_exponent != 1 else "q")
        for s, k in self.z_powers:
            parts.append(f"{s}^{k}" if k != 1 else s)
        return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class BraidingMatrix:
    d: int  # order of q; 0 = generic (exponents over Z)
    entries: tuple[tuple[SymbolicUnit, ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij) -> SymbolicUnit:
        i, j = ij
        return self.entries[i - 1][j - 1]  # 1-based, like vertex ids

    def as_json(self) -> dict:
        return {"d": self.d,
                "entries": [[u.as_json() for u in row] for row in self.entries]}

    @staticmethod
    def from_json(data: dict) -> "BraidingMatrix":
        d = data["d"]
        rows = tuple(
            tuple(SymbolicUnit.make(d, cell["q"], cell.get("z", {})) for cell in row)
            for row in data["entries"])
        return BraidingMatrix(d, rows)


def _inverse_mod(a: int, d: int) -> int:
    a %= d
    g, x = _egcd(a, d)
    if g != 1:
        raise NonInvertibleDivisorError(f"{a} not invertible mod {d}")
    return x % d


def _egcd(a: int, b: int) -> tuple[int, int]:
    old_r, r = a, b
    old_x, x = 1, 0
    while r:
        qt = old_r // r
        old_r, r = r, old_r - qt * r
        old_x, x = x, old_x - qt * x
    return old_r, old_x


# -- diagonal propagation -------------------------------------------------------


def _diagonal_exponents(d: LinkableDynkinDiagram, order: int, seed_vertex: int,
                        affine: bool) -> list[int]:
    """BFS per the recursion: dotted edge negates, solid edge scales by a_uv/a_vu."""
    a = to_cartan(d)
    expo = {seed_vertex: 1}
    queue = [seed_vertex]
    adj: dict[int, list[tuple[int, str]]] = {v: [] for v in range(1, d.vertex_count + 1)}
    for e in d.solid_edges:
        adj[e.u].append((e.v, "solid"))
        adj[e.v].append((e.u, "solid"))
    for link in d.dotted_links:
        x, y = sorted(link)
        adj[x].append((y, "dotted"))
        adj[y].append((x, "dotted"))
    while queue:
        u = queue.pop(0)
        for (v, kind) in sorted(adj[u]):
            if v in expo:
                continue
            if kind == "dotted":
                expo[v] = _norm_exp(-expo[u], order)
            else:
                num, den = a[u - 1][v - 1], a[v - 1][u - 1]
                if not affine and (num, den) == (-2, -2):
                    # a1aff edges only occur in affine mode
                    raise ValidationError("a1aff edge in finite construction")
                ratio = (num * _inverse_mod(den, order)) % order
                expo[v] = (expo[u] * ratio) % order
            queue.append(v)
    if len(expo) != d.vertex_count:
        raise ValidationError("diagram is not link-connected")
    return [expo[v] for v in range(1, d.vertex_count + 1)]


def _construct(d: LinkableDynkinDiagram, dec: Decision, seed_vertex: int,
               order: int, affine: bool, all_z_one: bool) -> BraidingMatrix:
    a = to_cartan(d)
    th = d.vertex_count
    diag = _diagonal_exponents(d, order, seed_vertex, affine)
    unit = lambda e=0, z=None: SymbolicUnit.make(order, e, z)
    b: list[list[SymbolicUnit | None]] = [[None] * th for _ in range(th)]
    for i in range(th):
        b[i][i] = unit(diag[i])

    partner = {v: d.link_partner(v) for v in range(1, th + 1)}
    linked_pairs = sorted(tuple(sorted(l)) for l in d.dotted_links)
    z_counter = [0]

    def fresh_z() -> dict:
        z_counter[0] += 1
        return {} if all_z_one else {f"z{z_counter[0]}": 1}

    def setb(i, j, u: SymbolicUnit):
        assert b[i - 1][j - 1] is None, (i, j)
        b[i - 1][j - 1] = u

    # class 2: the linked pairs themselves
    for (i, j) in linked_pairs:
        setb(i, j, unit(-diag[i - 1]))
        setb(j, i, unit(-diag[j - 1]))

    # class 4: one instance per unordered pair of linked pairs
    for x in range(len(linked_pairs)):
        for y in range(x + 1, len(linked_pairs)):
            pair1, pair2 = linked_pairs[x], linked_pairs[y]
            labelled = None
            for (i, k) in (pair1, pair1[::-1]):
                for (j, l) in (pair2, pair2[::-1]):
                    if a[j - 1][k - 1] == 0 and a[i - 1][l - 1] == 0:
                        labelled = (i, k, j, l)
                        break
                if labelled:
                    break
            assert labelled is not None, "class-4 labelling must exist without self-links"
            i, k, j, l = labelled
            z = fresh_z()
            zinv = {s: -v for s, v in z.items()}
            aij = a[i - 1][j - 1]
            setb(j, i, unit(0, z))
            setb(k, j, unit(0, z))
            setb(i, j, unit(diag[i - 1] * aij, zinv))
            setb(l, i, unit(diag[i - 1] * aij, zinv))
            setb(j, k, unit(0, zinv))
            setb(k, l, unit(0, zinv))
            setb(i, l, unit(-diag[i - 1] * aij, z))
            setb(l, k, unit(-diag[i - 1] * aij, z))

    # class 3: one instance per (unlinked vertex j, linked pair {i,k})
    for j in range(1, th + 1):
        if partner[j] is not None:
            continue
        for (i, k) in linked_pairs:
            z = fresh_z()
            zinv = {s: -v for s, v in z.items()}
            setb(j, i, unit(0, z))
            setb(i, j, unit(diag[i - 1] * a[i - 1][j - 1], zinv))
            setb(j, k, unit(0, zinv))
            setb(k, j, unit(diag[k - 1] * a[k - 1][j - 1], z))

    # class 1: both vertices unlinked
    for i in range(1, th + 1):
        for j in range(i + 1, th + 1):
            if b[i - 1][j - 1] is not None:
                continue
            assert partner[i] is None and partner[j] is None
            z = fresh_z()
            zinv = {s: -v for s, v in z.items()}
            setb(j, i, unit(0, z))
            setb(i, j, unit(diag[i - 1] * a[i - 1][j - 1], zinv))

    rows = tuple(tuple(row) for row in b)
    return BraidingMatrix(order, rows)


def construct_finite(d: LinkableDynkinDiagram, dec: Decision, seed_vertex: int = 1,
                     order: int | None = None, all_z_one: bool = False) -> BraidingMatrix:
    """Construct a linkable braiding matrix for an accepted finite diagram."""
    if not dec.exists:
        raise NotDecidedError("decision is negative; nothing to construct")
    if dec.excluded_case:
        return construct_excluded(dec.excluded_case)
    chosen = order if order is not None else dec.valid_orders.default
    if chosen is None or chosen <= 2 or chosen % 2 == 0:
        raise NonInvertibleDivisorError(f"order {chosen} is not an admissible odd d > 2")
    if dec.valid_orders.divisors and chosen not in dec.valid_orders.divisors:
        raise NonInvertibleDivisorError(f"order {chosen} does not divide all cycle genera")
    return _construct(d, dec, seed_vertex, chosen, affine=False, all_z_one=all_z_one)


def construct_affine(d: LinkableDynkinDiagram, dec: Decision, seed_vertex: int = 1,
                     order: int | None = None, all_z_one: bool = False) -> BraidingMatrix:
    """Construct a homogeneous linkable braiding matrix (prime order > 3)."""
    if not dec.exists:
        raise NotDecidedError("decision is negative; nothing to construct")
    if dec.excluded_case:
        return construct_excluded(dec.excluded_case)
    chosen = order if order is not None else dec.valid_orders.default
    if chosen is None or chosen <= 3 or not _is_prime(chosen):
        raise NonInvertibleDivisorError(f"order {chosen} is not a prime > 3")
    if dec.valid_orders.divisors and chosen not in dec.valid_orders.divisors:
        raise NonInvertibleDivisorError(f"prime {chosen} does not divide all cycle genera")
    return _construct(d, dec, seed_vertex, chosen, affine=True, all_z_one=all_z_one)


EXCLUDED_NM = {"G2G2": (3, 3), "A1affA1aff": (1, 2), "A2affA2aff": (4, 4)}


def excluded_diagram(case: str) -> LinkableDynkinDiagram:
    from .diagram import compose

    comp = {"G2G2": "G2", "A1affA1aff": "A1(1)", "A2affA2aff": "A2(2)"}[case]
    return compose([comp, comp], [(1, 3), (2, 4)])


def construct_excluded(case: str, with_cycle: bool = True, order: int = 0) -> BraidingMatrix:
    """The explicit 4x4 matrices for the doubly-linked excluded pairs.

    Vertices 1 and 3 are the arrow heads (for G2/A2(2)); links 1...3, 2...4.
    ``order`` 0 keeps q generic.  Dropping the 2...4 link (with_cycle=False)
    only removes conditions, so the same matrix is returned.
    """
    if case not in EXCLUDED_NM:
        raise ValueError(f"unknown excluded case {case!r}")
    n, m = EXCLUDED_NM[case]
    u = lambda e=0, z=0: SymbolicUnit.make(order, e, {"z": z} if z else None)
    rows = (
        (u(1), u(-m, -1), u(-1), u(m, 1)),
        (u(0, 1), u(n), u(0, -1), u(-n)),
        (u(1), u(0, 1), u(-1), u(0, -1)),
        (u(-m, -1), u(n), u(m, 1), u(-n)),
    )
    return BraidingMatrix(order, rows)


# -- verifier --------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    kind: str  # "cartan" | "link" | "order"
    where: tuple
    detail: str


def verify(d: LinkableDynkinDiagram, b: BraidingMatrix, mode: str = "finite") -> list[Violation]:
    """Check the defining conditions; independent of any construction.

    (i) b_ij*b_ji = b_ii^a_ij for all i, j; (ii) b_ki^(1-a_ij)*b_kj = 1 for
    all k whenever i...j (both orientations of the pair); (iii) b_ii != 1,
    and in affine mode all diagonal entries have order exactly d (prime).
    """
    if b.size != d.vertex_count:
        raise ValidationError("matrix size does not match the diagram")
    a = to_cartan(d)
    th = d.vertex_count
    out: list[Violation] = []
    for i in range(1, th + 1):
        for j in range(1, th + 1):
            if i == j:
                continue
            lhs = b[i, j] * b[j, i]
            rhs = b[i, i] ** a[i - 1][j - 1]
            if lhs != rhs:
                out.append(Violation("cartan", (i, j),
                                     f"b[{i},{j}]*b[{j},{i}] = {lhs} != b[{i},{i}]^{a[i-1][j-1]} = {rhs}"))
    for link in sorted(d.dotted_links, key=sorted):
        for (i, j) in (tuple(sorted(link)), tuple(sorted(link))[::-1]):
            for k in range(1, th + 1):
                val = (b[k, i] ** (1 - a[i - 1][j - 1])) * b[k, j]
                if not val.is_one():
                    out.append(Violation("link", (i, j, k),
                                         f"b[{k},{i}]^(1-a_ij)*b[{k},{j}] = {val} != 1"))
    for i in range(1, th + 1):
        bii = b[i, i]
        if bii.z_powers or _norm_exp(bii.q_exponent, b.d) == 0:
            out.append(Violation("order", (i,), f"b[{i},{i}] = {bii} has q-order 1 or free symbols"))
        elif mode == "affine":
            if not (_is_prime(b.d) and b.d > 3):
                out.append(Violation("order", (i,), f"order {b.d} is not a prime > 3"))
    return out


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True
