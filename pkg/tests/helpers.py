"""Shared builders for the test-suite: circles of copies, random linkable diagrams."""
from __future__ import annotations

import random

from linkdyn import diagram as dg


def circle_of(name: str, n: int) -> dg.LinkableDynkinDiagram:
    """n copies of a catalog component linked end-of-copy to start-of-next."""
    size = dg.catalog_vertex_count(name)
    comps = [name] * n
    links = []
    for k in range(n):
        last = k * size + size
        first_next = ((k + 1) % n) * size + 1
        links.append((last, first_next))
    return dg.compose(comps, links)


def double_copy_linking(name: str) -> dg.LinkableDynkinDiagram:
    """Two copies of a component with corresponding vertices linked."""
    size = dg.catalog_vertex_count(name)
    return dg.compose([name, name], [(v, v + size) for v in range(1, size + 1)])


POOL = ["A1", "A2", "A3", "B2", "B3", "G2"]
AFFINE_POOL = ["A1", "A2", "A3", "B2", "A1(1)", "A2(2)"]


def random_linkable_diagram(rng: random.Random, pool=POOL, max_components=4,
                            max_links=3, require_link_connected=True):
    """Random multi-component diagram with disjoint cross-component links."""
    for _ in range(200):
        k = rng.randint(2, max_components)
        comps = [rng.choice(pool) for _ in range(k)]
        d0 = dg.compose(comps)
        comp_of = {}
        for idx, comp in enumerate(d0.components()):
            for v in comp:
                comp_of[v] = idx
        pairs = [(a, b) for a in range(1, d0.vertex_count + 1)
                 for b in range(a + 1, d0.vertex_count + 1) if comp_of[a] != comp_of[b]]
        rng.shuffle(pairs)
        chosen, used = [], set()
        want = rng.randint(1, max_links)
        for (a, b) in pairs:
            if len(chosen) == want:
                break
            if a in used or b in used:
                continue
            chosen.append((a, b))
            used.update((a, b))
        if not chosen:
            continue
        d = dg.LinkableDynkinDiagram(d0.vertex_count, d0.solid_edges,
                                     frozenset(frozenset(p) for p in chosen))
        if require_link_connected and not d.is_link_connected():
            continue
        return d
    raise RuntimeError("could not sample a diagram")
