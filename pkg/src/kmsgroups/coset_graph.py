"""Coset graphs of finite rank-2 unipotent groups.

Vertices are the cosets gU_alpha and gU_beta, edges are the group elements;
the edge g joins gU_alpha to gU_beta.  A coset gU_k is keyed by its canonical
representative g * x_k(-g_k), whose k-coordinate is zero (the simple-root
coordinates add under multiplication, so this does not depend on g).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product

from .rank2 import Rank2Element
from .rootsystem import Rank2Type, positive_roots_rank2

MAX_EDGES = 10**7
ALPHA, BETA = (1, 0), (0, 1)


class GraphTooLarge(ValueError):
    pass


@dataclass
class CosetGraph:
    type: Rank2Type
    field: object
    edges: list = field(repr=False)  # Rank2Element per edge id
    ends: list = field(repr=False)  # (alpha-vertex id, beta-vertex id) per edge
    vertices: list = field(repr=False)  # ("a"|"b", coords of canonical representative)
    incident: list = field(repr=False)  # vertex id -> edge ids

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def degrees(self) -> set:
        return {len(es) for es in self.incident}

    def neighbours(self, v: int):
        for e in self.incident[v]:
            a, b = self.ends[e]
            yield b if a == v else a

    def edge_list(self) -> str:
        """``u v`` per edge, preceded by a ``# id side coords`` vertex legend."""
        lines = [f"# {k} {side} {' '.join(map(str, c))}" for k, (side, c) in enumerate(self.vertices)]
        lines += [f"{a} {b}" for a, b in self.ends]
        return "\n".join(lines)


def build(t: Rank2Type | str, field_) -> CosetGraph:
    t = Rank2Type(t) if isinstance(t, str) else t
    elems = list(field_.elements())
    n_edges = len(elems) ** t.nroots
    if n_edges > MAX_EDGES:
        raise GraphTooLarge(f"{n_edges} edges exceeds the limit of {MAX_EDGES}")
    vid: dict = {}
    vertices, incident, edges, ends = [], [], [], []

    def vertex(key):
        k = vid.get(key)
        if k is None:
            k = vid[key] = len(vertices)
            vertices.append(key)
            incident.append([])
        return k

    for coords in product(elems, repeat=t.nroots):
        g = Rank2Element(t, coords, field_)
        ka = vertex(("a", g.times_letter(ALPHA, -g.coord(ALPHA)).coords))
        kb = vertex(("b", g.times_letter(BETA, -g.coord(BETA)).coords))
        e = len(edges)
        edges.append(g)
        ends.append((ka, kb))
        incident[ka].append(e)
        incident[kb].append(e)
    return CosetGraph(t, field_, edges, ends, vertices, incident)


def _shortest_cycle_through(G: CosetGraph, root: int) -> float:
    dist = {root: 0}
    parent_edge = {root: None}
    queue = deque([root])
    best = float("inf")
    while queue:
        u = queue.popleft()
        if 2 * dist[u] + 1 >= best:
            break
        for e in G.incident[u]:
            if e == parent_edge[u]:
                continue
            a, b = G.ends[e]
            w = b if a == u else a
            if w not in dist:
                dist[w] = dist[u] + 1
                parent_edge[w] = e
                queue.append(w)
            else:
                best = min(best, dist[u] + dist[w] + 1)
    return best


def girth(G: CosetGraph, exhaustive: bool = False) -> float:
    """Length of a shortest cycle (inf for a forest).

    The group acts transitively on each colour class and every cycle meets both,
    so one BFS root per class suffices unless ``exhaustive`` is set.
    """
    roots = range(G.n_vertices) if exhaustive else {G.ends[0][0], G.ends[0][1]}
    return min((_shortest_cycle_through(G, r) for r in roots), default=float("inf"))


def cycle_decomposition(G: CosetGraph) -> list[int]:
    """Cycle lengths (in edges) of a graph whose vertices all have degree 2."""
    if G.degrees() != {2}:
        raise ValueError(f"vertex degrees are {sorted(G.degrees())}, not all 2")
    seen = [False] * G.n_vertices
    out = []
    for s in range(G.n_vertices):
        if seen[s]:
            continue
        size, stack = 0, [s]
        seen[s] = True
        while stack:
            u = stack.pop()
            size += 1
            for w in G.neighbours(u):
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        out.append(size)  # a cycle has as many edges as vertices
    return sorted(out)


def word_lengths(t: Rank2Type | str, field_) -> dict:
    """Word length of every group element in the letters U_alpha and U_beta (BFS from 1)."""
    t = Rank2Type(t) if isinstance(t, str) else t
    nonzero = [a for a in field_.elements() if a]
    one = Rank2Element.identity(t, field_)
    dist = {one.coords: 0}
    queue = deque([one])
    while queue:
        g = queue.popleft()
        d = dist[g.coords]
        for root in (ALPHA, BETA):
            for a in nonzero:
                h = g.times_letter(root, a)
                if h.coords not in dist:
                    dist[h.coords] = d + 1
                    queue.append(h)
    return dist


def edge_distance(G: CosetGraph, g: Rank2Element, h: Rank2Element) -> float:
    """Distance between the edges g and h: the word length of h^-1 g."""
    table = G.__dict__.get("_lengths")
    if table is None:
        table = G._lengths = word_lengths(G.type, G.field)
    return table.get((h.inverse() * g).coords, float("inf"))


def link_roots(t: Rank2Type | str) -> list[tuple[int, int]]:
    """s_beta(alpha) and s_alpha(beta) in local coordinates."""
    t = Rank2Type(t) if isinstance(t, str) else t
    roots = positive_roots_rank2(t)
    # the highest root with beta-coefficient 1 is s_alpha(beta)
    s_alpha_beta = max(r for r in roots if r[1] == 1)
    return sorted({(1, 1), s_alpha_beta})


def check_distance_in_link(t: Rank2Type | str, field_) -> bool:
    """Every two distinct elements of the root groups U_{s_j(alpha_i)} are at distance >= m + 1.

    Pairs in different components (possible when U_alpha, U_beta do not generate) count as infinitely far.
    """
    t = Rank2Type(t) if isinstance(t, str) else t
    if t.m not in (3, 4, 6):
        raise ValueError("distance-in-link needs m in {3, 4, 6}")
    lengths = word_lengths(t, field_)
    one = Rank2Element.identity(t, field_)
    for root in link_roots(t):
        for a in field_.elements():
            for b in field_.elements():
                if a == b:
                    continue
                g = one.times_letter(root, a)
                h = one.times_letter(root, b)
                if lengths.get((h.inverse() * g).coords, float("inf")) < t.m + 1:
                    return False
    return True


def girth_report(rows) -> str:
    """TSV with columns type, field, girth, cycles."""
    lines = ["type\tfield\tgirth\tcycles"]
    for tag, fname, g, cycles in rows:
        lines.append(f"{tag}\t{fname}\t{g}\t{cycles if cycles is not None else '-'}")
    return "\n".join(lines)
