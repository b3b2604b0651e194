"""Marked trees with legs.

Stable trees are generated from laminar families of clusters: orient every
edge away from the vertex carrying leg 1 and record the marks beyond it.
Such a family determines the tree, which makes the cluster set a canonical
key.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import InputError, InvariantViolation, TooFewMarks
from .tangency import Tangency, as_tangency, mask_to_marks, subset_class

Vec = tuple[int, int]


@dataclass(frozen=True)
class MarkedTree:
    """Tree with ``vertices`` vertices, finite ``edges`` and one leg per mark.

    ``legs[i]`` is the vertex carrying mark ``i + 1``.
    """

    vertices: int
    edges: tuple[tuple[int, int], ...]
    legs: tuple[int, ...]

    def __post_init__(self):
        if len(self.edges) != self.vertices - 1:
            raise InvariantViolation("a tree on k vertices has k - 1 edges")
        for u, v in self.edges:
            if not (0 <= u < self.vertices and 0 <= v < self.vertices) or u == v:
                raise InvariantViolation(f"bad edge {(u, v)}")
        for v in self.legs:
            if not 0 <= v < self.vertices:
                raise InvariantViolation(f"leg on missing vertex {v}")
        seen = {0}
        stack = [0]
        adj = self.adjacency
        while stack:
            x = stack.pop()
            for y, _ in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != self.vertices:
            raise InvariantViolation("graph is not connected")

    @property
    def n(self) -> int:
        return len(self.legs)

    @cached_property
    def adjacency(self) -> list[list[tuple[int, int]]]:
        """For each vertex, its ``(neighbour, edge index)`` pairs."""
        adj = [[] for _ in range(self.vertices)]
        for k, (u, v) in enumerate(self.edges):
            adj[u].append((v, k))
            adj[v].append((u, k))
        return adj

    def legs_at(self, v: int) -> list[int]:
        return [i + 1 for i, x in enumerate(self.legs) if x == v]

    def valence(self, v: int) -> int:
        return len(self.adjacency[v]) + sum(1 for x in self.legs if x == v)

    def is_stable(self) -> bool:
        return all(self.valence(v) >= 3 for v in range(self.vertices))

    @cached_property
    def splits(self) -> tuple[int, ...]:
        """Mask of the marks on the first endpoint's side of each edge."""
        out = []
        for k, (u, v) in enumerate(self.edges):
            mask = 0
            stack = [u]
            seen = {u, v}
            while stack:
                x = stack.pop()
                for m in self.legs_at(x):
                    mask |= 1 << (m - 1)
                for y, _ in self.adjacency[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            out.append(mask)
        return tuple(out)

    def key(self) -> tuple[int, ...]:
        """Isomorphism invariant for trees whose unstable vertices are bivalent."""
        return tuple(sorted(subset_class(s, self.n) for s in self.splits))

    def to_json(self) -> dict:
        return {
            "vertices": self.vertices,
            "edges": [list(e) for e in self.edges],
            "legs": {str(i + 1): v for i, v in enumerate(self.legs)},
        }

    @classmethod
    def from_json(cls, data) -> "MarkedTree":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            k = int(data["vertices"])
            edges = tuple((int(u), int(v)) for u, v in data["edges"])
            legs_map = {int(i): int(v) for i, v in data["legs"].items()}
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed tree JSON: {exc}") from None
        n = len(legs_map)
        if sorted(legs_map) != list(range(1, n + 1)):
            raise InputError("legs must be numbered 1..n")
        return cls(k, edges, tuple(legs_map[i] for i in range(1, n + 1)))


# ---------------------------------------------------------------------------
# stable trees


def _laminar_families(candidates: Sequence[int]):
    """All families of pairwise nested-or-disjoint masks from ``candidates``."""
    chosen: list[int] = []

    def rec(start):
        yield tuple(chosen)
        for i in range(start, len(candidates)):
            c = candidates[i]
            if all(c & d == 0 or c & d == c or c & d == d for d in chosen):
                chosen.append(c)
                yield from rec(i + 1)
                chosen.pop()

    yield from rec(0)


def tree_from_clusters(n: int, clusters: Iterable[int]) -> MarkedTree:
    """Stable tree whose edges cut off exactly the given clusters of marks ``2..n``.

    Vertex 0 carries leg 1; vertex ``k + 1`` is the ``k``-th cluster in
    increasing mask order, and edge ``k`` joins it to its parent.
    """
    cl = sorted(clusters)

    def parent(i):
        best = None
        for j, d in enumerate(cl):
            if j != i and cl[i] & d == cl[i] and (best is None or d.bit_count() < cl[best].bit_count()):
                best = j
        return 0 if best is None else best + 1

    edges = tuple((i + 1, parent(i)) for i in range(len(cl)))
    legs = [0] * n
    for mark in range(2, n + 1):
        bit = 1 << (mark - 1)
        best = None
        for j, d in enumerate(cl):
            if d & bit and (best is None or d.bit_count() < cl[best].bit_count()):
                best = j
        legs[mark - 1] = 0 if best is None else best + 1
    return MarkedTree(len(cl) + 1, edges, tuple(legs))


def stable_trees(n: int) -> list[MarkedTree]:
    """Every stable ``n``-marked tree, once each, in a fixed order."""
    if n < 3:
        raise TooFewMarks("stable trees need at least three marks")
    full = (1 << n) - 1
    candidates = [m for m in range(2, full, 2) if 2 <= m.bit_count() <= n - 2]
    fams = sorted(_laminar_families(candidates), key=lambda f: (len(f), sorted(f)))
    return [tree_from_clusters(n, f) for f in fams]


def clusters_of(tree: MarkedTree) -> tuple[int, ...]:
    """Sides of the edges not containing mark 1, sorted."""
    full = (1 << tree.n) - 1
    return tuple(sorted(s if not s & 1 else full ^ s for s in tree.splits))


def balanced_slopes(tree: MarkedTree, alpha) -> tuple[tuple[Vec, ...], tuple[Vec, ...]]:
    """Edge slopes pointing from ``edges[k][0]`` to ``edges[k][1]``, and leg slopes.

    An edge leaving the side with marks ``I`` has slope ``-alpha_I``.
    """
    alpha = as_tangency(alpha)
    if alpha.n != tree.n:
        raise InputError("tangency and tree have different numbers of marks")
    edge = []
    for s in tree.splits:
        x, y = alpha.subset_sum(s)
        edge.append((-x, -y))
    return tuple(edge), tuple(alpha.vectors)


def smooth_unstable(tree: MarkedTree) -> MarkedTree:
    """Remove every bivalent vertex, merging its edges or sliding its leg."""
    edges = [list(e) for e in tree.edges]
    legs = list(tree.legs)
    alive = set(range(tree.vertices))
    changed = True
    while changed:
        changed = False
        for v in sorted(alive):
            inc = [k for k, e in enumerate(edges) if e is not None and v in e]
            lv = [i for i, x in enumerate(legs) if x == v]
            if len(inc) + len(lv) != 2 or len(alive) == 1:
                continue
            if len(inc) == 2:
                a, b = inc
                x = edges[a][0] if edges[a][1] == v else edges[a][1]
                y = edges[b][0] if edges[b][1] == v else edges[b][1]
                edges[a] = [x, y]
                edges[b] = None
            elif len(inc) == 1:
                (a,) = inc
                x = edges[a][0] if edges[a][1] == v else edges[a][1]
                legs[lv[0]] = x
                edges[a] = None
            else:
                continue
            alive.discard(v)
            changed = True
            break
    relabel = {v: i for i, v in enumerate(sorted(alive))}
    new_edges = tuple((relabel[e[0]], relabel[e[1]]) for e in edges if e is not None)
    return MarkedTree(len(alive), new_edges, tuple(relabel[x] for x in legs))


def subdivide(tree: MarkedTree, edge: int | None = None, leg: int | None = None) -> MarkedTree:
    """Insert a bivalent vertex on a finite edge or on the leg with the given mark."""
    new = tree.vertices
    edges = list(tree.edges)
    legs = list(tree.legs)
    if edge is not None:
        u, v = edges[edge]
        edges[edge] = (u, new)
        edges.append((new, v))
    elif leg is not None:
        edges.append((legs[leg - 1], new))
        legs[leg - 1] = new
    else:
        raise InputError("choose an edge or a leg to subdivide")
    return MarkedTree(tree.vertices + 1, tuple(edges), tuple(legs))


def canonical_tree(tree: MarkedTree):
    """Relabel a stable tree into the numbering used by ``tree_from_clusters``.

    Returns ``(canonical, vertex_map, edge_map)`` where ``edge_map[k]`` is
    ``(new_index, flipped)`` for old edge ``k``.
    """
    if not tree.is_stable():
        raise InvariantViolation("tree is not stable")
    n = tree.n
    full = (1 << n) - 1
    clusters = clusters_of(tree)
    index = {c: i for i, c in enumerate(clusters)}
    vmap = {tree.legs[0]: 0}
    emap = {}
    for k, ((a, b), s) in enumerate(zip(tree.edges, tree.splits)):
        if s & 1:
            vmap[b] = index[full ^ s] + 1
            emap[k] = (index[full ^ s], True)
        else:
            vmap[a] = index[s] + 1
            emap[k] = (index[s], False)
    return tree_from_clusters(n, clusters), vmap, emap
