"""Combinatorial types of rational tropical maps into a complete planar fan.

A type is stored on its stable base tree: every stable vertex has a cone,
and every finite edge and leg carries a ``Chain`` listing the cones of the
bivalent vertices inserted where its image meets a ray or the origin,
together with the carrier cone of each piece in between. Edge chains run
from ``edges[k][0]`` to ``edges[k][1]``; leg chains run outward.

Realisable types are enumerated by cutting the space of tropical maps with
a fixed base tree (root position and edge lengths) by the finitely many
linear forms whose signs decide the type, and visiting every face of that
arrangement with one exact witness per face.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from .errors import (
    DegenerateSubset,
    InconsistentMap,
    InvariantViolation,
    NotARefinement,
    NotRealizable,
    OnWall,
    TransportInfeasible,
    UnsupportedConfiguration,
)
from .exactgeom import cross, dot, feasible_point, in_open_cone, integer_feasible_point, is_zero
from .fan import ConeRef, Fan2D, cone_map, map_cone, pushforward, refines
from .tangency import Tangency, as_tangency, walls_on
from .trees import (
    MarkedTree,
    balanced_slopes,
    canonical_tree,
    clusters_of,
    stable_trees,
    tree_from_clusters,
)

RatVec = tuple[Fraction, Fraction]


@dataclass(frozen=True, order=True)
class Chain:
    carriers: tuple[ConeRef, ...]
    cones: tuple[ConeRef, ...] = ()

    def __post_init__(self):
        if len(self.carriers) != len(self.cones) + 1:
            raise InvariantViolation("a chain has one more carrier than bivalent vertices")

    def reversed(self) -> "Chain":
        return Chain(self.carriers[::-1], self.cones[::-1])

    def __str__(self) -> str:
        parts = [str(self.carriers[0])]
        for c, s in zip(self.cones, self.carriers[1:]):
            parts += [f"<{c}>", str(s)]
        return " ".join(parts)


@dataclass(frozen=True)
class Witness:
    """Exact tropical map realising a type.

    ``positions`` and ``lengths`` are indexed like the vertices and finite
    edges of ``CombType.graph``; the first entries of ``positions`` are the
    stable vertices.
    """

    positions: tuple[RatVec, ...]
    lengths: tuple[Fraction, ...]
    stable: int

    @property
    def stable_positions(self) -> tuple[RatVec, ...]:
        return self.positions[: self.stable]


@dataclass(frozen=True)
class Expanded:
    graph: MarkedTree
    vertex_cones: tuple[ConeRef, ...]
    edge_carriers: tuple[ConeRef, ...]
    edge_slopes: tuple[tuple[int, int], ...]
    leg_carriers: tuple[ConeRef, ...]
    leg_slopes: tuple[tuple[int, int], ...]
    stable: int


@dataclass(frozen=True, eq=False)
class CombType:
    fan: Fan2D
    alpha: Tangency
    tree: MarkedTree
    vertex_cones: tuple[ConeRef, ...]
    edge_chains: tuple[Chain, ...]
    leg_chains: tuple[Chain, ...]
    witness: Witness | None = field(default=None, compare=False)

    def key(self) -> tuple:
        """Identifies the type independently of the tangency values."""
        return (clusters_of(self.tree), self.vertex_cones, self.edge_chains, self.leg_chains)

    def __eq__(self, other):
        if not isinstance(other, CombType):
            return NotImplemented
        return self.fan.rays == other.fan.rays and self.key() == other.key()

    def __hash__(self):
        return hash((self.fan.rays, self.key()))

    @property
    def n(self) -> int:
        return self.alpha.n

    @cached_property
    def slopes(self):
        return balanced_slopes(self.tree, self.alpha)

    @property
    def unstable_count(self) -> int:
        return sum(len(c.cones) for c in self.edge_chains + self.leg_chains)

    @cached_property
    def expanded(self) -> Expanded:
        edge_slopes, leg_slopes = self.slopes
        k = self.tree.vertices
        cones = list(self.vertex_cones)
        edges, carriers, slopes = [], [], []
        for (a, b), chain, m in zip(self.tree.edges, self.edge_chains, edge_slopes):
            prev = a
            for cone, car in zip(chain.cones, chain.carriers):
                cones.append(cone)
                edges.append((prev, k))
                carriers.append(car)
                slopes.append(m)
                prev = k
                k += 1
            edges.append((prev, b))
            carriers.append(chain.carriers[-1])
            slopes.append(m)
        legs = []
        for v, chain, m in zip(self.tree.legs, self.leg_chains, leg_slopes):
            prev = v
            for cone, car in zip(chain.cones, chain.carriers):
                cones.append(cone)
                edges.append((prev, k))
                carriers.append(car)
                slopes.append(m)
                prev = k
                k += 1
            legs.append(prev)
        graph = MarkedTree(k, tuple(edges), tuple(legs))
        return Expanded(
            graph,
            tuple(cones),
            tuple(carriers),
            tuple(slopes),
            tuple(c.carriers[-1] for c in self.leg_chains),
            tuple(leg_slopes),
            self.tree.vertices,
        )

    @property
    def graph(self) -> MarkedTree:
        return self.expanded.graph

    def check(self) -> None:
        """Raise ``InvariantViolation`` unless the data forms a valid type."""
        fan = self.fan
        tree = self.tree
        if tree != tree_from_clusters(tree.n, clusters_of(tree)):
            raise InvariantViolation("base tree is not in canonical numbering")
        if not tree.is_stable():
            raise InvariantViolation("base tree is not stable")
        if tree.n != self.alpha.n:
            raise InvariantViolation("tree and tangency disagree on the number of marks")
        if len(self.vertex_cones) != tree.vertices or len(self.edge_chains) != len(tree.edges):
            raise InvariantViolation("cone data does not match the tree")
        if len(self.leg_chains) != tree.n:
            raise InvariantViolation("one chain per leg is required")
        ex = self.expanded
        for c in ex.vertex_cones + ex.edge_carriers + ex.leg_carriers:
            if not fan.has_cone(c):
                raise InvariantViolation(f"{c} is not a cone of the fan")
        for c in ex.vertex_cones[ex.stable :]:
            if c.dim > 1:
                raise InvariantViolation(f"bivalent vertex sits in the open sector {c}")
        for chain in self.edge_chains + self.leg_chains:
            for a, b in zip(chain.carriers, chain.carriers[1:]):
                if a == b:
                    raise InvariantViolation("carriers on both sides of a bivalent vertex agree")
        for (u, w), car, m in zip(ex.graph.edges, ex.edge_carriers, ex.edge_slopes):
            _check_segment(ex.vertex_cones[u], ex.vertex_cones[w], car, m)
        for v, car, m in zip(ex.graph.legs, ex.leg_carriers, ex.leg_slopes):
            _check_leg(ex.vertex_cones[v], car, m)

    def describe(self) -> str:
        lines = [f"tree clusters {list(clusters_of(self.tree))}"]
        for v, c in enumerate(self.vertex_cones):
            lines.append(f"  vertex {v}: {c}")
        for k, ch in enumerate(self.edge_chains):
            lines.append(f"  edge {self.tree.edges[k]}: {ch}")
        for i, ch in enumerate(self.leg_chains):
            lines.append(f"  leg {i + 1}: {ch}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        ex = self.expanded
        return {
            "tree": self.tree.to_json(),
            "graph": ex.graph.to_json(),
            "vertex_cones": [c.to_json() for c in ex.vertex_cones],
            "carriers": {
                "edges": [c.to_json() for c in ex.edge_carriers],
                "legs": {str(i + 1): c.to_json() for i, c in enumerate(ex.leg_carriers)},
            },
            "slopes": {
                "edges": [list(m) for m in ex.edge_slopes],
                "legs": {str(i + 1): list(m) for i, m in enumerate(ex.leg_slopes)},
            },
        }


def _proper_faces(c: ConeRef) -> list[ConeRef]:
    if c.dim == 2:
        return [ConeRef.origin(), ConeRef.ray(c.gens[0]), ConeRef.ray(c.gens[1])]
    if c.dim == 1:
        return [ConeRef.origin()]
    return []


def _check_segment(a: ConeRef, b: ConeRef, car: ConeRef, m) -> None:
    if not (a.is_face_of(car) and b.is_face_of(car)):
        raise InvariantViolation(f"endpoint cones {a}, {b} are not faces of the carrier {car}")
    if not car.in_span(m):
        raise InvariantViolation(f"slope {m} is not in the span of {car}")
    for f in _proper_faces(car):
        if a.is_face_of(f) and b.is_face_of(f):
            raise InvariantViolation(f"carrier {car} is not minimal: both ends lie in {f}")


def _check_leg(a: ConeRef, car: ConeRef, m) -> None:
    if not a.is_face_of(car):
        raise InvariantViolation(f"leg start {a} is not a face of its carrier {car}")
    if not car.contains_vector(m):
        raise InvariantViolation(f"leg slope {m} points out of {car}")
    for f in _proper_faces(car):
        if a.is_face_of(f) and f.contains_vector(m):
            raise InvariantViolation(f"leg carrier {car} is not minimal: the leg stays in {f}")


def make_type(fan, alpha, tree, vertex_cones, edge_chains, leg_chains, check=True) -> CombType:
    """Build a type, relabelling the tree into canonical numbering."""
    alpha = as_tangency(alpha)
    ctree, vmap, emap = canonical_tree(tree)
    vc = [None] * ctree.vertices
    for old, new in vmap.items():
        vc[new] = vertex_cones[old]
    ec = [None] * len(ctree.edges)
    for old, (new, flipped) in emap.items():
        ch = edge_chains[old]
        ec[new] = ch.reversed() if flipped else ch
    c = CombType(fan, alpha, ctree, tuple(vc), tuple(ec), tuple(leg_chains))
    if check:
        c.check()
    return c


# ---------------------------------------------------------------------------
# realisability


def _relint_rows(cone: ConeRef, ix: int, iy: int, nv: int):
    """Equalities and strict inequalities putting variable point ``(ix, iy)`` in relint ``cone``."""
    eq, st = [], []

    def row(cx, cy):
        r = [0] * nv
        r[ix], r[iy] = cx, cy
        return r

    if cone.dim == 0:
        eq += [row(1, 0), row(0, 1)]
    elif cone.dim == 1:
        v = cone.gens[0]
        eq.append(row(v[1], -v[0]))
        st.append(row(v[0], v[1]))
    else:
        u, w = cone.gens
        st.append(row(-u[1], u[0]))
        st.append(row(w[1], -w[0]))
    return eq, st


def _position_rows(graph: MarkedTree, slopes, nv: int):
    """Each vertex position as a pair of linear forms in (root x, root y, edge lengths).

    Vertex 0 is the root; every edge adds its length times its slope.
    """
    rows = [None] * graph.vertices
    base_x = [0] * nv
    base_y = [0] * nv
    base_x[0], base_y[1] = 1, 1
    rows[0] = (base_x, base_y)
    stack = [0]
    while stack:
        x = stack.pop()
        for y, k in graph.adjacency[x]:
            if rows[y] is not None:
                continue
            sign = 1 if graph.edges[k] == (x, y) else -1
            rx, ry = list(rows[x][0]), list(rows[x][1])
            rx[2 + k] += sign * slopes[k][0]
            ry[2 + k] += sign * slopes[k][1]
            rows[y] = (rx, ry)
            stack.append(y)
    return rows


def _cone_rows(cone: ConeRef, rx, ry):
    """Equalities and strict inequalities putting the point ``(rx, ry)`` in relint ``cone``."""

    def comb(cx, cy):
        return [cx * a + cy * b for a, b in zip(rx, ry)]

    if cone.dim == 0:
        return [list(rx), list(ry)], []
    if cone.dim == 1:
        v = cone.gens[0]
        return [comb(v[1], -v[0])], [comb(v[0], v[1])]
    u, w = cone.gens
    return [], [comb(-u[1], u[0]), comb(w[1], -w[0])]


def is_realizable(c: CombType) -> Witness | None:
    """Exact witness map for the type, or None when no map has this type."""
    ex = c.expanded
    g = ex.graph
    ne = len(g.edges)
    nv = 2 + ne
    rows = _position_rows(g, ex.edge_slopes, nv)
    eq, st = [], []
    for (rx, ry), cone in zip(rows, ex.vertex_cones):
        e, s = _cone_rows(cone, rx, ry)
        eq += e
        st += s
    for k in range(ne):
        r = [0] * nv
        r[2 + k] = 1
        st.append(r)
    point = feasible_point(nv, eq, st)
    if point is None:
        return None
    positions = tuple(
        (sum(a * x for a, x in zip(rx, point)), sum(a * x for a, x in zip(ry, point))) for rx, ry in rows
    )
    return Witness(positions, tuple(point[2:]), ex.stable)


# ---------------------------------------------------------------------------
# construction from an explicit map


def _trace(fan: Fan2D, a, d, finite: bool):
    """Break parameters and cone data along ``a + t d`` for ``0 < t < 1`` or ``t > 0``.

    ``a`` and ``d`` are integer vectors; cones are found on integer
    multiples of the points, which does not change them.
    """
    ts = set()
    for v in fan.rays:
        c = cross(v, d)
        if c == 0:
            continue
        t = Fraction(-cross(v, a), c)
        if t <= 0 or (finite and t >= 1):
            continue
        ts.add(t)
    if cross(a, d) == 0:
        t = Fraction(-a[0], d[0]) if d[0] != 0 else Fraction(-a[1], d[1])
        if t > 0 and (not finite or t < 1):
            ts.add(t)

    def at(t):
        q, p = t.denominator, t.numerator
        return (q * a[0] + p * d[0], q * a[1] + p * d[1])

    breaks = []
    cones = []
    for t in sorted(ts):
        cone = fan.smallest_cone(at(t))
        if cone.dim <= 1:
            breaks.append(t)
            cones.append(cone)
    last = Fraction(1) if finite or not breaks else breaks[-1] + 1
    stops = [Fraction(0)] + breaks + [last]
    carriers = [fan.smallest_cone(at((s + e) / 2)) for s, e in zip(stops, stops[1:])]
    return Chain(tuple(carriers), tuple(cones)), breaks


def _integerise(positions):
    """Common-denominator integer form of rational points."""
    import math

    pts = [(Fraction(p[0]), Fraction(p[1])) for p in positions]
    den = 1
    for x, y in pts:
        den = math.lcm(den, x.denominator, y.denominator)
    return [(int(x * den), int(y * den)) for x, y in pts], den


def construct_type(tree: MarkedTree, alpha, fan: Fan2D, positions, check: bool = True) -> CombType:
    """Type of the tropical map placing the stable vertices of ``tree`` at ``positions``.

    ``positions`` is a sequence or mapping indexed by the vertices of
    ``tree``. Every edge must point along its balanced slope.
    """
    alpha = as_tangency(alpha)
    ctree, vmap, emap = canonical_tree(tree)
    pos = [None] * ctree.vertices
    for old, new in vmap.items():
        pos[new] = positions[old]
    ints, den = _integerise(pos)
    return _construct(ctree, alpha, fan, ints, den, check)


def _construct(ctree: MarkedTree, alpha: Tangency, fan: Fan2D, pos, den=1, check=True) -> CombType:
    """``pos`` are integer positions of the stable vertices scaled by ``den``."""
    edge_slopes, leg_slopes = balanced_slopes(ctree, alpha)
    vcones = tuple(fan.smallest_cone(p) for p in pos)
    extra_pos = []
    edge_chains, leg_chains = [], []
    lengths_edges = []
    for (u, w), m in zip(ctree.edges, edge_slopes):
        a, b = pos[u], pos[w]
        d = (b[0] - a[0], b[1] - a[1])
        if is_zero(m):
            raise DegenerateSubset("an edge has zero slope")
        if cross(d, m) != 0 or dot(d, m) <= 0:
            raise InconsistentMap(f"edge {(u, w)} does not point along its slope {m}")
        ell = Fraction(dot(d, m), dot(m, m) * den)
        chain, ts = _trace(fan, a, d, True)
        edge_chains.append(chain)
        extra_pos += [(a[0] + t * d[0], a[1] + t * d[1]) for t in ts]
        stops = [Fraction(0)] + ts + [Fraction(1)]
        lengths_edges += [(e - s) * ell for s, e in zip(stops, stops[1:])]
    lengths_legs = []
    for v, m in zip(ctree.legs, leg_slopes):
        a = pos[v]
        chain, ts = _trace(fan, a, (m[0] * den, m[1] * den), False)
        leg_chains.append(chain)
        extra_pos += [(a[0] + t * m[0] * den, a[1] + t * m[1] * den) for t in ts]
        stops = [Fraction(0)] + ts
        lengths_legs += [(e - s) for s, e in zip(stops, stops[1:])]
    allpos = tuple((Fraction(x, 1) / den, Fraction(y, 1) / den) for x, y in list(pos) + extra_pos)
    witness = Witness(allpos, tuple(lengths_edges + lengths_legs), ctree.vertices)
    c = CombType(fan, alpha, ctree, vcones, tuple(edge_chains), tuple(leg_chains), witness)
    if check:
        c.check()
    return c


# ---------------------------------------------------------------------------
# enumeration


def _position_forms(tree: MarkedTree, alpha: Tangency):
    """Coordinates of each vertex as integer forms in (root x, root y, edge lengths)."""
    edge_slopes, _ = balanced_slopes(tree, alpha)
    dim = 2 + len(tree.edges)
    fx = [None] * tree.vertices
    fy = [None] * tree.vertices
    fx[0] = [1, 0] + [0] * len(tree.edges)
    fy[0] = [0, 1] + [0] * len(tree.edges)
    stack = [0]
    while stack:
        x = stack.pop()
        for y, k in tree.adjacency[x]:
            if fx[y] is not None:
                continue
            m = edge_slopes[k]
            sgn = 1 if tree.edges[k] == (x, y) else -1
            fx[y] = list(fx[x])
            fy[y] = list(fy[x])
            fx[y][2 + k] += sgn * m[0]
            fy[y][2 + k] += sgn * m[1]
            stack.append(y)
    return dim, fx, fy


def _normalise(form):
    from math import gcd

    g = 0
    for c in form:
        g = gcd(g, c)
    if g == 0:
        return None
    form = [c // g for c in form]
    for c in form:
        if c:
            if c < 0:
                form = [-x for x in form]
            break
    return tuple(form)


def _type_forms(tree: MarkedTree, alpha: Tangency, fan: Fan2D):
    dim, fx, fy = _position_forms(tree, alpha)
    edge_slopes, leg_slopes = balanced_slopes(tree, alpha)
    forms = []

    def lin(cx, x, cy, y):
        return [cx * a + cy * b for a, b in zip(x, y)]

    for v in range(tree.vertices):
        for r in fan.rays:
            # cross(r, f(v))
            forms.append(lin(-r[1], fx[v], r[0], fy[v]))
    for (u, _), m in zip(tree.edges, edge_slopes):
        forms.append(lin(m[1], fx[u], -m[0], fy[u]))
    for v, m in zip(tree.legs, leg_slopes):
        forms.append(lin(m[1], fx[v], -m[0], fy[v]))
    out = []
    seen = set()
    for f in forms:
        f = _normalise(f)
        if f is not None and f not in seen:
            seen.add(f)
            out.append(f)
    return dim, out, fx, fy


def _ev(form, w):
    return sum(c * x for c, x in zip(form, w) if c)


def _neg(form):
    return tuple(-c for c in form)


def _reduce(v):
    from math import gcd

    g = 0
    for x in v:
        g = gcd(g, x)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def arrangement_faces(dim: int, forms, base_strict, start):
    """Integer witness points, one per nonempty face of the arrangement cut out by ``forms``.

    Faces live inside the open polyhedral cone ``base_strict > 0``, which
    must contain ``start``. Everything is homogeneous, so witnesses are
    kept as primitive integer vectors.
    """
    faces = [((), tuple(base_strict), tuple(start))]
    for h in forms:
        nh = _neg(h)
        new = []
        for eqs, st, w in faces:
            val = _ev(h, w)
            if val == 0:
                u = integer_feasible_point(dim, list(eqs), list(st + (h,)))
                if u is None:
                    new.append((eqs + (h,), st, w))
                    continue
                # step from w away from u, staying inside the face
                d = [x - y for x, y in zip(u, w)]
                s = Fraction(1)
                for g in st:
                    gd = _ev(g, d)
                    if gd > 0:
                        s = min(s, Fraction(_ev(g, w), 2 * gd))
                r = _reduce([s.denominator * x - s.numerator * y for x, y in zip(w, d)])
                new += [(eqs, st + (h,), u), (eqs + (h,), st, w), (eqs, st + (nh,), r)]
            else:
                pos_h, neg_h = (h, nh) if val > 0 else (nh, h)
                u = integer_feasible_point(dim, list(eqs), list(st + (neg_h,)))
                if u is None:
                    new.append((eqs, st + (pos_h,), w))
                    continue
                hu = _ev(h, u)
                z = _reduce([abs(hu) * x + abs(val) * y for x, y in zip(w, u)])
                new += [(eqs, st + (pos_h,), w), (eqs + (h,), st, z), (eqs, st + (neg_h,), u)]
        faces = new
    return [w for _, _, w in faces]


def _tree_types(args):
    tree, alpha, fan = args
    dim, forms, fx, fy = _type_forms(tree, alpha, fan)
    base = []
    for k in range(len(tree.edges)):
        r = [0] * dim
        r[2 + k] = 1
        base.append(tuple(r))
    start = [0, 0] + [1] * len(tree.edges)
    types = {}
    for w in arrangement_faces(dim, forms, base, start):
        pos = [(_ev(fx[v], w), _ev(fy[v], w)) for v in range(tree.vertices)]
        c = _construct(tree, alpha, fan, pos, 1, check=False)
        types.setdefault(c.key(), c)
    return list(types.values())


def _threads(threads: int | None) -> int:
    if threads is None:
        threads = int(os.environ.get("CHAMBERFORGE_THREADS", "1") or 1)
    return max(1, threads)


def enumerate_realizable(
    fan: Fan2D,
    alpha,
    allow_walls: bool = False,
    threads: int | None = None,
    trees: Sequence[MarkedTree] | None = None,
) -> list[CombType]:
    """Every realisable type for the fan and tangency, once each, sorted by key."""
    alpha = as_tangency(alpha)
    alpha.proper_subsets(permissive=False)
    if not allow_walls:
        on = walls_on(fan, alpha)
        if on:
            raise OnWall("tangency lies on " + ", ".join(w.label() for w in on))
    if trees is None:
        trees = stable_trees(alpha.n)
    jobs = [(t, alpha, fan) for t in trees]
    nthreads = _threads(threads)
    if nthreads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=nthreads) as pool:
            results = list(pool.map(_tree_types, jobs))
    else:
        results = [_tree_types(j) for j in jobs]
    out = [c for r in results for c in r]
    for c in out:
        c.check()
    out.sort(key=lambda c: c.key())
    return out


# ---------------------------------------------------------------------------
# refinement, lifting and transport


def lift(c: CombType, subfan: Fan2D) -> CombType:
    """Type over a refinement, read off from one realisation of ``c``."""
    if not refines(subfan, c.fan):
        raise NotARefinement("target fan does not refine the type's fan")
    w = c.witness or is_realizable(c)
    if w is None:
        raise NotRealizable("type has no realisation to lift")
    ints, den = _integerise(w.stable_positions)
    return _construct(c.tree, c.alpha, subfan, ints, den)


def forget(c: CombType, base: Fan2D) -> CombType:
    """Push a type over a refinement down to a coarser fan."""
    if not refines(c.fan, base):
        raise NotARefinement("type's fan does not refine the base fan")

    def push(chain: Chain) -> Chain:
        carriers = [pushforward(c.fan, base, chain.carriers[0])]
        cones = []
        for cone, car in zip(chain.cones, chain.carriers[1:]):
            pc = pushforward(c.fan, base, cone)
            pcar = pushforward(c.fan, base, car)
            if pc.dim <= 1:
                cones.append(pc)
                carriers.append(pcar)
            elif pcar != carriers[-1]:
                raise InvariantViolation("carrier changes across a forgotten vertex")
        return Chain(tuple(carriers), tuple(cones))

    out = CombType(
        base,
        c.alpha,
        c.tree,
        tuple(pushforward(c.fan, base, v) for v in c.vertex_cones),
        tuple(push(ch) for ch in c.edge_chains),
        tuple(push(ch) for ch in c.leg_chains),
    )
    out.check()
    return out


def realizable_lifts(c: CombType, subfan: Fan2D, allow_walls: bool = True) -> list[CombType]:
    """All realisable types over ``subfan`` that forget to ``c``."""
    lifts = enumerate_realizable(subfan, c.alpha, allow_walls=allow_walls, trees=[c.tree])
    return [t for t in lifts if forget(t, c.fan).key() == c.key()]


def transport(c: CombType, alpha2, permissive: bool = False) -> CombType:
    """Matching type for an equivalent tangency.

    Lift ``c`` to the slope-sensitive fan, swap every cone for its analogue
    under ``alpha2``, realise the result, and push it back down.
    """
    alpha2 = as_tangency(alpha2)
    src, dst, mapping = cone_map(c.fan, c.alpha, alpha2, permissive)
    lifted = lift(c, src)

    def mchain(ch: Chain) -> Chain:
        return Chain(
            tuple(map_cone(x, mapping, dst) for x in ch.carriers),
            tuple(map_cone(x, mapping, dst) for x in ch.cones),
        )

    moved = CombType(
        dst,
        alpha2,
        lifted.tree,
        tuple(map_cone(x, mapping, dst) for x in lifted.vertex_cones),
        tuple(mchain(ch) for ch in lifted.edge_chains),
        tuple(mchain(ch) for ch in lifted.leg_chains),
    )
    moved.check()
    w = is_realizable(moved)
    if w is None:
        raise TransportInfeasible("transported lift has no realisation")
    ints, den = _integerise(w.stable_positions)
    rebuilt = _construct(moved.tree, alpha2, dst, ints, den)
    if rebuilt.key() != moved.key():
        raise TransportInfeasible("witness of the transported lift has a different type")
    return forget(rebuilt, c.fan)


# ---------------------------------------------------------------------------
# two-vertex configurations


def theta_closed_form(cone_v: ConeRef, cone_w: ConeRef, m) -> bool:
    """Whether an edge of slope ``m`` can run from relint ``cone_v`` to relint ``cone_w``.

    Covers the four adjacent configurations on a slope-sensitive fan:
    ray to adjacent ray, ray to a sector on it, a sector to itself, and a
    sector to one of its rays. ``m`` must be a ray direction of that fan.
    """
    neg = lambda v: (-v[0], -v[1])  # noqa: E731
    if cone_v.dim == 1 and cone_w.dim == 1:
        p, q = cone_v.gens[0], cone_w.gens[0]
        if p == q or cross(p, q) == 0:
            raise UnsupportedConfiguration("rays must span a sector")
        return in_open_cone(m, neg(p), q)
    if cone_v.dim == 1 and cone_w.dim == 2 and cone_v.is_face_of(cone_w):
        a = cone_v.gens[0]
        b = cone_w.gens[1] if cone_w.gens[0] == a else cone_w.gens[0]
        return _in_closed(m, neg(a), b) and not _in_closed_ray(m, neg(a))
    if cone_v.dim == 2 and cone_v == cone_w:
        return True
    if cone_v.dim == 2 and cone_w.dim == 1 and cone_w.is_face_of(cone_v):
        b = cone_w.gens[0]
        a = cone_v.gens[1] if cone_v.gens[0] == b else cone_v.gens[0]
        return _in_closed(m, neg(a), b) and not _in_closed_ray(m, b)
    raise UnsupportedConfiguration(f"no closed form for {cone_v} -> {cone_w}")


def _in_closed(p, u, w) -> bool:
    from .exactgeom import in_cone

    return in_cone(p, (u, w))


def _in_closed_ray(p, u) -> bool:
    return cross(p, u) == 0 and dot(p, u) > 0


def theta_lp(cone_v: ConeRef, cone_w: ConeRef, m) -> bool:
    """Same question as ``theta_closed_form``, decided by strict feasibility."""
    nv = 5
    eq, st = [], []
    e, s = _relint_rows(cone_v, 0, 1, nv)
    eq += e
    st += s
    e, s = _relint_rows(cone_w, 2, 3, nv)
    eq += e
    st += s
    eq.append([-1, 0, 1, 0, -m[0]])
    eq.append([0, -1, 0, 1, -m[1]])
    st.append([0, 0, 0, 0, 1])
    return feasible_point(nv, eq, st) is not None


def theta_configurations(fan: Fan2D):
    """Every cone pair covered by ``theta_closed_form`` on ``fan``."""
    out = []
    for s in fan.sectors:
        u, w = s.gens
        ru, rw = ConeRef.ray(u), ConeRef.ray(w)
        out += [(ru, rw), (rw, ru), (ru, s), (rw, s), (s, s), (s, ru), (s, rw)]
    return out


# ---------------------------------------------------------------------------
# serialisation


def _graph_path(graph: MarkedTree, start: int, goal: int):
    prev = {start: None}
    stack = [start]
    while stack:
        x = stack.pop()
        for y, k in graph.adjacency[x]:
            if y not in prev:
                prev[y] = (x, k)
                stack.append(y)
    verts, edges = [goal], []
    while verts[-1] != start:
        x, k = prev[verts[-1]]
        edges.append(k)
        verts.append(x)
    return verts[::-1], edges[::-1]


def type_from_json(data: Mapping, fan: Fan2D, alpha) -> CombType:
    """Inverse of ``CombType.to_json``."""
    tree = MarkedTree.from_json(data["tree"])
    graph = MarkedTree.from_json(data["graph"])
    cones = [ConeRef.from_json(c) for c in data["vertex_cones"]]
    carriers = [ConeRef.from_json(c) for c in data["carriers"]["edges"]]
    leg_car = {int(i): ConeRef.from_json(c) for i, c in data["carriers"]["legs"].items()}
    if len(cones) != graph.vertices or len(carriers) != len(graph.edges):
        raise InvariantViolation("cone lists do not match the graph")

    def chain(verts, edges, tail=None):
        cars = [carriers[k] for k in edges]
        if tail is not None:
            cars.append(tail)
        inner = verts[1:-1] if tail is None else verts[1:]
        return Chain(tuple(cars), tuple(cones[v] for v in inner))

    edge_chains = [chain(*_graph_path(graph, a, b)) for a, b in tree.edges]
    leg_chains = []
    for i, v in enumerate(tree.legs):
        verts, edges = _graph_path(graph, v, graph.legs[i])
        leg_chains.append(chain(verts, edges, leg_car[i + 1]))
    return make_type(fan, alpha, tree, cones[: tree.vertices], edge_chains, leg_chains)
