"""Complete two-dimensional fans and their cones.

A fan is stored as its primitive rays in counterclockwise order starting
from the direction of (1, 0). Cones are identified by their generators, so
a ``ConeRef`` means the same set of points in every fan that contains it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import (
    DuplicateRay,
    InputError,
    NonPrimitiveRay,
    NotACone,
    NotARefinement,
    NotComplete,
    NotEquivalent,
    ZeroVector,
)
from .exactgeom import (
    angle_key,
    basis_coords,
    cross,
    dot,
    is_primitive,
    is_zero,
    neg,
    primitive,
    same_direction,
    strictly_between,
)

Vec = tuple[int, int]


@dataclass(frozen=True, order=True)
class ConeRef:
    """A cone given by 0, 1 or 2 primitive generators.

    Two generators are stored in counterclockwise order.
    """

    gens: tuple[Vec, ...] = ()

    @classmethod
    def origin(cls) -> "ConeRef":
        return cls(())

    @classmethod
    def ray(cls, v) -> "ConeRef":
        return cls((tuple(v),))

    @classmethod
    def sector(cls, u, w) -> "ConeRef":
        u, w = tuple(u), tuple(w)
        if cross(u, w) <= 0:
            raise NotACone(f"sector generators must turn counterclockwise by less than pi: {u}, {w}")
        return cls((u, w))

    @property
    def dim(self) -> int:
        return len(self.gens)

    @property
    def kind(self) -> str:
        return ("origin", "ray", "sector")[self.dim]

    def is_face_of(self, other: "ConeRef") -> bool:
        return set(self.gens) <= set(other.gens)

    def contains_vector(self, p) -> bool:
        """Closed membership."""
        if self.dim == 0:
            return is_zero(p)
        if self.dim == 1:
            return is_zero(p) or same_direction(p, self.gens[0])
        u, w = self.gens
        return cross(u, p) >= 0 and cross(p, w) >= 0

    def contains_relint(self, p) -> bool:
        if self.dim == 0:
            return is_zero(p)
        if self.dim == 1:
            return same_direction(p, self.gens[0])
        return strictly_between(self.gens[0], p, self.gens[1])

    def in_span(self, m) -> bool:
        if self.dim == 0:
            return is_zero(m)
        if self.dim == 1:
            return cross(m, self.gens[0]) == 0
        return True

    def interior_point(self) -> Vec:
        if self.dim == 0:
            return (0, 0)
        if self.dim == 1:
            return self.gens[0]
        u, w = self.gens
        return (u[0] + w[0], u[1] + w[1])

    def to_json(self) -> list:
        return [list(g) for g in self.gens]

    @classmethod
    def from_json(cls, data) -> "ConeRef":
        gens = tuple(tuple(int(c) for c in g) for g in data)
        if len(gens) == 2:
            return cls.sector(*gens)
        if len(gens) > 2:
            raise NotACone("a planar cone has at most two generators")
        return cls(gens)

    def __str__(self) -> str:
        if self.dim == 0:
            return "o"
        if self.dim == 1:
            return "ray(%d,%d)" % self.gens[0]
        (a, b), (c, d) = self.gens
        return f"sector(({a},{b}),({c},{d}))"


@dataclass(frozen=True)
class Fan2D:
    """Complete strictly convex fan in the plane.

    ``tags`` optionally records, for each ray, where it came from; see
    ``slope_sensitive``.
    """

    rays: tuple[Vec, ...]
    name: str = ""
    tags: Mapping[Vec, frozenset] = field(default=None, compare=False, hash=False)

    @property
    def sectors(self) -> tuple[ConeRef, ...]:
        r = self.rays
        return tuple(ConeRef((r[i], r[(i + 1) % len(r)])) for i in range(len(r)))

    def cones(self) -> list[ConeRef]:
        return [ConeRef.origin()] + [ConeRef.ray(v) for v in self.rays] + list(self.sectors)

    def has_cone(self, c: ConeRef) -> bool:
        if c.dim == 0:
            return True
        if c.dim == 1:
            return c.gens[0] in self._ray_index
        i = self._ray_index.get(c.gens[0])
        return i is not None and self.rays[(i + 1) % len(self.rays)] == c.gens[1]

    @property
    def _ray_index(self) -> dict:
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {v: i for i, v in enumerate(self.rays)}
            object.__setattr__(self, "_idx", idx)
        return idx

    def smallest_cone(self, p) -> ConeRef:
        """Smallest cone of the fan containing the point ``p``."""
        if is_zero(p):
            return ConeRef.origin()
        for v in self.rays:
            if same_direction(p, v):
                return ConeRef.ray(v)
        r = self.rays
        for i in range(len(r)):
            u, w = r[i], r[(i + 1) % len(r)]
            if strictly_between(u, p, w):
                return ConeRef((u, w))
        raise AssertionError("complete fan misses a point")

    def to_json(self) -> dict:
        return {"name": self.name, "rays": [list(v) for v in self.rays]}


def _as_int_vector(v) -> Vec:
    if not isinstance(v, (list, tuple)) or len(v) != 2:
        raise InputError(f"expected a pair of integers, got {v!r}")
    for c in v:
        if isinstance(c, bool) or not isinstance(c, int):
            raise InputError(f"coordinates must be integers, got {v!r}")
    return (v[0], v[1])


def make_fan(rays: Iterable, name: str = "", tags: Mapping | None = None) -> Fan2D:
    """Validate rays and return them as a fan in counterclockwise order."""
    vecs = [_as_int_vector(v) for v in rays]
    for v in vecs:
        if is_zero(v):
            raise ZeroVector("a fan ray cannot be zero")
        if not is_primitive(v):
            raise NonPrimitiveRay(f"ray {v} is not primitive")
    if len(set(vecs)) != len(vecs):
        raise DuplicateRay("repeated ray")
    vecs.sort(key=angle_key)
    if len(vecs) < 3:
        raise NotComplete("a complete planar fan needs at least three rays")
    for i in range(len(vecs)):
        u, w = vecs[i], vecs[(i + 1) % len(vecs)]
        if cross(u, w) <= 0:
            raise NotComplete(f"rays {u} and {w} are at least pi apart")
    return Fan2D(tuple(vecs), name, dict(tags) if tags is not None else None)


def load_fan(data) -> Fan2D:
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, dict) or "rays" not in data:
        raise InputError("fan JSON needs a 'rays' list")
    return make_fan(data["rays"], data.get("name", ""))


# ---------------------------------------------------------------------------
# standard fans

def projective_plane() -> Fan2D:
    return make_fan([(1, 0), (0, 1), (-1, -1)], "P2")


def p1xp1() -> Fan2D:
    return make_fan([(1, 0), (0, 1), (-1, 0), (0, -1)], "P1xP1")


def hirzebruch(a: int) -> Fan2D:
    return make_fan([(1, 0), (0, 1), (-1, a), (0, -1)], f"F{a}")


# ---------------------------------------------------------------------------
# constructions

def dagger(fan: Fan2D) -> Fan2D:
    """Fan on the rays of ``fan`` together with their negatives."""
    rays = set(fan.rays) | {neg(v) for v in fan.rays}
    tags = {v: frozenset({("rho", v)}) for v in rays}
    return make_fan(rays, fan.name + "+dagger", tags)


def slope_sensitive(fan: Fan2D, alpha, permissive: bool = False) -> Fan2D:
    """Refinement of the dagger fan by the directions of all subset sums of ``alpha``.

    Each ray is tagged with ``("rho", v)`` if it is a ray of the dagger fan
    and with ``("I", mask)`` for every subset whose sum points along it.
    Vanishing subset sums are skipped in permissive mode and rejected
    otherwise.
    """
    from .tangency import as_tangency

    alpha = as_tangency(alpha)
    base = dagger(fan)
    tags = {v: set(t) for v, t in base.tags.items()}
    for mask in alpha.proper_subsets(permissive=permissive):
        v = primitive(alpha.subset_sum(mask))
        tags.setdefault(v, set()).add(("I", mask))
    return make_fan(tags, fan.name + "+slopes", {v: frozenset(t) for v, t in tags.items()})


def refines(sub: Fan2D, base: Fan2D) -> bool:
    return set(base.rays) <= set(sub.rays)


def pushforward(sub: Fan2D, base: Fan2D, c: ConeRef) -> ConeRef:
    """Smallest cone of ``base`` containing the cone ``c`` of ``sub``."""
    if not refines(sub, base):
        raise NotARefinement("fan does not refine the base fan")
    if not sub.has_cone(c):
        raise NotACone(f"{c} is not a cone of the refined fan")
    return base.smallest_cone(c.interior_point())


def cone_map(fan: Fan2D, alpha, alpha2, permissive: bool = False):
    """Generator correspondence between the slope-sensitive fans of two equivalent tangencies.

    Returns ``(src, dst, mapping)`` where ``mapping`` sends each ray of the
    source fan to the analogous ray of the target fan.
    """
    from .tangency import as_tangency, sigma_equivalent

    alpha, alpha2 = as_tangency(alpha), as_tangency(alpha2)
    if not sigma_equivalent(fan, alpha, alpha2, permissive=permissive):
        raise NotEquivalent("tangencies are not in the same chamber")
    src = slope_sensitive(fan, alpha, permissive)
    dst = slope_sensitive(fan, alpha2, permissive)
    mapping = {}
    for v in src.rays:
        tags = src.tags[v]
        fixed = [t[1] for t in tags if t[0] == "rho"]
        if fixed:
            mapping[v] = fixed[0]
        else:
            mask = min(t[1] for t in tags)
            mapping[v] = primitive(alpha2.subset_sum(mask))
    return src, dst, mapping


def map_cone(c: ConeRef, mapping: Mapping, dst: Fan2D) -> ConeRef:
    gens = tuple(mapping[g] for g in c.gens)
    if len(gens) == 2:
        if cross(gens[0], gens[1]) <= 0:
            raise NotACone(f"image of {c} is not a pointed sector")
        image = ConeRef(gens)
    else:
        image = ConeRef(gens)
    if not dst.has_cone(image):
        raise NotACone(f"image {image} of {c} is not a cone of the target fan")
    return image


def analogous_cone(c: ConeRef, alpha, alpha2, fan: Fan2D, permissive: bool = False) -> ConeRef:
    """Cone of the slope-sensitive fan of ``alpha2`` matching ``c`` for ``alpha``."""
    src, dst, mapping = cone_map(fan, alpha, alpha2, permissive)
    if not src.has_cone(c):
        raise NotACone(f"{c} is not a cone of the slope-sensitive fan")
    return map_cone(c, mapping, dst)


@dataclass(frozen=True)
class TangencyOrder:
    """Order of contact with one toric boundary divisor.

    ``value`` is the piecewise linear function of the ray evaluated at the
    tangency vector, ``multiple`` the least positive integer making that
    function integral linear on every cone, and ``order`` their product.
    """

    ray: Vec
    value: Fraction
    multiple: int

    @property
    def order(self) -> Fraction:
        return self.value * self.multiple


def cartier_multiple(fan: Fan2D, j: int) -> int:
    import math

    r = fan.rays
    v = r[j]
    prev, nxt = r[j - 1], r[(j + 1) % len(r)]
    return math.lcm(abs(cross(prev, v)), abs(cross(v, nxt)))


def tangency_orders(fan: Fan2D, a) -> list[TangencyOrder]:
    """Contact orders of a tangency vector with each boundary divisor."""
    a = _as_int_vector(tuple(a))
    values = [Fraction(0)] * len(fan.rays)
    if not is_zero(a):
        c = fan.smallest_cone(a)
        idx = [fan.rays.index(g) for g in c.gens]
        if c.dim == 1:
            g = c.gens[0]
            values[idx[0]] = Fraction(dot(a, g), dot(g, g))
        else:
            s, t = basis_coords(a, *c.gens)
            values[idx[0]], values[idx[1]] = s, t
    return [TangencyOrder(v, values[j], cartier_multiple(fan, j)) for j, v in enumerate(fan.rays)]
