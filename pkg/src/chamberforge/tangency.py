"""Tangency data, the cyclic order of subset sums, and walls.

Subsets of the marks ``1..n`` are bitmasks: mark ``i`` is bit ``i - 1``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import DegenerateSubset, InputError, Unbalanced, UnknownElement, ZeroVector
from .exactgeom import angle_key, ccw_compare, cross, is_zero, same_direction, _half
from .fan import Fan2D, dagger

Vec = tuple[int, int]


def mask_to_marks(mask: int) -> tuple[int, ...]:
    return tuple(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


def marks_to_mask(marks: Iterable[int]) -> int:
    mask = 0
    for i in marks:
        mask |= 1 << (i - 1)
    return mask


def subset_label(mask: int) -> str:
    return "{" + ",".join(map(str, mask_to_marks(mask))) + "}"


@dataclass(frozen=True)
class Tangency:
    """Balanced tuple of nonzero integer vectors."""

    vectors: tuple[Vec, ...]

    def __post_init__(self):
        vecs = []
        for v in self.vectors:
            if not isinstance(v, (tuple, list)) or len(v) != 2:
                raise InputError(f"tangency entries must be integer pairs, got {v!r}")
            if any(isinstance(c, bool) or not isinstance(c, int) for c in v):
                raise InputError(f"tangency entries must be integer pairs, got {v!r}")
            if is_zero(v):
                raise ZeroVector("tangency vectors must be nonzero")
            vecs.append((v[0], v[1]))
        object.__setattr__(self, "vectors", tuple(vecs))
        if len(vecs) < 2:
            raise InputError("need at least two marked points")
        sx = sum(v[0] for v in vecs)
        sy = sum(v[1] for v in vecs)
        if sx or sy:
            raise Unbalanced(f"tangency vectors sum to ({sx},{sy}), not zero")

    @property
    def n(self) -> int:
        return len(self.vectors)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def __getitem__(self, i):
        return self.vectors[i]

    def __iter__(self):
        return iter(self.vectors)

    def __len__(self):
        return self.n

    @cached_property
    def _sums(self) -> tuple[Vec, ...]:
        sums = [(0, 0)] * (1 << self.n)
        for mask in range(1, 1 << self.n):
            low = mask & -mask
            i = low.bit_length() - 1
            rest = sums[mask ^ low]
            v = self.vectors[i]
            sums[mask] = (rest[0] + v[0], rest[1] + v[1])
        return tuple(sums)

    def subset_sum(self, mask: int) -> Vec:
        return self._sums[mask]

    def vanishing(self) -> tuple[int, ...]:
        return tuple(m for m in range(1, self.full) if is_zero(self._sums[m]))

    def proper_subsets(self, permissive: bool = False) -> list[int]:
        """Proper nonempty subsets with nonzero sum.

        Raises ``DegenerateSubset`` for a vanishing sum unless ``permissive``.
        """
        out = []
        for m in range(1, self.full):
            if is_zero(self._sums[m]):
                if not permissive:
                    raise DegenerateSubset(f"subset {subset_label(m)} sums to zero")
                continue
            out.append(m)
        return out

    def to_json(self) -> dict:
        return {"n": self.n, "alpha": [list(v) for v in self.vectors]}


def as_tangency(alpha) -> Tangency:
    if isinstance(alpha, Tangency):
        return alpha
    return Tangency(tuple(tuple(v) for v in alpha))


def load_tangency(data) -> Tangency:
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, dict) or "alpha" not in data:
        raise InputError("tangency JSON needs an 'alpha' list")
    alpha = Tangency(tuple(tuple(v) if isinstance(v, list) else v for v in data["alpha"]))
    if "n" in data and data["n"] != alpha.n:
        raise InputError(f"'n' is {data['n']} but {alpha.n} vectors were given")
    return alpha


# ---------------------------------------------------------------------------
# index set and cyclic order


@dataclass(frozen=True, order=True)
class Element:
    """Member of the index set: a fan ray of the dagger fan or a subset mask."""

    kind: str  # "rho" sorts before "set"
    value: object

    @classmethod
    def ray(cls, v) -> "Element":
        return cls("rho", tuple(v))

    @classmethod
    def subset(cls, mask: int) -> "Element":
        return cls("set", mask)

    def label(self) -> str:
        if self.kind == "rho":
            return "rho(%d,%d)" % self.value
        return subset_label(self.value)

    def __str__(self) -> str:
        return self.label()


def index_set(fan: Fan2D, alpha: Tangency, permissive: bool = False) -> list[Element]:
    elems = [Element.ray(v) for v in dagger(fan).rays]
    elems += [Element.subset(m) for m in alpha.proper_subsets(permissive)]
    return elems


def direction(el: Element, alpha: Tangency) -> Vec:
    if el.kind == "rho":
        return el.value
    return alpha.subset_sum(el.value)


@dataclass(frozen=True)
class CyclicOrder:
    """Elements grouped by direction, groups sorted counterclockwise from (1, 0)."""

    groups: tuple[tuple[Element, ...], ...]
    vanishing: tuple[int, ...] = ()

    @cached_property
    def position(self) -> dict:
        return {e: i for i, g in enumerate(self.groups) for e in g}

    def group_of(self, el: Element) -> int:
        try:
            return self.position[el]
        except KeyError:
            raise UnknownElement(f"{el} is not in the index set") from None

    def triple_holds(self, p: Element, q: Element, r: Element) -> bool:
        """True iff ``p, q, r`` lie in distinct groups met in this order counterclockwise."""
        gp, gq, gr = self.group_of(p), self.group_of(q), self.group_of(r)
        if gp == gq or gq == gr or gp == gr:
            return False
        k = len(self.groups)
        return (gq - gp) % k < (gr - gp) % k

    def canonical(self) -> tuple[frozenset, ...]:
        """Rotation starting at the group of the first dagger ray, for comparing circular sequences."""
        anchor = min(e for g in self.groups for e in g if e.kind == "rho")
        start = self.position[anchor]
        gs = self.groups[start:] + self.groups[:start]
        return tuple(frozenset(g) for g in gs)

    def as_text(self) -> str:
        return "\n".join(" | ".join(e.label() for e in g) for g in self.groups)

    def to_json(self) -> dict:
        return {
            "groups": [[e.label() for e in g] for g in self.groups],
            "vanishing": [subset_label(m) for m in self.vanishing],
        }


def cyclic_order(fan: Fan2D, alpha, permissive: bool = False) -> CyclicOrder:
    alpha = as_tangency(alpha)
    elems = index_set(fan, alpha, permissive)
    elems.sort(key=lambda e: (angle_key(direction(e, alpha)), e))
    groups: list[list[Element]] = []
    last = None
    for e in elems:
        d = direction(e, alpha)
        if last is not None and ccw_compare(last, d) == 0:
            groups[-1].append(e)
        else:
            groups.append([e])
        last = d
    vanishing = alpha.vanishing() if permissive else ()
    return CyclicOrder(tuple(tuple(g) for g in groups), vanishing)


def sigma_equivalent(fan: Fan2D, alpha, alpha2, permissive: bool = False) -> bool:
    alpha, alpha2 = as_tangency(alpha), as_tangency(alpha2)
    if alpha.n != alpha2.n:
        return False
    a = cyclic_order(fan, alpha, permissive)
    b = cyclic_order(fan, alpha2, permissive)
    if a.vanishing != b.vanishing:
        return False
    return a.canonical() == b.canonical()


# ---------------------------------------------------------------------------
# walls


def subset_class(mask: int, n: int) -> int:
    """Representative of ``{mask, complement}``: the one containing mark 1."""
    return mask if mask & 1 else ((1 << n) - 1) ^ mask


def subset_classes(n: int) -> list[int]:
    return [m for m in range(1, (1 << n) - 1) if m & 1]


def ray_class(v: Vec) -> Vec:
    return v if _half(v) == 0 else (-v[0], -v[1])


@dataclass(frozen=True, order=True)
class Wall:
    kind: str  # "degenerate", "linear" or "quadratic"
    data: tuple

    def label(self) -> str:
        if self.kind == "quadratic":
            return f"Q[{subset_label(self.data[0])},{subset_label(self.data[1])}]"
        if self.kind == "linear":
            return "L[rho(%d,%d)," % self.data[0] + subset_label(self.data[1]) + "]"
        return f"D[{subset_label(self.data[0])}]"

    def holds(self, fan_rays: Sequence[Vec], alpha: Tangency) -> bool:
        if self.kind == "quadratic":
            return cross(alpha.subset_sum(self.data[0]), alpha.subset_sum(self.data[1])) == 0
        if self.kind == "linear":
            return cross(alpha.subset_sum(self.data[1]), self.data[0]) == 0
        return is_zero(alpha.subset_sum(self.data[0]))


def wall_census(fan: Fan2D, n: int) -> list[Wall]:
    classes = subset_classes(n)
    rays = sorted({ray_class(v) for v in fan.rays}, key=angle_key)
    walls = [Wall("quadratic", (i, j)) for i, j in combinations(classes, 2)]
    walls += [Wall("linear", (v, i)) for v in rays for i in classes]
    walls += [Wall("degenerate", (i,)) for i in classes]
    return walls


def walls_on(fan: Fan2D, alpha) -> list[Wall]:
    alpha = as_tangency(alpha)
    return [w for w in wall_census(fan, alpha.n) if w.holds(fan.rays, alpha)]
