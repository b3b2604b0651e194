"""Check that two equivalent tangencies give the same strata."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import permutations

from .comtype import enumerate_realizable, transport
from .fan import Fan2D
from .groth import GrothPoly, total_class
from .tangency import as_tangency, cyclic_order, index_set, sigma_equivalent


@dataclass
class CheckReport:
    equivalent: bool
    classes_equal: bool | None = None
    bijection: bool | None = None
    class_a: GrothPoly | None = None
    class_b: GrothPoly | None = None
    types_a: int = 0
    types_b: int = 0
    first_difference: dict | None = None
    unmatched: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.equivalent or bool(self.classes_equal and self.bijection)

    def to_json(self) -> dict:
        out = {"equivalent": self.equivalent}
        if self.equivalent:
            out.update(
                classes_equal=self.classes_equal,
                bijection=self.bijection,
                class_a=self.class_a.to_json(),
                class_b=self.class_b.to_json(),
                types_a=self.types_a,
                types_b=self.types_b,
            )
        else:
            out["first_difference"] = self.first_difference
        return out


def first_difference(fan: Fan2D, alpha, alpha2, permissive: bool = False) -> dict | None:
    """First ordered triple, in a fixed element order, on which the two cyclic orders disagree."""
    alpha, alpha2 = as_tangency(alpha), as_tangency(alpha2)
    ea = index_set(fan, alpha, permissive)
    eb = index_set(fan, alpha2, permissive)
    if sorted(ea) != sorted(eb):
        only_a = sorted(set(ea) - set(eb))
        only_b = sorted(set(eb) - set(ea))
        return {
            "index_sets_differ": True,
            "only_a": [e.label() for e in only_a],
            "only_b": [e.label() for e in only_b],
        }
    oa = cyclic_order(fan, alpha, permissive)
    ob = cyclic_order(fan, alpha2, permissive)
    for p, q, r in permutations(sorted(ea), 3):
        ha, hb = oa.triple_holds(p, q, r), ob.triple_holds(p, q, r)
        if ha != hb:
            return {"triple": [p.label(), q.label(), r.label()], "holds_a": ha, "holds_b": hb}
    return None


def check_pair(fan: Fan2D, alpha, alpha2, threads: int | None = None, allow_walls: bool = False) -> CheckReport:
    alpha, alpha2 = as_tangency(alpha), as_tangency(alpha2)
    if not sigma_equivalent(fan, alpha, alpha2):
        return CheckReport(False, first_difference=first_difference(fan, alpha, alpha2))
    ta = enumerate_realizable(fan, alpha, allow_walls=allow_walls, threads=threads)
    tb = enumerate_realizable(fan, alpha2, allow_walls=allow_walls, threads=threads)
    ca, cb = total_class(ta), total_class(tb)
    images = Counter(transport(c, alpha2).key() for c in ta)
    targets = Counter(c.key() for c in tb)
    unmatched = sorted((images - targets) + (targets - images))
    return CheckReport(
        True,
        classes_equal=ca == cb,
        bijection=images == targets,
        class_a=ca,
        class_b=cb,
        types_a=len(ta),
        types_b=len(tb),
        unmatched=unmatched,
    )
