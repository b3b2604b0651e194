"""Classes of strata as integer polynomials in the Lefschetz class ``L``."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InputError, NegativeRc


@dataclass(frozen=True)
class GrothPoly:
    """Integer polynomial; ``coeffs[i]`` multiplies ``L**i``. No trailing zeros."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = [int(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def const(cls, a: int) -> "GrothPoly":
        return cls((a,))

    @classmethod
    def L(cls) -> "GrothPoly":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def _lift(self, other):
        if isinstance(other, GrothPoly):
            return other
        if isinstance(other, int):
            return GrothPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return GrothPoly(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return GrothPoly(tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return GrothPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return GrothPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a class")
        out = GrothPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, x):
        total = 0
        for c in reversed(self.coeffs):
            total = total * x + c
        return total

    def euler(self) -> int:
        return self(1)

    def count(self, q: int) -> int:
        return self(q)

    def to_json(self) -> dict:
        return {"coeffs": list(self.coeffs), "var": "L"}

    @classmethod
    def from_json(cls, data) -> "GrothPoly":
        if isinstance(data, str):
            data = json.loads(data)
        if data.get("var", "L") != "L":
            raise InputError("class JSON must be in the variable L")
        return cls(tuple(int(c) for c in data["coeffs"]))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("L" if i == 1 else f"L^{i}")
            if mono and abs(c) == 1:
                t = mono
            else:
                t = f"{abs(c)}{'*' if mono else ''}{mono}"
            terms.append(("-" if c < 0 else "+", t))
        s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, t in terms[1:]:
            s += f" {sign} {t}"
        return s


L = GrothPoly.L()


def class_M0n(k: int) -> GrothPoly:
    """Class of the moduli space of ``k`` distinct points on the projective line."""
    if k < 3:
        raise InputError("need at least three points")
    out = GrothPoly.const(1)
    for j in range(2, k - 1):
        out = out * (L - j)
    return out


def R_c(c) -> int:
    """Dimension of the torus factor of the stratum of the type ``c``."""
    ex = c.expanded
    r = sum(car.dim for car in ex.edge_carriers)
    r -= sum(cone.dim for cone in ex.vertex_cones)
    r += 2 - c.unstable_count
    if r < 0:
        raise NegativeRc(f"torus dimension {r} is negative")
    return r


def stratum_class(c) -> GrothPoly:
    out = (L - 1) ** R_c(c)
    for v in range(c.tree.vertices):
        out = out * class_M0n(c.tree.valence(v))
    return out


def total_class(types: Iterable) -> GrothPoly:
    out = GrothPoly()
    for c in types:
        out = out + stratum_class(c)
    return out


def specialize(p: GrothPoly, how: str) -> int:
    """``"euler"`` evaluates at 1, ``"q=<int>"`` at that integer."""
    if how == "euler":
        return p.euler()
    if how.startswith("q="):
        try:
            q = int(how[2:])
        except ValueError:
            raise InputError(f"bad specialisation {how!r}") from None
        return p.count(q)
    raise InputError(f"unknown specialisation {how!r}")
