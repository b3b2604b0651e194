"""Exact planar predicates and strict linear feasibility.

All predicates work on integer or ``Fraction`` coordinates and never take
square roots or call trigonometric functions.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from numbers import Rational
from typing import Iterable, Mapping, Sequence

from .errors import MalformedSystem, ZeroVector
from . import _lpkernel_py

try:
    if os.environ.get("CHAMBERFORGE_PURE"):
        raise ImportError("pure kernel requested")
    from . import _lpkernel as _compiled
except ImportError:
    _compiled = None

KERNEL = "compiled" if _compiled is not None else "python"


def cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def dot(u, v):
    return u[0] * v[0] + u[1] * v[1]


def add(u, v):
    return (u[0] + v[0], u[1] + v[1])


def sub(u, v):
    return (u[0] - v[0], u[1] - v[1])


def scale(t, u):
    return (t * u[0], t * u[1])


def neg(u):
    return (-u[0], -u[1])


def is_zero(u):
    return u[0] == 0 and u[1] == 0


def primitive(v) -> tuple[int, int]:
    """Primitive integer vector on the ray through ``v``.

    Accepts integer or rational coordinates.
    """
    x, y = Fraction(v[0]), Fraction(v[1])
    if x == 0 and y == 0:
        raise ZeroVector(f"zero vector has no primitive direction: {tuple(v)}")
    lcm = math.lcm(x.denominator, y.denominator)
    a, b = int(x * lcm), int(y * lcm)
    g = math.gcd(a, b)
    return (a // g, b // g)


def is_primitive(v) -> bool:
    return (
        all(isinstance(c, int) and not isinstance(c, bool) for c in v)
        and math.gcd(v[0], v[1]) == 1
    )


def same_direction(u, v) -> bool:
    """True iff ``u`` and ``v`` are nonzero positive multiples of each other."""
    return cross(u, v) == 0 and dot(u, v) > 0


def parallel(u, v) -> bool:
    return cross(u, v) == 0


def _half(v) -> int:
    return 0 if v[1] > 0 or (v[1] == 0 and v[0] > 0) else 1


def ccw_compare(u, v) -> int:
    """Compare the angles of ``u`` and ``v`` measured counterclockwise from (1, 0).

    Returns -1, 0 or 1; zero means same direction.
    """
    if is_zero(u) or is_zero(v):
        raise ZeroVector("angle of the zero vector is undefined")
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return -1 if hu < hv else 1
    c = cross(u, v)
    if c > 0:
        return -1
    if c < 0:
        return 1
    return 0


angle_key = cmp_to_key(ccw_compare)


def strictly_between(u, p, w) -> bool:
    """True iff ``p`` lies strictly inside the cone from ``u`` counterclockwise to ``w``.

    The cone must be pointed: ``cross(u, w) > 0``.
    """
    return cross(u, p) > 0 and cross(p, w) > 0


def in_cone(p, gens: Sequence) -> bool:
    """Closed cone membership for at most two generators.

    Two antiparallel generators span a line.
    """
    if len(gens) == 0:
        return is_zero(p)
    if len(gens) == 1:
        g = gens[0]
        return is_zero(p) or same_direction(p, g)
    u, w = gens
    c = cross(u, w)
    if c == 0:
        if dot(u, w) > 0:
            return is_zero(p) or same_direction(p, u)
        return cross(p, u) == 0
    s = Fraction(cross(p, w), c)
    t = Fraction(cross(u, p), c)
    return s >= 0 and t >= 0


def in_open_cone(p, u, w) -> bool:
    """Membership in the interior of ``Cone(u, w)`` with strictly positive coefficients."""
    c = cross(u, w)
    if c == 0:
        return False
    s = Fraction(cross(p, w), c)
    t = Fraction(cross(u, p), c)
    return s > 0 and t > 0


def basis_coords(p, u, w) -> tuple[Fraction, Fraction]:
    """Coefficients ``(s, t)`` with ``p = s u + t w``."""
    c = cross(u, w)
    if c == 0:
        raise ZeroVector("generators are parallel")
    return Fraction(cross(p, w), c), Fraction(cross(u, p), c)


# ---------------------------------------------------------------------------
# strict feasibility


def _solve_rows(nvars: int, eq_rows: list, strict_rows: list):
    if _compiled is not None:
        try:
            return _compiled.solve_strict(nvars, eq_rows, strict_rows)
        except OverflowError:
            pass
    return _lpkernel_py.solve_strict(nvars, eq_rows, strict_rows)


def _integer_row(coeffs: Sequence) -> list[int]:
    """Positive multiple of a rational row with coprime integer entries."""
    if all(type(c) is int for c in coeffs):
        row = list(coeffs)
    else:
        fr = [Fraction(c) for c in coeffs]
        lcm = 1
        for c in fr:
            lcm = math.lcm(lcm, c.denominator)
        row = [int(c * lcm) for c in fr]
    g = math.gcd(*row)
    return [c // g for c in row] if g > 1 else row


def _reduce_sparse(row: dict) -> dict:
    g = math.gcd(*row.values())
    return {k: v // g for k, v in row.items()} if g > 1 else row


def _nullspace(nvars: int, eq_rows: list) -> list[list[int]]:
    """Integer basis of the solutions of ``e . x = 0``, by exact row reduction.

    Rows are kept sparse and gcd-reduced, so elimination stays in integers.
    """
    pending = [_reduce_sparse({k: c for k, c in enumerate(r) if c}) for r in eq_rows]
    pending = [r for r in pending if r]
    reduced = {}  # pivot column -> row with that column eliminated elsewhere
    for row in pending:
        for col, prow in reduced.items():
            f = row.get(col)
            if f:
                row = _combine(row, prow, col)
        if not row:
            continue
        col = min(row)
        for c, prow in list(reduced.items()):
            if col in prow:
                reduced[c] = _combine(prow, row, col)
        reduced[col] = row
    basis = []
    for free in range(nvars):
        if free in reduced:
            continue
        vec = [Fraction(0)] * nvars
        vec[free] = Fraction(1)
        for col, prow in reduced.items():
            if free in prow:
                vec[col] = Fraction(-prow[free], prow[col])
        basis.append(_integer_row(vec))
    return basis


def _combine(row: dict, prow: dict, col: int) -> dict:
    """Eliminate ``col`` from ``row`` using ``prow``."""
    a, f = prow[col], row[col]
    out = {k: a * v for k, v in row.items()}
    for k, v in prow.items():
        nv = out.get(k, 0) - f * v
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return _reduce_sparse(out) if out else out


def _solve_reduced(nvars: int, eq_rows: list, strict_rows: list):
    """Solve after substituting a nullspace basis for the equalities.

    Returns ``(numerators, den)`` like the kernels, or None.
    """
    if not eq_rows:
        return _solve_rows(nvars, [], strict_rows)
    basis = _nullspace(nvars, eq_rows)
    if not basis:
        return None
    reduced = []
    seen = set()
    for g in strict_rows:
        row = [sum(a * b for a, b in zip(g, vec)) for vec in basis]
        if not any(row):
            return None
        row = tuple(_integer_row(row))
        if row not in seen:
            seen.add(row)
            reduced.append(list(row))
    res = _solve_rows(len(basis), [], reduced)
    if res is None:
        return None
    ys, den = res
    nums = [sum(y * vec[j] for y, vec in zip(ys, basis)) for j in range(nvars)]
    return nums, den


def integer_feasible_point(nvars: int, eq_rows: list, strict_rows: list):
    """Like ``feasible_point`` for integer rows, returning an integer point.

    The systems are homogeneous, so the witness is scaled to clear
    denominators. Returns a tuple of ints or None.
    """
    if not strict_rows:
        return (0,) * nvars
    res = _solve_reduced(nvars, eq_rows, strict_rows)
    if res is None:
        return None
    nums = res[0]
    g = 0
    for v in nums:
        g = math.gcd(g, v)
    return tuple(v // g for v in nums) if g > 1 else tuple(nums)


def feasible_point(nvars: int, eq_rows: Iterable[Sequence], strict_rows: Iterable[Sequence]):
    """Point ``x`` with ``e . x = 0`` for all ``eq_rows`` and ``g . x > 0`` for all ``strict_rows``.

    Rows hold rational coefficients. Returns a tuple of Fractions or None.
    """
    eq = [_integer_row(r) for r in eq_rows]
    st = [_integer_row(r) for r in strict_rows]
    eq = [r for r in eq if any(r)]
    for r in st:
        if not any(r):
            return None
    if not st:
        return tuple(Fraction(0) for _ in range(nvars))
    res = _solve_reduced(nvars, eq, st)
    if res is None:
        return None
    nums, den = res
    return tuple(Fraction(v, den) for v in nums)


def _check_coeff(c):
    if isinstance(c, bool) or not isinstance(c, Rational):
        raise MalformedSystem(f"coefficient {c!r} is not an exact rational")
    return Fraction(c)


@dataclass
class LinSystem:
    """Homogeneous system of linear equalities and strict inequalities over named variables.

    Forms are mappings from variable name to rational coefficient. A
    constant term is passed with the reserved key ``1`` and must be zero.
    """

    variables: list[str] = field(default_factory=list)
    equalities: list[dict] = field(default_factory=list)
    strict: list[dict] = field(default_factory=list)

    def var(self, name: str) -> str:
        if name not in self._index:
            self.variables.append(name)
        return name

    @property
    def _index(self):
        return {v: i for i, v in enumerate(self.variables)}

    def _form(self, form: Mapping) -> dict:
        out = {}
        for k, c in form.items():
            c = _check_coeff(c)
            if k == 1:
                if c != 0:
                    raise MalformedSystem("constant terms are not allowed")
                continue
            self.var(k)
            if c:
                out[k] = out.get(k, Fraction(0)) + c
        return out

    def add_eq(self, form: Mapping) -> None:
        self.equalities.append(self._form(form))

    def add_strict(self, form: Mapping) -> None:
        """Add ``form > 0``."""
        self.strict.append(self._form(form))

    def rows(self):
        idx = self._index
        n = len(self.variables)

        def dense(f):
            row = [Fraction(0)] * n
            for k, c in f.items():
                row[idx[k]] = c
            return row

        return [dense(f) for f in self.equalities], [dense(f) for f in self.strict]


def strict_feasible(system: LinSystem) -> dict | None:
    """Exact witness for a homogeneous system with strict inequalities.

    Returns a mapping from variable name to ``Fraction`` satisfying every
    equality exactly and every strict inequality strictly, or None when no
    such point exists.
    """
    eq, st = system.rows()
    point = feasible_point(len(system.variables), eq, st)
    if point is None:
        return None
    return dict(zip(system.variables, point))
