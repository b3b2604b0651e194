import math
import os
import random
import subprocess
import sys
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import linprog

from chamberforge import _lpkernel_py, exactgeom
from chamberforge.errors import MalformedSystem, ZeroVector
from chamberforge.exactgeom import (
    LinSystem,
    ccw_compare,
    cross,
    feasible_point,
    in_cone,
    in_open_cone,
    primitive,
    strict_feasible,
)

from oracles import cone_contains

coord = st.integers(-50, 50)
vec = st.tuples(coord, coord)
nonzero = vec.filter(lambda v: v != (0, 0))


def test_primitive_examples():
    assert primitive((4, -6)) == (2, -3)
    assert primitive((Fraction(1, 2), Fraction(3, 4))) == (2, 3)
    assert primitive((0, -7)) == (0, -1)
    with pytest.raises(ZeroVector):
        primitive((0, 0))


@given(nonzero, st.integers(1, 30))
def test_primitive_is_scale_invariant(v, k):
    p = primitive(v)
    assert math.gcd(*p) == 1
    assert primitive((k * v[0], k * v[1])) == p
    assert cross(p, v) == 0 and p[0] * v[0] + p[1] * v[1] > 0


def _angle(v):
    a = math.atan2(v[1], v[0])
    return a if a >= 0 else a + 2 * math.pi


@given(nonzero, nonzero)
def test_ccw_compare_matches_angles(u, v):
    c = ccw_compare(u, v)
    if cross(u, v) == 0 and u[0] * v[0] + u[1] * v[1] > 0:
        assert c == 0
    else:
        assert c == (-1 if _angle(u) < _angle(v) else 1)


@given(nonzero, nonzero, nonzero)
def test_ccw_compare_transitive(u, v, w):
    if ccw_compare(u, v) <= 0 and ccw_compare(v, w) <= 0:
        assert ccw_compare(u, w) <= 0


def test_ccw_compare_rejects_zero():
    with pytest.raises(ZeroVector):
        ccw_compare((0, 0), (1, 0))


@given(vec, nonzero, nonzero)
def test_in_cone_matches_coordinates(p, u, w):
    assert in_cone(p, (u, w)) == cone_contains(p, (u, w))
    assert in_cone(p, (u,)) == cone_contains(p, (u,))


def test_in_cone_examples():
    assert in_cone((1, 1), ((1, 0), (0, 1)))
    assert in_cone((1, 0), ((1, 0), (0, 1)))
    assert not in_cone((-1, 1), ((1, 0), (0, 1)))
    assert in_cone((-3, 0), ((1, 0), (-1, 0)))
    assert not in_open_cone((1, 0), (1, 0), (0, 1))
    assert in_open_cone((1, 2), (1, 0), (0, 1))


def _verify(point, eq, st_rows):
    assert all(sum(Fraction(c) * x for c, x in zip(r, point)) == 0 for r in eq)
    assert all(sum(Fraction(c) * x for c, x in zip(r, point)) > 0 for r in st_rows)


def test_feasible_point_examples():
    # x > 0, y > 0, x + y = 0 has no solution
    assert feasible_point(2, [[1, 1]], [[1, 0], [0, 1]]) is None
    p = feasible_point(3, [[1, -1, 0]], [[1, 0, 0], [0, 0, 1], [-1, 0, 1]])
    _verify(p, [[1, -1, 0]], [[1, 0, 0], [0, 0, 1], [-1, 0, 1]])
    assert feasible_point(2, [], []) == (0, 0)
    assert feasible_point(2, [], [[0, 0]]) is None


def test_feasible_point_rational_rows():
    eq = [[Fraction(1, 2), Fraction(-1, 3)]]
    st_rows = [[1, 0]]
    _verify(feasible_point(2, eq, st_rows), eq, st_rows)


def test_linsystem_named_variables():
    s = LinSystem()
    s.add_eq({"x": 1, "y": -2})
    s.add_strict({"y": 1})
    w = strict_feasible(s)
    assert w["x"] == 2 * w["y"] and w["y"] > 0
    s.add_strict({"x": -1})
    assert strict_feasible(s) is None


def test_linsystem_rejects_constants_and_floats():
    s = LinSystem()
    with pytest.raises(MalformedSystem):
        s.add_eq({"x": 1, 1: 3})
    with pytest.raises(MalformedSystem):
        s.add_strict({"x": 0.5})
    s.add_eq({"x": 1, 1: 0})


def _random_system(rng):
    k = rng.randint(1, 5)
    eq = [[rng.randint(-3, 3) for _ in range(k)] for _ in range(rng.randint(0, 2))]
    st_rows = [[rng.randint(-3, 3) for _ in range(k)] for _ in range(rng.randint(1, 7))]
    return k, eq, st_rows


def _scipy_feasible(k, eq, st_rows) -> bool:
    # maximise d subject to G x >= d, E x = 0, box on x
    c = np.zeros(k + 1)
    c[-1] = -1
    a_ub = [[-v for v in g] + [1] for g in st_rows]
    a_eq = [e + [0] for e in eq] or None
    res = linprog(
        c,
        A_ub=a_ub,
        b_ub=[0] * len(st_rows),
        A_eq=a_eq,
        b_eq=[0] * len(eq) if eq else None,
        bounds=[(-1, 1)] * k + [(0, 1)],
    )
    return -res.fun > 1e-9


def test_feasibility_agrees_with_float_lp():
    rng = random.Random(7)
    for _ in range(600):
        k, eq, st_rows = _random_system(rng)
        p = feasible_point(k, eq, st_rows)
        if p is not None:
            _verify(p, eq, st_rows)
        if any(any(r) for r in st_rows) and all(any(r) for r in st_rows):
            assert (p is not None) == _scipy_feasible(k, eq, st_rows), (eq, st_rows)


@given(st.integers(0, 10**6))
def test_nullspace_spans_solutions(seed):
    rng = random.Random(seed)
    k = rng.randint(1, 8)
    eq = [[rng.choice([0, 0, rng.randint(-9, 9)]) for _ in range(k)] for _ in range(rng.randint(1, k + 1))]
    basis = exactgeom._nullspace(k, eq)
    rank = np.linalg.matrix_rank(np.array(eq, dtype=float)) if any(any(r) for r in eq) else 0
    assert len(basis) == k - rank
    for vec in basis:
        assert all(sum(a * b for a, b in zip(r, vec)) == 0 for r in eq)
    if basis:
        assert np.linalg.matrix_rank(np.array(basis, dtype=float)) == len(basis)


def test_elimination_agrees_with_direct_kernel():
    rng = random.Random(13)
    for _ in range(400):
        k = rng.randint(2, 6)
        eq = [[rng.randint(-3, 3) for _ in range(k)] for _ in range(rng.randint(1, k))]
        st_rows = [[rng.randint(-3, 3) for _ in range(k)] for _ in range(rng.randint(1, 6))]
        if not all(any(r) for r in st_rows):
            continue
        direct = _lpkernel_py.solve_strict(k, eq, st_rows)
        p = feasible_point(k, eq, st_rows)
        assert (p is None) == (direct is None), (eq, st_rows)
        if p is not None:
            _verify(p, eq, st_rows)


@pytest.mark.skipif(exactgeom.KERNEL != "compiled", reason="compiled kernel not built")
def test_compiled_and_python_kernels_agree():
    from chamberforge import _lpkernel

    rng = random.Random(11)
    for _ in range(1500):
        k, eq, st_rows = _random_system(rng)
        if not all(any(r) for r in st_rows):
            continue
        assert _lpkernel.solve_strict(k, eq, st_rows) == _lpkernel_py.solve_strict(k, eq, st_rows)


@pytest.mark.skipif(exactgeom.KERNEL != "compiled", reason="compiled kernel not built")
def test_compiled_kernel_overflow_falls_back():
    from chamberforge import _lpkernel

    big = 10**15
    eq = [[big, -big + 1, 3]]
    st_rows = [[1, 0, 0], [0, big, 1], [big - 7, 1, -big]]
    with pytest.raises(OverflowError):
        _lpkernel.solve_strict(3, eq, st_rows)
    p = feasible_point(3, eq, st_rows)
    expected = _lpkernel_py.solve_strict(3, eq, st_rows)
    assert (p is None) == (expected is None)
    if p is not None:
        _verify(p, eq, st_rows)


def test_pure_kernel_selected_by_environment():
    env = dict(os.environ, CHAMBERFORGE_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c", "from chamberforge import exactgeom; print(exactgeom.KERNEL)"],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "python"
