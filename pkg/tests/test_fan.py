import itertools
import json
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chamberforge.errors import (
    DuplicateRay,
    InputError,
    NonPrimitiveRay,
    NotACone,
    NotARefinement,
    NotComplete,
    NotEquivalent,
    ZeroVector,
)
from chamberforge.fan import (
    ConeRef,
    analogous_cone,
    cone_map,
    dagger,
    hirzebruch,
    load_fan,
    make_fan,
    p1xp1,
    projective_plane,
    pushforward,
    refines,
    slope_sensitive,
    tangency_orders,
)
from chamberforge.tangency import sigma_equivalent

from oracles import perturbed, random_alpha, smallest_cone_gens

P2 = projective_plane()
coord = st.integers(-40, 40)
point = st.tuples(coord, coord)


def test_rays_sorted_counterclockwise():
    assert P2.rays == ((1, 0), (0, 1), (-1, -1))
    assert make_fan([(0, -1), (-1, 0), (0, 1), (1, 0)]).rays == p1xp1().rays
    assert hirzebruch(2).rays == ((1, 0), (0, 1), (-1, 2), (0, -1))


@pytest.mark.parametrize(
    "rays, err",
    [
        ([(1, 0), (0, 1), (0, 0)], ZeroVector),
        ([(2, 0), (0, 1), (-1, -1)], NonPrimitiveRay),
        ([(1, 0), (0, 1), (1, 0), (-1, -1)], DuplicateRay),
        ([(1, 0), (0, 1)], NotComplete),
        ([(1, 0), (0, 1), (-1, 0)], NotComplete),
        ([(1, 0), (-1, 1), (-1, -1), (0, -1), (2, 0.5)], InputError),
    ],
)
def test_make_fan_rejects(rays, err):
    with pytest.raises(err):
        make_fan(rays)


def test_load_fan_json():
    fan = load_fan(json.dumps({"name": "X", "rays": [[0, 1], [1, 0], [-1, -1]]}))
    assert fan.rays == P2.rays and fan.name == "X"
    with pytest.raises(InputError):
        load_fan({"name": "no rays"})


def test_dagger_of_projective_plane():
    # the dagger fan adds (-1,0), (0,-1) and (1,1)
    assert set(dagger(P2).rays) == {(1, 0), (0, 1), (-1, -1), (-1, 0), (0, -1), (1, 1)}


def test_slope_sensitive_example():
    fine = slope_sensitive(P2, [(2, 0), (0, 1), (-2, -1)])
    assert fine.rays == ((1, 0), (2, 1), (1, 1), (0, 1), (-1, 0), (-2, -1), (-1, -1), (0, -1))
    assert ("rho", (1, 0)) in fine.tags[(1, 0)] and ("I", 0b001) in fine.tags[(1, 0)]
    assert fine.tags[(2, 1)] == frozenset({("I", 0b011)})


@given(point)
def test_smallest_cone_matches_oracle(p):
    for fan in (P2, p1xp1(), hirzebruch(3)):
        c = fan.smallest_cone(p)
        assert c.gens == smallest_cone_gens(fan.rays, p)
        assert c.contains_relint(p)
        assert all(not f.contains_vector(p) for f in fan.cones() if f.dim < c.dim)


def test_cone_constructors():
    with pytest.raises(NotACone):
        ConeRef.sector((0, 1), (1, 0))
    s = ConeRef.sector((1, 0), (0, 1))
    assert ConeRef.ray((1, 0)).is_face_of(s) and ConeRef.origin().is_face_of(s)
    assert str(s) == "sector((1,0),(0,1))" and str(ConeRef.origin()) == "o"
    assert ConeRef.from_json(s.to_json()) == s
    assert s.in_span((-5, 3)) and not ConeRef.ray((1, 0)).in_span((1, 1))


def test_pushforward_and_refinement():
    fine = slope_sensitive(P2, [(2, 0), (0, 1), (-2, -1)])
    assert refines(fine, P2) and not refines(P2, fine)
    assert pushforward(fine, P2, ConeRef.ray((2, 1))) == ConeRef.sector((1, 0), (0, 1))
    assert pushforward(fine, P2, ConeRef.ray((0, 1))) == ConeRef.ray((0, 1))
    assert pushforward(fine, P2, ConeRef.sector((-1, 0), (-2, -1))) == ConeRef.sector((0, 1), (-1, -1))
    with pytest.raises(NotARefinement):
        pushforward(P2, fine, ConeRef.origin())
    with pytest.raises(NotACone):
        pushforward(fine, P2, ConeRef.sector((1, 0), (0, 1)))


def test_pushforward_monotone():
    fine = slope_sensitive(P2, [(3, 1), (1, 4), (-4, -5)])
    for c, d in itertools.product(fine.cones(), repeat=2):
        if c.is_face_of(d):
            assert pushforward(fine, P2, c).is_face_of(pushforward(fine, P2, d))


@given(st.integers(0, 10**6))
def test_slope_sensitive_contains_dagger_and_slopes(seed):
    rng = random.Random(seed)
    fan = rng.choice([P2, p1xp1(), hirzebruch(1)])
    a = random_alpha(rng, rng.choice([3, 4]))
    fine = slope_sensitive(fan, a)
    assert set(dagger(fan).rays) <= set(fine.rays)
    for mask in range(1, (1 << len(a)) - 1):
        s = (sum(a[i][0] for i in range(len(a)) if mask >> i & 1), sum(a[i][1] for i in range(len(a)) if mask >> i & 1))
        g = math.gcd(*s)
        assert ("I", mask) in fine.tags[(s[0] // g, s[1] // g)]


def test_analogous_cones_exist_for_equivalent_pairs():
    rng = random.Random(3)
    found = 0
    while found < 50:
        fan = rng.choice([P2, p1xp1(), hirzebruch(1), hirzebruch(2)])
        a = random_alpha(rng, rng.choice([3, 4]), rays=fan.rays)
        b = perturbed(rng, a)
        try:
            ok = sigma_equivalent(fan, a, b)
        except ZeroVector:
            continue
        if not ok:
            continue
        src, dst, _ = cone_map(fan, a, b)
        images = {analogous_cone(c, a, b, fan) for c in src.cones()}
        assert images == set(dst.cones())
        found += 1


def test_cone_map_refuses_inequivalent():
    with pytest.raises(NotEquivalent):
        cone_map(P2, [(1, 2), (1, 3), (-2, -5)], [(1, 0), (0, 1), (-1, -1)])


def test_tangency_orders_singular_fan():
    fan = make_fan([(1, 0), (1, 2), (-1, -1)])
    orders = tangency_orders(fan, (1, 1))
    assert [o.value for o in orders] == [Fraction(1, 2), Fraction(1, 2), 0]
    assert [o.multiple for o in orders] == [2, 2, 1]
    assert [o.order for o in orders] == [1, 1, 0]


def test_tangency_orders_smooth():
    assert [o.order for o in tangency_orders(P2, (1, 0))] == [1, 0, 0]
    assert [o.order for o in tangency_orders(P2, (1, 1))] == [1, 1, 0]
    assert [o.order for o in tangency_orders(P2, (-2, -2))] == [0, 0, 2]


@given(point.filter(lambda p: p != (0, 0)))
def test_tangency_orders_reconstruct_vector(a):
    for fan in (P2, make_fan([(1, 0), (1, 2), (-1, -1)]), hirzebruch(2)):
        orders = tangency_orders(fan, a)
        x = sum(o.value * o.ray[0] for o in orders)
        y = sum(o.value * o.ray[1] for o in orders)
        assert (x, y) == a
        assert all(o.value >= 0 and o.order.denominator == 1 for o in orders)
        assert sum(1 for o in orders if o.value) <= 2
