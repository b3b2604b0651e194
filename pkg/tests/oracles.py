"""Independent reference computations used to cross-check the library.

Nothing here imports the code under test except for plain data types, so
agreement between an oracle and the library is meaningful.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

import mpmath

# ---------------------------------------------------------------------------
# random tangencies


def balanced(vectors):
    vs = [tuple(v) for v in vectors]
    vs.append((-sum(x for x, _ in vs), -sum(y for _, y in vs)))
    return tuple(vs)


def subset_sums(alpha):
    n = len(alpha)
    out = {}
    for mask in range(1, (1 << n) - 1):
        out[mask] = (
            sum(alpha[i][0] for i in range(n) if mask >> i & 1),
            sum(alpha[i][1] for i in range(n) if mask >> i & 1),
        )
    return out


def nondegenerate(alpha) -> bool:
    return all(v != (0, 0) for v in subset_sums(alpha).values())


def collinearities(rays, alpha) -> int:
    """Number of parallel pairs among proper subset sums (up to complement) and fan rays.

    Zero exactly when the tangency avoids every wall.
    """
    n = len(alpha)
    sums = subset_sums(alpha)
    reps = [m for m in sums if m & 1]
    vecs = [sums[m] for m in reps]
    count = 0
    for i, j in itertools.combinations(range(len(vecs)), 2):
        u, w = vecs[i], vecs[j]
        if u[0] * w[1] - u[1] * w[0] == 0:
            count += 1
    for r in rays:
        for u in vecs:
            if r[0] * u[1] - r[1] * u[0] == 0:
                count += 1
    return count


def random_alpha(rng: random.Random, n: int, radius: int = 4, rays=None):
    """Balanced nondegenerate tangency; off every wall of ``rays`` when given."""
    while True:
        a = balanced((rng.randint(-radius, radius), rng.randint(-radius, radius)) for _ in range(n - 1))
        if not nondegenerate(a):
            continue
        if rays is not None and collinearities(rays, a):
            continue
        return a


def perturbed(rng: random.Random, alpha, factor: int = 10, jitter: int = 2):
    """Scaled copy of ``alpha`` with small balanced noise, usually in the same chamber."""
    return balanced(
        (factor * x + rng.randint(-jitter, jitter), factor * y + rng.randint(-jitter, jitter)) for x, y in alpha[:-1]
    )


# ---------------------------------------------------------------------------
# cyclic order by high precision angles


def angle_groups(rays, alpha, dps: int = 60):
    """Circular sequence of equal-direction groups, from numeric angles.

    Elements are ``("rho", v)`` for fan rays and their negatives and
    ``("I", mask)`` for proper subsets. Angles are compared at ``dps``
    decimal digits; coordinates are small integers, so ties are exact.
    """
    mpmath.mp.dps = dps
    elems = {}
    for v in rays:
        for w in (tuple(v), (-v[0], -v[1])):
            g = math.gcd(*w)
            elems[("rho", (w[0] // g, w[1] // g))] = w
    for mask, s in subset_sums(alpha).items():
        elems[("I", mask)] = s

    def ang(v):
        t = mpmath.atan2(v[1], v[0])
        return t if t >= 0 else t + 2 * mpmath.pi

    keyed = sorted((ang(v), e) for e, v in elems.items())
    eps = mpmath.mpf(10) ** (-(dps // 2))
    groups = []
    last = None
    for a, e in keyed:
        if last is not None and abs(a - last) < eps:
            groups[-1].add(e)
        else:
            groups.append({e})
        last = a
    return [frozenset(g) for g in groups]


def rotate_to_min(groups):
    """Rotate a circular sequence so that the group with the least element comes first."""
    i = min(range(len(groups)), key=lambda k: min(groups[k]))
    return tuple(groups[i:] + groups[:i])


def angle_equivalent(rays, a, b) -> bool:
    ga, gb = angle_groups(rays, a), angle_groups(rays, b)
    return rotate_to_min(ga) == rotate_to_min(gb)


# ---------------------------------------------------------------------------
# planar geometry by coordinates


def cone_contains(p, gens) -> bool:
    """Closed cone membership by solving ``p = s u + t w`` with Cramer's rule."""
    if not gens:
        return p == (0, 0)
    if len(gens) == 1:
        (u,) = gens
        if p == (0, 0):
            return True
        return p[0] * u[1] - p[1] * u[0] == 0 and p[0] * u[0] + p[1] * u[1] > 0
    u, w = gens
    det = u[0] * w[1] - u[1] * w[0]
    if det == 0:
        if u[0] * w[0] + u[1] * w[1] > 0:
            return cone_contains(p, (u,))
        return p[0] * u[1] - p[1] * u[0] == 0
    s = Fraction(p[0] * w[1] - p[1] * w[0], det)
    t = Fraction(u[0] * p[1] - u[1] * p[0], det)
    return s >= 0 and t >= 0


def smallest_cone_gens(rays, p):
    """Generators of the smallest cone of the fan ``rays`` (CCW order) containing ``p``."""
    if p == (0, 0):
        return ()
    k = len(rays)
    for v in rays:
        if cone_contains(p, (v,)):
            return (tuple(v),)
    for i in range(k):
        u, w = rays[i], rays[(i + 1) % k]
        if cone_contains(p, (u, w)):
            return (tuple(u), tuple(w))
    raise AssertionError("fan is not complete")


# ---------------------------------------------------------------------------
# stable trees from Pruefer sequences


def _pruefer_edges(seq, k):
    degree = [1] * k
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(i for i in range(k) if degree[i] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, w = [i for i in range(k) if degree[i] == 1]
    edges.append((u, w))
    return edges


def _labelled_trees(k):
    if k == 1:
        yield []
    elif k == 2:
        yield [(0, 1)]
    else:
        for seq in itertools.product(range(k), repeat=k - 2):
            yield _pruefer_edges(seq, k)


def stable_tree_splits(n: int) -> set[frozenset]:
    """Every stable tree with legs 1..n, as the set of its edge splits.

    A split is stored as the bitmask of the side holding mark 1. Trees on
    ``k`` vertices come from Pruefer sequences and legs are attached by
    every map from marks to vertices.
    """
    out = set()
    for k in range(1, n - 1):
        for edges in _labelled_trees(k):
            adj = {v: [] for v in range(k)}
            for u, w in edges:
                adj[u].append(w)
                adj[w].append(u)
            for legs in itertools.product(range(k), repeat=n):
                val = [len(adj[v]) for v in range(k)]
                for v in legs:
                    val[v] += 1
                if min(val) < 3:
                    continue
                splits = []
                for u, w in edges:
                    seen = {u}
                    stack = [u]
                    while stack:
                        x = stack.pop()
                        for y in adj[x]:
                            if y not in seen and not (x == u and y == w):
                                seen.add(y)
                                stack.append(y)
                    mask = sum(1 << i for i in range(n) if legs[i] in seen)
                    if not mask & 1:
                        mask = ((1 << n) - 1) ^ mask
                    splits.append(mask)
                out.add(frozenset(splits))
    return out


# ---------------------------------------------------------------------------
# point configurations on the projective line over a prime field


def projective_line(q: int):
    return [(1, x) for x in range(q)] + [(0, 1)]


def pgl2_order(q: int) -> int:
    """Invertible 2x2 matrices over F_q counted one by one, modulo scalars."""
    inv = sum(1 for a, b, c, d in itertools.product(range(q), repeat=4) if (a * d - b * c) % q)
    return inv // (q - 1)


def distinct_tuples(q: int, k: int) -> int:
    """Ordered ``k``-tuples of distinct points of the projective line over F_q, enumerated."""
    return sum(1 for _ in itertools.permutations(projective_line(q), k))


# ---------------------------------------------------------------------------
# Euler characteristic and dimension census from JSON output


def _cone_dim(cone_json) -> int:
    return len(cone_json)


def census_from_json(stratum: dict):
    """Torus dimension and vertex valences recomputed from a serialised stratum."""
    graph = stratum["graph"]
    nv = graph["vertices"]
    stable = stratum["tree"]["vertices"]
    val = [0] * nv
    for u, w in graph["edges"]:
        val[u] += 1
        val[w] += 1
    for v in graph["legs"].values():
        val[v] += 1
    unstable = [v for v in range(nv) if val[v] == 2]
    assert len(unstable) == nv - stable
    r = sum(_cone_dim(c) for c in stratum["carriers"]["edges"])
    r -= sum(_cone_dim(c) for c in stratum["vertex_cones"])
    r += 2 - len(unstable)
    return r, [val[v] for v in range(nv) if val[v] >= 3]


def euler_census(strata) -> int:
    total = 0
    for s in strata:
        r, vals = census_from_json(s)
        if r == 0:
            term = 1
            for k in vals:
                term *= (-1) ** (k - 3) * math.factorial(k - 3)
            total += term
    return total
