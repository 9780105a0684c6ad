"""Minimal smooth-fan calculus.

Just enough convex geometry to read off the torus-invariant boundary
configuration of a smooth fan: rays become components, and a set of rays
cuts out a nonempty stratum exactly when it spans a cone.  No polytopes,
no ampleness; projectivity is asserted by the caller.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key
from itertools import combinations
from math import gcd

from . import exactla
from .errors import InvalidInput, NecessaryConditionFailed, NotSmooth
from .exactla import IntegerMatrix
from .snc import SHEAF, Component, SncDivisor, TableEntry, make_snc_divisor
from .snc import CohomologyReport, combinatorial_cohomology_check

CERTIFIED = "certified"
UNCERTIFIED = "uncertified (necessary conditions passed)"


@dataclass(frozen=True)
class Fan:
    dim: int
    rays: tuple[tuple[int, ...], ...]
    cones: frozenset[frozenset[int]]


def _is_primitive(vector: tuple[int, ...]) -> bool:
    g = 0
    for x in vector:
        g = gcd(g, abs(x))
    return g == 1


def _ray_matrix(f: Fan, cone: frozenset[int]) -> IntegerMatrix:
    rows = [list(f.rays[i]) for i in sorted(cone)]
    return IntegerMatrix.from_rows(rows, cols=f.dim)


def make_fan(dim: int, rays, cones) -> Fan:
    """Validate rays and close the cone list under faces.

    Every listed cone must be simplicial (linearly independent rays) and
    every ray must occur in some cone.
    """
    if dim < 0:
        raise InvalidInput("fan dimension must be nonnegative")
    ray_tuples = []
    for i, ray in enumerate(rays):
        ray = tuple(int(x) for x in ray)
        if len(ray) != dim:
            raise InvalidInput(f"ray {i} has {len(ray)} coordinates, expected {dim}")
        if all(x == 0 for x in ray):
            raise InvalidInput(f"ray {i} is zero")
        if not _is_primitive(ray):
            raise InvalidInput(f"ray {i} = {ray} is not primitive")
        ray_tuples.append(ray)
    if len(set(ray_tuples)) != len(ray_tuples):
        raise InvalidInput("duplicate rays")
    closed: set[frozenset[int]] = {frozenset()}
    for cone in cones:
        cone = frozenset(cone)
        if any(not (0 <= i < len(ray_tuples)) for i in cone):
            raise InvalidInput(f"cone {sorted(cone)} references an unknown ray")
        for k in range(len(cone) + 1):
            closed.update(frozenset(sub) for sub in combinations(sorted(cone), k))
    fan = Fan(dim, tuple(ray_tuples), frozenset(closed))
    used = set().union(*fan.cones) if fan.cones else set()
    for i in range(len(ray_tuples)):
        if i not in used:
            raise InvalidInput(f"ray {i} does not occur in any cone")
    for cone in fan.cones:
        if not cone:
            continue
        if len(cone) > dim:
            raise InvalidInput(f"cone {sorted(cone)} has more rays than the ambient dimension")
        factors = exactla.smith_normal_form(_ray_matrix(fan, cone))
        if len(factors) != len(cone):
            raise InvalidInput(f"cone {sorted(cone)} is not simplicial")
    return fan


def is_smooth(f: Fan) -> bool:
    """True iff every cone's rays extend to a basis of the integer lattice."""
    for cone in f.cones:
        if not cone:
            continue
        factors = exactla.smith_normal_form(_ray_matrix(f, cone))
        if any(d != 1 for d in factors):
            return False
    return True


def _cross(u: tuple[int, ...], v: tuple[int, ...]) -> int:
    return u[0] * v[1] - u[1] * v[0]


def _angular_compare(u: tuple[int, ...], v: tuple[int, ...]) -> int:
    def half(w):
        x, y = w
        return 0 if (y > 0 or (y == 0 and x > 0)) else 1

    hu, hv = half(u), half(v)
    if hu != hv:
        return hu - hv
    return -_cross(u, v)


def completeness_certificate(f: Fan) -> str:
    """Exact completeness check in dimension <= 2, necessary conditions above.

    In dimension at least 3 only a partial test runs: every codimension-1
    cone must lie in exactly two full-dimensional cones and those must form
    a connected adjacency graph.  Passing yields "uncertified", not a
    certificate; a failure names the offending cone.
    """
    n = f.dim
    if n == 0:
        return CERTIFIED
    if n == 1:
        directions = {r[0] > 0 for r in f.rays}
        if directions == {True, False}:
            return CERTIFIED
        raise NecessaryConditionFailed("rays do not cover both directions of the line")
    if n == 2:
        order = sorted(range(len(f.rays)), key=cmp_to_key(lambda a, b: _angular_compare(f.rays[a], f.rays[b])))
        two_cones = {c for c in f.cones if len(c) == 2}
        consecutive = set()
        for k, i in enumerate(order):
            j = order[(k + 1) % len(order)]
            pair = frozenset({i, j})
            if _cross(f.rays[i], f.rays[j]) <= 0:
                raise NecessaryConditionFailed(
                    f"rays {i} and {j} leave an angular gap of at least a half plane"
                )
            if pair not in two_cones:
                raise NecessaryConditionFailed(
                    f"consecutive rays {i} and {j} span no cone of the fan"
                )
            consecutive.add(pair)
        extra = two_cones - consecutive
        if extra:
            bad = sorted(sorted(c) for c in extra)[0]
            raise NecessaryConditionFailed(f"cone {bad} overlaps its neighbors")
        return CERTIFIED
    top = [c for c in f.cones if len(c) == n]
    if not top:
        raise NecessaryConditionFailed("no full-dimensional cones")
    for facet in (c for c in f.cones if len(c) == n - 1):
        owners = [c for c in top if facet < c]
        if len(owners) != 2:
            raise NecessaryConditionFailed(
                f"codimension-1 cone {sorted(facet)} lies in {len(owners)} full cones, expected 2"
            )
    seen = {0}
    queue = [0]
    while queue:
        current = top[queue.pop()]
        for k, other in enumerate(top):
            if k not in seen and len(current & other) == n - 1 and (current & other) in f.cones:
                seen.add(k)
                queue.append(k)
    if len(seen) != len(top):
        raise NecessaryConditionFailed("full-dimensional cones are not connected through facets")
    return UNCERTIFIED


def projective_space_fan(n: int) -> Fan:
    """Standard basis rays plus their negative sum; cones are all proper subsets."""
    if n < 1:
        raise InvalidInput("projective space fan needs n >= 1")
    rays = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    rays.append(tuple(-1 for _ in range(n)))
    cones = [c for k in range(n + 1) for c in combinations(range(n + 1), k)]
    return make_fan(n, rays, cones)


def boundary_divisor(f: Fan, selected_rays) -> SncDivisor:
    """Boundary configuration of the selected rays, with incidence read off the cones."""
    if not is_smooth(f):
        raise NotSmooth("boundary components of a singular fan are not handled")
    selected = sorted(set(selected_rays))
    if not selected:
        raise InvalidInput("select at least one ray")
    if any(not (0 <= i < len(f.rays)) for i in selected):
        raise InvalidInput("selected ray index out of range")
    position = {ray: k for k, ray in enumerate(selected)}
    components = [Component(name=f"D{ray}", dim=f.dim - 1) for ray in selected]
    strata = []
    selected_set = set(selected)
    for cone in f.cones:
        if cone and cone <= selected_set:
            strata.append(tuple(sorted(position[i] for i in cone)))
    tables = {}
    for t in strata:
        tables[(t, SHEAF, 0, 0)] = TableEntry(1, "constant")
        for q in range(1, f.dim - len(t) + 1):
            tables[(t, SHEAF, 0, q)] = TableEntry(0)
    return make_snc_divisor(components, strata, tables)


def toric_snc_cohomology(f: Fan, selected_rays) -> CohomologyReport:
    """Structure-sheaf cohomology of the boundary configuration; purely combinatorial."""
    return combinatorial_cohomology_check(boundary_divisor(f, selected_rays))
