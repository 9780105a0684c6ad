"""Finite abstract simplicial complexes and constant-coefficient cohomology.

A simplex is a strictly ascending tuple of 0-based vertex indices; the
global vertex order orients every simplex, and the k-th face of a simplex
carries the sign (-1)^k in every coboundary matrix built here.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from . import exactla
from .errors import BadTuple
from .exactla import IntegerMatrix, RationalMatrix

Simplex = tuple[int, ...]


def check_vertex_tuple(t: Sequence[int], vertex_count: int) -> Simplex:
    t = tuple(t)
    if not t:
        raise BadTuple("empty vertex tuple")
    if any(not isinstance(v, int) for v in t):
        raise BadTuple(f"non-integer vertex in {t}")
    if any(a >= b for a, b in zip(t, t[1:])):
        raise BadTuple(f"vertex tuple {t} is not strictly ascending")
    if t[0] < 0 or t[-1] >= vertex_count:
        raise BadTuple(f"vertex tuple {t} out of range for {vertex_count} vertices")
    return t


@dataclass(frozen=True)
class SimplicialComplex:
    vertex_count: int
    simplices: frozenset[Simplex]

    @property
    def dim(self) -> int:
        return max((len(s) for s in self.simplices), default=0) - 1

    def p_simplices(self, p: int) -> list[Simplex]:
        return sorted(s for s in self.simplices if len(s) == p + 1)

    def counts(self) -> list[int]:
        out = [0] * (self.dim + 1)
        for s in self.simplices:
            out[len(s) - 1] += 1
        return out


def from_facets(vertex_count: int, facets: Iterable[Sequence[int]]) -> SimplicialComplex:
    """Smallest complex containing the given facets (face closure)."""
    simplices: set[Simplex] = set()
    for facet in facets:
        facet = check_vertex_tuple(facet, vertex_count)
        for k in range(1, len(facet) + 1):
            simplices.update(combinations(facet, k))
    return SimplicialComplex(vertex_count, frozenset(simplices))


def euler_characteristic(k: SimplicialComplex) -> int:
    return sum((-1) ** (len(s) - 1) for s in k.simplices)


def coboundary_matrix(k: SimplicialComplex, p: int) -> IntegerMatrix:
    """Signed incidence matrix from p-simplices to (p+1)-simplices."""
    lower = k.p_simplices(p)
    upper = k.p_simplices(p + 1)
    index = {s: i for i, s in enumerate(lower)}
    entries: dict[tuple[int, int], int] = {}
    for ri, tau in enumerate(upper):
        for pos in range(len(tau)):
            face = tau[:pos] + tau[pos + 1 :]
            entries[(ri, index[face])] = -1 if pos % 2 else 1
    return IntegerMatrix.from_entries(len(upper), len(lower), entries)


def betti_numbers(k: SimplicialComplex) -> list[int]:
    """Dimensions of cohomology with rational coefficients, degrees 0..dim."""
    d = k.dim
    if d < 0:
        return []
    counts = k.counts()
    diffs = [coboundary_matrix(k, p).to_rational() for p in range(d)]
    out = []
    for p in range(d + 1):
        d_in = diffs[p - 1] if p > 0 else RationalMatrix.zeros(counts[0], 0)
        d_out = diffs[p] if p < d else RationalMatrix.zeros(0, counts[d])
        out.append(exactla.homology_dim(d_in, d_out))
    return out


def integral_cohomology(k: SimplicialComplex) -> list[tuple[int, list[int]]]:
    """Per-degree (free rank, torsion invariant factors) with integer coefficients.

    Computed from Smith normal forms of the same coboundary matrices used
    for the rational Betti numbers: the free rank in degree p is
    dim ker(delta^p) - rank(delta^{p-1}) and the torsion is carried by the
    invariant factors of delta^{p-1} that exceed 1.
    """
    d = k.dim
    if d < 0:
        return []
    counts = k.counts()
    snfs = [exactla.smith_normal_form(coboundary_matrix(k, p)) for p in range(d)]
    out = []
    for p in range(d + 1):
        rank_out = len(snfs[p]) if p < d else 0
        rank_in = len(snfs[p - 1]) if p > 0 else 0
        free = counts[p] - rank_out - rank_in
        torsion = [f for f in (snfs[p - 1] if p > 0 else []) if f != 1]
        out.append((free, torsion))
    return out
