"""Covariant presheaves of finite-dimensional vector spaces on a simplicial complex.

A presheaf assigns a dimension to every simplex and a restriction matrix
to every codimension-1 face inclusion; restrictions point from smaller
simplices to larger ones.  Deeper restrictions are composites, and the
path-independence check below is exactly what makes the Cech differential
square to zero.

Summands inside each cochain group are ordered lexicographically by
vertex tuple, so all matrices here are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from . import exactla
from .errors import (
    BaseMismatch,
    CompositionNonzero,
    FunctorialityViolation,
    IncompatibleSection,
    NonSplitExtension,
    ShapeMismatch,
    UnderdeterminedRestrictions,
    ZeroSection,
)
from .exactla import RationalMatrix
from .simplicial import Simplex, SimplicialComplex


@dataclass(frozen=True)
class Presheaf:
    base: SimplicialComplex
    dims: Mapping[Simplex, int]
    restrictions: Mapping[tuple[Simplex, Simplex], RationalMatrix]

    def dim(self, s: Simplex) -> int:
        return self.dims.get(s, 0)

    def is_zero(self) -> bool:
        return all(d == 0 for d in self.dims.values())


def _codim1_pairs(base: SimplicialComplex) -> list[tuple[Simplex, Simplex]]:
    pairs = []
    for tau in sorted(base.simplices):
        if len(tau) < 2:
            continue
        for pos in range(len(tau)):
            pairs.append((tau[:pos] + tau[pos + 1 :], tau))
    return pairs


def make_presheaf(
    base: SimplicialComplex,
    dims: Mapping[Simplex, int],
    restrictions: Mapping[tuple[Simplex, Simplex], RationalMatrix] | None = None,
) -> Presheaf:
    """Validate and normalize presheaf data.

    Simplices missing from ``dims`` get dimension 0.  Restrictions into or
    out of a zero space are filled in as zero matrices; every other
    codimension-1 restriction must be supplied.
    """
    full_dims: dict[Simplex, int] = {}
    for s in base.simplices:
        d = dims.get(s, 0)
        if d < 0:
            raise ShapeMismatch(f"negative dimension {d} at simplex {s}")
        full_dims[s] = d
    for s in dims:
        if s not in base.simplices:
            raise ShapeMismatch(f"dimension given for {s}, which is not in the base complex")
    restrictions = dict(restrictions or {})
    full_restrictions: dict[tuple[Simplex, Simplex], RationalMatrix] = {}
    for sigma, tau in _codim1_pairs(base):
        ds, dt = full_dims[sigma], full_dims[tau]
        given = restrictions.pop((sigma, tau), None)
        if given is None:
            if ds == 0 or dt == 0:
                full_restrictions[(sigma, tau)] = RationalMatrix.zeros(dt, ds)
            else:
                raise UnderdeterminedRestrictions(
                    f"no restriction matrix for {sigma} -> {tau} (dims {ds} -> {dt})"
                )
        else:
            if given.rows != dt or given.cols != ds:
                raise ShapeMismatch(
                    f"restriction {sigma} -> {tau} is {given.rows}x{given.cols}, "
                    f"expected {dt}x{ds}"
                )
            full_restrictions[(sigma, tau)] = given
    if restrictions:
        key = next(iter(restrictions))
        raise ShapeMismatch(f"restriction given for {key}, which is not a codimension-1 inclusion")
    return Presheaf(base, full_dims, full_restrictions)


def check_functoriality(v: Presheaf) -> None:
    """Raise unless all two-step restriction composites are path independent."""
    for rho in sorted(v.base.simplices):
        if len(rho) < 3:
            continue
        for x in range(len(rho)):
            for y in range(x + 1, len(rho)):
                sigma = tuple(w for k, w in enumerate(rho) if k not in (x, y))
                tau_x = tuple(w for k, w in enumerate(rho) if k != x)
                tau_y = tuple(w for k, w in enumerate(rho) if k != y)
                via_x = v.restrictions[(tau_x, rho)] @ v.restrictions[(sigma, tau_x)]
                via_y = v.restrictions[(tau_y, rho)] @ v.restrictions[(sigma, tau_y)]
                if via_x != via_y:
                    raise FunctorialityViolation(
                        f"restriction composites {sigma} -> {rho} disagree"
                    )


@dataclass(frozen=True)
class CochainComplex:
    """Spaces C^0..C^top with differentials C^p -> C^{p+1} squaring to zero."""

    space_dims: tuple[int, ...]
    differentials: tuple[RationalMatrix, ...]

    def __post_init__(self):
        n = len(self.space_dims)
        if len(self.differentials) != max(n - 1, 0):
            raise ShapeMismatch(
                f"{n} spaces need {max(n - 1, 0)} differentials, got {len(self.differentials)}"
            )
        for p, d in enumerate(self.differentials):
            if d.cols != self.space_dims[p] or d.rows != self.space_dims[p + 1]:
                raise ShapeMismatch(
                    f"differential {p} is {d.rows}x{d.cols}, expected "
                    f"{self.space_dims[p + 1]}x{self.space_dims[p]}"
                )
        for p in range(len(self.differentials) - 1):
            if not (self.differentials[p + 1] @ self.differentials[p]).is_zero():
                raise CompositionNonzero(f"differentials {p} and {p + 1} do not compose to zero")

    def cohomology(self) -> list[int]:
        n = len(self.space_dims)
        if n == 0:
            return []
        ranks = [exactla.rank(d) for d in self.differentials]
        out = []
        for p in range(n):
            rank_out = ranks[p] if p < n - 1 else 0
            rank_in = ranks[p - 1] if p > 0 else 0
            out.append(self.space_dims[p] - rank_out - rank_in)
        return out

    def euler_characteristic(self) -> int:
        return sum((-1) ** p * d for p, d in enumerate(self.space_dims))


def constant_presheaf(base: SimplicialComplex, d: int) -> Presheaf:
    """Every simplex gets dimension d with identity restrictions."""
    ident = RationalMatrix.identity(d)
    dims = {s: d for s in base.simplices}
    restrictions = {pair: ident for pair in _codim1_pairs(base)}
    return Presheaf(base, dims, restrictions)


def cech_complex(v: Presheaf) -> CochainComplex:
    """Block cochain complex of a presheaf with the alternating-sign differential."""
    check_functoriality(v)
    base = v.base
    top = base.dim
    if top < 0:
        return CochainComplex((), ())
    levels = [base.p_simplices(p) for p in range(top + 1)]
    level_dims = [[v.dim(s) for s in level] for level in levels]
    differentials = []
    for p in range(top):
        index = {s: i for i, s in enumerate(levels[p])}
        blocks: dict[tuple[int, int], RationalMatrix] = {}
        for ti, tau in enumerate(levels[p + 1]):
            for pos in range(len(tau)):
                sigma = tau[:pos] + tau[pos + 1 :]
                mat = v.restrictions[(sigma, tau)]
                blocks[(ti, index[sigma])] = mat.scaled(-1) if pos % 2 else mat
        differentials.append(exactla.block_matrix(level_dims[p + 1], level_dims[p], blocks))
    return CochainComplex(tuple(sum(d) for d in level_dims), tuple(differentials))


def presheaf_cohomology(v: Presheaf) -> list[int]:
    return cech_complex(v).cohomology()


def direct_sum(v: Presheaf, w: Presheaf) -> Presheaf:
    if v.base != w.base:
        raise BaseMismatch("direct sum requires a common base complex")
    dims = {s: v.dim(s) + w.dim(s) for s in v.base.simplices}
    restrictions = {}
    for pair in _codim1_pairs(v.base):
        sigma, tau = pair
        restrictions[pair] = exactla.block_matrix(
            [v.dim(tau), w.dim(tau)],
            [v.dim(sigma), w.dim(sigma)],
            {(0, 0): v.restrictions[pair], (1, 1): w.restrictions[pair]},
        )
    return Presheaf(v.base, dims, restrictions)


def _unit_column(v: Presheaf, unit: Mapping[Simplex, Sequence], s: Simplex) -> RationalMatrix:
    if s not in unit:
        raise IncompatibleSection(f"no unit vector for simplex {s}")
    vec = [exactla.as_fraction(x) for x in unit[s]]
    if len(vec) != v.dim(s):
        raise ShapeMismatch(
            f"unit vector at {s} has length {len(vec)}, expected {v.dim(s)}"
        )
    if all(x == 0 for x in vec):
        raise ZeroSection(f"unit vector at {s} is zero")
    return RationalMatrix.column(vec)


def split_constant(v: Presheaf, unit: Mapping[Simplex, Sequence]) -> tuple[int, Presheaf]:
    """Split off the rank-1 constant subpresheaf spanned by a compatible section.

    Returns (1, quotient) where the quotient presheaf has every dimension
    reduced by one.  The split is only legitimate when cohomology is
    additive across it, and that identity is verified here by direct
    computation; inputs whose extension does not split are rejected rather
    than silently mis-reported.
    """
    base = v.base
    units = {s: _unit_column(v, unit, s) for s in sorted(base.simplices)}
    for (sigma, tau), mat in v.restrictions.items():
        if mat @ units[sigma] != units[tau]:
            raise IncompatibleSection(
                f"restriction {sigma} -> {tau} does not carry the unit section to itself"
            )
    embeddings: dict[Simplex, RationalMatrix] = {}
    projections: dict[Simplex, RationalMatrix] = {}
    for s, u in units.items():
        d = v.dim(s)
        lead = min(i for i in range(d) if u.entry(i, 0) != 0)
        embed = RationalMatrix.from_entries(
            d, d - 1, {(i, k): 1 for k, i in enumerate(j for j in range(d) if j != lead)}
        )
        change = u.hstack(embed)
        inv = exactla.inverse(change)
        proj = RationalMatrix.from_entries(
            d - 1, d, {(i - 1, j): inv.entry(i, j) for i in range(1, d) for j in range(d)}
        )
        embeddings[s] = embed
        projections[s] = proj
    q_dims = {s: v.dim(s) - 1 for s in base.simplices}
    q_restrictions = {
        pair: projections[pair[1]] @ v.restrictions[pair] @ embeddings[pair[0]]
        for pair in _codim1_pairs(base)
    }
    quotient = make_presheaf(base, q_dims, q_restrictions)
    total = presheaf_cohomology(v)
    constant_part = presheaf_cohomology(constant_presheaf(base, 1))
    complement = presheaf_cohomology(quotient)
    expected = [a + b for a, b in zip(constant_part, complement)]
    if total != expected:
        raise NonSplitExtension(
            "cohomology is not additive across the unit section: "
            f"total {total}, constant {constant_part}, complement {complement}"
        )
    return 1, quotient
