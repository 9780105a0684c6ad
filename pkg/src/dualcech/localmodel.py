"""Coordinate-hyperplane local models with multiplicities, checked degree by degree.

The model is affine n-space with components x_i = 0 for i in a chosen
index set, the i-th taken with multiplicity r_i.  Every ring in sight is a
monomial quotient and every map a monomial projection, so each graded
piece of the augmented restriction complex

    0 -> (whole configuration) -> sum over singletons -> sum over pairs -> ...

is a finite complex of explicit 0/+-1 matrices.  All maps preserve total
degree, which is why verifying a truncation degree by degree is sound.

A monomial x^a survives in the quotient by (x_{i_0}^{r_0}, ..., x_{i_p}^{r_p})
iff a_i < r_i for every index in the tuple, and it survives in the quotient
by the single product (prod x_i^{r_i}) iff a_i < r_i for at least one index.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator, Sequence

from .errors import InvalidInput
from .exactla import RationalMatrix
from .presheaf import CochainComplex

ALL = "all"
ANY = "any"


@dataclass(frozen=True)
class LocalModelSpec:
    ambient: int
    components: tuple[int, ...]  # 1-based coordinate indices, ascending
    multiplicities: tuple[int, ...]
    degree_bound: int

    def multiplicity_of(self, index: int) -> int:
        return self.multiplicities[self.components.index(index)]


def make_local_model(
    ambient: int,
    components: Sequence[int],
    multiplicities: Sequence[int],
    degree_bound: int | None = None,
) -> LocalModelSpec:
    components = tuple(components)
    multiplicities = tuple(multiplicities)
    if ambient < 1:
        raise InvalidInput("ambient dimension must be at least 1")
    if not components:
        raise InvalidInput("at least one component index is required")
    if any(a >= b for a, b in zip(components, components[1:])):
        raise InvalidInput("component indices must be strictly ascending")
    if components[0] < 1 or components[-1] > ambient:
        raise InvalidInput(f"component indices must lie in 1..{ambient}")
    if len(multiplicities) != len(components):
        raise InvalidInput("one multiplicity per component is required")
    if any(r < 1 for r in multiplicities):
        raise InvalidInput("multiplicities must be at least 1")
    if degree_bound is None:
        degree_bound = 2 * sum(multiplicities)
    if degree_bound < 0:
        raise InvalidInput("degree bound must be nonnegative")
    return LocalModelSpec(ambient, components, multiplicities, degree_bound)


def _monomials(n: int, total: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _monomials(n - 1, total - first):
            yield (first,) + rest


@dataclass(frozen=True)
class MonomialQuotientBasis:
    ambient: int
    degree: int
    mode: str  # ALL: survive every constraint; ANY: survive at least one
    constraints: tuple[tuple[int, int], ...]  # (1-based coordinate, multiplicity)
    exponents: tuple[tuple[int, ...], ...]

    def contains(self, exponent: Sequence[int]) -> bool:
        if len(exponent) != self.ambient or sum(exponent) != self.degree:
            return False
        checks = (exponent[i - 1] < r for i, r in self.constraints)
        return all(checks) if self.mode == ALL else any(checks)


def quotient_basis(
    spec: LocalModelSpec, stratum: Sequence[int] | None, degree: int
) -> MonomialQuotientBasis:
    """Monomial basis of one graded piece.

    ``stratum`` is an ascending tuple of component indices; ``None`` means
    the whole configuration (quotient by the product of the powers).
    """
    if degree > spec.degree_bound:
        raise InvalidInput(f"degree {degree} exceeds the bound {spec.degree_bound}")
    if stratum is None:
        mode = ANY
        constraints = tuple(zip(spec.components, spec.multiplicities))
    else:
        stratum = tuple(stratum)
        if any(i not in spec.components for i in stratum) or not stratum:
            raise InvalidInput(f"stratum {stratum} is not a tuple of component indices")
        if any(a >= b for a, b in zip(stratum, stratum[1:])):
            raise InvalidInput(f"stratum {stratum} is not strictly ascending")
        mode = ALL
        constraints = tuple((i, spec.multiplicity_of(i)) for i in stratum)
    probe = MonomialQuotientBasis(spec.ambient, degree, mode, constraints, ())
    exponents = tuple(a for a in _monomials(spec.ambient, degree) if probe.contains(a))
    return MonomialQuotientBasis(spec.ambient, degree, mode, constraints, exponents)


def sheaf_cech_complex(spec: LocalModelSpec, degree: int) -> CochainComplex:
    """The augmented complex in one degree; index 0 is the whole configuration.

    Matrices send a basis monomial to its class in the target quotient,
    which is the monomial itself or zero, with the alternating sign of the
    omitted index.  The augmentation carries no signs.
    """
    tuples_by_level = [
        [tuple(c) for c in combinations(spec.components, p + 1)]
        for p in range(len(spec.components))
    ]
    bases: dict[tuple[int, ...] | None, MonomialQuotientBasis] = {
        None: quotient_basis(spec, None, degree)
    }
    for level in tuples_by_level:
        for t in level:
            bases[t] = quotient_basis(spec, t, degree)
    space_dims = [len(bases[None].exponents)]
    for level in tuples_by_level:
        space_dims.append(sum(len(bases[t].exponents) for t in level))

    def offsets(level):
        out = {}
        start = 0
        for t in level:
            out[t] = start
            start += len(bases[t].exponents)
        return out

    def index_maps(level):
        return {t: {a: k for k, a in enumerate(bases[t].exponents)} for t in level}

    differentials = []
    # augmentation: restriction of the whole configuration to each component
    level0 = tuples_by_level[0]
    off0 = offsets(level0)
    idx0 = index_maps(level0)
    entries: dict[tuple[int, int], int] = {}
    for col, a in enumerate(bases[None].exponents):
        for t in level0:
            row = idx0[t].get(a)
            if row is not None:
                entries[(off0[t] + row, col)] = 1
    differentials.append(
        RationalMatrix.from_entries(space_dims[1], space_dims[0], entries)
    )
    for p in range(len(spec.components) - 1):
        source = tuples_by_level[p]
        target = tuples_by_level[p + 1]
        src_off = offsets(source)
        src_idx = index_maps(source)
        tgt_off = offsets(target)
        tgt_idx = index_maps(target)
        entries = {}
        for tau in target:
            for pos in range(len(tau)):
                sigma = tau[:pos] + tau[pos + 1 :]
                sign = -1 if pos % 2 else 1
                for a, col in src_idx[sigma].items():
                    row = tgt_idx[tau].get(a)
                    if row is not None:
                        entries[(tgt_off[tau] + row, src_off[sigma] + col)] = sign
        differentials.append(
            RationalMatrix.from_entries(space_dims[p + 2], space_dims[p + 1], entries)
        )
    return CochainComplex(tuple(space_dims), tuple(differentials))


@dataclass(frozen=True)
class ExactnessVerdict:
    exact: bool
    degree_bound: int
    homology: tuple[tuple[int, ...], ...]  # homology[k][joint], joint 0 = augmentation

    def failures(self) -> list[tuple[int, int]]:
        return [
            (k, joint)
            for k, row in enumerate(self.homology)
            for joint, h in enumerate(row)
            if h != 0
        ]


def verify_exactness(spec: LocalModelSpec) -> ExactnessVerdict:
    """Check that every graded piece of the augmented complex is exact.

    Exactness at the first joint is injectivity of the augmentation; at the
    last joint it is surjectivity onto the deepest intersection.
    """
    table = []
    exact = True
    for degree in range(spec.degree_bound + 1):
        row = tuple(sheaf_cech_complex(spec, degree).cohomology())
        if any(row):
            exact = False
        table.append(row)
    return ExactnessVerdict(exact, spec.degree_bound, tuple(table))


def sweep_specs(
    max_ambient: int = 4,
    multiplicity_values: Sequence[int] = (1, 2, 3),
    degree_bound: int = 8,
) -> Iterator[LocalModelSpec]:
    """All models with ambient dimension, component subset, and multiplicities bounded."""
    for ambient in range(1, max_ambient + 1):
        for size in range(1, ambient + 1):
            for components in combinations(range(1, ambient + 1), size):
                for mults in product(multiplicity_values, repeat=size):
                    yield make_local_model(ambient, components, mults, degree_bound)
