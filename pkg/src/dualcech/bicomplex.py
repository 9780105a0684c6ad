"""First-quadrant bicomplexes and their filtration spectral sequence.

Cells live at (p, q) for 0 <= p <= width, 0 <= q <= height.  Horizontal
differentials move right, vertical ones move up, and the two must
anticommute; a valid bicomplex therefore has a total complex with
differential (horizontal + vertical).

Only pages 0, 1, 2 and infinity are exposed.  Degeneration at the second
page is tested by comparing E2 against Einf, which detects any nonzero
higher differential without ever computing one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from . import exactla
from .errors import InvalidBicomplex
from .exactla import RationalMatrix, kernel_basis, rank
from .presheaf import CochainComplex

INFINITY = math.inf


@dataclass(frozen=True)
class Bicomplex:
    width: int
    height: int
    dims: Mapping[tuple[int, int], int]
    horizontal: Mapping[tuple[int, int], RationalMatrix]
    vertical: Mapping[tuple[int, int], RationalMatrix]

    def dim(self, p: int, q: int) -> int:
        return self.dims.get((p, q), 0)


@dataclass(frozen=True)
class SpectralPage:
    page: int | float
    dims: Mapping[tuple[int, int], int]

    def dim(self, p: int, q: int) -> int:
        return self.dims.get((p, q), 0)


def make_bicomplex(
    dims: Mapping[tuple[int, int], int],
    horizontal: Mapping[tuple[int, int], RationalMatrix] | None = None,
    vertical: Mapping[tuple[int, int], RationalMatrix] | None = None,
) -> Bicomplex:
    """Normalize and validate bicomplex data.

    Missing cells have dimension 0 and missing maps are zero.  Shapes, the
    square-zero laws along rows and columns, and anticommutativity are all
    checked here; data in another sign convention is rejected rather than
    silently reinterpreted.
    """
    if not dims:
        raise InvalidBicomplex("a bicomplex needs at least one cell")
    for (p, q), d in dims.items():
        if p < 0 or q < 0:
            raise InvalidBicomplex(f"cell ({p},{q}) outside the first quadrant")
        if d < 0:
            raise InvalidBicomplex(f"negative dimension at ({p},{q})")
    width = max(p for p, _ in dims)
    height = max(q for _, q in dims)
    full_dims = {(p, q): dims.get((p, q), 0) for p in range(width + 1) for q in range(height + 1)}

    def normalize(maps, kind, target_of):
        maps = dict(maps or {})
        out = {}
        for p in range(width + 1):
            for q in range(height + 1):
                tp, tq = target_of(p, q)
                source = full_dims[(p, q)]
                target = full_dims.get((tp, tq), 0)
                mat = maps.pop((p, q), None)
                if mat is None:
                    mat = RationalMatrix.zeros(target, source)
                if mat.rows != target or mat.cols != source:
                    raise InvalidBicomplex(
                        f"{kind} map at ({p},{q}) is {mat.rows}x{mat.cols}, "
                        f"expected {target}x{source}"
                    )
                out[(p, q)] = mat
        if maps:
            key = next(iter(maps))
            raise InvalidBicomplex(f"{kind} map given at {key}, outside the grid")
        return out

    horiz = normalize(horizontal, "horizontal", lambda p, q: (p + 1, q))
    vert = normalize(vertical, "vertical", lambda p, q: (p, q + 1))
    for q in range(height + 1):
        for p in range(width - 1):
            if not (horiz[(p + 1, q)] @ horiz[(p, q)]).is_zero():
                raise InvalidBicomplex(f"horizontal differential does not square to zero at ({p},{q})")
    for p in range(width + 1):
        for q in range(height - 1):
            if not (vert[(p, q + 1)] @ vert[(p, q)]).is_zero():
                raise InvalidBicomplex(f"vertical differential does not square to zero at ({p},{q})")
    for p in range(width):
        for q in range(height):
            anti = vert[(p + 1, q)] @ horiz[(p, q)] + horiz[(p, q + 1)] @ vert[(p, q)]
            if not anti.is_zero():
                raise InvalidBicomplex(f"differentials do not anticommute at ({p},{q})")
    return Bicomplex(width, height, full_dims, horiz, vert)


def from_cochain_rows(rows: Sequence[CochainComplex]) -> Bicomplex:
    """Stack cochain complexes as rows q = 0, 1, ... with zero vertical maps.

    Row q keeps its own differential up to the sign (-1)^q, the twist that
    makes stacked rows anticommute with any vertical maps added later.
    """
    if not rows:
        raise InvalidBicomplex("need at least one row")
    dims: dict[tuple[int, int], int] = {(0, 0): 0}
    horizontal: dict[tuple[int, int], RationalMatrix] = {}
    for q, row in enumerate(rows):
        for p, d in enumerate(row.space_dims):
            dims[(p, q)] = d
        for p, mat in enumerate(row.differentials):
            horizontal[(p, q)] = mat.scaled(-1) if q % 2 else mat
    return make_bicomplex(dims, horizontal, {})


def _antidiagonal(b: Bicomplex, m: int) -> list[tuple[int, int]]:
    return [(p, m - p) for p in range(max(0, m - b.height), min(b.width, m) + 1)]


def total_complex(b: Bicomplex) -> CochainComplex:
    top = b.width + b.height
    space_dims = []
    for m in range(top + 1):
        space_dims.append(sum(b.dim(p, q) for p, q in _antidiagonal(b, m)))
    differentials = []
    for m in range(top):
        source = _antidiagonal(b, m)
        target = _antidiagonal(b, m + 1)
        target_index = {pos: i for i, pos in enumerate(target)}
        blocks: dict[tuple[int, int], RationalMatrix] = {}
        for si, (p, q) in enumerate(source):
            if (p + 1, q) in target_index:
                blocks[(target_index[(p + 1, q)], si)] = b.horizontal[(p, q)]
            if (p, q + 1) in target_index:
                blocks[(target_index[(p, q + 1)], si)] = b.vertical[(p, q)]
        differentials.append(
            exactla.block_matrix(
                [b.dim(p, q) for p, q in target],
                [b.dim(p, q) for p, q in source],
                blocks,
            )
        )
    return CochainComplex(tuple(space_dims), tuple(differentials))


def total_cohomology(b: Bicomplex) -> list[int]:
    return total_complex(b).cohomology()


def _vertical_in(b: Bicomplex, p: int, q: int) -> RationalMatrix:
    if q > 0:
        return b.vertical[(p, q - 1)]
    return RationalMatrix.zeros(b.dim(p, 0), 0)


def page(b: Bicomplex, r: int) -> SpectralPage:
    """Page E0 (raw dims), E1 (vertical cohomology) or E2 (horizontal cohomology of E1)."""
    if r not in (0, 1, 2):
        raise InvalidBicomplex(f"only pages 0, 1, 2 and infinity are computed, not {r}")
    grid = [(p, q) for p in range(b.width + 1) for q in range(b.height + 1)]
    if r == 0:
        return SpectralPage(0, {pos: b.dim(*pos) for pos in grid})
    if r == 1:
        dims = {}
        for p, q in grid:
            dims[(p, q)] = exactla.homology_dim(_vertical_in(b, p, q), b.vertical[(p, q)])
        return SpectralPage(1, dims)
    # E2: the differential induced by the horizontal maps on vertical
    # cohomology, evaluated on kernel bases of the vertical maps.  The rank
    # of the induced map Z_p/B_p -> Z_{p+1}/B_{p+1} is
    # rank([delta K_p | V_{p+1}]) - rank(V_{p+1}).
    kernels = {(p, q): kernel_basis(b.vertical[(p, q)]) for p, q in grid}
    e1 = {
        (p, q): kernels[(p, q)].cols - rank(_vertical_in(b, p, q))
        for p, q in grid
    }
    induced_rank = {}
    for p, q in grid:
        if p == b.width:
            induced_rank[(p, q)] = 0
            continue
        image = b.horizontal[(p, q)] @ kernels[(p, q)]
        below = _vertical_in(b, p + 1, q)
        induced_rank[(p, q)] = rank(image.hstack(below)) - rank(below)
    dims = {}
    for p, q in grid:
        incoming = induced_rank[(p - 1, q)] if p > 0 else 0
        dims[(p, q)] = e1[(p, q)] - induced_rank[(p, q)] - incoming
    return SpectralPage(2, dims)


def page_infinity(b: Bicomplex) -> SpectralPage:
    """Graded pieces of the column filtration on total cohomology.

    For each total degree m the filtration by p' >= p gives nested images
    inside H^m(total); the (p, m - p) entry is the drop between steps p and
    p + 1.  The antidiagonal sums are checked against an independently
    computed total cohomology before returning.
    """
    tc = total_complex(b)
    totals = tc.cohomology()
    top = b.width + b.height
    dims = {(p, q): 0 for p in range(b.width + 1) for q in range(b.height + 1)}
    for m in range(top + 1):
        positions = _antidiagonal(b, m)
        offsets = []
        start = 0
        for pos in positions:
            offsets.append((pos, start, start + b.dim(*pos)))
            start += b.dim(*pos)
        dim_m = start
        d_prev = tc.differentials[m - 1] if m > 0 else RationalMatrix.zeros(dim_m, 0)
        d_out = tc.differentials[m] if m < top else RationalMatrix.zeros(0, dim_m)
        rank_prev = rank(d_prev)
        graded = []
        for cut in range(b.width + 2):
            cols = [
                c
                for (pos, lo, hi) in offsets
                if pos[0] >= cut
                for c in range(lo, hi)
            ]
            if not cols:
                graded.append(0)
                continue
            sub_kernel = kernel_basis(d_out.take_columns(cols))
            embedded = RationalMatrix.from_entries(
                dim_m,
                sub_kernel.cols,
                {(cols[i], j): v for i, j, v in sub_kernel.nonzero_entries()},
            )
            graded.append(rank(embedded.hstack(d_prev)) - rank_prev)
        for p, q in positions:
            dims[(p, q)] = graded[p] - graded[p + 1]
        if sum(graded[p] - graded[p + 1] for p, _ in positions) != totals[m]:
            raise InvalidBicomplex(
                f"filtration pieces in total degree {m} do not sum to the total cohomology"
            )
    return SpectralPage(INFINITY, dims)


def degenerates_at_two(b: Bicomplex) -> bool:
    return page(b, 2).dims == page_infinity(b).dims
