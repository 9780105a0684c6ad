"""Shared test utilities: independent oracles and random generators.

The oracles deliberately avoid the library's own elimination code.  Ranks
come from fraction-free Bareiss elimination over the integers, Betti
numbers from chain boundary matrices (the homology route, not the cochain
route the library uses), and monomial counts from inclusion-exclusion.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from math import comb

from dualcech import exactla, presheaf, simplicial, snc
from dualcech.bicomplex import Bicomplex, make_bicomplex
from dualcech.exactla import RationalMatrix
from dualcech.presheaf import Presheaf
from dualcech.simplicial import SimplicialComplex
from dualcech.snc import DERHAM, SHEAF, SncDivisor, TableEntry


# ---------------------------------------------------------------- oracles


def oracle_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free Bareiss elimination."""
    m = [[int(x) for x in row] for row in rows]
    nr = len(m)
    nc = len(m[0]) if m else 0
    rank = 0
    prev = 1
    row = 0
    for col in range(nc):
        pivot = next((i for i in range(row, nr) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        for i in range(row + 1, nr):
            for j in range(col + 1, nc):
                m[i][j] = (m[i][j] * m[row][col] - m[i][col] * m[row][j]) // prev
            m[i][col] = 0
        prev = m[row][col]
        rank += 1
        row += 1
        if row == nr:
            break
    return rank


def oracle_det(rows: list[list[int]]) -> int:
    """Determinant of a square integer matrix, Bareiss again."""
    m = [[int(x) for x in row] for row in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for col in range(n):
        pivot = next((i for i in range(col, n) if m[i][col] != 0), None)
        if pivot is None:
            return 0
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            sign = -sign
        for i in range(col + 1, n):
            for j in range(col + 1, n):
                m[i][j] = (m[i][j] * m[col][col] - m[i][col] * m[col][j]) // prev
            m[i][col] = 0
        prev = m[col][col]
    return sign * m[n - 1][n - 1]


def oracle_minor_gcd(rows: list[list[int]], size: int) -> int:
    """gcd of all size x size minors (0 when there are none)."""
    import math

    nr = len(rows)
    nc = len(rows[0]) if rows else 0
    g = 0
    for ri in combinations(range(nr), size):
        for ci in combinations(range(nc), size):
            minor = oracle_det([[rows[i][j] for j in ci] for i in ri])
            g = math.gcd(g, abs(minor))
    return g


def oracle_betti(k: SimplicialComplex) -> list[int]:
    """Betti numbers through chain boundary matrices and Bareiss ranks."""
    d = k.dim
    if d < 0:
        return []
    levels = [k.p_simplices(p) for p in range(d + 1)]

    def boundary(p):  # rows: (p-1)-simplices, cols: p-simplices
        lower = {s: i for i, s in enumerate(levels[p - 1])}
        rows = [[0] * len(levels[p]) for _ in levels[p - 1]]
        for col, tau in enumerate(levels[p]):
            for pos in range(len(tau)):
                face = tau[:pos] + tau[pos + 1 :]
                rows[lower[face]][col] = -1 if pos % 2 else 1
        return rows

    ranks = [oracle_rank(boundary(p)) for p in range(1, d + 1)]
    out = []
    for p in range(d + 1):
        rank_in = ranks[p] if p < d else 0
        rank_out = ranks[p - 1] if p > 0 else 0
        out.append(len(levels[p]) - rank_in - rank_out)
    return out


def oracle_monomial_count(n: int, degree: int, constraints, mode: str) -> int:
    """Count degree-k monomials in n variables meeting upper-bound constraints.

    ``constraints`` is a list of (1-based variable index, bound); mode
    "all" requires every exponent below its bound, "any" at least one.
    Counted by inclusion-exclusion over the violated constraints.
    """

    def monomials(total):
        return comb(total + n - 1, n - 1) if total >= 0 else 0

    if mode == "any":
        shift = sum(bound for _, bound in constraints)
        return monomials(degree) - monomials(degree - shift)
    total = 0
    items = list(constraints)
    for size in range(len(items) + 1):
        for chosen in combinations(items, size):
            shift = sum(bound for _, bound in chosen)
            total += (-1) ** size * monomials(degree - shift)
    return total


# ------------------------------------------------------ divisor builders


def pn_hyperplanes_divisor(n: int) -> SncDivisor:
    """The n+1 coordinate hyperplanes in projective n-space."""
    components = [(f"H{i}", n - 1) for i in range(n + 1)]
    strata = [t for size in range(1, n + 1) for t in combinations(range(n + 1), size)]
    tables = {}
    for t in strata:
        bound = (n - 1) - (len(t) - 1)
        tables[(t, SHEAF, 0, 0)] = TableEntry(1, "constant")
        for q in range(1, bound + 1):
            tables[(t, SHEAF, 0, q)] = TableEntry(0)
    return snc.make_snc_divisor(components, strata, tables)


def elliptic_triangle_divisor() -> SncDivisor:
    """Three elliptic curves meeting pairwise in single points."""
    strata = [(0,), (1,), (2,), (0, 1), (0, 2), (1, 2)]
    tables = {}
    for t in strata:
        tables[(t, SHEAF, 0, 0)] = TableEntry(1, "constant")
        if len(t) == 1:
            tables[(t, SHEAF, 0, 1)] = TableEntry(1)
    return snc.make_snc_divisor([(f"E{i}", 1) for i in range(3)], strata, tables)


def three_lines_divisor(perturb: tuple | None = None) -> SncDivisor:
    """The three coordinate lines in the projective plane, full form and
    deRham tables.  ``perturb`` bumps one sheaf table entry by +1."""
    strata = [(0,), (1,), (2,), (0, 1), (0, 2), (1, 2)]
    tables = {}
    for t in strata:
        tables[(t, SHEAF, 0, 0)] = TableEntry(1, "constant")
        tables[(t, DERHAM, 0, 0)] = TableEntry(1, "constant")
        if len(t) == 1:
            tables[(t, SHEAF, 0, 1)] = TableEntry(0)
            tables[(t, SHEAF, 1, 0)] = TableEntry(0)
            tables[(t, SHEAF, 1, 1)] = TableEntry(1)
            tables[(t, DERHAM, 0, 1)] = TableEntry(0)
            tables[(t, DERHAM, 0, 2)] = TableEntry(1)
        else:
            tables[(t, SHEAF, 1, 0)] = TableEntry(0)
    if perturb is not None:
        t, r, q = perturb
        old = tables[(t, SHEAF, r, q)]
        tables[(t, SHEAF, r, q)] = TableEntry(old.dim + 1, old.restriction)
    return snc.make_snc_divisor([(f"L{i}", 1) for i in range(3)], strata, tables)


# ------------------------------------------------------------- generators


def random_complex(rng: random.Random, max_vertices: int = 8) -> SimplicialComplex:
    n = rng.randint(0, max_vertices)
    if n == 0:
        return simplicial.from_facets(0, [])
    facet_count = rng.randint(0, 6)
    facets = []
    for _ in range(facet_count):
        size = rng.randint(1, min(n, 4))
        facets.append(tuple(sorted(rng.sample(range(n), size))))
    return simplicial.from_facets(n, facets)


def random_unimodular(rng: random.Random, n: int, shears: int = 4) -> RationalMatrix:
    rows = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for _ in range(shears if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-2, -1, 1, 2])
        rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
    if n and rng.random() < 0.5:
        i = rng.randrange(n)
        rows[i] = [-a for a in rows[i]]
    return RationalMatrix.from_rows(rows)


def conjugate_presheaf(rng: random.Random, v: Presheaf) -> tuple[Presheaf, dict]:
    """Change basis independently in every stalk; returns (presheaf, change maps)."""
    changes = {s: random_unimodular(rng, v.dim(s)) for s in v.base.simplices}
    restrictions = {}
    for (sigma, tau), mat in v.restrictions.items():
        restrictions[(sigma, tau)] = changes[tau] @ mat @ exactla.inverse(changes[sigma])
    return Presheaf(v.base, dict(v.dims), restrictions), changes


def star_presheaf(base: SimplicialComplex, core) -> Presheaf:
    """Dimension 1 on every simplex containing ``core``, identity maps inside."""
    core = tuple(core)
    dims = {s: (1 if set(core) <= set(s) else 0) for s in base.simplices}
    restrictions = {}
    for tau in sorted(base.simplices):
        if len(tau) < 2:
            continue
        for pos in range(len(tau)):
            sigma = tau[:pos] + tau[pos + 1 :]
            if dims[sigma] and dims[tau]:
                restrictions[(sigma, tau)] = RationalMatrix.identity(1)
    return presheaf.make_presheaf(base, dims, restrictions)


def random_presheaf(rng: random.Random, base: SimplicialComplex, summands: int = 3) -> Presheaf:
    """Random presheaf with consistent restrictions: sums of constants and
    stars, then a random change of basis in every stalk."""
    v = presheaf.constant_presheaf(base, 0)
    parts = rng.randint(0, summands)
    simplices = sorted(base.simplices)
    for _ in range(parts):
        if not simplices or rng.random() < 0.4:
            v = presheaf.direct_sum(v, presheaf.constant_presheaf(base, 1))
        else:
            v = presheaf.direct_sum(v, star_presheaf(base, rng.choice(simplices)))
    twisted, _ = conjugate_presheaf(rng, v)
    return twisted


def kron(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    entries = {}
    for i, j, av in a.nonzero_entries():
        for k, l, bv in b.nonzero_entries():
            entries[(i * b.rows + k, j * b.cols + l)] = av * bv
    return RationalMatrix.from_entries(a.rows * b.rows, a.cols * b.cols, entries)


def random_cochain_complex(rng: random.Random, max_length: int = 3, cap: int = 3):
    """Random cochain complex: sum of singletons and exact intervals at
    random positions, conjugated levelwise."""
    length = rng.randint(1, max_length)
    dims = [0] * length
    entries = [dict() for _ in range(max(length - 1, 0))]
    for _ in range(rng.randint(1, 5)):
        p = rng.randrange(length)
        if rng.random() < 0.5 and p + 1 < length and dims[p] < cap and dims[p + 1] < cap:
            entries[p][(dims[p + 1], dims[p])] = rng.choice([1, -1])
            dims[p] += 1
            dims[p + 1] += 1
        elif dims[p] < cap:
            dims[p] += 1
    diffs = [
        RationalMatrix.from_entries(dims[p + 1], dims[p], entries[p])
        for p in range(length - 1)
    ]
    changes = [random_unimodular(rng, d, shears=2) for d in dims]
    diffs = [
        changes[p + 1] @ diffs[p] @ exactla.inverse(changes[p]) for p in range(length - 1)
    ]
    return presheaf.CochainComplex(tuple(dims), tuple(diffs))


def tensor_bicomplex(a, b) -> Bicomplex:
    """Bicomplex of the tensor product of two cochain complexes, with the
    sign twist on the verticals that makes the differentials anticommute."""
    dims = {}
    horizontal = {}
    vertical = {}
    for p, ap in enumerate(a.space_dims):
        for q, bq in enumerate(b.space_dims):
            dims[(p, q)] = ap * bq
            if p + 1 < len(a.space_dims):
                horizontal[(p, q)] = kron(a.differentials[p], RationalMatrix.identity(bq))
            if q + 1 < len(b.space_dims):
                mat = kron(RationalMatrix.identity(ap), b.differentials[q])
                vertical[(p, q)] = mat.scaled(-1) if p % 2 else mat
    return make_bicomplex(dims, horizontal, vertical)


class _BicomplexDraft:
    def __init__(self, width: int, height: int, cap: int):
        self.width = width
        self.height = height
        self.cap = cap
        self.dims = {(p, q): 0 for p in range(width + 1) for q in range(height + 1)}
        self.horizontal: dict[tuple[int, int], dict[tuple[int, int], int]] = {}
        self.vertical: dict[tuple[int, int], dict[tuple[int, int], int]] = {}

    def room(self, *cells) -> bool:
        return all(self.dims[c] < self.cap for c in cells)

    def alloc(self, p, q) -> int:
        slot = self.dims[(p, q)]
        self.dims[(p, q)] = slot + 1
        return slot

    def put(self, maps, p, q, row, col, value):
        maps.setdefault((p, q), {})[(row, col)] = value


def random_bicomplex(
    rng: random.Random, max_width: int = 3, max_height: int = 3, cap: int = 4
) -> Bicomplex:
    """Random valid bicomplex: block sums of cells, intervals, squares and
    zigzags (the shape that produces second-page differentials), then a
    change of basis in every cell."""
    width = rng.randint(0, max_width)
    height = rng.randint(0, max_height)
    draft = _BicomplexDraft(width, height, cap)
    for _ in range(rng.randint(1, 8)):
        kind = rng.choice(["cell", "cell", "h", "v", "square", "zigzag"])
        p = rng.randint(0, width)
        q = rng.randint(0, height)
        if kind == "cell" and draft.room((p, q)):
            draft.alloc(p, q)
        elif kind == "h" and p < width and draft.room((p, q), (p + 1, q)):
            a = draft.alloc(p, q)
            b = draft.alloc(p + 1, q)
            draft.put(draft.horizontal, p, q, b, a, rng.choice([1, -1]))
        elif kind == "v" and q < height and draft.room((p, q), (p, q + 1)):
            a = draft.alloc(p, q)
            b = draft.alloc(p, q + 1)
            draft.put(draft.vertical, p, q, b, a, rng.choice([1, -1]))
        elif kind == "square" and p < width and q < height and draft.room(
            (p, q), (p + 1, q), (p, q + 1), (p + 1, q + 1)
        ):
            a = draft.alloc(p, q)
            b = draft.alloc(p + 1, q)
            c = draft.alloc(p, q + 1)
            d = draft.alloc(p + 1, q + 1)
            draft.put(draft.horizontal, p, q, b, a, 1)
            draft.put(draft.horizontal, p, q + 1, d, c, -1)
            draft.put(draft.vertical, p, q, c, a, 1)
            draft.put(draft.vertical, p + 1, q, d, b, 1)
        elif kind == "zigzag" and p + 2 <= width and q + 1 <= height and draft.room(
            (p, q + 1), (p + 1, q + 1), (p + 1, q), (p + 2, q)
        ):
            a = draft.alloc(p, q + 1)
            b = draft.alloc(p + 1, q + 1)
            c = draft.alloc(p + 1, q)
            d = draft.alloc(p + 2, q)
            draft.put(draft.horizontal, p, q + 1, b, a, 1)
            draft.put(draft.vertical, p + 1, q, b, c, 1)
            draft.put(draft.horizontal, p + 1, q, d, c, 1)

    def build(maps, target_of):
        out = {}
        for (p, q), entries in maps.items():
            tp, tq = target_of(p, q)
            out[(p, q)] = RationalMatrix.from_entries(
                draft.dims[(tp, tq)], draft.dims[(p, q)], entries
            )
        return out

    horizontal = build(draft.horizontal, lambda p, q: (p + 1, q))
    vertical = build(draft.vertical, lambda p, q: (p, q + 1))
    changes = {cell: random_unimodular(rng, d, shears=2) for cell, d in draft.dims.items()}
    inverses = {cell: exactla.inverse(mat) for cell, mat in changes.items()}
    horizontal = {
        (p, q): changes[(p + 1, q)] @ mat @ inverses[(p, q)]
        for (p, q), mat in horizontal.items()
    }
    vertical = {
        (p, q): changes[(p, q + 1)] @ mat @ inverses[(p, q)]
        for (p, q), mat in vertical.items()
    }
    return make_bicomplex(draft.dims, horizontal, vertical)


# ------------------------------------------------------- schema validation


def schema_errors(instance, schema, path="") -> list[str]:
    """Minimal JSON Schema checker for the subset used by the shipped schemas."""
    errs: list[str] = []
    if "enum" in schema:
        if instance not in schema["enum"]:
            errs.append(f"{path or '/'}: {instance!r} not in enum {schema['enum']}")
            return errs
    expected = schema.get("type")
    if expected is not None:
        ok = {
            "object": lambda x: isinstance(x, dict),
            "array": lambda x: isinstance(x, list),
            "string": lambda x: isinstance(x, str),
            "integer": lambda x: isinstance(x, int) and not isinstance(x, bool),
            "boolean": lambda x: isinstance(x, bool),
            "number": lambda x: isinstance(x, (int, float)) and not isinstance(x, bool),
        }[expected](instance)
        if not ok:
            errs.append(f"{path or '/'}: expected {expected}")
            return errs
    if "oneOf" in schema:
        matches = [
            branch for branch in schema["oneOf"] if not schema_errors(instance, branch, path)
        ]
        if len(matches) != 1:
            errs.append(f"{path or '/'}: matched {len(matches)} branches of oneOf, expected 1")
    if isinstance(instance, dict):
        for key in schema.get("required", []):
            if key not in instance:
                errs.append(f"{path}/{key}: missing required field")
        props = schema.get("properties", {})
        for key, sub in props.items():
            if key in instance:
                errs.extend(schema_errors(instance[key], sub, f"{path}/{key}"))
        if schema.get("additionalProperties") is False:
            for key in instance:
                if key not in props:
                    errs.append(f"{path}/{key}: additional property not allowed")
    if isinstance(instance, list) and "items" in schema:
        for i, item in enumerate(instance):
            errs.extend(schema_errors(item, schema["items"], f"{path}/{i}"))
    return errs
