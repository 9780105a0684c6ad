#!/usr/bin/env python3
"""Regenerate the example input documents under inputs/.

Run from the repository root:

    PYTHONPATH=src python3 scripts/make_inputs.py
"""

from __future__ import annotations

import json
import os
import sys
from itertools import combinations

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

OUT = os.path.join(os.path.dirname(__file__), "..", "inputs")


def write(name: str, doc: dict) -> None:
    path = os.path.join(OUT, name)
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(doc, handle, sort_keys=True, indent=2)
        handle.write("\n")
    print(f"wrote {os.path.relpath(path)}")


def pn_hyperplanes(n: int) -> dict:
    """The n+1 coordinate hyperplane configuration in projective n-space."""
    components = [{"name": f"H{i}", "dim": n - 1} for i in range(n + 1)]
    strata = [list(t) for size in range(1, n + 1) for t in combinations(range(n + 1), size)]
    tables = []
    for t in strata:
        bound = (n - 1) - (len(t) - 1)
        tables.append({"tuple": t, "r": 0, "q": 0, "dim": 1, "restriction": "constant"})
        for q in range(1, bound + 1):
            tables.append({"tuple": t, "r": 0, "q": q, "dim": 0})
    return {
        "kind": "divisor",
        "schema_version": 1,
        "components": components,
        "strata": strata,
        "tables": tables,
    }


def elliptic_triangle() -> dict:
    """Three elliptic curves meeting pairwise in single points."""
    strata = [[0], [1], [2], [0, 1], [0, 2], [1, 2]]
    tables = []
    for t in strata:
        tables.append({"tuple": t, "r": 0, "q": 0, "dim": 1, "restriction": "constant"})
        if len(t) == 1:
            tables.append({"tuple": t, "r": 0, "q": 1, "dim": 1})
    return {
        "kind": "divisor",
        "schema_version": 1,
        "components": [{"name": f"E{i}", "dim": 1} for i in range(3)],
        "strata": strata,
        "tables": tables,
    }


def three_lines_p2() -> dict:
    """The three coordinate lines in the projective plane, with form and deRham tables."""
    strata = [[0], [1], [2], [0, 1], [0, 2], [1, 2]]
    tables = []
    for t in strata:
        tables.append({"tuple": t, "r": 0, "q": 0, "dim": 1, "restriction": "constant"})
        tables.append({"tuple": t, "flavor": "derham", "q": 0, "dim": 1, "restriction": "constant"})
        if len(t) == 1:
            tables.append({"tuple": t, "r": 0, "q": 1, "dim": 0})
            tables.append({"tuple": t, "r": 1, "q": 0, "dim": 0})
            tables.append({"tuple": t, "r": 1, "q": 1, "dim": 1})
            tables.append({"tuple": t, "flavor": "derham", "q": 1, "dim": 0})
            tables.append({"tuple": t, "flavor": "derham", "q": 2, "dim": 1})
        else:
            tables.append({"tuple": t, "r": 1, "q": 0, "dim": 0})
    return {
        "kind": "divisor",
        "schema_version": 1,
        "components": [{"name": f"L{i}", "dim": 1} for i in range(3)],
        "strata": strata,
        "tables": tables,
    }


def rational_triangle_check() -> dict:
    """Triangle of rational curves (dual complex a circle) with rationality
    claimed and one thickened component.

    The degree-0 sections presheaf has two-dimensional vertex spaces (the
    extra sections a multiplicity can contribute) projecting onto the
    constants over the edges; the check must split off the unit section and
    flag b_1 = 1 as an obstruction, conditional on the open degeneration
    statement.
    """
    doc = pn_hyperplanes(2)
    doc["multiplicities"] = [2, 1, 1]
    vertices = ["0", "1", "2"]
    edges = [[0, 1], [0, 2], [1, 2]]
    dims = {key: 2 for key in vertices}
    dims.update({f"{a},{b}": 1 for a, b in edges})
    restrictions = []
    for a, b in edges:
        for v in (a, b):
            restrictions.append({"from": [v], "to": [a, b], "matrix": [["1", "0"]]})
    unit = {key: ["1", "0"] for key in vertices}
    unit.update({f"{a},{b}": ["1"] for a, b in edges})
    doc["rational_check"] = {
        "claimed_rational": True,
        "dims": dims,
        "restrictions": restrictions,
        "unit": unit,
    }
    return doc


def segment_rational_check() -> dict:
    """Two rational curves meeting in a point: contractible dual complex, no obstruction."""
    strata = [[0], [1], [0, 1]]
    tables = []
    for t in strata:
        bound = 1 - (len(t) - 1)
        tables.append({"tuple": t, "r": 0, "q": 0, "dim": 1, "restriction": "constant"})
        for q in range(1, bound + 1):
            tables.append({"tuple": t, "r": 0, "q": q, "dim": 0})
    simplices = ["0", "1", "0,1"]
    return {
        "kind": "divisor",
        "schema_version": 1,
        "components": [{"name": "C0", "dim": 1}, {"name": "C1", "dim": 1}],
        "strata": strata,
        "tables": tables,
        "rational_check": {
            "claimed_rational": True,
            "dims": {key: 1 for key in simplices},
            "restrictions": "identity",
            "unit": {key: ["1"] for key in simplices},
        },
    }


def pn_fan(n: int) -> dict:
    rays = [[1 if j == i else 0 for j in range(n)] for i in range(n)]
    rays.append([-1] * n)
    cones = [list(c) for c in combinations(range(n + 1), n)]
    return {"kind": "fan", "schema_version": 1, "n": n, "rays": rays, "cones": cones}


def p1xp1_fan() -> dict:
    return {
        "kind": "fan",
        "schema_version": 1,
        "n": 2,
        "rays": [[1, 0], [0, 1], [-1, 0], [0, -1]],
        "cones": [[0, 1], [1, 2], [2, 3], [0, 3]],
    }


def nonzero_d2_bicomplex() -> dict:
    """Three columns, two rows, one unavoidable differential on the second page."""
    return {
        "kind": "bicomplex",
        "schema_version": 1,
        "dims": [[0, 1, 1], [1, 1, 0]],
        "horizontal": [
            {"p": 0, "q": 1, "matrix": [["1"]]},
            {"p": 1, "q": 0, "matrix": [["1"]]},
        ],
        "vertical": [{"p": 1, "q": 0, "matrix": [["1"]]}],
    }


def one_row_bicomplex() -> dict:
    """The coboundary complex of a hollow triangle laid out as a single row."""
    return {
        "kind": "bicomplex",
        "schema_version": 1,
        "dims": [[3, 3]],
        "horizontal": [
            {"p": 0, "q": 0, "matrix": [["-1", "1", "0"], ["-1", "0", "1"], ["0", "-1", "1"]]}
        ],
    }


def vertex_presheaf_triangle() -> dict:
    """Hollow triangle with one-dimensional vertex spaces and zero edge spaces."""
    return {
        "kind": "presheaf",
        "schema_version": 1,
        "complex": {"vertex_count": 3, "facets": [[0, 1], [0, 2], [1, 2]]},
        "dims": {"0": 1, "1": 1, "2": 1},
        "restrictions": [],
    }


def main() -> None:
    os.makedirs(OUT, exist_ok=True)
    write("empty.json", {"kind": "complex", "schema_version": 1, "vertex_count": 0, "facets": []})
    write(
        "triangle_boundary.json",
        {"kind": "complex", "schema_version": 1, "vertex_count": 3, "facets": [[0, 1], [0, 2], [1, 2]]},
    )
    write(
        "tetrahedron_boundary.json",
        {
            "kind": "complex",
            "schema_version": 1,
            "vertex_count": 4,
            "facets": [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]],
        },
    )
    write(
        "projective_plane.json",
        {
            "kind": "complex",
            "schema_version": 1,
            "vertex_count": 6,
            "facets": [
                [0, 1, 4], [0, 1, 5], [0, 2, 3], [0, 2, 4], [0, 3, 5],
                [1, 2, 3], [1, 2, 5], [1, 3, 4], [2, 4, 5], [3, 4, 5],
            ],
        },
    )
    for n in (2, 3, 4, 5):
        write(f"pn_hyperplanes_{n}.json", pn_hyperplanes(n))
    write("elliptic_triangle.json", elliptic_triangle())
    write("three_lines_p2.json", three_lines_p2())
    write("rational_triangle_check.json", rational_triangle_check())
    write("segment_rational_check.json", segment_rational_check())
    for n in (1, 2, 3):
        write(f"pn_fan_{n}.json", pn_fan(n))
    write("p1xp1_fan.json", p1xp1_fan())
    write(
        "lm_2_1_1.json",
        {
            "kind": "localmodel",
            "schema_version": 1,
            "n": 2,
            "components": [1, 2],
            "multiplicities": [1, 1],
            "degree_bound": 6,
        },
    )
    write(
        "lm_3_213.json",
        {
            "kind": "localmodel",
            "schema_version": 1,
            "n": 3,
            "components": [1, 2, 3],
            "multiplicities": [2, 1, 3],
            "degree_bound": 8,
        },
    )
    write("bicomplex_d2.json", nonzero_d2_bicomplex())
    write("bicomplex_row.json", one_row_bicomplex())
    write("vertex_presheaf_triangle.json", vertex_presheaf_triangle())


if __name__ == "__main__":
    main()
