import random

import pytest
from hypothesis import given, strategies as st

from dualcech import simplicial
from dualcech.errors import BadTuple

from helpers import oracle_betti, random_complex

RP2_FACETS = [
    (0, 1, 4), (0, 1, 5), (0, 2, 3), (0, 2, 4), (0, 3, 5),
    (1, 2, 3), (1, 2, 5), (1, 3, 4), (2, 4, 5), (3, 4, 5),
]


def simplex_boundary(n: int) -> simplicial.SimplicialComplex:
    full = tuple(range(n + 1))
    facets = [full[:k] + full[k + 1 :] for k in range(n + 1)]
    return simplicial.from_facets(n + 1, facets)


def test_from_facets_full_triangle():
    k = simplicial.from_facets(3, [(0, 1, 2)])
    assert len(k.simplices) == 7


def test_from_facets_tetrahedron_boundary():
    k = simplicial.from_facets(4, [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])
    assert len(k.simplices) == 14
    assert k.counts() == [4, 6, 4]


def test_from_facets_empty():
    k = simplicial.from_facets(0, [])
    assert k.simplices == frozenset()
    assert k.dim == -1


def test_from_facets_rejects_unsorted():
    with pytest.raises(BadTuple):
        simplicial.from_facets(3, [(1, 0)])


def test_from_facets_rejects_out_of_range():
    with pytest.raises(BadTuple):
        simplicial.from_facets(2, [(0, 2)])


def test_euler_characteristic_examples():
    assert simplicial.euler_characteristic(simplicial.from_facets(1, [(0,)])) == 1
    hollow = simplicial.from_facets(3, [(0, 1), (0, 2), (1, 2)])
    assert simplicial.euler_characteristic(hollow) == 0
    tetra = simplicial.from_facets(4, [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])
    assert simplicial.euler_characteristic(tetra) == 2
    assert simplicial.euler_characteristic(simplicial.from_facets(0, [])) == 0


def test_betti_examples():
    assert simplicial.betti_numbers(simplex_boundary(3)) == [1, 0, 1]
    assert simplicial.betti_numbers(simplicial.from_facets(1, [(0,)])) == [1]
    assert simplicial.betti_numbers(simplicial.from_facets(2, [(0,), (1,)])) == [2]
    assert simplicial.betti_numbers(simplicial.from_facets(0, [])) == []


def test_betti_boundary_of_simplex_is_sphere():
    for n in range(2, 7):
        expected = [1] + [0] * (n - 2) + [1]
        assert simplicial.betti_numbers(simplex_boundary(n)) == expected


def test_integral_cohomology_circle():
    hollow = simplicial.from_facets(3, [(0, 1), (0, 2), (1, 2)])
    assert simplicial.integral_cohomology(hollow) == [(1, []), (1, [])]


def test_integral_cohomology_point():
    assert simplicial.integral_cohomology(simplicial.from_facets(1, [(0,)])) == [(1, [])]


def test_integral_cohomology_projective_plane():
    rp2 = simplicial.from_facets(6, RP2_FACETS)
    result = simplicial.integral_cohomology(rp2)
    assert result[0] == (1, [])
    assert result[1] == (0, [])
    assert result[2] == (0, [2])


@given(st.integers(0, 2**31 - 1))
def test_betti_against_boundary_matrix_oracle(seed):
    k = random_complex(random.Random(seed), max_vertices=6)
    assert simplicial.betti_numbers(k) == oracle_betti(k)


@given(st.integers(0, 2**31 - 1))
def test_alternating_betti_sum_is_euler(seed):
    k = random_complex(random.Random(seed), max_vertices=7)
    betti = simplicial.betti_numbers(k)
    assert sum((-1) ** i * b for i, b in enumerate(betti)) == simplicial.euler_characteristic(k)


@given(st.integers(0, 2**31 - 1))
def test_integral_free_ranks_match_betti(seed):
    k = random_complex(random.Random(seed), max_vertices=6)
    free = [f for f, _ in simplicial.integral_cohomology(k)]
    assert free == simplicial.betti_numbers(k)


@given(st.integers(0, 2**31 - 1))
def test_from_facets_idempotent(seed):
    k = random_complex(random.Random(seed), max_vertices=6)
    again = simplicial.from_facets(k.vertex_count, sorted(k.simplices))
    assert again == k
