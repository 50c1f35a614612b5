"""Lattice polytopes: construction, faces, simplicity, smoothness, sums."""

import random
from itertools import permutations

import pytest

from omegalab import (
    SetFunction,
    base_polytope,
    enumerate_basic_vertices,
    faces,
    independence_polytope,
    is_simple,
    is_smooth,
    lattice_points,
    matroid_staircase_vertices,
    minkowski_sum,
    polytope_from_points,
    rank_from_support,
    truncate,
    truncation_sum,
)
from omegalab.derivatives import derivative_support
from omegalab.guards import ResourceLimit
from omegalab.poly import parse_polynomial

from helpers import (
    PLANE_CUBIC_TEXT,
    X123,
    random_matroid,
    random_mconvex_support,
    random_polymatroid,
)

U24 = SetFunction.uniform_matroid(2, 4)


def perms_of(point) -> set:
    return set(permutations(point))


def test_independence_polytope_triangle():
    body = independence_polytope(SetFunction.uniform_matroid(1, 2))
    assert set(body.vertices) == {(0, 0), (1, 0), (0, 1)}
    assert body.dim == 2


def test_independence_polytope_contains_prefix_points():
    rbar = truncation_sum(U24)
    body = independence_polytope(rbar)
    assert perms_of((2, 1, 0, 0)) <= set(body.vertices)
    assert (0, 0, 0, 0) in body.vertices
    assert (2, 0, 0, 0) in body.vertices


def test_zero_polymatroid_polytopes():
    z = SetFunction(3, [0] * 8)
    assert independence_polytope(z).vertices == ((0, 0, 0),)
    assert base_polytope(z).vertices == ((0, 0, 0),)


def test_base_polytope_rejects_non_polymatroid():
    with pytest.raises(ValueError):
        base_polytope(SetFunction(2, [0, 1, 1, 4]))


def test_base_polytope_simplex_octahedron_truncated_tetrahedron():
    simplex = base_polytope(truncate(U24, 1))
    assert set(simplex.vertices) == perms_of((1, 0, 0, 0))

    octahedron = base_polytope(U24)
    assert set(octahedron.vertices) == perms_of((1, 1, 0, 0))
    simple, witness = is_simple(octahedron)
    assert not simple and witness is not None

    summed = base_polytope(truncation_sum(U24))
    assert set(summed.vertices) == perms_of((2, 1, 0, 0))
    assert len(summed.vertices) == 12
    fl = faces(summed)
    assert is_simple(summed, fl) == (True, None)
    assert is_smooth(summed, fl) == (True, None)


def test_matroid_staircase_vertices_examples():
    assert matroid_staircase_vertices(U24) == perms_of((2, 1, 0, 0))
    free2 = SetFunction.uniform_matroid(2, 2)
    assert matroid_staircase_vertices(free2) == {(2, 1), (1, 2)}
    with_loop = SetFunction(2, [0, 1, 0, 1])  # element 2 is a loop, rank 1
    assert matroid_staircase_vertices(with_loop) == {(1, 0)}


def test_matroid_staircase_matches_base_polytope_random():
    rng = random.Random(77)
    for _ in range(50):
        n = rng.randint(1, 6)
        f = random_matroid(rng, n, 4)
        assert matroid_staircase_vertices(f) == set(
            base_polytope(truncation_sum(f)).vertices
        )


def test_staircase_rejects_polymatroid_input():
    with pytest.raises(ValueError):
        matroid_staircase_vertices(SetFunction(2, [0, 2, 2, 4]))


def test_minkowski_octahedron_plus_simplex():
    summed = minkowski_sum(base_polytope(U24), base_polytope(truncate(U24, 1)))
    direct = base_polytope(truncation_sum(U24))
    assert summed.vertices == direct.vertices
    assert set(summed.inequalities) == set(direct.inequalities)
    assert summed.equations == direct.equations


def test_minkowski_with_point_translates():
    body = base_polytope(U24)
    origin = polytope_from_points([(0, 0, 0, 0)])
    assert minkowski_sum(body, origin).vertices == body.vertices
    shift = polytope_from_points([(1, 2, 3, 4)])
    moved = minkowski_sum(body, shift)
    assert set(moved.vertices) == {
        tuple(a + b for a, b in zip(v, (1, 2, 3, 4))) for v in body.vertices
    }


def test_minkowski_self_sum_dilates():
    simplex = base_polytope(truncate(U24, 1))
    doubled = minkowski_sum(simplex, simplex)
    assert set(doubled.vertices) == {tuple(2 * x for x in v) for v in simplex.vertices}


def test_minkowski_generic_fallback_path():
    # quadrilateral hulls that are not indicator-structured
    p = polytope_from_points([(0, 0), (2, 1), (1, 3)])
    q = polytope_from_points([(0, 0), (1, 0), (0, 1)])
    summed = minkowski_sum(p, q)
    expected = polytope_from_points(
        [tuple(a + b for a, b in zip(u, w)) for u in p.vertices for w in q.vertices]
    )
    assert summed.vertices == expected.vertices


def test_minkowski_guard():
    body = base_polytope(truncation_sum(U24))
    with pytest.raises(ResourceLimit):
        minkowski_sum(body, body, max_vertex_product=10)


def test_minkowski_fast_path_matches_brute_force_hull():
    from math import comb

    from omegalab.polytope import _affine_rank

    rng = random.Random(31337)
    count = 0
    while count < 15:
        n = rng.randint(2, 4)
        f = random_polymatroid(rng, n, 3)
        g = random_polymatroid(rng, n, 3)
        p = base_polytope(f) if rng.random() < 0.5 else independence_polytope(f)
        q = base_polytope(g) if rng.random() < 0.5 else independence_polytope(g)
        sums = sorted(
            {tuple(a + b for a, b in zip(u, w)) for u in p.vertices for w in q.vertices}
        )
        if comb(len(sums), _affine_rank(sums)) > 60000:
            continue
        fast = minkowski_sum(p, q)
        slow = polytope_from_points(sums)
        assert fast.vertices == slow.vertices
        assert set(fast.inequalities) == set(slow.inequalities)
        assert fast.equations == slow.equations
        count += 1


def test_minkowski_matches_sum_function_random():
    rng = random.Random(2024)
    for _ in range(30):
        n = rng.randint(2, 5)
        f = random_polymatroid(rng, n, 4)
        g = random_polymatroid(rng, n, 4)
        summed = minkowski_sum(base_polytope(f), base_polytope(g))
        assert set(summed.vertices) == set(base_polytope(f + g).vertices)


def test_lattice_points_simplex():
    simplex = base_polytope(truncate(U24, 1))
    assert set(lattice_points(simplex)) == perms_of((1, 0, 0, 0))


def test_lattice_points_hypersimplex():
    octahedron = base_polytope(U24)
    assert set(lattice_points(octahedron)) == perms_of((1, 1, 0, 0))


def test_lattice_points_equal_support_for_plane_cubic():
    h = parse_polynomial(PLANE_CUBIC_TEXT, X123)
    rho = rank_from_support(h.support())
    assert set(lattice_points(base_polytope(rho))) == set(h.support())


def test_lattice_points_guard():
    body = base_polytope(truncation_sum(U24))
    with pytest.raises(ResourceLimit):
        lattice_points(body, max_cells=3)


def test_faces_triangle():
    tri = independence_polytope(SetFunction.uniform_matroid(1, 2))
    fl = faces(tri)
    assert len(fl) == 7
    assert sorted(f.dim for f in fl) == [0, 0, 0, 1, 1, 1, 2]


def test_faces_octahedron_count():
    fl = faces(base_polytope(U24))
    by_dim = {}
    for f in fl:
        by_dim[f.dim] = by_dim.get(f.dim, 0) + 1
    assert by_dim == {0: 6, 1: 12, 2: 8, 3: 1}
    assert len(fl) == 27


def test_faces_segment_lattice_points():
    seg = polytope_from_points([(0,), (2,)])
    fl = faces(seg)
    assert len(fl) == 3
    whole = [f for f in fl if f.dim == 1][0]
    assert whole.lattice_points == ((0,), (1,), (2,))


def test_cube_is_simple_and_smooth():
    cube = polytope_from_points([(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)])
    fl = faces(cube)
    assert is_simple(cube, fl) == (True, None)
    assert is_smooth(cube, fl) == (True, None)


def test_skew_simplex_simple_but_not_smooth():
    body = polytope_from_points([(0, 0), (1, 0), (1, 2)])
    fl = faces(body)
    assert is_simple(body, fl)[0]
    smooth, witness = is_smooth(body, fl)
    assert not smooth and witness == (0, 0)


def test_derivative_support_sum_simple_not_smooth():
    h = parse_polynomial("x1*x2^2 + x3^3", X123)
    b1 = derivative_support(h, 1)
    b2 = derivative_support(h, 2)
    sums = {tuple(a + b for a, b in zip(p, q)) for p in b1 for q in b2}
    body = polytope_from_points(sums)
    fl = faces(body)
    assert is_simple(body, fl)[0]
    assert not is_smooth(body, fl)[0]


def test_summed_truncation_polytopes_smooth_random():
    rng = random.Random(6)
    for _ in range(40):
        n = rng.randint(1, 5)
        f = random_polymatroid(rng, n, 4)
        body = base_polytope(truncation_sum(f))
        fl = faces(body)
        simple, _ = is_simple(body, fl)
        smooth, _ = is_smooth(body, fl)
        assert simple and smooth


def test_smooth_implies_simple_on_mixed_examples():
    examples = [
        base_polytope(U24),
        base_polytope(truncation_sum(U24)),
        polytope_from_points([(0, 0), (1, 0), (1, 2)]),
        polytope_from_points([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]),
    ]
    for body in examples:
        fl = faces(body)
        if is_smooth(body, fl)[0]:
            assert is_simple(body, fl)[0]


def test_greedy_vertices_match_basic_feasible_points():
    from fractions import Fraction

    rng = random.Random(12)
    for _ in range(25):
        n = rng.randint(1, 4)
        f = random_polymatroid(rng, n, 3)
        for body in (independence_polytope(f), base_polytope(f)):
            basic = enumerate_basic_vertices(body)
            greedy = {tuple(Fraction(x) for x in v) for v in body.vertices}
            assert basic == greedy


def test_base_polytope_lattice_points_recover_mconvex_support():
    rng = random.Random(40)
    for _ in range(30):
        n = rng.randint(2, 5)
        d = rng.randint(1, 4)
        supp = random_mconvex_support(rng, n, d)
        rho = rank_from_support(supp)
        assert set(lattice_points(base_polytope(rho))) == set(supp)


def test_polytope_json_shape():
    body = base_polytope(U24)
    data = body.to_json_dict()
    assert set(data) == {"dim", "vertices", "inequalities", "equations"}
    assert data["vertices"] == sorted(data["vertices"])


def test_hull_ambient_guard():
    with pytest.raises(ResourceLimit):
        polytope_from_points([tuple([0] * 7), tuple([1] * 7)])
