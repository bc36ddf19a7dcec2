"""Lifted cones, dual cones, per-face duality data, and edge rays.

Cone membership for the bipolarity check is decided by an independent
Caratheodory-style enumeration over generator subsets.
"""

from fractions import Fraction
from itertools import combinations

import pytest

from polyk.cones import (
    ConeSystem,
    dual_cone,
    edge_ray,
    edge_ray_crosscheck,
    face_cone_data,
    lift,
    positive_multiple_ratio,
)
from polyk.corpus import hypercube, point_polytope, simplex
from polyk.errors import InternalInvariantError
from polyk.linalg import QMatrix, dot, primitive_vector, rank, solve_in_span
from polyk.polytope import face_lattice, facets


def in_cone(x, gens, dim):
    """Is x a nonnegative combination of the generators (exact enumeration)?"""
    if all(v == 0 for v in x):
        return True
    for k in range(1, dim + 1):
        for subset in combinations(gens, k):
            sol = solve_in_span(QMatrix.from_columns(subset, rows=dim), x)
            if sol is not None and all(c >= 0 for c in sol):
                return True
    return False


def faces_of(poly):
    lat = face_lattice(poly)
    return lat, {f.vertex_set: f for f in lat.all_faces()}


# --- lift ---

def test_lift_segment():
    cone = lift(simplex(1))
    assert cone.dim == 2
    assert cone.generators == ((Fraction(1), Fraction(0)), (Fraction(1), Fraction(1)))
    assert set(cone.facet_normals) == {(0, 1), (1, -1)}


def test_lift_point_self_dual():
    cone = lift(point_polytope())
    assert cone.dim == 1
    assert cone.facet_normals == ((1,),)


def test_lift_triangle_normal_count():
    cone = lift(simplex(2))
    assert len(cone.facet_normals) == 3


def test_lift_normals_match_polytope_facets():
    # independent route: each polytope facet <a, x> <= b lifts to (b, -a)
    for poly in [simplex(1), simplex(2), hypercube(3)]:
        cone = lift(poly)
        lifted = {primitive_vector((fc.offset,) + tuple(-a for a in fc.normal))
                  for fc in facets(poly)}
        assert set(cone.facet_normals) == lifted


# --- dual_cone ---

def test_dual_cone_orthant_self_dual():
    assert set(dual_cone([(1, 0), (0, 1)])) == {(1, 0), (0, 1)}


def test_dual_cone_segment_example():
    assert set(dual_cone([(1, 0), (1, 1)])) == {(0, 1), (1, -1)}


def test_dual_cone_half_line():
    assert dual_cone([(1,)]) == ((1,),)


def test_dual_cone_requires_solid():
    with pytest.raises(InternalInvariantError):
        dual_cone([(1, 0)])


def test_dual_cone_bipolarity_on_corpus():
    for poly in [simplex(1), simplex(2), simplex(3), hypercube(2), hypercube(3)]:
        gens = [primitive_vector(g) for g in lift(poly).generators]
        n = poly.ambient_dim + 1
        dd = dual_cone(dual_cone(gens))
        assert all(in_cone(g, dd, n) for g in gens)
        assert all(in_cone(g, gens, n) for g in dd)


# --- face_cone_data ---

def test_face_data_top_face():
    poly = simplex(2)
    lat, by_set = faces_of(poly)
    data = face_cone_data(lift(poly), lat.top_face)
    assert data.dual_face_gens == ()
    assert data.circledast_gens == ()
    assert data.span_basis.cols == 3


def test_face_data_empty_face_bipolar():
    # circledast of the empty face recovers the cone itself
    poly = hypercube(2)
    lat, _ = faces_of(poly)
    cone = lift(poly)
    data = face_cone_data(cone, lat.empty_face)
    assert set(data.circledast_gens) == {primitive_vector(g) for g in cone.generators}
    assert data.dual_face_gens == cone.facet_normals
    assert data.span_basis.cols == 0


def test_face_data_segment_vertex():
    poly = simplex(1)
    lat, by_set = faces_of(poly)
    cone = lift(poly)
    data = face_cone_data(cone, by_set[(0,)])
    assert data.span_basis.columns() == ((Fraction(1), Fraction(0)),)
    assert data.dual_face_gens == ((0, 1),)
    assert data.circledast_gens == ((0, 1),)


def test_face_data_invariants_small_corpus(small_corpus):
    for poly in small_corpus:
        lat = face_lattice(poly)
        cone = lift(poly)
        n = cone.dim
        for f in lat.all_faces():
            data = face_cone_data(cone, f)
            assert data.span_basis.cols == f.dim + 1
            for g in data.dual_face_gens:
                assert all(dot(g, cone.generators[i]) == 0 for i in f.vertex_set)
                assert all(dot(g, v) >= 0 for v in cone.generators)
            for x in data.circledast_gens:
                assert all(dot(x, y) >= 0 for y in data.dual_face_gens)
            # duality of span dimensions
            span_gens = QMatrix.from_columns(list(data.dual_face_gens) or [], rows=n) \
                if data.dual_face_gens else QMatrix(n, 0, tuple(() for _ in range(n)))
            assert rank(span_gens) == n - (f.dim + 1)


# --- edge rays ---

def test_edge_ray_segment_vertex_to_top():
    poly = simplex(1)
    lat, by_set = faces_of(poly)
    cone = lift(poly)
    ray = edge_ray(cone, by_set[(0,)], by_set[(0, 1)])
    assert ray.direction == (0, 1)
    w = edge_ray_crosscheck(cone, by_set[(0,)], by_set[(0, 1)])
    assert w == (Fraction(0), Fraction(1, 2))
    assert positive_multiple_ratio(w, ray.direction) == Fraction(1, 2)


def test_edge_ray_from_empty_face_is_lifted_vertex(small_corpus):
    for poly in small_corpus:
        lat = face_lattice(poly)
        cone = lift(poly)
        for v in lat.faces(0):
            ray = edge_ray(cone, lat.empty_face, v)
            assert ray.direction == primitive_vector(cone.generators[v.vertex_set[0]])
            w = edge_ray_crosscheck(cone, lat.empty_face, v)
            assert w == cone.generators[v.vertex_set[0]]


def test_edge_ray_triangle_vertex_edge_invariants():
    poly = simplex(2)
    lat, by_set = faces_of(poly)
    cone = lift(poly)
    e, f = by_set[(0,)], by_set[(0, 1)]
    ray = edge_ray(cone, e, f)
    data_e = face_cone_data(cone, e)
    data_f = face_cone_data(cone, f)
    # inside span of F
    assert rank(data_f.span_basis.hstack(QMatrix.from_columns([ray.direction]))) == 2
    # orthogonal to span of E
    assert dot(ray.direction, cone.generators[0]) == 0
    # nonnegative against dual face of E, zero against dual face of F
    assert all(dot(ray.direction, y) >= 0 for y in data_e.dual_face_gens)
    assert all(dot(ray.direction, y) == 0 for y in data_f.dual_face_gens)


def test_crosscheck_positive_on_corpus(small_corpus):
    for poly in small_corpus:
        lat = face_lattice(poly)
        system = ConeSystem(lift(poly))
        for e, f in lat.covering:
            ratio = positive_multiple_ratio(system.crosscheck(e, f), system.ray(e, f).direction)
            assert ratio is not None and ratio > 0


def test_ray_intersection_is_one_dimensional(small_corpus):
    # the selection inside edge_ray errors unless exactly one generator fits
    for poly in small_corpus:
        lat = face_lattice(poly)
        system = ConeSystem(lift(poly))
        for e, f in lat.covering:
            data_e = system.face_data(e)
            data_f = system.face_data(f)
            hits = [g for g in data_e.circledast_gens
                    if all(dot(g, y) == 0 for y in data_f.dual_face_gens)]
            assert len(hits) == 1


def test_positive_multiple_ratio_rejects():
    assert positive_multiple_ratio((0, 0), (0, 1)) is None
    assert positive_multiple_ratio((0, -2), (0, 1)) is None
    assert positive_multiple_ratio((1, 1), (0, 1)) is None
    assert positive_multiple_ratio((0, 3), (0, 1)) == 3
