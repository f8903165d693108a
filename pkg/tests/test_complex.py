import itertools

import pytest
from hypothesis import given, settings, strategies as st

from plman import corpus
from plman.complex import (RESERVED_PREFIX, build_complex, cone, format_facets, join, parse_facets, sphere,
                           suspension)
from plman.cover import orientability_and_double_cover
from plman.errors import (EmptyComplexError, FacetFileError, MalformedFacetError, MissingSimplexError,
                          NotAPseudomanifoldError, TokenCollisionError)
from plman.subdivision import barycentric_subdivision, dual_cone


def boundary_tetrahedron():
    return build_complex([["a", "b", "c"], ["a", "b", "d"], ["a", "c", "d"], ["b", "c", "d"]])


def test_build_examples():
    assert boundary_tetrahedron().f_vector() == (4, 6, 4)
    assert build_complex([["a", "b"], ["b", "c"], ["c", "a"]]).f_vector() == (3, 3)
    assert build_complex([["a", "b", "c"], ["a", "b"]]).facet_list() == [("a", "b", "c")]


def test_build_errors():
    with pytest.raises(MalformedFacetError):
        build_complex([["a", "a"]])
    with pytest.raises(EmptyComplexError):
        build_complex([])
    with pytest.raises(MissingSimplexError):
        boundary_tetrahedron().link(["a", "z"])


def test_poincare_asset(poincare):
    assert poincare.f_vector() == (16, 106, 180, 90)
    assert poincare.euler_characteristic() == 0


def test_links_and_stars():
    K = boundary_tetrahedron()
    assert K.link(["a"]).f_vector() == (3, 3)
    assert K.link(["a", "b"]).f_vector() == (2,)
    assert K.link(["a", "b", "c"]).is_empty()
    circle = build_complex([["a", "b"], ["b", "c"], ["c", "a"]])
    assert circle.star(["a"]).f_vector() == (3, 2)
    assert K.star(["a", "b", "c"]).facet_list() == [("a", "b", "c")]
    ct = cone(corpus.torus())
    apex = next(v for v in ct.vertices if str(v).startswith(RESERVED_PREFIX))
    assert ct.star([apex]) == ct


def test_sigma2p_link_of_suspension_edge(sigma2p, poincare):
    assert len(sigma2p.vertices) == 20
    assert sigma2p.link(["^n0", "^n1"]) == poincare
    assert sigma2p.link(["^s0", "^n1"]) == poincare


def test_constructions():
    s0 = build_complex([["x"], ["y"]])
    assert suspension(s0).f_vector() == (4, 4)
    solid = cone(boundary_tetrahedron())
    assert solid.f_vector() == (5, 10, 10, 4)
    with pytest.raises(TokenCollisionError):
        join(s0, s0)
    with pytest.raises(TokenCollisionError):
        cone(s0, apex="x")


def test_subdivision_examples():
    assert barycentric_subdivision(build_complex([["a", "b"]])).complex.f_vector() == (3, 2)
    assert barycentric_subdivision(build_complex([["a", "b"], ["b", "c"], ["a", "c"]])).complex.f_vector() == (6, 6)
    # chains in the face poset of the boundary of the tetrahedron: 14 faces, 36 pairs, 24 full flags
    assert barycentric_subdivision(boundary_tetrahedron()).complex.f_vector() == (14, 36, 24)


def test_dual_cone_examples(sigma2p):
    K = boundary_tetrahedron()
    D = dual_cone(K, ["a", "b", "c"])
    assert D.cone_complex.f_vector() == (1,) and D.link_part.is_empty()
    circle = build_complex([["a", "b"], ["b", "c"], ["c", "a"]])
    D = dual_cone(circle, ["a"])
    assert D.cone_complex.f_vector() == (3, 2)
    assert D.dim == 1
    assert sigma2p.dim == 5 and sigma2p.n_faces(1) == 174


def test_dual_cone_is_cone_on_subdivided_link():
    K = sphere(3)
    for s in K.simplices():
        D = dual_cone(K, s)
        assert D.dim == K.dim - (len(s) - 1)
        for f in D.cone_complex.facet_list():
            assert tuple(s) in f  # every maximal simplex contains the barycenter of s
        L = K.link(s)
        if not L.is_empty():
            assert D.link_part.f_vector() == barycentric_subdivision(L).complex.f_vector()


def test_double_cover_examples():
    orientable, cover = orientability_and_double_cover(sphere(3))
    assert orientable and len(cover.total.one_skeleton_components()) == 2
    orientable, cover = orientability_and_double_cover(corpus.rp2())
    assert not orientable
    assert cover.total.f_vector() == (12, 30, 20) and cover.total.is_connected()
    assert orientability_and_double_cover(build_complex([["a", "b"], ["b", "c"], ["c", "a"]]))[0]
    with pytest.raises(NotAPseudomanifoldError):
        orientability_and_double_cover(build_complex([["a", "b", "c"], ["a", "b", "d"], ["a", "b", "e"]]))


@pytest.mark.parametrize("name", ["rp2", "torus"])
def test_deck_is_free_and_reverses_orientation(name):
    K = corpus.named(name)
    _, cover = orientability_and_double_cover(K)
    for f in cover.total.facet_list():
        image = tuple(cover.deck(t) for t in f)
        assert set(image).isdisjoint(f)
        assert cover.orientation_of(tuple(sorted(image, key=lambda t: cover.total._vindex[t]))) == -cover.orientation_of(f)


def test_facet_file_format():
    K = parse_facets("# comment\n\n1 2 3\n2 3 4\n")
    assert K.f_vector() == (4, 5, 2)
    assert parse_facets(format_facets(K, ["header"])) == K
    with pytest.raises(FacetFileError) as exc:
        parse_facets("1 2\n3 3\n", "f.txt")
    assert exc.value.line == 2


small_complexes = st.lists(st.sets(st.integers(0, 6), min_size=1, max_size=4), min_size=1, max_size=7).map(
    lambda fs: build_complex([[str(v) for v in sorted(f)] for f in fs]))


@settings(max_examples=60, deadline=None)
@given(small_complexes)
def test_subdivision_preserves_euler_characteristic(K):
    assert barycentric_subdivision(K).complex.euler_characteristic() == K.euler_characteristic()


@settings(max_examples=40, deadline=None)
@given(small_complexes, small_complexes, st.data())
def test_link_of_join_is_join_of_links(A, B, data):
    B = B.relabel(lambda v: "b" + v)
    J = join(A, B)
    alpha = data.draw(st.sampled_from(A.simplices() + [()]))
    beta = data.draw(st.sampled_from(B.simplices() + ([()] if alpha else [])))
    LA = A.link(alpha) if alpha else A
    LB = B.link(beta) if beta else B
    assert J.link(tuple(alpha) + tuple(beta)) == join(LA, LB)


@pytest.mark.parametrize("K", [boundary_tetrahedron(), corpus.rp2(), corpus.torus()])
def test_simplex_meets_only_its_own_dual_cone(K):
    faces = K.simplices()
    cones = {s: set(dual_cone(K, s).cone_complex.vertices) for s in faces}
    for s in faces:
        own_faces = {c for r in range(1, len(s) + 1) for c in itertools.combinations(s, r)}
        for t in faces:
            if len(t) != len(s):
                continue
            meet = own_faces & cones[t]
            assert len(meet) == (1 if t == s else 0)
