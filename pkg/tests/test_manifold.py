import json

import pytest
from hypothesis import given, settings, strategies as st

from plman import corpus
from plman.complex import build_complex, cone, join, simplex, sphere, suspension
from plman.errors import NonPureComplexError
from plman.homology.chains import homology_list
from plman.homology.descriptor import GroupDescriptor
from plman.manifold.certify import BAD, DISK, SPHERE, classify_link, is_homology_manifold
from plman.manifold.presentation import GroupPresentation, edge_path_presentation, free_reduce
from plman.manifold.tietze import replay, simplify
from plman.manifold.verdict import NO, UNKNOWN, YES, Budgets, analyze_group, replay_verdict


def apply_word(word, images):
    """Evaluate a word as a permutation acting on lists, composing right to left."""
    n = len(images[0])
    acc = list(range(n))
    for x in word:
        p = images[abs(x) - 1]
        if x < 0:
            q = [0] * n
            for i, pi in enumerate(p):
                q[pi] = i
            p = q
        acc = [acc[p[i]] for i in range(n)]
    return acc


def generated(images):
    seen = {tuple(range(len(images[0])))}
    frontier = list(seen)
    while frontier:
        g = frontier.pop()
        for h in images:
            gh = tuple(g[h[i]] for i in range(len(h)))
            if gh not in seen:
                seen.add(gh)
                frontier.append(gh)
    return seen


def parity(p):
    p, sign = list(p), 1
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def test_free_reduce():
    assert free_reduce([1, 2, -2, -1, 3]) == (3,)


def test_presentations():
    circle = build_complex([["a", "b"], ["b", "c"], ["c", "a"]])
    assert edge_path_presentation(circle).abelianization() == GroupDescriptor(1)
    assert edge_path_presentation(sphere(2)).abelianization() == GroupDescriptor(0)
    assert edge_path_presentation(corpus.rp2()).abelianization() == GroupDescriptor(0, (2,))
    assert edge_path_presentation(corpus.torus()).abelianization() == GroupDescriptor(2)


def test_tietze_trivializes_sphere_and_replays():
    G = edge_path_presentation(sphere(3))
    res = simplify(G)
    assert res.trivialized
    assert replay(G, res.moves).is_empty()
    v = analyze_group(G).verdict
    assert v.value == YES and replay_verdict(G, v)


def test_replay_rejects_tampered_log():
    G = edge_path_presentation(sphere(2))
    moves = [dict(m) for m in simplify(G).moves]
    assert moves
    moves[0]["generator"] = G.generators + 5
    with pytest.raises(Exception):
        replay(G, moves)


def test_poincare_verdict_and_a5_witness(poincare):
    G = edge_path_presentation(poincare)
    assert G.abelianization() == GroupDescriptor(0)
    analysis = analyze_group(G, full_spectrum=True)
    assert analysis.verdict.value == NO
    assert {60, 120} <= set(analysis.quotient_orders)
    ev = analysis.verdict.evidence
    assert ev["order"] == 60
    images = [list(p) for p in ev["images"]]
    ident = list(range(len(images[0])))
    assert all(apply_word(r, images) == ident for r in G.relators)
    group = generated(images)
    assert len(group) == 60 and all(parity(p) == 1 for p in group)
    assert replay_verdict(G, analysis.verdict)
    json.dumps(analysis.verdict.to_json())


def test_rp2_quotient():
    v = analyze_group(edge_path_presentation(corpus.rp2())).verdict
    assert v.value == NO and v.evidence["order"] == 2


def test_unknown_under_tiny_budget():
    G = GroupPresentation(2, ((1, 2, -1, -2),))
    v = analyze_group(G, Budgets(tietze_moves=1, quotient_bound=1)).verdict
    assert v.value == UNKNOWN and replay_verdict(G, v)
    assert v.evidence["quotient_bound"] == 1
    with pytest.raises(ValueError):
        Budgets(tietze_moves=0)


def test_classify_link():
    Z0, Z1 = GroupDescriptor(0), GroupDescriptor(1)
    assert classify_link((), -1) == SPHERE
    assert classify_link((Z0, Z1), 1) == SPHERE
    assert classify_link((Z0, Z0), 1) == DISK
    assert classify_link((Z1, Z0), 1) == BAD


@pytest.mark.parametrize("n", range(1, 5))
def test_spheres_are_closed(n):
    r = is_homology_manifold(sphere(n))
    assert r.closed and not r.bad_simplices and not r.singular_vertices


def test_simplex_has_boundary():
    r = is_homology_manifold(simplex(3))
    assert r.is_homology_manifold and not r.closed
    assert r.boundary_subcomplex.f_vector() == (4, 6, 4)
    assert r.boundary_report.closed


def test_cone_on_torus_apex_is_bad():
    K = cone(corpus.torus(), apex="c")
    r = is_homology_manifold(K)
    assert not r.is_homology_manifold
    assert r.bad_simplices == [("c",)]


def test_cone_on_sphere_is_a_ball():
    r = is_homology_manifold(cone(sphere(2)))
    assert r.is_homology_manifold
    assert r.boundary_subcomplex.f_vector() == sphere(2).f_vector()


def test_nonpure_rejected():
    with pytest.raises(NonPureComplexError):
        is_homology_manifold(build_complex([["a", "b", "c"], ["c", "d"]]))


def test_sigma_p_singular(sigma_p_report):
    r = sigma_p_report
    assert r.closed
    assert sorted(r.singular_vertices) == ["^n0", "^s0"]
    assert r.notes
    data = r.to_json(include_certificates=False)
    assert [v["vertex"] for v in data["singular_vertices"]["singular"]] == ["^n0", "^s0"]


def test_sigma2p_nonsingular(sigma2p_report):
    assert sigma2p_report.closed
    assert sigma2p_report.singular_vertices == []
    assert not sigma2p_report.singular.unknown


def test_jobs_do_not_change_the_report():
    K = suspension(corpus.rp2())
    a, b = is_homology_manifold(K, jobs=1), is_homology_manifold(K, jobs=2)
    assert json.dumps(a.to_json()) == json.dumps(b.to_json())


SMALL = [lambda: sphere(1), lambda: sphere(2), corpus.rp2, corpus.torus, lambda: cone(corpus.torus())]


@settings(max_examples=10, deadline=None)
@given(st.sampled_from(range(len(SMALL))))
def test_suspension_preserves_manifoldness_of_spheres_only(i):
    """The suspension of a closed manifold is a homology manifold exactly
    when the manifold has the homology of a sphere."""
    K = SMALL[i]()
    r = is_homology_manifold(K, singular=False)
    rs = is_homology_manifold(suspension(K), singular=False)
    sphere_like = r.closed and all(
        g == (GroupDescriptor(1) if d in (0, K.dim) else GroupDescriptor(0))
        for d, g in enumerate(homology_list(K)))
    assert rs.is_homology_manifold == sphere_like


@settings(max_examples=8, deadline=None)
@given(st.integers(0, 2), st.integers(0, 2))
def test_join_of_spheres_is_a_sphere(a, b):
    r = is_homology_manifold(join(sphere(a, "x"), sphere(b, "y")), singular=False)
    assert r.closed and r.dimension == a + b + 1
