import random

import pytest

from oracles import rank_mod_p

from plman import corpus
from plman.complex import build_complex, sphere, suspension
from plman.cover import orientability_and_double_cover
from plman.errors import NotACocycleError
from plman.homology.bockstein import CoefficientSequence, bockstein, is_liftable, random_cocycle
from plman.homology.chains import (boundary_matrix, cohomology, homology, homology_list, is_coboundary,
                                   simplicial_chain_complex, twisted_homology)
from plman.homology.coefficients import CoefficientSystem, parse_coefficients
from plman.homology.descriptor import GroupDescriptor
from plman.homology.matrix import IntegerMatrix
from plman.homology.snf import smith_normal_form

Z = GroupDescriptor(1)
ZERO = GroupDescriptor(0)


def z(*torsion, free=0):
    return GroupDescriptor(free, tuple(torsion))


SMALL = {
    "S2": lambda: sphere(2),
    "S3": lambda: sphere(3),
    "rp2": corpus.rp2,
    "torus": corpus.torus,
    "susp_rp2": lambda: suspension(corpus.rp2()),
}


def test_descriptor_validation():
    with pytest.raises(ValueError):
        GroupDescriptor(0, (3, 2))
    assert str(z(2, free=1)) == "Z + Z/2"
    assert GroupDescriptor.from_json(z(2, 4).to_json()) == z(2, 4)


def test_snf_diag_example():
    res = smith_normal_form(IntegerMatrix.diagonal([2, 3]))
    assert res.diagonal == (1, 6)


def test_boundary_shapes_and_mod2_rank():
    K = sphere(2)
    assert boundary_matrix(K, 1).shape == (4, 6)
    assert boundary_matrix(K, 2).shape == (6, 4)
    circle = build_complex([["a", "b"], ["b", "c"], ["c", "a"]])
    assert rank_mod_p(boundary_matrix(circle, 1), 2) == 2


def test_frozen_integral_homology(poincare):
    assert homology_list(sphere(2)) == [Z, ZERO, Z]
    assert homology_list(corpus.rp2()) == [Z, z(2), ZERO]
    assert homology_list(corpus.torus()) == [Z, z(free=2), Z]
    assert homology_list(poincare) == [Z, ZERO, ZERO, Z]
    assert homology(poincare, 7) == ZERO and homology(poincare, -1) == ZERO


def test_frozen_sigma3rp2(sigma3rp2):
    assert sigma3rp2.f_vector() == (12, 63, 180, 288, 240, 80)
    assert homology_list(sigma3rp2) == [Z, ZERO, ZERO, ZERO, z(2), ZERO]
    assert cohomology(sigma3rp2, 5) == z(2)
    assert cohomology(sigma3rp2, 4, CoefficientSystem.mod(2)) == z(2)


def test_rp2_other_coefficients():
    K = corpus.rp2()
    assert homology_list(K, CoefficientSystem.mod(2)) == [z(2)] * 3
    assert homology_list(K, CoefficientSystem.mod(3)) == [z(3), ZERO, ZERO]
    assert [cohomology(K, d) for d in range(3)] == [Z, ZERO, z(2)]


def test_twisted_examples():
    _, cover = orientability_and_double_cover(corpus.rp2())
    minus = CoefficientSystem.integers(twisted=True)
    assert [twisted_homology(cover, d, minus) for d in range(3)] == [z(2), ZERO, Z]
    _, cover = orientability_and_double_cover(sphere(4))
    assert [twisted_homology(cover, d, minus) for d in range(5)] == [Z, ZERO, ZERO, ZERO, Z]
    untw = twisted_homology(cover, 4, CoefficientSystem.integers())
    assert untw == Z and untw.note


MANIFOLDS = sorted(set(SMALL) - {"susp_rp2"})


@pytest.mark.parametrize("name", MANIFOLDS)
def test_trivial_twist_is_ordinary_homology(name):
    K = SMALL[name]()
    _, cover = orientability_and_double_cover(K)
    A = CoefficientSystem.presented(1, [], IntegerMatrix.identity(1), "Z with identity twist")
    C = simplicial_chain_complex(K, A, cover)
    assert [C.homology(d) for d in range(K.dim + 1)] == homology_list(K)


@pytest.mark.parametrize("name", sorted(SMALL))
def test_mod_p_homology_matches_field_ranks(name):
    K = SMALL[name]()
    for p in (2, 3, 5):
        ranks = [rank_mod_p(boundary_matrix(K, d), p) if d else 0 for d in range(K.dim + 2)]
        got = homology_list(K, CoefficientSystem.mod(p))
        for d in range(K.dim + 1):
            betti = K.n_faces(d) - ranks[d] - ranks[d + 1]
            assert got[d] == GroupDescriptor(0, (p,) * betti)
        assert sum((-1) ** d * len(g.torsion) for d, g in enumerate(got)) == K.euler_characteristic()


@pytest.mark.parametrize("name", sorted(SMALL))
def test_universal_coefficients(name):
    K = SMALL[name]()
    H = homology_list(K)
    for d in range(K.dim + 1):
        Hd = cohomology(K, d)
        assert Hd.free_rank == H[d].free_rank
        assert Hd.torsion == (H[d - 1].torsion if d else ())


@pytest.mark.parametrize("name", sorted(SMALL))
def test_dd_zero_all_coefficients(name):
    K = SMALL[name]()
    systems = [CoefficientSystem.integers(), CoefficientSystem.mod(4)]
    if name in MANIFOLDS:
        systems += [CoefficientSystem.integers(True), CoefficientSystem.presented(2, [[2, 0]], "negate")]
    for A in systems:
        for cochains in (False, True):
            assert simplicial_chain_complex(K, A, cochains=cochains).check_dd_zero()


def test_presented_coefficients_split():
    K = corpus.rp2()
    A = CoefficientSystem.presented(2, [[2, 0], [0, 3]])
    got = homology_list(K, A)
    expect = [z(6), z(2), z(2)]  # Tor(Z/2, Z/6) survives in degree 2
    assert got == expect


def test_parse_coefficients():
    assert parse_coefficients("z").name == "Z"
    assert parse_coefficients("z2").descriptor() == z(2)
    assert parse_coefficients("zk:6-").is_twisted
    with pytest.raises(ValueError):
        parse_coefficients("q")


def test_class_of_and_coboundaries():
    K = sphere(2)
    C = simplicial_chain_complex(K, cochains=True)
    rng = random.Random(0)
    b = [rng.randint(-3, 3) for _ in range(C.width(1))]
    ok, w = is_coboundary(C, 2, C.apply(1, b))
    assert ok and C.apply(1, w) == C.apply(1, b)
    gen = C.subquotient(2).representative((1,))
    assert is_coboundary(C, 2, gen)[0] is False
    with pytest.raises(NotACocycleError):
        C.class_of(1, [1] + [0] * (C.width(1) - 1))


def test_bockstein_sigma3rp2(sigma3rp2):
    seq = CoefficientSequence.integral(2)
    cache = {"C": simplicial_chain_complex(sigma3rp2, seq.C, cochains=True),
             "B": simplicial_chain_complex(sigma3rp2, seq.B, cochains=True)}
    cache["A"] = cache["B"]
    gen = cache["C"].subquotient(4).representative((1,))
    res = bockstein(sigma3rp2, 4, gen, seq, cache)
    assert res.handle.group == z(2) and res.handle.coordinates == (1,)
    assert is_liftable(sigma3rp2, 4, gen, seq, cache)[0] is False
    assert bockstein(sigma3rp2, 4, [0] * len(gen), seq, cache).is_zero()


def test_bockstein_rp2_small_lift_enumeration():
    """On RP2 the generator of H^1(;Z/2) has no integral cocycle lift: no lift
    with entries in {-1, 0, 1} on the cocycle support is a cocycle even up to
    adding coboundaries of small vertex cochains."""
    import itertools
    K = corpus.rp2()
    seq = CoefficientSequence.integral(2)
    C2 = simplicial_chain_complex(K, seq.C, cochains=True)
    CZ = simplicial_chain_complex(K, seq.B, cochains=True)
    x = C2.subquotient(1).representative((1,))
    assert not bockstein(K, 1, x, seq).is_zero()
    support = [i for i, v in enumerate(x) if v % 2]
    found = False
    for signs in itertools.product((1, -1), repeat=len(support)):
        y = [0] * len(x)
        for i, s in zip(support, signs):
            y[i] = s
        for w in itertools.product((0, 1), repeat=K.n_faces(0)):
            yy = [a + 2 * b for a, b in zip(y, CZ.apply(0, list(w)))]
            if not any(CZ.apply(1, yy)):
                found = True
    assert not found


def test_from_character_kernels():
    seq = CoefficientSequence.from_character(CoefficientSystem.integers(), [1], 2)
    assert seq.A.descriptor() == Z and seq.i.to_dense() == [[2]]
    seq = CoefficientSequence.from_character(CoefficientSystem.mod(2), [1], 2)
    assert seq.A.descriptor() == ZERO
    seq = CoefficientSequence.from_character(CoefficientSystem.presented(2, []), [1, 0], 2)
    assert seq.A.descriptor() == z(free=2) and seq.surjective
    with pytest.raises(ValueError):
        CoefficientSequence.from_character(CoefficientSystem.mod(3), [1], 2)


@pytest.mark.parametrize("name,degree", [("rp2", 1), ("torus", 1), ("susp_rp2", 2)])
def test_bockstein_exactness_random(name, degree):
    K = SMALL[name]()
    rng = random.Random(11)
    for seq in (CoefficientSequence.integral(2), CoefficientSequence.integral(3),
                CoefficientSequence.from_character(CoefficientSystem.presented(2, [[0, 2]]), [1, 1], 2)):
        cache = {k: simplicial_chain_complex(K, getattr(seq, k), cochains=True) for k in "ABC"}
        for _ in range(4):
            x = random_cocycle(cache["C"], degree, rng)
            beta = bockstein(K, degree, x, seq, cache)
            assert beta.is_zero() == is_liftable(K, degree, x, seq, cache)[0]
