from __future__ import annotations

import random
from fractions import Fraction

import pytest

from monsterlie.algebra import (
    ZERO,
    AlgebraElement,
    MonsterAlgebra,
    WindowError,
    cartan_involution,
    center_image,
    check_triple,
    degree_derivation,
    jacobi_failures,
    jacobi_residual,
    presentation_relations,
    random_triples,
    relation_residuals,
)
from monsterlie.cartan import InvalidIndexError
from monsterlie.freelie import fricke_generators, graded_dimension


@pytest.fixture(scope="module")
def alg():
    return MonsterAlgebra("1A", window=(4, 4))


@pytest.fixture(scope="module")
def triples(alg):
    return random_triples(alg, 60, random.Random(7))


def test_basic_brackets(alg):
    assert str(alg.bracket(alg.e_m1, alg.f_m1)) == "h1 - h2"
    assert alg.bracket(alg.e(0, 2, 1), alg.f(0, 2, 1)) == alg.h1 * -2 - alg.h2
    assert alg.bracket(alg.f_m1, alg.e(1, 2, 1)) == alg.e(0, 2, 1)
    assert alg.bracket(alg.e(0, 1, 1), alg.f(0, 1, 2)).is_zero()
    assert alg.bracket(alg.e_m1, alg.e(0, 1, 1)).is_zero()


def test_letters_are_iterated_raisings(alg):
    x = alg.e(0, 3, 2)
    for l in range(1, 3):
        x = alg.bracket(alg.e_m1, x)
        assert x == alg.e(l, 3, 2)


def test_lowering_rule(alg):
    for j in range(1, 5):
        for l in range(1, j):
            assert alg.bracket(alg.f_m1, alg.e(l, j, 1)) == alg.e(l - 1, j, 1) * (l * (j - l))


def test_relations_hold(alg):
    assert relation_residuals(presentation_relations(alg, 4, 3)) == {}


def test_relations_hold_for_2a():
    a = MonsterAlgebra("2A", window=(4, 4))
    assert relation_residuals(presentation_relations(a, 4, 3)) == {}


def test_antisymmetry(alg, triples):
    for x, y, _ in triples:
        assert alg.bracket(x, y) == -alg.bracket(y, x)
        assert alg.bracket(x, x).is_zero()


def test_jacobi(alg, triples):
    for x, y, z in triples:
        assert jacobi_residual(alg, x, y, z).is_zero()


def test_jacobi_failures_helper_is_empty(alg):
    assert jacobi_failures(alg, 20, random.Random(11)) == []


def test_degree_additivity(alg, triples):
    for x, y, _ in triples:
        b = alg.bracket(x, y)
        if not b.is_zero():
            assert b.degree == tuple(map(sum, zip(x.degree, y.degree)))


def test_bilinearity(alg, triples):
    for x, y, z in triples[:20]:
        assert alg.bracket(x * 3 + y, z) == alg.bracket(x, z) * 3 + alg.bracket(y, z)


def test_cartan_involution(alg, triples):
    for x, y, _ in triples:
        eta_x = cartan_involution(x)
        assert cartan_involution(eta_x) == x
        if not x.is_zero():
            assert eta_x.degree == (-x.degree[0], -x.degree[1])
        assert cartan_involution(alg.bracket(x, y)) == alg.bracket(eta_x, cartan_involution(y))


def test_degree_derivations_are_derivations(alg, triples):
    for x, y, _ in triples[:30]:
        for i in (1, 2):
            d = lambda v: degree_derivation(i, v)
            assert d(alg.bracket(x, y)) == alg.bracket(d(x), y) + alg.bracket(x, d(y))


def test_h_acts_by_degree(alg, triples):
    for x, _, _ in triples[:30]:
        assert alg.bracket(alg.h1, x) == degree_derivation(1, x)
        assert alg.bracket(alg.h2, x) == degree_derivation(2, x)


def test_real_root_spaces(alg):
    assert alg.basis_at((1, -1)) == [alg.e_m1]
    assert alg.basis_at((-1, 1)) == [alg.f_m1]
    for n in range(2, 5):
        assert alg.basis_at((n, -n)) == [] and alg.basis_at((-n, n)) == []
    assert alg.bracket(alg.e_m1, alg.e_m1).is_zero()


def test_root_space_dimensions_match_free_algebra(alg):
    g = fricke_generators("1A", (3, 3)).restrict(2)
    for d in [(1, 1), (2, 1), (2, 2), (3, 2)]:
        assert len(alg.basis_at(d, 2)) == graded_dimension(g, d)


def test_weight_strings(alg):
    for j in range(1, 5):
        ws = alg.weight_string(j)
        assert len(ws) == j
        assert [w for _, w in ws] == list(range(1 - j, j, 2))
        assert alg.adjoint_power(alg.e_m1, j, alg.e(0, j, 1)).is_zero()


def test_triples(alg):
    r = check_triple((-1, 1), algebra=alg)
    assert r.kind == "sl2" and r.ok
    for j in (1, 2, 3):
        r = check_triple((j, 2), algebra=alg)
        assert r.a_ii == -2 * j and r.ok


def test_synthetic_heisenberg_triple():
    r = check_triple((7, 1), 0)
    assert r.kind == "heisenberg" and r.ok


def test_heisenberg_relations_fail_off_zero_diagonal():
    r = check_triple((7, 1), -4, kind="heisenberg")
    assert not r.ok
    with pytest.raises(ValueError):
        check_triple((7, 1), 0, kind="sl2")


def test_center_image_vanishes():
    rng = random.Random(3)
    for _ in range(20):
        j, p = rng.randint(1, 30), rng.randint(1, 30)
        k, q = rng.randint(1, 196884), rng.randint(1, 196884)
        assert center_image(j, k, p, q).is_zero()


def test_cartan_images_span(alg):
    assert alg.cartan_image((-1, 1)) == alg.h1 - alg.h2
    assert alg.cartan_image((3, 9)) == alg.h1 * -3 - alg.h2


def test_index_validation(alg):
    with pytest.raises(InvalidIndexError):
        alg.e(2, 2, 1)
    with pytest.raises(InvalidIndexError):
        alg.e(0, 1, 196885)
    with pytest.raises(InvalidIndexError):
        alg.f(0, 0, 1)


def test_window_rejects_large_generators():
    a = MonsterAlgebra("1A", window=(2, 2))
    with pytest.raises(WindowError):
        a.bracket(a.e(0, 5, 1), a.f_m1)


def test_non_fricke_refused():
    with pytest.raises(ValueError):
        MonsterAlgebra("2B")


def test_element_arithmetic_and_text():
    x = AlgebraElement({"h1": 1, "h2": Fraction(-3, 2)})
    assert str(x) == "h1 - 3/2*h2"
    assert x - x == ZERO and (x - x) == 0
    assert str(x * 2) == "2*h1 - 3*h2"
