from __future__ import annotations

from fractions import Fraction

import pytest

from monsterlie.moonshine import (
    CLASSES,
    UnknownClassError,
    fricke_transform,
    fricke_transform_2b_eta,
    fricke_transform_2b_inverse,
    get_class,
    mckay_thompson,
    monster_multiplicity,
    multiplicity_2B_row0,
    root_multiplicity,
    simple_root_multiplicity,
    verify_2b_inverse_identity,
    verify_2b_routes,
    verify_denominator_identity,
    verify_fricke_p0_consistency,
    verify_theta_identity,
)
from monsterlie.qseries import (
    QSeries,
    UncertifiedRegionError,
    eta,
    eta_quotient,
    invert,
    j_coefficient,
    mul,
    substitute_power,
    theta4,
)

HALF = Fraction(1, 2)


def test_registry():
    assert set(CLASSES) == {"1A", "2A", "2B"}
    assert get_class("2a").label == "2A"
    assert (get_class("2A").level, get_class("2A").fricke) == (2, True)
    assert (get_class("2B").level, get_class("2B").fricke) == (2, False)
    with pytest.raises(UnknownClassError):
        get_class("3A")


def test_1a_is_j():
    t = mckay_thompson("1A", 4)
    assert [t[n] for n in range(-1, 4)] == [1, 0, 196884, 21493760, 864299970]


def test_2a_plus_104_expansion():
    t = mckay_thompson("2A", 5) + 104
    assert [t[n] for n in range(-1, 5)] == [1, 104, 4372, 96256, 1240002, 10698752]
    assert t[0] == 104


def test_2a_series_has_integer_exponents():
    # the half-integral powers cancel in the square
    assert mckay_thompson("2A", 6).denominator == 1


def test_2a_is_the_baby_monster_sum():
    # T_2A + 104 = (A + 64/A)^2 with A = (eta(t)/eta(2t))^12
    T = 4
    a = eta_quotient({1: 12, 2: -12}, T + 2)
    b = eta_quotient({1: -12, 2: 12}, T + 2)
    assert (mul(a, b) - 1).truncate(T).is_zero()
    s = a + b.scale(64)
    assert (mckay_thompson("2A", T) + 104).agrees_with(mul(s, s))


def test_2b_series():
    t = mckay_thompson("2B", 3)
    assert [t[n] for n in range(-1, 3)] == [1, -24, 276, -2048]


def test_fricke_transform_2a_is_substitution():
    f = fricke_transform("2A", 3)
    assert f.leading() == (-HALF, 1)
    assert f == substitute_power(mckay_thompson("2A", 6), HALF)


def test_fricke_transform_2b_leading_terms():
    f = fricke_transform("2B", 2)
    assert f.terms()[:3] == [(HALF, 4096), (Fraction(1), 98304), (Fraction(3, 2), 1228800)]


def test_fricke_transform_2b_three_ways():
    T = 5
    via_eta = fricke_transform_2b_eta(T)
    via_inverse = fricke_transform_2b_inverse(T)
    th = theta4(T + 6)
    via_theta = (mul(eta(1, T + 6), invert(th)).scale(2) ** 12).truncate(T)
    assert via_eta.agrees_with(via_inverse) and via_eta.agrees_with(via_theta)


def test_fricke_transform_1a_is_identity():
    assert fricke_transform("1A", 5) == mckay_thompson("1A", 5)


def test_simple_root_multiplicities():
    assert simple_root_multiplicity("1A", 1) == 196884
    assert [simple_root_multiplicity("2A", Fraction(k, 2)) for k in (1, 2, 3, 4)] == [4372, 96256, 1240002, 10698752]
    assert simple_root_multiplicity("2A", -HALF) == 1
    assert simple_root_multiplicity("2A", Fraction(1, 3)) == 0


def test_monster_multiplicity_law():
    assert monster_multiplicity(1, -1) == 1 and monster_multiplicity(-1, 1) == 1
    assert monster_multiplicity(2, -1) == 0
    assert monster_multiplicity(3, 0) == 0
    assert monster_multiplicity(2, 3) == j_coefficient(6)
    with pytest.raises(ValueError):
        monster_multiplicity(0, 0)


def test_root_multiplicity_symmetry():
    for m, n in [(1, 1), (2, 3), (1, -1), (3, 1)]:
        assert root_multiplicity("1A", m, n) == root_multiplicity("1A", -m, -n)
    assert root_multiplicity("2A", -1, -HALF) == root_multiplicity("2A", 1, HALF)


def test_root_multiplicity_certified_region():
    with pytest.raises(UncertifiedRegionError):
        root_multiplicity("2A", 2, 1)
    with pytest.raises(UncertifiedRegionError):
        root_multiplicity("2B", 2, HALF)
    assert root_multiplicity("2B", 3, 0) == 24


def test_2b_row0_parity():
    assert [multiplicity_2B_row0(m) for m in range(1, 16)] == [24 if m % 2 else 0 for m in range(1, 16)]
    assert multiplicity_2B_row0(31) == 24 and multiplicity_2B_row0(40) == 0


def test_denominator_identity_1a():
    r = verify_denominator_identity("1A", 4, 4)
    assert r.passed and r.residual_terms() == []
    assert r.to_dict()["pass"] is True


def test_denominator_identity_detects_perturbation():
    bad = lambda m, n: monster_multiplicity(m, int(n)) + (1 if (m, n) == (2, 1) else 0)
    r = verify_denominator_identity("1A", 3, 3, bad)
    assert not r.passed and r.residual_terms()


def test_denominator_identity_refuses_twisted_classes():
    with pytest.raises(UncertifiedRegionError):
        verify_denominator_identity("2A", 2, 2)


@pytest.mark.parametrize("label", ["1A", "2A"])
def test_fricke_p0_row(label):
    assert verify_fricke_p0_consistency(label, 3).passed


def test_fricke_p0_row_detects_perturbation():
    bad = lambda m, n: root_multiplicity("2A", m, n) + (1 if (m, n) == (1, 1) else 0)
    assert not verify_fricke_p0_consistency("2A", 3, bad).passed
    with pytest.raises(UncertifiedRegionError):
        verify_fricke_p0_consistency("2B", 3)


def test_2b_identities():
    assert verify_theta_identity(5).passed
    assert verify_theta_identity(5, theta=theta4).passed
    assert verify_2b_inverse_identity(5).passed
    assert verify_2b_routes(5).passed


def test_theta_identity_detects_wrong_theta():
    wrong = lambda T: theta4(T) + QSeries.monomial(2, 1, T)
    assert not verify_theta_identity(5, theta=wrong).passed


def test_2b_is_odd_product():
    # q^-1 prod_{n >= 0} (1 - q^(2n+1))^24, multiplied out directly
    T = 12
    prod = QSeries.monomial(-1, 1, T)
    for m in range(1, T + 2, 2):
        prod = mul(prod, (QSeries.constant(1) - QSeries.monomial(m, 1)) ** 24).truncate(T)
    assert mckay_thompson("2B", T) == prod


def test_printed_expansions_are_nonnegative():
    for s in (mckay_thompson("2A", 5) + 104, fricke_transform("2A", 3), fricke_transform("2B", 6)):
        assert s.is_integral() and all(c >= 0 for _, c in s.terms())


def test_denominator_identity_rectangular_bounds():
    assert verify_denominator_identity("1A", 6, 4).passed


def test_monster_multiplicity_depends_on_product():
    for m in range(1, 6):
        for n in range(1, 6):
            assert monster_multiplicity(m, n) == monster_multiplicity(n, m) == j_coefficient(m * n)


def test_perturbed_c11_residual_location():
    # (1 - p q) enters with the p^-1 prefactor, so the first defect is the monomial p^0 q^1
    bad = lambda m, n: monster_multiplicity(m, int(n)) + (1 if (m, n) == (1, 1) else 0)
    terms = verify_denominator_identity("1A", 4, 4, bad).residual_terms()
    assert terms[0] == [0, "1", "1"]
