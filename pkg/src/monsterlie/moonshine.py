"""Conjugacy-class data for 1A, 2A and 2B and the identities they satisfy."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .qseries import (
    BivariateSeries,
    QSeries,
    UncertifiedRegionError,
    eta,
    eta_quotient,
    invert,
    j_coefficient,
    j_series,
    mul,
    product_side,
    substitute_power,
    theta4_sum,
)

HALF = Fraction(1, 2)


class UnknownClassError(KeyError):
    pass


def _t2a_plus_104(T) -> QSeries:
    # ((eta(t)/eta(2t))^12 + 2^6 (eta(2t)/eta(t))^12)^2; the inner sum has valuation -1/2
    inner_T = Fraction(T) + HALF
    a = eta_quotient({1: 12, 2: -12}, inner_T)
    b = eta_quotient({1: -12, 2: 12}, inner_T)
    s = a + b.scale(64)
    return mul(s, s).truncate(T)


def _t2a(T) -> QSeries:
    return (_t2a_plus_104(T) - 104).truncate(T)


def _t2b(T) -> QSeries:
    return eta_quotient({1: 24, 2: -24}, T)


def _j(T) -> QSeries:
    return j_series(Fraction(T))


@dataclass(frozen=True)
class ClassData:
    """A Monster conjugacy class with a certified McKay-Thompson recipe."""

    label: str
    level: int
    fricke: bool
    recipe: Callable[[Fraction], QSeries] = field(repr=False)
    description: str = ""

    def __post_init__(self):
        if self.level == 1 and self.label != "1A":
            raise ValueError("level 1 is reserved for the identity class")


CLASSES: dict[str, ClassData] = {
    c.label: c for c in (
        ClassData("1A", 1, True, _j, "J(q) = j(q) - 744"),
        ClassData("2A", 2, True, _t2a, "Baby Monster class; T + 104 is an eta expression squared"),
        ClassData("2B", 2, False, _t2b, "eta(tau)^24 / eta(2 tau)^24"),
    )
}


def get_class(label: str) -> ClassData:
    try:
        return CLASSES[label.upper()]
    except KeyError:
        raise UnknownClassError(f"unknown conjugacy class {label!r}; known: {', '.join(CLASSES)}") from None


def mckay_thompson(label: str, truncation=10) -> QSeries:
    return get_class(label).recipe(Fraction(truncation))


def fricke_transform_2b_eta(truncation=10) -> QSeries:
    """T_2B(-1/tau) as the eta quotient 2^12 eta(tau)^24 / eta(tau/2)^24."""
    return eta_quotient({1: 24, HALF: -24}, truncation).scale(2 ** 12)


def fricke_transform_2b_inverse(truncation=10) -> QSeries:
    """T_2B(-1/tau) as 2^12 / T_2B(tau/2)."""
    T = Fraction(truncation)
    # T_2B(tau/2) has valuation -1/2, so the inverse loses one unit of precision
    half = substitute_power(_t2b(2 * T + 1), HALF)
    return invert(half).scale(2 ** 12).truncate(T)


@lru_cache(maxsize=64)
def fricke_transform(label: str, truncation=10) -> QSeries:
    """The series of T_g(-1/tau) in powers of q^(1/N)."""
    c = get_class(label)
    T = Fraction(truncation)
    if c.label == "1A":
        return _j(T)
    if c.label == "2A":
        return substitute_power(_t2a(2 * T), HALF)
    return fricke_transform_2b_eta(T)


def _transform_through(label: str, n: Fraction) -> QSeries:
    T = 16
    while T <= n:
        T *= 2
    return fricke_transform(label, T)


def simple_root_multiplicity(label: str, n) -> int:
    """c(1, n): the coefficient of q^n in T_g(-1/tau)."""
    n = Fraction(n)
    c = get_class(label)
    if (n * c.level).denominator != 1:
        return 0
    if c.label == "1A":
        return j_coefficient(int(n))
    return _transform_through(c.label, n).coefficient(n)


def monster_multiplicity(m: int, n: int) -> int:
    """Multiplicity c(mn) of the root (m, n) of the Monster Lie algebra."""
    if m == 0 and n == 0:
        raise ValueError("(0, 0) is not a root")
    mn = m * n
    if mn == 0 or mn < -1:
        return 0
    return j_coefficient(mn)


@lru_cache(maxsize=8)
def _row0_table(m_max: int) -> dict:
    from .freelie import product_exponents

    # q * T_2B = prod_m (1 - q^m)^c(m,0)
    unit = _t2b(m_max + 1).shift(1)
    target = {(int(e),): c for e, c in unit.terms()}
    dims = product_exponents(target, (m_max,))
    return {m: dims.get((m,), 0) for m in range(1, m_max + 1)}


def multiplicity_2B_row0(m: int) -> int:
    """c(m, 0) for 2B, read off the eta expansion by product-exponent extraction."""
    if m < 1:
        raise ValueError("m must be positive")
    size = 16
    while size < m:
        size *= 2
    return _row0_table(size)[m]


def root_multiplicity(label: str, m: int, n) -> int:
    """Multiplicity of the root (m, n) inside the certified region of the class.

    Raises :class:`UncertifiedRegionError` when the value would need twisted
    data that is not available (g != 1 with m > 1 off the 2B n = 0 row).
    """
    c = get_class(label)
    n = Fraction(n)
    if m < 0 or (m == 0 and n < 0):
        m, n = -m, -n
    if c.label == "1A":
        if n.denominator != 1:
            return 0
        return monster_multiplicity(m, int(n))
    if c.label == "2B" and n == 0 and m >= 1:
        return multiplicity_2B_row0(m)
    if m == 1:
        return simple_root_multiplicity(c.label, n)
    raise UncertifiedRegionError(f"c({m}, {n}) for class {c.label} needs twisted denominator data")


# -- verifications ----------------------------------------------------------------

def through(s: QSeries, bound) -> QSeries:
    """Restrict to exponents <= bound (requires truncation above bound)."""
    bound = Fraction(bound)
    if not s.truncation > bound:
        raise ValueError(f"series is only known below {s.truncation}")
    step = Fraction(1, 2 * s.denominator * bound.denominator)
    return s.truncate(min(s.truncation, bound + step))


@dataclass
class IdentityReport:
    identity: str
    bounds: dict
    residual: QSeries | BivariateSeries

    @property
    def passed(self) -> bool:
        return self.residual.is_zero()

    def residual_terms(self) -> list:
        if isinstance(self.residual, BivariateSeries):
            return [[a, str(e), str(c)] for a, e, c in self.residual.nonzero_terms()]
        return [[str(e), str(c)] for e, c in self.residual.terms()]

    def to_dict(self) -> dict:
        return {"identity": self.identity, "bounds": self.bounds,
                "residual_terms": self.residual_terms(), "pass": self.passed}


def denominator_lhs(p_bound: int, q_bound: int) -> BivariateSeries:
    """J(p) - J(q) as a series in p with q-series coefficients."""
    T = Fraction(q_bound + 1)
    rows = {-1: QSeries.constant(1).truncate(T)}
    for a in range(1, p_bound + 1):
        rows[a] = QSeries.constant(j_coefficient(a)).truncate(T)
    rows[0] = (-j_series(T)).truncate(T)
    return BivariateSeries(rows, p_bound)


def verify_denominator_identity(label: str = "1A", p_bound: int = 5, q_bound: int = 5,
                                exponent: Callable | None = None) -> IdentityReport:
    """Residual of J(p) - J(q) - p^-1 prod (1 - p^m q^n)^c(mn) up to the bounds."""
    if get_class(label).label != "1A":
        raise UncertifiedRegionError("the full denominator identity is only certified for 1A")
    exp = exponent or (lambda m, n: monster_multiplicity(m, int(n)))
    rhs = product_side(exp, p_bound, q_bound)
    residual = denominator_lhs(p_bound, q_bound) - rhs
    return IdentityReport("J(p) - J(q) = p^-1 prod (1 - p^m q^n)^c(mn)",
                          {"p": p_bound, "q": q_bound}, residual)


def verify_fricke_p0_consistency(label: str = "2A", q_bound=3,
                                 exponent: Callable | None = None) -> IdentityReport:
    """Check that the p^0 row of the product equals -f(q^(1/N))."""
    c = get_class(label)
    if not c.fricke:
        raise UncertifiedRegionError(f"{c.label} is not Fricke")
    exp = exponent or (lambda m, n: root_multiplicity(c.label, m, n))
    rhs = product_side(exp, 0, q_bound, level=c.level)
    f = through(fricke_transform(c.label, Fraction(q_bound) + 1), q_bound)
    residual = through(rhs[0] + f, q_bound)
    return IdentityReport("p^0 row of the Fricke denominator product equals -f(q^(1/N))",
                          {"p": 0, "q": str(Fraction(q_bound))}, residual)


def verify_theta_identity(q_bound=5, theta: Callable | None = None) -> IdentityReport:
    """Residual of T_2B(-1/tau) - (2 eta / theta_4)^12 for exponents <= q_bound."""
    T = Fraction(q_bound) + 1
    th = (theta or theta4_sum)(T + 6)
    rhs = (mul(eta(1, T + 6), invert(th)).scale(2)) ** 12
    residual = through(fricke_transform("2B", T) - rhs, q_bound)
    return IdentityReport("T_2B(-1/tau) = (2 eta(tau) / theta_4(tau))^12",
                          {"q": str(Fraction(q_bound))}, residual)


def verify_2b_inverse_identity(q_bound=5) -> IdentityReport:
    """Residual of T_2B(-1/tau) * T_2B(tau/2) - 2^12."""
    T = Fraction(q_bound) + 1
    prod = mul(fricke_transform("2B", T + 1), substitute_power(_t2b(2 * T + 3), HALF))
    residual = through(prod - 2 ** 12, q_bound)
    return IdentityReport("T_2B(-1/tau) T_2B(tau/2) = 2^12", {"q": str(Fraction(q_bound))}, residual)


def verify_2b_routes(q_bound=5) -> IdentityReport:
    """The eta-quotient and inversion forms of T_2B(-1/tau) agree."""
    T = Fraction(q_bound) + 1
    residual = through(fricke_transform_2b_eta(T) - fricke_transform_2b_inverse(T), q_bound)
    return IdentityReport("2^12 eta^24/eta(tau/2)^24 = 2^12 / T_2B(tau/2)",
                          {"q": str(Fraction(q_bound))}, residual)
