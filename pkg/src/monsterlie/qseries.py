"""Exact truncated Laurent series in fractional powers of q.

A :class:`QSeries` stores exponents as integer numerators over a common
denominator ``D`` together with a truncation order ``T``: coefficients are
certified only for exponents strictly below ``T``.  ``T`` may be ``math.inf``
for exact (finite) series such as constants or polynomials.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping

INF = math.inf

Number = int | Fraction


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"exact rational expected, got {type(x).__name__}")


def _coef(c) -> Number:
    # keep integral coefficients as int; Fraction arithmetic is much slower
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    raise TypeError(f"exact coefficient expected, got {type(c).__name__}")


def _trunc(t) -> Fraction | float:
    if t is None or t == INF:
        return INF
    return _frac(t)


def _below(num: int, den: int, t) -> bool:
    """True when num/den < t."""
    if t == INF:
        return True
    return num * t.denominator < t.numerator * den


class QSeries:
    """Immutable truncated Laurent series in ``q^(1/D)`` with exact coefficients."""

    __slots__ = ("_terms", "denominator", "truncation")

    def __init__(self, terms: Mapping | Iterable = (), truncation=INF):
        T = _trunc(truncation)
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Fraction, Number] = {}
        for e, c in items:
            e = _frac(e)
            c = _coef(c)
            if c == 0 or not (T == INF or e < T):
                continue
            acc[e] = _coef(acc.get(e, 0) + c)
        acc = {e: c for e, c in acc.items() if c != 0}
        D = 1
        for e in acc:
            D = math.lcm(D, e.denominator)
        self.denominator = D
        self.truncation = T
        self._terms = {int(e * D): c for e, c in sorted(acc.items())}

    @classmethod
    def _raw(cls, terms: dict[int, Number], D: int, T) -> "QSeries":
        # terms keyed by numerator over D; normalizes D and drops zeros
        s = object.__new__(cls)
        terms = {k: v for k, v in terms.items() if v != 0 and _below(k, D, T)}
        g = D
        for k in terms:
            g = math.gcd(g, k)
            if g == 1:
                break
        if g > 1:
            terms = {k // g: v for k, v in terms.items()}
            D //= g
        s._terms = dict(sorted(terms.items()))
        s.denominator = D
        s.truncation = T
        return s

    # -- construction helpers ------------------------------------------------

    @classmethod
    def monomial(cls, exponent=0, coefficient=1, truncation=INF) -> "QSeries":
        return cls({_frac(exponent): coefficient}, truncation)

    @classmethod
    def constant(cls, c) -> "QSeries":
        return cls({Fraction(0): c})

    # -- access ----------------------------------------------------------------

    def coefficient(self, exponent) -> Number:
        e = _frac(exponent)
        if not (self.truncation == INF or e < self.truncation):
            raise ValueError(f"exponent {e} is not below the truncation {self.truncation}")
        k = e * self.denominator
        if k.denominator != 1:
            return 0
        return self._terms.get(int(k), 0)

    __getitem__ = coefficient

    def terms(self) -> list[tuple[Fraction, Number]]:
        """Nonzero terms as ``(exponent, coefficient)`` pairs, ascending."""
        D = self.denominator
        return [(Fraction(k, D), c) for k, c in self._terms.items()]

    def exponents(self) -> list[Fraction]:
        return [e for e, _ in self.terms()]

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def valuation(self):
        """Lowest exponent carrying a nonzero coefficient (the truncation if none)."""
        if not self._terms:
            return self.truncation
        return Fraction(next(iter(self._terms)), self.denominator)

    def leading(self) -> tuple[Fraction, Number]:
        if not self._terms:
            raise ValueError("series has no terms below its truncation")
        k = next(iter(self._terms))
        return Fraction(k, self.denominator), self._terms[k]

    def is_zero(self) -> bool:
        return not self._terms

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self._terms.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return (self.truncation == other.truncation
                and self.denominator == other.denominator
                and self._terms == other._terms)

    def __hash__(self):
        return hash((self.truncation, self.denominator, tuple(self._terms.items())))

    def agrees_with(self, other: "QSeries", below=None) -> bool:
        """Coefficientwise equality below ``min`` of both truncations (and ``below``)."""
        diff = self - other
        if below is not None:
            diff = diff.truncate(below)
        return diff.is_zero()

    def __repr__(self):
        shown = " + ".join(f"{c}*q^{e}" for e, c in self.terms()[:6])
        more = " + ..." if len(self._terms) > 6 else ""
        return f"QSeries({shown or '0'}{more}, T={self.truncation})"

    # -- arithmetic ------------------------------------------------------------

    def _lift(self, D: int) -> dict[int, Number]:
        s = D // self.denominator
        if s == 1:
            return self._terms
        return {k * s: c for k, c in self._terms.items()}

    def __add__(self, other):
        if not isinstance(other, QSeries):
            if isinstance(other, (int, Fraction)):
                other = QSeries.constant(other)
            else:
                return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return QSeries._raw({k: -c for k, c in self._terms.items()}, self.denominator, self.truncation)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QSeries.constant(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        return add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        return mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / other)
        if isinstance(other, QSeries):
            return mul(self, invert(other))
        return NotImplemented

    def __pow__(self, e: int):
        return power(self, e)

    def scale(self, c) -> "QSeries":
        c = _coef(_frac(c) if not isinstance(c, int) else c)
        if c == 0:
            return QSeries._raw({}, 1, self.truncation)
        return QSeries._raw({k: _coef(v * c) for k, v in self._terms.items()},
                            self.denominator, self.truncation)

    def shift(self, s) -> "QSeries":
        """Multiply by ``q^s``."""
        s = _frac(s)
        D = math.lcm(self.denominator, s.denominator)
        off = int(s * D)
        T = self.truncation if self.truncation == INF else self.truncation + s
        return QSeries._raw({k + off: c for k, c in self._lift(D).items()}, D, T)

    def truncate(self, t) -> "QSeries":
        t = _trunc(t)
        T = min(self.truncation, t)
        return QSeries._raw(dict(self._terms), self.denominator, T)

    def substitute_power(self, r) -> "QSeries":
        return substitute_power(self, r)

    # -- serialization ---------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"#truncation\t{_fmt_trunc(self.truncation)}"]
        for e, c in self.terms():
            c = Fraction(c)
            lines.append(f"{e}\t{c.numerator}/{c.denominator}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "QSeries":
        T = INF
        terms = []
        for line in text.splitlines():
            if not line.strip():
                continue
            if line.startswith("#truncation"):
                T = _parse_trunc(line.split("\t", 1)[1].strip())
                continue
            if line.startswith("#"):
                continue
            e, c = line.split("\t")
            terms.append((Fraction(e), Fraction(c)))
        return cls(terms, T)

    def to_dict(self) -> dict:
        return {
            "denominator": self.denominator,
            "truncation": _fmt_trunc(self.truncation),
            "terms": [[str(e), f"{Fraction(c).numerator}/{Fraction(c).denominator}"]
                      for e, c in self.terms()],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "QSeries":
        s = cls([(Fraction(e), Fraction(c)) for e, c in data["terms"]],
                _parse_trunc(str(data["truncation"])))
        if s.denominator != int(data.get("denominator", s.denominator)):
            raise ValueError("denominator field does not match the normalized terms")
        return s

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _fmt_trunc(t) -> str:
    return "inf" if t == INF else str(t)


def _parse_trunc(s: str):
    return INF if s == "inf" else Fraction(s)


# -- ring operations ----------------------------------------------------------

def add(a: QSeries, b: QSeries) -> QSeries:
    D = math.lcm(a.denominator, b.denominator)
    T = min(a.truncation, b.truncation)
    out = dict(a._lift(D))
    for k, c in b._lift(D).items():
        out[k] = out.get(k, 0) + c
    return QSeries._raw(out, D, T)


def _add_trunc(x, y):
    if x == INF or y == INF:
        return INF
    return x + y


def mul(a: QSeries, b: QSeries) -> QSeries:
    """Cauchy product, certified up to ``min(val(a) + T_b, val(b) + T_a)``."""
    D = math.lcm(a.denominator, b.denominator)
    T = min(_add_trunc(a.valuation, b.truncation), _add_trunc(b.valuation, a.truncation))
    ta, tb = a._lift(D), b._lift(D)
    if len(ta) > len(tb):
        ta, tb = tb, ta
    bitems = list(tb.items())
    if T == INF:
        limit = None
    else:
        # exponents k/D < T  <=>  k < T*D
        limit = math.ceil(T * D)
    out: dict[int, Number] = {}
    for ka, ca in ta.items():
        for kb, cb in bitems:
            k = ka + kb
            if limit is not None and k >= limit:
                break
            out[k] = out.get(k, 0) + ca * cb
    return QSeries._raw({k: _coef(v) for k, v in out.items()}, D, T)


def invert(a: QSeries) -> QSeries:
    """Multiplicative inverse; certified up to ``T_a - 2 val(a)``."""
    if a.is_zero():
        raise ZeroDivisionError("cannot invert a series with no terms below its truncation")
    if a.truncation == INF:
        if len(a) == 1:
            (e, c), = a.terms()
            return QSeries({-e: Fraction(1) / c})
        raise ValueError("inverse of an exact polynomial is infinite; truncate it first")
    D = a.denominator
    v = next(iter(a._terms))
    T = a.truncation - 2 * Fraction(v, D)
    n = math.ceil(a.truncation * D) - v
    dense = [0] * n
    for k, c in a._terms.items():
        dense[k - v] = c
    a0 = dense[0]
    inv0 = a0 if a0 in (1, -1) else Fraction(1) / a0
    b = [0] * n
    b[0] = _coef(inv0)
    nz = [(i, c) for i, c in enumerate(dense) if c != 0 and i > 0]
    for m in range(1, n):
        s = 0
        for i, c in nz:
            if i > m:
                break
            s += c * b[m - i]
        b[m] = _coef(-s * inv0)
    return QSeries._raw({m - v: c for m, c in enumerate(b)}, D, T)


def power(a: QSeries, e: int) -> QSeries:
    if not isinstance(e, int):
        raise TypeError("integer exponent required")
    if e < 0:
        return power(invert(a), -e)
    result = QSeries.constant(1)
    base = a
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def substitute_power(a: QSeries, r) -> QSeries:
    """The series with ``q`` replaced by ``q^r`` (``tau -> r*tau``)."""
    r = _frac(r)
    if r <= 0:
        raise ValueError("substitution power must be positive")
    T = a.truncation if a.truncation == INF else a.truncation * r
    return QSeries([(e * r, c) for e, c in a.terms()], T)


# -- closed-form series ---------------------------------------------------------

def euler_product(n: int) -> list[int]:
    """Coefficients of prod_{k>=1} (1 - x^k) for x^0 .. x^(n-1), by direct multiplication."""
    p = [0] * n
    if n:
        p[0] = 1
    for k in range(1, n):
        for i in range(n - 1, k - 1, -1):
            p[i] -= p[i - k]
    return p


def eta_quotient(factors: Mapping, truncation) -> QSeries:
    """prod eta(a*tau)^b for ``factors = {a: b}``, exact below ``truncation``.

    Split as ``q^(sum a*b/24) * prod P(q^a)^b`` where ``P`` is the unit series
    prod (1 - x^n); unit factors keep truncation under powers and inverses.
    """
    T = _trunc(truncation)
    if T == INF:
        raise ValueError("eta quotients are infinite series; give a finite truncation")
    shift = sum((_frac(a) * b for a, b in factors.items()), Fraction(0)) / 24
    rel = T - shift
    unit = QSeries.constant(1)
    for a, b in factors.items():
        a = _frac(a)
        if a <= 0:
            raise ValueError("eta scale must be positive")
        if b == 0:
            continue
        n = max(math.ceil(rel / a), 1) if rel > 0 else 1
        p = euler_product(n)
        base = QSeries([(a * i, c) for i, c in enumerate(p)], a * n)
        unit = mul(unit, power(base, b))
    return unit.truncate(rel).shift(shift)


def eta(scale=1, truncation=10) -> QSeries:
    """Series of eta(scale*tau) = q^(scale/24) prod (1 - q^(scale*n))."""
    return eta_quotient({_frac(scale): 1}, truncation)


def sigma(n: int, k: int) -> int:
    return sum(d ** k + (n // d) ** k * (d * d != n)
               for d in range(1, math.isqrt(n) + 1) if n % d == 0)


def eisenstein_e4(truncation) -> QSeries:
    T = _frac(truncation)
    terms = {0: 1}
    for n in range(1, math.ceil(T)):
        terms[n] = 240 * sigma(n, 3)
    return QSeries(terms, T)


@lru_cache(maxsize=32)
def j_series(truncation=10) -> QSeries:
    """J(q) = E4^3/Delta - 744, exact for exponents below ``truncation``."""
    T = _frac(truncation)
    delta = eta_quotient({1: 24}, T + 2)
    j = mul(power(eisenstein_e4(T + 1), 3), invert(delta))
    return (j - 744).truncate(T)


_J_CACHE: list = [None]


def j_coefficient(n: int) -> int:
    """c(n), the coefficient of q^n in J; grows an internal table on demand."""
    if n < -1:
        return 0
    s = _J_CACHE[0]
    if s is None or s.truncation <= n:
        size = 32
        while size <= n:
            size *= 2
        s = j_series(size)
        _J_CACHE[0] = s
    return s.coefficient(n)


def theta4(truncation=10) -> QSeries:
    """theta_4 as the eta quotient eta(tau/2)^2 / eta(tau)."""
    return eta_quotient({Fraction(1, 2): 2, 1: -1}, truncation)


def theta4_sum(truncation=10) -> QSeries:
    """theta_4 as the signed sum over n of (-1)^n q^(n^2/2)."""
    T = _frac(truncation)
    terms: dict[Fraction, int] = {}
    n = 0
    while Fraction(n * n, 2) < T:
        e = Fraction(n * n, 2)
        terms[e] = terms.get(e, 0) + (-1) ** n * (1 if n == 0 else 2)
        n += 1
    return QSeries(terms, T)


def pentagonal_product(n: int) -> list[int]:
    """prod (1 - x^k) below x^n via Euler's pentagonal number theorem."""
    p = [0] * n
    k = 0
    while True:
        hit = False
        for g in ((k * (3 * k - 1)) // 2, (k * (3 * k + 1)) // 2) if k else (0,):
            if g < n:
                p[g] += (-1) ** k
                hit = True
        if not hit:
            break
        k += 1
    return p


# -- bivariate products -----------------------------------------------------------

class UncertifiedRegionError(ValueError):
    """Requested data lies outside the region where exact values are known."""


class BivariateSeries:
    """Laurent series in ``p`` whose coefficients are :class:`QSeries` in ``q``."""

    def __init__(self, coefficients: Mapping[int, QSeries], p_bound: int):
        self.p_bound = p_bound
        self.coefficients = {a: s for a, s in sorted(coefficients.items()) if a <= p_bound}

    def __getitem__(self, a: int) -> QSeries:
        return self.coefficients.get(a, QSeries())

    def __sub__(self, other: "BivariateSeries") -> "BivariateSeries":
        keys = set(self.coefficients) | set(other.coefficients)
        bound = min(self.p_bound, other.p_bound)
        return BivariateSeries({a: self[a] - other[a] for a in keys}, bound)

    def nonzero_terms(self) -> list[tuple[int, Fraction, Number]]:
        return [(a, e, c) for a, s in self.coefficients.items() for e, c in s.terms()]

    def is_zero(self) -> bool:
        return not self.nonzero_terms()

    def __repr__(self):
        return f"BivariateSeries({len(self.nonzero_terms())} terms, p<={self.p_bound})"


def binomial(c: int, r: int) -> int:
    """Generalized binomial coefficient C(c, r) for any integer c."""
    num = 1
    for i in range(r):
        num *= c - i
    return num // math.factorial(r)


def product_side(exponent: Callable[[int, Fraction], int], p_bound: int, q_bound,
                 *, level: int = 1, q_floor=None) -> BivariateSeries:
    """Expand ``p^-1 prod_{m>0, n in Z/level} (1 - p^m q^n)^exponent(m, n)``.

    The result is exact for p-degree <= ``p_bound`` and q-degree <= ``q_bound``.
    ``exponent`` must vanish for ``n < q_floor`` (default ``-1/level``); it may
    raise :class:`UncertifiedRegionError` for arguments it cannot vouch for.
    """
    qb = _frac(q_bound)
    floor = Fraction(-1, level) if q_floor is None else _frac(q_floor)
    if (floor * level).denominator != 1 or (qb * level).denominator != 1:
        raise ValueError("q bounds must lie on the 1/level grid")
    M = p_bound + 1
    lo = int(floor * level)
    hi = int(qb * level)
    drop = max(0, -lo)
    n_max = hi + (M - 1) * drop
    poly: dict[tuple[int, int], int] = {(0, 0): 1}
    for m in range(1, M + 1):
        for nn in range(lo, n_max + 1):
            c = exponent(m, Fraction(nn, level))
            if c == 0:
                continue
            factor = [((m * r, nn * r), (-1) ** r * binomial(c, r)) for r in range(1, M // m + 1)]
            new = dict(poly)
            for (a, b), v in poly.items():
                for (da, db), f in factor:
                    a2 = a + da
                    if a2 > M:
                        break
                    b2 = b + db
                    if b2 > hi + (M - a2) * drop or f == 0:
                        continue
                    new[(a2, b2)] = new.get((a2, b2), 0) + v * f
            poly = new
    rows: dict[int, dict] = {}
    for (a, b), v in poly.items():
        if v and b <= hi:
            rows.setdefault(a - 1, {})[Fraction(b, level)] = v
    T = qb + Fraction(1, level)
    return BivariateSeries({a: QSeries(t, T) for a, t in rows.items()}, p_bound)
