"""Element arithmetic in the Monster Lie algebra and the Fricke algebras m_g.

Every element is a combination of the basis symbols

* ``h1``, ``h2`` (Cartan subalgebra), ``e-1``, ``f-1`` (the real root vectors),
* ``("+", w)`` for a Lyndon word ``w`` over the letters ``e_{l,jk}`` (a basis of u+),
* ``("-", w)`` for the mirrored basis of u- over ``f_{l,jk}``.

Brackets follow the decomposition ``u- + gl2 + u+``.  Inside u+ and u- the
free Lie bracket is used; ``h1``, ``h2``, ``e-1``, ``f-1`` act on u+ and u-
as derivations fixed by their values on letters; brackets between u+ and u-
are reduced by the Jacobi identity down to the relations on Chevalley
generators.  Degrees are integer pairs ``(m, n)`` in which ``e_{jk}`` has
degree ``(1, j)`` and ``e-1`` has degree ``(1, -1)``; on a term of degree
``(m, n)``, ``ad h1`` acts by ``m`` and ``ad h2`` by ``n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .cartan import BlockIndex, InvalidIndexError, block_size
from .freelie import Gen, apply_derivation, format_word, lyndon_bracket, lyndon_words, standard_factorization
from .moonshine import get_class

H1, H2, E, F = "h1", "h2", "e-1", "f-1"
_GL2_ORDER = {H1: 0, H2: 1, E: 2, F: 3}


class WindowError(ValueError):
    pass


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def key_degree(key) -> tuple[int, int]:
    if key in (H1, H2):
        return (0, 0)
    if key == E:
        return (1, -1)
    if key == F:
        return (-1, 1)
    if isinstance(key, tuple) and key[0] in "+-":
        m = sum(1 + g.l for g in key[1])
        n = sum(g.j - g.l for g in key[1])
        return (m, n) if key[0] == "+" else (-m, -n)
    raise KeyError(f"not a basis symbol: {key!r}")


def _sort_key(key):
    if key in _GL2_ORDER:
        return (0, _GL2_ORDER[key])
    if isinstance(key, tuple) and key[0] in "+-":
        return (1 if key[0] == "+" else 2, len(key[1]), key[1])
    return (3, str(key))


def _letter_text(sign: str):
    name = "e" if sign == "+" else "f"
    return lambda g: f"{name}({g.l};{g.j},{g.k})"


def key_text(key) -> str:
    if key in _GL2_ORDER:
        return {H1: "h1", H2: "h2", E: "e(-1)", F: "f(-1)"}[key]
    if isinstance(key, tuple) and key[0] in "+-":
        return format_word(key[1], _letter_text(key[0]))
    return str(key)


def _coef_text(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class AlgebraElement:
    """Immutable exact linear combination of basis symbols."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | Iterable = ()):
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for k, c in items:
            v = acc.get(k, 0) + c
            acc[k] = v
        self.terms = {k: _norm(c) for k, c in sorted(acc.items(), key=lambda kv: _sort_key(kv[0])) if c != 0}

    @classmethod
    def basis(cls, key, c=1) -> "AlgebraElement":
        return cls({key: c})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return AlgebraElement(out)

    def __neg__(self):
        return AlgebraElement({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, c):
        if not isinstance(c, (int, Fraction)):
            return NotImplemented
        return AlgebraElement({k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (Fraction(1) / Fraction(c))

    def degrees(self) -> set:
        return {key_degree(k) for k in self.terms}

    @property
    def degree(self) -> tuple[int, int]:
        d = self.degrees()
        if len(d) != 1:
            raise ValueError("element is not homogeneous" if d else "zero element has no degree")
        return next(iter(d))

    def components(self) -> dict:
        out: dict = {}
        for k, c in self.terms.items():
            out.setdefault(key_degree(k), {})[k] = c
        return {d: AlgebraElement(t) for d, t in out.items()}

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for n, (k, c) in enumerate(self.terms.items()):
            sym = key_text(k)
            neg = c < 0
            mag = -c if neg else c
            body = sym if mag == 1 else f"{_coef_text(mag)}*{sym}"
            if n == 0:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"AlgebraElement({self})"


ZERO = AlgebraElement()


def _check_letter(label: str, g: Gen):
    if g.j < 1:
        raise InvalidIndexError(f"generator block j={g.j} must be positive")
    if not 0 <= g.l <= g.j - 1:
        raise InvalidIndexError(f"l={g.l} must satisfy 0 <= l <= j-1 = {g.j - 1}")
    if not 1 <= g.k <= block_size(label, g.j):
        raise InvalidIndexError(f"k={g.k} outside block j={g.j}")


# letter actions of the gl2 part on u+ (sign "+") and u- (sign "-")

def _raise(g: Gen) -> dict:
    return {(Gen(g.j, g.k, g.l + 1),): 1} if g.l + 1 < g.j else {}


def _lower(g: Gen) -> dict:
    return {(Gen(g.j, g.k, g.l - 1),): g.l * (g.j - g.l)} if g.l > 0 else {}


@dataclass
class TripleReport:
    index: BlockIndex
    kind: str
    a_ii: int
    residuals: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(r.is_zero() for r in self.residuals.values())

    def to_dict(self) -> dict:
        return {"index": str(self.index), "kind": self.kind, "a_ii": self.a_ii,
                "residuals": {k: str(v) for k, v in self.residuals.items()}, "pass": self.ok}


class MonsterAlgebra:
    """Bracket engine for m (class 1A) or a Fricke algebra m_g, inside a degree window."""

    def __init__(self, label: str = "1A", window: tuple[int, int] = (4, 4)):
        c = get_class(label)
        if not c.fricke:
            raise ValueError(f"{c.label} is not Fricke; element arithmetic needs the Fricke presentation")
        self.label = c.label
        self.window = tuple(window)
        self._memo: dict = {}
        self.verify_lowering_rule(max(2, self.window[0] + self.window[1]))

    # -- elements ------------------------------------------------------------

    h1 = AlgebraElement.basis(H1)
    h2 = AlgebraElement.basis(H2)
    e_m1 = AlgebraElement.basis(E)
    f_m1 = AlgebraElement.basis(F)

    def e(self, l: int, j: int, k: int) -> AlgebraElement:
        """``e_{l,jk} = (ad e_-1)^l e_jk``."""
        g = Gen(j, k, l)
        _check_letter(self.label, g)
        return AlgebraElement.basis(("+", (g,)))

    def f(self, l: int, j: int, k: int) -> AlgebraElement:
        g = Gen(j, k, l)
        _check_letter(self.label, g)
        return AlgebraElement.basis(("-", (g,)))

    def cartan_image(self, i) -> AlgebraElement:
        """Image of ``h_i`` modulo the center, in terms of ``h1``, ``h2``."""
        i = BlockIndex(*i)
        if i.j == -1:
            return self.h1 - self.h2
        return self.h1 * (-i.j) - self.h2

    def in_window(self, x: AlgebraElement) -> bool:
        M, N = self.window
        return all(abs(m) <= M and abs(n) <= N for m, n in x.degrees())

    def check_window(self, x: AlgebraElement):
        if not self.in_window(x):
            raise WindowError(f"degrees {sorted(x.degrees())} exceed the window {self.window}")
        for k in x.terms:
            if isinstance(k, tuple) and k[0] in "+-":
                for g in k[1]:
                    _check_letter(self.label, g)

    # -- bracket --------------------------------------------------------------

    def bracket(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        self.check_window(x)
        self.check_window(y)
        return self._bracket(x.terms, y.terms)

    def _bracket(self, x: Mapping, y: Mapping) -> AlgebraElement:
        out: dict = {}
        for a, ca in x.items():
            for b, cb in y.items():
                for k, v in self._basis_bracket(a, b).items():
                    out[k] = out.get(k, 0) + ca * cb * v
        return AlgebraElement(out)

    def _basis_bracket(self, a, b) -> dict:
        if a == b:
            return {}
        key = (a, b)
        hit = self._memo.get(key)
        if hit is None:
            hit = self._compute(a, b)
            self._memo[key] = hit
        return hit

    def _neg(self, d: Mapping) -> dict:
        return {k: -v for k, v in d.items()}

    def _compute(self, a, b) -> dict:
        if a in (H1, H2):
            if b in (H1, H2):
                return {}
            m, n = key_degree(b)
            s = m if a == H1 else n
            return {b: s} if s else {}
        if b in (H1, H2):
            return self._neg(self._compute(b, a))
        if a == E:
            if b == F:
                return {H1: 1, H2: -1}
            sign, word = b
            return self._derive(sign, word, _raise if sign == "+" else _lower)
        if a == F:
            if b == E:
                return {H1: -1, H2: 1}
            sign, word = b
            return self._derive(sign, word, _lower if sign == "+" else _raise)
        if b in (E, F):
            return self._neg(self._compute(b, a))
        (sa, u), (sb, v) = a, b
        if sa == sb:
            return {(sa, w): c for w, c in lyndon_bracket(u, v).items()}
        if sa == "-":
            return self._neg(self._basis_bracket(b, a))
        return self._cross(u, v)

    def _derive(self, sign: str, word: tuple, rule) -> dict:
        return {(sign, w): c for w, c in apply_derivation(word, rule).items()}

    def _cross(self, u: tuple, v: tuple) -> dict:
        """``[P(u), Q(v)]`` with ``P(u)`` in u+ and ``Q(v)`` in u-."""
        X = {("+", u): 1}
        Y = {("-", v): 1}
        if len(u) > 1:
            u1, u2 = standard_factorization(u)
            X1, X2 = {("+", u1): 1}, {("+", u2): 1}
            t1 = self._bracket(X1, self._bracket(X2, Y).terms)
            t2 = self._bracket(X2, self._bracket(X1, Y).terms)
            return (t1 - t2).terms
        if len(v) > 1:
            v1, v2 = standard_factorization(v)
            Y1, Y2 = {("-", v1): 1}, {("-", v2): 1}
            t1 = self._bracket(self._bracket(X, Y1).terms, Y2)
            t2 = self._bracket(Y1, self._bracket(X, Y2).terms)
            return (t1 + t2).terms
        g, h = u[0], v[0]
        if g.l == 0 and h.l == 0:
            if (g.j, g.k) != (h.j, h.k):
                return {}
            return {H1: -g.j, H2: -1}
        if g.l > 0:
            prev = {("+", (Gen(g.j, g.k, g.l - 1),)): 1}
            t1 = self._bracket({E: 1}, self._bracket(prev, Y).terms)
            t2 = self._bracket(prev, self._bracket({E: 1}, Y).terms)
            return (t1 - t2).terms
        # g.l == 0 < h.l and [e_jk, f-1] = 0
        prev = {("-", (Gen(h.j, h.k, h.l - 1),)): 1}
        return self._bracket({F: 1}, self._bracket(X, prev).terms).terms

    def verify_lowering_rule(self, j_max: int):
        """Re-derive ``[f-1, e_{l,jk}] = l(j-l) e_{l-1,jk}`` from the Jacobi identity."""
        for j in range(1, j_max + 1):
            for l in range(j):
                if _lowering_by_recursion(l, j) != l * (j - l):
                    raise AssertionError(f"lowering rule fails at l={l}, j={j}")

    # -- derived operations -----------------------------------------------------

    def adjoint_power(self, a: AlgebraElement, n: int, x: AlgebraElement) -> AlgebraElement:
        for _ in range(n):
            x = self.bracket(a, x)
        return x

    def weight_string(self, j: int, k: int = 1) -> list[tuple[AlgebraElement, Fraction]]:
        """``e_{0,jk}, ..., e_{j-1,jk}`` with their ``ad(h1 - h2)`` eigenvalues."""
        out = []
        x = self.e(0, j, k)
        hh = self.h1 - self.h2
        for _ in range(j):
            y = self.bracket(hh, x)
            (key, c), = x.terms.items()
            out.append((x, Fraction(y.terms.get(key, 0), c)))
            x = self.bracket(self.e_m1, x)
        if not x.is_zero():
            raise AssertionError("weight string did not terminate")
        return out

    def basis_at(self, degree: tuple[int, int], k_max: int = 2) -> list[AlgebraElement]:
        """Basis of the degree-``degree`` root space with block labels ``k <= k_max``."""
        m, n = degree
        if (m, n) == (0, 0):
            return [self.h1, self.h2]
        if (m, n) == (1, -1):
            return [self.e_m1]
        if (m, n) == (-1, 1):
            return [self.f_m1]
        if m > 0 and n > 0:
            sign, d = "+", (m, n)
        elif m < 0 and n < 0:
            sign, d = "-", (-m, -n)
        else:
            return []
        letters = {}
        for j in range(1, d[0] + d[1]):
            for l in range(j):
                deg = (1 + l, j - l)
                if deg[0] <= d[0] and deg[1] <= d[1]:
                    for k in range(1, min(k_max, block_size(self.label, j)) + 1):
                        letters[Gen(j, k, l)] = deg
        return [AlgebraElement.basis((sign, w)) for w in lyndon_words(letters, d)]


def _lowering_by_recursion(l: int, j: int) -> int:
    # [f-1, e_l] = [[f-1, e-1], e_{l-1}] + [e-1, [f-1, e_{l-1}]] with [f-1, e_0] = 0;
    # the first term is -(ad(h1 - h2)) e_{l-1} = -((l) - (j - l + 1)) e_{l-1}
    if l == 0:
        return 0
    return -(l - (j - l + 1)) + _lowering_by_recursion(l - 1, j)


def cartan_involution(x: AlgebraElement) -> AlgebraElement:
    out = {}
    for k, c in x.terms.items():
        if k in (H1, H2):
            out[k] = -c
        elif k == E:
            out[F] = c
        elif k == F:
            out[E] = c
        else:
            out[("-" if k[0] == "+" else "+", k[1])] = c
    return AlgebraElement(out)


def degree_derivation(i: int, x: AlgebraElement) -> AlgebraElement:
    """Scale each term by coordinate ``i`` (1 or 2) of its degree."""
    if i not in (1, 2):
        raise ValueError("lattice direction must be 1 or 2")
    return AlgebraElement({k: c * key_degree(k)[i - 1] for k, c in x.terms.items()})


def center_image(j: int, k: int, p: int, q: int, label: str = "1A") -> AlgebraElement:
    """Image of ``(p-j) h_{-1,1} - (p+1) h_jk + (j+1) h_pq`` modulo the center."""
    for a, b in ((j, k), (p, q)):
        if a < 1 or not 1 <= b <= block_size(label, a):
            raise InvalidIndexError(f"invalid index ({a},{b})")
    h = lambda a: AlgebraElement({H1: -a, H2: -1})
    return (AlgebraElement({H1: 1, H2: -1}) * (p - j)) - h(j) * (p + 1) + h(p) * (j + 1)


# -- triples ------------------------------------------------------------------------

def _rank_one_bracket(a_ii: int):
    # the Lie algebra on e, f, h with [h,e] = a e, [h,f] = -a f, [e,f] = h
    table = {("h", "e"): {"e": a_ii}, ("h", "f"): {"f": -a_ii}, ("e", "f"): {"h": 1}}

    def br(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        out: dict = {}
        for p, cp in x.terms.items():
            for q, cq in y.terms.items():
                if (p, q) in table:
                    res, s = table[(p, q)], 1
                elif (q, p) in table:
                    res, s = table[(q, p)], -1
                else:
                    continue
                for r, v in res.items():
                    out[r] = out.get(r, 0) + s * cp * cq * v
        return AlgebraElement(out)

    return br


def check_triple(index, a_ii: int | None = None, *, algebra: MonsterAlgebra | None = None,
                 kind: str | None = None) -> TripleReport:
    """Verify the sl2 relations (``a_ii != 0``) or Heisenberg relations (``a_ii = 0``).

    For an index of the algebra with its own diagonal entry, the check runs in
    the algebra itself.  Any other ``(index, a_ii)`` is checked in the rank-one
    algebra generated by ``e_i, f_i, h_i`` with that diagonal entry.  ``kind``
    forces which family of relations is tested.
    """
    i = BlockIndex(*index)
    actual = None
    if algebra is not None and (i.j == -1 or i.j >= 1):
        actual = 2 if i.j == -1 else -2 * i.j
    if a_ii is None:
        if actual is None:
            raise ValueError("a_ii is required for indices outside the algebra")
        a_ii = actual
    if actual is not None and a_ii == actual:
        if i.j == -1:
            e, f = algebra.e_m1, algebra.f_m1
        else:
            e, f = algebra.e(0, i.j, i.k), algebra.f(0, i.j, i.k)
        h = algebra.cartan_image(i)
        br = algebra.bracket
    else:
        e, f, h = (AlgebraElement.basis(s) for s in ("e", "f", "h"))
        br = _rank_one_bracket(a_ii)
    kind = kind or ("sl2" if a_ii != 0 else "heisenberg")
    res = {}
    if kind == "sl2":
        if a_ii == 0:
            raise ValueError("sl2 normalization needs a nonzero diagonal entry")
        s = Fraction(2, a_ii)
        eh, hh = e * s, h * s
        res["[h^,e^] - 2e^"] = br(hh, eh) - eh * 2
        res["[h^,f] + 2f"] = br(hh, f) + f * 2
        res["[e^,f] - h^"] = br(eh, f) - hh
    elif kind == "heisenberg":
        res["[e,f] - h"] = br(e, f) - h
        res["[e,h]"] = br(e, h)
        res["[f,h]"] = br(f, h)
    else:
        raise ValueError(f"unknown triple kind {kind!r}")
    return TripleReport(i, kind, a_ii, res)


# -- presentation relations ------------------------------------------------------------

@dataclass
class Relation:
    name: str
    lhs: object  # callable returning an AlgebraElement
    rhs: AlgebraElement

    def residual(self) -> AlgebraElement:
        return self.lhs() - self.rhs


def presentation_relations(alg: MonsterAlgebra, j_max: int = 4, k_max: int = 3) -> list[Relation]:
    """The defining relations of m (or m_g) on all generators with ``j <= j_max``, ``k <= k_max``."""
    b = alg.bracket
    h1, h2, e, f = alg.h1, alg.h2, alg.e_m1, alg.f_m1
    idx = [(j, k) for j in range(1, j_max + 1) for k in range(1, min(k_max, block_size(alg.label, j)) + 1)]
    rels = [
        Relation("commuting [h1,h2]", lambda: b(h1, h2), ZERO),
        Relation("e-weight [h1,e-1]", lambda: b(h1, e), e),
        Relation("e-weight [h2,e-1]", lambda: b(h2, e), -e),
        Relation("f-weight [h1,f-1]", lambda: b(h1, f), -f),
        Relation("f-weight [h2,f-1]", lambda: b(h2, f), f),
        Relation("e-f [e-1,f-1]", lambda: b(e, f), h1 - h2),
    ]
    for j, k in idx:
        ejk, fjk = alg.e(0, j, k), alg.f(0, j, k)
        tag = f"{j},{k}"
        rels += [
            Relation(f"e-weight [h1,e{tag}]", lambda x=ejk: b(h1, x), ejk),
            Relation(f"e-weight [h2,e{tag}]", lambda x=ejk: b(h2, x), ejk * j),
            Relation(f"f-weight [h1,f{tag}]", lambda x=fjk: b(h1, x), -fjk),
            Relation(f"f-weight [h2,f{tag}]", lambda x=fjk: b(h2, x), fjk * (-j)),
            Relation(f"e-f [e-1,f{tag}]", lambda x=fjk: b(e, x), ZERO),
            Relation(f"e-f [e{tag},f-1]", lambda x=ejk: b(x, f), ZERO),
            Relation(f"nilpotent (ad e-1)^{j} e{tag}", lambda x=ejk, n=j: alg.adjoint_power(e, n, x), ZERO),
            Relation(f"nilpotent (ad f-1)^{j} f{tag}", lambda x=fjk, n=j: alg.adjoint_power(f, n, x), ZERO),
        ]
        for p, q in idx:
            rhs = (h1 * j + h2) * -1 if (j, k) == (p, q) else ZERO
            rels.append(Relation(f"e-f [e{tag},f{p},{q}]",
                                 lambda x=ejk, y=alg.f(0, p, q): b(x, y), rhs))
    return rels


def relation_residuals(relations: Iterable[Relation]) -> dict[str, AlgebraElement]:
    """Nonzero residuals only; an empty result means every relation holds."""
    out = {}
    for r in relations:
        res = r.residual()
        if not res.is_zero():
            out[r.name] = res
    return out


# -- random homogeneous elements --------------------------------------------------

def random_homogeneous(alg: MonsterAlgebra, degree, rng, k_max: int = 2) -> AlgebraElement | None:
    basis = alg.basis_at(degree, k_max)
    if not basis:
        return None
    x = ZERO
    for b in rng.sample(basis, min(3, len(basis))):
        x = x + b * rng.choice([-3, -2, -1, 1, 2, 3, Fraction(1, 2)])
    return x if x else basis[0]


def random_triples(alg: MonsterAlgebra, count: int, rng, k_max: int = 2) -> list[tuple]:
    """Homogeneous triples whose pairwise and total degrees stay inside the window."""
    M, N = alg.window
    degs = [(m, n) for m in range(-M, M + 1) for n in range(-N, N + 1) if alg.basis_at((m, n), k_max)]
    inside = lambda d: abs(d[0]) <= M and abs(d[1]) <= N
    add = lambda *ds: tuple(map(sum, zip(*ds)))
    out = []
    while len(out) < count:
        d = [rng.choice(degs) for _ in range(3)]
        if all(inside(add(*p)) for p in ((d[0], d[1]), (d[1], d[2]), (d[0], d[2]), tuple(d))):
            out.append(tuple(random_homogeneous(alg, x, rng, k_max) for x in d))
    return out


def jacobi_residual(alg: MonsterAlgebra, x, y, z) -> AlgebraElement:
    b = alg.bracket
    return b(x, b(y, z)) + b(y, b(z, x)) + b(z, b(x, y))


def jacobi_failures(alg: MonsterAlgebra, trials: int, rng) -> list[tuple]:
    """``(x, y, z, residual)`` for every random triple violating the Jacobi identity."""
    out = []
    for x, y, z in random_triples(alg, trials, rng):
        r = jacobi_residual(alg, x, y, z)
        if not r.is_zero():
            out.append((x, y, z, r))
    return out
