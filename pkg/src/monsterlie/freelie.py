"""Free Lie algebras on graded generator sets.

Elements of a free Lie algebra are handled in two pictures:

* Lie polynomials inside the free associative algebra (``dict`` word -> coefficient);
* combinations of Lyndon words, each standing for its standard bracketing.

Converting associative polynomials back to the Lyndon basis uses the fact
that the standard bracketing of a Lyndon word ``w`` expands to ``w`` plus
lexicographically larger words, so the smallest word of a Lie polynomial is
always Lyndon and can be peeled off.

Graded dimensions never enumerate letters: generator multiplicities enter
the product identity ``prod (1 - z^b)^dim(b) = 1 - sum mult(g) z^g`` as
integers, which is what makes blocks of size 196884 tractable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Hashable, Iterable, Mapping, NamedTuple, Sequence

from .qseries import binomial


class Gen(NamedTuple):
    """Letter ``e_{l,jk} = (ad e_-1)^l e_jk``; sorts by ``(j, k, l)``."""

    j: int
    k: int
    l: int

    def degree(self) -> tuple[int, int]:
        return (1 + self.l, self.j - self.l)

    def __str__(self):
        return f"({self.l};{self.j},{self.k})"


class Bracket(NamedTuple):
    left: object
    right: object


class CapExceeded(ValueError):
    def __init__(self, count: int, cap: int):
        super().__init__(f"basis has {count} elements, more than the cap {cap}")
        self.count = count
        self.cap = cap


# -- Lyndon words -------------------------------------------------------------

def is_lyndon(word: Sequence) -> bool:
    """Strictly smaller than each of its proper nonempty suffixes."""
    n = len(word)
    if n == 0:
        return False
    w = tuple(word)
    return all(w < w[i:] for i in range(1, n))


def standard_factorization(word: tuple) -> tuple[tuple, tuple]:
    """Split a Lyndon word as ``u v`` with ``v`` its longest proper Lyndon suffix."""
    for i in range(1, len(word)):
        if is_lyndon(word[i:]):
            return word[:i], word[i:]
    raise ValueError(f"{word!r} has no standard factorization")


@lru_cache(maxsize=None)
def standard_bracket(word: tuple):
    if len(word) == 1:
        return word[0]
    u, v = standard_factorization(word)
    return Bracket(standard_bracket(u), standard_bracket(v))


def leaves(tree) -> tuple:
    if isinstance(tree, Bracket):
        return leaves(tree.left) + leaves(tree.right)
    return (tree,)


def format_tree(tree, letter: Callable = str) -> str:
    if isinstance(tree, Bracket):
        return f"[{format_tree(tree.left, letter)},{format_tree(tree.right, letter)}]"
    return letter(tree)


def format_word(word: tuple, letter: Callable = str) -> str:
    return format_tree(standard_bracket(word), letter)


# -- associative picture ------------------------------------------------------

def _add_into(acc: dict, poly: Mapping, scale=1):
    for w, c in poly.items():
        v = acc.get(w, 0) + scale * c
        if v:
            acc[w] = v
        else:
            acc.pop(w, None)


def commutator(a: Mapping, b: Mapping) -> dict:
    out: dict = {}
    for u, cu in a.items():
        for v, cv in b.items():
            if u == v:
                continue
            c = cu * cv
            _add_into(out, {u + v: c})
            _add_into(out, {v + u: -c})
    return out


def expand(tree) -> dict:
    """Associative expansion of a bracket tree."""
    if isinstance(tree, Bracket):
        return commutator(expand(tree.left), expand(tree.right))
    return {(tree,): 1}


@lru_cache(maxsize=None)
def _expand_lyndon(word: tuple) -> tuple:
    return tuple(expand(standard_bracket(word)).items())


def expand_lyndon(word: tuple) -> dict:
    return dict(_expand_lyndon(word))


def to_lyndon(poly: Mapping) -> dict:
    """Rewrite a Lie polynomial (given associatively) in the Lyndon basis."""
    p = dict(poly)
    out: dict = {}
    while p:
        w = min(p, key=lambda x: (len(x), x))
        c = p[w]
        if not is_lyndon(w):
            raise ValueError(f"not a Lie polynomial: leading word {w!r} is not Lyndon")
        out[w] = c
        _add_into(p, dict(_expand_lyndon(w)), -c)
    return out


def bracket_normalize(x) -> dict:
    """Express a bracket tree, or a ``{tree: coefficient}`` combination, in the Lyndon basis.

    Letters compare with Python ordering; wrap them if another order is wanted.
    """
    if not isinstance(x, Mapping):
        x = {x: 1}
    poly: dict = {}
    for tree, c in x.items():
        if c:
            _add_into(poly, expand(tree), c)
    return to_lyndon(poly)


@lru_cache(maxsize=None)
def _lyndon_bracket(u: tuple, v: tuple) -> tuple:
    if u == v:
        return ()
    return tuple(to_lyndon(commutator(expand_lyndon(u), expand_lyndon(v))).items())


def lyndon_bracket(u: tuple, v: tuple) -> dict:
    """``[P(u), P(v)]`` for Lyndon words ``u``, ``v``, in the Lyndon basis."""
    return dict(_lyndon_bracket(u, v))


def apply_derivation(word: tuple, rule: Callable[[object], Mapping]) -> dict:
    """Apply the derivation extending ``letter -> {word: coef}`` to ``P(word)``.

    The result is returned in the Lyndon basis; ``rule`` must send letters to
    Lie polynomials (in practice single letters or zero).
    """
    out: dict = {}
    for w, c in _expand_lyndon(word):
        for i, a in enumerate(w):
            for r, cr in rule(a).items():
                _add_into(out, {w[:i] + r + w[i + 1:]: c * cr})
    return to_lyndon(out)


# -- generator sets ---------------------------------------------------------------

class FrickeLabel(NamedTuple):
    l: int
    j: int


@dataclass(frozen=True)
class GeneratorFamily:
    degree: tuple[int, ...]
    multiplicity: int
    label: Hashable

    def letter(self, k: int):
        if isinstance(self.label, FrickeLabel):
            return Gen(self.label.j, k, self.label.l)
        return (self.label, k)


@dataclass(frozen=True)
class GeneratorSet:
    """Weighted generators: families of ``multiplicity`` letters sharing a degree."""

    families: tuple[GeneratorFamily, ...]

    def __post_init__(self):
        signs = set()
        for f in self.families:
            if f.multiplicity < 1:
                raise ValueError(f"multiplicity of {f.label!r} must be positive")
            if not any(f.degree):
                raise ValueError("generators of degree zero are not allowed")
            if all(x >= 0 for x in f.degree):
                signs.add(1)
            elif all(x <= 0 for x in f.degree):
                signs.add(-1)
            else:
                raise ValueError(f"degree {f.degree} is not in a closed quadrant")
        if len(signs) > 1:
            raise ValueError("generator degrees must all lie in one half")
        dims = {len(f.degree) for f in self.families}
        if len(dims) > 1:
            raise ValueError("mixed degree dimensions")

    @classmethod
    def of(cls, items: Iterable) -> "GeneratorSet":
        """Build from ``(degree, multiplicity, label)`` triples."""
        return cls(tuple(GeneratorFamily(tuple(d), int(m), lab) for d, m, lab in items))

    @property
    def sign(self) -> int:
        for f in self.families:
            return 1 if all(x >= 0 for x in f.degree) else -1
        return 1

    def restrict(self, max_multiplicity: int) -> "GeneratorSet":
        return GeneratorSet(tuple(
            GeneratorFamily(f.degree, min(f.multiplicity, max_multiplicity), f.label)
            for f in self.families))

    def letters(self) -> dict:
        """Letter -> degree, for every letter (use on small or restricted sets)."""
        return {f.letter(k): f.degree for f in self.families
                for k in range(1, f.multiplicity + 1)}


def product_exponents(target: Mapping[tuple, int], box: tuple) -> dict[tuple, int]:
    """Solve ``prod_b (1 - z^b)^L(b) = target`` for ``0 <= b <= box``, ``b != 0``.

    ``target`` maps nonnegative degree tuples to integers and has constant
    term 1.  Degrees are processed by total degree, then lexicographically;
    at each step the coefficient of ``z^b`` in the partial product fixes ``L(b)``.
    """
    zero = tuple(0 for _ in box)
    if target.get(zero, 0) != 1:
        raise ValueError("target must have constant term 1")
    degrees = sorted((b for b in itertools.product(*(range(n + 1) for n in box)) if b != zero),
                     key=lambda b: (sum(b), b))
    partial: dict[tuple, int] = {zero: 1}
    dims: dict[tuple, int] = {}
    for b in degrees:
        L = partial.get(b, 0) - target.get(b, 0)
        if not L:
            continue
        dims[b] = L
        terms = []
        r = 1
        while all(r * x <= n for x, n in zip(b, box)):
            terms.append((tuple(r * x for x in b), (-1) ** r * binomial(L, r)))
            r += 1
        new = dict(partial)
        for d, v in partial.items():
            for s, f in terms:
                e = tuple(x + y for x, y in zip(d, s))
                if all(x <= n for x, n in zip(e, box)):
                    new[e] = new.get(e, 0) + v * f
        partial = {d: v for d, v in new.items() if v}
    return dims


@lru_cache(maxsize=128)
def dimension_table(g: GeneratorSet, box: tuple) -> dict:
    """Graded dimensions of the free Lie algebra on ``g`` for all degrees in ``0..box``."""
    sign = g.sign
    box = tuple(abs(x) for x in box)
    target: dict[tuple, int] = {tuple(0 for _ in box): 1}
    for f in g.families:
        d = tuple(sign * x for x in f.degree)
        if all(x <= n for x, n in zip(d, box)):
            target[d] = target.get(d, 0) - f.multiplicity
    dims = product_exponents(target, box)
    return {tuple(sign * x for x in d): v for d, v in dims.items()}


def graded_dimension(g: GeneratorSet, d: tuple) -> int:
    d = tuple(d)
    if not g.families:
        return 0
    sign = g.sign
    if any(sign * x < 0 for x in d) or not any(d):
        return 0
    return dimension_table(g, tuple(abs(x) for x in d)).get(d, 0)


def lyndon_words(letters: Mapping, d: tuple) -> list[tuple]:
    """All Lyndon words over ``letters`` (letter -> degree) of total degree ``d``, sorted."""
    d = tuple(d)
    alphabet = sorted(letters)
    if not alphabet:
        return []
    sign = 1 if all(x >= 0 for deg in letters.values() for x in deg) else -1
    target = tuple(sign * x for x in d)
    degs = {a: tuple(sign * x for x in letters[a]) for a in alphabet}
    out = []

    def walk(prefix, rem):
        if not any(rem):
            if is_lyndon(prefix):
                out.append(tuple(prefix))
            return
        for a in alphabet:
            if prefix and a < prefix[0]:
                continue
            r = tuple(x - y for x, y in zip(rem, degs[a]))
            if all(x >= 0 for x in r):
                prefix.append(a)
                walk(prefix, r)
                prefix.pop()

    if all(x >= 0 for x in target) and any(target):
        walk([], target)
    return sorted(out)


def lyndon_basis(g: GeneratorSet, d: tuple, cap: int = 10_000) -> list[tuple]:
    """Lyndon words forming a basis of the degree-``d`` part of ``L(g)``.

    Raises :class:`CapExceeded` (carrying the exact count) when the basis is
    larger than ``cap``; restrict the generator set first in that case.
    """
    count = graded_dimension(g, d)
    if count > cap:
        raise CapExceeded(count, cap)
    letters = {a: deg for a, deg in g.letters().items()
               if all(abs(x) <= abs(y) for x, y in zip(deg, d))} if g.families else {}
    words = lyndon_words(letters, d)
    assert len(words) == count, (len(words), count)
    return words


def fricke_generators(label: str, bound: tuple[int, int]) -> GeneratorSet:
    """Free generators ``e_{l,jk}`` of u+ with degree ``(1+l, j-l)`` inside ``bound``."""
    from .cartan import block_size

    m_max, n_max = bound
    fams = []
    for j in range(1, m_max + n_max):
        for l in range(j):
            deg = (1 + l, j - l)
            if deg[0] <= m_max and deg[1] <= n_max:
                fams.append(GeneratorFamily(deg, block_size(label, j), FrickeLabel(l, j)))
    return GeneratorSet(tuple(fams))


def word_degree(word: Iterable, letters: Mapping) -> tuple:
    it = [letters[a] for a in word]
    return tuple(sum(x) for x in zip(*it))


def lyndon_coefficients(x: Mapping) -> dict:
    """Drop zero coefficients and normalize integral fractions."""
    out = {}
    for w, c in x.items():
        if c:
            out[w] = c.numerator if isinstance(c, Fraction) and c.denominator == 1 else c
    return out
