"""Borcherds Cartan matrices of the Monster and Fricke monstrous Lie algebras.

Blocks are indexed by ``j in {-1, 1, 2, ...}`` and have sizes in the hundreds
of thousands and beyond, so matrices are never materialized: entries are
evaluated from the rule ``a_{jk,pq} = -(j + p)`` and indices are validated
against big-integer block sizes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, NamedTuple

from .moonshine import get_class, simple_root_multiplicity
from .qseries import j_coefficient


class InvalidIndexError(ValueError):
    pass


class BlockIndex(NamedTuple):
    j: int
    k: int

    def __str__(self):
        return f"({self.j},{self.k})"


@lru_cache(maxsize=4096)
def block_size(label: str, j: int) -> int:
    """Size of block ``j``: c(j) for 1A, c(1, j/N) for a Fricke class."""
    c = get_class(label)
    if j == -1:
        return 1
    if j < 1:
        raise InvalidIndexError(f"block index j={j} must be -1 or positive")
    if c.label == "1A":
        return j_coefficient(j)
    if not c.fricke:
        raise InvalidIndexError(f"{c.label} is not Fricke; no Cartan matrix of this shape is certified")
    return simple_root_multiplicity(c.label, Fraction(j, c.level))


@dataclass(frozen=True)
class BorcherdsCartanMatrix:
    """Lazy Cartan matrix of a class; ``overrides`` replaces single entries (for defect tests)."""

    label: str = "1A"
    overrides: tuple = field(default=(), repr=False)

    def __post_init__(self):
        c = get_class(self.label)
        object.__setattr__(self, "label", c.label)
        if not c.fricke:
            raise InvalidIndexError(f"{c.label} is not Fricke; no Cartan matrix of this shape is certified")

    @property
    def level(self) -> int:
        return get_class(self.label).level

    def block_size(self, j: int) -> int:
        return block_size(self.label, j)

    def validate(self, i) -> BlockIndex:
        i = BlockIndex(*i)
        if i.j != -1 and i.j < 1:
            raise InvalidIndexError(f"block index j={i.j} must be -1 or positive")
        if not 1 <= i.k <= self.block_size(i.j):
            raise InvalidIndexError(f"k={i.k} outside block j={i.j} of size {self.block_size(i.j)}")
        return i

    def entry(self, i1, i2) -> int:
        i1, i2 = self.validate(i1), self.validate(i2)
        for (a, b, v) in self.overrides:
            if (a, b) == (i1, i2):
                return v
        return -(i1.j + i2.j)

    def with_override(self, i1, i2, value: int) -> "BorcherdsCartanMatrix":
        """Copy with the single entry at ``(i1, i2)`` replaced (symmetry is not restored)."""
        i1, i2 = self.validate(i1), self.validate(i2)
        return BorcherdsCartanMatrix(self.label, self.overrides + ((i1, i2, value),))

    def indices(self, j_max: int, k_max: int) -> list[BlockIndex]:
        """Truncated index set, ordered lexicographically on ``(j, k)``."""
        out = [BlockIndex(-1, 1)]
        for j in range(1, j_max + 1):
            for k in range(1, min(k_max, self.block_size(j)) + 1):
                out.append(BlockIndex(j, k))
        return out

    def submatrix(self, idx: Iterable) -> list[list[int]]:
        idx = list(idx)
        return [[self.entry(a, b) for b in idx] for a in idx]

    def row(self, i, idx: Iterable) -> list[int]:
        return [self.entry(i, b) for b in idx]

    def slice(self, j_max: int, k_max: int) -> dict:
        idx = self.indices(j_max, k_max)
        return {
            "rows": [str(i) for i in idx],
            "cols": [str(i) for i in idx],
            "entries": self.submatrix(idx),
            "block_sizes": {str(j): str(self.block_size(j)) for j in [-1, *range(1, j_max + 1)]},
        }


@dataclass
class ConditionReport:
    symmetric: bool
    off_diagonal_nonpositive: bool
    integrality: bool
    witness: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.symmetric and self.off_diagonal_nonpositive and self.integrality

    def to_dict(self) -> dict:
        return {"B1": self.symmetric, "B2": self.off_diagonal_nonpositive,
                "B3": self.integrality, "witness": self.witness}


def validate_borcherds_conditions(a: BorcherdsCartanMatrix, j_max: int, k_max: int) -> ConditionReport:
    """Check (B1) symmetry, (B2) nonpositive off-diagonal, (B3) integrality on a truncation."""
    idx = a.indices(j_max, k_max)
    rep = ConditionReport(True, True, True)
    for x in idx:
        axx = a.entry(x, x)
        for y in idx:
            axy = a.entry(x, y)
            if rep.symmetric and axy != a.entry(y, x):
                rep.symmetric = False
                rep.witness["B1"] = [str(x), str(y)]
            if x != y and rep.off_diagonal_nonpositive and axy > 0:
                rep.off_diagonal_nonpositive = False
                rep.witness["B2"] = [str(x), str(y)]
            if axx > 0 and rep.integrality and Fraction(2 * axy, axx).denominator != 1:
                rep.integrality = False
                rep.witness["B3"] = [str(x), str(y)]
    return rep


def exact_rank(rows: list[list]) -> int:
    """Rank over the rationals by Gaussian elimination on distinct rows."""
    m = [list(map(Fraction, r)) for r in {tuple(r) for r in rows}]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col] / p[col]
                m[i] = [x - f * y for x, y in zip(m[i], p)]
        rank += 1
    return rank


def rank_truncated(a: BorcherdsCartanMatrix, j_max: int, k_max: int) -> int:
    idx = a.indices(j_max, k_max)
    return exact_rank(a.submatrix(idx))


def row_combination(a: BorcherdsCartanMatrix, coefficients: dict, idx: Iterable) -> list[Fraction]:
    """``sum c_i R_i`` restricted to the columns ``idx``."""
    idx = list(idx)
    out = [Fraction(0)] * len(idx)
    for i, c in coefficients.items():
        for n, v in enumerate(a.row(i, idx)):
            out[n] += Fraction(c) * v
    return out


def row_in_span(j: int) -> dict:
    """Coefficients expressing row block ``j`` through the rows (-1,1) and (1,1)."""
    return {BlockIndex(-1, 1): Fraction(1 - j, 2), BlockIndex(1, 1): Fraction(1 + j, 2)}


# -- root lattice ------------------------------------------------------------------

class RootVector(NamedTuple):
    """``(m, n)`` with ``n`` in ``Z/N``, in the rank-two lattice with form ``-(m n' + n m')``."""

    m: int
    n: Fraction

    @classmethod
    def of(cls, m, n) -> "RootVector":
        return cls(int(m), Fraction(n))


def pairing(v, w) -> Fraction:
    v, w = RootVector.of(*v), RootVector.of(*w)
    return -(v.m * w.n + v.n * w.m)


def norm(v) -> Fraction:
    return pairing(v, v)


def classify_root(v) -> str:
    return "real" if norm(v) > 0 else "imaginary"


def simple_root(i, level: int = 1) -> RootVector:
    """Lattice vector of the simple root ``alpha_i``: ``(1, j/N)``."""
    i = BlockIndex(*i)
    return RootVector.of(1, Fraction(i.j, level))


def dynkin_edge_multiplicity(i1, i2) -> int:
    """Edge multiplicity between two vertices of the Dynkin diagram."""
    i1, i2 = BlockIndex(*i1), BlockIndex(*i2)
    if i1 == i2:
        raise InvalidIndexError("no edge from a vertex to itself")
    if i1.j == -1 or i2.j == -1:
        other = i2 if i1.j == -1 else i1
        return abs(1 - other.j)
    if i1.j == i2.j:
        return 2 * i1.j
    return i1.j + i2.j


def dynkin_edges(a: BorcherdsCartanMatrix, j_max: int, k_max: int = 1) -> list[dict]:
    idx = a.indices(j_max, k_max)
    out = []
    for n, x in enumerate(idx):
        for y in idx[n + 1:]:
            out.append({"from": str(x), "to": str(y), "multiplicity": dynkin_edge_multiplicity(x, y)})
    return out
