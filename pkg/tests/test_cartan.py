from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from monsterlie.cartan import (
    BlockIndex,
    BorcherdsCartanMatrix,
    InvalidIndexError,
    RootVector,
    block_size,
    classify_root,
    dynkin_edge_multiplicity,
    dynkin_edges,
    exact_rank,
    norm,
    pairing,
    rank_truncated,
    row_combination,
    row_in_span,
    simple_root,
    validate_borcherds_conditions,
)
from monsterlie.qseries import j_coefficient


def test_block_sizes():
    assert block_size("1A", -1) == 1
    assert block_size("1A", 1) == 196884
    assert block_size("1A", 3) == 864299970
    assert [block_size("2A", j) for j in (1, 2, 3, 4)] == [4372, 96256, 1240002, 10698752]
    with pytest.raises(InvalidIndexError):
        block_size("1A", 0)
    with pytest.raises(InvalidIndexError):
        block_size("2B", 1)


def test_entries_follow_rule():
    a = BorcherdsCartanMatrix()
    assert a.entry((-1, 1), (-1, 1)) == 2
    assert a.entry((1, 1), (1, 196884)) == -2
    assert a.entry((-1, 1), (1, 5)) == 0
    assert a.entry((2, 1), (3, 7)) == -5


def test_entry_validates_indices():
    a = BorcherdsCartanMatrix()
    with pytest.raises(InvalidIndexError):
        a.entry((1, 196885), (1, 1))
    with pytest.raises(InvalidIndexError):
        a.entry((0, 1), (1, 1))
    with pytest.raises(InvalidIndexError):
        a.entry((-1, 2), (1, 1))


def test_non_fricke_matrix_refused():
    with pytest.raises(InvalidIndexError):
        BorcherdsCartanMatrix("2B")


idx_1a = st.one_of(st.just(BlockIndex(-1, 1)),
                   st.builds(BlockIndex, st.integers(1, 30), st.integers(1, 196884)))


@given(idx_1a, idx_1a)
def test_symmetry_and_nonpositive_off_diagonal(x, y):
    a = BorcherdsCartanMatrix()
    assert a.entry(x, y) == a.entry(y, x)
    if x != y:
        assert a.entry(x, y) <= 0


@given(idx_1a)
def test_diagonal_matches_lattice_norm(i):
    # a_ii = (alpha_i, alpha_i) for alpha_i = (1, j)
    a = BorcherdsCartanMatrix()
    assert a.entry(i, i) == norm(simple_root(i))


@given(idx_1a, idx_1a)
def test_entries_are_lattice_pairings(x, y):
    a = BorcherdsCartanMatrix()
    assert a.entry(x, y) == pairing(simple_root(x), simple_root(y))


@pytest.mark.parametrize("label", ["1A", "2A"])
def test_conditions_and_rank(label):
    a = BorcherdsCartanMatrix(label)
    rep = validate_borcherds_conditions(a, 5, 3)
    assert rep.ok and rep.witness == {}
    assert rank_truncated(a, 5, 3) == 2


@pytest.mark.parametrize("j", range(1, 6))
def test_rows_in_span_of_first_two(j):
    a = BorcherdsCartanMatrix()
    idx = a.indices(5, 3)
    combo = row_combination(a, row_in_span(j), idx)
    assert combo == a.row((j, 1), idx)
    if j == 2:
        assert row_in_span(2) == {BlockIndex(-1, 1): Fraction(-1, 2), BlockIndex(1, 1): Fraction(3, 2)}


def test_override_breaks_conditions():
    a = BorcherdsCartanMatrix().with_override((1, 1), (2, 1), -7)
    rep = validate_borcherds_conditions(a, 3, 2)
    assert not rep.symmetric and rep.witness["B1"]
    b = BorcherdsCartanMatrix().with_override((1, 1), (2, 1), 1).with_override((2, 1), (1, 1), 1)
    rep = validate_borcherds_conditions(b, 3, 2)
    assert rep.symmetric and not rep.off_diagonal_nonpositive
    # 2 a_ij / a_ii = -1/2 once the real diagonal entry becomes 4
    c = BorcherdsCartanMatrix().with_override((-1, 1), (-1, 1), 4)
    rep = validate_borcherds_conditions(c, 3, 2)
    assert not rep.integrality and rep.witness["B3"] == ["(-1,1)", "(2,1)"]
    assert rank_truncated(BorcherdsCartanMatrix().with_override((3, 1), (3, 1), 0), 4, 2) == 3


def test_slice_is_deterministic():
    s = BorcherdsCartanMatrix().slice(2, 2)
    assert s["rows"] == ["(-1,1)", "(1,1)", "(1,2)", "(2,1)", "(2,2)"]
    assert s["cols"] == s["rows"]
    assert s["entries"][0] == [2, 0, 0, -1, -1]
    assert s["block_sizes"]["1"] == str(j_coefficient(1))


def test_exact_rank():
    assert exact_rank([[1, 2], [2, 4]]) == 1
    assert exact_rank([[1, 0], [0, 1], [1, 1]]) == 2
    assert exact_rank([]) == 0


def test_root_classification():
    assert classify_root(RootVector.of(1, -1)) == "real"
    assert classify_root(RootVector.of(1, 1)) == "imaginary"
    assert classify_root(RootVector.of(1, 0)) == "imaginary"
    assert norm((1, Fraction(1, 2))) == -1
    assert simple_root((3, 1), level=2) == RootVector.of(1, Fraction(3, 2))


def test_dynkin_multiplicities():
    assert dynkin_edge_multiplicity((-1, 1), (1, 1)) == 0
    assert dynkin_edge_multiplicity((-1, 1), (2, 1)) == 1
    assert dynkin_edge_multiplicity((1, 1), (1, 2)) == 2
    assert dynkin_edge_multiplicity((1, 1), (2, 1)) == 3
    with pytest.raises(InvalidIndexError):
        dynkin_edge_multiplicity((1, 1), (1, 1))


@given(idx_1a, idx_1a)
def test_dynkin_multiplicity_is_abs_entry(x, y):
    if x != y:
        assert dynkin_edge_multiplicity(x, y) == abs(BorcherdsCartanMatrix().entry(x, y))


def test_dynkin_edges_listing():
    edges = dynkin_edges(BorcherdsCartanMatrix(), 2)
    assert [(e["from"], e["to"], e["multiplicity"]) for e in edges] == [
        ("(-1,1)", "(1,1)", 0), ("(-1,1)", "(2,1)", 1), ("(1,1)", "(2,1)", 3)]


@pytest.mark.parametrize("label", ["1A", "2A"])
def test_rank_monotone_and_stable(label):
    a = BorcherdsCartanMatrix(label)
    for k in (1, 2, 3):
        ranks = [rank_truncated(a, j, k) for j in range(1, 8)]
        assert ranks == sorted(ranks) and ranks[-1] == 2


def test_fricke_norms_versus_diagonal():
    # the Cartan diagonal of block j is -2j while the simple root (1, j/N) has norm -2j/N
    a = BorcherdsCartanMatrix("2A")
    for j in range(1, 6):
        assert a.entry((j, 1), (j, 1)) == -2 * j
        assert norm(simple_root((j, 1), level=2)) == Fraction(-2 * j, 2)
