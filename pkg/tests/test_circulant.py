"""Spec parsing, normalization, and adjacency matrices."""
from fractions import Fraction

import pytest

from circperm.circulant import adjacency_matrix, normalize, parse_spec
from circperm.errors import CollisionError, InconsistencyError, SpecSyntaxError
from circperm.oracle import ryser_permanent


def test_parse_constant():
    spec = parse_spec("0,1,2")
    assert spec.constant
    assert spec.jumps == ((0, 0), (0, 1), (0, 2))
    assert spec.size(7) == 7


def test_parse_linear():
    spec = parse_spec("0,1n+0,2n-1", "3n")
    assert not spec.constant
    assert (spec.size_coeff, spec.size_offset) == (3, 0)
    assert spec.jumps == ((0, 0), (1, 0), (2, -1))


def test_parse_bare_n_and_signs():
    spec = parse_spec("-1,n,2n+1", "4n+1")
    assert spec.jumps == ((0, -1), (1, 0), (2, 1))


def test_parse_duplicate_jump_rejected():
    with pytest.raises(SpecSyntaxError):
        parse_spec("0,0")


def test_parse_malformed_term():
    for bad in ("", "1,,2", "x", "2m+1", "1n2"):
        with pytest.raises(SpecSyntaxError):
            parse_spec(bad)


def test_linear_jump_requires_size_law():
    with pytest.raises(InconsistencyError):
        parse_spec("0,1n+0")


def test_jump_coefficient_must_fit_size_coefficient():
    with pytest.raises(InconsistencyError):
        parse_spec("0,3n+1", "3n")


def test_parse_weights():
    spec = parse_spec("0,1,2", weights="2,1,1/3")
    assert spec.weights == (Fraction(2), Fraction(1), Fraction(1, 3))
    with pytest.raises(InconsistencyError):
        parse_spec("0,1", weights="1")
    with pytest.raises(SpecSyntaxError):
        parse_spec("0,1", weights="1,a")


def test_normalize_constant_shift():
    norm = normalize(parse_spec("-1,0,1"))
    assert norm.jumps == ((0, 0), (0, 1), (0, 2))
    assert norm.trace.offset_shift == 1
    norm = normalize(parse_spec("0,1,2"))
    assert norm.trace.offset_shift == 0


def test_normalize_linear_offsets():
    norm = normalize(parse_spec("1,1n+0,2n+1", "3n+1"))
    assert norm.jumps == ((0, 2), (1, 1), (2, 2))
    assert (norm.size_coeff, norm.size_offset) == (3, 1)
    assert norm.trace.offset_shift == 1 and norm.trace.index_shift == 0


def test_normalize_linear_reindex():
    # size 2n+3 = 2(n+1)+1, so the index shifts by one
    norm = normalize(parse_spec("0,1n+0", "2n+3"))
    assert (norm.size_coeff, norm.size_offset) == (2, 1)
    assert norm.trace.index_shift == 1
    raw = parse_spec("0,1n+0", "2n+3")
    for n in range(1, 5):
        assert (ryser_permanent(adjacency_matrix(raw, n))
                == ryser_permanent(adjacency_matrix(norm, n + 1)))


@pytest.mark.parametrize("jumps,size", [
    ("-1,0,1", None), ("1,2,3", None), ("0,1n+0,2n-1", "3n"),
    ("1,1n+0,2n+1", "3n+1"),
])
def test_normalization_preserves_permanent(jumps, size):
    raw = parse_spec(jumps, size)
    norm = normalize(raw)
    shift = norm.trace.index_shift
    n0 = 2 * max(s for _, s in norm.jumps)
    for n in range(max(n0, 1), max(n0, 1) + 4):
        assert (ryser_permanent(adjacency_matrix(raw, n))
                == ryser_permanent(adjacency_matrix(norm, n + shift)))


def test_adjacency_figure_matrix():
    got = adjacency_matrix(parse_spec("-1,0,2"), 6)
    assert got == [
        [1, 0, 1, 0, 0, 1],
        [1, 1, 0, 1, 0, 0],
        [0, 1, 1, 0, 1, 0],
        [0, 0, 1, 1, 0, 1],
        [1, 0, 0, 1, 1, 0],
        [0, 1, 0, 0, 1, 1],
    ]


def test_adjacency_identity():
    assert adjacency_matrix(parse_spec("0"), 5) == [
        [1 if i == j else 0 for j in range(5)] for i in range(5)]


def test_adjacency_linear_at_small_n():
    # jumps 0, n, 2n-1 at n=2 hit columns {0, 2, 3} mod 6
    first_row = adjacency_matrix(parse_spec("0,1n+0,2n-1", "3n"), 2)[0]
    assert first_row == [1, 0, 1, 1, 0, 0]


def test_adjacency_collision():
    with pytest.raises(CollisionError):
        adjacency_matrix(parse_spec("0,2"), 2)


def test_adjacency_weighted_entries():
    m = adjacency_matrix(parse_spec("0,1", weights="2,1/3"), 3)
    assert m[0] == [Fraction(2), Fraction(1, 3), 0]
