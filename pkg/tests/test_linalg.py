import random
from fractions import Fraction

import pytest
from hypothesis import given

from conftest import matrices
from supalg.linalg import (
    ConstraintSystem,
    RatMatrix,
    ScalarFormatError,
    format_scalar,
    nullspace,
    parse_scalar,
    rank,
    rref,
    solve,
)
from supalg.oracles import bareiss_rank

F = Fraction


# -- scalars -------------------------------------------------------------------


@pytest.mark.parametrize("text,value", [("0", F(0)), ("7", F(7)), ("-3/4", F(-3, 4)), ("1/2", F(1, 2))])
def test_parse_scalar(text, value):
    assert parse_scalar(text) == value
    assert format_scalar(value) == text


@pytest.mark.parametrize("text", ["2/4", "3/1", "-0", "1/-2", "0.5", "", "a", "1/0", " 1"])
def test_parse_scalar_rejects_non_canonical(text):
    with pytest.raises(ScalarFormatError):
        parse_scalar(text)


# -- rref ----------------------------------------------------------------------


def test_rref_identity():
    r = rref(RatMatrix.identity(2))
    assert r.matrix == RatMatrix.identity(2)
    assert r.pivots == (0, 1) and r.rank == 2


def test_rref_proportional_rows():
    r = rref(RatMatrix.from_rows([[1, 2], [2, 4]]))
    assert r.matrix == RatMatrix.from_rows([[1, 2], [0, 0]])
    assert r.pivots == (0,) and r.rank == 1


def _random_6x9(seed=20240611):
    rng = random.Random(seed)
    rows = [[F(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(9)] for _ in range(6)]
    # force a dependency so the rank is not trivially full
    rows[5] = [a + 2 * b for a, b in zip(rows[0], rows[1])]
    return rows


# frozen from the Bareiss oracle
RANDOM_6X9_RANK = 5


def test_rank_random_6x9_against_bareiss():
    rows = _random_6x9()
    assert bareiss_rank(rows) == RANDOM_6X9_RANK
    assert rref(RatMatrix.from_rows(rows)).rank == RANDOM_6X9_RANK


def test_recorded_ops_reconstruct_rref():
    m = RatMatrix.from_rows(_random_6x9())
    r = rref(m, record_ops=True)
    grid = [list(row) for row in m.tolist()]
    for op in r.ops:
        if op[0] == "swap":
            _, a, b = op
            grid[a], grid[b] = grid[b], grid[a]
        elif op[0] == "scale":
            _, a, c = op
            grid[a] = [c * v for v in grid[a]]
        else:
            _, i, src, c = op
            grid[i] = [u + c * v for u, v in zip(grid[i], grid[src])]
    assert RatMatrix.from_rows(grid) == r.matrix


@given(matrices())
def test_rref_is_reduced_and_rank_matches_oracle(rows):
    m = RatMatrix.from_rows(rows)
    r = rref(m)
    assert r.rank == bareiss_rank(rows)
    for k, p in enumerate(r.pivots):
        assert r.matrix[k, p] == 1
        assert all(r.matrix[i, p] == 0 for i in range(m.rows) if i != k)
        assert all(r.matrix[k, j] == 0 for j in range(p))
    assert all(not any(r.matrix.row(i)) for i in range(r.rank, m.rows))
    assert rref(r.matrix).matrix == r.matrix


# -- nullspace and solve --------------------------------------------------------


def test_nullspace_identity_is_empty():
    assert nullspace(RatMatrix.identity(3)) == []


def test_nullspace_zero_is_standard_basis():
    assert nullspace(RatMatrix.zeros(2, 3)) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]


def test_nullspace_single_equation():
    assert nullspace(RatMatrix.from_rows([[1, 1, 0]])) == [(-1, 1, 0), (0, 0, 1)]


@given(matrices())
def test_nullspace_properties(rows):
    m = RatMatrix.from_rows(rows)
    basis = nullspace(m)
    assert len(basis) == m.cols - rank(m)
    for v in basis:
        assert not any(m.matvec(v))
    if basis:
        assert bareiss_rank(basis) == len(basis)


def test_solve_examples():
    assert solve(RatMatrix.identity(2), [3, 5]) == (3, 5)
    assert solve(RatMatrix.from_rows([[1, 1]]), [2]) == (2, 0)
    assert solve(RatMatrix.from_rows([[1], [1]]), [1, 2]) is None


def test_solve_shape_mismatch():
    with pytest.raises(ValueError):
        solve(RatMatrix.identity(2), [1, 2, 3])


@given(matrices())
def test_solve_consistent_rhs(rows):
    m = RatMatrix.from_rows(rows)
    x0 = [F(i + 1) for i in range(m.cols)]
    b = m.matvec(x0)
    x = solve(m, b)
    assert x is not None and m.matvec(x) == b


# -- matrices ------------------------------------------------------------------


@given(matrices(4, 4), matrices(4, 4))
def test_matmul_transpose(a_rows, b_rows):
    a = RatMatrix.from_rows(a_rows)
    b = RatMatrix.from_rows([row[: a.rows] + [F(0)] * (a.rows - len(row)) for row in b_rows])
    assert (b @ a).transpose() == a.transpose() @ b.transpose()


def test_matrix_shape_errors():
    with pytest.raises(ValueError):
        RatMatrix.identity(2) @ RatMatrix.zeros(3, 3)
    with pytest.raises(ValueError):
        RatMatrix.identity(2) + RatMatrix.zeros(2, 3)


# -- constraint systems ------------------------------------------------------------


def test_constraint_system_drops_trivial_and_duplicate_rows():
    cs = ConstraintSystem(["a", "b", "c"])
    cs.add_row({})
    cs.add_row({"a": 0})
    cs.add_row({"a": 1, "b": -1})
    cs.add_row({"a": -2, "b": 2})
    cs.add_row({"c": 3})
    assert cs.matrix().rows == 2
    assert cs.nullspace() == [(1, 1, 0)]
    assert cs.rank() == 2
