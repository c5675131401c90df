from fractions import Fraction

from supalg import catalog, oracles
from supalg.linalg import RatMatrix


def test_bareiss_rank_small_cases():
    assert oracles.bareiss_rank([]) == 0
    assert oracles.bareiss_rank([[0, 0], [0, 0]]) == 0
    assert oracles.bareiss_rank([[1, 2], [2, 4]]) == 1
    assert oracles.bareiss_rank([[Fraction(1, 2), 1], [1, Fraction(1, 3)]]) == 2
    assert oracles.bareiss_rank([[0, 1, 2], [0, 2, 4], [1, 0, 0]]) == 2


def test_oracles_reject_non_solutions():
    hs = catalog.heisenberg(2)
    bad = RatMatrix.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 0]]).tolist()
    assert not oracles.verify_linear_map(hs, bad, 0, 1)
    assert not oracles.verify_linear_map(hs, bad, 0, 2)
    good = RatMatrix.from_rows([[2, 0, 0], [0, 1, 0], [0, 0, 1]]).tolist()
    assert oracles.verify_linear_map(hs, good, 0, 1)
    shift = RatMatrix.from_rows([[0, 0, 0], [0, 0, 0], [0, 1, 0]]).tolist()  # x1 -> x2
    assert not oracles.verify_supercommuting(hs, shift)
    ex = catalog.example_2dim()
    assert oracles.verify_biderivation(ex, {(0, 1, 0): 2, (1, 0, 0): 2, (1, 1, 1): 1}, 1, "new")
    assert not oracles.verify_biderivation(ex, {(0, 1, 0): 2, (1, 0, 0): 2, (1, 1, 1): 1}, 1, "yuan-tang")
    assert oracles.verify_biderivation(ex, {(0, 1, 0): -2, (1, 0, 0): 2, (1, 1, 1): 1}, 1, "yuan-tang")
