import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from supalg import catalog
from supalg.graded import bracket, check_jacobi, check_super_skew, is_lie_superalgebra
from supalg.linalg import RatMatrix, unit_vector, zero_vector
from supalg.operators import center, solve_type1


def e(alg, label):
    labels = [alg.space.label(i) for i in range(alg.dim)]
    return unit_vector(alg.dim, labels.index(label))


def test_example_2dim():
    alg = catalog.example_2dim()
    assert bracket(alg, e(alg, "v"), e(alg, "v")) == e(alg, "x")
    assert bracket(alg, e(alg, "x"), e(alg, "v")) == zero_vector(2)
    assert list(center(alg).basis) == [e(alg, "x")]


def test_heisenberg():
    hs = catalog.heisenberg(3)
    assert hs.space.dim_even == 1 and hs.space.dim_odd == 3
    assert bracket(hs, e(hs, "x2"), e(hs, "x2")) == e(hs, "c")
    assert bracket(hs, e(hs, "x1"), e(hs, "x2")) == zero_vector(4)
    assert check_super_skew(hs).ok


def test_der_heisenberg_table():
    d = catalog.der_heisenberg(3)
    assert bracket(d, e(d, "B12"), e(d, "C2")) == e(d, "C1")
    assert bracket(d, e(d, "B12"), e(d, "B23")) == e(d, "B13")
    assert bracket(d, e(d, "A"), e(d, "B12")) == zero_vector(7)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_der_heisenberg_matches_solver_construction(n):
    table = catalog.der_heisenberg(n)
    rebuilt = catalog.der_heisenberg_via_solver(n)
    assert rebuilt.sc == table.sc
    assert rebuilt.dim == 1 + n * (n - 1) // 2 + n


def test_der_heisenberg_dimensions():
    assert catalog.der_heisenberg_via_solver(3).dim == 7
    assert catalog.der_heisenberg_via_solver(2).dim == 4


def test_der_heisenberg_table_against_derivation_matrices():
    # the table must agree with supercommutators of the derivation matrices acting on hs
    n = 3
    mats = catalog.heisenberg_derivation_matrices(n)
    d = catalog.der_heisenberg(n)
    par = d.parity
    for i in range(d.dim):
        for j in range(d.dim):
            prod = mats[i] @ mats[j]
            other = mats[j] @ mats[i]
            comm = prod + other if par(i) * par(j) else prod - other
            expected = RatMatrix.zeros(n + 1, n + 1)
            for k, v in enumerate(bracket(d, unit_vector(d.dim, i), unit_vector(d.dim, j))):
                expected = expected + mats[k].scaled(v)
            assert comm == expected


def test_sl12():
    alg = catalog.sl12()
    mats = catalog.sl12_matrices()
    x = tuple(Fraction(int(i >= 4)) for i in range(8))
    xx = bracket(alg, x, x)
    m = RatMatrix.zeros(3, 3)
    for c, b in zip(xx, mats):
        m = m + b.scaled(c)
    assert m == RatMatrix.from_rows([[4, 0, 0], [0, 2, 2], [0, 2, 2]])
    assert xx == (4, 2, 2, 2, 0, 0, 0, 0)
    assert bracket(alg, unit_vector(8, 0), unit_vector(8, 1)) == zero_vector(8)
    assert check_jacobi(alg).ok
    for b in mats:
        # supertrace
        assert b[0, 0] - b[1, 1] - b[2, 2] == 0


def test_sl12_jacobi_against_matrix_oracle():
    # associative supercommutators satisfy graded Jacobi, so the bracket must reproduce them
    alg = catalog.sl12()
    mats = catalog.sl12_matrices()
    for i in range(8):
        for j in range(8):
            prod, other = mats[i] @ mats[j], mats[j] @ mats[i]
            comm = prod + other if alg.parity(i) * alg.parity(j) else prod - other
            rebuilt = RatMatrix.zeros(3, 3)
            for k, v in enumerate(bracket(alg, unit_vector(8, i), unit_vector(8, j))):
                rebuilt = rebuilt + mats[k].scaled(v)
            assert comm == rebuilt


def test_abelian():
    a = catalog.abelian(3, 2)
    assert center(a).dimension == 5
    assert solve_type1(a, 0).dimension == 3 ** 2 + 2 ** 2
    assert check_jacobi(a).ok


def test_from_id():
    for ident in ["example_2dim", "sl12", "hs4", "der_hs3", "der_hs_solver2", "abelian2_1"]:
        assert is_lie_superalgebra(catalog.from_id(ident))
    with pytest.raises(KeyError):
        catalog.from_id("so3")


# -- files ----------------------------------------------------------------------------------


def test_save_load_round_trip(tmp_path):
    alg = catalog.der_heisenberg(3)
    path = tmp_path / "der_hs3.json"
    catalog.save(alg, path)
    back = catalog.load(path)
    assert back.sc == alg.sc and back.space == alg.space and back.name == alg.name
    assert path.read_text() == catalog.dumps(back)


@pytest.mark.parametrize("alg", catalog.standard_entries(), ids=lambda a: a.name)
def test_dumps_is_canonical(alg):
    text = catalog.dumps(alg)
    assert catalog.dumps(catalog.loads(text)) == text
    assert json.loads(text) == catalog.to_json(alg)


def _doc(**over):
    doc = {"name": "t", "dim_even": 1, "dim_odd": 1, "labels": ["x", "v"], "brackets": [[1, 1, 0, "1"]]}
    doc.update(over)
    return json.dumps(doc)


@pytest.mark.parametrize("text,fragment", [
    (_doc(brackets=[[0, 0, 1, "1"]]), "grading"),
    (_doc(brackets=[[1, 1, 0, "2/4"]]), "brackets[0]"),
    (_doc(brackets=[[1, 1, 0, "0"]]), "zero"),
    (_doc(brackets=[[1, 1, 0, "1"], [1, 1, 0, "2"]]), "duplicate"),
    (_doc(brackets=[[1, 1, "0", "1"]]), "expected"),
    (_doc(dim_even=-1), "non-negative"),
    (json.dumps({"dim_even": 1}), "missing"),
    ("[1, 2]", "object"),
    ('{"dim_even": 1,\n  "dim_odd": }', "line 2"),
])
def test_malformed_files_rejected(text, fragment):
    with pytest.raises(catalog.AlgebraFileError) as info:
        catalog.loads(text)
    assert fragment in str(info.value)


# -- random algebras -----------------------------------------------------------------------


@given(st.integers(0, 100_000))
def test_random_algebras_are_lie_and_seeded(seed):
    a = catalog.random_lie_superalgebra(seed)
    b = catalog.random_lie_superalgebra(seed)
    assert a.sc == b.sc and a.space == b.space
    assert 1 <= a.dim <= 4
    assert is_lie_superalgebra(a)
