import logging
import random

import pytest
from hypothesis import given, strategies as st

from supalg import catalog, oracles
from supalg.graded import (
    GradedLinearMap,
    SuperAlgebra,
    SuperVectorSpace,
    adjoint_left,
    adjoint_right,
    supercommutator_ops,
)
from supalg.linalg import RatMatrix, unit_vector
from supalg.operators import (
    AxiomError,
    MembershipError,
    center,
    check_twist_identity,
    inner_derivations,
    inner_type2,
    is_complete,
    is_type1,
    is_type2,
    map_unknowns,
    solve_type1,
    solve_type2,
    transform_f,
    transform_g,
    type2_inner_decomposition,
)
from supalg.verify import random_member

STANDARD = catalog.standard_entries()


def ids(alg):
    return alg.name


# -- solution spaces ----------------------------------------------------------------


def test_heisenberg_derivation_dimensions():
    hs = catalog.heisenberg(3)
    assert solve_type1(hs, 0).dimension == 4
    assert solve_type1(hs, 1).dimension == 3
    assert solve_type2(hs, 1).dimension == 3


def test_abelian_has_no_constraints():
    assert solve_type1(catalog.abelian(2, 2), 0).dimension == 8
    assert solve_type2(catalog.abelian(1, 1), 0).dimension == 2
    a = catalog.abelian(2, 3)
    assert solve_type1(a, 0).dimension == 2 ** 2 + 3 ** 2


@pytest.mark.parametrize("alg", STANDARD, ids=ids)
def test_type1_and_type2_dimensions_agree(alg):
    for deg in (0, 1):
        t1, t2 = solve_type1(alg, deg), solve_type2(alg, deg)
        assert t1.dimension == t2.dimension
        assert t1.dimension == t1.unknowns - t1.rank
        assert t1.unknowns == len(map_unknowns(alg.space, deg))


@pytest.mark.parametrize("alg", STANDARD, ids=ids)
def test_solution_bases_pass_membership_and_oracle(alg):
    for deg in (0, 1):
        for kind, solver, member in ((1, solve_type1, is_type1), (2, solve_type2, is_type2)):
            for d in solver(alg, deg).basis:
                assert d.degree == deg
                assert member(alg, d).ok
                assert oracles.verify_linear_map(alg, d.matrix.tolist(), deg, kind)


def test_invalid_degree():
    with pytest.raises(ValueError):
        solve_type1(catalog.heisenberg(2), 2)


def test_non_lie_input_rejected():
    bad = SuperAlgebra(SuperVectorSpace(2, 0), {(0, 1, 0): 1, (1, 0, 0): 1})
    with pytest.raises(AxiomError):
        solve_type1(bad, 0)


# -- center, inner maps, completeness ------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_heisenberg_center_is_c(n):
    z = center(catalog.heisenberg(n))
    assert z.dimension == 1
    assert z.basis[0] == unit_vector(n + 1, 0)


def test_center_of_der_heisenberg_and_abelian():
    assert center(catalog.der_heisenberg(3)).dimension == 0
    assert center(catalog.abelian(2, 3)).dimension == 5


def test_inner_derivations():
    assert inner_derivations(catalog.der_heisenberg(3), 0).dimension == 4
    assert inner_derivations(catalog.heisenberg(3), 0).dimension == 0
    assert inner_derivations(catalog.abelian(2, 2), 0).dimension == 0
    assert inner_type2(catalog.der_heisenberg(3), 1).dimension == 3


def test_completeness():
    cert = is_complete(catalog.der_heisenberg(3))
    assert cert.complete and cert.center_dim == 0
    assert cert.der_dims == cert.ider_dims == (4, 3)
    hs = is_complete(catalog.heisenberg(3))
    assert not hs.complete and hs.center_dim == 1
    assert not is_complete(catalog.abelian(1, 0)).complete


def test_empty_algebra_is_vacuously_complete(caplog):
    with caplog.at_level(logging.WARNING):
        cert = is_complete(catalog.abelian(0, 0))
    assert cert.complete and cert.degenerate
    assert "vacuous" in caplog.text


# -- sign twists --------------------------------------------------------------------------


def test_transform_fixes_even_maps():
    alg = catalog.der_heisenberg(3)
    for d in solve_type1(alg, 0).basis:
        assert transform_f(alg, d) == d


def test_transform_of_inner_odd_derivation():
    hs = catalog.heisenberg(3)
    x1 = unit_vector(4, 1)
    d = adjoint_left(hs, x1).homogeneous()
    minus_x1 = tuple(-v for v in x1)
    assert transform_f(hs, d).matrix == adjoint_right(hs, minus_x1).matrix


def test_transform_rejects_non_members():
    hs = catalog.heisenberg(2)
    not_a_derivation = GradedLinearMap(hs.space, 0, RatMatrix.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 0]]))
    with pytest.raises(MembershipError):
        transform_f(hs, not_a_derivation)
    with pytest.raises(MembershipError):
        transform_g(hs, not_a_derivation)


SPACES = [(alg, deg, solve_type1(alg, deg), solve_type2(alg, deg))
          for alg in (catalog.heisenberg(3), catalog.der_heisenberg(3), catalog.sl12(), catalog.example_2dim())
          for deg in (0, 1)]


@given(st.sampled_from(SPACES), st.integers(0, 2 ** 32))
def test_transforms_are_mutually_inverse(space, seed):
    alg, _, t1, t2 = space
    rng = random.Random(seed)
    d = random_member(rng, t1.basis)
    delta = random_member(rng, t2.basis)
    if d is not None:
        assert transform_g(alg, transform_f(alg, d)) == d
    if delta is not None:
        assert transform_f(alg, transform_g(alg, delta)) == delta


def test_twist_identity_signs():
    hs = catalog.heisenberg(3)
    even, odd = solve_type1(hs, 0).basis, solve_type1(hs, 1).basis
    r = check_twist_identity(hs, even[0], even[1])
    assert r.ok and r.sign == 1
    r = check_twist_identity(hs, even[0], odd[0])
    assert r.ok and r.sign == 1
    r = check_twist_identity(hs, odd[0], odd[1])
    assert r.ok and r.sign == -1


def test_twist_sign_matters_for_odd_pairs():
    alg = catalog.sl12()
    odd = solve_type1(alg, 1).basis
    nontrivial = 0
    for a in odd:
        for b in odd:
            r = check_twist_identity(alg, a, b)
            assert r.ok and r.sign == -1
            if not r.lhs.matrix.is_zero():
                nontrivial += 1
                # the unsigned comparison fails
                assert r.lhs != r.rhs.scaled(-1)
    assert nontrivial


def test_twist_identity_on_supercommutator_closure():
    alg = catalog.der_heisenberg(3)
    basis = solve_type1(alg, 0).basis + solve_type1(alg, 1).basis
    for a in basis:
        for b in basis:
            assert is_type1(alg, supercommutator_ops(a, b)).ok
            assert check_twist_identity(alg, a, b).ok


# -- inner-ness of type-2 maps ----------------------------------------------------------------


def test_type2_inner_on_complete_algebra():
    alg = catalog.der_heisenberg(3)
    for deg in (0, 1):
        dec = type2_inner_decomposition(alg, deg)
        assert dec.status == "inner"
        for d, t in zip(solve_type2(alg, deg).basis, dec.multipliers):
            assert adjoint_right(alg, t).matrix == d.matrix


def test_type2_inner_not_attempted_on_non_complete():
    dec = type2_inner_decomposition(catalog.heisenberg(3), 1)
    assert dec.status == "not attempted" and dec.multipliers == ()

