"""Spaces of superderivations and type-2 maps, centers and completeness.

A *type-1* map is a superderivation::

    D[x, y] = [Dx, y] + (-1)^{|D||x|} [x, Dy]

and a *type-2* map satisfies::

    D[x, y] = (-1)^{|D||y|} [Dx, y] + [x, Dy]

Both spaces are computed as nullspaces of the linear systems obtained by
instantiating the identity on every ordered pair of basis vectors; only the
parity-admissible matrix entries are unknowns.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .graded import (
    AxiomReport,
    GradedLinearMap,
    SuperAlgebra,
    SuperVectorSpace,
    adjoint_left,
    adjoint_right,
    bracket,
    check_jacobi,
    check_super_skew,
    sign,
    supercommutator_ops,
)
from .linalg import ConstraintSystem, RatMatrix, format_scalar, row_space_basis, solve, unit_vector

log = logging.getLogger(__name__)


class ConstraintTag(str, Enum):
    TYPE1 = "TYPE1"
    TYPE2 = "TYPE2"
    BIDER_NEW = "BIDER_NEW"
    BIDER_YT = "BIDER_YT"
    SUPERCOMM_NEW = "SUPERCOMM_NEW"
    CENTER = "CENTER"
    INNER_TYPE1 = "INNER_TYPE1"
    INNER_TYPE2 = "INNER_TYPE2"


class AxiomError(ValueError):
    """The input is not a Lie superalgebra."""


class MembershipError(ValueError):
    """A map does not belong to the space an operation requires."""


class InconsistencyError(RuntimeError):
    """A computation contradicts a proven structural statement."""


@dataclass(frozen=True)
class SolutionSpace:
    tag: ConstraintTag
    degree: object  # 0, 1 or "both"
    basis: tuple
    algebra_name: str
    unknowns: int = 0
    rank: int = 0

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    def to_json(self) -> dict:
        basis = []
        for b in self.basis:
            if hasattr(b, "to_json"):
                basis.append(b.to_json())
            else:
                basis.append([format_scalar(v) for v in b])
        return {
            "tag": self.tag.value,
            "algebra": self.algebra_name,
            "degree": self.degree,
            "dimension": self.dimension,
            "basis": basis,
        }


def require_lie(alg: SuperAlgebra) -> None:
    skew = check_super_skew(alg)
    if not skew.ok:
        raise AxiomError(f"{alg.name}: super-skewsymmetry fails at {skew.witness}")
    jac = check_jacobi(alg)
    if not jac.ok:
        raise AxiomError(f"{alg.name}: graded Jacobi identity fails at {jac.witness}")


def map_unknowns(space: SuperVectorSpace, degree: int) -> list:
    """Matrix positions ``(row, col)`` a degree-``degree`` map may occupy, row-major."""
    par = space.parity
    n = space.dim
    return [(i, j) for i in range(n) for j in range(n) if par(i) == (par(j) + degree) % 2]


def _map_from_vector(space: SuperVectorSpace, degree: int, labels: Sequence, vec: Sequence) -> GradedLinearMap:
    n = space.dim
    entries = [Fraction(0)] * (n * n)
    for (i, j), v in zip(labels, vec):
        entries[i * n + j] = v
    return GradedLinearMap(space, degree, RatMatrix(n, n, tuple(entries)))


def _map_to_vector(f: GradedLinearMap, labels: Sequence) -> tuple:
    return tuple(f.matrix[i, j] for i, j in labels)


def derivation_system(alg: SuperAlgebra, degree: int, kind: int = 1) -> ConstraintSystem:
    """Linear system whose nullspace is the degree-``degree`` type-``kind`` space."""
    if kind not in (1, 2):
        raise ValueError("kind must be 1 or 2")
    space = alg.space
    labels = map_unknowns(space, degree)
    system = ConstraintSystem(labels)
    ok = set(labels)
    n = alg.dim
    par = alg.parity
    for a in range(n):
        for b in range(n):
            if kind == 1:
                s_left, s_right = 1, sign(degree * par(a))
            else:
                s_left, s_right = sign(degree * par(b)), 1
            rows: dict = {}
            # D([e_a, e_b])
            for m, c in alg.basis_bracket(a, b):
                for k in range(n):
                    if (k, m) in ok:
                        r = rows.setdefault(k, {})
                        r[(k, m)] = r.get((k, m), 0) + c
            # - s_left [D e_a, e_b]
            for m in range(n):
                if (m, a) in ok:
                    for k, c in alg.basis_bracket(m, b):
                        r = rows.setdefault(k, {})
                        r[(m, a)] = r.get((m, a), 0) - s_left * c
            # - s_right [e_a, D e_b]
            for m in range(n):
                if (m, b) in ok:
                    for k, c in alg.basis_bracket(a, m):
                        r = rows.setdefault(k, {})
                        r[(m, b)] = r.get((m, b), 0) - s_right * c
            for k in sorted(rows):
                system.add_row(rows[k])
    return system


def _solve_maps(alg: SuperAlgebra, degree: int, kind: int) -> SolutionSpace:
    if degree not in (0, 1):
        raise ValueError("degree must be 0 or 1")
    require_lie(alg)
    system = derivation_system(alg, degree, kind)
    null = system.nullspace()
    basis = tuple(_map_from_vector(alg.space, degree, system.labels, v) for v in null)
    tag = ConstraintTag.TYPE1 if kind == 1 else ConstraintTag.TYPE2
    return SolutionSpace(tag, degree, basis, alg.name, system.n_unknowns, system.n_unknowns - len(null))


def solve_type1(alg: SuperAlgebra, degree: int) -> SolutionSpace:
    """Canonical basis of the degree-``degree`` superderivations."""
    return _solve_maps(alg, degree, 1)


def solve_type2(alg: SuperAlgebra, degree: int) -> SolutionSpace:
    """Canonical basis of the degree-``degree`` type-2 maps."""
    return _solve_maps(alg, degree, 2)


def _check_map_identity(alg: SuperAlgebra, d: GradedLinearMap, kind: int) -> AxiomReport:
    n = alg.dim
    par = alg.parity
    for a in range(n):
        ea = unit_vector(n, a)
        for b in range(n):
            eb = unit_vector(n, b)
            lhs = d(bracket(alg, ea, eb))
            left = bracket(alg, d(ea), eb)
            right = bracket(alg, ea, d(eb))
            if kind == 1:
                rhs = tuple(u + sign(d.degree * par(a)) * v for u, v in zip(left, right))
            else:
                rhs = tuple(sign(d.degree * par(b)) * u + v for u, v in zip(left, right))
            if lhs != rhs:
                return AxiomReport(False, (a, b))
    return AxiomReport(True)


def is_type1(alg: SuperAlgebra, d: GradedLinearMap) -> AxiomReport:
    """Superderivation identity on all basis pairs, evaluated directly."""
    return _check_map_identity(alg, d, 1)


def is_type2(alg: SuperAlgebra, d: GradedLinearMap) -> AxiomReport:
    return _check_map_identity(alg, d, 2)


def center(alg: SuperAlgebra) -> SolutionSpace:
    """Basis of ``{t : [t, e_j] = 0 for all j}``."""
    n = alg.dim
    system = ConstraintSystem(range(n))
    for j in range(n):
        rows: dict = {}
        for i in range(n):
            for k, c in alg.basis_bracket(i, j):
                rows.setdefault(k, {})[i] = c
        for k in sorted(rows):
            system.add_row(rows[k])
    null = system.nullspace()
    return SolutionSpace(ConstraintTag.CENTER, "both", tuple(null), alg.name, n, n - len(null))


def _inner(alg: SuperAlgebra, degree: int, right: bool) -> SolutionSpace:
    if degree not in (0, 1):
        raise ValueError("degree must be 0 or 1")
    space = alg.space
    labels = map_unknowns(space, degree)
    adj = adjoint_right if right else adjoint_left
    vecs = []
    for i in space.indices(degree):
        part = adj(alg, unit_vector(alg.dim, i))
        f = part.even_part if degree == 0 else part.odd_part
        vecs.append(_map_to_vector(f, labels))
    rows = row_space_basis(vecs, len(labels))
    basis = tuple(_map_from_vector(space, degree, labels, v) for v in rows)
    tag = ConstraintTag.INNER_TYPE2 if right else ConstraintTag.INNER_TYPE1
    return SolutionSpace(tag, degree, basis, alg.name, len(labels), len(rows))


def inner_derivations(alg: SuperAlgebra, degree: int) -> SolutionSpace:
    """Span of the left multiplications by basis vectors of parity ``degree``."""
    return _inner(alg, degree, right=False)


def inner_type2(alg: SuperAlgebra, degree: int) -> SolutionSpace:
    return _inner(alg, degree, right=True)


@dataclass(frozen=True)
class CompletenessCertificate:
    center_dim: int
    der_dims: tuple
    ider_dims: tuple
    complete: bool
    degenerate: bool = False

    def to_json(self) -> dict:
        return {
            "center_dim": self.center_dim,
            "der_dims": list(self.der_dims),
            "ider_dims": list(self.ider_dims),
            "complete": self.complete,
            "degenerate": self.degenerate,
        }


def is_complete(alg: SuperAlgebra) -> CompletenessCertificate:
    """Trivial center and ``Der_i = IDer_i`` for both parities."""
    require_lie(alg)
    if alg.dim == 0:
        log.warning("%s: empty algebra is complete only vacuously", alg.name)
        return CompletenessCertificate(0, (0, 0), (0, 0), True, degenerate=True)
    z = center(alg).dimension
    der = (solve_type1(alg, 0).dimension, solve_type1(alg, 1).dimension)
    ider = (inner_derivations(alg, 0).dimension, inner_derivations(alg, 1).dimension)
    return CompletenessCertificate(z, der, ider, z == 0 and der == ider)


def _twist(d: GradedLinearMap) -> GradedLinearMap:
    if d.degree == 0:
        return d
    space = d.space
    n = space.dim
    m = d.matrix
    entries = tuple(
        -m[i, j] if space.parity(j) else m[i, j] for i in range(n) for j in range(n)
    )
    return GradedLinearMap(space, d.degree, RatMatrix(n, n, entries))


def transform_f(alg: SuperAlgebra, d: GradedLinearMap) -> GradedLinearMap:
    """``x -> (-1)^{|D||x|} D(x)``, taking superderivations to type-2 maps."""
    report = is_type1(alg, d)
    if not report.ok:
        raise MembershipError(f"map is not a superderivation (fails at basis pair {report.witness})")
    out = _twist(d)
    if not is_type2(alg, out).ok:
        raise InconsistencyError("sign-twisted superderivation is not a type-2 map")
    return out


def transform_g(alg: SuperAlgebra, delta: GradedLinearMap) -> GradedLinearMap:
    """``x -> (-1)^{|d||x|} d(x)``, taking type-2 maps to superderivations."""
    report = is_type2(alg, delta)
    if not report.ok:
        raise MembershipError(f"map is not of type 2 (fails at basis pair {report.witness})")
    out = _twist(delta)
    if not is_type1(alg, out).ok:
        raise InconsistencyError("sign-twisted type-2 map is not a superderivation")
    return out


supercommutator_f2 = supercommutator_ops


@dataclass(frozen=True)
class TwistReport:
    ok: bool
    sign: int
    lhs: GradedLinearMap
    rhs: GradedLinearMap


def check_twist_identity(alg: SuperAlgebra, d1: GradedLinearMap, d2: GradedLinearMap) -> TwistReport:
    """Compare ``f([D1, D2])`` with ``(-1)^{|D1||D2|} [f(D1), f(D2)]``."""
    s = sign(d1.degree * d2.degree)
    lhs = transform_f(alg, supercommutator_ops(d1, d2))
    rhs = supercommutator_f2(transform_f(alg, d1), transform_f(alg, d2)).scaled(s)
    return TwistReport(lhs == rhs, s, lhs, rhs)


def _multiplier(alg: SuperAlgebra, f: GradedLinearMap, right: bool) -> tuple | None:
    # Solve [t, e_j] = f(e_j) (left) or [e_j, t] = f(e_j) (right) for t.
    n = alg.dim
    cols = []
    for i in range(n):
        ei = unit_vector(n, i)
        col = []
        for j in range(n):
            ej = unit_vector(n, j)
            col.extend(bracket(alg, ej, ei) if right else bracket(alg, ei, ej))
        cols.append(col)
    a = RatMatrix.from_columns(cols, n * n) if n else RatMatrix.zeros(0, 0)
    rhs = [f.matrix[k, j] for j in range(n) for k in range(n)]
    return solve(a, rhs)


def left_multiplier(alg: SuperAlgebra, d: GradedLinearMap) -> tuple | None:
    """Some ``t`` with ``d = adjoint_left(t)``, or ``None``."""
    return _multiplier(alg, d, right=False)


def right_multiplier(alg: SuperAlgebra, d: GradedLinearMap) -> tuple | None:
    """Some ``t`` with ``d = adjoint_right(t)``, or ``None``."""
    return _multiplier(alg, d, right=True)


@dataclass(frozen=True)
class InnerDecomposition:
    status: str  # "inner", "not inner" or "not attempted"
    multipliers: tuple = ()

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "multipliers": [None if t is None else [format_scalar(v) for v in t] for t in self.multipliers],
        }


def type2_inner_decomposition(alg: SuperAlgebra, degree: int) -> InnerDecomposition:
    """Write each type-2 basis map as a right multiplication.

    Only attempted on complete algebras, where every type-2 map is inner.
    """
    if not is_complete(alg).complete:
        return InnerDecomposition("not attempted")
    ts = tuple(right_multiplier(alg, d) for d in solve_type2(alg, degree).basis)
    if any(t is None for t in ts):
        raise InconsistencyError(f"{alg.name}: complete algebra has a non-inner type-2 map")
    return InnerDecomposition("inner", ts)
