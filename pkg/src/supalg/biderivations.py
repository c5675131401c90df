"""Superbiderivations and linear supercommuting maps.

Two definitions of superbiderivation are supported side by side.  Both share
the first identity::

    B(x, [y, z]) = [B(x, y), z] + (-1)^{(|B|+|x|)|y|} [y, B(x, z)]

and differ in the second:

    NEW:        B([x, y], z) = (-1)^{(|B|+|z|)|y|} [B(x, z), y] + [x, B(y, z)]
    YUAN_TANG:  B([x, y], z) = (-1)^{|y||z|} [B(x, z), y] + (-1)^{|x||B|} [x, B(y, z)]

Under NEW, ``B(x, -)`` is a superderivation and ``B(-, x)`` a type-2 map for
every ``x``; in particular the bracket itself is a superbiderivation.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .graded import (
    GeneralLinearMap,
    GradedBilinearMap,
    GradedLinearMap,
    SuperAlgebra,
    SuperVectorSpace,
    bracket,
    decompose_map,
    sign,
)
from .linalg import ConstraintSystem, RatMatrix, format_scalar, parse_scalar, solve, unit_vector, vec_add
from .operators import (
    ConstraintTag,
    InconsistencyError,
    MembershipError,
    SolutionSpace,
    is_complete,
    map_unknowns,
    require_lie,
)


class BiderDefinition(str, Enum):
    NEW = "new"
    YUAN_TANG = "yuan-tang"

    @property
    def tag(self) -> ConstraintTag:
        return ConstraintTag.BIDER_NEW if self is BiderDefinition.NEW else ConstraintTag.BIDER_YT


def _signs(definition: BiderDefinition, degree: int, pa: int, pb: int, pc: int) -> tuple:
    """Signs ``(s1, s2, s3)`` of the terms in the two identities on ``(e_a, e_b, e_c)``.

    Identity 1: ``B(a,[b,c]) = [B(a,b),c] + s1 [b,B(a,c)]``.
    Identity 2: ``B([a,b],c) = s2 [B(a,c),b] + s3 [a,B(b,c)]``.
    """
    s1 = sign((degree + pa) * pb)
    if definition is BiderDefinition.NEW:
        return s1, sign((degree + pc) * pb), 1
    return s1, sign(pb * pc), sign(pa * degree)


def bilinear_unknowns(space: SuperVectorSpace, degree: int) -> list:
    """Admissible coefficient positions ``(i, j, k)`` for degree ``degree``, lexicographic."""
    par = space.parity
    n = space.dim
    return [
        (i, j, k)
        for i in range(n) for j in range(n) for k in range(n)
        if par(k) == (par(i) + par(j) + degree) % 2
    ]


def assemble_bider_constraints(alg: SuperAlgebra, degree: int, definition: BiderDefinition) -> ConstraintSystem:
    """Both identities on every ordered basis triple, one row per output coordinate.

    Rows come in lexicographic ``(identity, a, b, c, k)`` order; trivial and
    repeated rows are dropped.
    """
    if degree not in (0, 1):
        raise ValueError("degree must be 0 or 1")
    definition = BiderDefinition(definition)
    require_lie(alg)
    labels = bilinear_unknowns(alg.space, degree)
    system = ConstraintSystem(labels)
    ok = set(labels)
    n = alg.dim
    par = alg.parity
    br = alg.basis_bracket

    def add(rows, k, label, v):
        if label in ok:
            r = rows.setdefault(k, {})
            r[label] = r.get(label, 0) + v

    for a in range(n):
        for b in range(n):
            for c in range(n):
                s1, _, _ = _signs(definition, degree, par(a), par(b), par(c))
                rows: dict = {}
                for m, v in br(b, c):
                    for k in range(n):
                        add(rows, k, (a, m, k), v)
                for m in range(n):
                    for k, v in br(m, c):
                        add(rows, k, (a, b, m), -v)
                    for k, v in br(b, m):
                        add(rows, k, (a, c, m), -s1 * v)
                for k in sorted(rows):
                    system.add_row(rows[k])
    for a in range(n):
        for b in range(n):
            for c in range(n):
                _, s2, s3 = _signs(definition, degree, par(a), par(b), par(c))
                rows = {}
                for m, v in br(a, b):
                    for k in range(n):
                        add(rows, k, (m, c, k), v)
                for m in range(n):
                    for k, v in br(m, b):
                        add(rows, k, (a, c, m), -s2 * v)
                    for k, v in br(a, m):
                        add(rows, k, (b, c, m), -s3 * v)
                for k in sorted(rows):
                    system.add_row(rows[k])
    return system


def solve_biderivations(alg: SuperAlgebra, degree: int, definition: BiderDefinition) -> SolutionSpace:
    definition = BiderDefinition(definition)
    system = assemble_bider_constraints(alg, degree, definition)
    null = system.nullspace()
    basis = tuple(
        GradedBilinearMap(alg.space, degree, {lab: v for lab, v in zip(system.labels, vec) if v})
        for vec in null
    )
    return SolutionSpace(definition.tag, degree, basis, alg.name, system.n_unknowns,
                         system.n_unknowns - len(null))


@dataclass(frozen=True)
class BiderCheck:
    ok: bool
    witness: tuple | None = None  # (a, b, c) basis triple
    identity: int | None = None  # 1 or 2

    def to_json(self) -> dict:
        return {"pass": self.ok, "witness": list(self.witness) if self.witness else None,
                "identity": self.identity}


def is_biderivation(alg: SuperAlgebra, b: GradedBilinearMap, definition: BiderDefinition) -> BiderCheck:
    """Evaluate both identities on all basis triples; first failure in ``(a, b, c)`` order."""
    definition = BiderDefinition(definition)
    if b.space != alg.space:
        raise ValueError("bilinear map lives on a different space")
    n = alg.dim
    par = alg.parity
    e = [unit_vector(n, i) for i in range(n)]

    def br(x, y):
        return bracket(alg, x, y)

    for x in range(n):
        for y in range(n):
            for z in range(n):
                s1, s2, s3 = _signs(definition, b.degree, par(x), par(y), par(z))
                lhs1 = b(e[x], br(e[y], e[z]))
                rhs1 = vec_add(br(b(e[x], e[y]), e[z]), [s1 * v for v in br(e[y], b(e[x], e[z]))])
                if lhs1 != rhs1:
                    return BiderCheck(False, (x, y, z), 1)
                lhs2 = b(br(e[x], e[y]), e[z])
                rhs2 = vec_add([s2 * v for v in br(b(e[x], e[z]), e[y])],
                               [s3 * v for v in br(e[x], b(e[y], e[z]))])
                if lhs2 != rhs2:
                    return BiderCheck(False, (x, y, z), 2)
    return BiderCheck(True)


@dataclass(frozen=True)
class SkewCheck:
    ok: bool
    witness: tuple | None = None  # (i, j)


def is_super_skewsymmetric(b: GradedBilinearMap) -> SkewCheck:
    """``B(e_i, e_j) = -(-1)^{|i||j|} B(e_j, e_i)`` on all basis pairs."""
    par = b.space.parity
    n = b.space.dim
    for i in range(n):
        for j in range(n):
            s = -sign(par(i) * par(j))
            if any(b.coeffs.get((i, j, k), 0) != s * b.coeffs.get((j, i, k), 0) for k in range(n)):
                return SkewCheck(False, (i, j))
    return SkewCheck(True)


@dataclass(frozen=True)
class PhiPsiPair:
    phi: GradedLinearMap
    psi: GradedLinearMap
    degree: int

    def to_json(self) -> dict:
        return {"degree": self.degree, "phi": self.phi.to_json(), "psi": self.psi.to_json()}


def _left_solve_system(alg: SuperAlgebra, right: bool) -> RatMatrix:
    # Column i is the flattening over (j, k) of [e_i, e_j] (or [e_j, e_i]).
    n = alg.dim
    cols = []
    for i in range(n):
        col = []
        for j in range(n):
            col.extend(alg.basis_bracket_vector(j, i) if right else alg.basis_bracket_vector(i, j))
        cols.append(col)
    return RatMatrix.from_columns(cols, n * n)


def extract_phi_psi(alg: SuperAlgebra, b: GradedBilinearMap) -> PhiPsiPair:
    """Maps with ``B(x, y) = [phi(x), y] = [x, psi(y)]`` on a complete algebra."""
    cert = is_complete(alg)
    if not cert.complete:
        raise ValueError(f"{alg.name} is not complete (center_dim={cert.center_dim}, "
                         f"der={cert.der_dims}, ider={cert.ider_dims})")
    check = is_biderivation(alg, b, BiderDefinition.NEW)
    if not check.ok:
        raise MembershipError(f"not a superbiderivation: identity {check.identity} fails at {check.witness}")
    n = alg.dim
    left = _left_solve_system(alg, right=False)
    right = _left_solve_system(alg, right=True)
    phi_cols, psi_cols = [], []
    for i in range(n):
        u = solve(left, [x for j in range(n) for x in b.on_basis(i, j)])
        v = solve(right, [x for j in range(n) for x in b.on_basis(j, i)])
        if u is None or v is None:
            raise InconsistencyError(f"{alg.name}: no multiplier for B at basis vector {i}")
        phi_cols.append(u)
        psi_cols.append(v)
    try:
        phi = GradedLinearMap(alg.space, b.degree, RatMatrix.from_columns(phi_cols, n))
        psi = GradedLinearMap(alg.space, b.degree, RatMatrix.from_columns(psi_cols, n))
    except ValueError as exc:
        raise InconsistencyError(f"{alg.name}: multipliers are not homogeneous of degree {b.degree}") from exc
    for i in range(n):
        for j in range(n):
            ei, ej = unit_vector(n, i), unit_vector(n, j)
            bij = b.on_basis(i, j)
            if bracket(alg, phi(ei), ej) != bij or bracket(alg, ei, psi(ej)) != bij:
                raise InconsistencyError(f"{alg.name}: factorization fails at {(i, j)}")
    return PhiPsiPair(phi, psi, b.degree)


# -- linear supercommuting maps ---------------------------------------------


def supercommuting_system(alg: SuperAlgebra, degree: int | None = None) -> ConstraintSystem:
    """``[f(e_i), e_j] = [e_i, f(e_j)]`` over all basis pairs.

    With ``degree=None`` every matrix entry is unknown; otherwise only the
    entries of a degree-``degree`` map.
    """
    n = alg.dim
    if degree is None:
        labels = [(i, j) for i in range(n) for j in range(n)]
    else:
        labels = map_unknowns(alg.space, degree)
    system = ConstraintSystem(labels)
    ok = set(labels)
    for i in range(n):
        for j in range(n):
            rows: dict = {}
            for m in range(n):
                if (m, i) in ok:
                    for k, v in alg.basis_bracket(m, j):
                        r = rows.setdefault(k, {})
                        r[(m, i)] = r.get((m, i), 0) + v
                if (m, j) in ok:
                    for k, v in alg.basis_bracket(i, m):
                        r = rows.setdefault(k, {})
                        r[(m, j)] = r.get((m, j), 0) - v
            for k in sorted(rows):
                system.add_row(rows[k])
    return system


def solve_supercommuting_new(alg: SuperAlgebra, degree: int | None = None) -> SolutionSpace:
    """Canonical basis of the linear supercommuting maps, as :class:`GeneralLinearMap`.

    The system splits along the parity blocks, so each basis element is
    homogeneous even though no homogeneity is imposed.
    """
    require_lie(alg)
    system = supercommuting_system(alg, degree)
    null = system.nullspace()
    n = alg.dim
    basis = []
    for vec in null:
        entries = [Fraction(0)] * (n * n)
        for (i, j), v in zip(system.labels, vec):
            entries[i * n + j] = v
        basis.append(decompose_map(alg.space, RatMatrix(n, n, tuple(entries))))
    return SolutionSpace(ConstraintTag.SUPERCOMM_NEW, "both" if degree is None else degree,
                         tuple(basis), alg.name, system.n_unknowns, system.n_unknowns - len(null))


def _as_matrix(f) -> RatMatrix:
    return f.matrix if hasattr(f, "matrix") else f


def is_supercommuting_new(alg: SuperAlgebra, f) -> tuple | None:
    """``None`` if ``[f(x), y] = [x, f(y)]`` on all basis pairs, else the first failing pair."""
    m = _as_matrix(f)
    n = alg.dim
    for i in range(n):
        for j in range(n):
            if bracket(alg, m.col(i), unit_vector(n, j)) != bracket(alg, unit_vector(n, i), m.col(j)):
                return (i, j)
    return None


@dataclass(frozen=True)
class FanDaiReport:
    ok: bool
    witness: tuple | None = None
    self_bracket: tuple | None = None

    def to_json(self) -> dict:
        def fmt(v):
            return None if v is None else [format_scalar(a) for a in v]

        return {"pass": self.ok, "witness": fmt(self.witness), "self_bracket": fmt(self.self_bracket)}


def is_supercommuting_fan_dai(alg: SuperAlgebra, f) -> FanDaiReport:
    """Decide ``[f(x), x] = 0`` for every homogeneous ``x``.

    On a parity class the map ``x -> [f(x), x]`` is a quadratic form, so it
    vanishes iff every diagonal term ``[f(e_i), e_i]`` and every polarized
    term ``[f(e_i), e_j] + [f(e_j), e_i]`` does.  On failure the witness is
    the sum of all basis vectors of the failing class when that already
    works, otherwise ``e_i`` for a diagonal failure or ``e_i + e_j``.
    """
    m = _as_matrix(f)
    n = alg.dim
    e = [unit_vector(n, i) for i in range(n)]

    def q(i, j):
        return bracket(alg, m.col(i), e[j])

    def self_bracket(x):
        return bracket(alg, m.matvec(x), x)

    for parity in (0, 1):
        idx = list(alg.space.indices(parity))
        failure = None
        for i in idx:
            if any(q(i, i)):
                failure = e[i]
                break
            for j in idx:
                if j > i and any(vec_add(q(i, j), q(j, i))):
                    failure = vec_add(e[i], e[j])
                    break
            if failure is not None:
                break
        if failure is None:
            continue
        total = tuple(Fraction(int(k in idx)) for k in range(n))
        for x in (total, failure):
            sb = self_bracket(x)
            if any(sb):
                return FanDaiReport(False, x, sb)
        raise InconsistencyError("polarization failed but no witness found")
    return FanDaiReport(True)


def supercommuting_to_biderivation(alg: SuperAlgebra, f) -> GradedBilinearMap:
    """``F(x, y) = [f(x), y]`` for a homogeneous supercommuting ``f``."""
    if isinstance(f, RatMatrix):
        f = decompose_map(alg.space, f)
    if isinstance(f, GeneralLinearMap):
        g = f.homogeneous()
        if g is None:
            raise MembershipError("supercommuting map is not homogeneous")
        f = g
    bad = is_supercommuting_new(alg, f)
    if bad is not None:
        raise MembershipError(f"map is not supercommuting (fails at basis pair {bad})")
    n = alg.dim
    coeffs = {}
    for i in range(n):
        for j in range(n):
            for k, v in enumerate(bracket(alg, f.image(i), unit_vector(n, j))):
                if v:
                    coeffs[(i, j, k)] = v
    return GradedBilinearMap(alg.space, f.degree, coeffs)


def bilinear_from_json(space: SuperVectorSpace, data: dict) -> GradedBilinearMap:
    coeffs = {}
    for entry in data["coeffs"]:
        i, j, k, v = entry
        if (i, j, k) in coeffs:
            raise ValueError(f"duplicate coefficient {(i, j, k)}")
        coeffs[(int(i), int(j), int(k))] = parse_scalar(v)
    return GradedBilinearMap(space, int(data["degree"]), coeffs)


def coefficient_vector(b: GradedBilinearMap, labels: Sequence) -> tuple:
    return tuple(b.coeffs.get(lab, Fraction(0)) for lab in labels)
