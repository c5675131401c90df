"""Z2-graded spaces, Lie superalgebras given by structure constants, graded maps.

Basis convention: indices ``0..n0-1`` are even, ``n0..n-1`` are odd.  Every
sign in the package is computed from :meth:`SuperVectorSpace.parity`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .linalg import RatMatrix, format_scalar, solve, unit_vector, zero_vector


def sign(e: int) -> int:
    return -1 if e % 2 else 1


@dataclass(frozen=True)
class SuperVectorSpace:
    dim_even: int
    dim_odd: int
    labels: tuple | None = None

    def __post_init__(self):
        if self.dim_even < 0 or self.dim_odd < 0:
            raise ValueError("dimensions must be non-negative")
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))
            if len(self.labels) != self.dim:
                raise ValueError(f"{len(self.labels)} labels for dimension {self.dim}")

    @property
    def dim(self) -> int:
        return self.dim_even + self.dim_odd

    def parity(self, i: int) -> int:
        if not 0 <= i < self.dim:
            raise IndexError(f"basis index {i} out of range for dimension {self.dim}")
        return 0 if i < self.dim_even else 1

    def indices(self, parity: int) -> range:
        return range(self.dim_even) if parity == 0 else range(self.dim_even, self.dim)

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else f"e{i}"

    def vector_parity(self, x: Sequence) -> int | None:
        """Parity of a homogeneous vector; ``None`` for 0 or mixed vectors."""
        even = any(x[i] for i in self.indices(0))
        odd = any(x[i] for i in self.indices(1))
        if even and not odd:
            return 0
        if odd and not even:
            return 1
        return None

    def projection(self, x: Sequence, parity: int) -> tuple:
        keep = self.indices(parity)
        return tuple(Fraction(v) if i in keep else Fraction(0) for i, v in enumerate(x))


class GradingError(ValueError):
    pass


@dataclass(frozen=True)
class AxiomReport:
    ok: bool
    witness: tuple | None = None

    def to_json(self) -> dict:
        return {"pass": self.ok, "witness": list(self.witness) if self.witness else None}


@dataclass(frozen=True, eq=False)
class SuperAlgebra:
    """Finite-dimensional superalgebra with ``[e_i, e_j] = sum_k sc[i, j, k] e_k``."""

    space: SuperVectorSpace
    sc: dict
    name: str = "L"
    _table: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n, par = self.space.dim, self.space.parity
        clean = {}
        for (i, j, k), v in self.sc.items():
            if not all(0 <= t < n for t in (i, j, k)):
                raise IndexError(f"structure constant index {(i, j, k)} out of range")
            v = Fraction(v)
            if not v:
                continue
            if par(k) != (par(i) + par(j)) % 2:
                raise GradingError(f"structure constant {(i, j, k)} violates the grading")
            clean[(i, j, k)] = v
        clean = dict(sorted(clean.items()))
        table: dict = {}
        for (i, j, k), v in clean.items():
            table.setdefault((i, j), []).append((k, v))
        object.__setattr__(self, "sc", clean)
        object.__setattr__(self, "_table", {key: tuple(v) for key, v in table.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, SuperAlgebra):
            return NotImplemented
        return self.space == other.space and self.sc == other.sc and self.name == other.name

    @property
    def dim(self) -> int:
        return self.space.dim

    def parity(self, i: int) -> int:
        return self.space.parity(i)

    def basis_bracket(self, i: int, j: int) -> tuple:
        """Sparse ``[e_i, e_j]`` as a tuple of ``(k, coefficient)`` pairs."""
        return self._table.get((i, j), ())

    def basis_bracket_vector(self, i: int, j: int) -> tuple:
        out = [Fraction(0)] * self.dim
        for k, v in self.basis_bracket(i, j):
            out[k] = v
        return tuple(out)

    def renamed(self, name: str) -> SuperAlgebra:
        return SuperAlgebra(self.space, self.sc, name)


def _check_len(alg_or_space, *vectors) -> int:
    n = alg_or_space.dim
    for v in vectors:
        if len(v) != n:
            raise ValueError(f"vector of length {len(v)} in dimension {n}")
    return n


def bracket(alg: SuperAlgebra, x: Sequence, y: Sequence) -> tuple:
    n = _check_len(alg, x, y)
    out = [Fraction(0)] * n
    xs = [(i, a) for i, a in enumerate(x) if a]
    ys = [(j, b) for j, b in enumerate(y) if b]
    for i, a in xs:
        for j, b in ys:
            for k, c in alg.basis_bracket(i, j):
                out[k] += a * b * c
    return tuple(out)


def check_super_skew(alg: SuperAlgebra) -> AxiomReport:
    """Super-skewsymmetry on stored constants; lexicographically first failure."""
    par = alg.parity
    keys = set(alg.sc)
    keys |= {(j, i, k) for (i, j, k) in alg.sc}
    for i, j, k in sorted(keys):
        lhs = alg.sc.get((i, j, k), 0)
        rhs = -sign(par(i) * par(j)) * alg.sc.get((j, i, k), 0)
        if lhs != rhs:
            return AxiomReport(False, (i, j, k))
    return AxiomReport(True)


def jacobiator(alg: SuperAlgebra, i: int, j: int, k: int) -> tuple:
    """Graded Jacobi expression on the basis triple ``(e_i, e_j, e_k)``."""
    p = alg.parity
    n = alg.dim
    out = [Fraction(0)] * n
    for a, b, c, s in (
        (i, j, k, sign(p(i) * p(k))),
        (j, k, i, sign(p(j) * p(i))),
        (k, i, j, sign(p(k) * p(j))),
    ):
        for m, v in alg.basis_bracket(b, c):
            for t, w in alg.basis_bracket(a, m):
                out[t] += s * v * w
    return tuple(out)


def check_jacobi(alg: SuperAlgebra) -> AxiomReport:
    n = alg.dim
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if any(jacobiator(alg, i, j, k)):
                    return AxiomReport(False, (i, j, k))
    return AxiomReport(True)


def check_grading(space: SuperVectorSpace, sc: dict, degree: int = 0) -> AxiomReport:
    par = space.parity
    for (i, j, k) in sorted(sc):
        if sc[(i, j, k)] and par(k) != (par(i) + par(j) + degree) % 2:
            return AxiomReport(False, (i, j, k))
    return AxiomReport(True)


def is_lie_superalgebra(alg: SuperAlgebra) -> bool:
    return check_super_skew(alg).ok and check_jacobi(alg).ok


# -- graded linear maps ------------------------------------------------------


def map_block_ok(space: SuperVectorSpace, matrix: RatMatrix, degree: int) -> bool:
    par = space.parity
    n = space.dim
    return all(
        not matrix[i, j] or par(i) == (par(j) + degree) % 2
        for i in range(n) for j in range(n)
    )


@dataclass(frozen=True)
class GradedLinearMap:
    """Homogeneous map; column ``j`` of ``matrix`` is the image of ``e_j``."""

    space: SuperVectorSpace
    degree: int
    matrix: RatMatrix

    def __post_init__(self):
        n = self.space.dim
        if self.matrix.shape != (n, n):
            raise ValueError(f"matrix shape {self.matrix.shape} for dimension {n}")
        if self.degree not in (0, 1):
            raise ValueError("degree must be 0 or 1")
        if not map_block_ok(self.space, self.matrix, self.degree):
            raise GradingError(f"matrix is not homogeneous of degree {self.degree}")

    def __call__(self, x: Sequence) -> tuple:
        return self.matrix.matvec(x)

    def image(self, j: int) -> tuple:
        return self.matrix.col(j)

    @classmethod
    def identity(cls, space: SuperVectorSpace) -> GradedLinearMap:
        return cls(space, 0, RatMatrix.identity(space.dim))

    @classmethod
    def zero(cls, space: SuperVectorSpace, degree: int = 0) -> GradedLinearMap:
        return cls(space, degree, RatMatrix.zeros(space.dim, space.dim))

    def scaled(self, c) -> GradedLinearMap:
        return GradedLinearMap(self.space, self.degree, self.matrix.scaled(c))

    def __add__(self, other: GradedLinearMap) -> GradedLinearMap:
        if other.degree != self.degree:
            raise ValueError("cannot add graded maps of different degree")
        return GradedLinearMap(self.space, self.degree, self.matrix + other.matrix)

    def to_json(self) -> list:
        return [[format_scalar(v) for v in row] for row in self.matrix.tolist()]


@dataclass(frozen=True)
class GeneralLinearMap:
    even_part: GradedLinearMap
    odd_part: GradedLinearMap

    def __post_init__(self):
        if self.even_part.degree != 0 or self.odd_part.degree != 1:
            raise ValueError("even_part must have degree 0 and odd_part degree 1")

    @property
    def space(self) -> SuperVectorSpace:
        return self.even_part.space

    @property
    def matrix(self) -> RatMatrix:
        return self.even_part.matrix + self.odd_part.matrix

    def __call__(self, x: Sequence) -> tuple:
        return self.matrix.matvec(x)

    def homogeneous(self) -> GradedLinearMap | None:
        """The single nonzero graded part, or ``None`` if both parts are nonzero.

        The zero map comes back as the degree-0 zero map.
        """
        if self.odd_part.matrix.is_zero():
            return self.even_part
        if self.even_part.matrix.is_zero():
            return self.odd_part
        return None

    @classmethod
    def from_graded(cls, f: GradedLinearMap) -> GeneralLinearMap:
        zero = GradedLinearMap.zero(f.space, 1 - f.degree)
        return cls(f, zero) if f.degree == 0 else cls(zero, f)

    def to_json(self) -> list:
        return [[format_scalar(v) for v in row] for row in self.matrix.tolist()]


def apply(f: GradedLinearMap | GeneralLinearMap, x: Sequence) -> tuple:
    return f(x)


def supercommutator_ops(f: GradedLinearMap, g: GradedLinearMap) -> GradedLinearMap:
    """``[f, g] = fg - (-1)^{|f||g|} gf``."""
    if f.space != g.space:
        raise ValueError("maps act on different spaces")
    m = f.matrix @ g.matrix
    other = g.matrix @ f.matrix
    m = m + other if f.degree * g.degree else m - other
    return GradedLinearMap(f.space, (f.degree + g.degree) % 2, m)


def decompose_map(space: SuperVectorSpace, matrix: RatMatrix) -> GeneralLinearMap:
    """Split ``matrix`` into its parity-preserving and parity-reversing blocks."""
    n = space.dim
    if matrix.shape != (n, n):
        raise ValueError(f"matrix shape {matrix.shape} for dimension {n}")
    par = space.parity
    even, odd = [], []
    for i in range(n):
        for j in range(n):
            v = matrix[i, j]
            same = par(i) == par(j)
            even.append(v if same else Fraction(0))
            odd.append(Fraction(0) if same else v)
    return GeneralLinearMap(
        GradedLinearMap(space, 0, RatMatrix(n, n, tuple(even))),
        GradedLinearMap(space, 1, RatMatrix(n, n, tuple(odd))),
    )


def adjoint_left(alg: SuperAlgebra, t: Sequence) -> GeneralLinearMap:
    """Left multiplication ``y -> [t, y]``."""
    _check_len(alg, t)
    n = alg.dim
    cols = [bracket(alg, t, unit_vector(n, j)) for j in range(n)]
    return decompose_map(alg.space, RatMatrix.from_columns(cols, n) if n else RatMatrix.zeros(0, 0))


def adjoint_right(alg: SuperAlgebra, t: Sequence) -> GeneralLinearMap:
    """Right multiplication ``y -> [y, t]``."""
    _check_len(alg, t)
    n = alg.dim
    cols = [bracket(alg, unit_vector(n, j), t) for j in range(n)]
    return decompose_map(alg.space, RatMatrix.from_columns(cols, n) if n else RatMatrix.zeros(0, 0))


# -- graded bilinear maps ----------------------------------------------------


@dataclass(frozen=True, eq=False)
class GradedBilinearMap:
    """Homogeneous bilinear map with ``B(e_i, e_j) = sum_k coeffs[i, j, k] e_k``."""

    space: SuperVectorSpace
    degree: int
    coeffs: dict

    def __post_init__(self):
        if self.degree not in (0, 1):
            raise ValueError("degree must be 0 or 1")
        n = self.space.dim
        clean = {}
        for key, v in self.coeffs.items():
            if not all(0 <= t < n for t in key):
                raise IndexError(f"coefficient index {key} out of range")
            v = Fraction(v)
            if v:
                clean[tuple(key)] = v
        clean = dict(sorted(clean.items()))
        report = check_grading(self.space, clean, self.degree)
        if not report.ok:
            raise GradingError(f"coefficient {report.witness} violates degree {self.degree} grading")
        object.__setattr__(self, "coeffs", clean)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedBilinearMap):
            return NotImplemented
        return (self.space, self.degree, self.coeffs) == (other.space, other.degree, other.coeffs)

    def on_basis(self, i: int, j: int) -> tuple:
        n = self.space.dim
        out = [Fraction(0)] * n
        for k in range(n):
            v = self.coeffs.get((i, j, k))
            if v:
                out[k] = v
        return tuple(out)

    def __call__(self, x: Sequence, y: Sequence) -> tuple:
        n = _check_len(self.space, x, y)
        out = [Fraction(0)] * n
        for (i, j, k), v in self.coeffs.items():
            if x[i] and y[j]:
                out[k] += x[i] * y[j] * v
        return tuple(out)

    def scaled(self, c) -> GradedBilinearMap:
        return GradedBilinearMap(self.space, self.degree, {k: c * v for k, v in self.coeffs.items()})

    def is_zero(self) -> bool:
        return not self.coeffs

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "coeffs": [[i, j, k, format_scalar(v)] for (i, j, k), v in self.coeffs.items()],
        }


def bracket_tensor(alg: SuperAlgebra) -> GradedBilinearMap:
    return GradedBilinearMap(alg.space, 0, dict(alg.sc))


# -- algebras from bases -----------------------------------------------------


def structure_from_matrices(space: SuperVectorSpace, mats: Sequence[RatMatrix], name: str) -> SuperAlgebra:
    """Superalgebra spanned by homogeneous matrices under the supercommutator.

    ``mats[i]`` must have parity ``space.parity(i)`` as an element; the span
    must be closed, otherwise ``ValueError``.
    """
    n = space.dim
    if len(mats) != n:
        raise ValueError(f"{len(mats)} matrices for dimension {n}")
    flat = RatMatrix.from_columns([m.entries for m in mats]) if n else None
    sc = {}
    for i in range(n):
        for j in range(n):
            a, b = mats[i], mats[j]
            prod = a @ b
            other = b @ a
            c = prod + other if space.parity(i) * space.parity(j) else prod - other
            if c.is_zero():
                continue
            coords = solve(flat, c.entries)
            if coords is None:
                raise ValueError(f"bracket of basis elements {i}, {j} leaves the span")
            for k, v in enumerate(coords):
                if v:
                    sc[(i, j, k)] = v
    return SuperAlgebra(space, sc, name)


def change_basis(alg: SuperAlgebra, columns: Sequence[Sequence], space: SuperVectorSpace | None = None,
                 name: str | None = None) -> SuperAlgebra:
    """Re-express ``alg`` in the basis whose old coordinates are ``columns``.

    New basis vectors must be homogeneous and ordered even-first, matching
    ``space`` (defaults to the old space).
    """
    space = space or alg.space
    n = alg.dim
    if space.dim != n or len(columns) != n:
        raise ValueError("basis size does not match the algebra")
    for a, u in enumerate(columns):
        if alg.space.vector_parity(u) != space.parity(a):
            raise ValueError(f"new basis vector {a} is not homogeneous of parity {space.parity(a)}")
    t = RatMatrix.from_columns(columns) if n else RatMatrix.zeros(0, 0)
    sc = {}
    for a in range(n):
        for b in range(n):
            v = bracket(alg, columns[a], columns[b])
            if not any(v):
                continue
            coords = solve(t, v)
            if coords is None:
                raise ValueError("new basis is singular")
            for k, c in enumerate(coords):
                if c:
                    sc[(a, b, k)] = c
    return SuperAlgebra(space, sc, name or alg.name)


__all__ = [
    "AxiomReport", "GeneralLinearMap", "GradedBilinearMap", "GradedLinearMap", "GradingError",
    "SuperAlgebra", "SuperVectorSpace", "adjoint_left", "adjoint_right", "apply", "bracket",
    "bracket_tensor", "change_basis", "check_grading", "check_jacobi", "check_super_skew",
    "decompose_map", "is_lie_superalgebra", "jacobiator", "sign", "structure_from_matrices",
    "supercommutator_ops", "zero_vector",
]
