"""Exact dense linear algebra over the rationals.

Scalars are :class:`fractions.Fraction`, which already keeps every value
reduced with a positive denominator.  Everything here is deterministic: the
nullspace basis follows the reduced-row-echelon free-column convention so
that downstream solution spaces can be compared bit for bit.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Scalar = Fraction
Vector = tuple  # tuple[Fraction, ...]

_SCALAR_RE = re.compile(r"^(-?)(0|[1-9][0-9]*)(?:/([1-9][0-9]*))?$")


class ScalarFormatError(ValueError):
    pass


def parse_scalar(text: str) -> Fraction:
    """Parse the canonical ``"p/q"`` form, rejecting anything not normalized.

    ``"3"`` and ``"-1/2"`` are accepted; ``"2/4"``, ``"3/1"``, ``"-0"`` and
    ``"1/-2"`` are not.
    """
    if not isinstance(text, str):
        raise ScalarFormatError(f"scalar must be a string, got {text!r}")
    m = _SCALAR_RE.match(text)
    if m is None:
        raise ScalarFormatError(f"malformed rational {text!r}")
    sign, num, den = m.groups()
    p, q = int(num), int(den) if den is not None else 1
    if den is not None and (q == 1 or gcd(p, q) != 1):
        raise ScalarFormatError(f"rational {text!r} is not in lowest terms")
    if p == 0 and (sign or den is not None):
        raise ScalarFormatError(f"zero must be written as '0', got {text!r}")
    return Fraction(-p if sign else p, q)


def format_scalar(value) -> str:
    return str(Fraction(value))


def as_vector(values: Iterable) -> tuple:
    return tuple(Fraction(v) for v in values)


def zero_vector(n: int) -> tuple:
    return (Fraction(0),) * n


def unit_vector(n: int, i: int) -> tuple:
    return tuple(Fraction(1) if k == i else Fraction(0) for k in range(n))


def vec_add(x: Sequence, y: Sequence) -> tuple:
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} vs {len(y)}")
    return tuple(a + b for a, b in zip(x, y))


def vec_scale(c, x: Sequence) -> tuple:
    c = Fraction(c)
    return tuple(c * a for a in x)


def is_zero(x: Sequence) -> bool:
    return not any(x)


@dataclass(frozen=True)
class RatMatrix:
    """Immutable rows x cols matrix with row-major Fraction entries."""

    rows: int
    cols: int
    entries: tuple = field(repr=False)

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix shape")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> RatMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(Fraction(v) for r in rows for v in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> RatMatrix:
        return cls.from_rows(columns, rows).transpose()

    @classmethod
    def zeros(cls, rows: int, cols: int) -> RatMatrix:
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> RatMatrix:
        return cls(n, n, tuple(Fraction(int(i == j)) for i in range(n) for j in range(n)))

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return self.entries[j::self.cols] if self.cols else ()

    def tolist(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def transpose(self) -> RatMatrix:
        return RatMatrix(
            self.cols, self.rows,
            tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)),
        )

    def __add__(self, other: RatMatrix) -> RatMatrix:
        self._same_shape(other)
        return RatMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: RatMatrix) -> RatMatrix:
        self._same_shape(other)
        return RatMatrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> RatMatrix:
        return RatMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def scaled(self, c) -> RatMatrix:
        c = Fraction(c)
        return RatMatrix(self.rows, self.cols, tuple(c * a for a in self.entries))

    def __matmul__(self, other: RatMatrix) -> RatMatrix:
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        ocols = [other.col(j) for j in range(other.cols)]
        for i in range(self.rows):
            r = self.row(i)
            nz = [(k, a) for k, a in enumerate(r) if a]
            for c in ocols:
                out.append(sum((a * c[k] for k, a in nz), Fraction(0)))
        return RatMatrix(self.rows, other.cols, tuple(out))

    def matvec(self, x: Sequence) -> tuple:
        if len(x) != self.cols:
            raise ValueError(f"vector of length {len(x)} for matrix with {self.cols} columns")
        nz = [(k, Fraction(v)) for k, v in enumerate(x) if v]
        return tuple(
            sum((self.entries[i * self.cols + k] * v for k, v in nz), Fraction(0))
            for i in range(self.rows)
        )

    def _same_shape(self, other: RatMatrix) -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")


@dataclass(frozen=True)
class RREF:
    matrix: RatMatrix
    pivots: tuple
    rank: int
    ops: tuple = ()


def _gauss_jordan(grid: list, ncols: int, ops: list | None = None) -> list:
    """In-place Gauss-Jordan elimination on a list of Fraction rows.

    Zero entries are skipped, which keeps the wide, sparse constraint systems
    produced by the solvers tractable.
    """
    nrows = len(grid)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = r
        while p < nrows and not grid[p][c]:
            p += 1
        if p == nrows:
            continue
        if p != r:
            grid[p], grid[r] = grid[r], grid[p]
            if ops is not None:
                ops.append(("swap", r, p))
        prow = grid[r]
        lead = prow[c]
        if lead != 1:
            inv = 1 / lead
            for j in range(c, ncols):
                if prow[j]:
                    prow[j] *= inv
            if ops is not None:
                ops.append(("scale", r, inv))
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i == r:
                continue
            row = grid[i]
            f = row[c]
            if f:
                for j in nz:
                    row[j] -= f * prow[j]
                if ops is not None:
                    ops.append(("add", i, r, -f))
        pivots.append(c)
        r += 1
    return pivots


def rref(m: RatMatrix, record_ops: bool = False) -> RREF:
    """Reduced row echelon form of ``m``.

    With ``record_ops`` the elementary row operations are returned as tuples
    ``("swap", i, j)``, ``("scale", i, c)`` (row i *= c) and
    ``("add", i, j, c)`` (row i += c * row j), in the order applied.
    """
    grid = [list(m.row(i)) for i in range(m.rows)]
    ops = [] if record_ops else None
    pivots = _gauss_jordan(grid, m.cols, ops)
    out = RatMatrix(m.rows, m.cols, tuple(v for row in grid for v in row))
    return RREF(out, tuple(pivots), len(pivots), tuple(ops or ()))


def rank(m: RatMatrix) -> int:
    return rref(m).rank


def _nullspace_from_rref(grid: list, pivots: Sequence[int], ncols: int) -> list:
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for r, pc in enumerate(pivots):
            a = grid[r][free]
            if a:
                v[pc] = -a
        basis.append(tuple(v))
    return basis


def nullspace(m: RatMatrix) -> list:
    """Canonical basis of the right nullspace, one vector per free column."""
    grid = [list(m.row(i)) for i in range(m.rows)]
    pivots = _gauss_jordan(grid, m.cols)
    return _nullspace_from_rref(grid, pivots, m.cols)


def solve(a: RatMatrix, b: Sequence) -> tuple | None:
    """One exact solution of ``a x = b`` with free variables set to zero.

    Returns ``None`` when the system is inconsistent.
    """
    if a.rows != len(b):
        raise ValueError(f"matrix has {a.rows} rows but right-hand side has length {len(b)}")
    grid = [list(a.row(i)) + [Fraction(b[i])] for i in range(a.rows)]
    pivots = _gauss_jordan(grid, a.cols + 1)
    if pivots and pivots[-1] == a.cols:
        return None
    x = [Fraction(0)] * a.cols
    for r, pc in enumerate(pivots):
        x[pc] = grid[r][a.cols]
    return tuple(x)


def row_space_basis(vectors: Sequence[Sequence], ncols: int) -> list:
    """Nonzero RREF rows of the matrix whose rows are ``vectors``."""
    grid = [[Fraction(v) for v in vec] for vec in vectors]
    pivots = _gauss_jordan(grid, ncols)
    return [tuple(grid[r]) for r in range(len(pivots))]


def in_span(basis: Sequence[Sequence], v: Sequence, ncols: int) -> bool:
    if not basis:
        return is_zero(v)
    return len(row_space_basis(list(basis) + [v], ncols)) == len(row_space_basis(basis, ncols))


@dataclass
class ConstraintSystem:
    """Homogeneous linear system with labelled unknowns.

    Rows are accumulated sparsely; all-zero rows and rows proportional to one
    already present are dropped on insertion, keeping first-occurrence order.
    """

    labels: tuple
    rows: list = field(default_factory=list)
    _seen: set = field(default_factory=set, repr=False)
    _index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.labels = tuple(self.labels)
        self._index = {lab: i for i, lab in enumerate(self.labels)}

    @property
    def n_unknowns(self) -> int:
        return len(self.labels)

    def index(self, label) -> int:
        return self._index[label]

    def add_row(self, coeffs: dict) -> None:
        """Add ``sum coeffs[label] * x[label] = 0``; labels not in the system must carry 0."""
        row = {}
        for lab, v in coeffs.items():
            if not v:
                continue
            try:
                i = self._index[lab]
            except KeyError:
                raise KeyError(f"unknown {lab!r} is not admissible in this system") from None
            row[i] = row.get(i, 0) + v
        row = {i: Fraction(v) for i, v in row.items() if v}
        if not row:
            return
        lead = row[min(row)]
        key = tuple(sorted((i, v / lead) for i, v in row.items()))
        if key in self._seen:
            return
        self._seen.add(key)
        self.rows.append(row)

    def matrix(self) -> RatMatrix:
        n = len(self.labels)
        entries = []
        zero = Fraction(0)
        for row in self.rows:
            dense = [zero] * n
            for i, v in row.items():
                dense[i] = v
            entries.extend(dense)
        return RatMatrix(len(self.rows), n, tuple(entries))

    def nullspace(self) -> list:
        return nullspace(self.matrix())

    def rank(self) -> int:
        return rank(self.matrix())
