"""Independent re-verification routines.

Nothing here touches the constraint assembly or the Gauss-Jordan code: the
identities are re-evaluated from a dense structure-constant tensor with their
own loops, and ranks come from fraction-free (Bareiss) elimination over the
integers.  They exist to cross-check the solvers.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .graded import SuperAlgebra


def bareiss_rank(rows) -> int:
    """Rank via fraction-free elimination; rows may hold any rationals."""
    mat = []
    for r in rows:
        r = [Fraction(v) for v in r]
        den = lcm(*(v.denominator for v in r)) if r else 1
        mat.append([int(v * den) for v in r])
    if not mat:
        return 0
    m, n = len(mat), len(mat[0])
    prev = 1
    rank = 0
    for c in range(n):
        if rank == m:
            break
        piv = next((i for i in range(rank, m) if mat[i][c]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        p = mat[rank][c]
        for i in range(rank + 1, m):
            a = mat[i][c]
            row = mat[i]
            top = mat[rank]
            for j in range(c, n):
                row[j] = (p * row[j] - a * top[j]) // prev
        prev = p
        rank += 1
    return rank


class DenseAlgebra:
    """Structure constants as a dense ``n x n x n`` tensor with explicit loops."""

    def __init__(self, alg: SuperAlgebra):
        n = self.n = alg.dim
        self.p = [alg.parity(i) for i in range(n)]
        self.c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        for (i, j, k), v in alg.sc.items():
            self.c[i][j][k] = v

    def br(self, x, y):
        n = self.n
        out = [Fraction(0)] * n
        for i in range(n):
            if not x[i]:
                continue
            for j in range(n):
                if not y[j]:
                    continue
                w = x[i] * y[j]
                cij = self.c[i][j]
                for k in range(n):
                    if cij[k]:
                        out[k] += w * cij[k]
        return out

    def e(self, i):
        return [Fraction(int(k == i)) for k in range(self.n)]


def _apply(matrix, x):
    n = len(x)
    return [sum((matrix[i][j] * x[j] for j in range(n)), Fraction(0)) for i in range(n)]


def _bil(coeffs, n, x, y):
    out = [Fraction(0)] * n
    for (i, j, k), v in coeffs.items():
        out[k] += x[i] * y[j] * v
    return out


def _neg1(e):
    return -1 if e % 2 else 1


def verify_linear_map(alg: SuperAlgebra, matrix, degree: int, kind: int) -> bool:
    """Type-1 (superderivation) or type-2 identity on every basis pair."""
    d = DenseAlgebra(alg)
    n = d.n
    for a in range(n):
        for b in range(n):
            x, y = d.e(a), d.e(b)
            lhs = _apply(matrix, d.br(x, y))
            t1 = d.br(_apply(matrix, x), y)
            t2 = d.br(x, _apply(matrix, y))
            if kind == 1:
                s = _neg1(degree * d.p[a])
                rhs = [u + s * v for u, v in zip(t1, t2)]
            else:
                s = _neg1(degree * d.p[b])
                rhs = [s * u + v for u, v in zip(t1, t2)]
            if lhs != rhs:
                return False
    return True


def verify_biderivation(alg: SuperAlgebra, coeffs: dict, degree: int, definition: str) -> bool:
    """Both defining identities of ``definition`` ("new" or "yuan-tang") on all basis triples."""
    d = DenseAlgebra(alg)
    n, p = d.n, d.p

    def b(x, y):
        return _bil(coeffs, n, x, y)

    for a in range(n):
        for bb in range(n):
            for c in range(n):
                x, y, z = d.e(a), d.e(bb), d.e(c)
                first = [u + _neg1((degree + p[a]) * p[bb]) * v
                         for u, v in zip(d.br(b(x, y), z), d.br(y, b(x, z)))]
                if b(x, d.br(y, z)) != first:
                    return False
                t1 = d.br(b(x, z), y)
                t2 = d.br(x, b(y, z))
                if definition == "new":
                    second = [_neg1((degree + p[c]) * p[bb]) * u + v for u, v in zip(t1, t2)]
                else:
                    second = [_neg1(p[bb] * p[c]) * u + _neg1(p[a] * degree) * v for u, v in zip(t1, t2)]
                if b(d.br(x, y), z) != second:
                    return False
    return True


def verify_supercommuting(alg: SuperAlgebra, matrix) -> bool:
    d = DenseAlgebra(alg)
    for i in range(d.n):
        for j in range(d.n):
            x, y = d.e(i), d.e(j)
            if d.br(_apply(matrix, x), y) != d.br(x, _apply(matrix, y)):
                return False
    return True
