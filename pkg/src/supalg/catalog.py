"""Named Lie superalgebras in fixed bases, plus JSON load/save.

Catalog ids (also usable as ``catalog:<id>`` on the command line):

=====================  =====================================================
``example_2dim``       basis ``[x, v]``, only ``[v, v] = x``
``hs<n>``              Heisenberg superalgebra, basis ``[c, x1..xn]``
``der_hs<n>``          superderivations of ``hs<n>`` from the bracket table
``der_hs_solver<n>``   the same algebra rebuilt from the derivation solver
``sl12``               sl(1|2) from 3x3 supermatrices
``abelian<p>_<q>``     zero bracket on a (p|q)-dimensional space
=====================  =====================================================
"""

from __future__ import annotations

import json
import random
import re
from fractions import Fraction
from pathlib import Path

from .graded import (
    GradingError,
    SuperAlgebra,
    SuperVectorSpace,
    change_basis,
    check_jacobi,
    check_super_skew,
    structure_from_matrices,
)
from .linalg import RatMatrix, ScalarFormatError, format_scalar, parse_scalar, rank, solve
from .operators import solve_type1


class AlgebraFileError(ValueError):
    pass


def example_2dim() -> SuperAlgebra:
    space = SuperVectorSpace(1, 1, ("x", "v"))
    return SuperAlgebra(space, {(1, 1, 0): 1}, "example_2dim")


def heisenberg(n: int) -> SuperAlgebra:
    if n < 1:
        raise ValueError("Heisenberg superalgebra needs n >= 1")
    space = SuperVectorSpace(1, n, ("c",) + tuple(f"x{i}" for i in range(1, n + 1)))
    return SuperAlgebra(space, {(i, i, 0): 1 for i in range(1, n + 1)}, f"hs{n}")


def _b_pairs(n: int) -> list:
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def _der_hs_space(n: int) -> SuperVectorSpace:
    sep = "" if n < 10 else ","
    labels = ("A",) + tuple(f"B{i}{sep}{j}" for i, j in _b_pairs(n)) + tuple(f"C{i}" for i in range(1, n + 1))
    return SuperVectorSpace(1 + n * (n - 1) // 2, n, labels)


def der_heisenberg(n: int) -> SuperAlgebra:
    """Superderivation algebra of ``hs<n>`` in the basis ``[A, B_ij (i<j), C_i]``.

    Nonzero brackets::

        [A, C_i] = C_i
        [B_ij, B_kl] = d_jk B_il + d_il B_jk + d_jl B_ki + d_ki B_lj
        [B_ij, C_k] = d_kj C_i - d_ki C_j

    with ``B_ji = -B_ij`` and ``B_ii = 0``.
    """
    if n < 2:
        raise ValueError("der_heisenberg needs n >= 2")
    space = _der_hs_space(n)
    pairs = _b_pairs(n)
    b_index = {p: 1 + t for t, p in enumerate(pairs)}
    n0 = space.dim_even

    def b_vec(i, j):
        # B_ij as (index, sign); None for B_ii = 0.
        if i == j:
            return None
        return (b_index[(i, j)], 1) if i < j else (b_index[(j, i)], -1)

    def c_idx(i):
        return n0 + i - 1

    sc: dict = {}

    def put(i, j, k, v):
        if v:
            sc[(i, j, k)] = sc.get((i, j, k), 0) + v

    for i in range(1, n + 1):
        put(0, c_idx(i), c_idx(i), 1)
        put(c_idx(i), 0, c_idx(i), -1)

    def d(a, b):
        return int(a == b)

    for (i, j) in pairs:
        for (k, l) in pairs:
            for coeff, (p, q) in ((d(j, k), (i, l)), (d(i, l), (j, k)), (d(j, l), (k, i)), (d(k, i), (l, j))):
                bv = b_vec(p, q)
                if coeff and bv:
                    put(b_index[(i, j)], b_index[(k, l)], bv[0], coeff * bv[1])
        for k in range(1, n + 1):
            put(b_index[(i, j)], c_idx(k), c_idx(i), d(k, j))
            put(b_index[(i, j)], c_idx(k), c_idx(j), -d(k, i))
            put(c_idx(k), b_index[(i, j)], c_idx(i), -d(k, j))
            put(c_idx(k), b_index[(i, j)], c_idx(j), d(k, i))
    return SuperAlgebra(space, {key: v for key, v in sc.items() if v}, f"der_hs{n}")


def heisenberg_derivation_matrices(n: int) -> list:
    """Matrices of ``A, B_ij, C_i`` acting on ``hs<n>`` in its basis ``[c, x1..xn]``."""
    size = n + 1

    def unit(r, c):
        e = [0] * (size * size)
        e[r * size + c] = 1
        return e

    def mat(entries):
        return RatMatrix(size, size, tuple(Fraction(v) for v in entries))

    mats = [mat([2 if (r == c == 0) else int(r == c) for r in range(size) for c in range(size)])]
    for i, j in _b_pairs(n):
        mats.append(mat([a - b for a, b in zip(unit(i, j), unit(j, i))]))
    for i in range(1, n + 1):
        mats.append(mat(unit(0, i)))
    return mats


def der_heisenberg_via_solver(n: int) -> SuperAlgebra:
    """Rebuild ``der_hs<n>`` from the solved derivations of ``hs<n>``.

    The solver basis is closed under the supercommutator to get structure
    constants, which are then rewritten in the ``A, B_ij, C_i`` basis.
    """
    if n < 2:
        raise ValueError("der_heisenberg_via_solver needs n >= 2")
    hs = heisenberg(n)
    even = solve_type1(hs, 0).basis
    odd = solve_type1(hs, 1).basis
    solver_space = SuperVectorSpace(len(even), len(odd))
    solver_alg = structure_from_matrices(solver_space, [d.matrix for d in even + odd], f"der_hs_solver{n}")
    flat = RatMatrix.from_columns([d.matrix.entries for d in even + odd])
    columns = []
    for m in heisenberg_derivation_matrices(n):
        coords = solve(flat, m.entries)
        if coords is None:
            raise RuntimeError(f"canonical derivation is outside the solved space for n={n}")
        columns.append(coords)
    space = _der_hs_space(n)
    if space.dim_even != len(even) or space.dim_odd != len(odd):
        raise RuntimeError("solved derivation dimensions differ from the canonical basis")
    try:
        return change_basis(solver_alg, columns, space, f"der_hs_solver{n}")
    except ValueError as exc:
        raise RuntimeError(f"basis change to A/B/C is singular for n={n}") from exc


def sl12_matrices() -> list:
    """``E1..E4`` (even) then ``F1..F4`` (odd), as 3x3 supermatrices."""

    def m(*pos, diag=None):
        e = [0] * 9
        for r, c in pos:
            e[r * 3 + c] = 1
        if diag:
            for k, v in enumerate(diag):
                e[k * 4] = v
        return RatMatrix(3, 3, tuple(Fraction(v) for v in e))

    return [
        m(diag=(1, 0, 1)), m(diag=(0, 1, -1)), m((1, 2)), m((2, 1)),
        m((0, 1)), m((0, 2)), m((1, 0)), m((2, 0)),
    ]


def sl12() -> SuperAlgebra:
    mats = sl12_matrices()
    for a in mats:
        if a[0, 0] - a[1, 1] - a[2, 2]:
            raise RuntimeError("sl(1|2) basis matrix has nonzero supertrace")
    space = SuperVectorSpace(4, 4, ("E1", "E2", "E3", "E4", "F1", "F2", "F3", "F4"))
    try:
        return structure_from_matrices(space, mats, "sl12")
    except ValueError as exc:
        raise RuntimeError("sl(1|2) basis is not closed under the supercommutator") from exc


def abelian(n0: int, n1: int) -> SuperAlgebra:
    return SuperAlgebra(SuperVectorSpace(n0, n1), {}, f"abelian{n0}_{n1}")


_ID_RE = re.compile(r"^(example_2dim|sl12|hs(\d+)|der_hs(\d+)|der_hs_solver(\d+)|abelian(\d+)_(\d+))$")

CATALOG_DESCRIPTIONS = {
    "example_2dim": "(1|1) algebra with [v,v]=x separating the two biderivation definitions",
    "hs<n>": "Heisenberg superalgebra (1|n), [x_i,x_j]=delta_ij c",
    "der_hs<n>": "superderivations of hs<n> from the A/B_ij/C_i bracket table (n>=2)",
    "der_hs_solver<n>": "superderivations of hs<n> rebuilt from the derivation solver (n>=2)",
    "sl12": "sl(1|2) from 3x3 supermatrices",
    "abelian<p>_<q>": "zero bracket on a (p|q)-dimensional space",
}


def from_id(ident: str) -> SuperAlgebra:
    m = _ID_RE.match(ident)
    if m is None:
        raise KeyError(f"unknown catalog id {ident!r}")
    _, hs, der, der_solver, p, q = m.groups()
    if ident == "example_2dim":
        return example_2dim()
    if ident == "sl12":
        return sl12()
    if hs:
        return heisenberg(int(hs))
    if der:
        return der_heisenberg(int(der))
    if der_solver:
        return der_heisenberg_via_solver(int(der_solver))
    return abelian(int(p), int(q))


def standard_entries() -> list:
    """The algebras the acceptance checks quantify over as "every catalog algebra"."""
    return (
        [example_2dim()]
        + [heisenberg(n) for n in range(1, 6)]
        + [der_heisenberg(n) for n in range(2, 5)]
        + [sl12(), abelian(3, 2)]
    )


# -- files -------------------------------------------------------------------


def to_json(alg: SuperAlgebra) -> dict:
    space = alg.space
    return {
        "name": alg.name,
        "dim_even": space.dim_even,
        "dim_odd": space.dim_odd,
        "labels": [space.label(i) for i in range(space.dim)],
        "brackets": [[i, j, k, format_scalar(v)] for (i, j, k), v in alg.sc.items()],
    }


def dumps(alg: SuperAlgebra) -> str:
    d = to_json(alg)
    head = json.dumps({k: d[k] for k in ("name", "dim_even", "dim_odd", "labels")})[:-1]
    rows = ",\n    ".join(json.dumps(r) for r in d["brackets"])
    body = f'"brackets": [\n    {rows}\n  ]' if rows else '"brackets": []'
    return head + ",\n  " + body + "\n}\n"


def from_json(data) -> SuperAlgebra:
    if not isinstance(data, dict):
        raise AlgebraFileError("algebra file must contain a JSON object")
    try:
        n0, n1 = data["dim_even"], data["dim_odd"]
        raw = data["brackets"]
    except KeyError as exc:
        raise AlgebraFileError(f"missing field {exc.args[0]!r}") from None
    if not (isinstance(n0, int) and isinstance(n1, int)) or n0 < 0 or n1 < 0:
        raise AlgebraFileError("dim_even and dim_odd must be non-negative integers")
    labels = data.get("labels")
    try:
        space = SuperVectorSpace(n0, n1, tuple(labels) if labels else None)
    except ValueError as exc:
        raise AlgebraFileError(str(exc)) from None
    sc = {}
    for pos, entry in enumerate(raw):
        if not (isinstance(entry, list) and len(entry) == 4 and all(isinstance(t, int) for t in entry[:3])):
            raise AlgebraFileError(f"brackets[{pos}]: expected [i, j, k, \"p/q\"], got {entry!r}")
        i, j, k, text = entry
        try:
            v = parse_scalar(text)
        except ScalarFormatError as exc:
            raise AlgebraFileError(f"brackets[{pos}]: {exc}") from None
        if not v:
            raise AlgebraFileError(f"brackets[{pos}]: zero structure constants must be omitted")
        if (i, j, k) in sc:
            raise AlgebraFileError(f"brackets[{pos}]: duplicate triple {(i, j, k)}")
        sc[(i, j, k)] = v
    try:
        return SuperAlgebra(space, sc, data.get("name", "L"))
    except GradingError as exc:
        raise AlgebraFileError(f"grading violation: {exc}") from None
    except IndexError as exc:
        raise AlgebraFileError(str(exc)) from None


def loads(text: str) -> SuperAlgebra:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AlgebraFileError(f"parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return from_json(data)


def load(path) -> SuperAlgebra:
    return loads(Path(path).read_text())


def save(alg: SuperAlgebra, path) -> None:
    Path(path).write_text(dumps(alg))


# -- random test algebras ----------------------------------------------------


def random_lie_superalgebra(seed: int, max_dim: int = 4, max_tries: int = 10_000) -> SuperAlgebra:
    """A seeded random Lie superalgebra of dimension 1..``max_dim``.

    A few random grading-valid super-skew brackets are drawn until the graded
    Jacobi identity holds, then the basis is scrambled by a random invertible
    parity-preserving change of basis.
    """
    rng = random.Random(seed)
    for _ in range(max_tries):
        n = rng.randint(1, max_dim)
        n0 = rng.randint(0, n)
        space = SuperVectorSpace(n0, n - n0)
        par = space.parity
        sc: dict = {}
        for _ in range(rng.randint(1, 3)):
            i, j = rng.randrange(n), rng.randrange(n)
            if i == j and par(i) == 0:
                continue
            targets = list(space.indices((par(i) + par(j)) % 2))
            if not targets:
                continue
            k = rng.choice(targets)
            v = Fraction(rng.choice((-2, -1, 1, 2, 3)), rng.choice((1, 1, 2)))
            sc[(i, j, k)] = v
            sc[(j, i, k)] = v if par(i) * par(j) else -v
        alg = SuperAlgebra(space, sc, f"random{seed}")
        if not check_super_skew(alg).ok or not check_jacobi(alg).ok:
            continue
        columns = _random_basis(rng, space)
        out = change_basis(alg, columns, space, f"random{seed}")
        if check_super_skew(out).ok and check_jacobi(out).ok:
            return out
    raise RuntimeError(f"no Lie superalgebra found for seed {seed}")


def _random_basis(rng: random.Random, space: SuperVectorSpace) -> list:
    n = space.dim
    while True:
        cols = []
        for a in range(n):
            idx = space.indices(space.parity(a))
            cols.append(tuple(Fraction(rng.randint(-2, 2)) if i in idx else Fraction(0) for i in range(n)))
        t = RatMatrix.from_columns(cols, n)
        if all(space.vector_parity(c) == space.parity(a) for a, c in enumerate(cols)) and rank(t) == n:
            return cols
