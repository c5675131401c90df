"""First-order deformation ``[x, y]_B = [x, y] + lam * B(x, y)``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graded import (
    GradedBilinearMap,
    SuperAlgebra,
    check_grading,
    check_jacobi,
    check_super_skew,
)
from .linalg import format_scalar


@dataclass(frozen=True)
class DeformationResult:
    deformed: SuperAlgebra
    lam: Fraction
    grading_ok: bool
    skew_ok: bool
    jacobi_ok: bool
    jacobi_witness: tuple | None = None
    skew_witness: tuple | None = None

    def to_json(self) -> dict:
        return {
            "lambda": format_scalar(self.lam),
            "grading_ok": self.grading_ok,
            "skew_ok": self.skew_ok,
            "jacobi_ok": self.jacobi_ok,
            "jacobi_witness": list(self.jacobi_witness) if self.jacobi_witness else None,
            "skew_witness": list(self.skew_witness) if self.skew_witness else None,
            "is_lie": deformed_is_lie(self),
            "brackets": [[i, j, k, format_scalar(v)] for (i, j, k), v in self.deformed.sc.items()],
        }


def deformed_constants(alg: SuperAlgebra, b: GradedBilinearMap, lam) -> dict:
    lam = Fraction(lam)
    sc = dict(alg.sc)
    for key, v in b.coeffs.items():
        sc[key] = sc.get(key, 0) + lam * v
    return {k: v for k, v in sorted(sc.items()) if v}


def deform(alg: SuperAlgebra, b: GradedBilinearMap, lam) -> DeformationResult:
    """Deform the bracket of ``alg`` by the degree-0 bilinear map ``b``.

    Grading and super-skewsymmetry are re-checked on the result and the graded
    Jacobi identity is reported, not assumed.
    """
    if b.degree != 0:
        raise ValueError("deformation needs a degree-0 bilinear map; degree 1 breaks the grading")
    if b.space != alg.space:
        raise ValueError("bilinear map lives on a different space than the algebra")
    lam = Fraction(lam)
    sc = deformed_constants(alg, b, lam)
    grading = check_grading(alg.space, sc)
    if not grading.ok:
        raise ValueError(f"deformed constant {grading.witness} violates the grading")
    name = f"{alg.name}_deformed[{format_scalar(lam)}]"
    deformed = SuperAlgebra(alg.space, sc, name)
    skew = check_super_skew(deformed)
    jac = check_jacobi(deformed)
    return DeformationResult(deformed, lam, grading.ok, skew.ok, jac.ok, jac.witness, skew.witness)


def deformed_is_lie(result: DeformationResult) -> bool:
    return result.grading_ok and result.skew_ok and result.jacobi_ok
