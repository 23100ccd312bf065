"""Detection guarantees: cohomology forced by containing a kite map of size l.

Given that a germ contains a kite map of size (length) l, these operations
emit the exterior subalgebra guaranteed inside the characteristic cohomology
of the Milnor fiber or complement, and the truncated/shifted Betti table
guaranteed inside the link cohomology.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .catalog import (
    GENERAL,
    RECTANGULAR,
    SKEW,
    SYMMETRIC,
    Coefficients,
    MatrixKind,
    SpaceSelector,
    complement_cohomology,
    milnor_fiber_cohomology,
)
from .errors import DomainError
from .grading import (
    GradedAlgebraPresentation,
    GradedVectorSpace,
    betti_table,
    e,
    shift,
    truncate_top,
)

__all__ = ["DetectionResult", "detect_complement", "detect_link", "detect_milnor"]

# The symmetric char-0 fiber generators follow the degree-(4j-3) catalog
# pattern; size 3 therefore detects the single class e5.
_SYM_CHAR0_NOTE = (
    "symmetric char-0 generators follow the fiber catalog pattern e5, e9, ...;"
    " the alternative reading e3, e5, ... is not emitted"
)
_SYM_EULER_NOTE = (
    "the even-size Euler class is emitted with guaranteed=false: it dies under"
    " restriction to smaller sizes, so the detection argument does not carry it"
)


@dataclass(frozen=True)
class DetectionResult:
    """Outcome of a detection theorem applied to one target space.

    ``algebra`` is set for fiber/complement targets; ``space``/``shift`` for
    the link.  ``guaranteed`` flags each emitted generator: False marks a
    class that is reported but not certified by the detection argument.
    """

    target: SpaceSelector
    kind: MatrixKind
    ell: int
    coefficients: Coefficients
    algebra: GradedAlgebraPresentation | None = None
    space: GradedVectorSpace | None = None
    shift: int | None = None
    guaranteed: dict[str, bool] = field(default_factory=dict)
    provenance: str = ""
    notes: tuple[str, ...] = ()

    @property
    def betti(self) -> GradedVectorSpace:
        if self.space is not None:
            return self.space
        return betti_table(self.algebra)


def _check_square_ell(kind: MatrixKind, ell: int):
    if ell < 1 or ell >= kind.m:
        raise DomainError(f"kite size must satisfy 1 <= l < m, got l={ell}, m={kind.m}")
    if kind.family == SKEW and ell % 2:
        raise DomainError("skew-symmetric kites have even size")


def detect_milnor(kind: MatrixKind, ell: int, coeff: Coefficients) -> DetectionResult:
    """Milnor-fiber subalgebra guaranteed by a kite map of size l < m.

    general:   e3, e5, ..., e_{2l-1}  (l-1 generators, any ring)
    skew l=2k: e5, e9, ..., e_{4k-3}  (k-1 generators, any ring)
    symmetric: mod 2 -> e2..e_l; char 0 -> the size-l fiber catalog, with an
    even-size Euler class reported but flagged unguaranteed.
    """
    if not kind.is_square:
        raise DomainError("rectangular varieties have no Milnor fiber")
    _check_square_ell(kind, ell)
    notes: tuple[str, ...] = ()
    if kind.family == GENERAL:
        alg = GradedAlgebraPresentation(tuple(e(2 * j - 1) for j in range(2, ell + 1)))
        guaranteed = {g.name: True for g in alg.generators}
    elif kind.family == SKEW:
        k = ell // 2
        alg = GradedAlgebraPresentation(tuple(e(4 * j - 3) for j in range(2, k + 1)))
        guaranteed = {g.name: True for g in alg.generators}
    else:
        if coeff == Coefficients.INTEGERS:
            raise DomainError("symmetric Milnor detection: integral coefficients unsupported")
        if coeff == Coefficients.MOD_TWO:
            alg = GradedAlgebraPresentation(tuple(e(j) for j in range(2, ell + 1)))
            guaranteed = {g.name: True for g in alg.generators}
        else:
            slice_alg = milnor_fiber_cohomology(MatrixKind.symmetric(ell), coeff) \
                if ell >= 2 else GradedAlgebraPresentation(())
            alg = slice_alg
            guaranteed = {g.name: True for g in alg.generators}
            notes = (_SYM_CHAR0_NOTE,)
            if alg.module_basis is not None:
                guaranteed[alg.module_basis.name] = False
                notes = notes + (_SYM_EULER_NOTE,)
    return DetectionResult(
        target=SpaceSelector.MILNOR_FIBER,
        kind=kind,
        ell=ell,
        coefficients=coeff,
        algebra=alg,
        guaranteed=guaranteed,
        provenance=f"detect:milnor:{kind.family}",
        notes=notes,
    )


def detect_complement(kind: MatrixKind, ell: int, coeff: Coefficients) -> DetectionResult:
    """Complement subalgebra guaranteed by a kite map of size (length) l.

    symmetric l odd:  e1, e5, ..., e_{2l-1}     (char-0 field only)
    symmetric l even: e1, e5, ..., e_{2l-3}     (char-0 field only)
    general:          e1, e3, ..., e_{2l-1}     (any ring)
    skew l even:      e1, e5, ..., e_{2l-3}     (any ring)
    rectangular:      e_{2(m-p)+1}, ..., e_{2(m-p)+2l-1}  (any ring)
    """
    if kind.is_square:
        _check_square_ell(kind, ell)
    else:
        if ell < 1 or ell > kind.p:
            raise DomainError(
                f"kite length must satisfy 1 <= l <= p, got l={ell}, p={kind.p}"
            )
    if kind.family == SYMMETRIC:
        if coeff != Coefficients.CHAR_ZERO:
            raise DomainError(
                "symmetric complement detection is only stated over a"
                " characteristic-zero field"
            )
        top = 2 * ell - 1 if ell % 2 else 2 * ell - 3
        alg = GradedAlgebraPresentation((e(1),) + tuple(e(d) for d in range(5, top + 1, 4)))
    elif kind.family == GENERAL:
        alg = GradedAlgebraPresentation(tuple(e(2 * j - 1) for j in range(1, ell + 1)))
    elif kind.family == SKEW:
        alg = GradedAlgebraPresentation((e(1),) + tuple(e(d) for d in range(5, 2 * ell - 2, 4)))
    else:
        off = 2 * (kind.m - kind.p)
        alg = GradedAlgebraPresentation(tuple(e(off + 2 * j - 1) for j in range(1, ell + 1)))
    return DetectionResult(
        target=SpaceSelector.COMPLEMENT,
        kind=kind,
        ell=ell,
        coefficients=coeff,
        algebra=alg,
        guaranteed={g.name: True for g in alg.generators},
        provenance=f"detect:complement:{kind.family}",
    )


def detection_link_shift(kind: MatrixKind, n: int, ell: int) -> int:
    """Shift for the detected link classes of a germ on C^n containing a size-l kite."""
    if kind.family == SYMMETRIC:
        body = ell * (ell + 1) // 2 if ell % 2 else ell * (ell - 1) // 2
        return 2 * n - body - 2
    if kind.family == GENERAL:
        return 2 * n - ell * ell - 2
    if kind.family == SKEW:
        return 2 * n - ell * (ell - 1) // 2 - 2
    return 2 * n - 2 - ell * (2 * (kind.m - kind.p) + ell)


def detect_link(
    kind: MatrixKind,
    n: int,
    ell: int,
    coeff: Coefficients = Coefficients.CHAR_ZERO,
) -> DetectionResult:
    """Link classes guaranteed for a germ on C^n containing a size-l kite.

    The table is the complement detection Betti table with its top degree
    removed, shifted so the top surviving class lands in the link dimension.
    """
    if coeff != Coefficients.CHAR_ZERO:
        raise DomainError("link detection requires a characteristic-zero field")
    if n < 1:
        raise DomainError(f"source dimension must be >= 1, got {n}")
    comp = detect_complement(kind, ell, coeff)
    s = detection_link_shift(kind, n, ell)
    space = shift(truncate_top(betti_table(comp.algebra)), s)
    return DetectionResult(
        target=SpaceSelector.LINK,
        kind=kind,
        ell=ell,
        coefficients=coeff,
        space=space,
        shift=s,
        guaranteed=dict(comp.guaranteed),
        provenance=f"detect:link:{kind.family}",
    )
