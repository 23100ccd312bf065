"""Closed-form cohomology of the varieties of singular matrices.

Covers the four families (general, symmetric, skew-symmetric m x m and
rectangular m x p): exterior-algebra presentations for the Milnor fiber and
the complement, the truncated-and-shifted Betti table of the link, and the
generator-level restriction map between consecutive sizes.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import DomainError
from .grading import (
    GeneratorLabel,
    GradedAlgebraPresentation,
    GradedVectorSpace,
    betti_table,
    e,
    shift,
    truncate_top,
)

__all__ = [
    "Coefficients",
    "MatrixKind",
    "RestrictionMap",
    "SpaceSelector",
    "complement_cohomology",
    "inclusion_restriction",
    "link_of_variety_cohomology",
    "milnor_fiber_cohomology",
]

GENERAL = "general"
SYMMETRIC = "symmetric"
SKEW = "skew"
RECTANGULAR = "rect"

_FAMILIES = (GENERAL, SYMMETRIC, SKEW, RECTANGULAR)


class Coefficients(enum.Enum):
    INTEGERS = "z"
    MOD_TWO = "mod2"
    CHAR_ZERO = "char0"

    @staticmethod
    def from_token(token: str) -> "Coefficients":
        for c in Coefficients:
            if c.value == token:
                return c
        raise DomainError(f"unknown coefficient ring {token!r}; use z, mod2 or char0")


class SpaceSelector(enum.Enum):
    MILNOR_FIBER = "milnor"
    COMPLEMENT = "complement"
    LINK = "link"

    @staticmethod
    def from_token(token: str) -> "SpaceSelector":
        for s in SpaceSelector:
            if s.value == token:
                return s
        raise DomainError(f"unknown space {token!r}; use milnor, complement or link")


@dataclass(frozen=True)
class MatrixKind:
    """Which variety of singular matrices is in play.

    ``family`` is one of general/symmetric/skew (m x m) or rect (m x p with
    m > p; an input with m < p is silently transposed and the flip recorded
    in ``transposed``).
    """

    family: str
    m: int
    p: int | None = None
    transposed: bool = False

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise DomainError(f"unknown matrix family {self.family!r}")
        if self.family == RECTANGULAR:
            if self.p is None:
                raise DomainError("rectangular kind needs both dimensions")
            if not (self.m > self.p >= 2):
                raise DomainError(
                    f"rectangular kind requires m > p >= 2, got ({self.m}, {self.p})"
                )
        else:
            if self.p is not None:
                raise DomainError("square kinds take a single size")
            if self.m < 2:
                raise DomainError(f"size must be >= 2, got {self.m}")
            if self.family == SKEW and self.m % 2:
                raise DomainError("skew-symmetric kind requires even size")

    @staticmethod
    def general(m: int) -> "MatrixKind":
        return MatrixKind(GENERAL, m)

    @staticmethod
    def symmetric(m: int) -> "MatrixKind":
        return MatrixKind(SYMMETRIC, m)

    @staticmethod
    def skew_symmetric(m: int) -> "MatrixKind":
        return MatrixKind(SKEW, m)

    @staticmethod
    def rectangular(m: int, p: int) -> "MatrixKind":
        if m == p:
            raise DomainError("m = p is the general square kind, not rectangular")
        if m < p:
            return MatrixKind(RECTANGULAR, p, m, transposed=True)
        return MatrixKind(RECTANGULAR, m, p)

    @staticmethod
    def from_token(token: str, m: int, p: int | None = None) -> "MatrixKind":
        aliases = {
            "general": GENERAL, "gen": GENERAL,
            "symmetric": SYMMETRIC, "sym": SYMMETRIC,
            "skew": SKEW, "skew-symmetric": SKEW, "sk": SKEW,
            "rect": RECTANGULAR, "rectangular": RECTANGULAR,
        }
        fam = aliases.get(token)
        if fam is None:
            raise DomainError(f"unknown matrix kind {token!r}")
        if fam == RECTANGULAR:
            if p is None:
                raise DomainError("rectangular kind needs --p")
            return MatrixKind.rectangular(m, p)
        if p is not None:
            raise DomainError(f"{token} kind takes a single size")
        return MatrixKind(fam, m)

    @property
    def is_square(self) -> bool:
        return self.family != RECTANGULAR

    @property
    def shape(self) -> tuple[int, int]:
        return (self.m, self.m if self.p is None else self.p)

    @property
    def complex_dimension(self) -> int:
        """dim_C of the ambient matrix space."""
        if self.family == GENERAL:
            return self.m * self.m
        if self.family == SYMMETRIC:
            return self.m * (self.m + 1) // 2
        if self.family == SKEW:
            return self.m * (self.m - 1) // 2
        return self.m * self.p

    @property
    def real_dimension(self) -> int:
        return 2 * self.complex_dimension

    @property
    def generic_rank(self) -> int:
        return self.m if self.is_square else self.p

    def describe(self) -> str:
        if self.is_square:
            return f"{self.family}({self.m})"
        return f"rect({self.m},{self.p})"


def _check_square(kind: MatrixKind, what: str):
    if not kind.is_square:
        raise DomainError(f"{what} is not defined for rectangular kinds")


def milnor_fiber_cohomology(kind: MatrixKind, coeff: Coefficients) -> GradedAlgebraPresentation:
    """Milnor-fiber cohomology presentation of the singular variety.

    general(m): e3, e5, ..., e_{2m-1} over any ring.
    skew(2n):   e5, e9, ..., e_{4n-3} over any ring.
    symmetric:  mod 2 -> e2..e_m; char 0 -> e5, e9, ... with the Euler-class
    module factor {1, e_m} when m is even.  No integral answer is offered for
    the symmetric case.
    """
    _check_square(kind, "the Milnor fiber")
    m = kind.m
    if kind.family == GENERAL:
        return GradedAlgebraPresentation(tuple(e(2 * j - 1) for j in range(2, m + 1)))
    if kind.family == SKEW:
        n = m // 2
        return GradedAlgebraPresentation(tuple(e(4 * j - 3) for j in range(2, n + 1)))
    # symmetric
    if coeff == Coefficients.INTEGERS:
        raise DomainError("symmetric Milnor fiber: integral coefficients unsupported")
    if coeff == Coefficients.MOD_TWO:
        return GradedAlgebraPresentation(tuple(e(j) for j in range(2, m + 1)))
    if m % 2 == 1:  # m = 2k+1: e5, e9, ..., e_{2m-1}
        return GradedAlgebraPresentation(tuple(e(d) for d in range(5, 2 * m, 4)))
    # m = 2k: e5, ..., e_{2m-3} plus the module factor {1, e_m}
    gens = tuple(e(d) for d in range(5, 2 * m - 2, 4))
    return GradedAlgebraPresentation(gens, module_basis=e(m))


def complement_cohomology(kind: MatrixKind, coeff: Coefficients) -> GradedAlgebraPresentation:
    """Complement cohomology presentation.

    Square kinds follow the homogeneous-space table; rectangular(m, p) is the
    Stiefel-variety algebra on e_{2(m-p)+1}, ..., e_{2m-1}.  Symmetric needs a
    characteristic-zero field; the other families accept any coefficient ring.
    """
    m = kind.m
    if kind.family == SYMMETRIC:
        if coeff != Coefficients.CHAR_ZERO:
            raise DomainError(
                "symmetric complement is only stated over a characteristic-zero field"
            )
        top = 2 * m - 1 if m % 2 else 2 * m - 3
        return GradedAlgebraPresentation((e(1),) + tuple(e(d) for d in range(5, top + 1, 4)))
    if kind.family == GENERAL:
        return GradedAlgebraPresentation(tuple(e(2 * j - 1) for j in range(1, m + 1)))
    if kind.family == SKEW:
        return GradedAlgebraPresentation((e(1),) + tuple(e(d) for d in range(5, 2 * m - 2, 4)))
    p = kind.p
    return GradedAlgebraPresentation(
        tuple(e(2 * (m - p) + 2 * j - 1) for j in range(1, p + 1))
    )


def link_shift(kind: MatrixKind) -> int:
    """Degree shift putting the truncated complement table onto the link."""
    m = kind.m
    if kind.family == SYMMETRIC:
        half = m * (m + 1) // 2
        return half - 2 if m % 2 else half + m - 2
    if kind.family == GENERAL:
        return m * m - 2
    if kind.family == SKEW:
        return m * (m - 1) // 2 - 2
    return kind.p * kind.p - 2


def link_of_variety_cohomology(
    kind: MatrixKind, coeff: Coefficients = Coefficients.CHAR_ZERO
) -> tuple[GradedVectorSpace, int]:
    """Link cohomology: complement Betti table, top degree removed, shifted."""
    if coeff != Coefficients.CHAR_ZERO:
        raise DomainError("link cohomology requires a characteristic-zero field")
    alg = complement_cohomology(kind, coeff)
    s = link_shift(kind)
    return shift(truncate_top(betti_table(alg)), s), s


@dataclass(frozen=True)
class RestrictionMap:
    """Generator-level map induced by including the next smaller size.

    Every generator is preserved by name except the ones in ``killed``,
    which map to zero.  ``target`` is (family, m, p sizes) rather than a
    MatrixKind because the chain is allowed to end at size 1.
    """

    source: MatrixKind
    target_family: str
    target_m: int
    target_p: int | None
    killed: tuple[str, ...]

    @property
    def target_kind(self) -> MatrixKind:
        if self.target_family == RECTANGULAR:
            return MatrixKind.rectangular(self.target_m, self.target_p)
        return MatrixKind(self.target_family, self.target_m)

    def mapping(self, alg: GradedAlgebraPresentation) -> dict[str, str | None]:
        """name -> same name, or None for generators sent to zero."""
        out: dict[str, str | None] = {}
        names = list(alg.generator_names)
        if alg.module_basis is not None:
            names.append(alg.module_basis.name)
        for name in names:
            out[name] = None if name in self.killed else name
        return out

    def apply(self, alg: GradedAlgebraPresentation) -> GradedAlgebraPresentation:
        """Image presentation: drop the killed generators, keep the rest."""
        gens = tuple(g for g in alg.generators if g.name not in self.killed)
        module = alg.module_basis
        if module is not None and module.name in self.killed:
            module = None
        return GradedAlgebraPresentation(gens, module_basis=module)


def inclusion_restriction(kind: MatrixKind, coeff: Coefficients) -> RestrictionMap:
    """Restriction to the next smaller size: kills exactly the top class.

    general(m) -> general(m-1): e_{2m-1} dies.  skew(2n) -> skew(2n-2): the
    top listed generator e_{4n-3} dies.  symmetric(m) -> symmetric(m-1):
    mod 2 kills e_m; char 0 kills e_m (m even) or e_{2m-1} (m odd).
    rectangular(m, p) -> (m-1, p-1): e_{2m-1} dies.
    """
    m = kind.m
    if kind.family == GENERAL:
        if m < 2:
            raise DomainError("size too small to restrict")
        return RestrictionMap(kind, GENERAL, m - 1, None, (f"e{2 * m - 1}",))
    if kind.family == SKEW:
        if m < 4:
            raise DomainError("size too small to restrict")
        n = m // 2
        return RestrictionMap(kind, SKEW, m - 2, None, (f"e{4 * n - 3}",))
    if kind.family == SYMMETRIC:
        if m < 2:
            raise DomainError("size too small to restrict")
        if coeff == Coefficients.INTEGERS:
            raise DomainError("symmetric restriction: integral coefficients unsupported")
        if coeff == Coefficients.MOD_TWO:
            killed = (f"e{m}",)
        else:
            killed = (f"e{m}",) if m % 2 == 0 else (f"e{2 * m - 1}",)
        return RestrictionMap(kind, SYMMETRIC, m - 1, None, killed)
    # rectangular: V_{p-1}(C^{m-1}) into V_p(C^m)
    if kind.p < 2:
        raise DomainError("size too small to restrict")
    return RestrictionMap(kind, RECTANGULAR, m - 1, kind.p - 1, (f"e{2 * m - 1}",))
