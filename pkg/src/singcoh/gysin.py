"""Rank strata slices, local links, and local-to-global degree bookkeeping.

Fixing the tail entries of a kite at nonzero values and zeroing its body
picks a rank-r matrix A; translating the body gives a normal slice A + M'
to the rank-r stratum, where M' is the same family at the corank size (or
the rectangular family shrunk by r).  The local link of the stratum is the
link of the singular variety inside M', and the degree map into the global
link adds the constant q = dim_R M - dim_R M', computed here both from the
per-family closed forms and from the dimensions themselves.

Degrees are tracked through the sphere-duality rule d -> 2N - 2 - d on both
ends, which is where the constant-q statement comes from; the shifted-table
representation of a link class is NOT the same bookkeeping, and the two are
deliberately kept apart (see ``gysin_map`` vs ``local_link_cohomology``).
"""

from __future__ import annotations

from dataclasses import dataclass

from .catalog import (
    GENERAL,
    RECTANGULAR,
    SKEW,
    SYMMETRIC,
    Coefficients,
    MatrixKind,
    complement_cohomology,
    link_of_variety_cohomology,
)
from .errors import DomainError
from .grading import GradedVectorSpace, monomial_basis

__all__ = [
    "GysinEntry",
    "StratumSlice",
    "alexander_dual_degree",
    "gysin_map",
    "gysin_shift",
    "local_link_cohomology",
    "stratum_slice",
]


@dataclass(frozen=True)
class StratumSlice:
    """Normal slice data for the stratum of rank-r matrices."""

    ambient: MatrixKind
    rank: int
    corank: int
    slice_family: str
    slice_m: int
    slice_p: int | None
    ambient_dim: int   # complex
    slice_dim: int     # complex

    @property
    def slice_kind(self) -> MatrixKind:
        """The slice as a full matrix kind; raises when the size is below 2."""
        if self.slice_family == RECTANGULAR:
            return MatrixKind.rectangular(self.slice_m, self.slice_p)
        return MatrixKind(self.slice_family, self.slice_m)


def _slice_complex_dim(family: str, m: int, p: int | None) -> int:
    if family == GENERAL:
        return m * m
    if family == SYMMETRIC:
        return m * (m + 1) // 2
    if family == SKEW:
        return m * (m - 1) // 2
    return m * p


def stratum_slice(kind: MatrixKind, rank: int) -> StratumSlice:
    """Slice to the rank-r stratum: same family at the corank size."""
    if not 0 <= rank < kind.generic_rank:
        raise DomainError(
            f"rank must satisfy 0 <= r < {kind.generic_rank}, got {rank}"
        )
    if kind.family == SKEW and rank % 2:
        raise DomainError("skew-symmetric matrices have even rank")
    if kind.is_square:
        ell = kind.m - rank
        fam, sm, sp = kind.family, ell, None
    else:
        ell = kind.p - rank
        fam, sm, sp = RECTANGULAR, kind.m - rank, kind.p - rank
    return StratumSlice(
        ambient=kind,
        rank=rank,
        corank=ell,
        slice_family=fam,
        slice_m=sm,
        slice_p=sp,
        ambient_dim=kind.complex_dimension,
        slice_dim=_slice_complex_dim(fam, sm, sp),
    )


def _slice_for_corank(kind: MatrixKind, ell: int) -> StratumSlice:
    return stratum_slice(kind, kind.generic_rank - ell)


def gysin_shift(kind: MatrixKind, ell: int) -> int:
    """Degree increase q of the local-to-global link map for corank l.

    Computed as dim_R(ambient) - dim_R(slice) and cross-checked against the
    closed forms 2(m^2 - l^2), (m-l)(m+l+1), (m-l)(m+l-1) for the square
    families.  (For the rectangular family the dimension difference is
    2(p - l)(m + l); a p-for-m slip in the usual closed form is not
    reproduced here, since q must equal the difference of the two duality
    degrees, which the tests pin down.)
    """
    if ell == kind.generic_rank:
        return 0  # corank 0: the slice is the whole space
    sl = _slice_for_corank(kind, ell)
    q = 2 * (sl.ambient_dim - sl.slice_dim)
    m = kind.m
    closed = {
        GENERAL: 2 * (m * m - ell * ell),
        SYMMETRIC: (m - ell) * (m + ell + 1),
        SKEW: (m - ell) * (m + ell - 1),
        RECTANGULAR: 2 * (kind.p - ell) * (m + ell) if kind.p else None,
    }[kind.family]
    if closed != q:
        raise DomainError("internal error: dimension bookkeeping disagrees")
    return q


def alexander_dual_degree(n_complex: int, degree: int) -> int:
    """Duality on the sphere around the origin of C^N: d -> 2N - 2 - d."""
    if not 0 < degree <= 2 * n_complex - 2:
        raise DomainError(
            f"degree must lie in (0, {2 * n_complex - 2}], got {degree}"
        )
    return 2 * n_complex - 2 - degree


@dataclass(frozen=True)
class GysinEntry:
    monomial: str
    degree: int          # degree in the complement algebra
    local_degree: int    # dual degree in the local link
    global_degree: int   # dual degree in the global link


def gysin_map(
    kind: MatrixKind,
    ell: int,
    coeff: Coefficients = Coefficients.CHAR_ZERO,
) -> tuple[list[GysinEntry], int]:
    """Per-monomial degree bookkeeping of the local-to-global link map.

    Every positive-degree monomial of the slice's complement algebra is sent
    injectively into the global link, raising its duality degree by exactly
    q = gysin_shift(kind, l); both degrees are computed independently and
    the difference is asserted.
    """
    if coeff != Coefficients.CHAR_ZERO:
        raise DomainError("the degree map is stated over a characteristic-zero field")
    if ell == kind.generic_rank:
        sl = None
        slice_kind = kind
        n_local = kind.complex_dimension
    else:
        sl = _slice_for_corank(kind, ell)
        slice_kind = sl.slice_kind
        n_local = sl.slice_dim
    q = gysin_shift(kind, ell)
    n_global = kind.complex_dimension
    alg = complement_cohomology(slice_kind, coeff)
    entries = []
    for mono in monomial_basis(alg):
        if mono.degree == 0:
            continue
        local = alexander_dual_degree(n_local, mono.degree)
        global_ = alexander_dual_degree(n_global, mono.degree)
        if global_ != local + q:
            raise DomainError("internal error: degree difference is not the shift")
        entries.append(GysinEntry(mono.label, mono.degree, local, global_))
    labels = [entry.monomial for entry in entries]
    if len(set(labels)) != len(labels):
        raise DomainError("internal error: monomial labels collide")
    return entries, q


def local_link_cohomology(
    kind: MatrixKind,
    ell: int,
    coeff: Coefficients = Coefficients.CHAR_ZERO,
) -> tuple[GradedVectorSpace, int]:
    """Link cohomology of the corank-l stratum slice (catalog, slice kind)."""
    sl = _slice_for_corank(kind, ell)
    return link_of_variety_cohomology(sl.slice_kind, coeff)
