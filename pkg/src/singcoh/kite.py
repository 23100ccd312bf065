"""Kite subspaces, kite map germs, and containment certification.

A kite of size l in the m x m matrices (length l in the m x p case) is a
block pattern: a full l x l body of the given symmetry type plus a sparse
tail, zeros elsewhere.  ``certify_containment`` checks, entirely
syntactically, that a germ restricted to a coordinate subspace is such a
pattern: either on the nose up to permutation/renaming/scaling
(ExactLinear), or after applying a verified row/column-operation witness,
possibly combined with an explicit change of the kite coordinates
(WitnessedUnfurled).  No search is attempted; the caller supplies the
witness and the certifier only verifies it.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .catalog import GENERAL, RECTANGULAR, SKEW, SYMMETRIC, MatrixKind
from .errors import DomainError
from .poly import Polynomial
from .polymatrix import OpWitness, PolyMatrix, apply_witness, specialize
from .ratlinalg import det as rat_det

__all__ = [
    "CertificateLevel",
    "KiteCertificate",
    "KiteSpec",
    "certify_containment",
    "kite_basis",
    "linear_kite_map",
]


@dataclass(frozen=True)
class KiteSpec:
    """A kite shape: matrix kind plus the body size (length) l."""

    kind: MatrixKind
    ell: int

    def __post_init__(self):
        ell = self.ell
        if self.kind.is_square:
            if not 1 <= ell < self.kind.m:
                raise DomainError(
                    f"kite size must satisfy 1 <= l < m, got l={ell}, m={self.kind.m}"
                )
            if self.kind.family == SKEW and ell % 2:
                raise DomainError("skew-symmetric kites have even size")
        else:
            if not 1 <= ell <= self.kind.p:
                raise DomainError(
                    f"kite length must satisfy 1 <= l <= p, got l={ell}, p={self.kind.p}"
                )

    @property
    def tail_offset(self) -> int:
        """r = p - l for rectangular kites (tail lives on the first r diagonals)."""
        if self.kind.is_square:
            raise DomainError("tail offset only applies to rectangular kites")
        return self.kind.p - self.ell


def _slots(spec: KiteSpec) -> list[tuple[str, tuple[tuple[int, int, int], ...]]]:
    """Positions carrying one fresh variable each: (name, ((i, j, sign), ...)).

    0-based positions.  Mirrored positions share the variable, with sign -1
    below the diagonal in the skew case.
    """
    kind, ell = spec.kind, spec.ell
    m = kind.m
    out = []

    def var(i, j):
        return f"x{i + 1}_{j + 1}"

    if kind.family == GENERAL:
        for i in range(ell):
            for j in range(ell):
                out.append((var(i, j), ((i, j, 1),)))
        for i in range(ell, m):
            out.append((var(i, i), ((i, i, 1),)))
    elif kind.family == SYMMETRIC:
        for i in range(ell):
            for j in range(i, ell):
                positions = ((i, j, 1),) if i == j else ((i, j, 1), (j, i, 1))
                out.append((var(i, j), positions))
        for i in range(ell, m):
            out.append((var(i, i), ((i, i, 1),)))
    elif kind.family == SKEW:
        for i in range(ell):
            for j in range(i + 1, ell):
                out.append((var(i, j), ((i, j, 1), (j, i, -1))))
        # tail blocks at (2i, 2i+1) in 1-based indexing, l < 2i < m
        for two_i in range(ell + 2, m, 2):
            i, j = two_i - 1, two_i  # 0-based
            out.append((var(i, j), ((i, j, 1), (j, i, -1))))
    else:
        r = spec.tail_offset
        for i in range(r, m):
            for j in range(r, kind.p):
                out.append((var(i, j), ((i, j, 1),)))
        for i in range(r):
            out.append((var(i, i), ((i, i, 1),)))
    return out


def kite_basis(spec: KiteSpec) -> list[PolyMatrix]:
    """Spanning 0/+-1 matrices of the kite subspace, one per fresh variable."""
    rows, cols = spec.kind.shape
    out = []
    for _, positions in _slots(spec):
        grid = [[Fraction(0)] * cols for _ in range(rows)]
        for i, j, sign in positions:
            grid[i][j] = Fraction(sign)
        out.append(PolyMatrix(grid))
    return out


def linear_kite_map(spec: KiteSpec) -> PolyMatrix:
    """The kite pattern with one fresh variable per basis element."""
    slots = _slots(spec)
    variables = tuple(name for name, _ in slots)
    rows, cols = spec.kind.shape
    grid = [[Polynomial.zero(variables) for _ in range(cols)] for _ in range(rows)]
    for name, positions in slots:
        v = Polynomial.variable(name, variables)
        for i, j, sign in positions:
            grid[i][j] = v if sign == 1 else -v
    return PolyMatrix(grid, kind_tag=spec.kind)


class CertificateLevel(enum.Enum):
    EXACT_LINEAR = "exact-linear"
    WITNESSED_UNFURLED = "witnessed-unfurled"
    FAILED = "failed"


@dataclass(frozen=True)
class KiteCertificate:
    level: CertificateLevel
    spec: KiteSpec
    assignment: dict[str, Fraction]
    witness_digest: str | None = None
    evidence: dict = field(default_factory=dict)

    @property
    def contained(self) -> bool:
        return self.level is not CertificateLevel.FAILED

    def to_json(self) -> dict:
        kind = self.spec.kind
        return {
            "level": self.level.value,
            "spec": {
                "kind": kind.family,
                "m": kind.m,
                "p": kind.p,
                "ell": self.spec.ell,
            },
            "assignment": {k: str(v) for k, v in sorted(self.assignment.items())},
            "witness": self.witness_digest,
            "evidence": self.evidence,
        }


# --------------------------------------------------------------------------
# pattern matching
# --------------------------------------------------------------------------

def _zero_grid(spec: KiteSpec) -> list[list[bool]]:
    rows, cols = spec.kind.shape
    grid = [[True] * cols for _ in range(rows)]
    for _, positions in _slots(spec):
        for i, j, _ in positions:
            grid[i][j] = False
    return grid


def _extract(F: PolyMatrix, spec: KiteSpec, row_perm, col_perm):
    """Renaming {kite var: (F var, scale)} under the given arrangement, or None."""
    zero = _zero_grid(spec)
    rows, cols = spec.kind.shape
    for i in range(rows):
        for j in range(cols):
            if zero[i][j] and not F[row_perm[i], col_perm[j]].is_zero:
                return None
    renaming = {}
    seen = set()
    for name, positions in _slots(spec):
        i, j, _ = positions[0]
        got = F[row_perm[i], col_perm[j]].as_scaled_variable()
        if got is None:
            return None
        fvar, scale = got
        if fvar in seen:
            return None
        seen.add(fvar)
        renaming[name] = (fvar, scale)
    return renaming


def _match_exact_linear(F: PolyMatrix, spec: KiteSpec):
    """Search permutations for a renaming/scaling identification with the kite.

    Square kinds use one simultaneous permutation (congruence for the
    symmetric and skew types); rectangular kinds permute rows and columns
    independently.  Returns (row_perm, col_perm, renaming) or None.
    """
    rows, cols = spec.kind.shape
    if (F.rows, F.cols) != (rows, cols):
        return None
    n_slots = len(_slots(spec))
    if len(F.variables_used()) != n_slots:
        return None
    if spec.kind.is_square:
        for perm in itertools.permutations(range(rows)):
            renaming = _extract(F, spec, perm, perm)
            if renaming is not None:
                return list(perm), list(perm), renaming
        return None
    # rectangular: backtrack over column images after fixing each row order
    zero = _zero_grid(spec)
    f_zero = [[F[i, j].is_zero for j in range(cols)] for i in range(rows)]
    for row_perm in itertools.permutations(range(rows)):
        def fits(col_img, j):
            return all(
                not zero[i][j] or f_zero[row_perm[i]][col_img] for i in range(rows)
            )

        def backtrack(j, used):
            if j == cols:
                return []
            for cand in range(cols):
                if cand in used or not fits(cand, j):
                    continue
                rest = backtrack(j + 1, used | {cand})
                if rest is not None:
                    return [cand] + rest
            return None

        col_perm = backtrack(0, set())
        if col_perm is None:
            continue
        renaming = _extract(F, spec, list(row_perm), col_perm)
        if renaming is not None:
            return list(row_perm), col_perm, renaming
    return None


def _first_mismatch(F: PolyMatrix, spec: KiteSpec) -> dict:
    """Diagnostic for the identity arrangement: first entry off the pattern."""
    rows, cols = spec.kind.shape
    if (F.rows, F.cols) != (rows, cols):
        return {"reason": f"shape {F.rows}x{F.cols} does not match {rows}x{cols}"}
    zero = _zero_grid(spec)
    for i in range(rows):
        for j in range(cols):
            entry = F[i, j]
            if zero[i][j]:
                if not entry.is_zero:
                    return {
                        "row": i + 1,
                        "col": j + 1,
                        "entry": str(entry),
                        "expected": "0",
                    }
            elif entry.as_scaled_variable() is None:
                return {
                    "row": i + 1,
                    "col": j + 1,
                    "entry": str(entry),
                    "expected": "nonzero rational multiple of a single variable",
                }
    return {"reason": "entries match the pattern pointwise but no bijective renaming exists"}


def _match_substitution(G: PolyMatrix, spec: KiteSpec, substitution, slice_vars):
    """Exact check G == kite pattern composed with the supplied coordinates.

    The substitution must cover every kite variable with a polynomial in the
    slice variables, vanish at the origin, and have jointly invertible linear
    part, so it is (the inverse of) a legitimate change of coordinates on the
    kite space.
    """
    K = linear_kite_map(spec)
    fresh = sorted(K.variables_used())
    if set(substitution) != set(fresh):
        return None, "substitution must cover exactly the kite variables"
    slice_vars = sorted(slice_vars)
    if len(fresh) != len(slice_vars):
        return None, (
            f"kite space has dimension {len(fresh)} but the slice has"
            f" {len(slice_vars)} variables"
        )
    for name in fresh:
        poly = substitution[name]
        if poly.constant_term() != 0:
            return None, f"substitution for {name} has a nonzero constant term"
        if not poly.variables_used() <= set(slice_vars):
            return None, f"substitution for {name} uses variables outside the slice"
    linear = [
        [substitution[name].linear_part().get(v, Fraction(0)) for v in slice_vars]
        for name in fresh
    ]
    if rat_det(linear) == 0:
        return None, "substitution linear part is singular"
    composed = K.map_entries(
        lambda p: p.substitute({v: substitution[v] for v in p.vars if v in substitution})
    )
    if composed != G:
        return None, "witness image does not equal the substituted kite pattern"
    return {name: str(substitution[name]) for name in fresh}, None


def certify_containment(
    f0: PolyMatrix,
    assignment: dict,
    spec: KiteSpec,
    witness: OpWitness | None = None,
) -> KiteCertificate:
    """Certify that f0 restricted to a coordinate subspace is a kite map.

    ``assignment`` must send a subset of f0's variables to zero; the
    specialized matrix F is then compared with the kite pattern.  A witness
    upgrades the comparison: F is transformed by the verified operations and,
    when the witness carries a substitution, the pattern is matched with the
    kite coordinates replaced by the supplied polynomials.
    """
    if f0.kind_tag is None:
        raise DomainError("germ must carry a kind tag")
    if f0.kind_tag.family != spec.kind.family:
        raise DomainError(
            f"germ kind {f0.kind_tag.family} does not match spec kind {spec.kind.family}"
        )
    target_shape = spec.kind.shape
    if (f0.rows, f0.cols) != target_shape:
        if not spec.kind.is_square and (f0.cols, f0.rows) == target_shape:
            f0 = f0.transpose().with_tag(spec.kind)
        else:
            raise DomainError(
                f"germ shape {f0.rows}x{f0.cols} does not match kind shape {target_shape}"
            )
    clean_assignment = {}
    for name, value in assignment.items():
        if Fraction(value) != 0:
            raise DomainError("containment assignments must set variables to zero")
        clean_assignment[name] = Fraction(0)
    F = specialize(f0, clean_assignment)

    match = _match_exact_linear(F, spec)
    if match is not None:
        row_perm, col_perm, renaming = match
        return KiteCertificate(
            level=CertificateLevel.EXACT_LINEAR,
            spec=spec,
            assignment=clean_assignment,
            evidence={
                "row_permutation": [i + 1 for i in row_perm],
                "col_permutation": [j + 1 for j in col_perm],
                "renaming": {k: [v, str(c)] for k, (v, c) in sorted(renaming.items())},
            },
        )

    if witness is not None:
        G = apply_witness(F, witness)
        match = _match_exact_linear(G, spec)
        if match is not None:
            row_perm, col_perm, renaming = match
            return KiteCertificate(
                level=CertificateLevel.WITNESSED_UNFURLED,
                spec=spec,
                assignment=clean_assignment,
                witness_digest=witness.digest(),
                evidence={
                    "row_permutation": [i + 1 for i in row_perm],
                    "col_permutation": [j + 1 for j in col_perm],
                    "renaming": {k: [v, str(c)] for k, (v, c) in sorted(renaming.items())},
                },
            )
        if witness.substitution is not None:
            subst, reason = _match_substitution(
                G, spec, witness.substitution, F.variables_used()
            )
            if subst is not None:
                return KiteCertificate(
                    level=CertificateLevel.WITNESSED_UNFURLED,
                    spec=spec,
                    assignment=clean_assignment,
                    witness_digest=witness.digest(),
                    evidence={"substitution": subst},
                )
            return KiteCertificate(
                level=CertificateLevel.FAILED,
                spec=spec,
                assignment=clean_assignment,
                witness_digest=witness.digest(),
                evidence={"mismatch": _first_mismatch(G, spec), "substitution_error": reason},
            )
        return KiteCertificate(
            level=CertificateLevel.FAILED,
            spec=spec,
            assignment=clean_assignment,
            witness_digest=witness.digest(),
            evidence={"mismatch": _first_mismatch(G, spec)},
        )

    return KiteCertificate(
        level=CertificateLevel.FAILED,
        spec=spec,
        assignment=clean_assignment,
        evidence={"mismatch": _first_mismatch(F, spec)},
    )
