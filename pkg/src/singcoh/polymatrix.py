"""Matrices of exact polynomials: determinant, Pfaffian, witnesses.

Determinants come in two independent routes (fraction-free Bareiss and
cofactor expansion) that are cross-checked in the tests.  Witnesses package
row/column operations together with their claimed inverses; the inverse is
never computed here, only verified by multiplying out.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .catalog import GENERAL, RECTANGULAR, SKEW, SYMMETRIC, MatrixKind
from .errors import DomainError, WitnessError
from .poly import Polynomial, parse_polynomial

__all__ = [
    "OpWitness",
    "PolyMatrix",
    "apply_witness",
    "determinant",
    "pfaffian",
    "specialize",
]

Entry = Union[Polynomial, int, Fraction]


class PolyMatrix:
    """Immutable grid of polynomials, optionally tagged with a matrix kind.

    A symmetric tag asserts entry(i,j) == entry(j,i); a skew tag asserts
    entry(i,j) == -entry(j,i) with a zero diagonal.  Both are checked.
    """

    __slots__ = ("rows", "cols", "entries", "kind_tag")

    def __init__(self, entries: Sequence[Sequence[Entry]], kind_tag: MatrixKind | None = None):
        grid = tuple(
            tuple(v if isinstance(v, Polynomial) else Polynomial.constant(v) for v in row)
            for row in entries
        )
        if not grid or not grid[0]:
            raise DomainError("matrix must have at least one row and column")
        if any(len(row) != len(grid[0]) for row in grid):
            raise DomainError("ragged rows")
        object.__setattr__(self, "rows", len(grid))
        object.__setattr__(self, "cols", len(grid[0]))
        object.__setattr__(self, "entries", grid)
        object.__setattr__(self, "kind_tag", kind_tag)
        self._check_tag()

    def __setattr__(self, *_):
        raise AttributeError("PolyMatrix is immutable")

    def _check_tag(self):
        tag = self.kind_tag
        if tag is None:
            return
        if tag.is_square and self.rows != self.cols:
            raise DomainError("square kind tag on a non-square matrix")
        if tag.family == RECTANGULAR and {self.rows, self.cols} != {tag.m, tag.p}:
            raise DomainError(
                f"rectangular tag ({tag.m},{tag.p}) on a {self.rows}x{self.cols} matrix"
            )
        if tag.family == SYMMETRIC:
            for i in range(self.rows):
                for j in range(i + 1, self.cols):
                    if self[i, j] != self[j, i]:
                        raise DomainError(f"not symmetric at ({i + 1},{j + 1})")
        elif tag.family == SKEW:
            for i in range(self.rows):
                if not self[i, i].is_zero:
                    raise DomainError(f"nonzero diagonal at ({i + 1},{i + 1})")
                for j in range(i + 1, self.cols):
                    if self[i, j] != -self[j, i]:
                        raise DomainError(f"not skew-symmetric at ({i + 1},{j + 1})")

    # -- access -----------------------------------------------------------
    def __getitem__(self, key: tuple[int, int]) -> Polynomial:
        i, j = key
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and all(
            self[i, j] == other[i, j]
            for i in range(self.rows)
            for j in range(self.cols)
        )

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in row) for row in self.entries)
        return f"PolyMatrix[{body}]"

    def variables_used(self) -> set[str]:
        out: set[str] = set()
        for row in self.entries:
            for entry in row:
                out |= entry.variables_used()
        return out

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    # -- algebra ----------------------------------------------------------
    @staticmethod
    def identity(n: int) -> "PolyMatrix":
        return PolyMatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(rows: int, cols: int) -> "PolyMatrix":
        return PolyMatrix([[0] * cols for _ in range(rows)])

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(
            [[self[i, j] for i in range(self.rows)] for j in range(self.cols)]
        )

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise DomainError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = Polynomial.zero()
                for k in range(self.cols):
                    acc = acc + self[i, k] * other[k, j]
                row.append(acc)
            out.append(row)
        return PolyMatrix(out)

    def __neg__(self) -> "PolyMatrix":
        return self.map_entries(lambda p: -p)

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DomainError("shape mismatch")
        return PolyMatrix(
            [[self[i, j] - other[i, j] for j in range(self.cols)] for i in range(self.rows)]
        )

    def map_entries(self, fn) -> "PolyMatrix":
        return PolyMatrix([[fn(e) for e in row] for row in self.entries])

    def with_tag(self, tag: MatrixKind | None) -> "PolyMatrix":
        return PolyMatrix(self.entries, kind_tag=tag)

    # -- (de)serialization --------------------------------------------------
    def to_json(self) -> dict:
        vars_sorted = sorted(self.variables_used())
        return {
            "vars": vars_sorted,
            "rows": self.rows,
            "cols": self.cols,
            "kind": self.kind_tag.family if self.kind_tag else None,
            "entries": [[str(e) for e in row] for row in self.entries],
        }

    @staticmethod
    def from_json(data: Mapping, kind_tag: MatrixKind | None = None) -> "PolyMatrix":
        variables = tuple(data.get("vars", ()))
        entries = [
            [parse_polynomial(cell, variables) for cell in row]
            for row in data["entries"]
        ]
        if len(entries) != data.get("rows", len(entries)):
            raise DomainError("row count disagrees with 'rows'")
        if entries and len(entries[0]) != data.get("cols", len(entries[0])):
            raise DomainError("column count disagrees with 'cols'")
        if kind_tag is None and data.get("kind"):
            fam = data["kind"]
            m, p = len(entries), len(entries[0])
            if fam == RECTANGULAR:
                kind_tag = MatrixKind.rectangular(m, p)
            elif fam in (GENERAL, SYMMETRIC, SKEW):
                if m != p:
                    raise DomainError(f"{fam} kind on a {m}x{p} matrix")
                kind_tag = MatrixKind(fam, m)
            else:
                raise DomainError(f"unknown kind {fam!r}")
        return PolyMatrix(entries, kind_tag=kind_tag)


# --------------------------------------------------------------------------
# determinant and Pfaffian
# --------------------------------------------------------------------------

def determinant(a: PolyMatrix, method: str = "auto") -> Polynomial:
    """Exact determinant.

    ``bareiss`` is fraction-free elimination (good for numeric-heavy input),
    ``cofactor`` is minor expansion with memoization (good for sparse
    symbolic input); ``auto`` picks by inspecting the entries.  The two
    routes are cross-checked in the test suite.
    """
    if not a.is_square:
        raise DomainError(f"determinant of a {a.rows}x{a.cols} matrix")
    if method == "auto":
        symbolic = sum(
            1 for row in a.entries for e in row if e.as_constant() is None
        )
        method = "cofactor" if symbolic * 2 > a.rows * a.cols else "bareiss"
    if method == "bareiss":
        return _det_bareiss(a)
    if method == "cofactor":
        return _det_cofactor(a)
    raise DomainError(f"unknown determinant method {method!r}")


def _det_bareiss(a: PolyMatrix) -> Polynomial:
    n = a.rows
    m = [[a[i, j] for j in range(n)] for i in range(n)]
    sign = 1
    prev = Polynomial.constant(1)
    for k in range(n - 1):
        if m[k][k].is_zero:
            for i in range(k + 1, n):
                if not m[i][k].is_zero:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Polynomial.zero()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = num.exact_divide(prev)
            m[i][k] = Polynomial.zero()
        prev = m[k][k]
    return m[n - 1][n - 1] * sign


def _det_cofactor(a: PolyMatrix) -> Polynomial:
    n = a.rows
    cache: dict[tuple[int, ...], Polynomial] = {}

    def minor(cols: tuple[int, ...]) -> Polynomial:
        # determinant of the lower-right block on rows n-len(cols).. and `cols`
        if not cols:
            return Polynomial.constant(1)
        if cols in cache:
            return cache[cols]
        i = n - len(cols)
        acc = Polynomial.zero()
        for pos, j in enumerate(cols):
            entry = a[i, j]
            if entry.is_zero:
                continue
            rest = cols[:pos] + cols[pos + 1:]
            term = entry * minor(rest)
            acc = acc + term if pos % 2 == 0 else acc - term
        cache[cols] = acc
        return acc

    return minor(tuple(range(n)))


def pfaffian(a: PolyMatrix) -> Polynomial:
    """Pfaffian by recursive expansion along the first row; Pf(A)^2 = det(A)."""
    if a.kind_tag is None or a.kind_tag.family != SKEW:
        # accept untagged input but insist on actual skew-symmetry
        if not a.is_square:
            raise DomainError("pfaffian of a non-square matrix")
        for i in range(a.rows):
            if not a[i, i].is_zero:
                raise DomainError("pfaffian requires zero diagonal")
            for j in range(i + 1, a.cols):
                if a[i, j] != -a[j, i]:
                    raise DomainError("pfaffian requires a skew-symmetric matrix")
    if a.rows % 2:
        raise DomainError("pfaffian of an odd-size matrix")
    cache: dict[tuple[int, ...], Polynomial] = {}

    def pf(indices: tuple[int, ...]) -> Polynomial:
        if not indices:
            return Polynomial.constant(1)
        if indices in cache:
            return cache[indices]
        first = indices[0]
        acc = Polynomial.zero()
        for pos in range(1, len(indices)):
            entry = a[first, indices[pos]]
            if entry.is_zero:
                continue
            rest = indices[1:pos] + indices[pos + 1:]
            term = entry * pf(rest)
            acc = acc + term if pos % 2 == 1 else acc - term
        cache[indices] = acc
        return acc

    return pf(tuple(range(a.rows)))


def specialize(a: PolyMatrix, assignment: Mapping[str, Union[int, Fraction]]) -> PolyMatrix:
    """Evaluate some variables; the rest stay symbolic.  Kind tag is kept."""
    known: set[str] = set()
    for row in a.entries:
        for entry in row:
            known |= set(entry.vars)
    for name in assignment:
        if name not in known:
            raise DomainError(f"assignment references unknown variable {name!r}")
    out = a.map_entries(lambda p: p.substitute(
        {k: v for k, v in assignment.items() if k in p.vars}
    ))
    return out.with_tag(a.kind_tag)


# --------------------------------------------------------------------------
# witnesses
# --------------------------------------------------------------------------

def _constant_det(name: str, m: PolyMatrix) -> Fraction:
    d = determinant(m).as_constant()
    if d is None:
        raise WitnessError(f"det {name} must be constant", "inverse pair forces a unit")
    return d


@dataclass(frozen=True)
class OpWitness:
    """Row/column operations with claimed inverses and determinant certificates.

    ``left``/``left_inverse`` act on rows; for the general and rectangular
    actions a ``right``/``right_inverse`` pair acts on columns.  An optional
    ``substitution`` (fresh variable name -> polynomial with zero constant
    term and jointly invertible linear part) expresses a change of the kite
    coordinates; congruence alone cannot reach nonlinearly deformed kites.
    """

    left: PolyMatrix
    left_inverse: PolyMatrix
    right: PolyMatrix | None = None
    right_inverse: PolyMatrix | None = None
    substitution: Mapping[str, Polynomial] | None = None

    def verify(self, kind: MatrixKind) -> dict[str, str]:
        """Check the product identities and determinant constraints.

        Returns a report of the verified constraints; raises WitnessError
        naming the first violated one.
        """
        report = {}
        n = self.left.rows
        if not self.left.is_square or self.left_inverse.rows != n:
            raise WitnessError("left factor must be square with matching inverse")
        if self.left @ self.left_inverse != PolyMatrix.identity(n):
            raise WitnessError("left * left_inverse = I")
        report["left_inverse"] = "ok"
        det_left = _constant_det("left", self.left)
        if kind.family in (SYMMETRIC, SKEW):
            if self.right is not None:
                raise WitnessError("congruence witness takes no right pair")
            if det_left != 1:
                raise WitnessError("det(left) = 1", f"got {det_left}")
            report["det_left"] = "1"
            return report
        if self.right is None or self.right_inverse is None:
            raise WitnessError("right pair required for this kind")
        q = self.right.rows
        if not self.right.is_square or self.right_inverse.rows != q:
            raise WitnessError("right factor must be square with matching inverse")
        if self.right @ self.right_inverse != PolyMatrix.identity(q):
            raise WitnessError("right * right_inverse = I")
        report["right_inverse"] = "ok"
        det_right = _constant_det("right", self.right)
        if kind.family == GENERAL:
            if det_left != det_right:
                raise WitnessError(
                    "det(left) = det(right)", f"got {det_left} vs {det_right}"
                )
            report["det_pair"] = str(det_left)
        else:  # rectangular: both dets are units, which the inverses force
            if det_left == 0 or det_right == 0:
                raise WitnessError("determinants must be nonzero constants")
            report["det_left"] = str(det_left)
            report["det_right"] = str(det_right)
        return report

    def digest(self) -> str:
        """Stable content hash used in serialized certificates."""
        payload = {
            "left": self.left.to_json()["entries"],
            "left_inverse": self.left_inverse.to_json()["entries"],
            "right": self.right.to_json()["entries"] if self.right else None,
            "right_inverse": (
                self.right_inverse.to_json()["entries"] if self.right_inverse else None
            ),
            "substitution": (
                {k: str(v) for k, v in sorted(self.substitution.items())}
                if self.substitution
                else None
            ),
        }
        blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    @staticmethod
    def from_json(data: Mapping) -> "OpWitness":
        left = PolyMatrix.from_json(data["left"])
        left_inverse = PolyMatrix.from_json(data["left_inverse"])
        right = PolyMatrix.from_json(data["right"]) if data.get("right") else None
        right_inverse = (
            PolyMatrix.from_json(data["right_inverse"]) if data.get("right_inverse") else None
        )
        subst = None
        if data.get("substitution"):
            variables = tuple(data.get("substitution_vars", ()))
            if not variables:
                collected: set[str] = set()
                for mat in (left, left_inverse, right, right_inverse):
                    if mat is not None:
                        collected |= mat.variables_used()
                variables = tuple(sorted(collected | set(data.get("vars", ()))))
            subst = {
                name: parse_polynomial(expr, variables)
                for name, expr in data["substitution"].items()
            }
        return OpWitness(left, left_inverse, right, right_inverse, subst)


def apply_witness(f: PolyMatrix, witness: OpWitness) -> PolyMatrix:
    """Transform f by a verified witness: B f B^T, or B f C' with the right pair."""
    if f.kind_tag is None:
        raise DomainError("apply_witness needs a kind-tagged matrix")
    kind = f.kind_tag
    witness.verify(kind)
    if kind.family in (SYMMETRIC, SKEW):
        if witness.left.rows != f.rows:
            raise WitnessError("left factor size must match the matrix")
        result = witness.left @ f @ witness.left.transpose()
    else:
        if witness.left.rows != f.rows or witness.right_inverse.rows != f.cols:
            raise WitnessError("witness sizes must match the matrix")
        result = witness.left @ f @ witness.right_inverse
    return result.with_tag(kind)
