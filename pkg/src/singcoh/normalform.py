"""Constructive rank normal forms with verifiable certificates.

A singular matrix of each square kind is reduced to diag(I_r, 0) (general,
symmetric) or diag(J_k, 0) (skew-symmetric) by group elements obeying the
determinant constraints: det B = det C for the two-sided general action,
det B = 1 for the congruence actions.  General and skew-symmetric run in
exact rational arithmetic (the constructions need only field operations);
the symmetric case needs square roots, so it runs in complex floating point
and certifies a residual instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .catalog import GENERAL, SKEW, SYMMETRIC, MatrixKind
from .errors import DomainError, RankAmbiguityError
from .polymatrix import PolyMatrix
from . import ratlinalg as rl

__all__ = ["NormalFormCertificate", "rank_normal_form", "verify_certificate"]

RESIDUAL_TOL = 1e-9
RANK_THRESHOLD = 1e-8


@dataclass(frozen=True)
class NormalFormCertificate:
    """Everything needed to re-check the reduction independently.

    exact mode (general, skew): Fraction matrices, residual must be exactly 0.
    float mode (symmetric): complex arrays plus the thresholds used.
    general stores (B, B_inverse, C) for the product C * A * B_inverse;
    the congruence kinds store B for B * A * B^T.
    """

    kind: MatrixKind
    mode: str  # "exact" | "float"
    input: object
    rank: int
    normal_form: object
    left: object           # C for general, B for symmetric/skew
    right_inverse: object | None = None  # B_inverse for general
    right: object | None = None         # B for general
    residual: object = Fraction(0)
    rank_threshold: float | None = None
    residual_tolerance: float | None = None
    notes: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        def render(mat):
            if mat is None:
                return None
            if self.mode == "exact":
                return [[str(v) for v in row] for row in mat]
            return [[[float(v.real), float(v.imag)] for v in row] for row in mat]

        return {
            "kind": self.kind.family,
            "m": self.kind.m,
            "mode": self.mode,
            "rank": self.rank,
            "input": render(self.input),
            "normal_form": render(self.normal_form),
            "left": render(self.left),
            "right": render(self.right),
            "right_inverse": render(self.right_inverse),
            "residual": str(self.residual) if self.mode == "exact" else float(self.residual),
            "rank_threshold": self.rank_threshold,
            "residual_tolerance": self.residual_tolerance,
        }


def _as_fraction_matrix(a) -> rl.Mat:
    if isinstance(a, PolyMatrix):
        rows = []
        for row in a.entries:
            out = []
            for entry in row:
                c = entry.as_constant()
                if c is None:
                    raise DomainError("normal form needs a constant matrix")
                out.append(c)
            rows.append(out)
        return rows
    return [[Fraction(v) for v in row] for row in a]


def _check_shape(a: rl.Mat, kind: MatrixKind):
    m = kind.m
    if len(a) != m or any(len(row) != m for row in a):
        raise DomainError(f"expected a {m}x{m} matrix for kind {kind.describe()}")


def rank_normal_form(a, kind: MatrixKind, rank_threshold: float = RANK_THRESHOLD) -> NormalFormCertificate:
    """Reduce a singular matrix of the given kind to its rank normal form.

    general: returns (B, C) with det B = det C and C * A * B^{-1} = diag(I_r, 0).
    symmetric: B with det B = 1 and B * A * B^T = diag(I_r, 0), complex float.
    skew: B with det B = 1 and B * A * B^T = diag(J_k, 0), exact.
    """
    if not kind.is_square:
        raise DomainError("rank normal forms are defined for the square kinds")
    if kind.family == GENERAL:
        return _general_normal_form(_as_fraction_matrix(a), kind)
    if kind.family == SKEW:
        return _skew_normal_form(_as_fraction_matrix(a), kind)
    return _symmetric_normal_form(np.asarray(a, dtype=complex), kind, rank_threshold)


def _psi(u, a, w):
    return sum(ui * sum(aij * wj for aij, wj in zip(row, w)) for ui, row in zip(u, a))


def _general_normal_form(a: rl.Mat, kind: MatrixKind) -> NormalFormCertificate:
    _check_shape(a, kind)
    m = kind.m
    pivots = rl.rref(a)[1]
    r = len(pivots)
    if r == m:
        raise DomainError("matrix is nonsingular; the normal form lives on the singular variety")
    # v_1..v_r: preimages of independent columns; v_{r+1}..v_m: kernel basis
    v_cols = [[Fraction(int(i == p)) for i in range(m)] for p in pivots]
    v_cols += rl.kernel_basis(a)
    v = rl.transpose(v_cols)
    b = rl.det(v)
    w_cols = [[a[i][p] for i in range(m)] for p in pivots]
    w = rl.complete_to_basis(w_cols, m)
    c_det = rl.det(w)
    # balance: scale the last kernel vector so det B = det C
    b_inverse = [row[:] for row in v]
    for i in range(m):
        b_inverse[i][m - 1] *= c_det / b
    b_mat = rl.inverse(b_inverse)
    c_mat = rl.inverse(w)
    normal = [[Fraction(int(i == j and i < r)) for j in range(m)] for i in range(m)]
    product = rl.mat_mul(rl.mat_mul(c_mat, a), b_inverse)
    residual = max(abs(product[i][j] - normal[i][j]) for i in range(m) for j in range(m))
    if residual != 0:
        raise DomainError("internal error: exact reduction missed the normal form")
    return NormalFormCertificate(
        kind=kind, mode="exact", input=a, rank=r, normal_form=normal,
        left=c_mat, right=b_mat, right_inverse=b_inverse, residual=Fraction(0),
    )


def _skew_normal_form(a: rl.Mat, kind: MatrixKind) -> NormalFormCertificate:
    _check_shape(a, kind)
    m = kind.m
    for i in range(m):
        if a[i][i] != 0:
            raise DomainError("skew kind requires a zero diagonal")
        for j in range(i + 1, m):
            if a[i][j] != -a[j][i]:
                raise DomainError(f"not skew-symmetric at ({i + 1},{j + 1})")
    # symplectic reduction: peel hyperbolic pairs, the rest is the radical
    work = [[Fraction(int(i == k)) for i in range(m)] for k in range(m)]
    pairs = []
    while True:
        found = None
        for i in range(len(work)):
            for j in range(i + 1, len(work)):
                if _psi(work[i], a, work[j]) != 0:
                    found = (i, j)
                    break
            if found:
                break
        if not found:
            break
        i, j = found
        u = work[i]
        pairing = _psi(u, a, work[j])
        w = [x / pairing for x in work[j]]
        rest = [work[k] for k in range(len(work)) if k not in (i, j)]
        work = [
            [z_t + _psi(w, a, z) * u_t - _psi(u, a, z) * w_t
             for z_t, u_t, w_t in zip(z, u, w)]
            for z in rest
        ]
        pairs.append((u, w))
    r = 2 * len(pairs)
    if r == m:
        raise DomainError("matrix is nonsingular; the normal form lives on the singular variety")
    cols = []
    for u, w in pairs:
        cols.append(u)
        cols.append(w)
    cols += work
    basis = rl.transpose(cols)
    b = rl.det(basis)
    b_transpose = [row[:] for row in basis]
    for i in range(m):
        b_transpose[i][m - 1] /= b
    b_mat = rl.transpose(b_transpose)
    normal = [[Fraction(0)] * m for _ in range(m)]
    for k in range(len(pairs)):
        normal[2 * k][2 * k + 1] = Fraction(1)
        normal[2 * k + 1][2 * k] = Fraction(-1)
    product = rl.mat_mul(rl.mat_mul(b_mat, a), b_transpose)
    residual = max(abs(product[i][j] - normal[i][j]) for i in range(m) for j in range(m))
    if residual != 0 or rl.det(b_mat) != 1:
        raise DomainError("internal error: exact symplectic reduction failed")
    return NormalFormCertificate(
        kind=kind, mode="exact", input=a, rank=r, normal_form=normal,
        left=b_mat, residual=Fraction(0),
    )


def _symmetric_normal_form(a: np.ndarray, kind: MatrixKind, threshold: float) -> NormalFormCertificate:
    m = kind.m
    if a.shape != (m, m):
        raise DomainError(f"expected a {m}x{m} matrix for kind {kind.describe()}")
    if np.max(np.abs(a - a.T)) > 1e-12 * max(1.0, np.max(np.abs(a))):
        raise DomainError("matrix is not (complex) symmetric")
    _, sing, vh = np.linalg.svd(a)
    smax = float(sing[0]) if sing.size and sing[0] > 0 else 0.0
    if smax == 0.0:
        r = 0
        rel = np.zeros_like(sing)
    else:
        rel = sing / smax
        suspects = [float(s) for s, q in zip(sing, rel) if threshold / 50 < q < threshold * 50]
        if suspects:
            raise RankAmbiguityError(suspects, threshold)
        r = int(np.sum(rel > threshold))
    if r == m:
        raise DomainError("matrix is nonsingular; the normal form lives on the singular variety")

    def psi(x, y):
        return x @ a @ y

    # right singular vectors are the conjugated rows of vh: A @ conj(vh[i])
    # is sigma_i u_i, so the trailing ones span the kernel and the leading
    # ones a complement on which the form is nondegenerate
    basis = []
    work = [np.conj(vh[i]).astype(complex) for i in range(r)]
    for step in range(r):
        # pivot on the largest available |psi(w, w)|, mixing pairs if needed
        cands = list(work)
        for i in range(len(work)):
            for j in range(i + 1, len(work)):
                cands.append(work[i] + work[j])
                cands.append(work[i] + 1j * work[j])
        best = max(cands, key=lambda wv: abs(psi(wv, wv)))
        q = psi(best, best)
        if abs(q) <= 1e-12 * max(smax, 1.0):
            raise DomainError("symmetric reduction lost the pivot; matrix too ill-conditioned")
        v = best / np.sqrt(q)
        basis.append(v)
        projected = [w - psi(v, w) * v for w in work]
        keep = r - step - 1
        if keep:
            _, _, vh2 = np.linalg.svd(np.vstack(projected))
            work = [vh2[i].astype(complex) for i in range(keep)]
        else:
            work = []
    kernel = [np.conj(vh[i]).astype(complex) for i in range(r, m)]
    cols = np.column_stack(basis + kernel) if basis or kernel else np.zeros((m, 0))
    b = np.linalg.det(cols)
    cols[:, m - 1] /= b
    b_mat = cols.T
    normal = np.zeros((m, m), dtype=complex)
    for i in range(r):
        normal[i, i] = 1.0
    residual = float(np.max(np.abs(b_mat @ a @ b_mat.T - normal)))
    return NormalFormCertificate(
        kind=kind, mode="float",
        input=[list(row) for row in a],
        rank=r,
        normal_form=[list(row) for row in normal],
        left=[list(row) for row in b_mat],
        residual=residual,
        rank_threshold=threshold,
        residual_tolerance=RESIDUAL_TOL,
    )


def verify_certificate(cert: NormalFormCertificate) -> tuple[bool, dict]:
    """Re-multiply and re-check the determinant constraints from scratch.

    Never raises on a bad certificate; returns (ok, diagnostics).
    """
    diag: dict = {"kind": cert.kind.family, "mode": cert.mode, "rank": cert.rank}
    if cert.mode == "exact":
        a = cert.input
        n = cert.normal_form
        if cert.kind.family == GENERAL:
            product = rl.mat_mul(rl.mat_mul(cert.left, a), cert.right_inverse)
            det_b = rl.det(cert.right)
            det_c = rl.det(cert.left)
            diag["det_B"] = str(det_b)
            diag["det_C"] = str(det_c)
            diag["det_constraint"] = det_b == det_c
            diag["inverse_pair"] = rl.mat_eq(
                rl.mat_mul(cert.right, cert.right_inverse), rl.identity(len(a))
            )
            checks = [diag["det_constraint"], diag["inverse_pair"]]
        else:
            bt = rl.transpose(cert.left)
            product = rl.mat_mul(rl.mat_mul(cert.left, a), bt)
            det_b = rl.det(cert.left)
            diag["det_B"] = str(det_b)
            diag["det_constraint"] = det_b == 1
            checks = [diag["det_constraint"]]
        residual = max(
            abs(product[i][j] - n[i][j]) for i in range(len(a)) for j in range(len(a))
        )
        diag["residual"] = str(residual)
        diag["residual_ok"] = residual == 0
        return all(checks) and diag["residual_ok"], diag
    # float mode
    a = np.asarray(cert.input, dtype=complex)
    n = np.asarray(cert.normal_form, dtype=complex)
    b = np.asarray(cert.left, dtype=complex)
    tol = cert.residual_tolerance or RESIDUAL_TOL
    residual = float(np.max(np.abs(b @ a @ b.T - n)))
    det_b = complex(np.linalg.det(b))
    diag["residual"] = residual
    diag["residual_ok"] = residual <= tol
    diag["det_B"] = [det_b.real, det_b.imag]
    diag["det_constraint"] = abs(det_b - 1) <= tol
    return diag["residual_ok"] and diag["det_constraint"], diag
