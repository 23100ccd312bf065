"""Pseudo-rotation factorization of unitaries and Schubert cells of U_m/U_{m-p}.

A pseudo-rotation A_(theta, v) fixes the hyperplane orthogonal to the unit
vector v and multiplies v by e^{i theta}.  Every unitary matrix factors
uniquely into pseudo-rotations whose axes climb a fixed flag: the factor
with the deepest axis acts last, so its flag depth m_k can be read off as
the last column of B that differs from the identity, and the axis is then
proportional to B e_{m_k} - e_{m_k}.  Peeling that factor off and recursing
is the whole algorithm; uniqueness is pinned down by normalizing each axis
to unit norm with a real positive component at its flag depth and taking
theta in (0, 2*pi).

Cells of the quotient U_m/U_{m-p} (a Stiefel manifold model) are indexed by
the strictly increasing tuples of flag depths exceeding m - p; factors at
depth <= m - p lie in the isotropy subgroup and vanish in the quotient.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "PseudoRotation",
    "SchubertIndex",
    "cell_dimension",
    "enumerate_cells",
    "factorize",
    "pseudo_rotation_matrix",
    "reconstruct",
    "schubert_index_of",
]

DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class PseudoRotation:
    """One factor: angle in (0, 2*pi), unit axis, and its flag depth.

    ``min_index`` is 1-based: components of ``axis`` beyond it vanish and the
    component at it is real and positive.
    """

    theta: float
    axis: tuple[complex, ...]
    min_index: int

    @property
    def dimension(self) -> int:
        return len(self.axis)

    def matrix(self) -> np.ndarray:
        return pseudo_rotation_matrix(self.theta, np.asarray(self.axis))


@dataclass(frozen=True)
class SchubertIndex:
    """Strictly increasing tuple of flag depths naming a Schubert cell."""

    indices: tuple[int, ...]

    def __post_init__(self):
        idx = self.indices
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise DomainError(f"Schubert index must strictly increase: {idx}")
        if idx and idx[0] < 1:
            raise DomainError("Schubert indices are 1-based")

    @property
    def dimension(self) -> int:
        return cell_dimension(self.indices)


def cell_dimension(indices) -> int:
    """Real cell dimension: sum of (2 m_i - 1)."""
    return sum(2 * m - 1 for m in indices)


def pseudo_rotation_matrix(theta: float, v: np.ndarray) -> np.ndarray:
    """A = I + (e^{i theta} - 1) v v*; unitary, fixes v-perp, scales v."""
    v = np.asarray(v, dtype=complex).reshape(-1)
    norm = np.linalg.norm(v)
    if norm == 0:
        raise DomainError("pseudo-rotation axis must be nonzero")
    v = v / norm
    m = v.size
    return np.eye(m, dtype=complex) + (np.exp(1j * theta) - 1.0) * np.outer(v, v.conj())


def _check_unitary(b: np.ndarray, tol: float):
    m = b.shape[0]
    if b.shape != (m, m):
        raise DomainError("input must be square")
    err = float(np.max(np.abs(b.conj().T @ b - np.eye(m))))
    if err > max(tol, 1e2 * np.finfo(float).eps * m):
        raise DomainError(f"input is not unitary within tolerance ({err:.3e})")


def factorize(b: np.ndarray, tol: float = DEFAULT_TOL) -> list[PseudoRotation]:
    """Factor a unitary into pseudo-rotations, returned by increasing depth.

    The product of the factors' matrices in *reverse* list order (deepest
    last applied) reconstructs the input; ``reconstruct`` does exactly that.
    Factors within ``tol`` of the identity are dropped.
    """
    b = np.asarray(b, dtype=complex)
    _check_unitary(b, tol)
    m = b.shape[0]
    residual = b.copy()
    factors: list[PseudoRotation] = []
    eye = np.eye(m, dtype=complex)
    for _ in range(m):
        column_errors = np.abs(residual - eye).max(axis=0)
        beyond = np.nonzero(column_errors > tol)[0]
        if beyond.size == 0:
            break
        j = int(beyond[-1])  # deepest column still moved by the residual
        w = residual[:, j] - eye[:, j]
        # the deepest factor sends e_j to e_j + (e^{i theta}-1) conj(v_j) v
        w = w.copy()
        w[j + 1:] = 0.0  # unitarity forces these to vanish; drop the noise
        nw = np.linalg.norm(w)
        axis = w / nw
        phase = axis[j]
        if abs(phase) == 0:
            raise DomainError("degenerate axis; tolerance too tight for this input")
        axis = axis * (phase.conjugate() / abs(phase))
        scale = complex(1.0 + w[j] / (axis[j].real ** 2))
        theta = math.atan2(scale.imag, scale.real) % (2 * math.pi)
        if abs(np.exp(1j * theta) - 1.0) <= tol:
            raise DomainError("factor indistinguishable from identity at this tolerance")
        rot = PseudoRotation(theta=theta, axis=tuple(axis), min_index=j + 1)
        factors.append(rot)
        inverse = eye + (np.exp(-1j * theta) - 1.0) * np.outer(axis, axis.conj())
        residual = inverse @ residual
    else:
        column_errors = np.abs(residual - eye).max(axis=0)
        if np.any(column_errors > tol):
            raise DomainError(
                "failed to reach the identity within m peels; tolerance too tight"
            )
    factors.reverse()
    for a, b2 in zip(factors, factors[1:]):
        if a.min_index >= b2.min_index:
            raise DomainError("internal error: depths not strictly increasing")
    return factors


def reconstruct(factors: list[PseudoRotation], m: int) -> np.ndarray:
    """Product A_k ... A_1 for factors listed by increasing depth."""
    out = np.eye(m, dtype=complex)
    for rot in factors:  # deepest factor multiplies on the left
        out = rot.matrix() @ out
    return out


def schubert_index_of(b: np.ndarray, p: int, tol: float = DEFAULT_TOL) -> SchubertIndex:
    """Cell of the coset of b in U_m/U_{m-p}: depths of the surviving factors."""
    b = np.asarray(b, dtype=complex)
    m = b.shape[0]
    if not 1 <= p <= m:
        raise DomainError(f"need 1 <= p <= m, got p={p}, m={m}")
    factors = factorize(b, tol)
    return SchubertIndex(tuple(f.min_index for f in factors if f.min_index > m - p))


def enumerate_cells(m: int, p: int) -> list[tuple[SchubertIndex, int]]:
    """All 2^p cells of U_m/U_{m-p} with their real dimensions."""
    if not (m > p >= 1):
        raise DomainError(f"need m > p >= 1, got ({m}, {p})")
    depths = range(m - p + 1, m + 1)
    out = []
    for k in range(p + 1):
        for combo in itertools.combinations(depths, k):
            out.append((SchubertIndex(combo), cell_dimension(combo)))
    out.sort(key=lambda pair: (pair[1], pair[0].indices))
    return out
