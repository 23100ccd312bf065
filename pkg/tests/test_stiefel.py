import math

import numpy as np
import pytest

from singcoh.catalog import Coefficients, MatrixKind, complement_cohomology
from singcoh.errors import DomainError
from singcoh.grading import poincare_polynomial
from singcoh.stiefel import (
    PseudoRotation,
    SchubertIndex,
    cell_dimension,
    enumerate_cells,
    factorize,
    pseudo_rotation_matrix,
    reconstruct,
    schubert_index_of,
)


def haar_unitary(m, rng):
    z = (rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


class TestPseudoRotationMatrix:
    def test_reflection_of_one_coordinate(self):
        a = pseudo_rotation_matrix(math.pi, np.array([1.0, 0.0]))
        assert np.allclose(a, np.diag([-1.0, 1.0]))

    def test_eigenvector(self):
        rng = np.random.default_rng(0)
        for _ in range(10):
            m = rng.integers(2, 6)
            v = rng.standard_normal(m) + 1j * rng.standard_normal(m)
            v /= np.linalg.norm(v)
            theta = float(rng.uniform(0.1, 6.0))
            a = pseudo_rotation_matrix(theta, v)
            assert np.allclose(a @ v, np.exp(1j * theta) * v)
            # fixes the orthogonal complement
            w = rng.standard_normal(m) + 1j * rng.standard_normal(m)
            w -= (v.conj() @ w) * v
            assert np.allclose(a @ w, w)

    def test_determinant_is_phase(self):
        rng = np.random.default_rng(1)
        for _ in range(10):
            v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
            theta = float(rng.uniform(0.1, 6.0))
            a = pseudo_rotation_matrix(theta, v)
            assert abs(np.linalg.det(a) - np.exp(1j * theta)) < 1e-10

    def test_zero_axis_rejected(self):
        with pytest.raises(DomainError):
            pseudo_rotation_matrix(1.0, np.zeros(3))


class TestFactorize:
    def test_identity_empty(self):
        assert factorize(np.eye(4)) == []

    def test_single_factor_roundtrip(self):
        v = np.array([0.6, 0.8, 0.0, 0.0], dtype=complex)
        theta = 2.2
        a = pseudo_rotation_matrix(theta, v)
        factors = factorize(a)
        assert len(factors) == 1
        rot = factors[0]
        assert rot.min_index == 2
        assert abs(rot.theta - theta) < 1e-10
        assert np.allclose(np.asarray(rot.axis), v)

    def test_axis_normalization_positive_real(self):
        # same rotation handed in with a rotated axis phase
        v = np.array([0.6, 0.8j, 0.0], dtype=complex) * np.exp(0.7j)
        a = pseudo_rotation_matrix(1.3, v)
        rot = factorize(a)[0]
        deep = rot.axis[rot.min_index - 1]
        assert deep.imag == pytest.approx(0.0, abs=1e-12)
        assert deep.real > 0

    def test_random_roundtrip(self):
        rng = np.random.default_rng(42)
        for m in range(2, 9):
            for _ in range(20):
                b = haar_unitary(m, rng)
                factors = factorize(b)
                assert np.max(np.abs(reconstruct(factors, m) - b)) <= 1e-10
                depths = [f.min_index for f in factors]
                assert depths == sorted(set(depths))

    def test_determinism_of_refactorization(self):
        rng = np.random.default_rng(43)
        for m in (3, 5, 8):
            b = haar_unitary(m, rng)
            first = factorize(b)
            again = factorize(reconstruct(first, m))
            assert len(first) == len(again)
            for f, g in zip(first, again):
                assert f.min_index == g.min_index
                assert abs(f.theta - g.theta) < 1e-8

    def test_axis_flag_containment(self):
        rng = np.random.default_rng(44)
        b = haar_unitary(6, rng)
        for rot in factorize(b):
            tail = np.asarray(rot.axis)[rot.min_index:]
            if tail.size:
                assert np.max(np.abs(tail)) <= 1e-10

    def test_non_unitary_rejected(self):
        with pytest.raises(DomainError):
            factorize(np.diag([2.0, 1.0]))


class TestSchubertIndex:
    def test_identity_is_zero_cell(self):
        idx = schubert_index_of(np.eye(4), 2)
        assert idx.indices == ()
        assert idx.dimension == 0

    def test_isotropy_factor_dies(self):
        # axis inside C^{m-p} lies in the isotropy subgroup
        a = pseudo_rotation_matrix(1.0, np.array([1.0, 0, 0, 0]))
        assert schubert_index_of(a, 2).indices == ()

    def test_deep_factor_survives(self):
        a = pseudo_rotation_matrix(1.0, np.array([0.0, 0, 0, 1.0]))
        idx = schubert_index_of(a, 2)
        assert idx.indices == (4,)
        assert idx.dimension == 7

    def test_strictly_increasing_enforced(self):
        with pytest.raises(DomainError):
            SchubertIndex((3, 3))


class TestEnumerateCells:
    def test_4_2(self):
        cells = enumerate_cells(4, 2)
        as_pairs = [(c.indices, d) for c, d in cells]
        assert as_pairs == [((), 0), ((3,), 5), ((4,), 7), ((3, 4), 12)]

    def test_sphere_case(self):
        cells = enumerate_cells(5, 1)
        assert [(c.indices, d) for c, d in cells] == [((), 0), ((5,), 9)]

    def test_5_4_matches_catalog_poincare(self):
        cells = enumerate_cells(5, 4)
        assert len(cells) == 16
        series = {}
        for _, dim in cells:
            series[dim] = series.get(dim, 0) + 1
        alg = complement_cohomology(MatrixKind.rectangular(5, 4), Coefficients.INTEGERS)
        assert series == poincare_polynomial(alg)

    def test_generating_polynomial_identity(self):
        # sum over cells of t^dim equals prod_{j=m-p+1}^m (1 + t^{2j-1})
        for m in range(2, 9):
            for p in range(1, m):
                series = {}
                for _, dim in enumerate_cells(m, p):
                    series[dim] = series.get(dim, 0) + 1
                product = {0: 1}
                for j in range(m - p + 1, m + 1):
                    nxt = {}
                    for k, c in product.items():
                        for e in (0, 2 * j - 1):
                            nxt[k + e] = nxt.get(k + e, 0) + c
                    product = nxt
                assert series == product, (m, p)

    def test_invalid_input(self):
        with pytest.raises(DomainError):
            enumerate_cells(3, 3)


def test_cell_dimension_formula():
    assert cell_dimension(()) == 0
    assert cell_dimension((3, 4)) == 12
    assert cell_dimension((5,)) == 9
