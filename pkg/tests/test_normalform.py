import random
from fractions import Fraction

import numpy as np
import pytest

from singcoh.catalog import MatrixKind
from singcoh.errors import DomainError, RankAmbiguityError
from singcoh.normalform import rank_normal_form, verify_certificate
from singcoh import ratlinalg as rl


def random_general(m, r, rng):
    while True:
        x = [[Fraction(rng.randint(-4, 4)) for _ in range(r)] for _ in range(m)]
        y = [[Fraction(rng.randint(-4, 4)) for _ in range(m)] for _ in range(r)]
        a = rl.mat_mul(x, y) if r else rl.zeros(m, m)
        if rl.rank(a) == r:
            return a


def random_symmetric_complex(m, r, rng):
    while True:
        z = rng.standard_normal((r, m)) + 1j * rng.standard_normal((r, m))
        a = z.T @ z if r else np.zeros((m, m), dtype=complex)
        if np.linalg.matrix_rank(a, tol=1e-10) == r:
            return a


def random_skew(m, r, rng):
    k = r // 2
    j = rl.zeros(r, r)
    for i in range(k):
        j[2 * i][2 * i + 1] = Fraction(1)
        j[2 * i + 1][2 * i] = Fraction(-1)
    while True:
        b = [[Fraction(rng.randint(-4, 4)) for _ in range(m)] for _ in range(r)]
        a = rl.mat_mul(rl.mat_mul(rl.transpose(b), j), b) if r else rl.zeros(m, m)
        if rl.rank(a) == r:
            return a


class TestGeneralExamples:
    def test_diag_2_0(self):
        cert = rank_normal_form([[2, 0], [0, 0]], MatrixKind.general(2))
        assert cert.rank == 1
        assert cert.right == [[Fraction(1), 0], [0, Fraction(1, 2)]]         # B
        assert cert.left == [[Fraction(1, 2), 0], [0, Fraction(1)]]          # C
        assert rl.det(cert.right) == rl.det(cert.left) == Fraction(1, 2)
        ok, diag = verify_certificate(cert)
        assert ok, diag

    def test_nonsingular_rejected(self):
        with pytest.raises(DomainError):
            rank_normal_form([[1, 0], [0, 1]], MatrixKind.general(2))

    def test_zero_matrix(self):
        cert = rank_normal_form(rl.zeros(3, 3), MatrixKind.general(3))
        assert cert.rank == 0
        assert cert.left == rl.identity(3)
        assert cert.right == rl.identity(3)


class TestSymmetricExamples:
    def test_already_normal(self):
        cert = rank_normal_form([[1, 0], [0, 0]], MatrixKind.symmetric(2))
        assert cert.rank == 1
        b = np.asarray(cert.left, dtype=complex)
        assert np.max(np.abs(b - np.eye(2))) < 1e-12
        assert cert.residual < 1e-12

    def test_rank_ambiguity_reported(self):
        a = np.diag([1.0, 1e-8, 0.0])
        with pytest.raises(RankAmbiguityError) as err:
            rank_normal_form(a, MatrixKind.symmetric(3))
        assert err.value.suspect_values

    def test_not_symmetric_rejected(self):
        with pytest.raises(DomainError):
            rank_normal_form([[0, 1], [2, 0]], MatrixKind.symmetric(2))


class TestSkewExamples:
    def test_e12_in_sk4(self):
        a = rl.zeros(4, 4)
        a[0][1] = Fraction(1)
        a[1][0] = Fraction(-1)
        cert = rank_normal_form(a, MatrixKind.skew_symmetric(4))
        assert cert.rank == 2
        assert rl.det(cert.left) == 1
        expected = rl.zeros(4, 4)
        expected[0][1] = Fraction(1)
        expected[1][0] = Fraction(-1)
        assert rl.mat_eq(cert.normal_form, expected)
        ok, diag = verify_certificate(cert)
        assert ok, diag

    def test_non_skew_rejected(self):
        with pytest.raises(DomainError):
            rank_normal_form([[0, 1], [1, 0]], MatrixKind.skew_symmetric(2))


class TestRandomInstances:
    def test_general_random(self):
        rng = random.Random(101)
        for m in range(2, 7):
            for r in range(m):
                for _ in range(4):
                    a = random_general(m, r, rng)
                    cert = rank_normal_form(a, MatrixKind.general(m))
                    assert cert.rank == r == rl.rank(a)
                    assert cert.residual == 0
                    assert rl.det(cert.right) == rl.det(cert.left)
                    ok, diag = verify_certificate(cert)
                    assert ok, diag

    def test_skew_random(self):
        rng = random.Random(102)
        for m in range(4, 7, 2):
            for r in range(0, m, 2):
                for _ in range(4):
                    a = random_skew(m, r, rng)
                    cert = rank_normal_form(a, MatrixKind.skew_symmetric(m))
                    assert cert.rank == r == rl.rank(a)
                    assert cert.residual == 0
                    assert rl.det(cert.left) == 1
                    ok, diag = verify_certificate(cert)
                    assert ok, diag

    def test_symmetric_random(self):
        rng = np.random.default_rng(103)
        for m in range(2, 7):
            for r in range(m):
                for _ in range(4):
                    a = random_symmetric_complex(m, r, rng)
                    cert = rank_normal_form(a, MatrixKind.symmetric(m))
                    assert cert.rank == r
                    assert cert.residual <= 1e-9
                    ok, diag = verify_certificate(cert)
                    assert ok, diag


class TestIdempotence:
    def test_general_normal_form_fixed(self):
        for m in range(2, 6):
            for r in range(m):
                a = rl.zeros(m, m)
                for i in range(r):
                    a[i][i] = Fraction(1)
                cert = rank_normal_form(a, MatrixKind.general(m))
                assert cert.left == rl.identity(m)
                assert cert.right == rl.identity(m)

    def test_skew_normal_form_fixed(self):
        for m in (4, 6):
            for k in range(m // 2):
                a = rl.zeros(m, m)
                for i in range(k):
                    a[2 * i][2 * i + 1] = Fraction(1)
                    a[2 * i + 1][2 * i] = Fraction(-1)
                cert = rank_normal_form(a, MatrixKind.skew_symmetric(m))
                assert rl.mat_eq(cert.normal_form, a)
                assert rl.det(cert.left) == 1


class TestVerifyTamper:
    def test_tampered_left_detected(self):
        rng = random.Random(7)
        a = random_general(3, 2, rng)
        cert = rank_normal_form(a, MatrixKind.general(3))
        bad_left = [row[:] for row in cert.left]
        bad_left[0][0] += 1
        from dataclasses import replace
        tampered = replace(cert, left=bad_left)
        ok, diag = verify_certificate(tampered)
        assert not ok
        assert "residual" in diag

    def test_tampered_float_detected(self):
        rng = np.random.default_rng(8)
        a = random_symmetric_complex(3, 2, rng)
        cert = rank_normal_form(a, MatrixKind.symmetric(3))
        bad = [row[:] for row in cert.left]
        bad[0][0] += 1.0
        from dataclasses import replace
        tampered = replace(cert, left=bad)
        ok, diag = verify_certificate(tampered)
        assert not ok
