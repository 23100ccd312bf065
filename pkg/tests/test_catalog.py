import pytest

from singcoh.catalog import (
    Coefficients,
    MatrixKind,
    complement_cohomology,
    inclusion_restriction,
    link_of_variety_cohomology,
    link_shift,
    milnor_fiber_cohomology,
)
from singcoh.errors import DomainError
from singcoh.grading import betti_table

Z = Coefficients.INTEGERS
MOD2 = Coefficients.MOD_TWO
K0 = Coefficients.CHAR_ZERO


def names(alg):
    return alg.generator_names


class TestMatrixKind:
    def test_rectangular_transpose_normalization(self):
        kind = MatrixKind.rectangular(4, 5)
        assert (kind.m, kind.p) == (5, 4)
        assert kind.transposed

    def test_rectangular_square_rejected(self):
        with pytest.raises(DomainError):
            MatrixKind.rectangular(4, 4)

    def test_skew_odd_rejected(self):
        with pytest.raises(DomainError):
            MatrixKind.skew_symmetric(5)

    def test_too_small(self):
        with pytest.raises(DomainError):
            MatrixKind.general(1)
        with pytest.raises(DomainError):
            MatrixKind.rectangular(2, 1)

    def test_dimensions(self):
        assert MatrixKind.general(3).complex_dimension == 9
        assert MatrixKind.symmetric(5).complex_dimension == 15
        assert MatrixKind.skew_symmetric(6).complex_dimension == 15
        assert MatrixKind.rectangular(5, 4).complex_dimension == 20


class TestMilnorFiber:
    def test_general_3(self):
        assert names(milnor_fiber_cohomology(MatrixKind.general(3), Z)) == ("e3", "e5")

    def test_skew_4(self):
        assert names(milnor_fiber_cohomology(MatrixKind.skew_symmetric(4), Z)) == ("e5",)

    def test_symmetric_4_char0_module(self):
        alg = milnor_fiber_cohomology(MatrixKind.symmetric(4), K0)
        assert names(alg) == ("e5",)
        assert alg.module_basis is not None
        assert (alg.module_basis.name, alg.module_basis.degree) == ("e4", 4)

    def test_symmetric_odd_char0(self):
        alg = milnor_fiber_cohomology(MatrixKind.symmetric(5), K0)
        assert names(alg) == ("e5", "e9")
        assert alg.module_basis is None

    def test_symmetric_mod2(self):
        alg = milnor_fiber_cohomology(MatrixKind.symmetric(4), MOD2)
        assert names(alg) == ("e2", "e3", "e4")

    def test_symmetric_2_char0_is_sphere(self):
        alg = milnor_fiber_cohomology(MatrixKind.symmetric(2), K0)
        assert names(alg) == ()
        assert alg.module_basis.degree == 2

    def test_rejections(self):
        with pytest.raises(DomainError):
            milnor_fiber_cohomology(MatrixKind.rectangular(5, 4), Z)
        with pytest.raises(DomainError):
            milnor_fiber_cohomology(MatrixKind.symmetric(4), Z)


class TestComplement:
    def test_symmetric_5(self):
        alg = complement_cohomology(MatrixKind.symmetric(5), K0)
        assert names(alg) == ("e1", "e5", "e9")

    def test_rectangular_5_4(self):
        alg = complement_cohomology(MatrixKind.rectangular(5, 4), Z)
        assert names(alg) == ("e3", "e5", "e7", "e9")

    def test_general_2(self):
        assert names(complement_cohomology(MatrixKind.general(2), Z)) == ("e1", "e3")

    def test_skew(self):
        assert names(complement_cohomology(MatrixKind.skew_symmetric(6), Z)) == ("e1", "e5", "e9")
        assert names(complement_cohomology(MatrixKind.skew_symmetric(2), Z)) == ("e1",)

    def test_symmetric_even(self):
        assert names(complement_cohomology(MatrixKind.symmetric(4), K0)) == ("e1", "e5")

    def test_symmetric_needs_char0(self):
        with pytest.raises(DomainError):
            complement_cohomology(MatrixKind.symmetric(4), Z)
        with pytest.raises(DomainError):
            complement_cohomology(MatrixKind.symmetric(4), MOD2)

    def test_generator_count_per_table(self):
        # symmetric m: ceil(m/2); general m: m; skew 2k: k; rect: p
        for m in range(2, 9):
            assert len(names(complement_cohomology(MatrixKind.general(m), Z))) == m
            assert len(names(complement_cohomology(MatrixKind.symmetric(m), K0))) == (m + 1) // 2
        for m in range(2, 9, 2):
            assert len(names(complement_cohomology(MatrixKind.skew_symmetric(m), Z))) == m // 2
        for m in range(3, 9):
            for p in range(2, m):
                assert len(names(complement_cohomology(MatrixKind.rectangular(m, p), Z))) == p


class TestLink:
    def test_symmetric_4(self):
        space, s = link_of_variety_cohomology(MatrixKind.symmetric(4))
        assert s == 12
        assert space.ranks == {12: 1, 13: 1, 17: 1}

    def test_symmetric_5_shift(self):
        _, s = link_of_variety_cohomology(MatrixKind.symmetric(5))
        assert s == 13

    def test_rectangular_shift(self):
        space, s = link_of_variety_cohomology(MatrixKind.rectangular(5, 4))
        assert s == 14

    def test_field_required(self):
        with pytest.raises(DomainError):
            link_of_variety_cohomology(MatrixKind.general(3), Z)

    def test_shift_consistency_all_kinds(self):
        # shift = real dim of matrix space - 2 - top degree of complement algebra
        kinds = [MatrixKind.general(m) for m in range(2, 9)]
        kinds += [MatrixKind.symmetric(m) for m in range(2, 9)]
        kinds += [MatrixKind.skew_symmetric(m) for m in range(4, 9, 2)]
        kinds += [MatrixKind.rectangular(m, p) for m in range(3, 9) for p in range(2, m)]
        for kind in kinds:
            alg = complement_cohomology(kind, K0)
            assert link_shift(kind) == kind.real_dimension - 2 - alg.top_degree, kind


class TestRestriction:
    def test_general_5_to_4(self):
        rmap = inclusion_restriction(MatrixKind.general(5), Z)
        alg = milnor_fiber_cohomology(MatrixKind.general(5), Z)
        assert rmap.mapping(alg) == {"e3": "e3", "e5": "e5", "e7": "e7", "e9": None}

    def test_symmetric_4_to_3_char0(self):
        rmap = inclusion_restriction(MatrixKind.symmetric(4), K0)
        alg = milnor_fiber_cohomology(MatrixKind.symmetric(4), K0)
        assert rmap.mapping(alg) == {"e5": "e5", "e4": None}

    def test_symmetric_5_to_4_char0(self):
        rmap = inclusion_restriction(MatrixKind.symmetric(5), K0)
        assert rmap.killed == ("e9",)

    def test_symmetric_mod2(self):
        rmap = inclusion_restriction(MatrixKind.symmetric(4), MOD2)
        assert rmap.killed == ("e4",)

    def test_skew_6_to_4(self):
        rmap = inclusion_restriction(MatrixKind.skew_symmetric(6), Z)
        assert rmap.killed == ("e9",)
        assert rmap.target_kind == MatrixKind.skew_symmetric(4)

    def test_rectangular(self):
        rmap = inclusion_restriction(MatrixKind.rectangular(5, 4), Z)
        alg = complement_cohomology(MatrixKind.rectangular(5, 4), Z)
        assert rmap.mapping(alg) == {"e3": "e3", "e5": "e5", "e7": "e7", "e9": None}
        assert rmap.target_kind == MatrixKind.rectangular(4, 3)

    def test_too_small(self):
        with pytest.raises(DomainError):
            inclusion_restriction(MatrixKind.skew_symmetric(2), Z)

    def test_milnor_tower_consistency(self):
        # restriction image of the fiber catalog at m is the exterior part of
        # the catalog at the next size (the smaller Euler class is not hit)
        for m in range(3, 9):
            for kind, coeffs in [(MatrixKind.general(m), (Z,)),
                                 (MatrixKind.symmetric(m), (MOD2, K0))]:
                for c in coeffs:
                    rmap = inclusion_restriction(kind, c)
                    image = rmap.apply(milnor_fiber_cohomology(kind, c))
                    target = milnor_fiber_cohomology(rmap.target_kind, c)
                    assert image.generators == target.generators
                    if image.module_basis is not None:
                        assert image.module_basis == target.module_basis
        for m in range(6, 9, 2):
            kind = MatrixKind.skew_symmetric(m)
            rmap = inclusion_restriction(kind, Z)
            image = rmap.apply(milnor_fiber_cohomology(kind, Z))
            assert image == milnor_fiber_cohomology(rmap.target_kind, Z)

    def test_complement_tower_consistency(self):
        for m in range(3, 9):
            for kind, c in [(MatrixKind.general(m), Z), (MatrixKind.symmetric(m), K0)]:
                rmap = inclusion_restriction(kind, c)
                image = rmap.apply(complement_cohomology(kind, c))
                assert image == complement_cohomology(rmap.target_kind, c)
        for m in range(4, 9):
            for p in range(3, m):
                kind = MatrixKind.rectangular(m, p)
                rmap = inclusion_restriction(kind, Z)
                image = rmap.apply(complement_cohomology(kind, Z))
                assert image == complement_cohomology(rmap.target_kind, Z)


def test_rectangular_betti_is_stiefel_poincare():
    # total rank of the rectangular complement algebra is 2^p
    for m in range(3, 8):
        for p in range(2, m):
            alg = complement_cohomology(MatrixKind.rectangular(m, p), Z)
            assert betti_table(alg).total_rank == 2 ** p
