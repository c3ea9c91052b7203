"""Ladder operators: construction, verification, pairing, the table."""

from fractions import Fraction

import pytest

from conftest import random_hermitian_quadratic
from quadladder.adjoint import ComplexMatrix, adjoint_matrix, validate_quadratic
from quadladder.bateman import build_hd
from quadladder.errors import DefectiveSpectrumError
from quadladder.ladders import (
    build_ladders,
    commutator_table,
    ladder_shift_check,
    ladders_to_json,
)
from quadladder.spectral import eigen_decompose
from quadladder.weyl import ComplexRational, WeylPolynomial, commutator, dagger


def bateman_ladders(b):
    ham = build_hd(b)
    return ham, build_ladders(ham, eigen_decompose(adjoint_matrix(ham)))


EXPECTED_TEXT = [
    "x - y + i*px + i*py",
    "x + y + i*px - i*py",
    "x - y - i*px - i*py",
    "x + y - i*px + i*py",
]


class TestBatemanLadders:
    @pytest.mark.parametrize("b", [Fraction(1, 2), Fraction(1), Fraction(2)])
    def test_canonical_quadruple(self, b):
        ham, ladders = bateman_ladders(b)
        half = b / 2
        assert [str(lad.z) for lad in ladders] == EXPECTED_TEXT
        assert [lad.lam_exact for lad in ladders] == [
            ComplexRational(-1, -half),
            ComplexRational(-1, half),
            ComplexRational(1, -half),
            ComplexRational(1, half),
        ]

    @pytest.mark.parametrize("b", [Fraction(1, 2), Fraction(1), Fraction(2)])
    def test_commutation_identity_exact(self, b):
        ham, ladders = bateman_ladders(b)
        for lad in ladders:
            assert commutator(ham.op, lad.z) == lad.lam_exact * lad.z

    def test_sorted_by_frequency(self):
        _, ladders = bateman_ladders(Fraction(1))
        keys = [(lad.lam.real, lad.lam.imag) for lad in ladders]
        assert keys == sorted(keys)

    @pytest.mark.parametrize("b", [Fraction(1, 2), Fraction(1), Fraction(2)])
    def test_commutator_table_golden(self, b):
        _, ladders = bateman_ladders(b)
        table = commutator_table(ladders)
        values = [[int(complex(table[i, j]).real) for j in range(4)] for i in range(4)]
        assert values == [
            [0, 0, 0, 4],
            [0, 0, 4, 0],
            [0, -4, 0, 0],
            [-4, 0, 0, 0],
        ]
        for i in range(4):
            for j in range(4):
                assert table[i, j].is_real

    def test_dagger_swaps_partners(self):
        _, ladders = bateman_ladders(Fraction(1))
        z1, z2, z3, z4 = (lad.z for lad in ladders)
        assert dagger(z1) == z3
        assert dagger(z2) == z4
        assert dagger(z3) == z1
        assert dagger(z4) == z2

    def test_shift_check_returns_frequency(self):
        ham, ladders = bateman_ladders(Fraction(2))
        for lad in ladders:
            assert ladder_shift_check(ham, lad) == lad.lam_exact


class TestDegenerateAndDefective:
    def test_undamped_pairs(self):
        ham, ladders = bateman_ladders(Fraction(0))
        assert [str(lad.z) for lad in ladders] == [
            "x + i*px",
            "y - i*py",
            "x - i*px",
            "y + i*py",
        ]
        assert [lad.lam_exact for lad in ladders] == [
            ComplexRational(-1), ComplexRational(-1),
            ComplexRational(1), ComplexRational(1),
        ]
        for lad in ladders:
            assert commutator(ham.op, lad.z) == lad.lam_exact * lad.z

    def test_free_particle_raises(self):
        p = WeylPolynomial.momentum(1, 1)
        ham = validate_quadratic(Fraction(1, 2) * (p * p))
        spectrum = eigen_decompose(adjoint_matrix(ham))
        with pytest.raises(DefectiveSpectrumError):
            build_ladders(ham, spectrum)

    def test_single_mode_oscillator(self):
        x = WeylPolynomial.position(1, 1)
        p = WeylPolynomial.momentum(1, 1)
        ham = validate_quadratic(Fraction(1, 2) * (p * p + x * x))
        ladders = build_ladders(ham, eigen_decompose(adjoint_matrix(ham)))
        assert [str(lad.z) for lad in ladders] == ["x1 + i*p1", "x1 - i*p1"]
        table = commutator_table(ladders)
        assert table[0, 1] == ComplexRational(2)
        assert table[1, 0] == ComplexRational(-2)


class TestRandomHamiltonians:
    def test_identity_and_antisymmetry(self, rng):
        checked = 0
        while checked < 25:
            ham = validate_quadratic(
                random_hermitian_quadratic(rng, rng.choice((1, 2))))
            spectrum = eigen_decompose(adjoint_matrix(ham))
            if spectrum.defective:
                continue
            checked += 1
            ladders = build_ladders(ham, spectrum)
            assert len(ladders) == 2 * ham.num_modes
            table = commutator_table(ladders)
            n = table.size
            for i in range(n):
                for j in range(n):
                    assert table[i, j] == -1 * table[j, i]
            for lad in ladders:
                if lad.lam_exact is not None:
                    assert commutator(ham.op, lad.z) == lad.lam_exact * lad.z
                else:
                    residual = commutator(ham.op, lad.z) - \
                        ComplexRational.from_complex(lad.lam) * lad.z
                    coeffs = ([residual.constant_term()]
                              + residual.linear_coefficients())
                    assert max(abs(complex(c)) for c in coeffs) < 1e-8


class TestFloatPath:
    def test_float_matrix_still_yields_ladders(self):
        ham = build_hd(Fraction(1))
        float_matrix = ComplexMatrix(adjoint_matrix(ham).entries)
        with pytest.warns(Warning):
            spectrum = eigen_decompose(float_matrix)
        ladders = build_ladders(ham, spectrum)
        assert len(ladders) == 4
        for lad in ladders:
            got = ladder_shift_check(ham, lad)
            assert abs(complex(got) - lad.lam) < 1e-9


class TestSerialization:
    def test_schema(self):
        ham, ladders = bateman_ladders(Fraction(1))
        doc = ladders_to_json(ladders, commutator_table(ladders))
        assert [lad["text"] for lad in doc["ladders"]] == EXPECTED_TEXT
        first = doc["ladders"][0]
        assert first["lambda"] == [-1.0, -0.5]
        assert first["lambda_exact"] == [-1, 1, -1, 2]
        assert first["coefficients_exact"] == [
            [1, 1, 0, 1], [-1, 1, 0, 1], [0, 1, 1, 1], [0, 1, 1, 1]]
        assert doc["commutator_table"][0][3] == [4, 1, 0, 1]

    def test_table_optional(self):
        _, ladders = bateman_ladders(Fraction(1))
        doc = ladders_to_json(ladders)
        assert "commutator_table" not in doc
