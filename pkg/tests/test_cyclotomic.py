"""Exact cyclotomic arithmetic: canonical form, embeddings, field axioms."""
from __future__ import annotations

import random
from fractions import Fraction

import pytest

from coverspectra.cyclotomic import CONDUCTOR_CAP, Cyclotomic, _cyclotomic_poly, cyclo_sum
from coverspectra.errors import ConductorCapExceeded


def test_cyclotomic_polynomials_known_values():
    assert _cyclotomic_poly(1) == (-1, 1)
    assert _cyclotomic_poly(2) == (1, 1)
    assert _cyclotomic_poly(3) == (1, 1, 1)
    assert _cyclotomic_poly(4) == (1, 0, 1)
    assert _cyclotomic_poly(6) == (1, -1, 1)
    assert _cyclotomic_poly(8) == (1, 0, 0, 0, 1)
    assert _cyclotomic_poly(12) == (1, 0, -1, 0, 1)


def test_sum_of_all_mth_roots_vanishes():
    for m in (2, 3, 4, 5, 6, 7, 8, 9, 12):
        total = cyclo_sum(Cyclotomic.root_of_unity(m, k) for k in range(m))
        assert total.is_zero(), m


def test_canonical_form_zeta_power_reduction():
    # zeta_3^2 = -1 - zeta_3
    z = Cyclotomic.root_of_unity(3, 2)
    assert z.coeffs[0] == -1 and z.coeffs[1] == -1 and z.coeffs[2] == 0
    # zeta_4^2 = -1
    z4 = Cyclotomic.root_of_unity(4, 2)
    assert z4 == Cyclotomic.from_rational(-1)


def test_cross_conductor_equality_and_embedding():
    one_a = Cyclotomic.from_rational(1)
    one_b = Cyclotomic.root_of_unity(6, 0)
    assert one_a == one_b
    # zeta_3 expressed at conductor 6: zeta_6^2
    z3 = Cyclotomic.root_of_unity(3)
    z6sq = Cyclotomic.root_of_unity(6, 2)
    assert z3 == z6sq
    assert z3.embedded(12) == Cyclotomic.root_of_unity(12, 4)


def test_field_axioms_randomized():
    rng = random.Random(3)

    def rand_val(m):
        return cyclo_sum(
            Cyclotomic.root_of_unity(m, rng.randrange(m)) * Fraction(rng.randrange(-3, 4))
            for _ in range(3)
        )

    for m in (3, 4, 5, 6, 8, 12):
        for _ in range(10):
            a, b, c = rand_val(m), rand_val(m), rand_val(m)
            assert (a + b) * c == a * c + b * c
            assert a * b == b * a
            assert (a - a).is_zero()
            if not a.is_zero():
                assert a * a.inverse() == Cyclotomic.one()


def test_conjugation_is_an_involution_and_norm_nonnegative():
    rng = random.Random(9)
    for m in (3, 5, 7, 8, 12):
        for _ in range(8):
            a = cyclo_sum(
                Cyclotomic.root_of_unity(m, rng.randrange(m)) * Fraction(rng.randrange(-2, 3))
                for _ in range(3)
            )
            assert a.conjugate().conjugate() == a
            # trace of a * conj(a) under the identity embedding is |a|^2 >= 0
            prod = a * a.conjugate()
            assert abs(prod.to_complex().imag) < 1e-9
            assert prod.to_complex().real >= -1e-9


def test_rational_detection_and_division():
    z = Cyclotomic.root_of_unity(5)
    total = cyclo_sum(Cyclotomic.root_of_unity(5, k) for k in range(1, 5))
    assert total.to_rational() == -1
    assert (z / z) == Cyclotomic.one()
    with pytest.raises(ValueError):
        z.to_rational()
    with pytest.raises(ZeroDivisionError):
        Cyclotomic.one() / Cyclotomic.zero()


def test_conductor_cap_enforced():
    with pytest.raises(ConductorCapExceeded):
        Cyclotomic.root_of_unity(CONDUCTOR_CAP + 1)
    a = Cyclotomic.root_of_unity(9901)  # prime below cap
    b = Cyclotomic.root_of_unity(3)
    with pytest.raises(ConductorCapExceeded):
        _ = a + b


def test_json_value_shape():
    val = Cyclotomic.root_of_unity(4) * Fraction(3, 2)
    data = val.json_value()
    assert data["conductor"] == 4
    assert data["coefficients"] == ["0/1", "3/2", "0/1", "0/1"]
