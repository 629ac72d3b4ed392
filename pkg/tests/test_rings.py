"""Scalar arithmetic: canonical forms, units, fiber maps, guards."""

import random

import pytest

from hopfdeform.errors import (
    ContextMismatchError,
    DegreeOverflowError,
    NonUnitError,
    PrimeMismatchError,
    UnsupportedParametersError,
)
from hopfdeform.rings import (
    Fiber,
    FpElement,
    FunctionField,
    LocalRing,
    LocalRingElement,
    MAX_T_DEGREE,
    Prime,
    PrimeField,
    RationalFunction,
    UnivariatePoly,
    poly_gcd,
    specialize_scalar,
)


def poly(coeffs, p):
    return UnivariatePoly(coeffs, p)


def local(num, den, p):
    return LocalRingElement(poly(num, p), poly(den, p))


def rat(num, den, p):
    return RationalFunction(poly(num, p), poly(den, p))


def random_poly(rng, p, max_deg=4):
    return poly([rng.randrange(p) for _ in range(rng.randrange(max_deg + 1) + 1)], p)


def random_local(rng, p):
    num = random_poly(rng, p)
    while True:
        den = random_poly(rng, p)
        if den.at_zero() != 0:
            return LocalRingElement(num, den)


class TestPrime:
    def test_accepts_small_primes(self):
        for p in (2, 3, 5, 7):
            assert Prime(p).p == p

    def test_rejects_composites_and_large(self):
        for bad in (0, 1, 4, 6, 9, 11):
            with pytest.raises(UnsupportedParametersError):
                Prime(bad)


class TestFpElement:
    def test_field_arithmetic(self):
        a = FpElement(4, 5)
        b = FpElement(3, 5)
        assert (a + b).residue == 2
        assert (a - b).residue == 1
        assert (a * b).residue == 2
        assert (-a).residue == 1
        assert (a / b).residue == 3  # 4 * 3^-1 = 4 * 2 = 8 = 3 mod 5

    def test_invert(self):
        for p in (2, 3, 5, 7):
            for r in range(1, p):
                a = FpElement(r, p)
                assert (a * a.invert()).residue == 1
        with pytest.raises(NonUnitError):
            FpElement(0, 3).invert()

    def test_prime_mismatch_is_hard_error(self):
        with pytest.raises(PrimeMismatchError):
            FpElement(1, 2) + FpElement(1, 3)
        with pytest.raises(ContextMismatchError):
            FpElement(1, 2) + poly([1], 2)


class TestUnivariatePoly:
    def test_canonical_trailing_zeros_stripped(self):
        assert poly([1, 2, 0, 0], 3).coeffs == (1, 2)
        assert poly([0], 3).is_zero()

    def test_product(self):
        # (1+t)(1+t) = 1 + 2t + t^2
        sq = poly([1, 1], 5) * poly([1, 1], 5)
        assert sq.coeffs == (1, 2, 1)
        # over F_2 the cross term cancels
        assert (poly([1, 1], 2) * poly([1, 1], 2)).coeffs == (1, 0, 1)

    def test_divmod_and_gcd(self):
        p = 5
        a = poly([1, 0, 1], p) * poly([2, 3], p)
        q, r = a.divmod(poly([1, 0, 1], p))
        assert r.is_zero()
        assert q == poly([2, 3], p)
        g = poly_gcd(a, poly([1, 0, 1], p))
        assert g == poly([1, 0, 1], p)

    def test_str_ascending_terms(self):
        assert str(poly([1, 1, 1], 2)) == "1+t+t^2"
        assert str(poly([0, 0, 2], 3)) == "2*t^2"
        assert str(poly([], 3)) == "0"

    def test_degree_guard(self):
        big = UnivariatePoly.t(2, MAX_T_DEGREE // 2 + 1)
        with pytest.raises(DegreeOverflowError):
            big * big


class TestLocalRingElement:
    def test_canonical_reduction(self):
        # (t + t^2)/(1 + t) = t
        a = local([0, 1, 1], [1, 1], 3)
        assert a == local([0, 1], [1], 3)
        assert str(a) == "t"

    def test_monic_denominator(self):
        # 1/(2 + 2t) is stored with monic denominator (1 + t) and scaled numerator
        a = local([1], [2, 2], 3)
        assert a.den == poly([1, 1], 3)
        assert a.num == poly([2], 3)

    def test_denominator_must_be_unit_at_zero(self):
        with pytest.raises(NonUnitError):
            local([1], [0, 1], 3)
        # ... but reduction happens first: (t)/(t) = 1 is fine
        assert local([0, 1], [0, 1], 3) == local([1], [1], 3)

    def test_unit_iff_nonzero_at_zero(self):
        assert local([1, 1], [1], 3).is_unit()
        assert not local([0, 1], [1], 3).is_unit()
        with pytest.raises(NonUnitError):
            local([0, 1], [1], 3).invert()
        u = local([1, 2], [1, 1, 1], 5)
        assert u * u.invert() == local([1], [1], 5)

    def test_division_landing_in_ring_is_allowed(self):
        # t*x style quotients: (t^2)/(t) = t stays in the ring even though t is not a unit
        assert local([0, 0, 1], [1], 3) / local([0, 1], [1], 3) == local([0, 1], [1], 3)
        with pytest.raises(NonUnitError):
            local([1], [1], 3) / local([0, 1], [1], 3)

    def test_serialization(self):
        assert str(local([1, 1], [1, 1, 1], 2)) == "(1+t)/(1+t+t^2)"
        assert str(local([0, 1], [1], 2)) == "t"

    def test_t_valuation(self):
        assert local([0, 0, 2], [1, 1], 3).t_valuation() == 2
        assert LocalRing(3).zero().t_valuation() == float("inf")


class TestRationalFunction:
    def test_inverse_of_nonunit_numerator(self):
        a = rat([0, 1], [1], 3)  # t
        assert a.invert() == rat([1], [0, 1], 3)
        with pytest.raises(NonUnitError):
            FunctionField(3).zero().invert()

    def test_no_mixing_with_local_ring(self):
        with pytest.raises(ContextMismatchError):
            rat([1], [1], 3) + local([1], [1], 3)


class TestSpecialization:
    def test_special_values(self):
        a = local([1, 1], [1, 1, 1], 2)  # (1+t)/(1+t+t^2)
        assert specialize_scalar(a, Fiber.SPECIAL) == FpElement(1, 2)
        b = local([0, 1], [1], 5)
        assert specialize_scalar(b, Fiber.SPECIAL) == FpElement(0, 5)

    def test_generic_is_inclusion(self):
        a = local([1, 2], [1, 1], 3)
        g = specialize_scalar(a, Fiber.GENERIC)
        assert isinstance(g, RationalFunction)
        assert g.num == a.num and g.den == a.den

    def test_ring_homomorphism_seeded(self):
        rng = random.Random(20260823)
        for p in (2, 3, 5):
            for _ in range(40):
                a = random_local(rng, p)
                b = random_local(rng, p)
                for fiber in (Fiber.SPECIAL, Fiber.GENERIC):
                    fa = specialize_scalar(a, fiber)
                    fb = specialize_scalar(b, fiber)
                    assert specialize_scalar(a + b, fiber) == fa + fb
                    assert specialize_scalar(a * b, fiber) == fa * fb

    def test_units_map_to_units_on_special_fiber(self):
        rng = random.Random(7)
        for _ in range(30):
            a = random_local(rng, 3)
            if a.is_unit():
                assert specialize_scalar(a, Fiber.SPECIAL).is_unit()


class TestDescriptors:
    def test_equality_and_tags(self):
        assert PrimeField(3) == PrimeField(3)
        assert PrimeField(3) != PrimeField(5)
        assert LocalRing(2).tag == "F2[t]_(t)"
        assert FunctionField(2).tag == "F2(t)"
        assert PrimeField(7).tag == "F7"

    def test_fiber_ring(self):
        R = LocalRing(3)
        assert R.fiber_ring(Fiber.SPECIAL) == PrimeField(3)
        assert R.fiber_ring(Fiber.GENERIC) == FunctionField(3)

    def test_enumeration(self):
        assert [e.residue for e in PrimeField(5).elements()] == [0, 1, 2, 3, 4]
