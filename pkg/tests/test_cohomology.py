"""Tests for the classifying-stack dimension calculus.

The independent oracle here is `weak_compositions`: a direct enumeration of
exponent tuples summing to a given degree.  It uses neither binomials nor
convolution, so it can arbitrate between the two implementations.
"""

import functools
import random

import pytest

from hopfdeform.cohomology import (
    JumpQuery,
    PoincareSeries,
    classifying_series,
    dim_classifying,
    dimension_table,
    fiber_jump,
    jump_certificate,
    kunneth,
    kunneth_power,
    minimal_n_for_jump,
    projective_bundle_dim,
    series_alpha_p,
    series_constant_cyclic,
    stabilized_bundle_dim,
    verify_binomial_vs_kunneth,
)
from hopfdeform.errors import TruncationError, UnsupportedParametersError
from hopfdeform.rings import Fiber


@functools.cache
def weak_compositions(total, parts):
    """Count tuples of `parts` nonnegative integers summing to `total`."""
    if parts == 0:
        return 1 if total == 0 else 0
    return sum(weak_compositions(total - first, parts - 1)
               for first in range(total + 1))


def random_series(rng, max_degree, cap=9):
    return PoincareSeries(rng.randrange(cap + 1) for _ in range(max_degree + 1))


class TestSeries:
    def test_all_ones_entries(self):
        for make in (series_constant_cyclic, series_alpha_p):
            s = make(12)
            assert s[0] == 1
            assert s[7] == 1
            assert s.max_degree == 12
            assert sum(s[i] for i in range(9)) == 9

    def test_truncation_enforced(self):
        s = series_constant_cyclic(3)
        with pytest.raises(TruncationError):
            s[4]
        with pytest.raises(UnsupportedParametersError):
            s[-1]

    def test_invalid_series(self):
        with pytest.raises(UnsupportedParametersError):
            PoincareSeries(())
        with pytest.raises(UnsupportedParametersError):
            PoincareSeries((1, -1))
        with pytest.raises(UnsupportedParametersError):
            series_alpha_p(-1)

    def test_equality(self):
        assert PoincareSeries((1, 2)) == PoincareSeries((1, 2))
        assert PoincareSeries((1, 2)) != PoincareSeries((1, 2, 0))


class TestKunneth:
    def test_delta_is_unit(self):
        rng = random.Random(11)
        delta = PoincareSeries((1,) + (0,) * 6)
        for _ in range(10):
            s = random_series(rng, 6)
            assert kunneth(delta, s) == s
            assert kunneth(s, delta) == s

    def test_ones_squared(self):
        s = kunneth(series_alpha_p(10), series_alpha_p(10))
        for i in range(11):
            assert s[i] == i + 1

    def test_commutative(self):
        rng = random.Random(12)
        for _ in range(20):
            a = random_series(rng, 8)
            b = random_series(rng, 8)
            assert kunneth(a, b) == kunneth(b, a)

    def test_truncates_at_min(self):
        a = series_alpha_p(5)
        b = series_alpha_p(9)
        assert kunneth(a, b).max_degree == 5

    def test_power_counts_compositions(self):
        single = series_alpha_p(8)
        for factors in range(1, 6):
            power = kunneth_power(single, factors)
            for i in range(9):
                assert power[i] == weak_compositions(i, factors)

    def test_power_needs_a_factor(self):
        with pytest.raises(UnsupportedParametersError):
            kunneth_power(series_alpha_p(3), 0)


class TestDimensions:
    def test_first_degree_cell(self):
        # the 2-vs-1 jump of the original rank-p^2 family, at n = 1, degree 1
        assert dim_classifying(1, 1, Fiber.SPECIAL) == 2
        assert dim_classifying(1, 1, Fiber.GENERIC) == 1

    def test_degree_zero_is_one(self):
        for n in range(1, 7):
            for fiber in (Fiber.SPECIAL, Fiber.GENERIC):
                assert dim_classifying(n, 0, fiber) == 1

    def test_against_enumeration(self):
        # special fiber at n counts like a generic fiber at 2n
        for n in range(1, 5):
            for i in range(8):
                assert dim_classifying(n, i, Fiber.GENERIC) == weak_compositions(i, n)
                assert dim_classifying(n, i, Fiber.SPECIAL) == weak_compositions(i, 2 * n)
        assert dim_classifying(3, 4, Fiber.SPECIAL) == weak_compositions(4, 6) == 126

    def test_pascal_consistency(self):
        # cross-multiplied so everything stays integral
        for fiber, width in ((Fiber.GENERIC, 1), (Fiber.SPECIAL, 2)):
            for n in range(1, 7):
                m = width * n
                for i in range(1, 21):
                    lhs = dim_classifying(n, i, fiber) * i
                    rhs = dim_classifying(n, i - 1, fiber) * (m + i - 1)
                    assert lhs == rhs

    def test_invalid_inputs(self):
        with pytest.raises(UnsupportedParametersError):
            dim_classifying(0, 1, Fiber.SPECIAL)
        with pytest.raises(UnsupportedParametersError):
            dim_classifying(1, -1, Fiber.SPECIAL)
        with pytest.raises(UnsupportedParametersError):
            dim_classifying(1, 1, "special")

    def test_series_matches_scalar(self):
        s = classifying_series(2, Fiber.SPECIAL, 6)
        assert s.coefficients == tuple(
            dim_classifying(2, i, Fiber.SPECIAL) for i in range(7))

    def test_huge_cells_widen(self):
        value = dim_classifying(40, 60, Fiber.SPECIAL)
        assert value > 2**64
        assert value * 60 == dim_classifying(40, 59, Fiber.SPECIAL) * (80 + 59)


class TestProjectiveBundle:
    def test_even_shift_sum(self):
        s = series_alpha_p(10)
        assert projective_bundle_dim(s, 50, 4) == 3
        assert projective_bundle_dim(s, 0, 4) == s[4]
        assert projective_bundle_dim(s, 50, 1) == s[1]

    def test_monotone_and_stabilizes(self):
        rng = random.Random(13)
        for _ in range(10):
            s = random_series(rng, 9)
            for i in range(10):
                values = [projective_bundle_dim(s, bundle, i) for bundle in range(8)]
                assert values == sorted(values)
                floor = stabilized_bundle_dim(i)
                assert len({v for v in values[floor:]}) == 1

    def test_truncation(self):
        s = series_alpha_p(3)
        with pytest.raises(TruncationError):
            projective_bundle_dim(s, 2, 4)
        with pytest.raises(UnsupportedParametersError):
            projective_bundle_dim(s, -1, 2)


class TestJumpSolver:
    def test_query_validation(self):
        with pytest.raises(UnsupportedParametersError):
            JumpQuery(0, 1)
        with pytest.raises(UnsupportedParametersError):
            JumpQuery(1, 0)
        with pytest.raises(UnsupportedParametersError):
            JumpQuery(1, 1, -1)

    def test_known_solutions(self):
        assert minimal_n_for_jump(JumpQuery(1, 1)) == 1
        assert minimal_n_for_jump(JumpQuery(5, 1)) == 5
        assert minimal_n_for_jump(JumpQuery(1, 2)) == 1

    def test_degree_one_closed_form(self):
        # excess at degree 1 is exactly n
        for e in range(1, 51):
            assert minimal_n_for_jump(JumpQuery(e, 1)) == e

    def test_minimality_on_grid(self):
        def excess(n, i):
            return (dim_classifying(n, i, Fiber.SPECIAL)
                    - dim_classifying(n, i, Fiber.GENERIC))

        for e in range(1, 51):
            for i in range(1, 11):
                n = minimal_n_for_jump(JumpQuery(e, i))
                assert excess(n, i) >= e
                if n > 1:
                    assert excess(n - 1, i) < e

    def test_nondecreasing_in_gap(self):
        for i in range(1, 11):
            previous = 1
            for e in range(1, 51):
                n = minimal_n_for_jump(JumpQuery(e, i))
                assert n >= previous
                previous = n


class TestFiberJump:
    def test_degree_one(self):
        for bundle in (0, 1, 5):
            assert fiber_jump(1, 1, bundle) == 1

    def test_degree_zero_vanishes(self):
        for n in range(1, 5):
            assert fiber_jump(n, 0, 3) == 0

    def test_two_by_two(self):
        # special sum 10 + 1, generic sum 3 + 1
        assert fiber_jump(2, 2, 1) == 7
        assert fiber_jump(2, 2, 0) == 10 - 3

    def test_default_is_stabilized(self):
        for n in (1, 2, 3):
            for i in range(7):
                assert fiber_jump(n, i) == fiber_jump(n, i, stabilized_bundle_dim(i))
                assert fiber_jump(n, i) == fiber_jump(n, i, 50)

    def test_certificate_contents(self):
        cert = jump_certificate(2, 2, 1)
        assert [(t.degree, t.special, t.generic) for t in cert.terms] == [
            (2, 10, 3), (0, 1, 1)]
        assert cert.special_total == 11
        assert cert.generic_total == 4
        assert cert.jump == 7
        assert cert.ok
        payload = cert.to_dict()
        assert payload["termwise_dominated"] is True
        assert payload["jump"] == 7
        assert payload["terms"][0] == {
            "degree": 2, "special": 10, "generic": 3, "dominated": True}

    def test_certificate_matches_jump(self):
        for n in (1, 2, 4):
            for i in range(8):
                cert = jump_certificate(n, i)
                assert cert.jump == fiber_jump(n, i)
                assert cert.ok

    def test_solver_feeds_jump(self):
        # the solved n reaches the requested gap after the bundle sum too
        for e in (1, 3, 10, 25):
            for i in (1, 2, 5, 10):
                n = minimal_n_for_jump(JumpQuery(e, i))
                cert = jump_certificate(n, i)
                assert cert.ok
                assert cert.jump >= e


class TestConvolutionCrosscheck:
    def test_generic_matches(self):
        report = verify_binomial_vs_kunneth(3, 10)
        assert report.ok
        generic = [e for e in report.entries if e.fiber is Fiber.GENERIC]
        assert len(generic) == 11
        for entry in generic:
            assert entry.convolution == weak_compositions(entry.degree, 3)

    def test_single_factor(self):
        report = verify_binomial_vs_kunneth(1, 15)
        assert report.ok
        assert all(entry.binomial == 1
                   for entry in report.entries if entry.fiber is Fiber.GENERIC)

    def test_special_matches(self):
        report = verify_binomial_vs_kunneth(4, 15)
        assert report.ok
        special = [e for e in report.entries if e.fiber is Fiber.SPECIAL]
        for entry in special[:9]:
            assert entry.convolution == weak_compositions(entry.degree, 8)

    def test_serialization(self):
        payload = verify_binomial_vs_kunneth(2, 4).to_dict()
        assert payload["ok"] is True
        assert payload["n"] == 2
        assert len(payload["entries"]) == 10
        assert payload["entries"][0] == {
            "fiber": "generic", "degree": 0,
            "convolution": 1, "binomial": 1, "match": True}


class TestDimensionTable:
    def test_row_layout(self):
        rows = dimension_table(2, 3)
        assert len(rows) == 2 * 4 * 3
        assert rows[0] == {"n": 1, "i": 0, "fiber": "generic", "dim": 1}
        assert rows[1] == {"n": 1, "i": 0, "fiber": "special", "dim": 1}
        assert rows[2] == {"n": 1, "i": 0, "fiber": "gap", "dim": 0}

    def test_first_degree_gap_row(self):
        rows = dimension_table(3, 2)
        cell = {r["fiber"]: r["dim"] for r in rows if r["n"] == 1 and r["i"] == 1}
        assert cell == {"generic": 1, "special": 2, "gap": 1}

    def test_gap_rows_consistent(self):
        rows = dimension_table(4, 6)
        by_cell = {}
        for r in rows:
            by_cell.setdefault((r["n"], r["i"]), {})[r["fiber"]] = r["dim"]
        for values in by_cell.values():
            assert values["gap"] == values["special"] - values["generic"]
