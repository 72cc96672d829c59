import itertools
import math
import random
from fractions import Fraction

import pytest

from cipos.bounds import (
    BoundReport,
    main_theorem_degree_bound,
    monic_root_bound,
    morse_closed_form,
    morse_coeff,
    rough_bound_limit,
    rough_degree_bound,
    shifted_positivity_threshold,
    surface_degree_bound,
    symmetric_positivity_threshold,
)
from cipos.polyring import MultidegreePoly, elementary_symmetric


class TestMonicRootBound:
    def test_quadratic(self):
        assert monic_root_bound([1, -3]) == 4
        # soundness at the bound: 16 - 12 + 1 = 5 > 0
        assert 4 * 4 - 3 * 4 + 1 > 0

    def test_pure_power(self):
        assert monic_root_bound([0, 0, 0]) == 1

    def test_linear(self):
        assert monic_root_bound([-10]) == 11
        assert 11 - 10 > 0

    def test_degree_zero_rejected(self):
        with pytest.raises(ValueError):
            monic_root_bound([])

    def test_soundness_random(self):
        rng = random.Random(13)
        for _ in range(60):
            k = rng.randint(1, 5)
            coeffs = [Fraction(rng.randint(-50, 50), rng.randint(1, 5)) for _ in range(k)]
            bound = monic_root_bound(coeffs)
            for x in (bound, bound + 1, bound + Fraction(7, 2)):
                value = x**k + sum(coeffs[i] * x**i for i in range(k))
                assert value > 0


class TestMorseCoeff:
    def test_leading_is_one(self):
        for N in range(2, 13):
            for n in range(1, N // 2 + 1):
                for a in (0, 3, N):
                    assert morse_coeff(N, n, a, n) == 1

    def test_surface_closed_forms(self):
        for N in range(4, 13):
            for a in range(0, 7):
                assert morse_coeff(N, 2, a, 2) == 1
                assert morse_coeff(N, 2, a, 1) == -(N + 1) - 3 * a
                assert morse_coeff(N, 2, a, 0) == math.comb(N + 2, N) + 3 * a * (N + 1) - 12 * (a + 1)

    def test_flagship_values(self):
        assert [morse_coeff(4, 2, 4, j) for j in (0, 1, 2)] == [15, -17, 1]

    def test_bad_indices(self):
        with pytest.raises(ValueError):
            morse_coeff(4, 2, 0, 3)
        with pytest.raises(ValueError):
            morse_coeff(4, 3, 0, 1)


class TestCascadeThreshold:
    def test_flagship(self):
        assert symmetric_positivity_threshold([(2, 1), (1, -17), (0, 15)], 2, 2) == 35

    def test_linear_case(self):
        assert symmetric_positivity_threshold([(1, 1), (0, -6)], 3, 1) == 1 + Fraction(6, 3)

    def test_no_lower_terms(self):
        assert symmetric_positivity_threshold([(2, 1)], 4, 2) == 1

    def test_leading_must_be_monic(self):
        with pytest.raises(ValueError):
            symmetric_positivity_threshold([(2, 2), (0, 1)], 3, 2)

    def test_soundness_on_grid(self):
        rng = random.Random(31)
        for _ in range(60):
            c = rng.randint(1, 5)
            k = rng.randint(1, c)
            table = {k: 1}
            for i in range(k):
                table[i] = rng.randint(-25, 25)
            r = symmetric_positivity_threshold(sorted(table.items()), c, k)
            poly = MultidegreePoly.zero(c)
            for j, a in table.items():
                poly = poly + elementary_symmetric(j, c) * a
            base = math.ceil(r)
            for point in itertools.product((base, base + 1, base + 7), repeat=c):
                assert poly.eval(point) > 0


class TestShiftedThreshold:
    def test_already_positive(self):
        poly = elementary_symmetric(2, 2) + 1
        assert shifted_positivity_threshold(poly) == 1

    def test_square_difference(self):
        d1 = MultidegreePoly.variable(2, 0)
        d2 = MultidegreePoly.variable(2, 1)
        poly = d1**2 + d1 * d2 + d2**2 - 5 * d1 - 5 * d2 + 10
        r = shifted_positivity_threshold(poly)
        assert r == 2
        shifted = poly.shifted(r)
        assert all(v > 0 for v in shifted.terms.values())
        bad = poly.shifted(r - 1)
        assert any(v < 0 for v in bad.terms.values())

    def test_soundness(self):
        rng = random.Random(47)
        for _ in range(20):
            c = rng.randint(1, 3)
            dom = elementary_symmetric(1, c) ** 2
            noise = elementary_symmetric(1, c) * rng.randint(-20, 0) + rng.randint(-20, 20)
            poly = dom + noise
            r = shifted_positivity_threshold(poly)
            for point in itertools.product((r, r + 2, r + 9), repeat=c):
                assert poly.eval(point) > 0


class TestDegreeBounds:
    def test_surface_values(self):
        assert surface_degree_bound(4, 4) == 34
        assert surface_degree_bound(5, 5) == 21
        assert surface_degree_bound(10, 0) == Fraction(22, 7)

    def test_surface_validity_floor(self):
        with pytest.raises(ValueError):
            surface_degree_bound(3, 0)

    def test_rough_curve_case(self):
        for N in (2, 3, 5, 9):
            for a in (0, 2, 7):
                assert rough_degree_bound(N, 1, a) == Fraction(a + N + 1, N - 1)

    def test_rough_requires_small_dimension(self):
        with pytest.raises(ValueError):
            rough_degree_bound(5, 3, 0)

    def test_rough_exact_value(self):
        # n=2, N=6, a=0: (2*2*(4/7)*3 + 1) * 2 * (8!*2!)/(6!*4!)
        first = Fraction(2 * 2 * 4, 7) * 3 + 1
        ratio = Fraction(math.factorial(8) * math.factorial(2), math.factorial(6) * math.factorial(4))
        assert rough_degree_bound(6, 2, 0) == first * 2 * ratio

    def test_limit_constant(self):
        assert rough_bound_limit(2) == 96
        assert rough_bound_limit(1) == 1 * 1 * 1 * 1

    def test_shifted_sequence_monotone_above_limit(self):
        values = [rough_degree_bound(N, 2, N) for N in range(4, 101)]
        assert all(prev > cur for prev, cur in zip(values, values[1:]))
        assert all(v > 96 for v in values)

    def test_main_dispatch(self):
        assert main_theorem_degree_bound(4, 2, 0) == 34
        assert main_theorem_degree_bound(5, 2, 0) == 21
        assert main_theorem_degree_bound(6, 3, 0) == rough_degree_bound(6, 3, 6)

    def test_rough_dominates_surface(self):
        for N in range(4, 13):
            for a in range(0, 7):
                assert rough_degree_bound(N, 2, a) >= surface_degree_bound(N, a)


class TestClosedFormPolynomial:
    def test_flagship_polynomial(self):
        poly = morse_closed_form(4, 2, 4)
        e1, e2 = elementary_symmetric(1, 2), elementary_symmetric(2, 2)
        assert poly == e2 - e1 * 17 + 15

    def test_surface_positive_at_surface_bound(self):
        for N in range(4, 13):
            for a in range(0, 7):
                poly = morse_closed_form(N, 2, a)
                r = math.ceil(surface_degree_bound(N, a))
                point = (r,) * (N - 2)
                assert poly.eval(point) > 0


def test_bound_report_leading_invariant():
    report = BoundReport(N=4, n=2, a=4, coefficients=[15, -17, 1], gamma=Fraction(34), method="dim2")
    blob = report.to_json()
    assert blob["coefficients"] == ["15", "-17", "1"]
    with pytest.raises(AssertionError):
        BoundReport(N=4, n=2, a=4, coefficients=[15, -17, 2], gamma=None, method="scan")
