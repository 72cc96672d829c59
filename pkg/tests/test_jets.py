import math
import random

import pytest

from cipos import chow
from cipos.chow import ChowClass, ModelParams
from cipos.jets import (
    JetClass,
    integrate_tower,
    min_uniform_degree,
    morse_certificate,
    nef_tower_class,
    pushforward,
    segre_recursion_coeff,
    tower_segre,
)
from cipos.bounds import morse_closed_form, surface_degree_bound
from cipos.polyring import MultidegreePoly, elementary_symmetric, express_in_elementary

P42 = ModelParams(4, 2)


def bezout(c):
    return MultidegreePoly.monomial(c, (1,) * c)


class TestJetAlgebra:
    def _random_class(self, rng, p, level):
        cls = JetClass.zero(p, level)
        for _ in range(rng.randint(1, 4)):
            factor = rng.choice(
                [JetClass.hyperplane(p, level)]
                + [JetClass.tautological(p, level, i) for i in range(1, level + 1)]
                + [JetClass.base_segre_symbol(p, level, rng.randint(1, p.n))]
            )
            cls = cls + factor * rng.randint(-3, 3)
        return cls

    def test_ring_laws_with_truncation(self):
        rng = random.Random(8)
        for _ in range(40):
            p = ModelParams(rng.randint(3, 5), rng.randint(2, 2))
            level = rng.randint(1, 2)
            x = self._random_class(rng, p, level)
            y = self._random_class(rng, p, level)
            z = self._random_class(rng, p, level)
            assert (x * y) * z == x * (y * z)
            assert x * y == y * x
            assert x * (y + z) == x * y + x * z

    def test_pushforward_is_linear(self):
        rng = random.Random(9)
        p = ModelParams(4, 2)
        for _ in range(20):
            x = self._random_class(rng, p, 1) * JetClass.tautological(p, 1, 1)
            y = self._random_class(rng, p, 1)
            assert pushforward(x + y) == pushforward(x) + pushforward(y)


class TestRecursionCoeff:
    def test_diagonal_is_one(self):
        for n in range(1, 7):
            for ell in range(0, 9):
                assert segre_recursion_coeff(n, ell, ell) == 1

    def test_small_values(self):
        assert segre_recursion_coeff(2, 1, 0) == 0
        assert segre_recursion_coeff(3, 2, 0) == 2

    def test_rejects_bad_indices(self):
        with pytest.raises(ValueError):
            segre_recursion_coeff(2, 1, 2)
        with pytest.raises(ValueError):
            segre_recursion_coeff(2, 1, -1)


class TestTowerSegre:
    def test_base_symbol(self):
        assert tower_segre(P42, 0, 2) == JetClass.base_segre_symbol(P42, 0, 2)

    def test_level_one_first(self):
        got = tower_segre(P42, 1, 1)
        expected = JetClass.base_segre_symbol(P42, 1, 1) + JetClass.tautological(
            P42, 1, 1
        ) * segre_recursion_coeff(2, 1, 0)
        assert got == expected

    def test_index_zero_is_unit(self):
        assert tower_segre(P42, 1, 0) == JetClass.unit(P42, 1)

    def test_negative_index_is_zero(self):
        assert tower_segre(P42, 2, -1).is_zero()

    def test_beyond_dimension_vanishes_at_base(self):
        assert tower_segre(P42, 0, 3).is_zero()


class TestPushforward:
    def test_fiber_rules(self):
        u = JetClass.tautological(P42, 1, 1)
        assert pushforward(u ** 1) == JetClass.unit(P42, 0)
        assert pushforward(JetClass.unit(P42, 1)).is_zero()
        assert pushforward(u ** 2) == JetClass.base_segre_symbol(P42, 0, 1)

    def test_projection_formula(self):
        # pullback factors ride along unchanged
        u = JetClass.tautological(P42, 1, 1)
        h = JetClass.hyperplane(P42, 1)
        assert pushforward(u * h) == JetClass.hyperplane(P42, 0)

    def test_base_level_rejected(self):
        with pytest.raises(ValueError):
            pushforward(JetClass.unit(P42, 0))


class TestIntegrate:
    def test_base_hyperplane_power(self):
        assert integrate_tower(JetClass.hyperplane(P42, 0) ** 2) == bezout(2)

    def test_tautological_top_power(self):
        for N, n in ((3, 2), (4, 2), (5, 3), (6, 2)):
            p = ModelParams(N, n)
            u = JetClass.tautological(p, 1, 1)
            got = integrate_tower(u ** (2 * n - 1))
            assert got == chow.segre_closed_form(p, n) * bezout(p.c)

    def test_binomial_oracle(self):
        # independent route: expand (u + 2h)^(2n-1) by hand and integrate the
        # base Segre classes in the Chow ring, no tower machinery involved
        for N, n in ((3, 2), (4, 2), (5, 2), (5, 3), (7, 3)):
            p = ModelParams(N, n)
            u = JetClass.tautological(p, 1, 1)
            h = JetClass.hyperplane(p, 1)
            got = integrate_tower((u + h * 2) ** (2 * n - 1))
            seg = chow.segre_cotangent(p, 0)
            expected = ChowClass.zero(p)
            for i in range(2 * n):
                hpow = ChowClass.h_power(p, i)
                idx = 2 * n - 1 - i - (n - 1)
                if idx < 0:
                    continue
                expected = expected + seg[idx] * hpow * (math.comb(2 * n - 1, i) * 2**i)
            assert got == chow.integrate(expected), (N, n)

    def test_frozen_surface_value(self):
        u = JetClass.tautological(P42, 1, 1)
        h = JetClass.hyperplane(P42, 1)
        got = integrate_tower((u + h * 2) ** 3)
        e1, e2 = elementary_symmetric(1, 2), elementary_symmetric(2, 2)
        assert got == (e2 + e1 - 3) * bezout(2)

    def test_low_degree_terms_warn(self):
        cls = JetClass.hyperplane(P42, 0)  # degree 1 < n = 2
        with pytest.warns(UserWarning, match="below the top degree"):
            value = integrate_tower(cls)
        assert value.is_zero()

    def test_degree_bookkeeping(self):
        # integrals of top-degree classes never exceed total degree N
        rng = random.Random(77)
        for _ in range(40):
            n = rng.randint(2, 3)
            c = rng.randint(1, 3)
            p = ModelParams(n + c, n)
            k = rng.randint(1, min(p.kappa + 1, 3))
            cls = JetClass.unit(p, k)
            budget = p.tower_dim(k)
            while budget > 0:
                choice = rng.randint(0, k + 1)
                if choice == 0:
                    factor = JetClass.hyperplane(p, k)
                elif choice <= k:
                    factor = JetClass.tautological(p, k, choice)
                else:
                    i = rng.randint(1, min(budget, p.n))
                    factor = tower_segre(p, k, i)
                    budget -= i - 1
                cls = cls * factor
                budget -= 1
            if cls.is_zero():
                continue
            assert integrate_tower(cls).total_degree() <= p.N


class TestNefClasses:
    def test_first_levels(self):
        assert nef_tower_class(P42, 1) == JetClass.tautological(P42, 1, 1) + JetClass.hyperplane(P42, 1) * 2
        p = ModelParams(5, 3)
        expected = (
            JetClass.tautological(p, 2, 2)
            + JetClass.tautological(p, 2, 1) * 2
            + JetClass.hyperplane(p, 2) * 6
        )
        assert nef_tower_class(p, 2) == expected

    def test_total_h_weight_is_geometric_sum(self):
        for n, c in ((2, 1), (3, 1), (4, 1), (5, 2)):
            p = ModelParams(n + c, n)
            kappa = p.kappa
            total = JetClass.zero(p, kappa)
            for i in range(1, kappa + 1):
                total = total + nef_tower_class(p, i).lift(kappa)
            h_key = ((0,) * kappa, 1, (0,) * (p.n + 1))
            assert total.terms[h_key] == 3**kappa - 1

    def test_level_zero_rejected(self):
        with pytest.raises(ValueError):
            nef_tower_class(P42, 0)


class TestMorseCertificate:
    def test_flagship_numbers(self):
        cert = morse_certificate(P42, 4, (34, 34))
        assert express_in_elementary(cert.difference) == [(2, 1), (1, -17), (0, 15)]
        assert cert.value == 15 and cert.positive
        cert33 = morse_certificate(P42, 4, (33, 33))
        assert cert33.value == -18 and not cert33.positive

    def test_first_order_closed_form(self):
        for n in range(1, 5):
            for c in range(n, 6):
                N = n + c
                p = ModelParams(N, n)
                for a in (0, 1, N):
                    assert morse_certificate(p, a).difference == morse_closed_form(N, n, a)

    def test_second_order_frozen_value(self):
        # hand-computed through both pushforward levels for a surface in P^3:
        # normalized S^4 integral is 44d^2 + 280d - 300, S^3 h integral is 36d,
        # and the certificate subtracts 4 * (8 + a) times the latter
        p = ModelParams(3, 2)
        d = MultidegreePoly.variable(1, 0)
        assert morse_certificate(p, 0).difference == 44 * d**2 - 872 * d - 300
        assert morse_certificate(p, 1).difference == 44 * d**2 - 872 * d - 36 * 4 * d - 300
        assert min_uniform_degree(p, 0, 100) == 21

    def test_json_schema(self):
        blob = morse_certificate(P42, 4, (34, 34)).to_json()
        assert set(blob) == {
            "N", "n", "c", "kappa", "a", "m", "difference", "evaluated_at", "value", "positive",
        }
        assert blob["m"] == 2 and blob["value"] == "15" and blob["positive"] is True
        assert MultidegreePoly.from_json(blob["difference"], 2) == morse_closed_form(4, 2, 4)

    def test_degree_vector_length_checked(self):
        with pytest.raises(ValueError):
            morse_certificate(P42, 4, (34,))

    def test_negative_twist_rejected(self):
        with pytest.raises(ValueError):
            morse_certificate(P42, -1)


class TestDegreeScan:
    def test_flagship_frontier(self):
        assert min_uniform_degree(P42, 4, 40) == 34

    def test_untwisted_frontier(self):
        assert min_uniform_degree(P42, 0, 15) == 10
        assert surface_degree_bound(4, 0) == 10

    def test_exhausted_scan(self):
        assert min_uniform_degree(P42, 4, 33) is None

    def test_frontier_below_surface_bound(self):
        for N in range(4, 9):
            for a in range(0, 5):
                p = ModelParams(N, 2)
                ceiling = math.ceil(surface_degree_bound(N, a))
                frontier = min_uniform_degree(p, a, ceiling)
                assert frontier is not None and frontier <= ceiling


class TestTowerEstimates:
    def test_h_factor_drops_degree(self):
        # a full monomial in tower divisor classes with one hyperplane factor
        rng = random.Random(2024)
        for _ in range(30):
            n = rng.randint(2, 4)
            c = rng.randint(1, 3)
            p = ModelParams(n + c, n)
            k = rng.randint(1, 2)
            cls = JetClass.hyperplane(p, k)
            for _ in range(p.tower_dim(k) - 1):
                coeffs = [rng.randint(-2, 3) for _ in range(k + 1)]
                gamma = JetClass.hyperplane(p, k) * coeffs[0]
                for i in range(1, k + 1):
                    gamma = gamma + JetClass.tautological(p, k, i) * coeffs[i]
                cls = cls * gamma
            value = integrate_tower(cls)
            assert value.total_degree() < p.N

    def test_descent_steps_match_up_to_lower_order(self):
        # each level drop preserves the degree-N part of the distinguished product
        for n, c in ((2, 1), (3, 1), (3, 2), (4, 1), (4, 2), (5, 2), (4, 3)):
            p = ModelParams(n + c, n)
            kappa, b = p.kappa, p.b
            chat = c + n - 1

            def side(level, cpow):
                cls = tower_segre(p, level, b) * tower_segre(p, level, c) ** cpow
                for i in range(1, level + 1):
                    cls = cls * nef_tower_class(p, i).lift(level) ** chat
                return integrate_tower(cls)

            for k in range(1, kappa):
                lhs = side(k, kappa - k - 1)
                rhs = side(k - 1, kappa - k)
                assert (lhs - rhs).total_degree() < p.N, (n, c, k)

    def test_heavy_towers_descend_too(self):
        for n, c in ((5, 1), (6, 1)):
            p = ModelParams(n + c, n)
            kappa, b = p.kappa, p.b
            chat = c + n - 1

            def side(level, cpow):
                cls = tower_segre(p, level, b) * tower_segre(p, level, c) ** cpow
                for i in range(1, level + 1):
                    cls = cls * nef_tower_class(p, i).lift(level) ** chat
                return integrate_tower(cls)

            for k in range(1, kappa):
                assert (side(k, kappa - k - 1) - side(k - 1, kappa - k)).total_degree() < p.N

    def test_distinguished_monomial_dominant_identity(self):
        # the monomial the bigness argument keeps has the same degree-N part
        # as the base Segre product; the full power only dominates it
        for n, c in ((2, 1), (2, 2), (3, 2)):
            p = ModelParams(n + c, n)
            kappa, b = p.kappa, p.b
            bhat, chat = b + n - 1, c + n - 1
            mono = nef_tower_class(p, kappa) ** bhat
            for i in range(1, kappa):
                mono = mono * nef_tower_class(p, i).lift(kappa) ** chat
            lhs = integrate_tower(mono).dominant_part()
            seg = chow.segre_cotangent(p, 0)
            rhs = chow.integrate(seg[b] * seg[c] ** (kappa - 1)).dominant_part()
            assert lhs == rhs, (n, c)

            total = JetClass.zero(p, kappa)
            for i in range(1, kappa + 1):
                total = total + nef_tower_class(p, i).lift(kappa)
            full = integrate_tower(total ** p.tower_dim(kappa)).dominant_part()
            gap = full - rhs
            assert gap.is_zero() or all(v > 0 for v in gap.terms.values())
