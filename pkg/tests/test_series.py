import random

import pytest

from cyclolog import (
    Context,
    NotPrincipalUnit,
    PiElement,
    SeriesBudget,
    ValuationTooSmall,
    fermat_digit_check,
    log_digit_formula,
    normalize,
    pexp,
    plog,
)
from cyclolog.series import _integer_inverse

from oracle_series import naive_plog, poly_log_digits


def random_principal_unit(rng, ctx, annulus=False):
    first = rng.randrange(1, ctx.p) if annulus else rng.randrange(ctx.p)
    tail = tuple(rng.randrange(ctx.p) for _ in range(ctx.precision - 2))
    return PiElement((1, first) + tail, ctx)


def random_target(rng, ctx):
    tail = tuple(rng.randrange(ctx.p) for _ in range(ctx.precision - 2))
    return PiElement((0, 0) + tail, ctx)


class TestSeriesBudget:
    @pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
    @pytest.mark.parametrize("n", [4, 6, 8, 12])
    def test_fixpoint_and_fields(self, p, n):
        b = SeriesBudget.for_target(p, n)
        L = b.p_power_cap
        assert p ** L > n + (p - 1) * L
        if L > 1:
            assert p ** (L - 1) <= n + (p - 1) * (L - 1)
        assert b.cutoff == n + (p - 1) * L
        assert b.working_prec == b.cutoff
        assert b.target_prec == n

    @pytest.mark.parametrize("p", [3, 5, 7, 11])
    @pytest.mark.parametrize("n", [4, 6, 8, 12])
    def test_tail_margin_brute_force(self, p, n):
        b = SeriesBudget.for_target(p, n)
        for m in range(b.cutoff + 1, p ** 4 + p):
            log_floor = 0
            while p ** (log_floor + 1) <= m:
                log_floor += 1
            assert m - (p - 1) * log_floor >= n


class TestPlog:
    def test_log_of_one_is_zero(self):
        ctx = Context(5, 5)
        assert plog(ctx.one()) == ctx.zero()

    def test_p5_one_plus_pi(self):
        ctx = Context(5, 5)
        result = plog(normalize([1, 1, 0, 0, 0], ctx))
        assert result.digits[2] == 2
        # frozen from the exact Fraction-polynomial oracle
        assert result.digits == (0, 0, 2, 2, 1)
        assert result.digits == poly_log_digits((1, 1, 0, 0, 0), 5, 5)

    def test_p3_one_plus_pi_plus_pi2(self):
        ctx = Context(3, 6)
        result = plog(normalize([1, 1, 1, 0, 0, 0], ctx))
        assert result.digits[0] == 0 and result.digits[1] == 0
        assert result.digits[2] == 2
        assert result.digits == (0, 0, 2, 2, 1, 1)
        assert result == naive_plog(normalize([1, 1, 1, 0, 0, 0], ctx))

    def test_p7_one_plus_pi(self):
        result = plog(normalize([1, 1, 0, 0, 0], Context(7, 5)))
        assert result.digits == (0, 0, 3, 5, 5)
        assert result.digits == poly_log_digits((1, 1, 0, 0, 0), 7, 5)

    def test_rejects_non_principal_unit(self):
        ctx = Context(5, 5)
        with pytest.raises(NotPrincipalUnit):
            plog(normalize([2, 0, 0, 0, 0], ctx))

    @pytest.mark.parametrize("p,n", [(3, 8), (5, 6), (7, 5)])
    def test_image_lands_in_m_squared(self, p, n):
        ctx = Context(p, n)
        rng = random.Random(43)
        for _ in range(100):
            result = plog(random_principal_unit(rng, ctx))
            assert result.digits[0] == 0 and result.digits[1] == 0

    @pytest.mark.parametrize("p,n", [(3, 8), (5, 6), (7, 5)])
    def test_digit2_law_exhaustive_over_leading_digits(self, p, n):
        ctx = Context(p, n)
        rng = random.Random(47)
        for a1 in range(p):
            for a2 in range(p):
                tail = tuple(rng.randrange(p) for _ in range(n - 3))
                u = PiElement((1, a1, a2) + tail, ctx)
                assert plog(u).digits[2] == log_digit_formula(a1, a2, ctx)

    @pytest.mark.parametrize("p,n", [(3, 8), (5, 6), (7, 5)])
    def test_homomorphism(self, p, n):
        ctx = Context(p, n)
        rng = random.Random(53)
        for _ in range(100):
            u = random_principal_unit(rng, ctx)
            v = random_principal_unit(rng, ctx)
            assert plog(u * v) == plog(u) + plog(v)

    @pytest.mark.parametrize("p,n", [(3, 8), (5, 6), (7, 5)])
    def test_lift_independence(self, p, n):
        ctx = Context(p, n)
        budget = SeriesBudget.for_target(p, n)
        work = Context(p, budget.working_prec)
        rng = random.Random(59)
        for _ in range(100):
            u = random_principal_unit(rng, ctx)
            pad = tuple(rng.randrange(p) for _ in range(budget.working_prec - n))
            lifted = PiElement(u.digits + pad, work)
            assert plog(lifted).resize(n) == plog(u)

    @pytest.mark.parametrize("p,n", [(3, 6), (5, 5)])
    def test_matches_naive_oracle_on_random_units(self, p, n):
        ctx = Context(p, n)
        rng = random.Random(61)
        for _ in range(50):
            u = random_principal_unit(rng, ctx)
            assert plog(u) == naive_plog(u)

    def test_oracle_equivalence_exhaustive_p3_n6(self):
        # every annulus unit at p=3, N=6, against the naive high-precision sum
        ctx = Context(3, 6)
        import itertools

        count = 0
        for a1 in (1, 2):
            for tail in itertools.product(range(3), repeat=4):
                u = PiElement((1, a1) + tail, ctx)
                assert plog(u) == naive_plog(u)
                count += 1
        assert count == 2 * 3 ** 4


class TestPexp:
    def test_exp_of_zero_is_one(self):
        ctx = Context(5, 5)
        assert pexp(ctx.zero()) == ctx.one()

    def test_rejects_small_valuation(self):
        ctx = Context(5, 5)
        with pytest.raises(ValuationTooSmall):
            pexp(ctx.uniformizer())

    @pytest.mark.parametrize("p,n", [(3, 8), (5, 6), (7, 5)])
    def test_roundtrip_log_then_exp(self, p, n):
        ctx = Context(p, n)
        rng = random.Random(67)
        for _ in range(50):
            tail = tuple(rng.randrange(p) for _ in range(n - 2))
            u = PiElement((1, 0) + tail, ctx)
            assert pexp(plog(u)) == u

    @pytest.mark.parametrize("p,n", [(3, 8), (5, 6), (7, 5)])
    def test_roundtrip_exp_then_log(self, p, n):
        ctx = Context(p, n)
        rng = random.Random(71)
        for _ in range(50):
            x = random_target(rng, ctx)
            assert plog(pexp(x)) == x


class TestDigitFormulas:
    def test_log_digit_formula_examples(self):
        assert log_digit_formula(1, 0, Context(5, 5)) == 2
        assert log_digit_formula(1, 1, Context(3, 6)) == 2
        for c in range(5):
            assert log_digit_formula(0, c, Context(5, 5)) == c

    @pytest.mark.parametrize("p", [3, 5, 7, 11])
    def test_fermat_digit_check_all_digits(self, p):
        ctx = Context(p, 5)
        assert all(fermat_digit_check(a1, ctx) for a1 in range(p))

    def test_digit_range_validation(self):
        ctx = Context(5, 5)
        with pytest.raises(ValueError):
            log_digit_formula(5, 0, ctx)
        with pytest.raises(ValueError):
            fermat_digit_check(-1, ctx)


class TestInternalInverse:
    @pytest.mark.parametrize("p,n", [(3, 10), (5, 8), (7, 6)])
    def test_integer_inverse_matches_invert_unit(self, p, n):
        # the series divides by the unit part of n through the integer
        # inverse; it must agree digitwise with the ring-level route
        ctx = Context(p, n)
        for m in range(1, 40):
            if m % p == 0:
                continue
            via_int = ctx.from_integer(_integer_inverse(m, ctx))
            assert via_int == ctx.from_integer(m).invert_unit()
