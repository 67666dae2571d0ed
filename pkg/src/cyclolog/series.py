"""Truncated p-adic logarithm and exponential with a certified cutoff.

Both series are evaluated at a lifted working precision.  Dividing by p is an
exact shift of p - 1 digits, but the top p - 1 digits of the quotient are
unknown at fixed precision; the lift is sized so that after every division the
digits below the target precision are still exact.  Carries only move upward,
so the unknown high digits never contaminate the reported ones.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotPrincipalUnit, ValuationTooSmall
from .ring import Context, PiElement, PrincipalUnit


def _floor_log(p: int, n: int) -> int:
    k = 0
    while p ** (k + 1) <= n:
        k += 1
    return k


def _split_p(n: int, p: int) -> tuple[int, int]:
    """n = p**k * m with m coprime to p."""
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k, n


@dataclass(frozen=True)
class SeriesBudget:
    """Precision bookkeeping for the logarithm series.

    p_power_cap is the least L with p**L > target_prec + (p-1)*L; cutoff and
    working_prec both equal target_prec + (p-1)*L.  Every dropped term x^n/n
    with n > cutoff then has pi-valuation at least target_prec, and the lift
    of p_power_cap blocks of p-1 digits absorbs everything the divisions by
    p**k (k <= p_power_cap) forget.
    """

    target_prec: int
    cutoff: int
    working_prec: int
    p_power_cap: int

    @classmethod
    def for_target(cls, p: int, target_prec: int) -> SeriesBudget:
        L = 1
        while p ** L <= target_prec + (p - 1) * L:
            L += 1
        n_stop = target_prec + (p - 1) * L
        budget = cls(target_prec, n_stop, n_stop, L)
        budget.check_tail_bound(p)
        return budget

    def check_tail_bound(self, p: int) -> None:
        """Assert n - (p-1)*floor(log_p n) >= target_prec for every n > cutoff.

        The margin grows with n inside each power-of-p block, and the margins
        at the block fronts p^j are nondecreasing in j, so the two points
        cutoff + 1 and p^(j0 + 1) dominate all larger n.
        """

        def margin(n: int) -> int:
            return n - (p - 1) * _floor_log(p, n)

        j0 = _floor_log(p, self.cutoff + 1)
        if margin(self.cutoff + 1) < self.target_prec:
            raise AssertionError("series tail bound fails just past the cutoff")
        if margin(p ** (j0 + 1)) < self.target_prec:
            raise AssertionError("series tail bound fails at the next power of p")


def _integer_inverse(m: int, ctx: Context) -> int:
    """Inverse of the p-coprime integer m modulo a power of p matching pi^precision.

    Agrees digitwise with invert_unit(from_integer(m)); p**M has pi-valuation
    M*(p-1) >= precision, so congruence mod p**M suffices.
    """
    M = -(-ctx.precision // (ctx.p - 1))
    return pow(m, -1, ctx.p ** M)


def plog(u: PiElement) -> PiElement:
    """p-adic logarithm of a principal unit, canonical mod pi^N.

    Sums x - x^2/2 + x^3/3 - ... with x = u - 1 at the budget's working
    precision, then truncates.  Division by n = p**k * m is k exact shifts
    (each contributing a sign) times the inverse of m.  Digits 0 and 1 of the
    result are zero for every principal unit.
    """
    if u.digits[0] != 1:
        raise NotPrincipalUnit(f"digit 0 is {u.digits[0]}, expected 1")
    ctx = u.ctx
    p = ctx.p
    budget = SeriesBudget.for_target(p, ctx.precision)
    x = u.resize(budget.working_prec) - 1
    work = x.ctx
    acc = work.zero()
    x_pow = x
    for n in range(1, budget.cutoff + 1):
        k, m = _split_p(n, p)
        term = x_pow.div_pi_power(k * (p - 1)) if k else x_pow
        c = _integer_inverse(m, work) if m > 1 else 1
        # sign: (-1)^(n+1) from the series times (-1)^k from the shifts
        acc = acc + term * (c if (n + 1 + k) % 2 == 0 else -c)
        if n < budget.cutoff:
            x_pow = x_pow * x
    return acc.resize(ctx.precision)


def pexp(x: PiElement) -> PrincipalUnit:
    """p-adic exponential sum(x^n / n!), defined for valuation(x) >= 2.

    With w >= 2 every term x^n/n! has pi-valuation at least n + 1, so cutting
    off at n = N suffices; the working precision 2N over-allocates for the
    digits forgotten by the v_p(n!) = (n - s_p(n))/(p-1) divisions by p.
    """
    if x.valuation() < 2:
        raise ValuationTooSmall(
            f"valuation {x.valuation()} < 2, outside the convergence domain"
        )
    ctx = x.ctx
    p, target = ctx.p, ctx.precision
    work_prec = 2 * target
    xw = x.resize(work_prec)
    work = xw.ctx
    acc = work.one()
    x_pow = work.one()
    fact_shift = 0  # v_p(n!)
    fact_unit = 1  # unit part of n! mod p**M
    unit_mod = p ** (-(-work_prec // (p - 1)))
    for n in range(1, target + 1):
        x_pow = x_pow * xw
        k, m = _split_p(n, p)
        fact_shift += k
        fact_unit = (fact_unit * m) % unit_mod
        term = x_pow.div_pi_power(fact_shift * (p - 1)) if fact_shift else x_pow
        c = pow(fact_unit, -1, unit_mod) if fact_unit > 1 else 1
        acc = acc + term * (c if fact_shift % 2 == 0 else -c)
    return PrincipalUnit.from_element(acc.resize(target))


def log_digit_formula(a1: int, a2: int, ctx: Context) -> int:
    """Digit 2 of log(1 + a1*pi + a2*pi^2 + ...) in closed form.

    The pi^1 coefficient a1 - a1^p vanishes mod p by Fermat, leaving
    (a2 - a1^2/2) mod p as the leading surviving digit.
    """
    p = ctx.p
    if not (0 <= a1 < p and 0 <= a2 < p):
        raise ValueError("digits must lie in [0, p)")
    return (a2 - a1 * a1 * pow(2, -1, p)) % p


def fermat_digit_check(a1: int, ctx: Context) -> bool:
    """True iff a1 - a1^p == 0 mod p; the cancellation that empties digit 1."""
    p = ctx.p
    if not 0 <= a1 < p:
        raise ValueError("digit must lie in [0, p)")
    return (a1 - pow(a1, p, p)) % p == 0
