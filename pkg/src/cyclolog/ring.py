"""Exact arithmetic in Z_p[pi] modulo pi^N, where the uniformizer satisfies
pi^(p-1) = -p.

An element is a canonical digit vector (d_0, ..., d_{N-1}) with every digit
in [0, p), standing for sum(d_i * pi^i).  The single carry rule

    p * pi^j  =  -pi^(j + p - 1)

is applied only inside :func:`normalize`; nothing else in the package ever
stores a digit outside [0, p).  Carries move strictly upward, so one pass in
increasing position order canonicalizes any integer vector, and carries that
land at or beyond the precision are exact multiples of pi^N and get dropped.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    ContextMismatch,
    DigitStringError,
    NotAUnit,
    NotDivisible,
    NotPrincipalUnit,
)

# p**2 convolution limbs must stay below the 64-bit pack width used by mul:
# precision * (p-1)**2 < 2**64 holds whenever p <= 2**20 and N <= 2**24.
P_CAP = 1 << 20
PRECISION_CAP = 1 << 24

_PACK = 64
_MASK = (1 << _PACK) - 1


@functools.lru_cache(maxsize=None)
def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Context:
    """The pair (p, precision) fixing the quotient ring Z_p[pi] / pi^precision."""

    p: int
    precision: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not _is_prime(self.p) or self.p < 3:
            raise ValueError(f"p must be an odd prime >= 3, got {self.p!r}")
        if self.p > P_CAP:
            raise ValueError(f"p must be at most 2**20, got {self.p}")
        if not isinstance(self.precision, int) or self.precision < 4:
            raise ValueError(f"precision must be an integer >= 4, got {self.precision!r}")
        if self.precision > PRECISION_CAP:
            raise ValueError(f"precision must be at most 2**24, got {self.precision}")

    @property
    def e(self) -> int:
        """Ramification index of Q_p(zeta_p) over Q_p, always p - 1."""
        return self.p - 1

    def zero(self) -> PiElement:
        return PiElement._make((0,) * self.precision, self)

    def one(self) -> PiElement:
        return PiElement._make((1,) + (0,) * (self.precision - 1), self)

    def uniformizer(self) -> PiElement:
        return PiElement._make((0, 1) + (0,) * (self.precision - 2), self)

    def from_integer(self, n: int) -> PiElement:
        """Image of a rational integer, canonicalized by the carry rule."""
        if not isinstance(n, int):
            raise TypeError(f"expected int, got {type(n).__name__}")
        return normalize([n], self)

    def element(self, raw: Sequence[int]) -> PiElement:
        """Same as :func:`normalize` with this context."""
        return normalize(raw, self)

    def parse(self, text: str) -> PiElement:
        return parse_digits(text, self)


def _normalize_digits(raw: Iterable[int], p: int, n: int) -> tuple[int, ...]:
    buf = list(raw)
    buf.extend(0 for _ in range(n - len(buf)))
    shift = p - 1
    for j in range(n):
        v = buf[j]
        if 0 <= v < p:
            continue
        q, r = divmod(v, p)
        buf[j] = r
        k = j + shift
        if k < n:
            buf[k] -= q
    return tuple(buf)


def normalize(raw: Sequence[int], ctx: Context) -> PiElement:
    """Canonical digit vector of sum(raw[i] * pi^i) reduced mod pi^precision.

    Entries may be arbitrary signed integers; shorter vectors are zero padded.
    Excess q*p at position j becomes -q at position j + p - 1, a deficit -1 at
    position j becomes p - 1 there plus +1 at position j + p - 1, and carries
    landing at or beyond the precision are dropped.
    """
    if len(raw) > ctx.precision:
        raise ValueError(
            f"raw vector of length {len(raw)} exceeds precision {ctx.precision}"
        )
    for v in raw:
        if not isinstance(v, int):
            raise TypeError(f"digit entries must be int, got {type(v).__name__}")
    return PiElement._make(_normalize_digits(raw, ctx.p, ctx.precision), ctx)


def _pack(digits: tuple[int, ...]) -> int:
    acc = 0
    for d in reversed(digits):
        acc = (acc << _PACK) | d
    return acc


class PiElement:
    """A canonical digit vector in the pi-basis.  Treat as immutable.

    Supports +, -, * (with int coercion on either side) and ** with a
    nonnegative integer exponent; all results are canonical.
    """

    __slots__ = ("digits", "ctx")

    def __init__(self, digits: Sequence[int], ctx: Context):
        digits = tuple(digits)
        if len(digits) != ctx.precision:
            raise ValueError(
                f"need exactly {ctx.precision} digits, got {len(digits)}"
            )
        p = ctx.p
        for d in digits:
            if not isinstance(d, int) or d < 0 or d >= p:
                raise ValueError(
                    f"digit {d!r} outside [0, {p}); use normalize() for raw vectors"
                )
        self.digits = digits
        self.ctx = ctx

    @classmethod
    def _make(cls, digits: tuple[int, ...], ctx: Context) -> PiElement:
        # internal fast path: digits already canonical
        self = object.__new__(cls)
        self.digits = digits
        self.ctx = ctx
        return self

    def _coerce(self, other) -> PiElement | None:
        if isinstance(other, PiElement):
            if other.ctx != self.ctx:
                raise ContextMismatch(f"{other.ctx} does not match {self.ctx}")
            return other
        if isinstance(other, int):
            return self.ctx.from_integer(other)
        return None

    def __add__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        ctx = self.ctx
        raw = [a + b for a, b in zip(self.digits, rhs.digits)]
        return PiElement._make(_normalize_digits(raw, ctx.p, ctx.precision), ctx)

    __radd__ = __add__

    def __neg__(self):
        ctx = self.ctx
        raw = [-d for d in self.digits]
        return PiElement._make(_normalize_digits(raw, ctx.p, ctx.precision), ctx)

    def __sub__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        ctx = self.ctx
        raw = [a - b for a, b in zip(self.digits, rhs.digits)]
        return PiElement._make(_normalize_digits(raw, ctx.p, ctx.precision), ctx)

    def __rsub__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return rhs - self

    def __mul__(self, other):
        ctx = self.ctx
        if isinstance(other, int):
            # scaling every digit is multiplication by the constant
            raw = [d * other for d in self.digits]
            return PiElement._make(_normalize_digits(raw, ctx.p, ctx.precision), ctx)
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        # digit convolution via one big-integer product (Kronecker substitution);
        # limbs stay below 2**64 by the Context caps on p and precision
        n = ctx.precision
        prod = _pack(self.digits) * _pack(rhs.digits)
        raw = [(prod >> (_PACK * j)) & _MASK for j in range(n)]
        return PiElement._make(_normalize_digits(raw, ctx.p, n), ctx)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            raise ValueError("negative exponents are not supported; use invert_unit")
        result = self.ctx.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, PiElement):
            return NotImplemented
        return (
            self.ctx.p == other.ctx.p
            and self.ctx.precision == other.ctx.precision
            and self.digits == other.digits
        )

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.precision, self.digits))

    def __repr__(self):
        return f"PiElement({format_digits(self)!r}, p={self.ctx.p})"

    def __str__(self):
        return format_digits(self)

    def is_zero(self) -> bool:
        return not any(self.digits)

    def valuation(self) -> int:
        """Index of the first nonzero digit; the precision N when zero.

        A return value of N means "at least N"; callers must treat it as
        unknown beyond the working precision, not as infinity.
        """
        for i, d in enumerate(self.digits):
            if d:
                return i
        return self.ctx.precision

    def invert_unit(self) -> PiElement:
        """Multiplicative inverse of a unit, by Newton iteration z <- z(2 - az).

        Starts from the inverse of digit 0 mod p; correct digits double each
        step, so ceil(log2(precision)) steps suffice.
        """
        if self.digits[0] == 0:
            raise NotAUnit("element has positive valuation")
        ctx = self.ctx
        z = ctx.from_integer(pow(self.digits[0], -1, ctx.p))
        correct = 1
        while correct < ctx.precision:
            z = z * (2 - self * z)
            correct *= 2
        return z

    def div_pi_power(self, k: int) -> PiElement:
        """Exact division by pi^k as a digit shift.

        The top k digits of the result are unknown at this precision and are
        filled with zeros; the reliable precision drops to N - k.  Series code
        compensates by lifting to a larger working precision first.
        """
        if k < 0:
            raise ValueError("k must be nonnegative")
        if self.valuation() < k:
            raise NotDivisible(f"valuation {self.valuation()} < {k}")
        return PiElement._make(self.digits[k:] + (0,) * k, self.ctx)

    def div_p(self) -> PiElement:
        """Exact division by p, i.e. shift down by p - 1 digits and negate."""
        p = self.ctx.p
        if self.valuation() < p - 1:
            raise NotDivisible(f"valuation {self.valuation()} < {p - 1}")
        return -self.div_pi_power(p - 1)

    def resize(self, precision: int) -> PiElement:
        """Truncate, or lift by zero padding, into a context of the given precision."""
        ctx2 = Context(self.ctx.p, precision)
        d = self.digits[:precision]
        if len(d) < precision:
            d = d + (0,) * (precision - len(d))
        return PiElement._make(d, ctx2)

    def expansion(self) -> str:
        """Human-readable pi-power expansion, e.g. '2·π^2 + 1·π^4'."""
        terms = []
        for i, d in enumerate(self.digits):
            if not d:
                continue
            if i == 0:
                terms.append(str(d))
            elif i == 1:
                terms.append(f"{d}·π")
            else:
                terms.append(f"{d}·π^{i}")
        return " + ".join(terms) if terms else "0"


class PrincipalUnit(PiElement):
    """A PiElement whose digit 0 equals 1, i.e. a unit in 1 + m_K."""

    __slots__ = ()

    def __init__(self, digits: Sequence[int], ctx: Context):
        super().__init__(digits, ctx)
        if self.digits[0] != 1:
            raise NotPrincipalUnit(
                f"digit 0 must be 1 for a principal unit, got {self.digits[0]}"
            )

    @classmethod
    def from_element(cls, element: PiElement) -> PrincipalUnit:
        return cls(element.digits, element.ctx)


def format_digits(a: PiElement) -> str:
    """Comma separated little-endian digit string, index 0 first."""
    return ",".join(str(d) for d in a.digits)


def parse_digits(text: str, ctx: Context) -> PiElement:
    """Parse the digit-string format; strict, no normalization.

    Rejects non-integer tokens, digits outside [0, p) and vectors longer than
    the precision.  Shorter vectors are zero padded.
    """
    parts = [t.strip() for t in text.split(",")]
    if len(parts) > ctx.precision:
        raise DigitStringError(
            f"{len(parts)} digits exceed precision {ctx.precision}"
        )
    digits = []
    for tok in parts:
        try:
            d = int(tok)
        except ValueError:
            raise DigitStringError(f"invalid digit {tok!r}") from None
        if d < 0 or d >= ctx.p:
            raise DigitStringError(f"digit {d} outside [0, {ctx.p})")
        digits.append(d)
    digits.extend(0 for _ in range(ctx.precision - len(digits)))
    return PiElement._make(tuple(digits), ctx)
