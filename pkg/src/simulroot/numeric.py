"""Configurable-precision real arithmetic and elementary functions.

Every scalar in this package is a :class:`Real`: an immutable decimal
floating-point number that carries its own working precision in decimal
digits.  All arithmetic goes through a ``decimal.Context`` built for the
operands' precision, so there is no process-wide precision setting to
mutate and values are safe to share between threads.

The elementary functions required by the iteration families (sin, cos,
cot, sinh, cosh, coth) are evaluated with ``guard_digits`` extra digits
and rounded back to the argument's precision.  sin/cos use Taylor series
after range reduction by 2*pi (pi via Machin's formula, cached per
precision); sinh/cosh use the context's correctly rounded exp, with a
direct series for small arguments to avoid cancellation.  cot and coth
are quotients of the above.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from decimal import (
    ROUND_HALF_EVEN,
    Context,
    Decimal,
    DivisionByZero,
    InvalidOperation,
    Overflow,
)
from decimal import MAX_EMAX, MIN_EMIN
from functools import lru_cache

MIN_DIGITS = 30
DEFAULT_DIGITS = 64
DEFAULT_GUARD_DIGITS = 10

_D0 = Decimal(0)
_D1 = Decimal(1)
_D2 = Decimal(2)


class ParseError(ValueError):
    """Malformed decimal numeral; ``position`` is the offending index."""

    def __init__(self, text: str, position: int, message: str):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position} in {text!r}")


class PoleError(ArithmeticError):
    """cot/coth evaluated at a pole; carries the argument."""

    def __init__(self, fn: str, argument: "Real"):
        self.fn = fn
        self.argument = argument
        super().__init__(f"{fn} has a pole at {argument}")


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class PrecisionConfig:
    """Working precision: ``digits`` carried by values, ``guard_digits`` used internally."""

    digits: int = DEFAULT_DIGITS
    guard_digits: int = DEFAULT_GUARD_DIGITS

    def __post_init__(self):
        if self.digits < MIN_DIGITS:
            raise ValueError(f"digits must be >= {MIN_DIGITS}, got {self.digits}")
        if self.guard_digits < 0:
            raise ValueError(f"guard_digits must be >= 0, got {self.guard_digits}")


@lru_cache(maxsize=None)
def _context(prec: int) -> Context:
    # Contexts are cached per precision and never mutated after creation.
    return Context(
        prec=prec,
        rounding=ROUND_HALF_EVEN,
        Emin=MIN_EMIN,
        Emax=MAX_EMAX,
        traps=[InvalidOperation, DivisionByZero, Overflow],
    )


@dataclass(frozen=True, eq=False)
class Real:
    """An arbitrary-precision real number with its working precision in decimal digits.

    Arithmetic between two Reals is correctly rounded at the maximum of
    their precisions.  Mixing with ``int`` is allowed (exact); mixing
    with ``float`` is rejected to keep all I/O decimal.
    """

    dec: Decimal
    digits: int

    def __post_init__(self):
        if self.digits < MIN_DIGITS:
            raise ValueError(f"Real precision must be >= {MIN_DIGITS} digits")

    # -- arithmetic ---------------------------------------------------

    def _binary(self, other, op: str, reflected: bool = False):
        if isinstance(other, Real):
            d = max(self.digits, other.digits)
            o = other.dec
        elif isinstance(other, int):
            d = self.digits
            o = Decimal(other)
        else:
            return NotImplemented
        a, b = (o, self.dec) if reflected else (self.dec, o)
        return Real(getattr(_context(d), op)(a, b), d)

    def __add__(self, other):
        return self._binary(other, "add")

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, "subtract")

    def __rsub__(self, other):
        return self._binary(other, "subtract", reflected=True)

    def __mul__(self, other):
        return self._binary(other, "multiply")

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._binary(other, "divide")

    def __rtruediv__(self, other):
        return self._binary(other, "divide", reflected=True)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent == 0:
            return Real(_D1, self.digits)
        return Real(_context(self.digits).power(self.dec, Decimal(exponent)), self.digits)

    def __neg__(self):
        return Real(self.dec.copy_negate(), self.digits)

    def __pos__(self):
        return self

    def __abs__(self):
        return Real(self.dec.copy_abs(), self.digits)

    # -- comparisons (by value, exact) --------------------------------

    @staticmethod
    def _cmp_operand(other):
        if isinstance(other, Real):
            return other.dec
        if isinstance(other, int):
            return Decimal(other)
        return None

    def __eq__(self, other):
        o = self._cmp_operand(other)
        return NotImplemented if o is None else self.dec == o

    def __lt__(self, other):
        o = self._cmp_operand(other)
        return NotImplemented if o is None else self.dec < o

    def __le__(self, other):
        o = self._cmp_operand(other)
        return NotImplemented if o is None else self.dec <= o

    def __gt__(self, other):
        o = self._cmp_operand(other)
        return NotImplemented if o is None else self.dec > o

    def __ge__(self, other):
        o = self._cmp_operand(other)
        return NotImplemented if o is None else self.dec >= o

    def __hash__(self):
        return hash(self.dec)

    # -- helpers -------------------------------------------------------

    def is_zero(self) -> bool:
        return self.dec.is_zero()

    def with_digits(self, digits: int) -> "Real":
        """Round this value to a different working precision."""
        return Real(_context(digits).plus(self.dec), digits)

    def __str__(self):
        return str(self.dec)

    def __repr__(self):
        return f"Real('{self.dec}', digits={self.digits})"


_NUMERAL = re.compile(r"[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?")


def _numeral_error_position(text: str) -> tuple[int, str]:
    if not text:
        return 0, "empty numeral"
    m = _NUMERAL.match(text)
    if m is None:
        return 0, f"unexpected character {text[0]!r}"
    if m.end() < len(text):
        return m.end(), f"unexpected character {text[m.end()]!r}"
    return len(text), "incomplete numeral"


def make_real(text: str, cfg: PrecisionConfig | None = None) -> Real:
    """Parse a signed decimal numeral, correctly rounded to ``cfg.digits``."""
    cfg = cfg or PrecisionConfig()
    if not isinstance(text, str) or _NUMERAL.fullmatch(text) is None:
        pos, msg = _numeral_error_position(text if isinstance(text, str) else str(text))
        raise ParseError(str(text), pos, msg)
    try:
        return Real(_context(cfg.digits).plus(Decimal(text)), cfg.digits)
    except Overflow as exc:
        raise ParseError(text, len(text), "magnitude out of range") from exc


def as_real(value, digits: int = DEFAULT_DIGITS) -> Real:
    """Coerce int/str/Decimal/Real to a Real (strings are parsed exactly then rounded)."""
    if isinstance(value, Real):
        return value
    if isinstance(value, int):
        return Real(_context(digits).plus(Decimal(value)), digits)
    if isinstance(value, Decimal):
        return Real(_context(digits).plus(value), digits)
    if isinstance(value, str):
        return make_real(value, PrecisionConfig(digits=digits))
    raise TypeError(f"cannot convert {type(value).__name__} to Real")


def zero(digits: int = DEFAULT_DIGITS) -> Real:
    return Real(_D0, digits)


def one(digits: int = DEFAULT_DIGITS) -> Real:
    return Real(_D1, digits)


def ten_power(exponent: int, digits: int = DEFAULT_DIGITS) -> Real:
    """Exact power of ten, e.g. the default step tolerance 10**(-digits+6)."""
    return Real(_D1.scaleb(exponent, _context(digits + 4)), digits)


# -- pi and series kernels --------------------------------------------


def _atan_inverse_int(k: int, ctx: Context) -> Decimal:
    # arctan(1/k) = sum (-1)^i / ((2i+1) k^(2i+1)), k >= 2
    eps = _D1.scaleb(-(ctx.prec + 2))
    power = ctx.divide(_D1, Decimal(k))
    k2 = Decimal(k * k)
    total = power
    i = 1
    while True:
        power = ctx.divide(power, k2)
        term = ctx.divide(power, Decimal(2 * i + 1))
        if i % 2:
            term = term.copy_negate()
        total = ctx.add(total, term)
        if term.copy_abs() <= eps:
            return total
        i += 1


@lru_cache(maxsize=None)
def _pi_decimal(prec: int) -> Decimal:
    # Machin: pi = 16 arctan(1/5) - 4 arctan(1/239)
    ctx = _context(prec + 10)
    val = ctx.subtract(
        ctx.multiply(Decimal(16), _atan_inverse_int(5, ctx)),
        ctx.multiply(Decimal(4), _atan_inverse_int(239, ctx)),
    )
    return _context(prec).plus(val)


def pi(digits: int = DEFAULT_DIGITS) -> Real:
    return Real(_pi_decimal(digits), digits)


def _reduce_two_pi(x: Decimal, ctx: Context) -> Decimal:
    # x minus the nearest multiple of 2*pi; fma keeps the cancellation exact.
    two_pi = _context(ctx.prec).multiply(_D2, _pi_decimal(ctx.prec))
    n = ctx.to_integral_value(ctx.divide(x, two_pi))
    if n.is_zero():
        return x
    return ctx.fma(n.copy_negate(), two_pi, x)


def _sin_series(t: Decimal, ctx: Context) -> Decimal:
    eps = _D1.scaleb(-(ctx.prec + 2))
    t2 = ctx.multiply(t, t)
    term = t
    total = t
    i = 1
    while True:
        term = ctx.divide(ctx.multiply(term, t2), Decimal((2 * i) * (2 * i + 1)))
        term = term.copy_negate()
        total = ctx.add(total, term)
        if term.copy_abs() <= eps:
            return total
        i += 1


def _cos_series(t: Decimal, ctx: Context) -> Decimal:
    eps = _D1.scaleb(-(ctx.prec + 2))
    t2 = ctx.multiply(t, t)
    term = _D1
    total = _D1
    i = 1
    while True:
        term = ctx.divide(ctx.multiply(term, t2), Decimal((2 * i - 1) * (2 * i)))
        term = term.copy_negate()
        total = ctx.add(total, term)
        if term.copy_abs() <= eps:
            return total
        i += 1


def _sinh_series(x: Decimal, ctx: Context) -> Decimal:
    eps = _D1.scaleb(-(ctx.prec + 2))
    x2 = ctx.multiply(x, x)
    term = x
    total = x
    i = 1
    while True:
        term = ctx.divide(ctx.multiply(term, x2), Decimal((2 * i) * (2 * i + 1)))
        total = ctx.add(total, term)
        if term.copy_abs() <= eps:
            return total
        i += 1


def _sin_cos_decimal(x: Decimal, prec: int) -> tuple[Decimal, Decimal]:
    ctx = _context(prec)
    t = _reduce_two_pi(x, ctx) if x.copy_abs() > _pi_decimal(prec) else x
    return _sin_series(t, ctx), _cos_series(t, ctx)


def _cosh_sinh_decimal(x: Decimal, prec: int) -> tuple[Decimal, Decimal]:
    ctx = _context(prec)
    if x.copy_abs() < Decimal("0.5"):
        sh = _sinh_series(x, ctx)
        # cosh = sqrt(1 + sinh^2) would need sqrt; series-free identity via exp
        # is fine here because the sum has no cancellation.
        e = ctx.exp(x)
        ch = ctx.divide(ctx.add(e, ctx.divide(_D1, e)), _D2)
        return ch, sh
    e = ctx.exp(x)
    einv = ctx.divide(_D1, e)
    return ctx.divide(ctx.add(e, einv), _D2), ctx.divide(ctx.subtract(e, einv), _D2)


def _working_prec(x: Real, guard: int | None) -> int:
    return x.digits + (DEFAULT_GUARD_DIGITS if guard is None else guard)


def sin(x: Real, guard_digits: int | None = None) -> Real:
    s, _ = _sin_cos_decimal(x.dec, _working_prec(x, guard_digits))
    return Real(_context(x.digits).plus(s), x.digits)


def cos(x: Real, guard_digits: int | None = None) -> Real:
    _, c = _sin_cos_decimal(x.dec, _working_prec(x, guard_digits))
    return Real(_context(x.digits).plus(c), x.digits)


def cot(x: Real, guard_digits: int | None = None) -> Real:
    prec = _working_prec(x, guard_digits)
    s, c = _sin_cos_decimal(x.dec, prec)
    if s.is_zero():
        raise PoleError("cot", x)
    return Real(_context(x.digits).plus(_context(prec).divide(c, s)), x.digits)


def sinh(x: Real, guard_digits: int | None = None) -> Real:
    _, sh = _cosh_sinh_decimal(x.dec, _working_prec(x, guard_digits))
    return Real(_context(x.digits).plus(sh), x.digits)


def cosh(x: Real, guard_digits: int | None = None) -> Real:
    ch, _ = _cosh_sinh_decimal(x.dec, _working_prec(x, guard_digits))
    return Real(_context(x.digits).plus(ch), x.digits)


def coth(x: Real, guard_digits: int | None = None) -> Real:
    if x.is_zero():
        raise PoleError("coth", x)
    prec = _working_prec(x, guard_digits)
    ch, sh = _cosh_sinh_decimal(x.dec, prec)
    return Real(_context(x.digits).plus(_context(prec).divide(ch, sh)), x.digits)


_TRANSCENDENTALS = {
    "sin": sin,
    "cos": cos,
    "cot": cot,
    "sinh": sinh,
    "cosh": cosh,
    "coth": coth,
}


def transcendental(fn: str, x: Real) -> Real:
    """Evaluate one of sin/cos/cot/sinh/cosh/coth at x, rounded to x's precision."""
    try:
        impl = _TRANSCENDENTALS[fn]
    except KeyError:
        raise DomainError(f"unknown function {fn!r}; expected one of {sorted(_TRANSCENDENTALS)}")
    return impl(x)


def ln(x: Real, guard_digits: int | None = None) -> Real:
    if x <= 0:
        raise DomainError(f"ln requires a positive argument, got {x}")
    prec = _working_prec(x, guard_digits)
    return Real(_context(x.digits).plus(_context(prec).ln(x.dec)), x.digits)


def format_fixed(x: Real, places: int) -> str:
    """Render with exactly ``places`` digits after the decimal point."""
    if places < 0:
        raise ValueError("places must be >= 0")
    quantum = _D1.scaleb(-places)
    needed = max(x.dec.adjusted(), 0) + places + 4
    q = x.dec.quantize(quantum, context=_context(needed))
    if q.is_zero():
        q = q.copy_abs()
    sign, digits_, exponent = q.as_tuple()
    coeff = "".join(map(str, digits_)).rjust(places + 1, "0")
    head, tail = coeff[: len(coeff) - places], coeff[len(coeff) - places:]
    body = head + ("." + tail if places else "")
    return ("-" if sign else "") + body
