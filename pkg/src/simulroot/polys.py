"""Polynomial families in coefficient and factored form, with derivatives.

Three coefficient families are supported:

* algebraic, monic: x^n + a_1 x^(n-1) + ... + a_n
* trigonometric: a_0/2 + sum_k (a_k cos(kx) + b_k sin(kx))
* exponential: a_0/2 + sum_k (a_k cosh(kx) + b_k sinh(kx))

plus a factored form whose factors are (x - r), sin((x - r)/2) or
sinh((x - r)/2) raised to known multiplicities.  The factored form is
how worked fixtures are written down; evaluation uses the product rule,
so value and derivative are exactly zero at a root of multiplicity >= 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Union

from .numeric import Real, cos, cosh, one, sin, sinh, zero


class Family(str, Enum):
    ALGEBRAIC = "algebraic"
    TRIGONOMETRIC = "trigonometric"
    EXPONENTIAL = "exponential"


class UnsupportedFamilyError(ValueError):
    pass


class DuplicateRootError(ValueError):
    def __init__(self, root: Real, i: int, j: int):
        self.root = root
        self.indices = (i, j)
        super().__init__(f"duplicate root {root} at factor positions {i} and {j}")


class DerivativeZeroError(ArithmeticError):
    """p'(x) vanished where the Newton ratio needs it (p(x) != 0)."""

    def __init__(self, x: Real):
        self.x = x
        super().__init__(f"derivative is zero at x = {x} while the value is not")


@dataclass(frozen=True)
class AlgebraicCoeffPoly:
    """Monic algebraic polynomial; coeffs are a_1..a_n (leading 1 implicit)."""

    coeffs: tuple[Real, ...]

    def __post_init__(self):
        if len(self.coeffs) < 1:
            raise ValueError("algebraic polynomial needs degree >= 1")

    @property
    def degree(self) -> int:
        return len(self.coeffs)


@dataclass(frozen=True)
class TrigCoeffPoly:
    a0: Real
    a: tuple[Real, ...]
    b: tuple[Real, ...]

    def __post_init__(self):
        if len(self.a) < 1 or len(self.a) != len(self.b):
            raise ValueError("trigonometric polynomial needs equal-length a, b with degree >= 1")
        if self.a[-1].is_zero() and self.b[-1].is_zero():
            raise ValueError("leading coefficients a_n, b_n must not both be zero")

    @property
    def degree(self) -> int:
        return len(self.a)


@dataclass(frozen=True)
class ExpCoeffPoly:
    a0: Real
    a: tuple[Real, ...]
    b: tuple[Real, ...]

    def __post_init__(self):
        if len(self.a) < 1 or len(self.a) != len(self.b):
            raise ValueError("exponential polynomial needs equal-length a, b with degree >= 1")
        if self.a[-1].is_zero() and self.b[-1].is_zero():
            raise ValueError("leading coefficients a_n, b_n must not both be zero")

    @property
    def degree(self) -> int:
        return len(self.a)


@dataclass(frozen=True)
class FactoredPoly:
    """Product of family factors with known roots and multiplicities."""

    family: Family
    roots: tuple[Real, ...]
    mults: tuple[int, ...]

    def __post_init__(self):
        if len(self.roots) < 1 or len(self.roots) != len(self.mults):
            raise ValueError("factored polynomial needs matching roots and multiplicities")
        if any(m < 1 for m in self.mults):
            raise ValueError("multiplicities must be positive integers")
        for i in range(len(self.roots)):
            for j in range(i + 1, len(self.roots)):
                if self.roots[i] == self.roots[j]:
                    raise DuplicateRootError(self.roots[i], i, j)
        if self.family is not Family.ALGEBRAIC and sum(self.mults) % 2:
            raise ValueError(
                "trigonometric/exponential multiplicities must sum to an even number 2n"
            )

    @property
    def degree(self) -> int:
        total = sum(self.mults)
        return total if self.family is Family.ALGEBRAIC else total // 2


Polynomial = Union[AlgebraicCoeffPoly, TrigCoeffPoly, ExpCoeffPoly, FactoredPoly]


def family_of(p: Polynomial) -> Family:
    if isinstance(p, AlgebraicCoeffPoly):
        return Family.ALGEBRAIC
    if isinstance(p, TrigCoeffPoly):
        return Family.TRIGONOMETRIC
    if isinstance(p, ExpCoeffPoly):
        return Family.EXPONENTIAL
    if isinstance(p, FactoredPoly):
        return p.family
    raise UnsupportedFamilyError(f"not a polynomial: {type(p).__name__}")


def degree_of(p: Polynomial) -> int:
    return p.degree


def _factor_value_derivative(family: Family, x: Real, r: Real) -> tuple[Real, Real]:
    if family is Family.ALGEBRAIC:
        return x - r, one(x.digits)
    t = (x - r) / 2
    if family is Family.TRIGONOMETRIC:
        return sin(t), cos(t) / 2
    return sinh(t), cosh(t) / 2


def _eval_factored(p: FactoredPoly, x: Real) -> tuple[Real, Real]:
    pairs = [_factor_value_derivative(p.family, x, r) for r in p.roots]
    value = one(x.digits)
    for (g, _), m in zip(pairs, p.mults):
        value = value * g ** m
    derivative = zero(x.digits)
    for j, ((g, dg), m) in enumerate(zip(pairs, p.mults)):
        term = m * dg
        if m > 1:
            term = term * g ** (m - 1)
        for l, ((h, _), mh) in enumerate(zip(pairs, p.mults)):
            if l != j:
                term = term * h ** mh
        derivative = derivative + term
    return value, derivative


def eval_with_derivative(p: Polynomial, x: Real) -> tuple[Real, Real]:
    """Return (p(x), p'(x))."""
    if isinstance(p, AlgebraicCoeffPoly):
        value = one(x.digits)
        derivative = zero(x.digits)
        for a in p.coeffs:
            derivative = derivative * x + value
            value = value * x + a
        return value, derivative
    if isinstance(p, TrigCoeffPoly):
        value = p.a0 / 2
        derivative = zero(x.digits)
        for k, (a, b) in enumerate(zip(p.a, p.b), start=1):
            kx = k * x
            s, c = sin(kx), cos(kx)
            value = value + a * c + b * s
            derivative = derivative + k * (b * c - a * s)
        return value, derivative
    if isinstance(p, ExpCoeffPoly):
        value = p.a0 / 2
        derivative = zero(x.digits)
        for k, (a, b) in enumerate(zip(p.a, p.b), start=1):
            kx = k * x
            sh, ch = sinh(kx), cosh(kx)
            value = value + a * ch + b * sh
            derivative = derivative + k * (a * sh + b * ch)
        return value, derivative
    if isinstance(p, FactoredPoly):
        return _eval_factored(p, x)
    raise UnsupportedFamilyError(f"not a polynomial: {type(p).__name__}")


def newton_ratio(p: Polynomial, x: Real) -> Real:
    """p(x)/p'(x).

    At an exact root the ratio is zero regardless of the derivative (a
    root is a fixed point of the Newton map even when p' vanishes with
    p at a multiple root).  A zero derivative elsewhere is a genuine
    stationary point and raises :class:`DerivativeZeroError`.
    """
    value, derivative = eval_with_derivative(p, x)
    if value.is_zero():
        return zero(x.digits)
    if derivative.is_zero():
        raise DerivativeZeroError(x)
    return value / derivative


def expand_algebraic(f: FactoredPoly) -> AlgebraicCoeffPoly:
    """Multiply out an algebraic factored form into monic coefficients."""
    if f.family is not Family.ALGEBRAIC:
        raise UnsupportedFamilyError(
            f"cannot expand a {f.family.value} factored form into algebraic coefficients"
        )
    digits = max(r.digits for r in f.roots)
    coeffs = [one(digits)]
    for r, m in zip(f.roots, f.mults):
        for _ in range(m):
            nxt = [coeffs[0]]
            for i in range(1, len(coeffs)):
                nxt.append(coeffs[i] - r * coeffs[i - 1])
            nxt.append(-(r * coeffs[-1]))
            coeffs = nxt
    return AlgebraicCoeffPoly(tuple(coeffs[1:]))
