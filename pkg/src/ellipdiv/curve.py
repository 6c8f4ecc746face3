"""Weierstrass curves over Q and their exact group law.

    y^2 + a1*x*y + a3*y = x^3 + a2*x^2 + a4*x + a6

Coordinates are ``fractions.Fraction``; Fraction already keeps lowest terms
with a positive denominator, which is what the denominator sequences need.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Union

from .errors import InputError, SingularCurve

Rational = Union[int, Fraction]


@dataclass(frozen=True)
class WeierstrassCurve:
    a1: int
    a2: int
    a3: int
    a4: int
    a6: int
    b2: int = field(init=False)
    b4: int = field(init=False)
    b6: int = field(init=False)
    b8: int = field(init=False)
    discriminant: int = field(init=False)

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            if not isinstance(getattr(self, name), int):
                raise InputError(f"{name} must be an integer")
        a1, a2, a3, a4, a6 = self.coefficients
        b2 = 4 * a2 + a1 * a1
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        disc = -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
        if disc == 0:
            raise SingularCurve(f"curve {self.coefficients} has zero discriminant")
        object.__setattr__(self, "b2", b2)
        object.__setattr__(self, "b4", b4)
        object.__setattr__(self, "b6", b6)
        object.__setattr__(self, "b8", b8)
        object.__setattr__(self, "discriminant", disc)

    @property
    def coefficients(self) -> tuple[int, int, int, int, int]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def quartic(self, x: Rational) -> Fraction:
        """4x^3 + b2 x^2 + 2 b4 x + b6, the square of 2y + a1 x + a3 on the curve."""
        x = Fraction(x)
        return ((4 * x + self.b2) * x + 2 * self.b4) * x + self.b6

    def __str__(self):
        return ",".join(str(a) for a in self.coefficients)


def make_curve(a1: int, a2: int, a3: int, a4: int, a6: int) -> WeierstrassCurve:
    return WeierstrassCurve(a1, a2, a3, a4, a6)


@dataclass(frozen=True)
class Point:
    """A rational point, or the identity when both coordinates are None."""

    x: Fraction | None = None
    y: Fraction | None = None

    def __post_init__(self):
        if (self.x is None) != (self.y is None):
            raise InputError("a point needs both coordinates or neither")
        if self.x is not None:
            object.__setattr__(self, "x", Fraction(self.x))
            object.__setattr__(self, "y", Fraction(self.y))

    @property
    def is_identity(self) -> bool:
        return self.x is None

    def __str__(self):
        if self.is_identity:
            return "O"
        return f"{self.x},{self.y}"


IDENTITY = Point()


def on_curve(C: WeierstrassCurve, P: Point) -> bool:
    if P.is_identity:
        return True
    x, y = P.x, P.y
    lhs = y * y + C.a1 * x * y + C.a3 * y
    rhs = ((x + C.a2) * x + C.a4) * x + C.a6
    return lhs == rhs


def negate(C: WeierstrassCurve, P: Point) -> Point:
    if P.is_identity:
        return P
    return Point(P.x, -P.y - C.a1 * P.x - C.a3)


def add(C: WeierstrassCurve, P: Point, Q: Point) -> Point:
    if P.is_identity:
        return Q
    if Q.is_identity:
        return P
    x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
    if x1 == x2:
        if y1 + y2 + C.a1 * x2 + C.a3 == 0:
            return IDENTITY
        denom = 2 * y1 + C.a1 * x1 + C.a3
        lam = (3 * x1 * x1 + 2 * C.a2 * x1 + C.a4 - C.a1 * y1) / denom
        nu = (-x1 * x1 * x1 + C.a4 * x1 + 2 * C.a6 - C.a3 * y1) / denom
    else:
        lam = (y2 - y1) / (x2 - x1)
        nu = (y1 * x2 - y2 * x1) / (x2 - x1)
    x3 = lam * lam + C.a1 * lam - C.a2 - x1 - x2
    y3 = -(lam + C.a1) * x3 - nu - C.a3
    return Point(x3, y3)


def scalar_mul(C: WeierstrassCurve, n: int, P: Point) -> Point:
    if n < 0:
        return scalar_mul(C, -n, negate(C, P))
    result = IDENTITY
    addend = P
    while n:
        if n & 1:
            result = add(C, result, addend)
        addend = add(C, addend, addend)
        n >>= 1
    return result


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def has_integral_shape(P: Point) -> bool:
    """True when x = a/e^2 and y = b/e^3 in lowest terms (identity counts)."""
    if P.is_identity:
        return True
    d = P.x.denominator
    if not is_square(d):
        return False
    e = isqrt(d)
    return P.y.denominator == e**3


# -- text formats shared with the CLI -----------------------------------------

def parse_curve(text: str) -> WeierstrassCurve:
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != 5:
        raise InputError(f"curve needs five coefficients a1,a2,a3,a4,a6, got {text!r}")
    try:
        coeffs = [int(s) for s in parts]
    except ValueError:
        raise InputError(f"curve coefficients must be integers: {text!r}") from None
    return make_curve(*coeffs)


def parse_rational(text: str) -> Fraction:
    try:
        if "/" in text:
            num, den = text.split("/")
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError):
        raise InputError(f"not a rational number: {text!r}") from None


def parse_point(text: str) -> Point:
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != 2:
        raise InputError(f"point must look like x,y: {text!r}")
    return Point(parse_rational(parts[0]), parse_rational(parts[1]))
