"""Division polynomials evaluated at a point, and x-only evaluation.

Two independent routes are kept on purpose:

* ``psi`` runs the textbook recursion on the point's coordinates, dividing
  by psi_2 at even indices.
* ``eval_x_only`` never touches y.  It writes psi_n = f_n(x) * s**e with
  e = 1 for even n and s = 2y + a1 x + a3, tracks the pair (f_n, e) as a
  ``TwistedValue`` and replaces s^2 by the quartic 4x^3 + b2 x^2 + b4 x + b6.
  No division happens, so it also works where psi_2 vanishes.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Iterable, NamedTuple

from .curve import Rational, WeierstrassCurve
from .errors import DivisionByZero, InsufficientSamples, NonIntegerResult

if TYPE_CHECKING:
    from .sequences import PointContext


@dataclass(frozen=True)
class TwistedValue:
    """coefficient * s**parity, where s**2 == quartic."""

    coefficient: Fraction
    parity: int
    quartic: Fraction

    def __mul__(self, other: TwistedValue) -> TwistedValue:
        if self.quartic != other.quartic:
            raise ValueError("twisted values over different arguments")
        carry = (self.parity + other.parity) // 2
        return TwistedValue(
            self.coefficient * other.coefficient * self.quartic**carry,
            self.parity ^ other.parity,
            self.quartic,
        )

    def __sub__(self, other: TwistedValue) -> TwistedValue:
        if self.parity != other.parity:
            raise ValueError("cannot subtract twisted values of different parity")
        return TwistedValue(self.coefficient - other.coefficient, self.parity, self.quartic)

    def __neg__(self) -> TwistedValue:
        return TwistedValue(-self.coefficient, self.parity, self.quartic)

    def square(self) -> Fraction:
        """The (y-free) rational value of self**2."""
        return self.coefficient**2 * self.quartic**self.parity


def _psi3(C: WeierstrassCurve, x: Fraction) -> Fraction:
    return (((3 * x + C.b2) * x + 3 * C.b4) * x + 3 * C.b6) * x + C.b8


def _psi4_over_psi2(C: WeierstrassCurve, x: Fraction) -> Fraction:
    coeffs = (2, C.b2, 5 * C.b4, 10 * C.b6, 10 * C.b8,
              C.b2 * C.b8 - C.b4 * C.b6, C.b4 * C.b8 - C.b6 * C.b6)
    acc = Fraction(0)
    for c in coeffs:
        acc = acc * x + c
    return acc


# -- point-based route ---------------------------------------------------------

def psi(ctx: PointContext, n: int) -> Fraction:
    """psi_n(x(P), y(P)) for n >= -1, memoized in the context."""
    if n < -1:
        raise ValueError("psi is only defined here for n >= -1")
    if n < 0:
        return -psi(ctx, -n)
    cache = ctx.psi_cache
    if n in cache:
        return cache[n]
    C, P = ctx.curve, ctx.point
    x, y = P.x, P.y
    psi2 = 2 * y + C.a1 * x + C.a3
    if n <= 1:
        val = Fraction(n)
    elif n == 2:
        val = psi2
    elif n == 3:
        val = _psi3(C, x)
    elif n == 4:
        val = psi2 * _psi4_over_psi2(C, x)
    elif psi2 == 0:
        # 2-torsion: the even-index division is 0/0, take the y-free route
        tv = _twisted_psi(C, x, n, {})
        val = tv.coefficient * psi2**tv.parity
    elif n % 2:
        k = (n - 1) // 2
        val = psi(ctx, k + 2) * psi(ctx, k) ** 3 - psi(ctx, k - 1) * psi(ctx, k + 1) ** 3
    else:
        k = n // 2
        val = psi(ctx, k) * (
            psi(ctx, k + 2) * psi(ctx, k - 1) ** 2 - psi(ctx, k - 2) * psi(ctx, k + 1) ** 2
        ) / psi2
    cache[n] = val
    return val


def phi(ctx: PointContext, n: int) -> Fraction:
    return ctx.point.x * psi(ctx, n) ** 2 - psi(ctx, n + 1) * psi(ctx, n - 1)


def omega(ctx: PointContext, n: int) -> Fraction:
    # Only matches y(nP) when a1 = a3 = 0; see tests.
    y = ctx.point.y
    if y == 0:
        raise DivisionByZero("omega_n divides by 4y and y(P) = 0")
    num = psi(ctx, n + 2) * psi(ctx, n - 1) ** 2 - psi(ctx, n - 2) * psi(ctx, n + 1) ** 2
    return num / (4 * y)


def _as_integer(q: Fraction, what: str) -> int:
    if q.denominator != 1:
        raise NonIntegerResult(f"{what} = {q} is not an integer")
    return q.numerator


def psi_sq_homog(ctx: PointContext, n: int) -> int:
    """v^(n^2-1) * psi_n^2(u/v)."""
    if n == 0:
        return 0
    return _as_integer(psi(ctx, n) ** 2 * Fraction(ctx.v) ** (n * n - 1), f"psi_{n}^2(u,v)")


def phi_homog(ctx: PointContext, n: int) -> int:
    """v^(n^2) * phi_n(u/v)."""
    return _as_integer(phi(ctx, n) * ctx.v ** (n * n), f"phi_{n}(u,v)")


# -- x-only route --------------------------------------------------------------

def _twisted_psi(C: WeierstrassCurve, x0: Fraction, n: int,
                 memo: dict[int, Fraction]) -> TwistedValue:
    T = C.quartic(x0)
    f = _f_value(C, x0, T, n, memo)
    return TwistedValue(f, 1 if n % 2 == 0 else 0, T)


def _f_value(C, x0, T, n, memo):
    # f_n with psi_n = f_n * s^(n even); the s-powers are folded into T.
    if n < 0:
        return -_f_value(C, x0, T, -n, memo)
    if n in memo:
        return memo[n]
    if n <= 2:
        val = Fraction(min(n, 1))
    elif n == 3:
        val = _psi3(C, x0)
    elif n == 4:
        val = _psi4_over_psi2(C, x0)
    else:
        def f(i):
            return _f_value(C, x0, T, i, memo)

        if n % 2:
            k = (n - 1) // 2
            if k % 2 == 0:
                val = T * T * f(k + 2) * f(k) ** 3 - f(k - 1) * f(k + 1) ** 3
            else:
                val = f(k + 2) * f(k) ** 3 - T * T * f(k - 1) * f(k + 1) ** 3
        else:
            k = n // 2
            val = f(k) * (f(k + 2) * f(k - 1) ** 2 - f(k - 2) * f(k + 1) ** 2)
    memo[n] = val
    return val


class XOnlyValues(NamedTuple):
    psi: TwistedValue
    psi_sq: Fraction
    phi: Fraction


def eval_x_only(C: WeierstrassCurve, n: int, x0: Rational) -> XOnlyValues:
    """psi_n, psi_n^2 and phi_n at an arbitrary rational abscissa."""
    x0 = Fraction(x0)
    memo: dict[int, Fraction] = {}
    p_n = _twisted_psi(C, x0, n, memo)
    cross = _twisted_psi(C, x0, n + 1, memo) * _twisted_psi(C, x0, n - 1, memo)
    sq = p_n * p_n
    assert sq.parity == 0 and cross.parity == 0
    return XOnlyValues(p_n, sq.coefficient, x0 * sq.coefficient - cross.coefficient)


def product_identity_sides(C: WeierstrassCurve, n: int, m: int,
                           x0: Rational) -> tuple[Fraction, Fraction]:
    vn, vm = eval_x_only(C, n, x0), eval_x_only(C, m, x0)
    lhs = (vm.phi * vn.psi_sq - vn.phi * vm.psi_sq) ** 2
    rhs = eval_x_only(C, n + m, x0).psi_sq * eval_x_only(C, abs(n - m), x0).psi_sq
    return lhs, rhs


def check_product_identity(C: WeierstrassCurve, n: int, m: int,
                           samples: Iterable[Rational]) -> bool:
    """Check (phi_m psi_n^2 - phi_n psi_m^2)^2 == psi_{n+m}^2 psi_{|n-m|}^2.

    Both sides are polynomials in x of degree at most 2(n^2 + m^2 - 1), so
    agreement on one more distinct sample than that proves the identity.
    """
    if n < 1 or m < 1:
        raise ValueError("n and m must be positive")
    pts = {Fraction(s) for s in samples}
    need = 2 * (n * n + m * m - 1) + 1
    if len(pts) < need:
        raise InsufficientSamples(f"need {need} distinct samples, got {len(pts)}")
    return all(lhs == rhs for lhs, rhs in (product_identity_sides(C, n, m, s) for s in pts))
