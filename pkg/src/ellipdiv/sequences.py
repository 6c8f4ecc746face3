"""The denominator sequence beta_n, the integer sequence h_n and the gcd g_n.

A ``PointContext`` caches both the multiples nP (group law) and the
division-polynomial values at P.  It is mutated as values are computed, so a
single context must not be shared between threads without a lock; separate
contexts are independent.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt

from . import divpoly
from .curve import IDENTITY, Point, WeierstrassCurve, add, is_square, on_curve
from .errors import (
    DivisibilityViolation,
    IdentityPoint,
    InvariantViolation,
    NonIntegerResult,
    NonSquareDenominator,
    NotOnCurve,
)


@dataclass(eq=False)
class PointContext:
    curve: WeierstrassCurve
    point: Point
    u: int
    v: int
    w: int
    psi_cache: dict[int, Fraction] = field(default_factory=dict, repr=False)
    _multiples: list[Point] = field(default_factory=list, repr=False)

    @property
    def B1(self) -> int:
        return self.w

    def multiple(self, n: int) -> Point:
        """nP for n >= 0, built by repeated addition and cached."""
        if n < 0:
            raise ValueError("n must be non-negative")
        mult = self._multiples
        if not mult:
            mult.append(IDENTITY)
        while len(mult) <= n:
            mult.append(add(self.curve, mult[-1], self.point))
        return mult[n]

    def torsion_order(self, limit: int = 16) -> int | None:
        """Order of P if it is at most ``limit``, else None.

        Over Q torsion orders never exceed 12, so the default limit decides
        torsion exactly.
        """
        for n in range(1, limit + 1):
            if self.multiple(n).is_identity:
                return n
        return None


def make_context(C: WeierstrassCurve, P: Point) -> PointContext:
    if P.is_identity:
        raise IdentityPoint("the base point must be affine")
    if not on_curve(C, P):
        raise NotOnCurve(f"{P} is not on y^2+{C.a1}xy+{C.a3}y = x^3+{C.a2}x^2+{C.a4}x+{C.a6}")
    u, v = P.x.numerator, P.x.denominator
    if not is_square(v):
        raise NonSquareDenominator(f"denominator of x(P) = {v} is not a square")
    return PointContext(C, P, u, v, isqrt(v))


def sign(q) -> int:
    return (q > 0) - (q < 0)


def denominator_root(Q: Point) -> int:
    """B with B^2 = denominator of x(Q); 0 for the identity."""
    if Q.is_identity:
        return 0
    d = Q.x.denominator
    B = isqrt(d)
    if B * B != d:
        raise NonSquareDenominator(f"denominator {d} of x(nP) is not a square")
    return B


def B(ctx: PointContext, n: int) -> int:
    return denominator_root(ctx.multiple(n))


def beta(ctx: PointContext, n: int) -> int:
    if n == 0:
        return 0
    Bn = B(ctx, n)
    q, rem = divmod(Bn, ctx.B1)
    if rem:
        raise DivisibilityViolation(f"B_1 = {ctx.B1} does not divide B_{n} = {Bn}")
    return sign(divpoly.psi(ctx, n)) * q


def h(ctx: PointContext, n: int) -> int:
    """w^(n^2-1) * psi_n(P)."""
    if n == 0:
        return 0
    val = divpoly.psi(ctx, n) * Fraction(ctx.w) ** (n * n - 1)
    if val.denominator != 1:
        raise NonIntegerResult(f"h_{n} = {val} is not an integer")
    return val.numerator


def g(ctx: PointContext, n: int) -> int:
    """gcd(phi_n(u,v), v psi_n^2(u,v)); 1 at n = 0 and wherever nP = O."""
    if n == 0 or ctx.multiple(n).is_identity:
        return 1
    val = gcd(divpoly.phi_homog(ctx, n), ctx.v * divpoly.psi_sq_homog(ctx, n))
    if not is_square(val):
        raise InvariantViolation(f"g_{n} = {val} is not a perfect square")
    return val


def ord_p(q, p: int) -> float:
    """p-adic valuation of a nonzero rational; math.inf for zero."""
    q = Fraction(q)
    if q == 0:
        return math.inf
    k = 0
    num, den = q.numerator, q.denominator
    while num % p == 0:
        num //= p
        k += 1
    while den % p == 0:
        den //= p
        k -= 1
    return k


def g_valuation(ctx: PointContext, n: int, p: int) -> int:
    val = int(ord_p(g(ctx, n), p))
    if ctx.v % p and n > 0 and not ctx.multiple(n).is_identity:
        x_p = divpoly.phi(ctx, n), divpoly.psi(ctx, n) ** 2
        local = min(ord_p(x_p[0], p), ord_p(x_p[1], p))
        if local != val:
            raise InvariantViolation(
                f"ord_{p}(g_{n}) = {val} but min-of-valuations gives {local}")
    return val


@dataclass(frozen=True)
class SequenceRecord:
    n: int
    is_identity: bool
    B: int
    beta: int
    h: int
    g: int
    x: Fraction | None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "is_identity": self.is_identity,
            "B": str(self.B),
            "beta": str(self.beta),
            "h": str(self.h),
            "g": str(self.g),
            "x": None if self.x is None else str(self.x),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def record(ctx: PointContext, n: int) -> SequenceRecord:
    Q = ctx.multiple(n)
    rec = SequenceRecord(n, Q.is_identity, B(ctx, n), beta(ctx, n), h(ctx, n), g(ctx, n),
                         None if Q.is_identity else Q.x)
    _check_record(ctx, rec)
    return rec


def _check_record(ctx: PointContext, rec: SequenceRecord) -> None:
    n = rec.n
    psq = divpoly.psi_sq_homog(ctx, n)
    problems = []
    if rec.x is not None and rec.B**2 != rec.x.denominator:
        problems.append("B_n^2 != den x(nP)")
    if (rec.B == 0) != rec.is_identity:
        problems.append("B_n = 0 must coincide with nP = O")
    if rec.beta**2 * rec.g != psq:
        problems.append("beta_n^2 g_n != psi_n^2(u,v)")
    if rec.h**2 != psq:
        problems.append("h_n^2 != psi_n^2(u,v)")
    if sign(rec.h) != sign(divpoly.psi(ctx, n)):
        problems.append("sign(h_n) != sign(psi_n)")
    if rec.beta * isqrt(rec.g) != rec.h:
        problems.append("beta_n sqrt(g_n) != h_n")
    if problems:
        raise InvariantViolation(f"n={n}: " + "; ".join(problems))


def sequence_table(ctx: PointContext, N: int) -> list[SequenceRecord]:
    if N < 0:
        raise ValueError("N must be non-negative")
    return [record(ctx, n) for n in range(N + 1)]


def growth_ratio(ctx: PointContext, n: int) -> float:
    """log|beta_n| / n^2; tends to a positive constant for non-torsion P."""
    b = beta(ctx, n)
    if b == 0:
        raise ValueError(f"beta_{n} = 0")
    return math.log(abs(b)) / (n * n)
