"""Reduction of points mod p, the component index r(p, P) and M(P)."""
from __future__ import annotations

import json
from dataclasses import dataclass
from math import lcm

from sympy import factorint, isprime

from .curve import Point, WeierstrassCurve
from .errors import FactorizationFailure, SearchBoundExceeded
from .sequences import PointContext, ord_p


@dataclass(frozen=True)
class ReducedPoint:
    """Residues (x mod p, y mod p), or the identity mod p when x is None."""

    x: int | None
    y: int | None
    p: int

    @property
    def is_identity(self) -> bool:
        return self.x is None


def reduce_point(C: WeierstrassCurve, Q: Point, p: int) -> ReducedPoint:
    if Q.is_identity or Q.x.denominator % p == 0:
        return ReducedPoint(None, None, p)
    # y has denominator e^3 when x has e^2, so it is p-integral here too
    x = Q.x.numerator * pow(Q.x.denominator, -1, p) % p
    y = Q.y.numerator * pow(Q.y.denominator, -1, p) % p
    return ReducedPoint(x, y, p)


def is_singular(C: WeierstrassCurve, R: ReducedPoint, p: int) -> bool:
    """Both partials of F = y^2 + a1xy + a3y - x^3 - a2x^2 - a4x - a6 vanish mod p."""
    if R.is_identity:
        return False
    x, y = R.x, R.y
    dFdx = C.a1 * y - 3 * x * x - 2 * C.a2 * x - C.a4
    dFdy = 2 * y + C.a1 * x + C.a3
    return dFdx % p == 0 and dFdy % p == 0


def r_search_bound(C: WeierstrassCurve, p: int) -> int:
    return max(4, int(ord_p(C.discriminant, p))) + 4


def r_of(ctx: PointContext, p: int) -> int:
    """Order of P in E(Q_p)/E_0(Q_p).

    Found by scanning multiples for the first one with non-singular
    reduction.  The component group has order at most max(4, ord_p(disc)),
    so running past ``r_search_bound`` means something is wrong.
    """
    C = ctx.curve
    if C.discriminant % p:
        return 1
    bound = r_search_bound(C, p)
    for n in range(1, bound + 1):
        if not is_singular(C, reduce_point(C, ctx.multiple(n), p), p):
            return n
    raise SearchBoundExceeded(f"no non-singular multiple of P mod {p} up to {bound}")


@dataclass(frozen=True)
class PrimeEntry:
    p: int
    ord_delta: int
    r: int


@dataclass(frozen=True)
class ReductionProfile:
    delta: int
    primes: tuple[PrimeEntry, ...]
    M: int

    def to_dict(self) -> dict:
        return {
            "delta": str(self.delta),
            "primes": [{"p": str(e.p), "ord_delta": e.ord_delta, "r": e.r} for e in self.primes],
            "M": self.M,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def prime_factors(n: int) -> dict[int, int]:
    n = abs(n)
    if n <= 1:
        return {}
    factors = factorint(n)
    bad = [q for q in factors if not isprime(q)]
    if bad:
        raise FactorizationFailure(f"could not split {bad} (from {n})")
    return factors


def M_of(ctx: PointContext) -> tuple[int, ReductionProfile]:
    delta = ctx.curve.discriminant
    entries = tuple(
        PrimeEntry(p, e, r_of(ctx, p)) for p, e in sorted(prime_factors(delta).items())
    )
    M = lcm(1, *(e.r for e in entries))
    return M, ReductionProfile(delta, entries, M)
