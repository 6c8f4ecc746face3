"""Ward's recurrence: generation, checking, and the index-restricted version
satisfied by the denominator sequence beta_n.

Triples are always put in the order m >= n >= r before the recurrence

    s(m+n) s(m-n) s(r)^2 = s(m+r) s(m-r) s(n)^2 - s(n+r) s(n-r) s(m)^2

is applied.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence, Union

from . import divpoly
from .errors import (
    IndexOutOfRange,
    InvalidSeed,
    NonIntegralStep,
    NotApplicable,
    PreconditionError,
    TorsionPoint,
)
from .reduction import M_of, r_of
from .sequences import PointContext, beta, g, g_valuation, ord_p

IntSeq = Union[Sequence[int], Callable[[int], int]]


def edsa_generate(h1: int, h2: int, h3: int, h4: int, N: int) -> list[int]:
    """Terms h_0..h_N of the EDSA with the given first four terms.

    Uses the duplication instances of the recurrence.  Even steps divide by
    h2 and must be exact; an inexact step raises ``NonIntegralStep``.
    """
    if h1 != 1:
        raise InvalidSeed("h1 must be 1")
    if (h2 == 0 and h4 != 0) or (h2 != 0 and h4 % h2):
        raise InvalidSeed(f"h2 = {h2} must divide h4 = {h4}")
    if N < 0:
        raise InvalidSeed("N must be non-negative")
    if h2 == 0 and N >= 6:
        raise InvalidSeed("h2 = 0 leaves even terms past h4 undetermined")
    s = [0, h1, h2, h3, h4]
    for i in range(5, N + 1):
        k = i // 2
        if i % 2:
            s.append(s[k + 2] * s[k] ** 3 - s[k - 1] * s[k + 1] ** 3)
        else:
            num = s[k] * (s[k + 2] * s[k - 1] ** 2 - s[k - 2] * s[k + 1] ** 2)
            q, rem = divmod(num, h2)
            if rem:
                raise NonIntegralStep(f"h2 = {h2} does not divide the numerator of h_{i}")
            s.append(q)
    return s[: N + 1]


def canonical_triple(m: int, n: int, r: int) -> tuple[int, int, int]:
    a, b, c = sorted((m, n, r), reverse=True)
    if c < 1:
        raise ValueError("indices must be positive")
    return a, b, c


def ward_sides(seq: IntSeq, m: int, n: int, r: int) -> tuple[int, int]:
    m, n, r = canonical_triple(m, n, r)
    if callable(seq):
        at = seq
    else:
        if m + n >= len(seq):
            raise IndexOutOfRange(f"need terms through index {m + n}, have {len(seq) - 1}")
        at = seq.__getitem__
    lhs = at(m + n) * at(m - n) * at(r) ** 2
    rhs = at(m + r) * at(m - r) * at(n) ** 2 - at(n + r) * at(n - r) * at(m) ** 2
    return lhs, rhs


def check_ward_triple(seq: IntSeq, m: int, n: int, r: int) -> int:
    lhs, rhs = ward_sides(seq, m, n, r)
    return lhs - rhs


def triples(largest: int):
    """All (m, n, r) with largest >= m >= n >= r >= 1."""
    for m in range(1, largest + 1):
        for n in range(1, m + 1):
            for r in range(1, n + 1):
                yield m, n, r


@dataclass(frozen=True)
class TripleCheckResult:
    m: int
    n: int
    r: int
    lhs: int
    rhs: int
    qualifying: bool

    @property
    def defect(self) -> int:
        return self.lhs - self.rhs

    def to_dict(self) -> dict:
        return {"m": self.m, "n": self.n, "r": self.r,
                "qualifying": self.qualifying, "defect": str(self.defect)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def is_qualifying(triple: tuple[int, int, int], M: int) -> bool:
    return sum(1 for i in triple if i % M == 0) >= 2


def _check_beta_triples(ctx: PointContext, bound: int, M: int) -> list[TripleCheckResult]:
    bs = [beta(ctx, i) for i in range(2 * bound + 1)]
    out = []
    for t in triples(bound):
        lhs, rhs = ward_sides(bs, *t)
        out.append(TripleCheckResult(*t, lhs, rhs, is_qualifying(t, M)))
    return out


def verify_main_theorem(ctx: PointContext, bound: int) -> list[TripleCheckResult]:
    """Every triple with largest index <= bound, flagged by whether it qualifies.

    A qualifying triple (two indices divisible by M(P)) must have defect 0;
    the others are probes and may not.
    """
    if ctx.torsion_order() is not None:
        raise TorsionPoint("P is a torsion point; use verify_torsion_case")
    M, _ = M_of(ctx)
    return _check_beta_triples(ctx, bound, M)


def summarize(results: list[TripleCheckResult]) -> dict:
    q = [t for t in results if t.qualifying]
    return {
        "triples": len(results),
        "qualifying": len(q),
        "qualifying_violations": sum(1 for t in q if t.defect),
        "non_qualifying_nonzero": sum(1 for t in results if not t.qualifying and t.defect),
    }


def check_g_valuation_law(ctx: PointContext, p: int, m: int, n: int) -> int:
    """g_{n+m} + g_{|n-m|} - 2(g_n + g_m), all as p-adic valuations."""
    if ctx.v % p == 0:
        raise PreconditionError(f"p = {p} divides the denominator of x(P)")

    def gv(k):
        return g_valuation(ctx, k, p)

    return gv(n + m) + gv(abs(n - m)) - 2 * (gv(n) + gv(m))


@dataclass(frozen=True)
class DefectRatio:
    m: int
    n: int
    L: Fraction


def check_g_multiplicative_law(ctx: PointContext, m: int, n: int) -> DefectRatio:
    L = Fraction(g(ctx, m + n) * g(ctx, abs(n - m)), g(ctx, n) ** 2 * g(ctx, m) ** 2)
    return DefectRatio(m, n, L)


def cheon_decomposition(n: int, r: int) -> tuple[int, int, int]:
    """(m, k, sign) with n = m*r when k == 0, else n = 2*m*r + sign*k, 1 <= k < r."""
    if n % r == 0:
        return n // r, 0, 0
    t = n % (2 * r)
    if t < r:
        return (n - t) // (2 * r), t, 1
    k = 2 * r - t
    return (n + k) // (2 * r), k, -1


def cheon_g(ctx: PointContext, p: int, n: int) -> int:
    """Closed form for ord_p(g_n) when r(p, P) > 1.

    With r = r(p, P) and mu = ord_p(g_r):
      n = m r           ->  mu m^2
      n = 2 m r +- k    ->  4 mu m^2 +- 2 (2 v(psi_k / psi_{r-k}) + mu) m + 2 v(psi_k)
    """
    if n < 1:
        raise ValueError("n must be positive")
    r = r_of(ctx, p)
    if r == 1:
        raise NotApplicable(f"r({p}, P) = 1; g_n has valuation 0 at {p}")
    if ctx.v % p == 0:
        raise PreconditionError(f"p = {p} divides the denominator of x(P)")
    if ctx.torsion_order() is not None:
        raise TorsionPoint("the closed form needs a non-torsion point")
    mu = g_valuation(ctx, r, p)
    m, k, sgn = cheon_decomposition(n, r)
    if k == 0:
        return mu * m * m
    vk = ord_p(divpoly.psi(ctx, k), p)
    vrk = ord_p(divpoly.psi(ctx, r - k), p)
    return 4 * mu * m * m + sgn * 2 * (2 * (vk - vrk) + mu) * m + 2 * vk


@dataclass(frozen=True)
class TorsionVerification:
    order: int
    M: int
    skipped: bool
    results: list[TripleCheckResult]


def verify_torsion_case(ctx: PointContext, bound: int) -> TorsionVerification:
    """Ward's recurrence for beta at a torsion point with M(P) = 1.

    Every triple with largest index <= bound is checked (all qualify).  When
    M(P) != 1 nothing is claimed, and the check is skipped.
    """
    order = ctx.torsion_order()
    if order is None:
        raise PreconditionError("P is not a torsion point")
    M, _ = M_of(ctx)
    if M != 1:
        return TorsionVerification(order, M, True, [])
    return TorsionVerification(order, M, False, _check_beta_triples(ctx, bound, M))
