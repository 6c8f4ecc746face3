from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ellipdiv import Point, make_context, make_curve
from ellipdiv.errors import (
    IndexOutOfRange,
    InvalidSeed,
    NotApplicable,
    PreconditionError,
    TorsionPoint,
)
from ellipdiv.recurrence import (
    check_g_multiplicative_law,
    check_g_valuation_law,
    check_ward_triple,
    cheon_decomposition,
    cheon_g,
    edsa_generate,
    is_qualifying,
    summarize,
    triples,
    verify_main_theorem,
    verify_torsion_case,
)
from ellipdiv.reduction import M_of, prime_factors, r_of
from ellipdiv.sequences import beta, g, g_valuation, h

from conftest import build


def _unrolled(seeds, N):
    # plain loop over the defining instances, written independently
    h_ = {0: 0, 1: seeds[0], 2: seeds[1], 3: seeds[2], 4: seeds[3]}
    for n in range(5, N + 1):
        if n % 2:
            k = (n - 1) // 2
            h_[n] = h_[k + 2] * h_[k] ** 3 - h_[k - 1] * h_[k + 1] ** 3
        else:
            k = n // 2
            h_[n] = Fraction(h_[k] * (h_[k + 2] * h_[k - 1] ** 2 - h_[k - 2] * h_[k + 1] ** 2),
                             h_[2])
    return [h_[i] for i in range(N + 1)]


def test_edsa_generate_examples(ctx_a):
    assert edsa_generate(1, 2, -1, -36, 5)[-1] == -287 == beta(ctx_a, 5)
    assert edsa_generate(1, 1, 1, 1, 8) == [0, 1, 1, 1, 1, 0, -1, -1, -1]
    assert edsa_generate(1, 1, 1, 1, 8) == _unrolled((1, 1, 1, 1), 8)
    assert edsa_generate(1, 2, -1, -36, 2) == [0, 1, 2]
    assert edsa_generate(1, 1, -1, 1, 4) == [0, 1, 1, -1, 1]


def test_edsa_generate_rejects_bad_seeds():
    with pytest.raises(InvalidSeed):
        edsa_generate(1, 2, -1, -35, 5)
    with pytest.raises(InvalidSeed):
        edsa_generate(2, 2, -1, -36, 5)
    with pytest.raises(InvalidSeed):
        edsa_generate(1, 0, 1, 0, 8)


@settings(max_examples=200, deadline=None)
@given(st.integers(-6, 6).filter(bool), st.integers(-9, 9), st.integers(-4, 4))
def test_edsa_generate_stays_integral(h2, h3, q):
    # h2 | h4 is enough for every exact step; NonIntegralStep is never hit
    seeds = (1, h2, h3, q * h2)
    out = edsa_generate(*seeds, 14)
    assert out == _unrolled(seeds, 14)
    assert all(isinstance(t, int) for t in out)


def test_edsa_generate_reproduces_h(corpus_ctx):
    ctx = corpus_ctx
    hs = [h(ctx, n) for n in range(41)]
    assert edsa_generate(1, hs[2], hs[3], hs[4], 40) == hs


def test_ward_triple_on_identity_sequence():
    seq = list(range(40))  # a_n = n satisfies the recurrence
    for m, n, r in triples(19):
        assert check_ward_triple(seq, m, n, r) == 0


def test_ward_triple_example_failure(ctx_b):
    bs = [beta(ctx_b, n) for n in range(12)]
    assert check_ward_triple(bs, 3, 2, 1) == 3
    # same triple in another order
    assert check_ward_triple(bs, 1, 3, 2) == 3
    assert bs[5] * bs[1] ** 3 != bs[4] * bs[2] ** 3 - bs[1] * bs[3] ** 3


def test_ward_triple_equal_indices(ctx_b):
    bs = [beta(ctx_b, n) for n in range(30)]
    for n in range(1, 14):
        for r in range(1, n + 1):
            assert check_ward_triple(bs, n, n, r) == 0


def test_ward_triple_index_range():
    with pytest.raises(IndexOutOfRange):
        check_ward_triple([0, 1, 2, 3], 3, 2, 1)


def test_ward_triple_accepts_callables(ctx_b):
    assert check_ward_triple(lambda i: beta(ctx_b, i), 3, 2, 1) == 3


def test_h_sequence_satisfies_ward(corpus_ctx):
    hs = [h(corpus_ctx, n) for n in range(31)]
    for m, n, r in triples(29):
        if m + n <= 30:
            assert check_ward_triple(hs, m, n, r) == 0


def test_main_theorem_examples(ctx_a, ctx_b):
    res = {(t.m, t.n, t.r): t for t in verify_main_theorem(ctx_b, 12)}
    assert res[6, 3, 1].qualifying and res[6, 3, 1].defect == 0
    assert not res[6, 4, 2].qualifying and res[6, 4, 2].defect == -1536
    all_a = verify_main_theorem(ctx_a, 10)
    assert all(t.qualifying and t.defect == 0 for t in all_a)


def test_main_theorem_exhaustive(corpus_ctx):
    results = verify_main_theorem(corpus_ctx, 14)
    assert len(results) == 560
    assert summarize(results)["qualifying_violations"] == 0


def test_sharpness(ctx_b):
    results = verify_main_theorem(ctx_b, 12)
    # with 1 or 2 in place of M(P) = 3, (6,4,2) would qualify
    t = next(t for t in results if (t.m, t.n, t.r) == (6, 4, 2))
    assert is_qualifying((6, 4, 2), 1) and is_qualifying((6, 4, 2), 2)
    assert t.defect != 0


def test_main_theorem_rejects_torsion(ctx_torsion):
    with pytest.raises(TorsionPoint):
        verify_main_theorem(ctx_torsion, 5)


def test_valuation_law_examples(ctx_b):
    assert check_g_valuation_law(ctx_b, 2, 1, 2) == 12 - 8 == 4
    assert check_g_valuation_law(ctx_b, 2, 3, 2) == 0
    for m, n in [(1, 2), (2, 5), (4, 4)]:
        assert check_g_valuation_law(ctx_b, 61, m, n) == 0


def test_valuation_law_precondition():
    ctx = build("x3+x+1@2P")
    with pytest.raises(PreconditionError):
        check_g_valuation_law(ctx, 2, 1, 1)


def test_valuation_law_holds_for_multiples_of_r(corpus_ctx):
    ctx = corpus_ctx
    for p in prime_factors(ctx.curve.discriminant):
        if ctx.v % p == 0:
            continue
        r = r_of(ctx, p)
        for m in range(r, 16, r):
            for n in range(0, 16):
                assert check_g_valuation_law(ctx, p, m, n) == 0


def test_multiplicative_law_examples(ctx_b):
    assert check_g_multiplicative_law(ctx_b, 3, 1).L == 1
    assert check_g_multiplicative_law(ctx_b, 1, 2).L == Fraction(4096, 256) == 16
    for k in range(0, 8):
        assert check_g_multiplicative_law(ctx_b, 0, k).L == 1


def test_multiplicative_law_for_multiples_of_M(corpus_ctx):
    M, _ = M_of(corpus_ctx)
    for m in range(M, 16, M):
        for n in range(0, 16):
            assert check_g_multiplicative_law(corpus_ctx, m, n).L == 1


def test_cheon_examples(ctx_b):
    assert cheon_g(ctx_b, 2, 3) == 12
    assert cheon_g(ctx_b, 2, 2) == 4
    assert cheon_g(ctx_b, 2, 6) == 48 == g_valuation(ctx_b, 6, 2)


def test_cheon_not_applicable(ctx_b):
    with pytest.raises(NotApplicable):
        cheon_g(ctx_b, 61, 4)


def test_cheon_matches_valuation(corpus_ctx):
    ctx = corpus_ctx
    checked = 0
    for p in prime_factors(ctx.curve.discriminant):
        if r_of(ctx, p) > 1 and ctx.v % p:
            assert [cheon_g(ctx, p, n) for n in range(1, 21)] == \
                [g_valuation(ctx, n, p) for n in range(1, 21)]
            checked += 1
    assert checked or M_of(ctx)[0] == 1


@given(st.integers(1, 500), st.integers(2, 12))
def test_cheon_decomposition_reconstructs(n, r):
    m, k, sgn = cheon_decomposition(n, r)
    if k == 0:
        assert m * r == n
    else:
        assert 1 <= k < r and 2 * m * r + sgn * k == n and m >= 0


def test_torsion_case(ctx_torsion):
    res = verify_torsion_case(ctx_torsion, 14)
    assert res.order == 5 and res.M == 1 and not res.skipped
    in_range = [t for t in res.results if t.m + t.n <= 15]
    assert in_range and all(t.defect == 0 for t in in_range)
    # triples that hit an identity index
    hits = [t for t in res.results if any(i % 5 == 0 for i in (t.m + t.n, t.m - t.n, t.r))]
    assert hits and all(t.defect == 0 for t in hits)


def test_torsion_case_skips_when_M_is_not_one():
    ctx = make_context(make_curve(0, 0, 0, 0, 1), Point(2, 3))
    res = verify_torsion_case(ctx, 8)
    assert res.order == 6 and res.M == 6 and res.skipped and res.results == []


def test_torsion_case_rejects_non_torsion(ctx_b):
    with pytest.raises(PreconditionError):
        verify_torsion_case(ctx_b, 5)


def test_g_is_one_at_torsion_point_with_M_one(ctx_torsion):
    assert all(g(ctx_torsion, n) == 1 for n in range(30))


@settings(max_examples=60, deadline=None)
@given(st.integers(-5, 5).filter(bool), st.integers(-7, 7), st.integers(-3, 3))
def test_generated_sequences_satisfy_general_ward(h2, h3, q):
    # the generator only uses the duplication instances; the general form follows
    seq = edsa_generate(1, h2, h3, q * h2, 24)
    for m, n, r in triples(23):
        if m + n <= 24:
            assert check_ward_triple(seq, m, n, r) == 0
