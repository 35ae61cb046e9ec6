import random
from fractions import Fraction

import pytest

from qcode.counting import (
    IDENTITY_IDS,
    REQUIRED_BRANCHES,
    LemmaParams,
    analysis_pool,
    brute_count,
    get_field,
    lemma_oracle,
    lemma_sweep,
    predict_hyperplane_root_count,
    predict_root_count,
)
from qcode.cyclotomic import CycNum, gauss_sum_prime, pstar_fraction_power
from qcode.errors import MissingParamError, PreconditionViolatedError
from qcode.field import eta_bar
from qcode.quadform import QuadraticFunction, analyze, preset_cor1, preset_trace_square_minus


def _brute_roots(an, alpha):
    F = an.ctx
    return brute_count(F, lambda x: (an.f.evaluate(x)
                                     - F.trace(F.mul(alpha, x))) % F.p == 0)


# ---------------------------------------------------------------------------
# brute counting
# ---------------------------------------------------------------------------

def test_brute_count_whole_field():
    F = get_field(3, 3)
    assert brute_count(F, lambda x: True) == 27


def test_brute_count_hyperplane():
    F = get_field(3, 3)
    for beta in (1, 5, 20):
        assert brute_count(F, lambda x: F.trace(F.mul(beta, x)) == 0) == 9


def test_brute_count_form_zeros_matches_prediction():
    F = get_field(3, 2)
    an = analyze(preset_cor1(F, 1))
    assert brute_count(F, lambda x: an.f.evaluate(x) == 0) \
        == predict_root_count(an, 0)


# ---------------------------------------------------------------------------
# the two closed-form counters the code builder consumes
# ---------------------------------------------------------------------------

def test_root_count_gf9_nonzero_special_value():
    F = get_field(3, 2)
    an = analyze(preset_cor1(F, 1))
    assert predict_root_count(an, 1) == 2 == _brute_roots(an, 1)


def test_root_count_outside_image():
    F = get_field(3, 4)
    an = analyze(preset_trace_square_minus(F, 1))
    alpha = next(a for a in F.nonzero_elements() if not an.in_image(a))
    assert predict_root_count(an, alpha) == 27 == _brute_roots(an, alpha)


def test_root_count_odd_rank_zero_special_value():
    F = get_field(3, 3)
    an = analyze(preset_cor1(F, 1))  # f(x_alpha) = Tr(alpha^2)/4 = 0 for all
    assert predict_root_count(an, 1) == 9 == _brute_roots(an, 1)


def test_root_count_matches_brute_randomized():
    rng = random.Random(17)
    for p, m in [(3, 3), (3, 4), (5, 2)]:
        pool = analysis_pool(p, m, rng, extra=3)
        for an in pool:
            for _ in range(6):
                alpha = rng.randrange(an.ctx.q)
                assert predict_root_count(an, alpha) == _brute_roots(an, alpha)


def test_hyperplane_count_matches_brute_randomized():
    rng = random.Random(23)
    for p, m in [(3, 3), (3, 4), (5, 2)]:
        pool = analysis_pool(p, m, rng, extra=3)
        F = get_field(p, m)
        for an in pool:
            for _ in range(8):
                alpha = rng.randrange(F.q)
                beta = rng.randrange(1, F.q)
                want = brute_count(
                    F, lambda x: (an.f.evaluate(x)
                                  - F.trace(F.mul(alpha, x))) % F.p == 0
                    and F.trace(F.mul(beta, x)) == 0)
                assert predict_hyperplane_root_count(an, alpha, beta) == want


def test_hyperplane_count_requires_nonzero_beta():
    F = get_field(3, 3)
    an = analyze(preset_cor1(F, 1))
    with pytest.raises(PreconditionViolatedError):
        predict_hyperplane_root_count(an, 1, 0)


# ---------------------------------------------------------------------------
# registry spot checks
# ---------------------------------------------------------------------------

def test_identity_5_full_sum_value():
    F = get_field(3, 2)
    an = analyze(preset_cor1(F, 1))
    results = lemma_oracle(5, LemmaParams(analysis=an, beta=0))
    full = next(r for r in results if r.branch == "I")
    assert full.equal
    assert full.closed == CycNum.from_rational(3, 3).to_text()


def test_identity_6_degenerate_value():
    res, = lemma_oracle(6, LemmaParams(p=3, abc=(1, 0, 0)))
    assert res.branch == "degenerate" and res.equal
    assert res.closed == gauss_sum_prime(3).scale(3).to_text()


def test_identity_7_level_count_gf9():
    F = get_field(3, 2)
    an = analyze(preset_cor1(F, 1))
    res, = lemma_oracle(7, LemmaParams(analysis=an, t=1))
    assert res.branch == "even" and res.equal and res.brute == "2"


def test_identity_8_even_rank_uses_derived_variant():
    F = get_field(3, 4)
    an = analyze(preset_cor1(F, 1))  # rank 4
    alpha = next(a for a in F.nonzero_elements() if an.f_at_xb(a) == 0)
    res, = lemma_oracle(8, LemmaParams(analysis=an, alpha=alpha, t=1))
    assert res.branch == "even_rank_derived_variant"
    assert res.equal and "irrational" in res.note


def test_identity_9_odd_nonzero_notes_printed_off_by_one():
    F = get_field(3, 3)
    an = analyze(preset_cor1(F, F.generator))
    alpha = next(a for a in F.nonzero_elements()
                 if an.f_at_xb(a) not in (None, 0))
    res, = lemma_oracle(9, LemmaParams(analysis=an, alpha=alpha))
    assert res.branch == "odd_nonzero" and res.equal
    assert "spurious +1" in res.note
    # the printed variant really is off by exactly one
    assert int(res.closed) + 1 == _brute_roots(an, alpha) + 1


def test_identity_13_records_companion_map_reading():
    F = get_field(3, 4)
    an = analyze(preset_trace_square_minus(F, 1))
    alpha = next(a for a in F.nonzero_elements() if not an.in_image(a))
    res, = lemma_oracle(13, LemmaParams(analysis=an, alpha=alpha,
                                        beta=F.scalar_mul(2, alpha)))
    assert res.branch == "II:in_union" and res.equal
    assert "L(x')" in res.note


def test_identity_18_flags_printed_e_sign():
    # find an instance where the two sign readings differ; the plus sign
    # must match and the note must record the failing minus value
    rng = random.Random(9)
    pool = analysis_pool(3, 4, rng) + analysis_pool(5, 2, rng)
    seen_diff = False
    for an in pool:
        if an.rank % 2 == 0:
            continue
        F = an.ctx
        for w in range(F.q):
            alpha = F.neg(F.scalar_mul(2, an.l_apply(w)))
            if alpha == 0 or an.f_at_xb(alpha) == 0:
                continue
            results = lemma_oracle(18, LemmaParams(analysis=an, alpha=alpha))
            assert all(r.equal for r in results)
            if any(r.note and "minus sign" in r.note for r in results):
                seen_diff = True
                break
        if seen_diff:
            break
    assert seen_diff


def test_identity_19_partition_of_offplane_counts():
    F = get_field(3, 4)
    an = analyze(preset_trace_square_minus(F, 1))  # rank 3
    alpha = next(a for a in F.nonzero_elements()
                 if an.in_image(a) and an.f_at_xb(a) == 0)
    results = lemma_oracle(19, LemmaParams(analysis=an, alpha=alpha))
    assert all(r.equal for r in results)
    got = {r.branch: int(r.brute) for r in results}
    # the four counts plus {f = 0} and {f != 0, Tr != 0 ...} tile GF(q)
    zeros = brute_count(F, lambda x: an.f.evaluate(x) == 0)
    total = sum(got.values()) + zeros
    assert total == F.q


def test_missing_and_invalid_params():
    F = get_field(3, 3)
    an = analyze(preset_cor1(F, 1))
    with pytest.raises(MissingParamError):
        lemma_oracle(7, LemmaParams(analysis=an))
    with pytest.raises(MissingParamError):
        lemma_oracle(12, LemmaParams(analysis=an))
    with pytest.raises(PreconditionViolatedError):
        lemma_oracle(7, LemmaParams(analysis=an, t=0))
    with pytest.raises(PreconditionViolatedError):
        lemma_oracle(16, LemmaParams(analysis=an, alpha=1))  # f(x_a) = 0 here


# ---------------------------------------------------------------------------
# cross-identity consistency ties
# ---------------------------------------------------------------------------

def test_level_counts_tile_the_field():
    # counts of f = t over all t, via identity 7 closed forms plus the
    # zero-level count from identity 9 at alpha = 0
    rng = random.Random(31)
    for p, m in [(3, 3), (5, 2)]:
        F = get_field(p, m)
        for _ in range(4):
            f = QuadraticFunction(F, [rng.randrange(F.q) for _ in range(m)])
            an = analyze(f)
            if an.rank == 0:
                continue
            total = predict_root_count(an, 0)
            for t in range(1, p):
                res, = lemma_oracle(7, LemmaParams(analysis=an, t=t))
                total += int(res.closed)
            assert total == F.q


def test_deflated_level_counts_tile_the_field():
    F = get_field(3, 4)
    an = analyze(preset_cor1(F, 1))
    alpha = next(a for a in F.nonzero_elements()
                 if an.f_at_xb(a) not in (None, 0))
    total = 0
    for t in range(F.p):
        results = lemma_oracle(17, LemmaParams(analysis=an, alpha=alpha, t=t))
        level = next(r for r in results if r.branch != "gsum")
        assert level.equal
        total += int(level.closed)
    assert total == F.q


def test_even_partition_counts_tile_the_field():
    F = get_field(3, 4)
    an = analyze(preset_cor1(F, 1))
    alpha = next(a for a in F.nonzero_elements()
                 if an.f_at_xb(a) not in (None, 0))
    results = lemma_oracle(18, LemmaParams(analysis=an, alpha=alpha))
    assert sum(int(r.closed) for r in results) == F.q


def test_odd_partition_counts_tile_the_field():
    # J3 + J4 + J5 + J2 + J6 partitions GF(q) once J2 carries its E != 0
    # restriction (J1 duplicates J5 and stays out of the sum)
    an, = [a for a in [analyze(preset_trace_square_minus(get_field(3, 4), 1))]]
    F = an.ctx
    assert an.rank % 2 == 1
    alpha = next(a for a in F.nonzero_elements()
                 if an.in_image(a) and an.f_at_xb(a) not in (None, 0))
    results = lemma_oracle(18, LemmaParams(analysis=an, alpha=alpha))
    got = {r.branch: int(r.closed) for r in results}
    total = got["J2"] + got["J3"] + got["J4"] + got["J5"] + got["J6"]
    assert total == F.q
    assert got["J1"] == got["J5"]


# ---------------------------------------------------------------------------
# sweep plumbing
# ---------------------------------------------------------------------------

def test_sweep_is_deterministic():
    a = lemma_sweep([(3, 3)], trials=6, seed=77, lemma_ids=(9, 11))
    b = lemma_sweep([(3, 3)], trials=6, seed=77, lemma_ids=(9, 11))
    assert a == b


def test_sweep_covers_required_branches():
    rep = lemma_sweep([(3, 3), (3, 4)], trials=10, seed=5, lemma_ids=(9,))
    branches = rep["lemmas"]["9"]["branches"]
    for b in REQUIRED_BRANCHES[9]:
        assert branches.get(b, 0) >= 3
    assert rep["all_equal"]


def test_identity_ids_are_stable():
    assert IDENTITY_IDS == (5, 6, 7, 8, 9, 10, 11, 13, 14, 15, 16, 17, 18, 19)
