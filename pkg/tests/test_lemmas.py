"""Tests for the interval machinery and the index-1 sufficient conditions."""

import math
import random
from fractions import Fraction

import pytest

from zsindex import (
    CeilMismatch,
    HypothesisViolated,
    IntervalQ,
    InvariantViolated,
    NormalizedQuad,
    Pattern,
    PatternClass,
    SNotLargeEnough,
    WrongPattern,
    assumption_b,
    compute_k1,
    compute_s,
    coprime_in_interval,
    denormalize,
    index_of,
    interval_integers,
    lemma33_cond1,
    lemma33_cond2,
    lemma34_cond,
    lemma35_cond,
    lemma51_bound,
    omega_build,
    remark32_check,
    structure_params,
)


def test_interval_integers_examples():
    assert interval_integers(IntervalQ(Fraction(11, 4), Fraction(11, 3))) == [3]
    assert interval_integers(
        IntervalQ(Fraction(22, 5), Fraction(22, 4), hi_closed=False)
    ) == [5]
    assert interval_integers(
        IntervalQ(Fraction(7, 2), Fraction(4), lo_closed=False, hi_closed=False)
    ) == []


def test_interval_endpoint_flags():
    closed = IntervalQ(Fraction(3), Fraction(5))
    assert interval_integers(closed) == [3, 4, 5]
    assert interval_integers(IntervalQ(Fraction(3), Fraction(5), lo_closed=False)) == [4, 5]
    assert interval_integers(IntervalQ(Fraction(3), Fraction(5), hi_closed=False)) == [3, 4]


def test_interval_rejects_reversed():
    with pytest.raises(InvariantViolated):
        IntervalQ(Fraction(5), Fraction(3))


def test_coprime_in_interval():
    assert coprime_in_interval(IntervalQ(Fraction(11, 4), Fraction(11, 3)), 11) == 3
    assert coprime_in_interval(IntervalQ(Fraction(4), Fraction(6)), 60) is None
    assert coprime_in_interval(IntervalQ(Fraction(4), Fraction(7)), 60) == 7


def test_lemma33_cond1_example():
    out = lemma33_cond1(NormalizedQuad(11, 2, 3, 4))
    assert out.fired
    assert out.witness == (1, 3)
    # the witness satisfies the stated inequalities exactly
    k, m = out.witness
    assert Fraction(k * 11, 4) <= m <= Fraction(k * 11, 3)
    assert math.gcd(m, 11) == 1 and 1 <= k <= 3 and m * 2 < 11
    assert index_of(denormalize(NormalizedQuad(11, 2, 3, 4))).value == 1


def test_lemma33_cond2_example():
    out = lemma33_cond2(NormalizedQuad(11, 2, 3, 4))
    assert out.fired
    assert out.witness == (3,)
    # M = 3: |6| and |9| both exceed 11/2; M = 1 satisfies only one
    assert (2 * 6 > 11) and (2 * 9 > 11)
    assert (2 * 2 > 11, 2 * 3 > 11, 2 * 4 < 11).count(True) == 1


def test_lemma34_example():
    out = lemma34_cond(NormalizedQuad(11, 2, 3, 4))
    assert out.fired
    assert out.witness == (1, 3)
    assert 2 <= Fraction(1 * 11, 3)


def test_lemma35_needs_s_at_least_2():
    with pytest.raises(SNotLargeEnough):
        lemma35_cond(NormalizedQuad(11, 2, 3, 4))


def test_lemma35_fires():
    quad = NormalizedQuad(11, 2, 4, 5)
    assert compute_s(quad) == 2
    out = lemma35_cond(quad)
    assert out.fired
    t, m = out.witness
    s = 2
    assert Fraction((2 * s - 2 * t - 1) * 11, 2 * 4) <= m <= Fraction((s - t) * 11, 4)
    assert math.gcd(m, 11) == 1


def test_compute_s():
    assert compute_s(NormalizedQuad(21, 2, 9, 10)) == 4
    assert compute_s(NormalizedQuad(11, 2, 3, 4)) == 1


def test_compute_k1_example():
    quad = NormalizedQuad(11, 2, 4, 5)
    assert compute_k1(quad) == 2


def test_compute_k1_ceil_guard():
    with pytest.raises(CeilMismatch):
        compute_k1(NormalizedQuad(11, 2, 3, 4))


def test_compute_k1_range_property():
    # whenever defined, 2 <= k1 <= b
    rng = random.Random(23)
    checked = 0
    while checked < 150:
        n = rng.randrange(9, 400)
        c = rng.randrange(2, (n - 1) // 2 + 1)
        b = rng.randrange((c + 2) // 2, c + 1)
        a = c + 1 - b
        if not (2 <= a <= b and 2 * b < n):
            continue
        quad = NormalizedQuad(n, a, b, c)
        try:
            k1 = compute_k1(quad)
        except CeilMismatch:
            continue
        checked += 1
        assert 2 <= k1 <= b


def test_assumption_b():
    assert assumption_b(NormalizedQuad(11, 2, 3, 4)) is True  # s < 2, vacuous
    assert assumption_b(NormalizedQuad(11, 2, 4, 5)) is False  # lemma 35 fires


def test_structure_params():
    p = structure_params(NormalizedQuad(11, 2, 3, 4))
    assert (p.s, p.k1, p.assumption_b) == (1, None, True)
    p = structure_params(NormalizedQuad(11, 2, 4, 5))
    assert (p.s, p.k1, p.assumption_b) == (2, 2, False)


def test_omega_single_interval_when_s_is_2():
    quad = NormalizedQuad(13, 2, 5, 6)
    assert compute_s(quad) == 2
    omega = omega_build(quad)
    assert omega == [IntervalQ(Fraction(3 * 13, 10), Fraction(2 * 13, 5))]


def test_omega_lower_coefficient_variants():
    quad = NormalizedQuad(21, 2, 9, 10)  # s = 4, intervals for t = 0, 1
    default = omega_build(quad)
    alt = omega_build(quad, alt_lower=True)
    assert len(default) == len(alt) == 2
    # t = 0: both coefficients equal 2s - 1
    assert default[0] == alt[0] == IntervalQ(Fraction(7 * 21, 18), Fraction(4 * 21, 9))
    # t = 1: (2s - 2t - 1) = 5 versus (2s - t - 1) = 6
    assert default[1].lo == Fraction(5 * 21, 18)
    assert alt[1].lo == Fraction(6 * 21, 18)
    assert default[1].hi == alt[1].hi == Fraction(3 * 21, 9)


def test_lemma51_anchors():
    assert lemma51_bound(2, 4, 7, 9) == Fraction(240)
    assert lemma51_bound(2, 4, 6, 8) == Fraction(360)
    assert lemma51_bound(5, 8, 2, 2) == Fraction(60)


def test_lemma51_accepts_rationals():
    # u = 5/2: denom = 15 - 10 = 5, bound = (5/2)*4*6*10 / 5 = 120
    assert lemma51_bound(Fraction(5, 2), 4, 7, 9) == Fraction(120)


def test_lemma51_hypothesis_guard():
    with pytest.raises(HypothesisViolated):
        lemma51_bound(2, 4, 2, 9)
    with pytest.raises(HypothesisViolated):
        lemma51_bound(1, 1, 4, 2)  # u(k1-1) == s+1 boundary


def test_remark32_boundaries():
    a36 = NormalizedQuad(150, 36, 36, 71)
    a35 = NormalizedQuad(150, 35, 36, 70)
    a34 = NormalizedQuad(150, 34, 40, 73)
    assert remark32_check(a36, Pattern.A3) is True
    assert remark32_check(a35, Pattern.A3) is False
    assert remark32_check(a35, Pattern.A2) is True
    assert remark32_check(a34, Pattern.A4) is False
    assert remark32_check(a36, PatternClass(Pattern.A4, (5, 7, 11))) is True


def test_remark32_rejects_other_patterns():
    quad = NormalizedQuad(150, 36, 36, 71)
    with pytest.raises(WrongPattern):
        remark32_check(quad, Pattern.A1)
    with pytest.raises(WrongPattern):
        remark32_check(quad, Pattern.OTHER)


def test_conditions_sound_on_small_moduli():
    # exhaustive small-n sweep: the first collapse condition is sound for
    # every modulus; the remaining conditions are asserted only where the
    # modulus is coprime to 6 (they are known to misfire at some even n)
    for n in range(9, 61):
        coprime6 = math.gcd(n, 6) == 1
        for c in range(2, (n - 1) // 2 + 1):
            for b in range((c + 2) // 2, c):
                a = c + 1 - b
                if a < 2 or a > b:
                    continue
                quad = NormalizedQuad(n, a, b, c)
                value = index_of(denormalize(quad)).value
                if lemma33_cond1(quad).fired:
                    assert value == 1, (n, a, b, c, "33.1")
                if not coprime6:
                    continue
                fired = [lemma33_cond2(quad).fired, lemma34_cond(quad).fired]
                if compute_s(quad) >= 2:
                    fired.append(lemma35_cond(quad).fired)
                if any(fired):
                    assert value == 1, (n, a, b, c)
