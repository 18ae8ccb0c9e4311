"""Sufficient conditions certifying index 1 for normalized quads.

Each condition searches for a coprime multiplier inside an exact
rational interval derived from the normal-form parameters (a, b, c).
All arithmetic is exact: intervals carry Fractions, and the searches
use integer ceil/floor divisions equivalent to the rational bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .classify import NormalizedQuad, Pattern, PatternClass
from .errors import (
    CeilMismatch,
    HypothesisViolated,
    InvariantViolated,
    SNotLargeEnough,
    WrongPattern,
)


@dataclass(frozen=True)
class IntervalQ:
    """A rational interval with independently open/closed endpoints."""

    lo: Fraction
    hi: Fraction
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise InvariantViolated(f"empty bounds: {self.lo} > {self.hi}")

    def integer_bounds(self) -> tuple[int, int]:
        """Smallest and largest integers inside; empty when lo > hi."""
        lo_int = -((-self.lo.numerator) // self.lo.denominator)
        if not self.lo_closed and self.lo == lo_int:
            lo_int += 1
        hi_int = self.hi.numerator // self.hi.denominator
        if not self.hi_closed and self.hi == hi_int:
            hi_int -= 1
        return lo_int, hi_int


@dataclass(frozen=True)
class LemmaOutcome:
    """Result of one condition check, with the witness when it fired."""

    lemma_id: str
    fired: bool
    witness: tuple[int, ...] | None = None
    detail: str = ""


@dataclass(frozen=True)
class StructureParams:
    """Derived quantities s = b//a, k1 (None when undefined), and the
    no-coprime-multiplier assumption used by the structural probes."""

    s: int
    k1: int | None
    assumption_b: bool


def interval_integers(interval: IntervalQ) -> list[int]:
    """All integers inside the interval, honoring open endpoints."""
    lo_int, hi_int = interval.integer_bounds()
    return list(range(lo_int, hi_int + 1))


def coprime_in_interval(interval: IntervalQ, n: int) -> int | None:
    """Smallest integer in the interval coprime to n, or None."""
    lo_int, hi_int = interval.integer_bounds()
    for m in range(lo_int, hi_int + 1):
        if math.gcd(m, n) == 1:
            return m
    return None


def _ceil_div(p: int, q: int) -> int:
    return -((-p) // q)


def lemma33_cond1(quad: NormalizedQuad) -> LemmaOutcome:
    """Certificate: coprime m in [kn/c, kn/b] with 1 <= k <= b and ma < n.

    Such an m makes the norm under m collapse to exactly n.  Scans k
    ascending and m ascending, so the witness is the first hit.
    """
    n, a, b, c = quad.n, quad.a, quad.b, quad.c
    m_cap = (n - 1) // a
    for k in range(1, b + 1):
        lo = _ceil_div(k * n, c)
        hi = min(k * n // b, m_cap)
        for m in range(lo, hi + 1):
            if math.gcd(m, n) == 1:
                return LemmaOutcome("33.1", True, (k, m), f"k={k}, m={m}")
    return LemmaOutcome("33.1", False)


def lemma33_cond2(quad: NormalizedQuad) -> LemmaOutcome:
    """Certificate: unit M <= n/2 with two of |Ma|, |Mb| above n/2 or
    |Mc| below n/2 (at least two of the three inequalities)."""
    n, a, b, c = quad.n, quad.a, quad.b, quad.c
    for big_m in range(1, n // 2 + 1):
        if math.gcd(big_m, n) != 1:
            continue
        ra = big_m * a % n
        rb = big_m * b % n
        rc = big_m * c % n
        hits = (2 * ra > n) + (2 * rb > n) + (2 * rc < n)
        if hits >= 2:
            return LemmaOutcome("33.2", True, (big_m,), f"M={big_m}")
    return LemmaOutcome("33.2", False)


def lemma34_cond(quad: NormalizedQuad) -> LemmaOutcome:
    """Transcribed as stated: coprime m in [kn/c, kn/b] with 1 <= k <= b
    and a <= kn/b.

    The final clause is suspected of being misstated at the source; the
    sweeps therefore report exceptions to this condition as findings
    rather than failures.
    """
    n, a, b, c = quad.n, quad.a, quad.b, quad.c
    for k in range(1, b + 1):
        if a * b > k * n:
            continue
        lo = _ceil_div(k * n, c)
        hi = k * n // b
        for m in range(lo, hi + 1):
            if math.gcd(m, n) == 1:
                return LemmaOutcome("34", True, (k, m), f"k={k}, m={m}")
    return LemmaOutcome("34", False)


def compute_s(quad: NormalizedQuad) -> int:
    """The quotient s = b // a (always >= 1 in normal form)."""
    return quad.b // quad.a


def lemma35_cond(quad: NormalizedQuad) -> LemmaOutcome:
    """Certificate: coprime integer in [(2s-2t-1)n/2b, (s-t)n/b] for some
    t in [0, floor(s/2) - 1]; requires s >= 2."""
    n, b = quad.n, quad.b
    s = compute_s(quad)
    if s < 2:
        raise SNotLargeEnough(f"s = {s} < 2 for (a, b) = ({quad.a}, {quad.b})")
    for t in range(s // 2):
        lo = _ceil_div((2 * s - 2 * t - 1) * n, 2 * b)
        hi = (s - t) * n // b
        for m in range(lo, hi + 1):
            if math.gcd(m, n) == 1:
                return LemmaOutcome("35", True, (t, m), f"t={t}, m={m}")
    return LemmaOutcome("35", False)


def assumption_b(quad: NormalizedQuad) -> bool:
    """True when no admissible t yields a coprime integer in the t-th
    interval of omega_build; vacuously true when s < 2."""
    s = compute_s(quad)
    if s < 2:
        return True
    return not lemma35_cond(quad).fired


def omega_build(quad: NormalizedQuad, alt_lower: bool = False) -> list[IntervalQ]:
    """The intervals [(2s-2t-1)n/2b, (s-t)n/b] for t in [0, floor(s/2)-1].

    With alt_lower the lower endpoints use the coefficient (2s-t-1)
    instead; both variants are exact and closed on both ends.
    """
    n, b = quad.n, quad.b
    s = compute_s(quad)
    out = []
    for t in range(s // 2):
        coeff = (2 * s - t - 1) if alt_lower else (2 * s - 2 * t - 1)
        out.append(
            IntervalQ(Fraction(coeff * n, 2 * b), Fraction((s - t) * n, b))
        )
    return out


def compute_k1(quad: NormalizedQuad) -> int:
    """Largest k <= b with ceil((k-1)n/c) = ceil((k-1)n/b) and an integer
    in [kn/c, kn/b); defined only when ceil(n/c) = ceil(n/b)."""
    n, b, c = quad.n, quad.b, quad.c
    if _ceil_div(n, c) != _ceil_div(n, b):
        raise CeilMismatch(
            f"ceil(n/c) = {_ceil_div(n, c)} != ceil(n/b) = {_ceil_div(n, b)}"
        )
    for k in range(b, 0, -1):
        if _ceil_div((k - 1) * n, c) != _ceil_div((k - 1) * n, b):
            continue
        lo = _ceil_div(k * n, c)
        hi = _ceil_div(k * n, b) - 1
        if lo <= hi:
            return k
    raise InvariantViolated(f"no admissible k1 for (n, b, c) = ({n}, {b}, {c})")


def structure_params(quad: NormalizedQuad) -> StructureParams:
    """Bundle s, k1 (None when the ceil guard fails) and assumption_b."""
    try:
        k1: int | None = compute_k1(quad)
    except CeilMismatch:
        k1 = None
    return StructureParams(
        s=compute_s(quad), k1=k1, assumption_b=assumption_b(quad)
    )


def lemma51_bound(
    u: Fraction | int, v: Fraction | int, k1: int, s: int
) -> Fraction:
    """Exact bound u*v*(k1-1)*(s+1) / (u*(k1-1) - (s+1)).

    Requires u*(k1-1) > s+1; anything else is outside the hypothesis.
    """
    u = Fraction(u)
    v = Fraction(v)
    denom = u * (k1 - 1) - (s + 1)
    if denom <= 0:
        raise HypothesisViolated(
            f"u*(k1-1) = {u * (k1 - 1)} must exceed s+1 = {s + 1}"
        )
    return u * v * (k1 - 1) * (s + 1) / denom


def remark32_check(quad: NormalizedQuad, cls: Pattern | PatternClass) -> bool:
    """Lower bound on a for reduced quads: a >= 36 under the all-units
    pattern, a >= 35 under the two mixed patterns with a unit element."""
    pattern = cls.pattern if isinstance(cls, PatternClass) else cls
    if pattern == Pattern.A3:
        return quad.a >= 36
    if pattern in (Pattern.A2, Pattern.A4):
        return quad.a >= 35
    raise WrongPattern(f"bound applies to A2/A3/A4 only, got {pattern.value}")
