"""Gcd patterns and the normal form for minimal zero-sum quads.

A quad with a unit element can be rescaled so its sorted residues read
[1, c, n-b, n-a] with 1 + c = a + b, 2 <= a <= b, 1 < c and b, c < n/2
(sum 2n).  The gcd multiset of a quad over a squarefree n = p1*p2*p3
falls into four named patterns; everything else is Other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from itertools import permutations

from .errors import (
    InvariantViolated,
    NoCoprimeElement,
    PreconditionViolated,
)
from .sequences import GroupSequence, is_minimal_zero_sum


class Pattern(Enum):
    A1 = "A1"
    A2 = "A2"
    A3 = "A3"
    A4 = "A4"
    OTHER = "Other"


@dataclass(frozen=True)
class PatternClass:
    """A matched pattern plus the prime-role assignment that matched.

    prime_roles lists which prime of n plays each of the three named
    roles, in role order; it is None for Other.
    """

    pattern: Pattern
    prime_roles: tuple[int, int, int] | None = None


@dataclass(frozen=True)
class GcdProfile:
    """Per-element gcds with n, aligned with the sorted sequence."""

    gcds: tuple[int, ...]
    active_primes: tuple[frozenset[int], ...]
    global_gcd: int


@dataclass(frozen=True)
class NormalizedQuad:
    """Parameters (a, b, c) of a quad in normal form over Z_n.

    The denormalized sequence is [1, c, n-b, n-a]; provenance records
    the unit multiplier and whether the orbit was reflected (x -> n-x)
    before scaling.
    """

    n: int
    a: int
    b: int
    c: int
    unit: int = 1
    reflected: bool = False

    def __post_init__(self) -> None:
        n, a, b, c = self.n, self.a, self.b, self.c
        if 1 + c != a + b:
            raise InvariantViolated("normal form requires 1 + c = a + b")
        if not 2 <= a <= b:
            raise InvariantViolated("normal form requires 2 <= a <= b")
        if not (2 * b < n and 1 < c and 2 * c < n):
            raise InvariantViolated("normal form requires b, c in (1, n/2)")


def denormalize(quad: NormalizedQuad) -> GroupSequence:
    """The sorted quad [1, c, n-b, n-a] as a sequence over Z_n."""
    n = quad.n
    return GroupSequence.of(n, (1, quad.c, n - quad.b, n - quad.a))


def gcd_profile(seq: GroupSequence) -> GcdProfile:
    n = seq.n
    gcds = tuple(math.gcd(x, n) for x in seq.elems)
    primes = seq.modulus.prime_divisors
    active = tuple(frozenset(p for p in primes if g % p == 0) for g in gcds)
    global_gcd = math.gcd(*gcds)
    return GcdProfile(gcds=gcds, active_primes=active, global_gcd=global_gcd)


def _shape_of(n: int, sorted_elems: tuple[int, ...]) -> tuple[int, int, int] | None:
    """(a, b, c) if the sorted residues match the normal form, else None."""
    e1, e2, e3, e4 = sorted_elems
    if e1 != 1 or e2 <= 1 or 2 * e2 >= n or 2 * e3 <= n or e4 >= n - 1:
        return None
    if e1 + e2 + e3 + e4 != 2 * n:
        return None
    return n - e4, n - e3, e2


def normalize_quad(seq: GroupSequence) -> NormalizedQuad | None:
    """Search the orbit of a quad for a normal form.

    Candidate multipliers are inverses of unit elements, applied to the
    quad itself and then to its reflection; the first match wins (the
    unreflected candidates are scanned first, each group by increasing
    t).  Returns None when no orbit member has the normal-form shape.
    """
    n = seq.n
    if seq.k != 4 or not is_minimal_zero_sum(seq):
        raise PreconditionViolated("normalization needs a minimal zero-sum quad")
    mask = seq.modulus.unit_mask()
    inv = seq.modulus.inverse_table()
    if not any(mask[x] for x in seq.elems):
        raise NoCoprimeElement(f"no element of {seq.elems} is a unit mod {n}")
    for reflected in (False, True):
        elems = seq.elems if not reflected else tuple(n - x for x in seq.elems)
        for t in sorted({inv[x] for x in elems if mask[x]}):
            cand = tuple(sorted(t * x % n for x in elems))
            shape = _shape_of(n, cand)
            if shape is not None:
                a, b, c = shape
                return NormalizedQuad(n=n, a=a, b=b, c=c, unit=t, reflected=reflected)
    return None


def _match_a1(gcd_multiset: list[int], primes: tuple[int, ...]):
    for q1, q2, q3 in permutations(primes):
        if gcd_multiset == sorted((q1 * q2, q2, q1 * q3, q3)):
            return q1, q2, q3
    return None


def _match_a2(gcd_multiset: list[int], primes: tuple[int, ...]):
    for q1, q2, q3 in permutations(primes):
        if gcd_multiset == sorted((1, q1, q2, q1 * q2)):
            return q1, q2, q3
    return None


def _match_a4(gcd_multiset: list[int], primes: tuple[int, ...]):
    p1, p2, p3 = primes
    if gcd_multiset == sorted((1, p1 * p2, p1 * p3, p2 * p3)):
        return p1, p2, p3
    return None


def classify_pattern(seq: GroupSequence) -> PatternClass:
    """Match a quad's gcd multiset against the four named patterns.

    Requires a minimal zero-sum quad with global_gcd 1.  Returns Other
    unless n is squarefree with exactly three prime factors.  The
    all-units case additionally needs the normal form to exist and its
    shifted entries c+1, b-1, a-1 to carry the three pairwise prime
    products as gcds with n.
    """
    if seq.k != 4 or not is_minimal_zero_sum(seq):
        raise PreconditionViolated("classification needs a minimal zero-sum quad")
    profile = gcd_profile(seq)
    if profile.global_gcd != 1:
        raise PreconditionViolated("classification needs global_gcd = 1")
    mod = seq.modulus
    primes = mod.prime_divisors
    if len(primes) != 3 or not mod.is_squarefree:
        return PatternClass(Pattern.OTHER)
    multiset = sorted(profile.gcds)
    if multiset == [1, 1, 1, 1]:
        quad = normalize_quad(seq)
        if quad is None:
            return PatternClass(Pattern.OTHER)
        return _classify_all_units(quad, primes)
    if multiset[0] == 1:
        roles = _match_a2(multiset, primes)
        if roles is not None:
            return PatternClass(Pattern.A2, roles)
        roles = _match_a4(multiset, primes)
        if roles is not None:
            return PatternClass(Pattern.A4, roles)
        return PatternClass(Pattern.OTHER)
    roles = _match_a1(multiset, primes)
    if roles is not None:
        return PatternClass(Pattern.A1, roles)
    return PatternClass(Pattern.OTHER)


def _classify_all_units(quad: NormalizedQuad, primes: tuple[int, ...]) -> PatternClass:
    n = quad.n
    p1, p2, p3 = primes
    products = sorted((p1 * p2, p1 * p3, p2 * p3))
    vals = (
        math.gcd(quad.c + 1, n),
        math.gcd(quad.b - 1, n),
        math.gcd(quad.a - 1, n),
    )
    if sorted(vals) != products:
        return PatternClass(Pattern.OTHER)
    role1 = math.gcd(vals[0], vals[1])
    role2 = math.gcd(vals[0], vals[2])
    role3 = math.gcd(vals[1], vals[2])
    return PatternClass(Pattern.A3, (role1, role2, role3))
