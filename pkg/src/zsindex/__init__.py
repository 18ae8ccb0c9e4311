"""Exact index computations for zero-sum sequences over finite cyclic
groups: minimality and reducedness tests, gcd-pattern classification,
sufficient conditions for index 1, and exhaustive verification against
a brute-force oracle."""

__version__ = "0.1.0"

from .classify import (
    GcdProfile,
    NormalizedQuad,
    Pattern,
    PatternClass,
    classify_pattern,
    denormalize,
    gcd_profile,
    normalize_quad,
)
from .errors import (
    CacheConfigMismatch,
    CeilMismatch,
    HypothesisViolated,
    InvariantViolated,
    LengthTooLarge,
    NoCoprimeElement,
    NotAPrimeDivisor,
    NotAUnit,
    NotMinimal,
    PreconditionViolated,
    SNotLargeEnough,
    UsageError,
    WrongPattern,
    ZsIndexError,
)
from .lemmas import (
    IntervalQ,
    LemmaOutcome,
    StructureParams,
    assumption_b,
    compute_k1,
    compute_s,
    coprime_in_interval,
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
from .sequences import (
    GroupSequence,
    IndexResult,
    canonical_rep,
    index_of,
    is_minimal_zero_sum,
    is_reduced,
    is_zero_sum,
    scale_seq,
    seq_norm,
)
from .verifier import (
    Counterexample,
    LemmaSweepReport,
    Remark32Report,
    Theorem21Report,
    VerifyReport,
    all_minimal_quad_classes,
    enumerate_minimal_quads,
    iter_minimal_tuples,
    naive_minimal_quad_classes,
    search_high_index,
    three_prime_moduli,
    validate_lemmas,
    validate_remark32,
    validate_theorem21,
    verify_conjecture,
    verify_many,
)
from .zncore import Modulus, factorize, inv_mod, residue_rep

__all__ = [
    "__version__",
    "CacheConfigMismatch",
    "CeilMismatch",
    "Counterexample",
    "GcdProfile",
    "GroupSequence",
    "HypothesisViolated",
    "IndexResult",
    "IntervalQ",
    "InvariantViolated",
    "LemmaOutcome",
    "LemmaSweepReport",
    "LengthTooLarge",
    "Modulus",
    "NoCoprimeElement",
    "NormalizedQuad",
    "NotAPrimeDivisor",
    "NotAUnit",
    "NotMinimal",
    "Pattern",
    "PatternClass",
    "PreconditionViolated",
    "Remark32Report",
    "SNotLargeEnough",
    "StructureParams",
    "Theorem21Report",
    "UsageError",
    "VerifyReport",
    "WrongPattern",
    "ZsIndexError",
    "all_minimal_quad_classes",
    "assumption_b",
    "canonical_rep",
    "classify_pattern",
    "compute_k1",
    "compute_s",
    "coprime_in_interval",
    "denormalize",
    "enumerate_minimal_quads",
    "factorize",
    "gcd_profile",
    "index_of",
    "interval_integers",
    "inv_mod",
    "is_minimal_zero_sum",
    "is_reduced",
    "is_zero_sum",
    "iter_minimal_tuples",
    "lemma33_cond1",
    "lemma33_cond2",
    "lemma34_cond",
    "lemma35_cond",
    "lemma51_bound",
    "naive_minimal_quad_classes",
    "normalize_quad",
    "omega_build",
    "remark32_check",
    "residue_rep",
    "scale_seq",
    "search_high_index",
    "seq_norm",
    "structure_params",
    "three_prime_moduli",
    "validate_lemmas",
    "validate_remark32",
    "validate_theorem21",
    "verify_conjecture",
    "verify_many",
]
