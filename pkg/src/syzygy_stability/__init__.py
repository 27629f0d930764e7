"""Exact certification and construction of stable monomial syzygy bundles."""

__version__ = "0.1.0"

from .bounds import (  # noqa: E402
    ThresholdClass,
    classify_by_threshold,
    eval_P,
    eval_Q,
    flenner_gap_holds,
    stability_threshold,
)
from .constructions import ConstructionTrace, Strictness, construct, construct_n1, construct_n2  # noqa: E402
from .criterion import (  # noqa: E402
    Status,
    Verdict,
    check_equal_degree,
    check_mixed,
    cross_check,
    exhaustive_classify,
)
from .errors import (  # noqa: E402
    DomainError,
    ImpossibleConstructionError,
    ResourceLimitError,
    VerificationError,
)
from .monomials import Monomial, MonomialSet, colon_dim, enumerate_monomials, is_bpf  # noqa: E402

__all__ = [
    "ConstructionTrace",
    "DomainError",
    "ImpossibleConstructionError",
    "Monomial",
    "MonomialSet",
    "ResourceLimitError",
    "Status",
    "Strictness",
    "ThresholdClass",
    "Verdict",
    "VerificationError",
    "check_equal_degree",
    "check_mixed",
    "classify_by_threshold",
    "colon_dim",
    "construct",
    "construct_n1",
    "construct_n2",
    "cross_check",
    "enumerate_monomials",
    "eval_P",
    "eval_Q",
    "exhaustive_classify",
    "flenner_gap_holds",
    "is_bpf",
    "stability_threshold",
]
