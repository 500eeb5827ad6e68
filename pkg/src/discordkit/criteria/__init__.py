from .canonical import CanonicalForm, canonicalize
from .detect import (
    POSITIVE,
    ZERO,
    DiscordClass,
    Verdict,
    check_cq,
    check_cq_spectral,
    check_qc,
    check_qc_spectral,
    classify,
    classify_bloch,
    xstate_classify,
)
from .structure import DEFAULT_TOL, TensorStructure, Tolerances, analyze_tensor
from .tables import build_cq, build_qc, random_cq, random_qc

__all__ = [
    "CanonicalForm",
    "DEFAULT_TOL",
    "DiscordClass",
    "POSITIVE",
    "TensorStructure",
    "Tolerances",
    "Verdict",
    "ZERO",
    "analyze_tensor",
    "build_cq",
    "build_qc",
    "canonicalize",
    "check_cq",
    "check_cq_spectral",
    "check_qc",
    "check_qc_spectral",
    "classify",
    "classify_bloch",
    "random_cq",
    "random_qc",
    "xstate_classify",
]
