"""Detect zero and positive quantum discord of two-qubit states.

Analytic detection works from the Bloch form (local vectors ``m``, ``n``
and correlation tensor ``T``); a brute-force projective-measurement oracle
provides independent numerical ground truth.
"""

from .criteria import (
    DiscordClass,
    Tolerances,
    build_cq,
    build_qc,
    canonicalize,
    check_cq,
    check_cq_spectral,
    check_qc,
    check_qc_spectral,
    classify,
    xstate_classify,
)
from .entangle import concurrence, eof, merging_report
from .errors import DiscordKitError, DomainError, InputError
from .oracle import discord_numeric
from .qstate import BlochForm, bloch_compose, bloch_decompose, validate

__version__ = "0.1.0"
