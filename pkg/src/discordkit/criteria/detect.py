"""Analytic zero/positive discord detection for two-qubit states.

A two-qubit state has ``D(B|A) = 0`` (measurement on A) exactly when it is
classical-quantum, ``sum_j P_j Pi_j (x) rho_j``. In Bloch form that means
``T = 0`` or ``T = s u v^T`` has rank one with A's Bloch vector ``m``
parallel to the left singular vector ``u`` (``m = 0`` included). The mirror
statement with columns, ``n`` and the right singular vector governs
``D(A|B)``.

Two routes are implemented and must agree:

* ``check_cq`` / ``check_qc`` enumerate the row (column) patterns a rank-one
  tensor can have and test the matching linear condition on ``m`` (``n``)
  using the row multipliers ``p`` / ``p12`` / ``p13``;
* ``check_cq_spectral`` / ``check_qc_spectral`` take ``u`` as the dominant
  eigenvector of ``T T^T`` (``T^T T``) and test ``m x u = 0`` directly.

``literal=True`` additionally accepts the "orthogonal" branches
(``m . u = 0``: ``m_k = 0``, ``p m_j = -m_k``,
``p13 (p12 m1 + m2) + p12 m3 = 0``), i.e. ``m`` in the null space of
``T T^T`` rather than in its range. Those states are *not*
classical-quantum unless ``m = 0``; the brute-force oracle shows strictly
positive discord for them. The switch exists to reproduce and audit that
wider condition set, never as the default.
"""

import math
from dataclasses import dataclass

import numpy as np

from ..errors import DomainError
from ..qstate import bloch_decompose, require_valid
from ..smalllin import herm_eigen
from .structure import (
    DEFAULT_TOL,
    HIGHER,
    NONE_ZERO,
    NULL,
    ONE_ZERO,
    TWO_ZERO,
    analyze_tensor,
)

ZERO = "Zero"
POSITIVE = "Positive"


@dataclass(frozen=True)
class Verdict:
    """Outcome of one directional test. Truthy iff the discord is zero.

    ``margin`` is the signed slack of the deciding quantity: ``<= 0`` for a
    zero verdict, ``> 0`` for a positive one. Values close to 0 flag states
    near the boundary of the zero-discord set.
    """

    zero: bool
    condition: str
    margin: float

    def __bool__(self):
        return self.zero

    def to_dict(self):
        return {"zero": self.zero, "condition": self.condition, "margin": self.margin}


@dataclass(frozen=True)
class DiscordClass:
    b_given_a: str
    a_given_b: str
    cq: Verdict
    qc: Verdict
    structure: object = None

    @property
    def both_way_positive(self):
        return self.b_given_a == POSITIVE and self.a_given_b == POSITIVE

    # A state is useful for unilocal broadcasting by a sender iff it is
    # classical on the sender's side.
    @property
    def a_sender_usable(self):
        return self.b_given_a == ZERO

    @property
    def b_sender_usable(self):
        return self.a_given_b == ZERO

    @property
    def verdicts(self):
        return self.b_given_a, self.a_given_b

    def to_dict(self):
        d = {
            "b_given_a": self.b_given_a,
            "a_given_b": self.a_given_b,
            "both_way_positive": self.both_way_positive,
            "fired_condition": {"b_given_a": self.cq.condition, "a_given_b": self.qc.condition},
            "margins": {"b_given_a": self.cq.margin, "a_given_b": self.qc.margin},
            "broadcasting": {
                "A_sender_usable": self.a_sender_usable,
                "B_sender_usable": self.b_sender_usable,
            },
        }
        if self.structure is not None:
            d["tensor"] = self.structure.to_dict()
        return d


_NAMES = {
    "row": {
        "par2": "two-zero-rows-mimj",
        "orth2": "two-zero-rows-mk",
        "par1": "one-zero-row-parallel",
        "orth1": "one-zero-row-orthogonal",
        "par0": "all-rows-proportional",
        "orth0": "all-rows-orthogonal-combination",
    },
    "col": {
        "par2": "two-zero-cols-ninj",
        "orth2": "two-zero-cols-nk",
        "par1": "one-zero-col-parallel",
        "orth1": "one-zero-col-orthogonal",
        "par0": "all-cols-proportional",
        "orth0": "all-cols-orthogonal-combination",
    },
}


def _cross_norm(a, b):
    return math.hypot(a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _rank_gate(st):
    if st.rank_class == NULL:
        return Verdict(True, "null-T", float(st.singular_values[0] - st.threshold))
    if st.rank_class == HIGHER:
        return Verdict(False, "positive", float(st.rank_margin))
    return None


def _decide(tests, x, tol, literal):
    bound = tol.cond * (1.0 + np.linalg.norm(x))
    tests = [t for t in tests if literal or not t[2]]
    for name, resid, _ in tests:
        if resid <= bound:
            return Verdict(True, name, float(resid - bound))
    return Verdict(False, "positive", float(min(t[1] for t in tests) - bound))


def _enumerated(st, pattern, x, tol, literal, axis):
    gate = _rank_gate(st)
    if gate is not None:
        return gate
    names = _NAMES[axis]
    if pattern.kind == TWO_ZERO:
        i, j = pattern.zero
        (k,) = pattern.nonzero
        tests = [
            (names["par2"], float(np.hypot(x[i], x[j])), False),
            (names["orth2"], abs(x[k]), True),
        ]
    elif pattern.kind == ONE_ZERO:
        (i,) = pattern.zero
        j, k = pattern.nonzero
        p = pattern.mult
        norm = np.sqrt(1.0 + p * p)
        tests = [
            (names["par1"], float(np.sqrt(x[i] ** 2 + (x[j] - p * x[k]) ** 2 / norm**2)), False),
            (names["orth1"], abs(p * x[j] + x[k]) / norm, True),
        ]
    elif pattern.kind == NONE_ZERO:
        p12, p13 = pattern.mult12, pattern.mult13
        w = np.array([p13 * p12, p13, p12])
        wn = np.linalg.norm(w)
        tests = [
            (names["par0"], float(_cross_norm(x, w) / wn), False),
            (names["orth0"], abs(p13 * (p12 * x[0] + x[1]) + p12 * x[2]) / wn, True),
        ]
    else:
        # rank one but every line under the zero threshold: only possible when
        # s1 sits within a factor sqrt(3) of the threshold; treat as null.
        return Verdict(True, "null-T", float(st.singular_values[0] - st.threshold))
    return _decide(tests, x, tol, literal)


def _dominant(st, t, axis):
    key = (axis, t.tobytes())
    if key not in st.cache:
        gram = t @ t.T if axis == "row" else t.T @ t
        u = herm_eigen(gram).eigenvectors[:, 0].real
        st.cache[key] = u / np.linalg.norm(u)
    return st.cache[key]


def _spectral(st, t, axis, x, tol, literal):
    gate = _rank_gate(st)
    if gate is not None:
        return gate
    u = _dominant(st, t, axis)
    tests = [
        ("spectral-parallel", float(_cross_norm(x, u)), False),
        ("spectral-orthogonal", abs(float(x @ u)), True),
    ]
    return _decide(tests, x, tol, literal)


def check_cq(b, tol=DEFAULT_TOL, literal=False, structure=None):
    """``D(B|A) = 0`` test by enumeration of the row patterns of ``T``."""
    st = structure or analyze_tensor(b.T, tol)
    return _enumerated(st, st.rows, np.asarray(b.m, float), tol, literal, "row")


def check_qc(b, tol=DEFAULT_TOL, literal=False, structure=None):
    """``D(A|B) = 0`` test by enumeration of the column patterns of ``T``."""
    st = structure or analyze_tensor(b.T, tol)
    return _enumerated(st, st.columns, np.asarray(b.n, float), tol, literal, "col")


def check_cq_spectral(b, tol=DEFAULT_TOL, literal=False, structure=None):
    """``D(B|A) = 0`` iff ``T`` is null or rank one with ``m`` along the
    range of ``Gamma = T T^T``."""
    st = structure or analyze_tensor(b.T, tol)
    return _spectral(st, np.asarray(b.T, float), "row", np.asarray(b.m, float), tol, literal)


def check_qc_spectral(b, tol=DEFAULT_TOL, literal=False, structure=None):
    st = structure or analyze_tensor(b.T, tol)
    return _spectral(st, np.asarray(b.T, float), "col", np.asarray(b.n, float), tol, literal)


def classify_bloch(b, tol=DEFAULT_TOL, literal=False):
    st = analyze_tensor(b.T, tol)
    cq = check_cq(b, tol, literal, structure=st)
    qc = check_qc(b, tol, literal, structure=st)
    return DiscordClass(
        b_given_a=ZERO if cq else POSITIVE,
        a_given_b=ZERO if qc else POSITIVE,
        cq=cq,
        qc=qc,
        structure=st,
    )


def classify(rho, tol=DEFAULT_TOL, literal=False):
    """Per-direction zero/positive discord verdict for a two-qubit state."""
    rho = require_valid(rho, tol.state)
    return classify_bloch(bloch_decompose(rho, check=False), tol, literal)


def xstate_classify(x1, x2, x3, x4, y1, y2, tol=1e-9):
    """Closed-form verdicts for a real X state.

    ``D(B|A) = 0`` iff ``y1 = y2 = 0`` or ``|y1| = |y2|`` with
    ``(x1, x2) = (x3, x4)``; ``D(A|B) = 0`` iff ``y1 = y2 = 0`` or
    ``|y1| = |y2|`` with ``(x1, x3) = (x2, x4)``.
    """
    x = np.array([x1, x2, x3, x4], dtype=float)
    y1, y2 = float(y1), float(y2)
    if np.any(x < -tol) or abs(x.sum() - 1.0) > tol:
        raise DomainError("X-state diagonal must be non-negative and sum to 1")
    if y1 * y1 > x1 * x4 + tol or y2 * y2 > x2 * x3 + tol:
        raise DomainError("X state is not positive semidefinite (|y1|^2 <= x1 x4, |y2|^2 <= x2 x3)")

    y_zero = max(abs(y1), abs(y2))
    y_balance = abs(abs(y1) - abs(y2))
    a_split = max(abs(x1 - x3), abs(x2 - x4))
    b_split = max(abs(x1 - x2), abs(x3 - x4))

    def verdict(split, tag):
        if y_zero <= tol:
            return Verdict(True, "xstate-y-zero", y_zero - tol)
        second = max(y_balance, split)
        if second <= tol:
            return Verdict(True, f"xstate-balanced-{tag}", second - tol)
        return Verdict(False, "positive", min(y_zero, second) - tol)

    cq = verdict(a_split, "X")
    qc = verdict(b_split, "Y")
    return DiscordClass(
        b_given_a=ZERO if cq else POSITIVE,
        a_given_b=ZERO if qc else POSITIVE,
        cq=cq,
        qc=qc,
    )
