"""Rank and row/column structure of a two-qubit correlation tensor."""

from dataclasses import dataclass, field

import numpy as np

from ..errors import InputError
from ..smalllin import svd3

NULL = "null"
RANK_ONE = "rank-one"
HIGHER = "higher"

ALL_ZERO = "all-zero"
TWO_ZERO = "two-zero"
ONE_ZERO = "one-zero"
NONE_ZERO = "none-zero"


@dataclass(frozen=True)
class Tolerances:
    """Thresholds shared by every analytic test.

    rank: a singular value counts as zero iff ``|s| <= rank * max(1, s1)``;
    zero rows/columns use the same rule on their norms.
    cond: a linear or proportionality condition on a Bloch vector ``v``
    holds iff its normalized residual is ``<= cond * (1 + |v|)``.
    """

    rank: float = 1e-9
    cond: float = 1e-8
    state: float = 1e-9

    def to_dict(self):
        return {"rank": self.rank, "cond": self.cond, "state": self.state}


DEFAULT_TOL = Tolerances()


@dataclass(frozen=True)
class LinePattern:
    """Zero/proportionality pattern of the three rows (or columns) of T.

    ``kind`` is one of all-zero, two-zero, one-zero, none-zero. Indices are
    0-based. For one-zero, ``zero = (i,)`` and ``line_j = mult * line_k``
    with ``j < k``. For none-zero, ``line_1 = mult12 * line_2`` and
    ``line_1 = mult13 * line_3``.
    """

    kind: str
    zero: tuple
    nonzero: tuple
    mult: float = None
    mult12: float = None
    mult13: float = None

    def to_dict(self):
        d = {"kind": self.kind, "zero": list(self.zero), "nonzero": list(self.nonzero)}
        for name in ("mult", "mult12", "mult13"):
            val = getattr(self, name)
            if val is not None:
                d[name] = val
        return d


@dataclass(frozen=True)
class TensorStructure:
    rank_class: str
    singular_values: np.ndarray
    threshold: float
    left_vector: np.ndarray = None
    right_vector: np.ndarray = None
    rows: LinePattern = None
    columns: LinePattern = None
    svd: object = field(default=None, repr=False)
    # dominant Gram eigenvectors memoized by the spectral checks
    cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def rank_margin(self):
        """Second singular value minus the zero threshold (rank-one boundary)."""
        return abs(self.singular_values[1]) - self.threshold

    def to_dict(self):
        d = {
            "rank_class": self.rank_class,
            "singular_values": [float(x) for x in self.singular_values],
            "rows": self.rows.to_dict(),
            "columns": self.columns.to_dict(),
        }
        if self.left_vector is not None:
            d["left_vector"] = self.left_vector.tolist()
            d["right_vector"] = self.right_vector.tolist()
        return d


def _ratio(a, b):
    """Least-squares multiplier ``x`` in ``a ~ x b``; the sign comes from the dot product."""
    return float(a @ b / (b @ b))


def line_pattern(lines, zero_tol):
    """Classify three vectors by how many vanish and read their multipliers."""
    norms = np.linalg.norm(lines, axis=1)
    zero = tuple(int(i) for i in np.flatnonzero(norms <= zero_tol))
    nonzero = tuple(i for i in range(3) if i not in zero)
    if len(zero) == 3:
        return LinePattern(ALL_ZERO, zero, nonzero)
    if len(zero) == 2:
        return LinePattern(TWO_ZERO, zero, nonzero)
    if len(zero) == 1:
        j, k = nonzero
        return LinePattern(ONE_ZERO, zero, nonzero, mult=_ratio(lines[j], lines[k]))
    return LinePattern(
        NONE_ZERO,
        zero,
        nonzero,
        mult12=_ratio(lines[0], lines[1]),
        mult13=_ratio(lines[0], lines[2]),
    )


def _fix_sign(u, v):
    # Largest component of the left vector positive; v follows so s1 u v^T is unchanged.
    if u[int(np.argmax(np.abs(u)))] < 0:
        return -u, -v
    return u, v


def analyze_tensor(t, tol=DEFAULT_TOL):
    """Rank class, singular data and row/column patterns of ``T``."""
    t = np.array(t, dtype=float)
    if t.shape != (3, 3):
        raise InputError(f"correlation tensor must be 3x3, got {t.shape}")
    if not np.all(np.isfinite(t)):
        raise InputError("correlation tensor has non-finite entries")
    sv = svd3(t)
    s = np.abs(sv.S)
    thr = tol.rank * max(1.0, s[0])
    if s[0] <= thr:
        rank_class = NULL
    elif s[1] <= thr:
        rank_class = RANK_ONE
    else:
        rank_class = HIGHER

    u = v = None
    if rank_class == RANK_ONE:
        u = sv.U[:, 0] * np.sign(sv.S[0])
        u, v = _fix_sign(u, sv.V[:, 0].copy())
    return TensorStructure(
        rank_class=rank_class,
        singular_values=s,
        threshold=thr,
        left_vector=u,
        right_vector=v,
        rows=line_pattern(t, thr),
        columns=line_pattern(t.T, thr),
        svd=sv,
    )
