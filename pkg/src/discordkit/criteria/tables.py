"""Constructors for every classical-quantum and quantum-classical form.

Row ids follow the four rank patterns of a correlation tensor with at most
rank one:

====  ==========================================  ===========================
row   tensor lines (rows for CQ, columns for QC)  classical-side Bloch vector
====  ==========================================  ===========================
1     all zero                                    arbitrary
2     only line ``k`` nonzero (= ``line``)        zero outside component k
3     line ``zero`` vanishes, ``l_j = mult l_k``  ``x_zero = 0``, ``x_j = mult x_k``
4     ``l_1 = mult12 l_2 = mult13 l_3``           ``x ∝ (mult12 mult13, mult13, mult12)``
====  ==========================================  ===========================

Indices are 0-based; in row 3, ``j < k`` are the two remaining indices and
``line`` is ``l_k``; in row 4, ``line`` is ``l_1``.
"""

from dataclasses import dataclass

import numpy as np

from ..errors import DomainError, InputError
from ..qstate import BlochForm, bloch_compose, validate
from .detect import check_cq, check_qc
from .structure import DEFAULT_TOL

ROWS = (1, 2, 3, 4)


def _lines(row, line, k, zero, mult, mult12, mult13):
    lines = np.zeros((3, 3))
    if row == 1:
        return lines
    line = np.asarray(line, dtype=float)
    if line.shape != (3,) or not np.any(line):
        raise InputError("row pattern needs a nonzero 3-vector `line`")
    if row == 2:
        if k not in (0, 1, 2):
            raise InputError("row 2 needs the nonzero line index k in {0, 1, 2}")
        lines[k] = line
    elif row == 3:
        if zero not in (0, 1, 2) or not mult:
            raise InputError("row 3 needs the zero line index and a nonzero multiplier")
        j, kk = (x for x in range(3) if x != zero)
        lines[kk] = line
        lines[j] = mult * line
    elif row == 4:
        if not mult12 or not mult13:
            raise InputError("row 4 needs nonzero multipliers mult12 and mult13")
        lines[0] = line
        lines[1] = line / mult12
        lines[2] = line / mult13
    else:
        raise InputError(f"unknown table row {row!r}; expected one of {ROWS}")
    return lines


def _build(row, classical, other, lines_kw, columns, tol, literal):
    lines = _lines(row, **lines_kw)
    classical = np.asarray(classical, dtype=float)
    other = np.asarray(other, dtype=float)
    if columns:
        b = BlochForm(m=other, n=classical, T=lines.T.copy())
        verdict = check_qc(b, tol, literal)
        side = "n"
    else:
        b = BlochForm(m=classical, n=other, T=lines)
        verdict = check_cq(b, tol, literal)
        side = "m"
    if not verdict:
        raise DomainError(
            f"Bloch vector {side} violates the row-{row} constraint (slack {verdict.margin:.3e})"
        )
    rho = bloch_compose(b)
    report = validate(rho, tol.state)
    if not report.psd:
        raise DomainError(
            f"parameters give a non-positive matrix (eigenvalue {report.min_eigenvalue:.3e})"
        )
    return rho


def build_cq(row, m, n, line=None, k=None, zero=None, mult=None, mult12=None, mult13=None,
             tol=DEFAULT_TOL, literal=False):
    """Classical-quantum state (``D(B|A) = 0``) of the given row pattern.

    Raises :class:`DomainError` when ``m`` violates the row's constraint or
    the resulting matrix is not positive.
    """
    kw = dict(line=line, k=k, zero=zero, mult=mult, mult12=mult12, mult13=mult13)
    return _build(row, m, n, kw, False, tol, literal)


def build_qc(row, m, n, line=None, k=None, zero=None, mult=None, mult12=None, mult13=None,
             tol=DEFAULT_TOL, literal=False):
    """Quantum-classical state (``D(A|B) = 0``): the same patterns applied to
    the columns of ``T``, with ``n`` constrained and ``m`` free."""
    kw = dict(line=line, k=k, zero=zero, mult=mult, mult12=mult12, mult13=mult13)
    return _build(row, n, m, kw, True, tol, literal)


@dataclass(frozen=True)
class TableSample:
    row: int
    params: dict
    rho: np.ndarray


def _random_params(rng, row):
    if row == 1:
        r_cl = rng.uniform(0.0, 0.9)
        r_ot = rng.uniform(0.0, 0.95 * (1.0 - r_cl))
        d1 = rng.standard_normal(3)
        d2 = rng.standard_normal(3)
        return dict(classical=r_cl * d1 / np.linalg.norm(d1), other=r_ot * d2 / np.linalg.norm(d2))

    if row == 2:
        k = int(rng.integers(3))
        u = np.zeros(3)
        u[k] = rng.choice([-1.0, 1.0])
        extra = dict(k=k)
    elif row == 3:
        zero = int(rng.integers(3))
        u = rng.standard_normal(3)
        u[zero] = 0.0
        extra = dict(zero=zero)
    else:
        u = rng.standard_normal(3)
        u = np.where(np.abs(u) < 0.05, 0.05 * np.sign(u + 1e-300), u)
        extra = {}
    u /= np.linalg.norm(u)

    # rho = 1/4 [I + a u.s x I + I x n.s + u.s x c.s]; positive iff
    # |n + c| <= 1 + a and |n - c| <= 1 - a.
    a = 0.0 if rng.random() < 0.1 else rng.uniform(-0.9, 0.9)
    c = rng.standard_normal(3)
    n = rng.standard_normal(3)
    f = min(1.0, (1 + a) / np.linalg.norm(n + c), (1 - a) / np.linalg.norm(n - c))
    f *= rng.uniform(0.2, 0.95)
    c, n = f * c, f * n

    if row == 2:
        extra["line"] = u[extra["k"]] * c
    elif row == 3:
        j, k = (x for x in range(3) if x != extra["zero"])
        extra["line"] = u[k] * c
        extra["mult"] = u[j] / u[k]
    else:
        extra["line"] = u[0] * c
        extra["mult12"] = u[0] / u[1]
        extra["mult13"] = u[0] / u[2]
    return dict(classical=a * u, other=n, **extra)


def random_cq(rng, row=None):
    """Random valid classical-quantum state built through :func:`build_cq`."""
    row = int(rng.choice(ROWS)) if row is None else row
    p = _random_params(rng, row)
    params = {k: v for k, v in p.items() if k not in ("classical", "other")}
    params.update(m=p["classical"], n=p["other"])
    return TableSample(row, params, build_cq(row, **params))


def random_qc(rng, row=None):
    """Random valid quantum-classical state built through :func:`build_qc`."""
    row = int(rng.choice(ROWS)) if row is None else row
    p = _random_params(rng, row)
    params = {k: v for k, v in p.items() if k not in ("classical", "other")}
    params.update(m=p["other"], n=p["classical"])
    return TableSample(row, params, build_qc(row, **params))
