"""Fixed-size numerical kernels.

Everything here works on tiny dense matrices (2x2 up to 8x8) and is written
to be deterministic: the same input always produces bit-identical output,
with eigenvector phases and singular-vector signs pinned by explicit
conventions rather than left to whatever a LAPACK driver happens to return.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InputError

_EPS = np.finfo(float).eps
_MAX_SWEEPS = 50

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


@dataclass(frozen=True)
class HermEigen:
    """Eigenvalues sorted descending with matching eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


@dataclass(frozen=True)
class Svd3:
    """Signed SVD ``M = U @ diag(S) @ V.T`` with ``det U = det V = +1``."""

    U: np.ndarray
    S: np.ndarray
    V: np.ndarray


def _check_finite(a, name):
    if not np.all(np.isfinite(a)):
        raise InputError(f"{name} has non-finite entries")


def _jacobi_sweeps(a, d):
    """Cyclic Jacobi on a Hermitian matrix held as nested lists.

    Plain Python arithmetic: for d <= 8 this beats per-element numpy calls by
    an order of magnitude. Returns (diagonal, eigenvector rows-major list).
    """
    v = [[1.0 + 0j if i == j else 0j for j in range(d)] for i in range(d)]
    scale2 = sum(abs(x) ** 2 for row in a for x in row)
    stop2 = (_EPS * 1e-2) ** 2 * scale2
    for _ in range(_MAX_SWEEPS):
        off2 = sum(abs(a[p][q]) ** 2 for p in range(d) for q in range(d) if p != q)
        if off2 == 0.0 or off2 <= stop2:
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = a[p][q]
                r = abs(apq)
                if r == 0.0:
                    continue
                ph = apq / r
                theta = (a[q][q].real - a[p][p].real) / (2.0 * r)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                # G = [[c, s], [-s*conj(ph), c*conj(ph)]] acting on the (p, q) plane
                g10 = -s * ph.conjugate()
                g11 = c * ph.conjugate()
                for x in (a, v):
                    for row in x:
                        xp, xq = row[p], row[q]
                        row[p] = c * xp + g10 * xq
                        row[q] = s * xp + g11 * xq
                rp, rq = a[p], a[q]
                cg10, cg11 = g10.conjugate(), g11.conjugate()
                a[p] = [c * x + cg10 * y for x, y in zip(rp, rq)]
                a[q] = [s * x + cg11 * y for x, y in zip(rp, rq)]
                a[p][q] = a[q][p] = 0j
                a[p][p] = complex(a[p][p].real)
                a[q][q] = complex(a[q][q].real)
    return [a[i][i].real for i in range(d)], v


def herm_eigen(h):
    """Diagonalize a small Hermitian matrix with cyclic complex Jacobi sweeps.

    The input is symmetrized first, so anything Hermitian to roundoff is
    accepted. Each eigenvector is phase-fixed so that its largest-magnitude
    component (first one on ties) is real and positive.

    Parameters
    ----------
    h : array_like, shape (d, d), d in {2, 3, 4, 8}

    Returns
    -------
    HermEigen
    """
    a = np.array(h, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] not in (2, 3, 4, 8):
        raise InputError(f"expected a square matrix of size 2, 3, 4 or 8, got {a.shape}")
    _check_finite(a, "matrix")
    d = a.shape[0]
    a = 0.5 * (a + a.conj().T)
    w, v = _jacobi_sweeps(a.tolist(), d)
    w = np.array(w)
    v = np.array(v, dtype=complex)
    order = np.argsort(-w, kind="stable")
    w = w[order]
    v = v[:, order]
    for k in range(d):
        col = v[:, k]
        j = int(np.argmax(np.abs(col) > np.abs(col).max() * (1 - 1e-12)))
        ph = col[j] / abs(col[j])
        v[:, k] = col / ph
        v[:, k] /= np.linalg.norm(v[:, k])
    return HermEigen(eigenvalues=w, eigenvectors=v)


def _unit(x):
    """``x / |x|`` computed on a max-scaled copy (squares of tiny entries underflow)."""
    peak = np.abs(x).max()
    if peak == 0.0:
        return None
    y = x / peak
    return y / np.linalg.norm(y)


def _orthogonal_complement(u):
    """Unit vector orthogonal to the unit 3-vector ``u``."""
    e = np.zeros(3)
    e[int(np.argmin(np.abs(u)))] = 1.0
    x = e - (e @ u) * u
    return x / np.linalg.norm(x)


def svd3(m):
    """Signed singular value decomposition of a real 3x3 matrix.

    One-sided (Hestenes) Jacobi: columns of ``M V`` are orthogonalized by
    plane rotations, so small singular values keep full absolute accuracy
    (no squaring through ``M.T @ M``). Reflections are absorbed into the
    sign of the smallest singular value so that both factors are proper
    rotations.
    """
    m = np.array(m, dtype=float)
    if m.shape != (3, 3):
        raise InputError(f"svd3 expects a 3x3 matrix, got {m.shape}")
    _check_finite(m, "matrix")
    # power-of-two prescale (exact): keeps column norms clear of under/overflow
    peak = float(np.abs(m).max())
    exp = math.frexp(peak)[1] if peak > 0.0 else 0
    m = np.ldexp(m, -exp)

    # columns of M V and of V as plain lists: per-element numpy calls would dominate
    w = [list(map(float, m[:, j])) for j in range(3)]
    v = [[1.0 if i == j else 0.0 for i in range(3)] for j in range(3)]
    for _ in range(_MAX_SWEEPS):
        rotated = False
        for i, j in ((0, 1), (0, 2), (1, 2)):
            wi, wj = w[i], w[j]
            alpha = wi[0] * wi[0] + wi[1] * wi[1] + wi[2] * wi[2]
            beta = wj[0] * wj[0] + wj[1] * wj[1] + wj[2] * wj[2]
            gamma = wi[0] * wj[0] + wi[1] * wj[1] + wi[2] * wj[2]
            # sqrt separately: alpha * beta can underflow for tiny columns
            if gamma == 0.0 or abs(gamma) <= _EPS * math.sqrt(alpha) * math.sqrt(beta):
                continue
            rotated = True
            try:
                zeta = (beta - alpha) / (2.0 * gamma)
            except OverflowError:
                zeta = math.inf
            if abs(zeta) > 1e150:
                t = 0.5 / zeta
            else:
                t = (1.0 if zeta >= 0 else -1.0) / (abs(zeta) + math.sqrt(1.0 + zeta * zeta))
            c = 1.0 / math.sqrt(1.0 + t * t)
            s = c * t
            for x in (w, v):
                xi, xj = x[i], x[j]
                x[i] = [c * a - s * b for a, b in zip(xi, xj)]
                x[j] = [s * a + c * b for a, b in zip(xi, xj)]
        if not rotated:
            break
    w = np.array(w).T
    v = np.array(v).T

    norms = np.linalg.norm(w, axis=0)
    order = np.argsort(-norms, kind="stable")
    w, v, norms = w[:, order], v[:, order], norms[order]

    if norms[0] == 0.0:
        return Svd3(U=np.eye(3), S=np.zeros(3), V=np.eye(3))

    u1 = _unit(w[:, 0])
    u2 = None
    if norms[1] > 0.0:
        u2 = _unit(w[:, 1] - (w[:, 1] @ u1) * u1)
    if u2 is None:
        u2 = _orthogonal_complement(u1)
    u = np.column_stack([u1, u2, _unit(np.cross(u1, u2))])
    if np.linalg.det(v) < 0:
        v[:, 2] = -v[:, 2]
    s = np.einsum("ik,ij,jk->k", u, m, v)
    # roundoff can leave s1 or s2 at -tiny; flipping a pair of U columns
    # keeps det U = +1 and moves the sign onto s3
    for k in (0, 1):
        if s[k] < 0:
            u[:, k] = -u[:, k]
            u[:, 2] = -u[:, 2]
            s[k], s[2] = -s[k], -s[2]
    return Svd3(U=u, S=np.ldexp(s, exp), V=v)


def rotation_to_unitary(r, atol=1e-8):
    """Lift a proper 3D rotation to an SU(2) matrix.

    The returned ``U`` satisfies ``U (x.sigma) U^dag = (R x).sigma``, i.e.
    ``R_ij = Tr(sigma_i U sigma_j U^dag) / 2``. Of the two lifts ``+-U`` the
    one with non-negative real part of the trace is returned.
    """
    r = np.array(r, dtype=float)
    if r.shape != (3, 3):
        raise InputError(f"expected a 3x3 rotation, got {r.shape}")
    _check_finite(r, "rotation")
    if np.abs(r.T @ r - np.eye(3)).max() > atol or abs(np.linalg.det(r) - 1.0) > atol:
        raise DomainError("matrix is not a proper rotation")

    tr = np.trace(r)
    k = int(np.argmax([tr, r[0, 0], r[1, 1], r[2, 2]]))
    if k == 0:
        qw = 0.5 * np.sqrt(max(1.0 + tr, 0.0))
        f = 0.25 / qw
        q = (qw, (r[2, 1] - r[1, 2]) * f, (r[0, 2] - r[2, 0]) * f, (r[1, 0] - r[0, 1]) * f)
    elif k == 1:
        qx = 0.5 * np.sqrt(max(1.0 + r[0, 0] - r[1, 1] - r[2, 2], 0.0))
        f = 0.25 / qx
        q = ((r[2, 1] - r[1, 2]) * f, qx, (r[0, 1] + r[1, 0]) * f, (r[0, 2] + r[2, 0]) * f)
    elif k == 2:
        qy = 0.5 * np.sqrt(max(1.0 - r[0, 0] + r[1, 1] - r[2, 2], 0.0))
        f = 0.25 / qy
        q = ((r[0, 2] - r[2, 0]) * f, (r[0, 1] + r[1, 0]) * f, qy, (r[1, 2] + r[2, 1]) * f)
    else:
        qz = 0.5 * np.sqrt(max(1.0 - r[0, 0] - r[1, 1] + r[2, 2], 0.0))
        f = 0.25 / qz
        q = ((r[1, 0] - r[0, 1]) * f, (r[0, 2] + r[2, 0]) * f, (r[1, 2] + r[2, 1]) * f, qz)
    q = np.array(q)
    q /= np.linalg.norm(q)
    if q[0] < 0:
        q = -q
    return q[0] * np.eye(2) - 1j * (q[1] * PAULI[0] + q[2] * PAULI[1] + q[3] * PAULI[2])


def unitary_to_rotation(u):
    """Adjoint action of a 2x2 unitary on Bloch vectors (the inverse lift)."""
    u = np.asarray(u, dtype=complex)
    return np.array(
        [[0.5 * np.trace(PAULI[i] @ u @ PAULI[j] @ u.conj().T).real for j in range(3)] for i in range(3)]
    )


def psd_sqrt(h, neg_tol=1e-10):
    """Principal square root of a Hermitian PSD matrix.

    Eigenvalues down to ``-neg_tol`` are clamped to zero; anything more
    negative raises :class:`DomainError`.
    """
    eig = herm_eigen(h)
    lam = eig.eigenvalues
    if lam[-1] < -neg_tol:
        raise DomainError(f"matrix is not PSD (eigenvalue {lam[-1]:.3e})")
    root = np.sqrt(np.clip(lam, 0.0, None))
    vecs = eig.eigenvectors
    return (vecs * root) @ vecs.conj().T
