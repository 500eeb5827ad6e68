"""Density matrices of one to three qubits and their Bloch representation.

States are plain ``numpy`` arrays. Subsystem ``A`` is always the most
significant tensor factor, so ``|ij>`` means ``|i>_A (x) |j>_B`` and index
``2*i + j`` of a two-qubit matrix.
"""

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import DomainError, InputError
from .smalllin import PAULI, herm_eigen, unitary_to_rotation

I2 = np.eye(2, dtype=complex)
SWAP = np.eye(4, dtype=complex)[[0, 2, 1, 3]]

_SUPPORTED_DIMS = (2, 4, 8)
_LABELS = "ABC"


@dataclass(frozen=True)
class ValidationReport:
    dim: int
    hermitian_dev: float
    trace_dev: float
    min_eigenvalue: float
    tol: float

    @property
    def hermitian(self):
        return self.hermitian_dev <= self.tol

    @property
    def unit_trace(self):
        return self.trace_dev <= self.tol

    @property
    def psd(self):
        return self.min_eigenvalue >= -self.tol

    @property
    def ok(self):
        return self.hermitian and self.unit_trace and self.psd

    def failures(self):
        out = []
        if not self.hermitian:
            out.append(f"not Hermitian (max deviation {self.hermitian_dev:.3e})")
        if not self.unit_trace:
            out.append(f"trace off by {self.trace_dev:.3e}")
        if not self.psd:
            out.append(f"negative eigenvalue {self.min_eigenvalue:.3e}")
        return out

    def to_dict(self):
        return {
            "ok": self.ok,
            "hermitian": self.hermitian,
            "unit_trace": self.unit_trace,
            "psd": self.psd,
            "hermitian_dev": self.hermitian_dev,
            "trace_dev": self.trace_dev,
            "min_eigenvalue": self.min_eigenvalue,
        }


@dataclass(frozen=True)
class BlochForm:
    """Local Bloch vectors ``m`` (party A), ``n`` (party B) and the real
    correlation tensor ``T`` with ``T[i, j] = Tr[rho sigma_i (x) sigma_j]``."""

    m: np.ndarray
    n: np.ndarray
    T: np.ndarray

    def swapped(self):
        """Bloch form of the state with the two qubits exchanged."""
        return BlochForm(m=self.n.copy(), n=self.m.copy(), T=self.T.T.copy())

    def to_dict(self):
        return {"m": self.m.tolist(), "n": self.n.tolist(), "T": self.T.tolist()}


def _as_matrix(rho):
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape[0] not in _SUPPORTED_DIMS:
        raise InputError(f"expected a 2x2, 4x4 or 8x8 matrix, got shape {rho.shape}")
    if not np.all(np.isfinite(rho)):
        raise InputError("matrix has non-finite entries")
    return rho


def validate(rho, tol=1e-9):
    """Check Hermiticity, unit trace and positivity, reporting worst violations."""
    rho = _as_matrix(rho)
    herm_dev = float(np.abs(rho - rho.conj().T).max())
    trace_dev = float(abs(np.trace(rho) - 1.0))
    lam_min = float(herm_eigen(rho).eigenvalues[-1])
    return ValidationReport(rho.shape[0], herm_dev, trace_dev, lam_min, tol)


def require_valid(rho, tol=1e-9):
    """Return ``rho`` as a complex array, raising :class:`DomainError` if invalid."""
    report = validate(rho, tol)
    if not report.ok:
        raise DomainError("invalid density matrix: " + "; ".join(report.failures()))
    return np.asarray(rho, dtype=complex)


def bloch_decompose(rho, check=True):
    rho = require_valid(rho) if check else _as_matrix(rho)
    if rho.shape != (4, 4):
        raise InputError("Bloch decomposition needs a two-qubit (4x4) state")
    # Tr[rho (s_i x s_j)] for all i, j at once; index 0 is the identity.
    basis = (I2,) + PAULI
    r = rho.reshape(2, 2, 2, 2)
    coeffs = np.array(
        [[np.einsum("abcd,ca,db->", r, si, sj).real for sj in basis] for si in basis]
    )
    return BlochForm(m=coeffs[1:, 0].copy(), n=coeffs[0, 1:].copy(), T=coeffs[1:, 1:].copy())


def bloch_compose(b):
    """Assemble ``(I + m.s x I + I x n.s + sum t_ij s_i x s_j) / 4``.

    The result is Hermitian with unit trace but positivity is up to the
    caller.
    """
    m = np.asarray(b.m, dtype=float)
    n = np.asarray(b.n, dtype=float)
    t = np.asarray(b.T, dtype=float)
    if m.shape != (3,) or n.shape != (3,) or t.shape != (3, 3):
        raise InputError("Bloch form needs m, n of length 3 and T of shape 3x3")
    coeffs = np.zeros((4, 4))
    coeffs[0, 0] = 1.0
    coeffs[1:, 0] = m
    coeffs[0, 1:] = n
    coeffs[1:, 1:] = t
    basis = (I2,) + PAULI
    rho = np.einsum("ij,iab,jcd->acbd", coeffs, np.array(basis), np.array(basis)).reshape(4, 4)
    return rho / 4.0


def _subsystem_indices(keep, nq):
    if isinstance(keep, str):
        keep = [_LABELS.index(c) if c in _LABELS[:nq] else -1 for c in keep.upper()]
    keep = sorted(set(int(k) for k in keep))
    if not keep or len(keep) >= nq or any(k < 0 or k >= nq for k in keep):
        raise InputError(f"keep must be a nonempty proper subset of {list(range(nq))}")
    return keep


def partial_trace(rho, keep):
    """Reduce a 2- or 3-qubit state to the subsystems in ``keep``.

    ``keep`` is an iterable of qubit indices (0 = A) or a label string such
    as ``"AC"``.
    """
    rho = _as_matrix(rho)
    nq = {4: 2, 8: 3}.get(rho.shape[0])
    if nq is None:
        raise InputError("partial trace needs a 2- or 3-qubit state")
    keep = _subsystem_indices(keep, nq)
    letters = "abcdef"
    row = list(letters[:nq])
    col = [row[i] if i not in keep else letters[nq + i] for i in range(nq)]
    out = "".join(row[i] for i in keep) + "".join(col[i] for i in keep)
    sub = np.einsum("".join(row) + "".join(col) + "->" + out, rho.reshape((2,) * (2 * nq)))
    d = 2 ** len(keep)
    return sub.reshape(d, d)


def spectrum(rho):
    return herm_eigen(_as_matrix(rho)).eigenvalues


def entropy_of_spectrum(lam):
    lam = np.clip(np.asarray(lam, dtype=float), 0.0, 1.0)
    lam = lam[lam > 0.0]
    return float(max(0.0, -np.sum(lam * np.log2(lam))))


def vn_entropy(rho):
    """Von Neumann entropy in bits, with ``0 log 0 = 0``."""
    return entropy_of_spectrum(spectrum(rho))


def mutual_info(rho):
    rho = _as_matrix(rho)
    return (
        vn_entropy(partial_trace(rho, [0]))
        + vn_entropy(partial_trace(rho, [1]))
        - vn_entropy(rho)
    )


def cond_entropy(rho):
    """``S(A|B) = S(AB) - S(B)`` for a two-qubit state."""
    rho = _as_matrix(rho)
    return vn_entropy(rho) - vn_entropy(partial_trace(rho, [1]))


def _require_unitary(u, tol=1e-9):
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2):
        raise InputError(f"expected a 2x2 unitary, got shape {u.shape}")
    if np.abs(u @ u.conj().T - I2).max() > tol:
        raise DomainError("operator is not unitary")
    return u


def apply_local_unitary(rho, ua, ub):
    rho = _as_matrix(rho)
    u = np.kron(_require_unitary(ua), _require_unitary(ub))
    return u @ rho @ u.conj().T


def transform_bloch(b, ua, ub):
    """Bloch-level image of ``apply_local_unitary``: m -> Qa m, n -> Qb n,
    T -> Qa T Qb^T with Q the adjoint rotations."""
    qa = unitary_to_rotation(_require_unitary(ua))
    qb = unitary_to_rotation(_require_unitary(ub))
    return BlochForm(m=qa @ b.m, n=qb @ b.n, T=qa @ b.T @ qb.T)


def swap_qubits(rho):
    rho = _as_matrix(rho)
    if rho.shape != (4, 4):
        raise InputError("swap needs a two-qubit state")
    return SWAP @ rho @ SWAP


def pure(psi):
    psi = np.asarray(psi, dtype=complex).ravel()
    psi = psi / np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


def kron(*ops):
    return reduce(np.kron, ops)


def qubit(bloch):
    """Single-qubit state ``(I + v.sigma) / 2``."""
    v = np.asarray(bloch, dtype=float)
    return 0.5 * (I2 + sum(v[i] * PAULI[i] for i in range(3)))


def product_state(va, vb):
    return np.kron(qubit(va), qubit(vb))


def bell_state(kind="phi+"):
    vecs = {
        "phi+": [1, 0, 0, 1],
        "phi-": [1, 0, 0, -1],
        "psi+": [0, 1, 1, 0],
        "psi-": [0, 1, -1, 0],
    }
    return pure(vecs[kind])


def werner(p):
    """``p |psi-><psi-| + (1 - p) I / 4``; correlation tensor ``-p I``."""
    return p * bell_state("psi-") + (1.0 - p) * np.eye(4) / 4.0


def xstate(x1, x2, x3, x4, y1, y2):
    rho = np.diag([x1, x2, x3, x4]).astype(complex)
    rho[0, 3] = y1
    rho[3, 0] = np.conj(y1)
    rho[1, 2] = y2
    rho[2, 1] = np.conj(y2)
    return rho


def random_unitary(rng):
    """Haar-random 2x2 unitary (QR of a complex Ginibre matrix)."""
    z = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def sample_random(kind, seed):
    """Random state of the given kind, deterministic in ``seed``.

    ``pure2q`` / ``pure3q``: normalized complex Gaussian vectors.
    ``ginibre2q``: ``G G^dag / Tr(G G^dag)`` with complex standard normal ``G``.
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    if kind == "pure2q" or kind == "pure3q":
        d = 4 if kind == "pure2q" else 8
        psi = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        return pure(psi)
    if kind == "ginibre2q":
        g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        rho = g @ g.conj().T
        return rho / np.trace(rho).real
    raise InputError(f"unknown sample kind {kind!r}")
