"""Concurrence, entanglement of formation and state-merging bookkeeping."""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InputError
from .oracle import discord_numeric
from .qstate import cond_entropy, partial_trace, pure, require_valid, swap_qubits
from .smalllin import PAULI, herm_eigen, psd_sqrt

SIGMA_YY = np.kron(PAULI[1], PAULI[1])


def binary_entropy(x):
    x = min(max(float(x), 0.0), 1.0)
    if x == 0.0 or x == 1.0:
        return 0.0
    return float(-x * np.log2(x) - (1 - x) * np.log2(1 - x))


def _singular_values(a):
    # eigenvalues of [[0, A], [A^dag, 0]] are +-sigma_i: no squaring, so tiny
    # singular values keep absolute accuracy ~ eps |A|.
    d = a.shape[0]
    h = np.zeros((2 * d, 2 * d), dtype=complex)
    h[:d, d:] = a
    h[d:, :d] = a.conj().T
    return np.clip(herm_eigen(h).eigenvalues[:d], 0.0, None)


def concurrence_spectrum(rho):
    """Square roots of the eigenvalues of ``rho rho~``, descending.

    They are the singular values of ``sqrt(rho) sqrt(rho~)`` since
    ``sqrt(rho) rho~ sqrt(rho)`` is the Gram matrix of that product, with
    ``rho~ = (sy x sy) rho* (sy x sy)``.
    """
    root = psd_sqrt(rho)
    root_tilde = SIGMA_YY @ root.conj() @ SIGMA_YY
    return _singular_values(root @ root_tilde)


def concurrence(rho):
    rho = require_valid(rho)
    if rho.shape != (4, 4):
        raise InputError("concurrence needs a two-qubit state")
    s = concurrence_spectrum(rho)
    return float(max(0.0, s[0] - s[1] - s[2] - s[3]))


def eof_from_concurrence(c):
    c = min(max(float(c), 0.0), 1.0)
    return binary_entropy(0.5 * (1.0 + np.sqrt(1.0 - c * c)))


def eof(rho):
    """Entanglement of formation in bits, ``h((1 + sqrt(1 - C^2)) / 2)``."""
    return eof_from_concurrence(concurrence(rho))


def _ket(amplitudes):
    psi = np.zeros(8, dtype=complex)
    for idx, amp in amplitudes.items():
        psi[int(idx, 2)] = amp
    return psi


def ghz_state(zeta):
    """``cos(zeta)|000> + sin(zeta)|111>`` for ``zeta`` in ``[0, pi/4]``."""
    if not -1e-12 <= zeta <= np.pi / 4 + 1e-12:
        raise InputError("GHZ angle must lie in [0, pi/4]")
    return pure(_ket({"000": np.cos(zeta), "111": np.sin(zeta)}))


def w_state(zeta1, zeta2):
    """``cos z1 |001> + sin z1 sin z2 |010> + sin z1 cos z2 |100>``."""
    for z in (zeta1, zeta2):
        if not -1e-12 <= z <= np.pi / 2 + 1e-12:
            raise InputError("W-family angles must lie in [0, pi/2]")
    return pure(
        _ket(
            {
                "001": np.cos(zeta1),
                "010": np.sin(zeta1) * np.sin(zeta2),
                "100": np.sin(zeta1) * np.cos(zeta2),
            }
        )
    )


def biseparable_state(s11, s12, f1, f2, tol=1e-9):
    """``(s11|00> + s12|11>)_AB (x) (f1|0> + f2|1>)_C`` with real, normalized coefficients."""
    if abs(s11**2 + s12**2 - 1.0) > tol or abs(f1**2 + f2**2 - 1.0) > tol:
        raise InputError("biseparable coefficients must satisfy s11^2+s12^2 = f1^2+f2^2 = 1")
    ab = np.array([s11, 0.0, 0.0, s12])
    c = np.array([f1, f2])
    return pure(np.kron(ab, c))


LABELS = ("A", "B", "C")


def reduce_pair(rho3, first, second):
    """Two-qubit reduction of a three-qubit state with ``first`` as the leading factor."""
    i, j = LABELS.index(first), LABELS.index(second)
    sub = partial_trace(rho3, sorted([i, j]))
    return sub if i < j else swap_qubits(sub)


@dataclass(frozen=True)
class MergingReport:
    sender: str
    receiver: str
    purifier: str
    S_cond: float
    eof_sr: float
    discord_sp: float
    identity_residual: float
    locc_feasible: bool
    ebit_gain: float

    def to_dict(self):
        return {
            "cut": [self.sender, self.receiver, self.purifier],
            "S_cond": self.S_cond,
            "eof_sr": self.eof_sr,
            "discord_sp": self.discord_sp,
            "identity_residual": self.identity_residual,
            "locc_feasible": self.locc_feasible,
            "ebit_gain": self.ebit_gain,
        }


def merging_report(pure3, sender="A", receiver="B", purifier="C", grid_n=64, refine=True,
                   purity_tol=1e-9):
    """Conditional entropy, entanglement and discord across one cut of a pure
    three-qubit state.

    For a pure ``|psi>_SRP`` the discord of S given a measurement on the
    purifier equals ``E_F(S:R) + S(S|R)``; ``identity_residual`` reports how
    far the numerical estimate is from that. Merging S into R is possible by
    LOCC alone when ``S(S|R) <= 0``, with ``-S(S|R)`` e-bits gained.
    """
    cut = (sender, receiver, purifier)
    if sorted(cut) != list(LABELS):
        raise InputError(f"cut must be a permutation of A, B, C, got {cut}")
    rho = require_valid(pure3)
    if rho.shape != (8, 8):
        raise InputError("merging analysis needs a three-qubit state")
    top = herm_eigen(rho).eigenvalues[0]
    if top < 1.0 - purity_tol:
        raise DomainError(f"state is not pure (largest eigenvalue {top:.12f})")

    rho_sr = reduce_pair(rho, sender, receiver)
    s_cond = cond_entropy(rho_sr)
    e_f = eof(rho_sr)
    d_sp = discord_numeric(reduce_pair(rho, sender, purifier), side="B", grid_n=grid_n,
                           refine=refine).value
    return MergingReport(
        sender=sender,
        receiver=receiver,
        purifier=purifier,
        S_cond=s_cond,
        eof_sr=e_f,
        discord_sp=d_sp,
        identity_residual=d_sp - e_f - s_cond,
        locc_feasible=s_cond <= purity_tol,
        ebit_gain=max(0.0, -s_cond),
    )
