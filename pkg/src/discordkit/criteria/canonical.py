"""Local-unitary reduction of a two-qubit state to a diagonal correlation tensor."""

from dataclasses import dataclass

import numpy as np

from ..qstate import apply_local_unitary, bloch_decompose, require_valid
from ..smalllin import rotation_to_unitary, svd3


@dataclass(frozen=True)
class CanonicalForm:
    """``rho_prime = (U_A x U_B) rho (U_A x U_B)^dag`` with ``T' = diag(R)``."""

    rho_prime: np.ndarray
    U_A: np.ndarray
    U_B: np.ndarray
    R: np.ndarray

    def to_dict(self):
        def cm(u):
            return [[[z.real, z.imag] for z in row] for row in np.asarray(u, complex)]

        return {"R": self.R.tolist(), "U_A": cm(self.U_A), "U_B": cm(self.U_B)}


def canonicalize(rho):
    """Rotate both Bloch frames onto the singular vectors of ``T``.

    With ``T = U diag(S) V^T`` (both factors proper rotations), local
    rotations ``Q_A = U^T`` and ``Q_B = V^T`` send ``T`` to ``diag(S)``; each
    is lifted to a qubit unitary. ``R`` carries the signed singular values
    in order of decreasing magnitude.
    """
    rho = require_valid(rho)
    b = bloch_decompose(rho, check=False)
    sv = svd3(b.T)
    ua = rotation_to_unitary(sv.U.T)
    ub = rotation_to_unitary(sv.V.T)
    return CanonicalForm(
        rho_prime=apply_local_unitary(rho, ua, ub),
        U_A=ua,
        U_B=ub,
        R=sv.S.copy(),
    )
