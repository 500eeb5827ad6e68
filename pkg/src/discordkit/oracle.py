"""Brute-force projective-measurement discord of a two-qubit state.

``D(B|A) = I(A:B) - max_w [S(B) - sum_j P_j S(rho_B|j)]`` with the maximum
over rank-one projective measurements ``Pi_j = (I + (-1)^j w.sigma) / 2`` on
A (``side="A"``); ``side="B"`` measures B instead. The maximization is a
deterministic grid over the half sphere followed by Nelder-Mead polishing,
so the returned discord is an upper bound that tightens with the grid.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .errors import InputError
from .qstate import mutual_info, partial_trace, require_valid, vn_entropy
from .smalllin import PAULI

PROB_FLOOR = 1e-12


@dataclass(frozen=True)
class DiscordEstimate:
    value: float
    j_value: float
    mutual_info: float
    best_direction: np.ndarray
    theta: float
    phi: float
    side: str
    grid_points: int
    refine_iterations: int

    def to_dict(self):
        return {
            "side": self.side,
            "value": self.value,
            "j_value": self.j_value,
            "mutual_info": self.mutual_info,
            "best_direction": self.best_direction.tolist(),
            "theta": self.theta,
            "phi": self.phi,
            "grid_points": self.grid_points,
            "refine_iterations": self.refine_iterations,
        }


def direction(theta, phi):
    return np.array([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)])


def _side_index(side):
    side = str(side).upper()
    if side not in ("A", "B"):
        raise InputError(f"side must be 'A' or 'B', got {side!r}")
    return 0 if side == "A" else 1


def _projector(w, sign):
    return 0.5 * (np.eye(2) + sign * sum(w[i] * PAULI[i] for i in range(3)))


def conditional_states(rho, side, w):
    """Outcome probabilities and post-measurement states of the unmeasured qubit.

    Returns ``[(P_0, rho_0), (P_1, rho_1)]``; a branch with ``P_j <= 1e-12``
    carries ``None`` in place of its state.
    """
    rho = np.asarray(rho, dtype=complex)
    w = np.asarray(w, dtype=float)
    w = w / np.linalg.norm(w)
    k = _side_index(side)
    out = []
    for sign in (1.0, -1.0):
        proj = _projector(w, sign)
        op = np.kron(proj, np.eye(2)) if k == 0 else np.kron(np.eye(2), proj)
        branch = partial_trace(op @ rho @ op, [1 - k])
        p = float(np.trace(branch).real)
        out.append((p, branch / p if p > PROB_FLOOR else None))
    return out


def classical_correlation_at(rho, side, w):
    """``S(other) - sum_j P_j S(rho_other|j)`` for the measurement along ``w``."""
    k = _side_index(side)
    s_other = vn_entropy(partial_trace(rho, [1 - k]))
    return s_other - sum(p * vn_entropy(r) for p, r in conditional_states(rho, side, w) if r is not None)


def _h2(lam):
    lam = np.clip(lam, 0.0, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(lam > 0.0, -lam * np.log2(np.where(lam > 0.0, lam, 1.0)), 0.0)
    return t


class _Landscape:
    """Vectorized ``sum_j P_j S(rho_j)`` over many directions at once.

    Unnormalized branch states are ``(rho_other + s sum_i w_i K_i) / 2`` with
    ``K_i`` the partial trace of ``(sigma_i on the measured side) rho``; 2x2
    Hermitian eigenvalues are taken in closed form.
    """

    def __init__(self, rho, k):
        r = rho.reshape(2, 2, 2, 2)
        if k == 0:
            self.base = np.einsum("abad->bd", r)
            self.k = np.array([np.einsum("ca,abcd->bd", s, r) for s in PAULI])
        else:
            self.base = np.einsum("abcb->ac", r)
            self.k = np.array([np.einsum("db,abcd->ac", s, r) for s in PAULI])

    def cond_entropy(self, w):
        x = np.einsum("ni,ibd->nbd", w, self.k)
        total = np.zeros(len(w))
        for sign in (1.0, -1.0):
            m = 0.5 * (self.base[None] + sign * x)
            a = m[:, 0, 0].real
            d = m[:, 1, 1].real
            p = a + d
            disc = np.sqrt(np.maximum((a - d) ** 2 + 4.0 * np.abs(m[:, 0, 1]) ** 2, 0.0))
            ok = p > PROB_FLOOR
            ps = np.where(ok, p, 1.0)
            l1 = 0.5 * (p + disc) / ps
            l2 = 0.5 * (p - disc) / ps
            total += np.where(ok, p * (_h2(l1) + _h2(l2)), 0.0)
        return total


def discord_numeric(rho, side="A", grid_n=64, refine=True, max_iter=200, check=True):
    """Discord with the projective measurement on ``side``.

    ``grid_n**2`` directions with ``theta in [0, pi]`` and ``phi in [0, pi)``
    (``w`` and ``-w`` define the same measurement) are scanned; the best one,
    first in lexicographic ``(theta, phi)`` order on ties, seeds a
    Nelder-Mead search that stops when the improvement drops below 1e-10 or
    after ``max_iter`` iterations. The refined point is kept only if it
    beats the grid.
    """
    rho = require_valid(rho) if check else np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise InputError("discord oracle needs a two-qubit state")
    if grid_n < 2:
        raise InputError("grid_n must be at least 2")
    k = _side_index(side)
    land = _Landscape(rho, k)
    s_other = vn_entropy(partial_trace(rho, [1 - k]))
    info = mutual_info(rho)

    thetas = np.linspace(0.0, np.pi, grid_n)
    phis = np.arange(grid_n) * (np.pi / grid_n)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    tt, pp = tt.ravel(), pp.ravel()
    ws = np.column_stack([np.sin(tt) * np.cos(pp), np.sin(tt) * np.sin(pp), np.cos(tt)])
    j_grid = s_other - land.cond_entropy(ws)
    best = int(np.argmax(j_grid))
    theta, phi, j_best = float(tt[best]), float(pp[best]), float(j_grid[best])

    iters = 0
    if refine:
        def neg_j(x):
            return land.cond_entropy(direction(x[0], x[1])[None])[0] - s_other

        step = np.pi / grid_n
        x0 = np.array([theta, phi])
        simplex = np.array([x0, x0 + [step, 0.0], x0 + [0.0, step]])
        res = minimize(
            neg_j,
            x0,
            method="Nelder-Mead",
            options={"maxiter": max_iter, "xatol": 1e-10, "fatol": 1e-10, "initial_simplex": simplex},
        )
        iters = int(res.nit)
        if -res.fun > j_best:
            j_best = float(-res.fun)
            theta, phi = float(res.x[0]), float(res.x[1])

    return DiscordEstimate(
        value=info - j_best,
        j_value=j_best,
        mutual_info=info,
        best_direction=direction(theta, phi),
        theta=theta,
        phi=phi,
        side="AB"[k],
        grid_points=grid_n * grid_n,
        refine_iterations=iters,
    )
