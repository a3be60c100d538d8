"""Pullback of the Fubini-Study tensor onto local-unitary orbits.

For a fiducial pure state ``psi`` and Hermitian generators ``X_1 .. X_m`` the
coefficient matrix is the quantum covariance

    kappa_jk = <psi|X_j X_k|psi> - <psi|X_j|psi> <psi|X_k|psi>

which splits as ``kappa = eta + i * omega`` with ``eta = Re(kappa)`` symmetric
and ``omega = Im(kappa)`` antisymmetric.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .errors import DomainError
from .qcore import (
    PAULIS,
    DensityOperator,
    GeneratorSet,
    PureState,
    as_generator_set,
    is_hermitian,
    pauli_generators,
    schmidt_state,
    unitary_exp,
)

RANK_TOL = 1e-9


def _readonly(a):
    a = np.array(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class PullbackTensor:
    """Coefficients of the pulled-back Hermitian tensor.

    Attributes
    ----------
    kappa : ndarray, shape (m, m), complex
        Hermitian coefficient matrix.
    eta : ndarray, shape (m, m), real
        Symmetric part ``Re(kappa)``.
    omega : ndarray, shape (m, m), real
        Antisymmetric part ``Im(kappa)``.
    lam : float or None
        Schmidt parameter of the fiducial state, ``None`` for custom states.
    """

    kappa: np.ndarray
    eta: np.ndarray
    omega: np.ndarray
    lam: Optional[float] = None

    @property
    def size(self) -> int:
        return self.kappa.shape[0]


class OmegaBlocks(NamedTuple):
    block_a: np.ndarray
    block_b: np.ndarray
    cross: np.ndarray


def compute_pullback(state, gens=None, lam: Optional[float] = None) -> PullbackTensor:
    """Pullback tensor of ``state`` along the orbit generated by ``gens``.

    Parameters
    ----------
    state : PureState
        Normalized fiducial state.
    gens : GeneratorSet or sequence of ndarray, optional
        Hermitian generators; the six local Pauli generators by default.
    lam : float, optional
        Schmidt parameter recorded on the result.

    Returns
    -------
    PullbackTensor
    """
    if not isinstance(state, PureState):
        state = PureState(state)
    gens = pauli_generators() if gens is None else as_generator_set(gens)
    if gens.dim != state.dim:
        raise DomainError(f"generator dimension {gens.dim} does not match state dimension {state.dim}")
    psi = state.amplitudes
    # columns X_k |psi>
    xpsi = np.stack([g @ psi for g in gens], axis=1)
    second = xpsi.conj().T @ xpsi
    first = psi.conj() @ xpsi
    kappa = second - np.outer(first.conj(), first)
    eta, omega = decompose(kappa)
    return PullbackTensor(_readonly(kappa), eta, omega, lam)


def schmidt_pullback(lam: float) -> PullbackTensor:
    return compute_pullback(schmidt_state(lam), pauli_generators(), lam=float(lam))


def decompose(kappa):
    """Split a Hermitian matrix into ``(Re, Im)`` parts."""
    kappa = np.asarray(kappa, dtype=complex)
    if not is_hermitian(kappa):
        raise DomainError("kappa must be Hermitian")
    return _readonly(kappa.real), _readonly(kappa.imag)


def fd_pullback_oracle(state, gens=None, h: float = 1e-4) -> np.ndarray:
    """Finite-difference Fubini-Study pullback along one-parameter subgroups.

    Each orbit tangent is the central difference
    ``(exp(i h X_j) psi - exp(-i h X_j) psi) / (2h)`` and the result is the
    projective Hermitian form ``<v_j|v_k> - <v_j|psi><psi|v_k>`` on those
    tangents. Agrees with :func:`compute_pullback` to ``O(h**2)``.
    """
    if not h > 0:
        raise DomainError(f"step must be positive, got {h!r}")
    if not isinstance(state, PureState):
        state = PureState(state)
    gens = pauli_generators() if gens is None else as_generator_set(gens)
    if gens.dim != state.dim:
        raise DomainError(f"generator dimension {gens.dim} does not match state dimension {state.dim}")
    psi = state.amplitudes
    tangents = np.stack(
        [(unitary_exp(g, h) @ psi - unitary_exp(g, -h) @ psi) / (2.0 * h) for g in gens],
        axis=1,
    )
    overlap = psi.conj() @ tangents
    return tangents.conj().T @ tangents - np.outer(overlap.conj(), overlap)


def eta_rank(eta, tol: float = RANK_TOL) -> int:
    """Number of singular values above ``tol`` times the largest one."""
    sv = np.linalg.svd(np.asarray(eta, dtype=float), compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    return int(np.count_nonzero(sv > tol * sv[0]))


def omega_blocks(omega) -> OmegaBlocks:
    omega = np.asarray(omega, dtype=float)
    if omega.shape != (6, 6):
        raise DomainError(f"expected a 6x6 matrix, got {omega.shape}")
    return OmegaBlocks(
        _readonly(omega[:3, :3]),
        _readonly(omega[3:, 3:]),
        _readonly(omega[:3, 3:]),
    )


def reduced_omega_block(rho_reduced) -> np.ndarray:
    """``Im tr(rho s_j s_k)`` for a single-qubit state, ``j, k = 1..3``."""
    m = rho_reduced.matrix if isinstance(rho_reduced, DensityOperator) else np.asarray(rho_reduced)
    return np.array([[np.trace(m @ a @ b).imag for b in PAULIS] for a in PAULIS])


__all__ = [
    "PullbackTensor", "OmegaBlocks", "GeneratorSet", "compute_pullback",
    "schmidt_pullback", "decompose", "fd_pullback_oracle", "eta_rank",
    "omega_blocks", "reduced_omega_block", "RANK_TOL",
]
