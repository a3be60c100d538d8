"""Small dense complex linear algebra for two-qubit pure states.

Matrices are plain ``numpy`` arrays. States, density operators and generator
sets are thin frozen wrappers whose arrays are marked read-only, so values can
be shared freely.

Basis ordering is ``|00>, |01>, |10>, |11>`` with the left tensor factor
being subsystem A.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import DomainError

HERMITIAN_TOL = 1e-12
NORM_TOL = 1e-12

SIGMA_0 = np.eye(2, dtype=complex)
SIGMA_1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_3 = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_1, SIGMA_2, SIGMA_3)

for _m in (SIGMA_0, *PAULIS):
    _m.setflags(write=False)


def _frozen(a, dtype=complex):
    arr = np.array(a, dtype=dtype)
    arr.setflags(write=False)
    return arr


def is_hermitian(a, tol=HERMITIAN_TOL):
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        return False
    return bool(np.max(np.abs(a - a.conj().T), initial=0.0) < tol)


@dataclass(frozen=True)
class PureState:
    """Normalized state vector.

    Parameters
    ----------
    amplitudes : array_like
        Complex amplitudes. Must have unit norm to within ``1e-12``.
    """

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = _frozen(self.amplitudes).reshape(-1)
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) >= NORM_TOL:
            raise DomainError(f"state is not normalized (norm^2 = {norm!r})")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    @classmethod
    def normalized(cls, amplitudes) -> "PureState":
        amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
        norm = np.linalg.norm(amps)
        if norm == 0:
            raise DomainError("cannot normalize the zero vector")
        return cls(amps / norm)


@dataclass(frozen=True)
class DensityOperator:
    matrix: np.ndarray

    def __post_init__(self):
        m = _frozen(self.matrix)
        if not is_hermitian(m):
            raise DomainError("density operator must be Hermitian")
        if abs(np.trace(m) - 1.0) >= 1e-12:
            raise DomainError("density operator must have unit trace")
        if np.linalg.eigvalsh(m).min() < -1e-12:
            raise DomainError("density operator must be positive semidefinite")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class GeneratorSet:
    """Ordered Hermitian generators acting on a common Hilbert space."""

    generators: tuple
    labels: tuple = field(default=())

    def __post_init__(self):
        gens = tuple(_frozen(g) for g in self.generators)
        if not gens:
            raise DomainError("generator set is empty")
        dim = gens[0].shape[0]
        for k, g in enumerate(gens):
            if g.shape != (dim, dim):
                raise DomainError(f"generator {k} has shape {g.shape}, expected {(dim, dim)}")
            if not is_hermitian(g):
                raise DomainError(f"generator {k} is not Hermitian")
        labels = tuple(self.labels) or tuple(f"X{k + 1}" for k in range(len(gens)))
        if len(labels) != len(gens):
            raise DomainError("one label per generator is required")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "labels", labels)

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __getitem__(self, k):
        return self.generators[k]

    @property
    def dim(self) -> int:
        return self.generators[0].shape[0]


def schmidt_state(lam: float) -> PureState:
    """Return ``sqrt(lam)|00> + sqrt(1 - lam)|11>``.

    Raises
    ------
    DomainError
        If ``lam`` is not in ``[0, 1]``.
    """
    lam = float(lam)
    if not 0.0 <= lam <= 1.0:
        raise DomainError(f"Schmidt parameter must lie in [0, 1], got {lam!r}")
    return PureState(np.array([np.sqrt(lam), 0.0, 0.0, np.sqrt(1.0 - lam)], dtype=complex))


def kron(a, b) -> np.ndarray:
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


@lru_cache(maxsize=None)
def pauli_generators() -> GeneratorSet:
    """Local generators ``s_k x 1`` then ``1 x s_k`` for ``k = 1, 2, 3``."""
    gens = [kron(s, SIGMA_0) for s in PAULIS] + [kron(SIGMA_0, s) for s in PAULIS]
    labels = ["s1.s0", "s2.s0", "s3.s0", "s0.s1", "s0.s2", "s0.s3"]
    return GeneratorSet(tuple(gens), tuple(labels))


def _amplitudes(state) -> np.ndarray:
    if isinstance(state, PureState):
        return state.amplitudes
    return np.asarray(state, dtype=complex).reshape(-1)


def expectation(state, op) -> complex:
    """``<psi|op|psi>`` for a pure state."""
    psi = _amplitudes(state)
    op = np.asarray(op)
    if op.shape != (psi.shape[0], psi.shape[0]):
        raise DomainError(f"operator shape {op.shape} does not match state dimension {psi.shape[0]}")
    return complex(np.vdot(psi, op @ psi))


def density(state) -> DensityOperator:
    psi = _amplitudes(state)
    return DensityOperator(np.outer(psi, psi.conj()))


def partial_trace(rho, keep: str) -> DensityOperator:
    """Reduce a two-qubit density operator to subsystem ``"A"`` or ``"B"``."""
    m = rho.matrix if isinstance(rho, DensityOperator) else np.asarray(rho, dtype=complex)
    if m.shape != (4, 4):
        raise DomainError(f"partial trace needs a 2x2 bipartite operator, got shape {m.shape}")
    t = m.reshape(2, 2, 2, 2)
    if keep == "A":
        red = np.einsum("ijkj->ik", t)
    elif keep == "B":
        red = np.einsum("jijk->ik", t)
    else:
        raise DomainError(f"subsystem must be 'A' or 'B', got {keep!r}")
    return DensityOperator(red)


def purity(rho) -> float:
    m = rho.matrix if isinstance(rho, DensityOperator) else np.asarray(rho)
    return float(np.trace(m @ m).real)


def reduced_state(lam: float, keep: str = "A") -> DensityOperator:
    return partial_trace(density(schmidt_state(lam)), keep)


def unitary_exp(hermitian, t: float) -> np.ndarray:
    """``exp(i t H)`` for Hermitian ``H`` via its eigendecomposition."""
    w, v = np.linalg.eigh(np.asarray(hermitian, dtype=complex))
    return (v * np.exp(1j * t * w)) @ v.conj().T


def as_generator_set(gens) -> GeneratorSet:
    if isinstance(gens, GeneratorSet):
        return gens
    return GeneratorSet(tuple(gens))


__all__ = [
    "SIGMA_0", "SIGMA_1", "SIGMA_2", "SIGMA_3", "PAULIS",
    "PureState", "DensityOperator", "GeneratorSet",
    "schmidt_state", "kron", "pauli_generators", "expectation", "density",
    "partial_trace", "purity", "reduced_state", "unitary_exp", "is_hermitian",
    "as_generator_set",
]

