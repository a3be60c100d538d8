"""Quantum Fisher information and measurement-count curves.

For a one-parameter pure-state family the number of measurements needed to
estimate a measure ``e(lambda)`` with relative error ``delta`` is

    M = 1 / (e**2 * delta**2 * Ht),   Ht = H(lambda) * (d lambda / d e)**2,

with ``H(lambda) = 1 / (lambda (1 - lambda))`` the quantum Fisher information
of the Schmidt family. Curves are evaluated parametrically in ``lambda`` so no
inverse branch has to be chosen.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq

from . import monotones
from .errors import BranchError, DomainError, SingularPointError
from .qcore import PureState, partial_trace, density, purity, schmidt_state

CLASSIC_TAGS = ("linear-entropy", "negativity", "purity")
ORDERED_TAGS = ("epsilon", "mu")
DERIVATIVE_REL_STEP = 1e-4


@dataclass(frozen=True)
class MeasureKind:
    """A measure of entanglement or purity, optionally with a tensor order."""

    tag: str
    n: Optional[int] = None

    def __post_init__(self):
        if self.tag in CLASSIC_TAGS:
            if self.n is not None:
                raise DomainError(f"{self.tag} takes no order")
        elif self.tag in ORDERED_TAGS:
            if self.n is None or isinstance(self.n, bool) or int(self.n) != self.n or self.n < 1:
                raise DomainError(f"{self.tag} needs an order n >= 1, got {self.n!r}")
            object.__setattr__(self, "n", int(self.n))
        else:
            raise DomainError(f"unknown measure {self.tag!r}")

    @classmethod
    def parse(cls, text: str) -> "MeasureKind":
        """Parse ``purity``, ``epsilon:2``, ``mu3`` or ``mu(3)``."""
        m = re.fullmatch(r"\s*([a-z-]+?)\s*(?:[:(]?\s*(\d+)\s*\)?)?\s*", text.lower())
        if not m:
            raise DomainError(f"cannot parse measure {text!r}")
        tag, n = m.group(1), m.group(2)
        return cls(tag, int(n) if n is not None else None)

    @property
    def label(self) -> str:
        return self.tag if self.n is None else f"{self.tag}({self.n})"

    @property
    def value_range(self) -> Tuple[float, float]:
        if self.tag == "purity":
            return 0.5, 1.0
        if self.tag == "epsilon":
            return 3.0 ** -self.n, 1.0
        return 0.0, 1.0


def linear_entropy(lam: float) -> float:
    """Normalized linear entropy ``2 (1 - tr rho_A**2)`` of the Schmidt state."""
    return 2.0 * (1.0 - purity(partial_trace(density(schmidt_state(lam)), "A")))


def measure_value(kind: MeasureKind, lam: float) -> float:
    if kind.tag == "linear-entropy":
        return linear_entropy(lam)
    if kind.tag == "negativity":
        return float(np.sqrt(max(linear_entropy(lam), 0.0)))
    if kind.tag == "purity":
        return purity(partial_trace(density(schmidt_state(lam)), "A"))
    if kind.tag == "epsilon":
        return monotones.epsilon_n(lam, kind.n)
    return monotones.mu_n(lam, kind.n)


def qfi_schmidt(lam: float) -> float:
    """``1 / (lam (1 - lam))``; diverges at the separable endpoints."""
    lam = float(lam)
    if not 0.0 <= lam <= 1.0:
        raise DomainError(f"Schmidt parameter must lie in [0, 1], got {lam!r}")
    if lam in (0.0, 1.0):
        raise SingularPointError("quantum Fisher information diverges at lambda in {0, 1}")
    return 1.0 / (lam * (1.0 - lam))


def _amps(state) -> np.ndarray:
    if isinstance(state, PureState):
        return state.amplitudes
    return np.asarray(state, dtype=complex).reshape(-1)


def _check_fd_point(lam, h):
    if not h > 0:
        raise DomainError(f"step must be positive, got {h!r}")
    if lam - h < 0.0 or lam + h > 1.0:
        raise DomainError(f"lambda +/- h = {lam - h!r}, {lam + h!r} leaves [0, 1]")


def qfi_pure_fd(family: Callable, lam: float, h: float = 1e-5) -> float:
    """``4 (<d psi|d psi> + <psi|d psi>**2)`` with a central-difference derivative.

    Since ``<psi|d psi>`` is purely imaginary for a normalized family, the
    squared overlap equals ``-|<psi|d psi>|**2`` and the value is unchanged by a
    parameter-dependent global phase.
    """
    _check_fd_point(lam, h)
    psi = _amps(family(lam))
    dpsi = (_amps(family(lam + h)) - _amps(family(lam - h))) / (2.0 * h)
    value = 4.0 * (np.vdot(dpsi, dpsi) + np.vdot(psi, dpsi) ** 2)
    return float(value.real)


def _projector(state) -> np.ndarray:
    psi = _amps(state)
    return np.outer(psi, psi.conj())


def _sld(family, lam, h):
    _check_fd_point(lam, h)
    rho = _projector(family(lam))
    drho = (_projector(family(lam + h)) - _projector(family(lam - h))) / (2.0 * h)
    return rho, drho, 2.0 * drho


def sld_check(family: Callable, lam: float, h: float = 1e-5) -> float:
    """``tr(rho L**2)`` with the pure-state logarithmic derivative ``L = 2 d rho``."""
    rho, _, sld = _sld(family, lam, h)
    return float(np.trace(rho @ sld @ sld).real)


def sld_residual(family: Callable, lam: float, h: float = 1e-5) -> float:
    """Largest entry of ``d rho - (L rho + rho L) / 2``."""
    rho, drho, sld = _sld(family, lam, h)
    return float(np.max(np.abs(drho - 0.5 * (sld @ rho + rho @ sld))))


def measurements_closed(kind: MeasureKind, value: float, delta: float = 1.0) -> float:
    """Measurement count as an explicit function of the measure value.

    linear entropy ``4 (1 - e) / e``, negativity ``(1 - e**2) / e**2``,
    purity ``-4 + 6/p - 2/p**2``, and ``4 n**2 (1 - mu**(1/n)) / mu**(1/n)``
    for the purity monotones, each divided by ``delta**2``.
    """
    if not delta > 0:
        raise DomainError(f"delta must be positive, got {delta!r}")
    lo, hi = kind.value_range
    value = float(value)
    if not lo <= value <= hi:
        raise DomainError(f"{kind.label} value {value!r} outside [{lo}, {hi}]")
    if kind.tag == "purity":
        m = -4.0 + 6.0 / value - 2.0 / value ** 2
    elif kind.tag == "epsilon":
        raise DomainError("no closed form for epsilon monotones; use measurements_parametric")
    else:
        if value == 0.0:
            raise SingularPointError(f"{kind.label} measurement count diverges at 0")
        if kind.tag == "linear-entropy":
            m = 4.0 * (1.0 - value) / value
        elif kind.tag == "negativity":
            m = (1.0 - value ** 2) / value ** 2
        else:
            root = value ** (1.0 / kind.n)
            m = 4.0 * kind.n ** 2 * (1.0 - root) / root
    return m / delta ** 2


def measure_derivative(kind: MeasureKind, lam: float) -> float:
    dist = min(lam, 1.0 - lam)
    if lam != 0.5:
        dist = min(dist, abs(lam - 0.5))
    h = DERIVATIVE_REL_STEP * dist
    return (measure_value(kind, lam + h) - measure_value(kind, lam - h)) / (2.0 * h)


def transformed_qfi(kind: MeasureKind, lam: float) -> float:
    """Fisher information with respect to the measure, ``H (d lam / d e)**2``."""
    deriv = measure_derivative(kind, lam)
    if deriv == 0.0:
        raise SingularPointError(f"{kind.label} is stationary at lambda = {lam}")
    return qfi_schmidt(lam) / deriv ** 2


def measurement_at(kind: MeasureKind, lam: float, delta: float = 1.0) -> Tuple[float, float]:
    """``(measure value, measurement count)`` at one Schmidt parameter.

    Evaluated as ``(de/dlam)**2 / (e**2 delta**2 H)``, which stays finite at
    stationary points of the measure.
    """
    if not delta > 0:
        raise DomainError(f"delta must be positive, got {delta!r}")
    lam = float(lam)
    if not 0.0 < lam < 1.0:
        raise SingularPointError(f"lambda = {lam!r} is outside the open interval (0, 1)")
    value = measure_value(kind, lam)
    # mu(n) is zero at the Bell point analytically; the pipeline leaves round-off
    if value == 0.0 or (kind.tag == "mu" and lam == 0.5):
        raise SingularPointError(f"{kind.label} vanishes at lambda = {lam}")
    deriv = measure_derivative(kind, lam)
    return value, deriv ** 2 / (value ** 2 * delta ** 2 * qfi_schmidt(lam))


@dataclass(frozen=True)
class EstimationCurve:
    kind: MeasureKind
    delta: float
    points: Tuple[Tuple[float, float, float], ...]

    @property
    def measures(self) -> np.ndarray:
        return np.array([p[0] for p in self.points])

    @property
    def measurements(self) -> np.ndarray:
        return np.array([p[1] for p in self.points])

    @property
    def lambdas(self) -> np.ndarray:
        return np.array([p[2] for p in self.points])


def measurements_parametric(kind: MeasureKind, delta: float, lambdas: Sequence[float]) -> EstimationCurve:
    """Measurement-count curve over a grid in ``(0, 0.5]``.

    Raises
    ------
    SingularPointError
        If the grid touches ``lambda = 0`` or a zero of the measure.
    BranchError
        If the measure is not strictly monotonic over the grid.
    """
    if not delta > 0:
        raise DomainError(f"delta must be positive, got {delta!r}")
    lams = np.asarray(lambdas, dtype=float)
    if lams.size == 0:
        raise DomainError("empty lambda grid")
    if np.any(lams <= 0.0):
        raise SingularPointError("grid touches the separable point lambda = 0")
    if np.any(lams > 0.5):
        raise DomainError("grid must lie in the canonical branch (0, 0.5]")
    points = tuple((*measurement_at(kind, lam, delta), float(lam)) for lam in lams)
    values = np.array([p[0] for p in points])
    steps = np.diff(values)
    if steps.size and not (np.all(steps > 0) or np.all(steps < 0)):
        raise BranchError(f"{kind.label} is not strictly monotonic on the grid")
    return EstimationCurve(kind, float(delta), points)


def _measure_polynomial(kind: MeasureKind, value: float) -> np.ndarray:
    """Coefficients (descending) of a polynomial whose roots solve measure = value."""
    if kind.tag == "linear-entropy":
        return np.array([-4.0, 4.0, -value])
    if kind.tag == "negativity":
        return np.array([-4.0, 4.0, -value ** 2])
    if kind.tag == "purity":
        return np.array([2.0, -2.0, 1.0 - value])
    root = value ** (1.0 / kind.n)
    if kind.tag == "epsilon":
        return np.array([16.0 / 3.0, -32.0 / 3.0, 4.0, 4.0 / 3.0, 1.0 / 3.0 - root])
    return np.array([4.0, -4.0, 1.0 - root])


def monotone_polynomial_roots(kind: MeasureKind, value: float) -> np.ndarray:
    """All complex roots ``lambda`` of ``measure(lambda) = value`` (unrestricted)."""
    lo, hi = kind.value_range
    if not lo <= value <= hi:
        raise DomainError(f"{kind.label} value {value!r} outside [{lo}, {hi}]")
    return np.roots(_measure_polynomial(kind, float(value)))


def invert_monotone_roots(kind: MeasureKind, value: float, tol: float = 1e-6) -> list:
    """Sorted real solutions in ``[0, 1]`` of ``measure(lambda) = value``.

    Polynomial roots are cleaned of round-off imaginary parts, merged when
    they coincide (tangent roots), polished by Newton steps, and combined with
    bracketed roots found by sign changes on a fine grid.
    """
    value = float(value)
    coeffs = _measure_polynomial(kind, value)
    roots = monotone_polynomial_roots(kind, value)
    cand = sorted(r.real for r in roots if abs(r.imag) < tol and -tol <= r.real <= 1.0 + tol)

    def f(x):
        return np.polyval(coeffs, x)

    grid = np.linspace(0.0, 1.0, 2001)
    fg = f(grid)
    for a, b, fa, fb in zip(grid[:-1], grid[1:], fg[:-1], fg[1:]):
        if fa == 0.0:
            cand.append(a)
        elif fa * fb < 0:
            cand.append(brentq(f, a, b, xtol=1e-15))
    if fg[-1] == 0.0:
        cand.append(1.0)
    cand.sort()

    dcoeffs = np.polyder(coeffs)
    merged = []
    for r in cand:
        if merged and abs(r - merged[-1][-1]) < tol:
            merged[-1].append(r)
        else:
            merged.append([r])
    out = []
    for cluster in merged:
        x = float(np.mean(cluster))
        for _ in range(3):
            d = np.polyval(dcoeffs, x)
            if abs(d) < 1e-6:
                break
            x -= f(x) / d
        out.append(float(min(max(x, 0.0), 1.0)))
    return out


__all__ = [
    "MeasureKind", "EstimationCurve", "linear_entropy", "measure_value",
    "qfi_schmidt", "qfi_pure_fd", "sld_check", "sld_residual",
    "measurements_closed", "measurement_at", "measurements_parametric",
    "transformed_qfi", "measure_derivative", "monotone_polynomial_roots",
    "invert_monotone_roots",
]
