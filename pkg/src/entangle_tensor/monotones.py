"""Invariants built from inner products on the pulled-back tensor fields.

The invariant 1-forms are orthonormal, so the inner product of two covariant
tensors is the Frobenius pairing of their coefficient arrays. On ``n``-fold
tensor powers that pairing factorizes into the ``n``-th power of the order-two
value, which gives

* ``epsilon_n = (<eta|eta> / 12) ** n``  (entanglement monotones)
* ``mu_n = (<omega|omega> / 4) ** n``   (purity monotones)

Symmetrized powers ``eta v ... v eta`` pair through permanents of
Kronecker-delta Gram matrices; :func:`sym_inner_closed` evaluates the same
quantity from the spectrum of ``eta``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, Sequence, Tuple

import numpy as np

from .errors import DomainError, ResourceError
from .permanent import permanent_batch
from .pullback import schmidt_pullback

ETA_NORMALIZATION = 12  # twice the dimension of SU(2) x SU(2)
OMEGA_NORMALIZATION = 4  # dimension of S^2 x S^2
BRUTEFORCE_BUDGET = 10 ** 8
SYM_BRUTEFORCE_MAX_N = 2
SYM_CLOSED_MAX_N = 8
PSD_TOL = 1e-10

# Symmetric-power invariants for n = 1..3 as (prefactor, coefficients in
# descending powers of lambda).
SYM_REFERENCE = {
    1: (Fraction(1), (16, -32, 12, 4, 1)),
    2: (Fraction(2, 27), (1536, -6144, 8960, -5376, 880, 32, 72, 40, 3)),
    3: (
        Fraction(8, 135),
        (20480, -122880, 304128, -394240, 277632, -96768, 11648, -384, 136, 112, 108, 28, 1),
    ),
}
# Ratio of the spectral sum S_n to the reference polynomial (6 ** n).
SYM_SCALE = {1: 4, 2: 36, 3: 216}


def _check_lambda(lam):
    lam = float(lam)
    if not 0.0 <= lam <= 1.0:
        raise DomainError(f"Schmidt parameter must lie in [0, 1], got {lam!r}")
    return lam


def _check_order(n, name="n"):
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError(f"{name} must be a positive integer, got {n!r}")
    return int(n)


def frobenius_inner(part) -> float:
    """``sum_jk |A_jk|**2``, the pairing of a tensor with itself."""
    a = np.asarray(part)
    return float(np.sum(np.abs(a) ** 2))


def epsilon_n(lam: float, n: int = 1) -> float:
    """Entanglement monotone from the ``n``-th tensor power of ``eta``."""
    lam = _check_lambda(lam)
    n = _check_order(n)
    return (frobenius_inner(schmidt_pullback(lam).eta) / ETA_NORMALIZATION) ** n


def mu_n(lam: float, n: int = 1) -> float:
    """Purity monotone from the ``n``-th tensor power of ``omega``.

    ``omega`` is taken as the real matrix ``Im(kappa)``, so the value is
    nonnegative without an explicit ``(-1)**n`` factor.
    """
    lam = _check_lambda(lam)
    n = _check_order(n)
    return (frobenius_inner(schmidt_pullback(lam).omega) / OMEGA_NORMALIZATION) ** n


def epsilon_polynomial(lam, n: int = 1):
    """Closed form ``(16l^4/3 - 32l^3/3 + 4l^2 + 4l/3 + 1/3) ** n``.

    Accepts floats, arrays or :class:`fractions.Fraction` (exact evaluation).
    """
    if isinstance(lam, Fraction):
        base = (Fraction(16, 3) * lam ** 4 - Fraction(32, 3) * lam ** 3 + 4 * lam ** 2
                + Fraction(4, 3) * lam + Fraction(1, 3))
        return base ** n
    lam = np.asarray(lam, dtype=float)
    base = (((16.0 / 3.0 * lam - 32.0 / 3.0) * lam + 4.0) * lam + 4.0 / 3.0) * lam + 1.0 / 3.0
    return base ** n


def mu_polynomial(lam, n: int = 1):
    """Closed form ``(4l^2 - 4l + 1) ** n``; exact for Fraction input."""
    if isinstance(lam, Fraction):
        return (4 * lam ** 2 - 4 * lam + 1) ** n
    lam = np.asarray(lam, dtype=float)
    return ((4.0 * lam - 4.0) * lam + 1.0) ** n


def tensor_power_inner_bruteforce(coeffs, n: int, budget: int = BRUTEFORCE_BUDGET) -> float:
    """Inner product of the ``n``-th tensor power by explicit index enumeration.

    The order-``2n`` coefficient array ``T[j1..j2n] = prod_r C[j(2r-1), j(2r)]``
    is materialized one leading index pair at a time and ``sum |T|**2`` taken
    over every multi-index.
    """
    c = np.asarray(coeffs)
    n = _check_order(n)
    if c.ndim != 2 or c.shape[0] != c.shape[1]:
        raise DomainError(f"coefficients must be a square matrix, got {c.shape}")
    m = c.shape[0]
    if m ** (2 * n) > budget:
        raise ResourceError(f"{m}^{2 * n} index tuples exceed the budget of {budget}")
    rest = np.ones(())
    for _ in range(n - 1):
        rest = np.multiply.outer(rest, c)
    total = 0.0
    for j1 in range(m):
        for j2 in range(m):
            block = c[j1, j2] * rest
            total += float(np.sum(np.abs(block) ** 2))
    return total


@dataclass(frozen=True)
class EtaSpectrum:
    eigenvalues: np.ndarray

    def __post_init__(self):
        ev = np.sort(np.asarray(self.eigenvalues, dtype=float))[::-1].copy()
        if ev.size and ev.min() < -PSD_TOL:
            raise DomainError(f"eta is not positive semidefinite (min eigenvalue {ev.min()!r})")
        ev.setflags(write=False)
        object.__setattr__(self, "eigenvalues", ev)


def eta_spectrum(eta) -> EtaSpectrum:
    eta = np.asarray(eta, dtype=float)
    return EtaSpectrum(np.linalg.eigvalsh(0.5 * (eta + eta.T)))


def _nonzero_tuples(eta, n):
    """Index tuples of length 2n with nonzero ``prod eta`` and their values."""
    pairs = [(j, k, eta[j, k]) for j in range(eta.shape[0]) for k in range(eta.shape[1]) if eta[j, k] != 0.0]
    idx, vals = [], []
    for combo in product(pairs, repeat=n):
        idx.append([i for (j, k, _) in combo for i in (j, k)])
        vals.append(math.prod(v for (_, _, v) in combo))
    return np.array(idx, dtype=int).reshape(-1, 2 * n), np.array(vals, dtype=float)


def sym_inner_bruteforce(eta, n: int, chunk: int = 200_000) -> float:
    """Symmetric-power inner product by enumeration with permanents.

    Sums ``T_j T_k per(delta(j_r, k_s)) / (2n)!`` over all index tuples ``j``,
    ``k`` of length ``2n``. Tuples whose coefficient product is exactly zero
    are skipped.
    """
    n = _check_order(n)
    if n > SYM_BRUTEFORCE_MAX_N:
        raise ResourceError(f"brute-force symmetric product limited to n <= {SYM_BRUTEFORCE_MAX_N}")
    eta = np.asarray(eta, dtype=float)
    idx, vals = _nonzero_tuples(eta, n)
    if len(vals) == 0:
        return 0.0
    total = 0.0
    # pair every tuple j with every tuple k, in chunks of rows
    rows_per_chunk = max(1, chunk // len(vals))
    for start in range(0, len(vals), rows_per_chunk):
        j_idx = idx[start:start + rows_per_chunk]
        j_val = vals[start:start + rows_per_chunk]
        gram = (j_idx[:, None, :, None] == idx[None, :, None, :]).astype(float)
        pers = permanent_batch(gram.reshape(-1, 2 * n, 2 * n)).reshape(len(j_val), len(vals))
        total += float(j_val @ pers @ vals)
    return total / math.factorial(2 * n)


def _compositions(n, parts):
    if parts == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _compositions(n - first, parts - 1):
            yield (first,) + rest


def sym_inner_closed(spectrum, n: int) -> float:
    """Symmetric-power inner product from the eigenvalues of ``eta``.

    In the eigenbasis only tuples ``(v1, v1, ..., vn, vn)`` carry weight.
    For multiplicities ``m_v`` (summing to ``n``) the Gram permanent is
    ``prod (2 m_v)!`` when both multisets agree and zero otherwise, so

        S_n = sum_m (n! / prod m_v!)**2 prod (2 m_v)! d_v**(2 m_v) / (2n)!
    """
    n = _check_order(n)
    if n > SYM_CLOSED_MAX_N:
        raise ResourceError(f"closed-form symmetric product limited to n <= {SYM_CLOSED_MAX_N}")
    d = spectrum.eigenvalues if isinstance(spectrum, EtaSpectrum) else np.asarray(spectrum, dtype=float)
    fact = math.factorial
    total = 0.0
    for mult in _compositions(n, len(d)):
        weight = (fact(n) // math.prod(fact(m) for m in mult)) ** 2 * math.prod(fact(2 * m) for m in mult)
        total += weight * math.prod(float(dv) ** (2 * m) for dv, m in zip(d, mult) if m)
    return total / fact(2 * n)


def sym_invariant(lam: float, n: int) -> float:
    lam = _check_lambda(lam)
    return sym_inner_closed(eta_spectrum(schmidt_pullback(lam).eta), n)


def sym_reference_polynomial(n: int, lam):
    """Tabulated symmetric-power invariant polynomials for ``n = 1, 2, 3``."""
    if n not in SYM_REFERENCE:
        raise DomainError(f"reference polynomial exists only for n in {{1, 2, 3}}, got {n!r}")
    pref, coeffs = SYM_REFERENCE[n]
    if isinstance(lam, Fraction):
        acc = Fraction(0)
        for c in coeffs:
            acc = acc * lam + c
        return pref * acc
    lam = np.asarray(lam, dtype=float)
    if np.any((lam < 0) | (lam > 1)):
        raise DomainError("Schmidt parameter must lie in [0, 1]")
    return float(pref) * np.polyval(coeffs, lam)


@dataclass
class MonotoneTable:
    """Monotone values indexed by ``(kind, n, lambda)``."""

    lambdas: Tuple[float, ...]
    orders: Tuple[int, ...]
    values: Dict[Tuple[str, int, float], float] = field(default_factory=dict)

    def rows(self, kinds: Sequence[str] = ("epsilon", "mu", "sym")):
        for lam in self.lambdas:
            for kind in kinds:
                for n in self.orders:
                    key = (kind, n, lam)
                    if key in self.values:
                        yield lam, kind, n, self.values[key]


def monotone_table(lambdas: Iterable[float], orders: Iterable[int],
                   kinds: Sequence[str] = ("epsilon", "mu", "sym")) -> MonotoneTable:
    """Tabulate monotones, computing one pullback per grid point."""
    lambdas = tuple(float(x) for x in lambdas)
    orders = tuple(_check_order(n) for n in orders)
    unknown = set(kinds) - {"epsilon", "mu", "sym"}
    if unknown:
        raise DomainError(f"unknown monotone kinds: {sorted(unknown)}")
    table = MonotoneTable(lambdas, orders)
    for lam in lambdas:
        pb = schmidt_pullback(_check_lambda(lam))
        e1 = frobenius_inner(pb.eta) / ETA_NORMALIZATION
        m1 = frobenius_inner(pb.omega) / OMEGA_NORMALIZATION
        spec = eta_spectrum(pb.eta)
        for n in orders:
            if "epsilon" in kinds:
                table.values[("epsilon", n, lam)] = e1 ** n
            if "mu" in kinds:
                table.values[("mu", n, lam)] = m1 ** n
            if "sym" in kinds:
                table.values[("sym", n, lam)] = sym_inner_closed(spec, n)
    return table


__all__ = [
    "ETA_NORMALIZATION", "OMEGA_NORMALIZATION", "SYM_SCALE", "EtaSpectrum",
    "MonotoneTable", "frobenius_inner", "epsilon_n", "mu_n", "epsilon_polynomial",
    "mu_polynomial", "tensor_power_inner_bruteforce", "eta_spectrum",
    "sym_inner_bruteforce", "sym_inner_closed", "sym_invariant",
    "sym_reference_polynomial", "monotone_table",
]
