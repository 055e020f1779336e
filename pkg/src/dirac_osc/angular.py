"""Angular-momentum coupling and the stretched orbital functions.

Spherical harmonics follow the Condon-Shortley convention. Only the orders
``m = l`` and ``m = l - 1`` are provided, evaluated through log-Gamma
normalizations so that ``l`` in the hundreds stays finite.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .errors import DomainError, UnsupportedOrderError

_LOG_4PI = np.log(4.0 * np.pi)
_LOG_2 = np.log(2.0)


@dataclass(frozen=True)
class SpinOrbitSplit:
    """Amplitudes of ``|l l l> x spin-down`` on ``j+ = l+1/2`` and ``j- = l-1/2``."""

    c_plus: float
    c_minus: float


def spin_orbit_split(l: int) -> SpinOrbitSplit:
    if l < 0:
        raise DomainError(f"l must be non-negative, got {l}")
    return SpinOrbitSplit(1.0 / np.sqrt(2 * l + 1), np.sqrt(2 * l / (2 * l + 1)))


def sgn_phase(l: int, l_prime: int, two_j: int) -> complex:
    """Relative phase between large and small components of an eigenspinor.

    ``-i`` when ``l' = l + 1 = j + 1/2`` and ``+i`` when ``l' = l - 1 = j - 1/2``.
    """
    if l_prime == l + 1 and 2 * l_prime == two_j + 1:
        return -1j
    if l_prime == l - 1 and 2 * l_prime == two_j - 1:
        return 1j
    raise DomainError(f"inconsistent (l, l', 2j) = ({l}, {l_prime}, {two_j})")


def _log_norm(l: int, m: int) -> float:
    # log of sqrt((2l+1)/4pi * (l-m)!/(l+m)!) * (2l-1)!!, with (2l-1)!! = (2l)!/(2^l l!)
    log_dfact = gammaln(2 * l + 1) - l * _LOG_2 - gammaln(l + 1)
    return 0.5 * (np.log(2 * l + 1) - _LOG_4PI + gammaln(l - m + 1) - gammaln(l + m + 1)) + log_dfact


def stretched_theta(l: int, m: int, theta) -> np.ndarray:
    """Real polar factor ``Theta`` with ``Y_l^m = Theta(theta) exp(i m phi)``."""
    if l < 0 or m not in (l, l - 1) or m < 0:
        raise UnsupportedOrderError(f"only m in {{l, l-1}} with m >= 0 supported, got l={l}, m={m}")
    theta = np.asarray(theta, dtype=float)
    sin_t = np.abs(np.sin(theta))
    with np.errstate(divide="ignore"):
        log_sin = np.log(sin_t)
    log_val = _log_norm(l, m) + m * log_sin if m > 0 else np.full_like(theta, _log_norm(l, m))
    mag = np.exp(log_val)
    # P_l^l = (-1)^l (2l-1)!! sin^l ; P_l^{l-1} = (-1)^{l-1} (2l-1)!! cos sin^{l-1}
    sign = -1.0 if m % 2 else 1.0
    if m == l - 1:
        return sign * mag * np.cos(theta)
    return sign * mag


def stretched_harmonic(l: int, m: int, theta, phi):
    """Orthonormal ``Y_l^m(theta, phi)`` for ``m`` in ``{l, l-1}``."""
    return stretched_theta(l, m, theta) * np.exp(1j * m * np.asarray(phi, dtype=float))


def radial_node_free(l: int, u):
    """Node-free oscillator radial function ``sqrt(2/Gamma(l+3/2)) u^l exp(-u^2/2)``.

    ``u`` is measured in oscillator lengths and the normalization is
    ``int_0^inf R^2 u^2 du = 1``.
    """
    u = np.asarray(u, dtype=float)
    if np.any(u < 0):
        raise DomainError("u must be non-negative")
    with np.errstate(divide="ignore"):
        log_u = np.log(u)
    log_pow = l * log_u if l > 0 else np.zeros_like(u)
    return np.exp(0.5 * (_LOG_2 - gammaln(l + 1.5)) + log_pow - 0.5 * u * u)
