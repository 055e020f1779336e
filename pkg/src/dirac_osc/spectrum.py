"""Dirac oscillator spectrum in natural units (hbar = m = c = 1).

With these units the rest frequency is ``omega_0 = 1``, the oscillator
frequency is ``omega = r`` and the oscillator length is ``1/sqrt(r)``.
Half-integer angular momenta are carried as doubled integers (``two_j``).
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError, NoPartnerError

OMEGA_0 = 1.0


class Branch(Enum):
    LOWER_L = "l=j-1/2"
    UPPER_L = "l=j+1/2"


@dataclass(frozen=True)
class LevelLabel:
    """Oscillator level ``|n l j>`` with ``two_j = 2j``."""

    n: int
    l: int
    two_j: int

    def __post_init__(self):
        if self.n < 0 or self.l < 0 or self.two_j < 1:
            raise DomainError(f"negative quantum number in {self}")
        if self.two_j % 2 != 1:
            raise DomainError(f"2j must be odd, got {self.two_j}")
        if abs(2 * self.l - self.two_j) != 1:
            raise DomainError(f"|j - l| must be 1/2, got l={self.l}, j={self.two_j}/2")
        if self.n < self.l or (self.n - self.l) % 2:
            raise DomainError(f"n - l must be even and non-negative, got n={self.n}, l={self.l}")

    @property
    def j(self) -> float:
        return self.two_j / 2

    @property
    def branch(self) -> Branch:
        return Branch.LOWER_L if 2 * self.l == self.two_j - 1 else Branch.UPPER_L

    @classmethod
    def stretched(cls, l: int) -> "LevelLabel":
        """The ``n = l, j = l + 1/2`` ground-family level."""
        return cls(l, l, 2 * l + 1)

    @classmethod
    def spin_down_partner(cls, l: int) -> "LevelLabel":
        """The ``n = l, j = l - 1/2`` level coupled to spin-down stretched waves."""
        if l < 1:
            raise DomainError("j = l - 1/2 requires l >= 1")
        return cls(l, l, 2 * l - 1)


def _a_factor(label: LevelLabel) -> int:
    # doubled arithmetic: 2(n -+ j) = 2n -+ two_j
    if label.branch is Branch.LOWER_L:
        return 2 * label.n - label.two_j + 1
    return 2 * label.n + label.two_j + 3


def energy(label: LevelLabel, r: float) -> float:
    """Energy ``sqrt(r A + 1)`` of the large component labelled ``label``."""
    if r <= 0:
        raise DomainError(f"r must be positive, got {r}")
    return float(np.sqrt(r * _a_factor(label) + 1.0))


def lower_energy(label: LevelLabel, r: float) -> float:
    """Energy of a small-component level ``|n' l' j'>``.

    Obtained from the squared equation for the small component, where the
    spin-orbit term and constant shift change sign. The resulting factor is
    ``2(n'+j')+5`` for ``l' = j'-1/2`` and ``2(n'-j')+3`` for ``l' = j'+1/2``.
    """
    if r <= 0:
        raise DomainError(f"r must be positive, got {r}")
    if label.branch is Branch.LOWER_L:
        a = 2 * label.n + label.two_j + 5
    else:
        a = 2 * label.n - label.two_j + 3
    return float(np.sqrt(r * a + 1.0))


def partner_labels(label: LevelLabel) -> LevelLabel:
    """Small-component partner ``(n-1, l+-1, j)`` of a large-component level."""
    if _a_factor(label) == 0:
        raise NoPartnerError(f"{label} belongs to the ground family; its small component vanishes")
    if label.branch is Branch.LOWER_L:
        return LevelLabel(label.n - 1, label.l + 1, label.two_j)
    return LevelLabel(label.n - 1, label.l - 1, label.two_j)


@dataclass(frozen=True)
class SpectralCoefficients:
    """Frequencies of the ``j = l - 1/2`` partner of a stretched wave.

    Fields accept scalars or arrays broadcast over ``l``.
    """

    E_minus: np.ndarray | float
    omega_l: np.ndarray | float
    a_l: np.ndarray | float
    omega_0: float = OMEGA_0


def spectral_coefficients(l, r: float) -> SpectralCoefficients:
    if r <= 0:
        raise DomainError(f"r must be positive, got {r}")
    l = np.asarray(l)
    if np.any(l < 0):
        raise DomainError("l must be non-negative")
    x = 2.0 * r * (2 * l + 1)
    e_minus = np.sqrt(1.0 + x)
    a_l = np.sqrt(x / (1.0 + x))
    if e_minus.ndim == 0:
        return SpectralCoefficients(float(e_minus), float(e_minus), float(a_l))
    return SpectralCoefficients(e_minus, e_minus, a_l)


def nonrel_energy(l, r: float):
    """Nonrelativistic ``j = l - 1/2`` energy ``omega (2l + 1)``; the ``j+`` partner sits at 0."""
    return r * (2 * np.asarray(l) + 1)


def linearized_omega(l, r: float):
    """First-order expansion ``omega_0 + omega (2l+1)`` of ``omega_l``.

    Diagnostic only: it explains the two counter-rotating waves at angular
    velocity ``2 omega`` but is never used to propagate states.
    """
    return OMEGA_0 + r * (2 * np.asarray(l) + 1)


def nonrel_period(r: float) -> float:
    return 2.0 * np.pi / r
