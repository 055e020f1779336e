"""Closed-form time evolution of the circular packet and energy-sector projection.

Each sector evolves independently from ``t = 0``. The spin-up wave and the
``j+`` half of the spin-down wave sit at the rest energy (phase
``exp(-i omega_0 t)``); the ``j-`` half oscillates between large and small
components with frequency ``omega_l``. No time stepping is involved.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .angular import sgn_phase, spin_orbit_split
from .errors import ContractError
from .spectrum import OMEGA_0, nonrel_energy, spectral_coefficients
from .state import DiracState, Representation


def _split(l: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    split = [spin_orbit_split(int(k)) for k in l]
    return (np.array([s.c_plus for s in split]), np.array([s.c_minus for s in split]))


def _sgn(l: np.ndarray) -> np.ndarray:
    # small component of |l, j-=l-1/2> is |l-1, l-1, l-1>, i.e. l' = l - 1
    return np.array([sgn_phase(int(k), int(k) - 1, 2 * int(k) - 1) if k > 0 else 0j for k in l])


def _check_initial(state0: DiracState, rep: Representation) -> None:
    if state0.representation is not rep:
        raise ContractError(f"state is in {state0.representation.value} representation, expected {rep.value}")
    if state0.t != 0.0 or np.any(state0.B != 0) or np.any(state0.D != 0):
        raise ContractError("closed-form evolution starts from an initial (t = 0) circular state")


def _evolve_circular(state0: DiracState, t: float, p, q, d) -> DiracState:
    """Shared propagation given the ``j+`` phase ``p``, ``j-`` large-component factor
    ``q`` and small-component factor ``d`` (all arrays over ``l``)."""
    if t == 0:
        # c_plus^2 + c_minus^2 is 1 only to rounding; keep the identity exact
        return state0
    l = state0.l
    up, down = state0.A, state0.C
    c_plus, c_minus = _split(l)
    # |l l l> spin down = c_plus |j+> + c_minus |j->; project back onto the uncoupled kets
    B = down * c_plus * c_minus * (p - q)
    C = down * (c_plus ** 2 * p + c_minus ** 2 * q)
    D = down * c_minus * (-1j * _sgn(l)) * d
    return state0.with_amplitudes(up * p, B, C, D, t=float(t))


def evolve_dirac(state0: DiracState, t: float) -> DiracState:
    _check_initial(state0, Representation.DIRAC)
    coeff = spectral_coefficients(state0.l, _r_of(state0))
    w = coeff.omega_l
    p = np.full(state0.l.shape, np.exp(-1j * OMEGA_0 * t))
    q = np.cos(w * t) - 1j * (OMEGA_0 / w) * np.sin(w * t)
    d = coeff.a_l * np.sin(w * t)
    return _evolve_circular(state0, t, p, q, d)


def evolve_fw(state0: DiracState, t: float) -> DiracState:
    """Foldy-Wouthuysen evolution: relativistic energies, no small component."""
    _check_initial(state0, Representation.FW)
    w = spectral_coefficients(state0.l, _r_of(state0)).omega_l
    p = np.full(state0.l.shape, np.exp(-1j * OMEGA_0 * t))
    return _evolve_circular(state0, t, p, np.exp(-1j * w * t), np.zeros(state0.l.shape))


def evolve_nonrel(state0: DiracState, t: float) -> DiracState:
    """Nonrelativistic evolution with ``E+ = 0`` and ``E- = omega (2l+1)``."""
    _check_initial(state0, Representation.NONREL)
    e_minus = nonrel_energy(state0.l, _r_of(state0))
    p = np.ones(state0.l.shape, dtype=complex)
    return _evolve_circular(state0, t, p, np.exp(-1j * e_minus * t), np.zeros(state0.l.shape))


_EVOLVERS = {
    Representation.DIRAC: evolve_dirac,
    Representation.FW: evolve_fw,
    Representation.NONREL: evolve_nonrel,
}


def evolve(state0: DiracState, t: float) -> DiracState:
    """Dispatch on the representation of ``state0``."""
    return _EVOLVERS[state0.representation](state0, t)


def evolve_series(state0: DiracState, times) -> list[DiracState]:
    return [evolve(state0, float(t)) for t in times]


def _r_of(state: DiracState) -> float:
    if state.config is None:
        raise ContractError("state carries no config; r is unknown")
    return state.config.r


@dataclass(frozen=True)
class SectorProjection:
    """Positive- and negative-energy parts of one sector; they sum to the sector."""

    l: int
    positive_part: np.ndarray
    negative_part: np.ndarray

    @property
    def positive_weight(self) -> float:
        return float(np.sum(np.abs(self.positive_part) ** 2))

    @property
    def negative_weight(self) -> float:
        return float(np.sum(np.abs(self.negative_part) ** 2))


def energy_parts(state: DiracState) -> tuple[DiracState, DiracState]:
    """Split a Dirac-representation state into positive- and negative-energy states.

    The ``j+`` sub-manifolds have ``E = mc^2`` and no small component, so they
    are assigned entirely to the positive part.
    """
    if state.representation is not Representation.DIRAC:
        raise ContractError("energy-sector projection is defined only in the Dirac representation")
    l = state.l
    c_plus, c_minus = _split(l)
    s = _sgn(l)
    E = spectral_coefficients(l, _r_of(state)).E_minus
    big = np.sqrt((E + 1) / (2 * E))
    small = np.sqrt((E - 1) / (2 * E))

    j_plus = c_minus * state.B + c_plus * state.C
    j_minus = -c_plus * state.B + c_minus * state.C
    lower = state.D
    pos_coef = big * j_minus + np.conj(s) * small * lower
    neg_coef = small * j_minus - np.conj(s) * big * lower

    def assemble(jp, jm, low, a):
        return state.with_amplitudes(a, c_minus * jp - c_plus * jm, c_plus * jp + c_minus * jm, low)

    zeros = np.zeros_like(state.A)
    positive = assemble(j_plus, pos_coef * big, pos_coef * s * small, state.A)
    negative = assemble(zeros, neg_coef * small, -neg_coef * s * big, zeros)
    return positive, negative


def project_energy_sectors(state: DiracState) -> list[SectorProjection]:
    positive, negative = energy_parts(state)
    pos, neg = positive.amplitudes(), negative.amplitudes()
    return [SectorProjection(int(k), pos[i], neg[i]) for i, k in enumerate(state.l)]
