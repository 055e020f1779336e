"""Spin, angular-momentum and weight observables.

Amplitude-based values are authoritative. The closed-form spin series are a
validation layer; the printed versions of the sigma_y and sigma_z series
carry typos, so both the printed and the re-derived series are available
and the difference can be reported.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractError, DomainError
from .evolution import energy_parts
from .spectrum import OMEGA_0, spectral_coefficients
from .state import DiracState, Representation
from .wavepacket import SQRT_HALF, coherent_weights


@dataclass(frozen=True)
class ObservableRecord:
    t: float
    sigma_x: float
    sigma_y: float
    sigma_z: float
    L_z: float
    J_z: float
    norm: float
    positive_weight: float
    negative_weight: float
    component_weights: tuple[float, float, float, float]


def spin_from_state(state: DiracState) -> tuple[float, float, float]:
    """Pauli averages ``<Sigma>`` over the bispinor.

    Only ``A`` (row 1) and ``C`` (row 2) share an orbital ket, so the
    transverse components come from ``sum_l conj(A_l) C_l``; row 4 is empty,
    so the small component only enters ``sigma_z``.
    """
    z = 2.0 * np.sum(np.conj(state.A) * state.C)
    up = np.sum(np.abs(state.A) ** 2 + np.abs(state.B) ** 2 + np.abs(state.D) ** 2)
    down = np.sum(np.abs(state.C) ** 2)
    return float(z.real), float(z.imag), float(up - down)


def weights(state: DiracState) -> dict:
    """Norm, ``L_z``, ``J_z``, per-row weights and energy-sector weights.

    Outside the Dirac representation there is no negative-energy content and
    the whole norm is reported as positive.
    """
    l = state.l
    pA, pB, pC, pD = (np.abs(x) ** 2 for x in (state.A, state.B, state.C, state.D))
    norm = float(np.sum(pA + pB + pC + pD))
    L_z = float(np.sum(l * (pA + pC) + (l - 1) * (pB + pD)))
    s_z = 0.5 * float(np.sum(pA + pB + pD - pC))
    components = (float(np.sum(pA + pB)), float(np.sum(pC)), float(np.sum(pD)), 0.0)
    if state.representation is Representation.DIRAC:
        _, negative = energy_parts(state)
        neg = negative.norm()
        pos = norm - neg
    else:
        pos, neg = norm, 0.0
    return {
        "norm": norm,
        "L_z": L_z,
        "J_z": L_z + s_z,
        "component_weights": components,
        "positive_weight": pos,
        "negative_weight": neg,
    }


def observe(state: DiracState) -> ObservableRecord:
    sx, sy, sz = spin_from_state(state)
    w = weights(state)
    return ObservableRecord(state.t, sx, sy, sz, w["L_z"], w["J_z"], w["norm"],
                            w["positive_weight"], w["negative_weight"], w["component_weights"])


def collapse_time(N: float) -> float:
    """Spin collapse time ``pi / (2 sqrt(2N))`` in units of ``1/omega``."""
    if not N > 0:
        raise DomainError(f"N must be positive, got {N}")
    return float(np.pi / (2.0 * np.sqrt(2.0 * N)))


# --- closed-form series for alpha = beta = 1/sqrt(2) -----------------------

def _series_inputs(N, r, tail_tolerance, alpha, beta):
    if not (np.isclose(alpha, SQRT_HALF, atol=1e-14) and np.isclose(beta, SQRT_HALF, atol=1e-14)):
        raise ContractError("closed-form spin series assume alpha = beta = 1/sqrt(2)")
    table = coherent_weights(N, tail_tolerance)
    l = np.arange(table.l_max + 1)
    w = spectral_coefficients(l, r).omega_l
    return l, table.probabilities, np.atleast_1d(w)


@dataclass(frozen=True)
class SpinSeriesTerms:
    """Per-``l`` coefficients of the spin series at each frequency.

    ``sigma_x = sum(x_const + x_slow cos(slow t) + x_fast cos(fast t))`` and
    ``sigma_y = sum(y_slow sin(slow t) + y_fast sin(fast t))`` with
    ``slow = omega_l - omega_0`` and ``fast = omega_l + omega_0``; ``sigma_z``
    adds a ``z_double cos(2 omega_l t)`` term.
    """

    l: np.ndarray
    slow: np.ndarray
    fast: np.ndarray
    x_const: np.ndarray
    x_slow: np.ndarray
    x_fast: np.ndarray
    y_slow: np.ndarray
    y_fast: np.ndarray
    z_const: np.ndarray
    z_slow: np.ndarray
    z_fast: np.ndarray
    z_double: np.ndarray


def spin_series_terms(N, r, tail_tolerance=1e-12, alpha=SQRT_HALF, beta=SQRT_HALF) -> SpinSeriesTerms:
    """Coefficients re-derived from the amplitudes of the evolved packet."""
    l, p, w = _series_inputs(N, r, tail_tolerance, alpha, beta)
    k = 2 * l + 1
    ratio = OMEGA_0 / w
    plus, minus = 1 + ratio, 1 - ratio
    return SpinSeriesTerms(
        l=l, slow=w - OMEGA_0, fast=w + OMEGA_0,
        x_const=p / k, x_slow=p * l * plus / k, x_fast=p * l * minus / k,
        y_slow=-p * l * plus / k, y_fast=p * l * minus / k,
        z_const=p * (0.5 + (4 * l - 1) / (2 * k ** 2) - 2 * l ** 2 * ratio ** 2 / k ** 2),
        z_slow=-p * 2 * l * plus / k ** 2, z_fast=-p * 2 * l * minus / k ** 2,
        z_double=-p * 2 * l ** 2 * (1 - ratio ** 2) / k ** 2,
    )


def _sum_series(terms: SpinSeriesTerms, t) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    t = np.atleast_1d(np.asarray(t, dtype=float))[:, None]
    cs, cf = np.cos(terms.slow * t), np.cos(terms.fast * t)
    ss, sf = np.sin(terms.slow * t), np.sin(terms.fast * t)
    c2 = np.cos(2 * (terms.slow + OMEGA_0) * t)
    sx = np.sum(terms.x_const + terms.x_slow * cs + terms.x_fast * cf, axis=1)
    sy = np.sum(terms.y_slow * ss + terms.y_fast * sf, axis=1)
    sz = np.sum(terms.z_const + terms.z_slow * cs + terms.z_fast * cf + terms.z_double * c2, axis=1)
    return sx, sy, sz


def spin_closed_form(N, r, t, *, tail_tolerance=1e-12, alpha=SQRT_HALF, beta=SQRT_HALF):
    """Closed-form ``<sigma>(t)`` for the x-polarized packet (vectorized over ``t``)."""
    return _sum_series(spin_series_terms(N, r, tail_tolerance, alpha, beta), t)


def spin_closed_form_printed(N, r, t, *, tail_tolerance=1e-12, alpha=SQRT_HALF, beta=SQRT_HALF):
    """The three series exactly as printed, including their typos.

    The sigma_x series coincides with the re-derived one. The printed
    sigma_y series lacks the factor ``l`` and has a flipped sign on the slow
    term; the printed sigma_z series carries an extra ``1/(2l+1)`` and half the
    ``omega_0^2/omega_l^2`` constant, so it does not vanish at ``t = 0``.
    """
    l, p, w = _series_inputs(N, r, tail_tolerance, alpha, beta)
    t = np.atleast_1d(np.asarray(t, dtype=float))[:, None]
    k = 2 * l + 1
    ratio = OMEGA_0 / w
    slow, fast = (w - OMEGA_0) * t, (w + OMEGA_0) * t
    sx = np.sum(p / k * (1 + l * (1 + ratio) * np.cos(slow) + l * (1 - ratio) * np.cos(fast)), axis=1)
    sy = np.sum(p / k * ((1 + ratio) * np.sin(slow) + (1 - ratio) * np.sin(fast)), axis=1)
    sz = np.sum(p / k * (0.5 + (4 * l - 1) / (2 * k ** 2) - ratio ** 2 * 2 * l ** 2 / (2 * k ** 2)
                         - 2 * l / k ** 2 * (1 + ratio) * np.cos((OMEGA_0 - w) * t)
                         - 2 * l / k ** 2 * (1 - ratio) * np.cos((OMEGA_0 + w) * t)
                         - 2 * l ** 2 / k ** 2 * (1 - ratio ** 2) * np.cos(2 * w * t)), axis=1)
    return sx, sy, sz


def printed_sigma_z_offset(N, r, tail_tolerance=1e-12) -> float:
    """Value of the printed sigma_z series at ``t = 0``: ``sum p_l l^2 (omega_0/omega_l)^2 / (2l+1)^3``."""
    l, p, w = _series_inputs(N, r, tail_tolerance, SQRT_HALF, SQRT_HALF)
    return float(np.sum(p * l ** 2 * (OMEGA_0 / w) ** 2 / (2 * l + 1) ** 3))


def nonrel_sector_sigma_z(l: int, omega: float, t, reading: str = "amplitude"):
    """``<sigma_z>`` of a single nonrelativistic spin-down partial wave.

    ``reading="amplitude"`` uses ``sin^2((2l+1) omega t / 2)``, which follows
    from the evolved amplitudes; ``reading="printed"`` uses the printed
    argument ``(2l+1) omega t``.
    """
    t = np.asarray(t, dtype=float)
    arg = (2 * l + 1) * omega * t
    if reading == "amplitude":
        arg = arg / 2
    elif reading != "printed":
        raise ValueError(f"unknown reading {reading!r}")
    return -1.0 + 16 * l / (2 * l + 1) ** 2 * np.sin(arg) ** 2


def band_power(signal, dt: float, threshold: float) -> float:
    """Mean-square power of ``signal`` at angular frequencies above ``threshold``.

    A Hann window suppresses leakage from the slow components; the mean is
    removed first.
    """
    x = np.asarray(signal, dtype=float)
    window = np.hanning(x.size)
    power = np.abs(np.fft.rfft((x - x.mean()) * window)) ** 2 / np.sum(window ** 2)
    freqs = 2 * np.pi * np.fft.rfftfreq(x.size, dt)
    return float(power[freqs > threshold].sum() / x.size)
