"""Probability densities of the packet on spheres of fixed radius.

Every bispinor row is a finite sum of ``R(u) Theta(theta) exp(i m phi)``
terms with known kets, so a map costs one polar table per ``(l, m)`` and a
phase matrix over ``phi``. Radii are in oscillator lengths and densities are
per cubic oscillator length.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.signal import find_peaks

from .angular import radial_node_free, stretched_theta
from .errors import ContractError
from .evolution import energy_parts
from .state import DiracState, Representation

KINDS = ("total", "c1", "c2", "c3", "c4", "positive", "negative")


@dataclass(frozen=True)
class DensityMap:
    radius: float
    theta_values: np.ndarray
    phi_values: np.ndarray
    values: np.ndarray  # shape (n_theta, n_phi)
    kind: str


@lru_cache(maxsize=64)
def _theta_table(l_max: int, offset: int, theta_key: bytes) -> np.ndarray:
    theta = np.frombuffer(theta_key)
    table = np.zeros((l_max + 1, theta.size))
    for l in range(l_max + 1):
        m = l - offset
        if m >= 0:
            table[l] = stretched_theta(l, m, theta)
    return table


@lru_cache(maxsize=256)
def _radial_table(l_max: int, u_key: bytes) -> np.ndarray:
    u = np.frombuffer(u_key)
    return np.array([radial_node_free(l, u) for l in range(l_max + 1)])


def _theta(l_max: int, offset: int, theta) -> np.ndarray:
    return _theta_table(l_max, offset, np.ascontiguousarray(theta, dtype=float).tobytes())


def _radial(l_max: int, u) -> np.ndarray:
    return _radial_table(l_max, np.ascontiguousarray(np.atleast_1d(u), dtype=float).tobytes())


def component_fields(state: DiracState, u, theta, phi) -> np.ndarray:
    """Bispinor rows on the product grid ``u x theta x phi``.

    Returns an array of shape ``(4, n_u, n_theta, n_phi)``.
    """
    u = np.atleast_1d(np.asarray(u, dtype=float))
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    phi = np.atleast_1d(np.asarray(phi, dtype=float))
    l = state.l
    lm = state.l_max
    R = _radial(lm, u)[l]                   # (n_l, n_u)
    th_l = _theta(lm, 0, theta)[l]           # m = l
    th_lm1 = _theta(lm, 1, theta)[l]         # m = l - 1
    lower = np.maximum(l - 1, 0)
    R_low = _radial(lm, u)[lower]
    th_low = _theta(lm, 0, theta)[lower]     # Y_{l-1}^{l-1}
    ph_l = np.exp(1j * np.outer(l, phi))
    ph_lm1 = np.exp(1j * np.outer(l - 1, phi))

    def accumulate(amp, radial, polar, phase):
        coef = amp[:, None, None] * radial[:, :, None] * polar[:, None, :]
        return np.einsum("kut,kp->utp", coef, phase, optimize=True)

    c1 = accumulate(state.A, R, th_l, ph_l) + accumulate(state.B, R, th_lm1, ph_lm1)
    c2 = accumulate(state.C, R, th_l, ph_l)
    c3 = accumulate(state.D, R_low, th_low, ph_lm1)
    return np.stack([c1, c2, c3, np.zeros_like(c1)])


def _density(state: DiracState, kind: str, u, theta, phi) -> np.ndarray:
    if kind not in KINDS:
        raise ValueError(f"unknown density kind {kind!r}; expected one of {KINDS}")
    if kind in ("positive", "negative"):
        if state.representation is not Representation.DIRAC:
            raise ContractError(f"{kind}-energy density is defined only in the Dirac representation")
        positive, negative = energy_parts(state)
        fields = component_fields(positive if kind == "positive" else negative, u, theta, phi)
        return np.sum(np.abs(fields) ** 2, axis=0)
    fields = component_fields(state, u, theta, phi)
    if kind == "total":
        return np.sum(np.abs(fields) ** 2, axis=0)
    return np.abs(fields[int(kind[1]) - 1]) ** 2


def density_map(state: DiracState, radius: float, kind: str = "total",
                theta_grid=None, phi_grid=None) -> DensityMap:
    if radius <= 0:
        raise ValueError("radius must be positive")
    theta = np.linspace(0, np.pi, 181) if theta_grid is None else np.asarray(theta_grid, dtype=float)
    phi = np.linspace(0, 2 * np.pi, 361, endpoint=False) if phi_grid is None else np.asarray(phi_grid, dtype=float)
    values = _density(state, kind, radius, theta, phi)[0]
    return DensityMap(float(radius), theta, phi, values, kind)


def phi_profile(state: DiracState, radius: float, theta: float = np.pi / 2,
                kind: str = "total", phi_grid=None) -> tuple[np.ndarray, np.ndarray]:
    """Density along ``phi`` at fixed ``theta`` (equator by default)."""
    phi = np.linspace(0, 2 * np.pi, 361, endpoint=False) if phi_grid is None else np.asarray(phi_grid, dtype=float)
    return phi, _density(state, kind, radius, [theta], phi)[0, 0]


def circular_centroid(phi, values) -> float:
    """Density-weighted circular mean angle in ``(-pi, pi]``."""
    z = np.sum(np.asarray(values) * np.exp(1j * np.asarray(phi)))
    return float(np.angle(z))


def find_lobes(phi, values, rel_height: float = 0.02) -> np.ndarray:
    """Angles in ``(-pi, pi]`` of local maxima above ``rel_height`` of the global maximum.

    The profile is treated as periodic.
    """
    values = np.asarray(values)
    n = values.size
    tiled = np.concatenate([values, values, values])
    peaks, _ = find_peaks(tiled, height=rel_height * values.max())
    peaks = peaks[(peaks >= n) & (peaks < 2 * n)] - n
    return np.angle(np.exp(1j * np.asarray(phi)[peaks]))


def track_lobes(profiles, phi, times, rel_height: float = 0.02, static_tol: float = 1e-3):
    """Follow lobes through a sequence of equatorial profiles.

    Each lobe found in the first profile is matched to the nearest lobe in the
    next one. Returns a list of ``(start_angle, angular_velocity)``;
    velocities below ``static_tol`` in magnitude count as static.
    """
    times = np.asarray(times, dtype=float)
    tracks = [[a] for a in find_lobes(phi, profiles[0], rel_height)]
    for prof in profiles[1:]:
        found = find_lobes(phi, prof, rel_height)
        if found.size == 0:
            break
        for tr in tracks:
            diffs = np.angle(np.exp(1j * (found - tr[-1])))
            tr.append(tr[-1] + diffs[np.argmin(np.abs(diffs))])
    out = []
    for tr in tracks:
        if len(tr) != len(times):
            continue
        slope = np.polyfit(times, np.asarray(tr), 1)[0]
        out.append((float(np.angle(np.exp(1j * tr[0]))), float(0.0 if abs(slope) < static_tol else slope)))
    return out
