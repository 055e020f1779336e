"""Circular coherent wave packet: configuration, partial-wave weights, initial state.

The Gaussian packet centred at ``x0`` on the x axis with momentum ``p0``
along y is a coherent state of the oscillator; its partial-wave expansion
contains only stretched kets ``|n=l, l, m=l>`` with Poisson amplitudes, so
the state is built directly in that basis and never discretized.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.special import gammaln
from scipy.stats import poisson

from .errors import DomainError, TruncationError
from .state import DiracState, Representation

L_HARD_CAP = 512
SQRT_HALF = np.sqrt(0.5)


@dataclass(frozen=True)
class SimConfig:
    """Physical and numerical parameters of one run.

    ``alpha`` and ``beta`` are normalized on construction. ``t_end = None``
    resolves to one nonrelativistic period ``2 pi / r``; ``radius = None``
    resolves to the packet centroid ``sqrt(N)`` (in oscillator lengths).
    """

    N: float = 20.0
    r: float = 0.5
    alpha: complex = SQRT_HALF
    beta: complex = SQRT_HALF
    representation: Representation = Representation.DIRAC
    tail_tolerance: float = 1e-12
    t_start: float = 0.0
    t_end: float | None = None
    t_steps: int = 200
    theta_points: int = 181
    phi_points: int = 361
    radius: float | None = None

    def __post_init__(self):
        if not self.N > 0:
            raise DomainError(f"N must be positive, got {self.N}")
        if not self.r > 0:
            raise DomainError(f"r must be positive, got {self.r}")
        if not 0 < self.tail_tolerance < 1:
            raise DomainError(f"tail_tolerance must lie in (0, 1), got {self.tail_tolerance}")
        if self.t_steps < 1:
            raise DomainError("t_steps must be at least 1")
        if self.theta_points < 2 or self.phi_points < 2:
            raise DomainError("angular grids need at least two points")
        alpha, beta = complex(self.alpha), complex(self.beta)
        norm = np.hypot(abs(alpha), abs(beta))
        if norm == 0:
            raise DomainError("spin amplitudes cannot both vanish")
        object.__setattr__(self, "alpha", alpha / norm)
        object.__setattr__(self, "beta", beta / norm)
        object.__setattr__(self, "representation", Representation.parse(self.representation))
        object.__setattr__(self, "N", float(self.N))
        object.__setattr__(self, "r", float(self.r))
        if self.t_end is None:
            object.__setattr__(self, "t_end", 2.0 * np.pi / self.r)
        if self.radius is None:
            object.__setattr__(self, "radius", float(np.sqrt(self.N)))
        elif self.radius <= 0:
            raise DomainError("radius must be positive")

    @classmethod
    def from_bloch(cls, spin_theta: float, spin_phi: float, **kwargs) -> "SimConfig":
        """Spin direction given as polar angles on the Bloch sphere."""
        alpha = np.cos(spin_theta / 2)
        beta = np.exp(1j * spin_phi) * np.sin(spin_theta / 2)
        return cls(alpha=alpha, beta=beta, **kwargs)

    @property
    def omega(self) -> float:
        return self.r

    @property
    def period(self) -> float:
        """Nonrelativistic period ``2 pi / omega``."""
        return 2.0 * np.pi / self.r

    @property
    def time_grid(self) -> np.ndarray:
        return np.linspace(self.t_start, self.t_end, self.t_steps)

    @property
    def theta_grid(self) -> np.ndarray:
        return np.linspace(0.0, np.pi, self.theta_points)

    @property
    def phi_grid(self) -> np.ndarray:
        return np.linspace(0.0, 2.0 * np.pi, self.phi_points, endpoint=False)

    @property
    def is_x_polarized(self) -> bool:
        return bool(np.isclose(self.alpha, SQRT_HALF, atol=1e-14)
                    and np.isclose(self.beta, SQRT_HALF, atol=1e-14))

    def as_dict(self) -> dict:
        d = asdict(self)
        d["representation"] = self.representation.value
        return d


@dataclass(frozen=True)
class WeightTable:
    lambdas: np.ndarray
    l_max: int
    tail: float = field(default=0.0)

    @property
    def probabilities(self) -> np.ndarray:
        return self.lambdas ** 2


def coherent_weights(N: float, tail_tolerance: float = 1e-12) -> WeightTable:
    """Signed Poisson amplitudes ``(-1)^l e^{-N/2} N^{l/2} / sqrt(l!)``.

    Truncated at the smallest ``l_max`` whose Poisson tail mass is below
    ``tail_tolerance``.
    """
    if not N > 0:
        raise DomainError(f"N must be positive, got {N}")
    ks = np.arange(L_HARD_CAP + 1)
    tails = poisson.sf(ks, N)
    below = np.nonzero(tails < tail_tolerance)[0]
    if below.size == 0:
        raise TruncationError(f"tail {tail_tolerance:g} not reached below l = {L_HARD_CAP} for N = {N}")
    l_max = int(below[0])
    l = np.arange(l_max + 1)
    log_prob = -N + l * np.log(N) - gammaln(l + 1)
    lambdas = np.where(l % 2, -1.0, 1.0) * np.exp(0.5 * log_prob)
    return WeightTable(lambdas, l_max, float(tails[l_max]))


def initial_state(config: SimConfig) -> DiracState:
    """Packet at ``t = 0``: ``alpha lambda_l`` spin up and ``beta lambda_l`` spin down on ``|l l l>``."""
    table = coherent_weights(config.N, config.tail_tolerance)
    l = np.arange(table.l_max + 1)
    zeros = np.zeros(l.size, dtype=complex)
    return DiracState(
        l=l,
        A=config.alpha * table.lambdas,
        B=zeros,
        C=config.beta * table.lambdas,
        D=zeros.copy(),
        representation=config.representation,
        t=0.0,
        config=config,
    )


def centroid_parameters(config: SimConfig) -> tuple[float, float]:
    """Centroid ``x0 = sqrt(N/r)`` and momentum ``p0 = sqrt(N r)`` in natural units."""
    sigma = 1.0 / np.sqrt(config.r)
    return float(np.sqrt(config.N) * sigma), float(np.sqrt(config.N) / sigma)
