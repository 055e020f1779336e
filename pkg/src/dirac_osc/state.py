"""Wave-packet state containers.

A sector ``l`` carries four amplitudes on fixed bispinor kets:

======  ==========================  ================================
field   bispinor row                orbital ket ``|n l m_l>``
======  ==========================  ================================
``A``   1 (upper, spin up)          ``|l, l, l>``
``B``   1 (upper, spin up)          ``|l, l, l-1>``
``C``   2 (upper, spin down)        ``|l, l, l>``
``D``   3 (lower, spin up)          ``|l-1, l-1, l-1>``
======  ==========================  ================================

Row 4 is identically zero for the circular packet. ``A`` carries
``m_j = l + 1/2``; ``B``, ``C`` and ``D`` carry ``m_j = l - 1/2``.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np


class Representation(str, Enum):
    DIRAC = "dirac"
    FW = "fw"
    NONREL = "nonrel"

    @classmethod
    def parse(cls, value) -> "Representation":
        if isinstance(value, cls):
            return value
        return cls(str(value).strip().lower())


@dataclass(frozen=True)
class SectorState:
    l: int
    amp_c1_ml: complex
    amp_c1_mlm1: complex
    amp_c2_ml: complex
    amp_c3: complex

    @property
    def norm(self) -> float:
        return float(abs(self.amp_c1_ml) ** 2 + abs(self.amp_c1_mlm1) ** 2
                     + abs(self.amp_c2_ml) ** 2 + abs(self.amp_c3) ** 2)


@dataclass(frozen=True, eq=False)
class DiracState:
    """All sectors of the packet at one time, stored as parallel arrays over ``l``."""

    l: np.ndarray
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray
    representation: Representation = Representation.DIRAC
    t: float = 0.0
    config: object = field(default=None, repr=False)

    def __post_init__(self):
        l = np.asarray(self.l, dtype=int)
        object.__setattr__(self, "l", l)
        for name in "ABCD":
            arr = np.asarray(getattr(self, name), dtype=complex)
            if arr.shape != l.shape:
                raise ValueError(f"amplitude {name} has shape {arr.shape}, expected {l.shape}")
            object.__setattr__(self, name, arr)
        zero = l == 0
        if np.any(self.B[zero] != 0) or np.any(self.D[zero] != 0):
            raise ValueError("l = 0 sector has no |l, l, l-1> or lower ket")

    @property
    def sectors(self) -> list[SectorState]:
        return [SectorState(int(l), complex(a), complex(b), complex(c), complex(d))
                for l, a, b, c, d in zip(self.l, self.A, self.B, self.C, self.D)]

    @property
    def l_max(self) -> int:
        return int(self.l.max())

    def amplitudes(self) -> np.ndarray:
        """Amplitudes as an ``(n_sectors, 4)`` array in the order A, B, C, D."""
        return np.stack([self.A, self.B, self.C, self.D], axis=1)

    def sector_norms(self) -> np.ndarray:
        return np.sum(np.abs(self.amplitudes()) ** 2, axis=1)

    def norm(self) -> float:
        return float(self.sector_norms().sum())

    def with_amplitudes(self, A, B, C, D, **changes) -> "DiracState":
        return replace(self, A=A, B=B, C=C, D=D, **changes)

    def padded(self, l_max: int) -> "DiracState":
        """Same state on sectors ``0..l_max``; extra sectors are empty."""
        if l_max < self.l_max:
            raise ValueError("cannot pad to a smaller basis")
        n = l_max + 1
        out = {}
        for name in "ABCD":
            arr = np.zeros(n, dtype=complex)
            arr[self.l] = getattr(self, name)
            out[name] = arr
        return replace(self, l=np.arange(n), **out)
