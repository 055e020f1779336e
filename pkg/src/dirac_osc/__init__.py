"""Exact wave-packet dynamics in the (3+1)-dimensional Dirac oscillator."""

__version__ = "0.1.0"

from .density import DensityMap, density_map, phi_profile
from .errors import ContractError, DomainError, NoPartnerError, TruncationError, UnsupportedOrderError
from .evolution import (SectorProjection, energy_parts, evolve, evolve_dirac, evolve_fw,
                        evolve_nonrel, evolve_series, project_energy_sectors)
from .observables import (ObservableRecord, collapse_time, observe, spin_closed_form,
                          spin_from_state, weights)
from .oracle import build_block, oracle_evolve, quadrature_norm
from .spectrum import LevelLabel, energy, partner_labels, spectral_coefficients
from .state import DiracState, Representation, SectorState
from .wavepacket import SimConfig, WeightTable, centroid_parameters, coherent_weights, initial_state

__all__ = [
    "ContractError", "DensityMap", "DiracState", "DomainError", "LevelLabel", "NoPartnerError",
    "ObservableRecord", "Representation", "SectorProjection", "SectorState", "SimConfig",
    "TruncationError", "UnsupportedOrderError", "WeightTable", "build_block", "centroid_parameters",
    "coherent_weights", "collapse_time", "density_map", "energy", "energy_parts", "evolve",
    "evolve_dirac", "evolve_fw", "evolve_nonrel", "evolve_series", "initial_state", "observe",
    "oracle_evolve", "partner_labels", "phi_profile", "project_energy_sectors", "quadrature_norm",
    "spectral_coefficients", "spin_closed_form", "spin_from_state", "weights",
]
