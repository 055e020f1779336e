"""Independent verification machinery.

The matrix oracle works in the coupled ``(j, m_j)`` basis, using sympy
Clebsch-Gordan coefficients instead of the closed-form split used by the
analytic path, and propagates each block with an exact 2x2 eigen-decomposition.
The ``sigma . a`` matrix element between stretched oscillator states is
computed from explicit Cartesian polynomials with Gauss-Hermite quadrature.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import sympy as sp
from sympy.physics.quantum.cg import CG

from .angular import sgn_phase
from .errors import ContractError, DomainError, TruncationError
from .spectrum import LevelLabel, energy, nonrel_energy, partner_labels
from .state import DiracState, Representation


@dataclass(frozen=True)
class JBlock:
    """Hamiltonian restricted to one conserved ``(j, m_j)`` pair."""

    l: int
    two_j: int
    two_mj: int
    hamiltonian: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # columns

    @property
    def dimension(self) -> int:
        return self.hamiltonian.shape[0]

    def propagator(self, t: float) -> np.ndarray:
        v = self.eigenvectors
        return (v * np.exp(-1j * self.eigenvalues * t)) @ v.conj().T


def eig_hermitian_2x2(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Closed-form eigenpairs of ``[[d, c*], [c, -d]]``, ascending eigenvalues."""
    d = h[0, 0].real
    if not np.isclose(h[1, 1].real, -d, rtol=0, atol=1e-14 * max(1.0, abs(d))):
        raise DomainError("block is not traceless")
    c = h[1, 0]
    E = np.hypot(d, abs(c))
    norm = np.sqrt(2 * E * (E + d))
    v_pos = np.array([E + d, c]) / norm
    v_neg = np.array([-np.conj(c), E + d]) / norm
    return np.array([-E, E]), np.column_stack([v_neg, v_pos])


def build_block(l: int, two_j: int, two_mj: int, r: float) -> JBlock:
    """Dirac Hamiltonian block for the large-component level ``|n=l, l, j, m_j>``.

    Ground-family levels give a 1x1 block at the rest energy. Otherwise the
    block couples the level to its small-component partner, with coupling
    magnitude ``sqrt(E^2 - 1)`` chosen so that the eigenvalues are ``+-E`` and
    phase given by the ``sgn`` convention.
    """
    label = LevelLabel(l, l, two_j)
    if abs(two_mj) > two_j or two_mj % 2 != 1:
        raise DomainError(f"invalid 2m_j = {two_mj} for 2j = {two_j}")
    E = energy(label, r)
    if np.isclose(E, 1.0, rtol=0, atol=1e-15):
        H = np.array([[1.0 + 0j]])
        return JBlock(l, two_j, two_mj, H, np.array([1.0]), np.array([[1.0 + 0j]]))
    partner = partner_labels(label)
    coupling = sgn_phase(l, partner.l, two_j) * np.sqrt(E * E - 1.0)
    H = np.array([[1.0, np.conj(coupling)], [coupling, -1.0]], dtype=complex)
    vals, vecs = eig_hermitian_2x2(H)
    return JBlock(l, two_j, two_mj, H, vals, vecs)


@lru_cache(maxsize=None)
def _cg(l: int, ml: int, ms2: int, two_j: int, two_mj: int) -> float:
    half = sp.Rational(1, 2)
    return float(CG(l, ml, half, sp.Rational(ms2, 2), sp.Rational(two_j, 2), sp.Rational(two_mj, 2)).doit())


def _coupled_basis(l: int) -> np.ndarray:
    """Rows: ``j+`` and ``j-`` at ``m_j = l - 1/2``; columns: (``|l-1> up``, ``|l> down``)."""
    two_mj = 2 * l - 1
    rows = []
    for two_j in (2 * l + 1, 2 * l - 1):
        rows.append([_cg(l, l - 1, 1, two_j, two_mj), _cg(l, l, -1, two_j, two_mj)])
    return np.array(rows)


def oracle_evolve(state0: DiracState, t: float, basis_cap: int) -> DiracState:
    """Propagate any circular-family state with the block-diagonal Hamiltonian matrix."""
    if basis_cap < state0.l_max:
        raise TruncationError(f"basis cap {basis_cap} below l_max {state0.l_max}")
    rep = state0.representation
    r = state0.config.r
    st = state0.padded(basis_cap)
    A, B, C, D = (np.array(x) for x in (st.A, st.B, st.C, st.D))
    A_out = np.zeros_like(A)
    B_out, C_out, D_out = np.zeros_like(B), np.zeros_like(C), np.zeros_like(D)
    for l in range(basis_cap + 1):
        stretched = build_block(l, 2 * l + 1, 2 * l + 1, r)
        e_plus = 0.0 if rep is Representation.NONREL else stretched.eigenvalues[0]
        A_out[l] = np.exp(-1j * e_plus * t) * A[l]
        if l == 0:
            C_out[0] = np.exp(-1j * e_plus * t) * C[0]
            continue
        T = _coupled_basis(l)
        jp, jm = T @ np.array([B[l], C[l]])
        jp = np.exp(-1j * e_plus * t) * jp
        if rep is Representation.DIRAC:
            block = build_block(l, 2 * l - 1, 2 * l - 1, r)
            jm, D_out[l] = block.propagator(t) @ np.array([jm, D[l]])
        else:
            if np.any(D[l] != 0):
                raise ContractError("small component present in a two-component representation")
            e_minus = energy(LevelLabel.spin_down_partner(l), r) if rep is Representation.FW \
                else nonrel_energy(l, r)
            jm = np.exp(-1j * e_minus * t) * jm
        B_out[l], C_out[l] = T.T @ np.array([jp, jm])
    return st.with_amplitudes(A_out, B_out, C_out, D_out, t=float(t))


def max_amplitude_deviation(a: DiracState, b: DiracState) -> float:
    n = max(a.l_max, b.l_max)
    return float(np.max(np.abs(a.padded(n).amplitudes() - b.padded(n).amplitudes())))


# --- sigma . a matrix element from Cartesian polynomials -------------------

_x, _y, _z = sp.symbols("x y z", real=True)


def _solid_harmonic(l: int, m: int) -> sp.Expr:
    """``rho^l Y_l^m`` as a polynomial in x, y, z (sympy's Condon-Shortley ``Ynm``)."""
    theta, phi = sp.symbols("theta phi", real=True)
    rho = sp.sqrt(_x ** 2 + _y ** 2 + _z ** 2)
    s = sp.sqrt(_x ** 2 + _y ** 2)
    expr = sp.Ynm(l, m, theta, phi).expand(func=True)
    expr = expr.replace(sp.exp, lambda arg: ((_x + sp.I * _y) / s) ** sp.simplify(arg / (sp.I * phi)))
    expr = expr.subs({sp.cos(theta): _z / rho, sp.sin(theta): s / rho})
    poly = sp.expand(sp.simplify(expr * rho ** l))
    if poly.free_symbols - {_x, _y, _z} or not poly.is_polynomial(_x, _y, _z):
        raise RuntimeError(f"solid harmonic ({l}, {m}) did not reduce to a polynomial: {poly}")
    return poly


def _gauss_hermite_3d(order: int):
    nodes, weights = np.polynomial.hermite.hermgauss(order)
    X, Y, Z = np.meshgrid(nodes, nodes, nodes, indexing="ij")
    W = weights[:, None, None] * weights[None, :, None] * weights[None, None, :]
    return X, Y, Z, W


def coupling_element(l: int, order: int = 24) -> complex:
    """``<l-1 l-1 j m | sigma . a | l l j m>`` for ``j = m = l - 1/2``, in oscillator units.

    Kets are ``P(x,y,z) exp(-rho^2/2)`` with ``P`` a solid harmonic; the
    annihilator acts as ``a_k (P G) = (d_k P) G / sqrt(2)``. Both kets are
    normalized numerically, so no radial normalization constant is assumed.
    """
    if l < 1:
        raise DomainError("coupling needs l >= 1")
    split = _coupled_basis(l)[1]  # j- row: (|l-1> up, |l> down)
    up_poly = _solid_harmonic(l, l - 1)
    down_poly = _solid_harmonic(l, l)
    lower_poly = _solid_harmonic(l - 1, l - 1)
    # sigma . a on (f_up, f_down): spin-up row = a_z f_up + (a_x - i a_y) f_down
    d = lambda p, v: sp.diff(p, v) / sp.sqrt(2)
    exprs = (d(up_poly, _z), d(down_poly, _x) - sp.I * d(down_poly, _y), up_poly, down_poly, lower_poly)
    X, Y, Z, W = _gauss_hermite_3d(order)
    vals = [np.broadcast_to(sp.lambdify((_x, _y, _z), e, "numpy")(X, Y, Z), X.shape).astype(complex)
            for e in exprs]
    a_up, a_down, up, down, low = vals
    # G^2 = exp(-rho^2) is the Gauss-Hermite weight
    norm = lambda f: np.sqrt(np.sum(W * np.abs(f) ** 2))
    res = split[0] * a_up / norm(up) + split[1] * a_down / norm(down)
    return complex(np.sum(W * np.conj(low) * res) / norm(low))


# --- full 3D norm by product quadrature -----------------------------------

def quadrature_norm(state: DiracState, radial_order: int = 128, angular_order: int = 96) -> float:
    """``int |Psi|^2 u^2 du dOmega`` on a product grid.

    Gauss-Legendre in ``u`` on ``[0, sqrt(l_max + 1) + 8]`` and in
    ``cos(theta)``, trapezoid with ``2 * angular_order`` points in ``phi``.
    The angular rule is exact once ``angular_order > l_max``.
    """
    from .density import component_fields

    if radial_order < 16 or angular_order < 16:
        raise DomainError("quadrature orders must be at least 16")
    u_max = np.sqrt(state.l_max + 1.0) + 8.0
    xu, wu = np.polynomial.legendre.leggauss(radial_order)
    u = 0.5 * u_max * (xu + 1.0)
    wu = 0.5 * u_max * wu * u ** 2
    xt, wt = np.polynomial.legendre.leggauss(angular_order)
    theta = np.arccos(xt)
    n_phi = 2 * angular_order
    phi = 2 * np.pi * np.arange(n_phi) / n_phi
    wp = 2 * np.pi / n_phi
    total = 0.0
    for k in range(0, u.size, 32):
        fields = component_fields(state, u[k:k + 32], theta, phi)
        dens = np.sum(np.abs(fields) ** 2, axis=(0, 3))  # (n_u, n_theta)
        total += float(wu[k:k + 32] @ dens @ wt) * wp
    return total
