import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dirac_osc import (SimConfig, collapse_time, evolve, initial_state, observe, spin_closed_form,
                       spin_from_state, weights)
from dirac_osc.errors import ContractError, DomainError
from dirac_osc.observables import (band_power, printed_sigma_z_offset, spin_closed_form_printed,
                                   spin_series_terms)
from dirac_osc.wavepacket import coherent_weights

R_VALUES = [0.001, 0.025, 0.5]


def packet(rep="dirac", **kw):
    kw.setdefault("N", 20)
    kw.setdefault("r", 0.5)
    return initial_state(SimConfig(representation=rep, **kw))


def amplitude_spins(state0, ts):
    return np.array([spin_from_state(evolve(state0, t)) for t in ts]).T


def test_spin_examples():
    assert spin_from_state(packet()) == pytest.approx((1.0, 0.0, 0.0), abs=1e-12)
    s0 = packet(alpha=1, beta=0)
    for t in (0.0, 3.0, 300.0):
        assert spin_from_state(evolve(s0, t)) == pytest.approx((0.0, 0.0, 1.0), abs=1e-12)


@pytest.mark.parametrize("r", R_VALUES)
def test_closed_form_matches_amplitudes(r):
    ts = np.linspace(0, 2 * np.pi / r, 100)
    sx, sy, sz = amplitude_spins(packet(r=r), ts)
    cx, cy, cz = spin_closed_form(20, r, ts)
    assert np.abs(cx - sx).max() < 1e-10
    assert np.abs(cy - sy).max() < 1e-10
    assert np.abs(cz - sz).max() < 1e-10


@pytest.mark.parametrize("r", R_VALUES)
def test_printed_series(r):
    ts = np.linspace(0, 2 * np.pi / r, 100)
    px, py, pz = spin_closed_form_printed(20, r, ts)
    cx, cy, cz = spin_closed_form(20, r, ts)
    np.testing.assert_allclose(px, cx, atol=1e-12)
    assert np.abs(py - cy).max() > 0.1
    assert pz[0] == pytest.approx(printed_sigma_z_offset(20, r), abs=1e-14)
    table = coherent_weights(20)
    l = np.arange(table.l_max + 1)
    w = np.sqrt(1 + 2 * r * (2 * l + 1))
    expected = np.sum(table.probabilities * l ** 2 / w ** 2 / (2 * l + 1) ** 3)
    assert printed_sigma_z_offset(20, r) == pytest.approx(expected, rel=1e-12)
    assert cz[0] == pytest.approx(0.0, abs=1e-12)


def test_closed_form_at_zero():
    sx, sy, sz = spin_closed_form(20, 0.001, 0.0)
    assert sx[0] == pytest.approx(coherent_weights(20).probabilities.sum(), abs=1e-14)
    assert sy[0] == 0.0


def test_series_reduces_to_nonrelativistic():
    r = 1e-9
    ts = np.linspace(0, 2 * np.pi / r, 64)
    closed = np.array(spin_closed_form(20, r, ts))
    nonrel = amplitude_spins(packet("nonrel", r=r), ts)
    assert np.abs(closed - nonrel).max() < 1e-4


def test_transverse_series_share_weights():
    terms = spin_series_terms(20, 0.025)
    np.testing.assert_array_equal(np.abs(terms.x_slow), np.abs(terms.y_slow))
    np.testing.assert_array_equal(np.abs(terms.x_fast), np.abs(terms.y_fast))


def test_series_require_x_polarization():
    with pytest.raises(ContractError):
        spin_closed_form(20, 0.5, [0.0], alpha=1.0, beta=0.0)


def test_collapse_time():
    assert collapse_time(20) == pytest.approx(0.2483647, abs=1e-7)
    assert collapse_time(20) / 0.001 == pytest.approx(248.3647, abs=1e-4)
    assert collapse_time(1e6) < collapse_time(1e3) < collapse_time(20)
    with pytest.raises(DomainError):
        collapse_time(0)


def test_collapse_time_matches_measured_dephasing():
    r = 0.001
    s0 = packet("nonrel", r=r)
    ts = np.linspace(0, 0.5 / r, 2001)
    sx = amplitude_spins(s0, ts)[0]
    last_above = np.nonzero(np.abs(sx) >= 0.05)[0][-1]
    measured = ts[last_above + 1] * r
    assert 0.5 * collapse_time(20) < measured < 2 * collapse_time(20)


@pytest.mark.parametrize("rep", ["dirac", "fw", "nonrel"])
def test_weight_invariants(rep):
    s0 = packet(rep, r=0.025)
    jz0 = weights(s0)["J_z"]
    for t in np.linspace(0, 300, 25):
        rec = observe(evolve(s0, t))
        assert rec.component_weights[3] == 0.0
        assert rec.positive_weight + rec.negative_weight == pytest.approx(rec.norm, abs=1e-12)
        assert rec.J_z == pytest.approx(rec.L_z + rec.sigma_z / 2, abs=1e-10)
        assert rec.J_z == pytest.approx(jz0, abs=1e-12)
        assert max(abs(rec.sigma_x), abs(rec.sigma_y), abs(rec.sigma_z)) <= 1 + 1e-12


def test_initial_record():
    rec = observe(packet())
    assert rec.L_z == pytest.approx(20.0, abs=1e-10)
    assert rec.norm == pytest.approx(1.0, abs=1e-12)


def test_spin_orbit_pendulum():
    r = 0.001
    s0 = packet("nonrel", r=r)
    w0 = weights(s0)
    recs = [observe(evolve(s0, t)) for t in np.linspace(0, np.pi / r, 400)]
    drift = max(abs(rec.J_z - w0["J_z"]) for rec in recs)
    dl = np.array([rec.L_z - w0["L_z"] for rec in recs])
    dsz = np.array([rec.sigma_z for rec in recs])
    assert drift < 1e-10
    # L_z absorbs exactly what sigma_z / 2 loses
    np.testing.assert_allclose(dl, -dsz / 2, atol=1e-10)
    assert np.abs(dl).max() > 0.04
    # bound: sigma_z <= sum p_l 16 l / (2l+1)^2 - 1 + 1, so |dL_z| <= sum p_l 4 l / (2l+1)^2
    p = coherent_weights(20).probabilities
    l = np.arange(p.size)
    assert np.abs(dl).max() <= np.sum(p * 4 * l / (2 * l + 1) ** 2) + 1e-12


@pytest.mark.parametrize("alpha,beta", [(np.sqrt(0.5), np.sqrt(0.5)), (0.6, 0.8j), (1.0, 0.0)])
def test_nonrel_periodicity(alpha, beta):
    s0 = packet("nonrel", r=0.001, alpha=alpha, beta=beta)
    T = s0.config.period
    for t in (17.0, 1234.5, 4000.0):
        assert spin_from_state(evolve(s0, t + T)) == pytest.approx(spin_from_state(evolve(s0, t)), abs=1e-9)


def test_sigma_z_has_double_frequency_content():
    r = 0.5
    ts = np.linspace(0, 200, 8192)
    sx, _, sz = amplitude_spins(packet(r=r), ts)
    cutoff = 1 + np.sqrt(1 + 2 * r * 2 * 60)  # above every omega_0 + omega_l in the packet
    assert band_power(sz, ts[1] - ts[0], cutoff) > 1e3 * band_power(sx, ts[1] - ts[0], cutoff)
    fw_sz = amplitude_spins(packet("fw", r=r), ts)[2]
    assert band_power(fw_sz, ts[1] - ts[0], 1.5) < 0.1 * band_power(sz, ts[1] - ts[0], 1.5)


@settings(max_examples=30, deadline=None)
@given(st.floats(min_value=0, max_value=np.pi), st.floats(min_value=0, max_value=2 * np.pi),
       st.floats(min_value=0, max_value=100), st.sampled_from(["dirac", "fw", "nonrel"]))
def test_spin_vector_bounded(spin_theta, spin_phi, t, rep):
    config = SimConfig.from_bloch(spin_theta, spin_phi, N=5, r=0.3, representation=rep)
    s = np.array(spin_from_state(evolve(initial_state(config), t)))
    assert np.linalg.norm(s) <= 1 + 1e-12
