"""Smoke tests for the Python bindings: one round trip per exposed area."""

import math

import numpy as np
import pytest

import entsec


def test_states_roundtrip():
    bell = entsec.make_bell()
    rho = entsec.partial_trace(bell, {0})
    assert rho.shape == (2, 2)
    assert abs(entsec.entropy(rho) - math.log(2.0)) < 1e-12
    assert abs(entsec.two_qubit_concurrence_like(bell) - 1.0) < 1e-12

    coeffs = entsec.schmidt_coefficients(bell, {0}, {1})
    assert np.allclose(coeffs, [1 / math.sqrt(2)] * 2)
    assert entsec.schmidt_rank(bell, {0}, {1}) == 2


def test_pure_state_constructor_validates():
    amps = np.zeros(4, dtype=complex)
    amps[0] = 1.0
    psi = entsec.PureState([2, 2], amps)
    assert abs(entsec.two_qubit_concurrence_like(psi)) < 1e-12
    with pytest.raises(entsec.InputError):
        entsec.PureState([2, 2], np.zeros(3, dtype=complex))


def test_classification():
    ghz = entsec.make_ghz()
    out = entsec.classify3(ghz)
    assert out["class"] == "GHZ"
    assert out["ranks"] == [2, 2, 2]
    moved = entsec.random_slocc_orbit(ghz, 7)
    assert entsec.classify3(moved)["class"] == "GHZ"
    assert entsec.classify3(entsec.make_w())["class"] == "W"


def test_symmetric_flows():
    M = np.diag([1.2, math.sqrt(0.56)]).astype(complex)
    name, sigma_min, defect = entsec.stratum(M)
    assert name == "intermediate"
    assert abs(sigma_min - math.sqrt(0.56)) < 1e-10

    up = entsec.flow_to_max(M, 1e6)
    assert np.linalg.norm(up - np.eye(2)) < 1e-5
    down = entsec.flow_to_product(M, 200.0)
    assert np.linalg.svd(down, compute_uv=False)[-1] < 1e-6


def test_bundle_numbers():
    c = entsec.hopf_clutching(np.array([0.0, 1.0, 0.0, 0.0]))
    assert np.allclose(c, np.diag([1j, -1j]))
    degree, residual = entsec.clutching_degree("hopf", 12)
    assert degree == 1
    assert residual < 0.1


def test_borromean():
    out = entsec.borromean(0.5)
    assert out["class"] == "GHZ"
    assert np.allclose(out["state"], [0.5, 1, 1, 0.5, 1, 0.5, 0.5, 2])
    assert out["rho_bc"][0][0] == pytest.approx(1.25)
    semion = entsec.borromean(1 / math.sqrt(2))
    assert semion["discriminant"] == pytest.approx(3.5)


def test_fiber_entanglement():
    bell = np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2)
    assert entsec.fiber_entanglement(bell) == pytest.approx(1.0)
    assert entsec.fiber_entanglement(bell, "entropy") == pytest.approx(math.log(2.0))


def test_experiment_small():
    rep = entsec.experiment(
        "example2p_singlet", resolution=4, restarts=1, iterations=10, anchors=0
    )
    assert rep["experiment"] == "example2p_singlet"
    assert rep["profile_min"] == pytest.approx(1.0, abs=1e-9)
    assert rep["seam_error"] < 1e-10
