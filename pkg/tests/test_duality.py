"""Round-trip checks for the guessing/retrieval correspondence.

Oracles:

* exact gate identities at small dimension (the d=2 readout matrix is
  written out by hand, the shift/clock pair obeys ZX = w XZ);
* value preservation certified numerically on named and on randomized
  strategies, in both directions, at d=2 and d=3.
"""

from __future__ import annotations

import numpy as np
import pytest

from causalkit.duality import (
    DIRECTION_TOKENS,
    QUBIT_READOUT_UNITARY,
    DualityCertificate,
    check_duality,
    controlled_shift,
    dr_to_gyni,
    fourier,
    gyni_to_dr,
    party_readout_unitaries,
    pauli_xd,
    pauli_zd,
    readout_correlation_residual,
)
from causalkit.games import (
    CYRIL_GYNI_VALUE,
    bell_encoder,
    cyril_gyni_strategy,
    eval_dr,
    eval_gyni,
    pauli_y_baseline_strategy,
)
from causalkit.sampling import random_dr_strategy, random_gyni_strategy

SQRT2 = np.sqrt(2)


class TestGates:
    def test_fourier_2_is_hadamard(self):
        h = np.array([[1, 1], [1, -1]]) / SQRT2
        np.testing.assert_allclose(fourier(2), h, atol=1e-15)

    def test_controlled_shift_2_is_cnot(self):
        cnot = np.eye(4)[[0, 1, 3, 2]]
        np.testing.assert_allclose(controlled_shift(2), cnot, atol=0)

    def test_weyl_commutation_d3(self):
        w = np.exp(2j * np.pi / 3)
        z, x = pauli_zd(3), pauli_xd(3)
        np.testing.assert_allclose(z @ x, w * x @ z, atol=1e-12)

    def test_shift_and_clock_unitary(self):
        for d in (2, 3, 5):
            for u in (pauli_xd(d), pauli_zd(d), fourier(d), controlled_shift(d)):
                np.testing.assert_allclose(
                    u @ u.conj().T, np.eye(u.shape[0]), atol=1e-12
                )

    def test_dimension_lower_bound(self):
        for builder in (pauli_xd, pauli_zd, fourier, controlled_shift):
            with pytest.raises(ValueError):
                builder(1)

    def test_qubit_readout_matrix_frozen(self):
        expected = np.array(
            [
                [1, 0, 0, 1],
                [0, 1, 1, 0],
                [1, 0, 0, -1],
                [0, 1, -1, 0],
            ],
            dtype=complex,
        ) / SQRT2
        np.testing.assert_allclose(QUBIT_READOUT_UNITARY, expected, atol=1e-15)
        v_a, v_b = party_readout_unitaries(2)
        np.testing.assert_allclose(v_a, expected, atol=1e-12)
        np.testing.assert_allclose(v_b, expected, atol=1e-12)

    def test_readout_unitaries_are_unitary(self):
        for d in (2, 3):
            for v in party_readout_unitaries(d):
                np.testing.assert_allclose(
                    v @ v.conj().T, np.eye(d * d), atol=1e-12
                )

    def test_readout_correlation_precheck(self):
        # Both parties' measured symbol pairs must reconstruct the code
        # symbols with certainty; this is what makes the mapping exact.
        assert readout_correlation_residual(2) <= 1e-12
        assert readout_correlation_residual(3) <= 1e-12


class TestNamedStrategies:
    def test_cyril_maps_to_retrieval_at_same_value(self):
        cert = check_duality(cyril_gyni_strategy(), "gyni2dr")
        assert cert.source_value == pytest.approx(CYRIL_GYNI_VALUE, abs=1e-12)
        assert cert.deviation <= 1e-9
        assert cert.ok

    def test_pauli_y_maps_to_guessing_at_half(self):
        cert = check_duality(pauli_y_baseline_strategy(), "dr2gyni")
        assert cert.source_value == pytest.approx(0.5, abs=1e-12)
        assert cert.deviation <= 1e-9

    def test_mapped_cyril_evaluates_directly(self):
        mapped = gyni_to_dr(cyril_gyni_strategy())
        value = eval_dr(mapped, bell_encoder(2, mapped.state_wires), 2)
        assert value == pytest.approx(CYRIL_GYNI_VALUE, abs=1e-9)

    def test_mapped_pauli_y_evaluates_directly(self):
        mapped = dr_to_gyni(pauli_y_baseline_strategy())
        assert eval_gyni(mapped) == pytest.approx(0.5, abs=1e-9)


class TestRandomizedRoundTrips:
    def test_qubit_guessing_to_retrieval(self):
        rng = np.random.default_rng(1101)
        for _ in range(6):
            cert = check_duality(random_gyni_strategy(rng, 2), "gyni2dr")
            assert cert.deviation <= 1e-9

    def test_qubit_retrieval_to_guessing(self):
        rng = np.random.default_rng(1102)
        for _ in range(6):
            cert = check_duality(random_dr_strategy(rng, 2), "dr2gyni")
            assert cert.deviation <= 1e-9

    def test_qutrit_both_directions(self):
        rng = np.random.default_rng(1103)
        for _ in range(3):
            cert = check_duality(random_gyni_strategy(rng, 3), "gyni2dr")
            assert cert.deviation <= 1e-9
            cert = check_duality(random_dr_strategy(rng, 3), "dr2gyni")
            assert cert.deviation <= 1e-9


class TestCertificate:
    def test_to_dict_round_trip(self):
        cert = check_duality(cyril_gyni_strategy(), "gyni2dr")
        payload = cert.to_dict()
        assert payload["direction"] == "gyni2dr"
        assert payload["d"] == 2
        assert payload["status"] == "pass"
        assert payload["deviation"] == cert.deviation
        assert set(payload) == {
            "direction",
            "d",
            "source_value",
            "target_value",
            "deviation",
            "tolerance",
            "status",
        }

    def test_failed_certificate_reports(self):
        cert = DualityCertificate("gyni2dr", 2, 0.5, 0.4, 1e-9)
        assert not cert.ok
        assert cert.to_dict()["status"] == "fail"
        assert cert.deviation == pytest.approx(0.1)


class TestErrors:
    def test_direction_tokens(self):
        assert DIRECTION_TOKENS == ("gyni2dr", "dr2gyni")
        with pytest.raises(ValueError, match="direction"):
            check_duality(cyril_gyni_strategy(), "sideways")

    def test_wrong_game_for_direction(self):
        with pytest.raises(ValueError):
            gyni_to_dr(pauli_y_baseline_strategy())
        with pytest.raises(ValueError):
            dr_to_gyni(cyril_gyni_strategy())

    def test_wire_clash_rejected(self):
        import dataclasses

        strategy = random_dr_strategy(np.random.default_rng(5), 2)
        renamed = dataclasses.replace(strategy, state_wires=("A_I", "B_I"))
        with pytest.raises(ValueError):
            dr_to_gyni(renamed)
