"""
Test suite for dmdplace.identification.dmd module.

Covers snapshot stacking, the exact DMD fit, reconstruction and the derived spectral tables.
"""
import cmath
import dataclasses
import math

import numpy as np
import pytest
from dmdplace.identification import (
    build_shifted_snapshots, discrete_to_continuous, dominant_mode_shapes, energy_fraction,
    fit_dmd, reconstruct, tip_spectrum_comparison)
from dmdplace.identification.dmd import _pair_conjugates
from dmdplace.model import DEFAULT_MODES, ModeSet, SnapshotData, mode_shape, simulate
from dmdplace.exceptions import (
    RangeError, RankDeficiencyError, RequiredValueError, ValidationError)


def _two_node(signal, dt=1.0):
    signal = np.asarray(signal, dtype=float)
    return SnapshotData(np.vstack([np.zeros_like(signal), signal]), np.array([0.0, 1.0]), dt)


def _random_modal_data(rng):
    """Noiseless damped oscillations of 1-3 modes on 6 nodes; returns (data, n_modes)."""
    n_modes = int(rng.integers(1, 4))
    dt = 0.01
    t = np.arange(200) * dt
    freqs = np.sort(rng.choice(np.arange(1.0, 20.0), n_modes, replace=False))
    values = np.zeros((6, t.size))
    for f in freqs:
        decay = rng.uniform(0.05, 1.0)
        phase = rng.uniform(0.0, 2 * math.pi)
        signal = np.exp(-decay * t) * np.cos(2 * math.pi * f * t + phase)
        values += np.outer(rng.standard_normal(6), signal)
    return SnapshotData(values, np.linspace(0.0, 1.0, 6), dt), n_modes


class TestShiftedSnapshots:
    def test_plain_pair(self):
        snap = build_shifted_snapshots(_two_node([1.0, 2.0, 3.0, 4.0]), q=1)
        assert np.array_equal(snap.X[1], [1.0, 2.0, 3.0])
        assert np.array_equal(snap.Xp[1], [2.0, 3.0, 4.0])
        assert snap.m_cols == 3

    def test_stacked_pair(self):
        snap = build_shifted_snapshots(_two_node([1.0, 2.0, 3.0, 4.0]), q=2)
        assert snap.X.shape == (4, 2)
        assert np.array_equal(snap.X[[1, 3]], [[1.0, 2.0], [2.0, 3.0]])
        assert np.array_equal(snap.Xp[[1, 3]], [[2.0, 3.0], [3.0, 4.0]])

    def test_constant_data(self):
        snap = build_shifted_snapshots(_two_node([5.0] * 6), q=2)
        assert np.array_equal(snap.X, snap.Xp)

    def test_too_few_snapshots(self):
        with pytest.raises(RangeError):
            build_shifted_snapshots(_two_node([1.0, 2.0, 3.0]), q=3)

    def test_decimated_pair(self):
        snap = build_shifted_snapshots(_two_node(np.arange(1.0, 8.0), dt=0.5), q=2, stride=2)
        assert np.array_equal(snap.X[[1, 3]], [[1.0, 3.0], [3.0, 5.0]])
        assert np.array_equal(snap.Xp[[1, 3]], [[3.0, 5.0], [5.0, 7.0]])
        assert snap.step == 1.0
        assert (snap.dt, snap.n_t, snap.stride) == (0.5, 7, 2)

    def test_stride_leaves_too_few_snapshots(self):
        with pytest.raises(RangeError):
            build_shifted_snapshots(_two_node(np.arange(6.0)), q=2, stride=3)

    def test_invalid_stride(self):
        with pytest.raises(ValidationError):
            build_shifted_snapshots(_two_node(np.arange(6.0)), q=1, stride=0)


class TestFitDmd:
    def test_undamped_sinusoid(self):
        f, dt = 3.58, 1.0 / 4000.0
        t = np.arange(1000) * dt
        model = fit_dmd(build_shifted_snapshots(_two_node(np.cos(2 * math.pi * f * t), dt), 2), 2)
        assert np.allclose(np.abs(model.eigvals), 1.0, atol=1e-9)
        assert sorted(np.angle(model.eigvals)) == pytest.approx(
            [-2 * math.pi * f * dt, 2 * math.pi * f * dt], rel=1e-9)
        assert model.eigvals[0].imag > 0

    def test_constant_data(self):
        model = fit_dmd(build_shifted_snapshots(_two_node([2.5] * 10), 2), 1)
        assert model.eigvals[0] == pytest.approx(1.0, abs=1e-12)

    def test_default_damping(self, default_model):
        spectrum = default_model.continuous_spectrum()
        assert spectrum.shape == (3, 3)
        assert spectrum[:, 0] == pytest.approx([3.58, 22.45, 62.85], rel=0.01)
        assert spectrum[:, 1] == pytest.approx([0.01, 0.03, 0.04], abs=0.005)

    def test_consecutive_samples_miss_modes(self, default_data):
        # at the full 4 kHz rate the delayed block barely differs from the first one
        model = fit_dmd(build_shifted_snapshots(default_data, q=2), rank=6)
        freqs = model.continuous_spectrum()[:, 0]
        assert not np.any(np.abs(freqs - 62.85) <= 0.01 * 62.85)

    def test_exact_recovery(self):
        modes = ModeSet(DEFAULT_MODES.modes[:2])
        dt = 1.0 / 4000.0
        model = fit_dmd(build_shifted_snapshots(simulate(modes, 11, dt, 1.0), 2), 4)
        expected = []
        for m in modes.modes:
            s = complex(-m.decay_rate, 2 * math.pi * m.freq_hz)
            expected += [cmath.exp(s * dt), cmath.exp(s.conjugate() * dt)]
        for lam in expected:
            assert np.min(np.abs(model.eigvals - lam)) <= 1e-6 * abs(lam)

    def test_exact_recovery_decimated(self):
        modes = ModeSet(DEFAULT_MODES.modes[:2])
        dt = 1.0 / 4000.0
        snap = build_shifted_snapshots(simulate(modes, 11, dt, 1.0), 2, stride=10)
        model = fit_dmd(snap, 4)
        assert model.dt == dt and model.stride == 10
        assert model.n_snapshots == 4000
        for m in modes.modes:
            s = complex(-m.decay_rate, 2 * math.pi * m.freq_hz)
            for lam in (cmath.exp(s * dt), cmath.exp(s.conjugate() * dt)):
                assert np.min(np.abs(model.eigvals - lam)) <= 1e-6 * abs(lam)

    def test_decimated_fit_reconstructs_every_sample(self):
        modes = ModeSet(DEFAULT_MODES.modes[:2])
        data = simulate(modes, 11, 1.0 / 4000.0, 0.5)
        model = fit_dmd(build_shifted_snapshots(data, 2, stride=10), 4)
        error = np.linalg.norm(reconstruct(model) - data.values) / np.linalg.norm(data.values)
        assert error < 1e-5

    def test_conjugates_grouped(self):
        eigvals = np.array([0.5 - 0.5j, 0.9, 0.2 + 0.1j, 0.5 + 0.5j, 0.2 - 0.1j])
        order = _pair_conjugates(eigvals, np.arange(5))
        assert list(order) == [3, 0, 1, 2, 4]

    def test_conjugates_adjacent(self, default_model):
        lam = default_model.eigvals
        for j in range(0, 6, 2):
            assert lam[j].imag > 0
            assert lam[j + 1] == pytest.approx(np.conj(lam[j]), rel=1e-9)

    def test_rank_above_numerical_rank(self):
        modes = ModeSet(DEFAULT_MODES.modes[:2])
        snap = build_shifted_snapshots(simulate(modes, 11, 1.0 / 4000.0, 1.0), 2)
        with pytest.raises(RankDeficiencyError):
            fit_dmd(snap, 5)

    def test_shapes(self, default_model):
        assert default_model.modes.shape == (102, 6)
        assert default_model.U_r.shape == (102, 6)
        assert default_model.A_tilde.shape == (6, 6)
        assert default_model.n_snapshots == 8000


class TestEnergyFraction:
    def test_two_values(self):
        assert energy_fraction([3.0, 1.0], 1) == 0.75

    def test_equal_values(self):
        for k in range(6):
            assert energy_fraction([2.0] * 5, min(k, 5)) == pytest.approx(min(k, 5) / 5)

    def test_full_length_is_one(self, default_model):
        sv = default_model.singular_values
        assert energy_fraction(sv, sv.size) == 1.0

    def test_default_rank_six(self, default_model):
        # close to, but below, the 0.9995 target on this sampling grid
        assert energy_fraction(default_model.singular_values, 6) >= 0.99

    def test_squared_dominates(self, default_model):
        sv = default_model.singular_values
        assert energy_fraction(sv, 6, squared=True) >= energy_fraction(sv, 6)

    def test_monotone(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            sv = np.sort(rng.uniform(0.0, 1.0, 8))[::-1]
            values = [energy_fraction(sv, k) for k in range(9)]
            assert all(a <= b + 1e-15 for a, b in zip(values, values[1:]))

    def test_invalid(self):
        with pytest.raises(RangeError):
            energy_fraction([1.0], 2)
        with pytest.raises(RequiredValueError):
            energy_fraction([], 0)


class TestReconstruct:
    def test_first_snapshot(self, default_model):
        first = reconstruct(default_model, [1])
        expected = np.real(default_model.modes[:51] @ default_model.amplitudes)
        assert np.allclose(first[:, 0], expected)

    def test_zero_amplitudes(self, default_model):
        silent = dataclasses.replace(default_model, amplitudes=np.zeros(6, dtype=complex))
        assert np.all(reconstruct(silent, [1, 2, 3]) == 0.0)

    def test_tip_error(self, default_data, default_model):
        n = 4000
        recon = reconstruct(default_model, np.arange(1, n + 1), [50])[0]
        truth = default_data.tip[:n]
        error = np.sqrt(np.mean((recon - truth) ** 2)) / np.sqrt(np.mean(truth ** 2))
        assert error < 0.05

    def test_residual_smallest_at_retained_rank(self):
        rng = np.random.default_rng(17)
        for _ in range(100):
            data, n_modes = _random_modal_data(rng)
            snap = build_shifted_snapshots(data, 2)
            scale = np.linalg.norm(data.values)
            residuals = [np.linalg.norm(data.values - reconstruct(fit_dmd(snap, r)))
                         for r in range(1, 2 * n_modes + 1)]
            assert residuals[-1] <= 1e-6 * scale
            assert all(residuals[-1] <= r + 1e-9 * scale for r in residuals[:-1])

    def test_one_step_residual_nonincreasing_in_rank(self):
        rng = np.random.default_rng(29)
        for _ in range(100):
            values = rng.standard_normal((5, 40)).cumsum(axis=1)
            snap = build_shifted_snapshots(SnapshotData(values, np.linspace(0.0, 1.0, 5), 0.1), 2)
            residuals = []
            for r in range(1, 11):
                model = fit_dmd(snap, r)
                predicted = model.U_r @ model.A_tilde @ model.U_r.conj().T @ snap.X
                residuals.append(np.linalg.norm(snap.Xp - predicted))
            tol = 1e-10 * np.linalg.norm(snap.Xp)
            assert all(b <= a + tol for a, b in zip(residuals, residuals[1:]))

    def test_default_shape(self, default_model):
        assert reconstruct(default_model).shape == (51, 8000)

    def test_invalid_indices(self, default_model):
        with pytest.raises(RangeError):
            reconstruct(default_model, [0])
        with pytest.raises(RangeError):
            reconstruct(default_model, [1], [500])


class TestDiscreteToContinuous:
    def test_unit_eigenvalue(self):
        assert discrete_to_continuous(1.0, 0.01) == (0.0, 0.0)

    def test_formula(self):
        freq, zeta = discrete_to_continuous(cmath.exp(complex(-0.1, 0.5)), 1.0)
        assert freq == pytest.approx(0.5 / (2 * math.pi))
        assert zeta == pytest.approx(0.1 / math.sqrt(0.26))

    def test_first_mode(self, default_model):
        freq, zeta = discrete_to_continuous(default_model.eigvals[0], default_model.dt)
        assert freq == pytest.approx(3.58, rel=0.01)
        assert zeta == pytest.approx(0.01, abs=0.002)

    def test_zero_eigenvalue(self):
        with pytest.raises(ValidationError):
            discrete_to_continuous(0.0, 0.01)


class TestDerivedTables:
    def test_dominant_shapes(self, default_data, default_model):
        shapes = dominant_mode_shapes(default_model, 3)
        assert shapes.shape == (51, 3)
        assert np.allclose(np.max(np.abs(shapes), axis=0), 1.0)
        truth = np.asarray(mode_shape(DEFAULT_MODES.modes[0], default_data.node_x))
        truth = truth / np.max(np.abs(truth))
        assert abs(np.dot(shapes[:, 0], truth)) / (np.linalg.norm(shapes[:, 0]) * np.linalg.norm(truth)) > 0.999

    def test_too_many_shapes(self, default_model):
        with pytest.raises(RangeError):
            dominant_mode_shapes(default_model, 4)

    def test_tip_spectrum(self, default_data, default_model):
        recon = reconstruct(default_model, node_subset=[50])[0]
        spectrum = tip_spectrum_comparison(default_data.tip, recon, default_data.dt)
        peak_truth = spectrum["freq_hz"][np.argmax(spectrum["truth"][1:]) + 1]
        peak_recon = spectrum["freq_hz"][np.argmax(spectrum["reconstruction"][1:]) + 1]
        assert peak_truth == peak_recon
        assert abs(peak_truth - 3.58) <= 0.5

    def test_length_mismatch(self):
        with pytest.raises(ValidationError):
            tip_spectrum_comparison(np.ones(4), np.ones(5), 0.1)
