"""Dataset factory: presets, sampling, generation, noise, persistence."""

import math

import numpy as np
import pytest

from conftest import synthetic_dataset, tiny_damping_spec, tiny_dephasing_spec
from ohmicity.data import (CLASS_ORDER, Interval, OhmicityClass, ScenarioSpec,
                           inject_noise, load_dataset, save_dataset,
                           scenario_presets)
from ohmicity.fourier import trajectory_features
from ohmicity.generate import (generate_dataset, generate_preset,
                               sample_parameters)


class TestOhmicityClass:
    def test_class_map(self):
        assert OhmicityClass.from_s(0.5) is OhmicityClass.SUB_OHMIC
        assert OhmicityClass.from_s(1.0) is OhmicityClass.OHMIC
        assert OhmicityClass.from_s(1.5) is OhmicityClass.SUPER_OHMIC

    def test_index_order(self):
        assert [c.index for c in CLASS_ORDER] == [0, 1, 2]


class TestInterval:
    def test_open_endpoints_shrink(self):
        rng = np.random.default_rng(0)
        iv = Interval(0.0, 1.0, lo_open=True, hi_open=True)
        draws = [iv.sample(rng) for _ in range(500)]
        assert min(draws) >= 1e-6
        assert max(draws) <= 1.0 - 1e-6

    def test_degenerate_interval(self):
        rng = np.random.default_rng(0)
        assert Interval(1.0, 1.0).sample(rng) == 1.0

    def test_empty_interval_rejected(self):
        with pytest.raises(ValueError):
            Interval(2.0, 1.0)
        with pytest.raises(ValueError):
            Interval(1.0, 1.0, lo_open=True)


class TestPresets:
    def test_catalogue_names(self):
        presets = scenario_presets()
        expected = {"pd-separated", "pd-adjacent", "ad-default"}
        expected |= {f"pd-varying-{k}" for k in range(10)}
        assert set(presets) == expected

    def test_dephasing_sizes(self):
        spec = scenario_presets()["pd-separated"]
        assert spec.split_sizes() == (4800, 2400, 2400)
        assert spec.n_points == 400
        assert math.isinf(spec.beta)

    def test_damping_sizes(self):
        spec = scenario_presets()["ad-default"]
        assert spec.split_sizes() == (1500, 300, 300)
        assert spec.beta == 0.1
        assert spec.omega0 == 1.0

    def test_varying_interval_widths(self):
        presets = scenario_presets()
        for k in (0, 9):
            spec = presets[f"pd-varying-{k}"]
            assert spec.eta_range.lo == 0.25
            assert abs(spec.eta_range.hi - (0.25 + 0.2 * k)) < 1e-12
            assert spec.omega_c_range.hi == spec.eta_range.hi

    def test_spec_validation(self):
        base = scenario_presets()["pd-separated"]
        with pytest.raises(ValueError):
            ScenarioSpec(name="bad", model="dephasing",
                         s_intervals=base.s_intervals,
                         eta_range=base.eta_range,
                         omega_c_range=base.omega_c_range,
                         beta=base.beta, omega0=None,
                         n_train=4, n_valid=3, n_test=3)
        bad_intervals = dict(base.s_intervals)
        bad_intervals[OhmicityClass.SUB_OHMIC] = Interval(0.5, 1.5)
        with pytest.raises(ValueError):
            ScenarioSpec(name="bad", model="dephasing",
                         s_intervals=bad_intervals,
                         eta_range=base.eta_range,
                         omega_c_range=base.omega_c_range,
                         beta=base.beta, omega0=None,
                         n_train=3, n_valid=3, n_test=3)


class TestSampleParameters:
    def test_separated_ohmic_is_fixed(self):
        spec = scenario_presets()["pd-separated"]
        rng = np.random.default_rng(1)
        for _ in range(10):
            assert sample_parameters(spec, OhmicityClass.OHMIC, rng) \
                == (1.0, 0.25, 0.5)

    def test_separated_sub_ohmic_range(self):
        spec = scenario_presets()["pd-separated"]
        rng = np.random.default_rng(2)
        for _ in range(200):
            s, eta, wc = sample_parameters(spec, OhmicityClass.SUB_OHMIC, rng)
            assert 0.0 < s <= 0.5
            assert (eta, wc) == (0.25, 0.5)

    def test_damping_ranges(self):
        spec = scenario_presets()["ad-default"]
        rng = np.random.default_rng(3)
        for _ in range(200):
            s, eta, wc = sample_parameters(spec, OhmicityClass.SUB_OHMIC, rng)
            assert 0.3 <= s < 1.0
            assert 0.0 < eta <= 0.2
            assert 0.1 <= wc <= 2.0


class TestGenerateDataset:
    def test_balanced_and_consistent(self):
        dataset = generate_dataset(tiny_dephasing_spec(), 11)
        for split, size in zip(("train", "valid", "test"), (6, 3, 3)):
            trajectories = dataset.splits[split]
            assert len(trajectories) == size
            counts = {cls: 0 for cls in CLASS_ORDER}
            for traj in trajectories:
                counts[traj.label] += 1
                assert OhmicityClass.from_s(traj.s) is traj.label
                assert np.all(np.abs(traj.values) <= 1.0)
                assert len(traj.values) == 16
            assert len(set(counts.values())) == 1

    def test_deterministic_regeneration(self):
        spec = tiny_dephasing_spec()
        a = generate_dataset(spec, 5)
        b = generate_dataset(spec, 5)
        for split in a.splits:
            for ta, tb in zip(a.splits[split], b.splits[split]):
                assert ta.s == tb.s
                assert np.array_equal(ta.values, tb.values)

    def test_seed_changes_draws(self):
        spec = tiny_dephasing_spec()
        a = generate_dataset(spec, 5)
        b = generate_dataset(spec, 6)
        assert a.splits["train"][0].s != b.splits["train"][0].s

    def test_fixed_parameter_ohmic_trajectories_identical(self):
        dataset = generate_dataset(tiny_dephasing_spec(), 11)
        ohmic = [t for t in dataset.splits["train"]
                 if t.label is OhmicityClass.OHMIC]
        assert len(ohmic) >= 2
        for traj in ohmic[1:]:
            assert np.array_equal(traj.values, ohmic[0].values)

    def test_parallel_generation_matches_serial(self):
        spec = tiny_dephasing_spec()
        serial = generate_dataset(spec, 9)
        parallel = generate_dataset(spec, 9, jobs=2)
        for split in serial.splits:
            for ta, tb in zip(serial.splits[split], parallel.splits[split]):
                assert np.array_equal(ta.values, tb.values)

    def test_damping_generation(self):
        dataset = generate_dataset(tiny_damping_spec(), 4)
        for traj in dataset.splits["train"]:
            assert traj.values[0] == 1.0
            assert np.max(np.abs(traj.values)) <= 1.0 + 1e-6
            assert traj.omega0 == 1.0

    def test_unknown_preset_rejected(self):
        with pytest.raises(KeyError) as excinfo:
            generate_preset("no-such-preset", 0)
        assert "pd-separated" in str(excinfo.value)


class TestInjectNoise:
    def test_zero_sigma_identity(self):
        dataset = synthetic_dataset()
        assert inject_noise(dataset, 0.0, 1) is dataset

    def test_negative_sigma_rejected(self):
        with pytest.raises(ValueError):
            inject_noise(synthetic_dataset(), -0.1, 1)

    def test_noise_statistics(self):
        # law of large numbers over >= 1e6 points
        dataset = synthetic_dataset(n_per_split=24, n_points=14000)
        noisy = inject_noise(dataset, 0.1, 123)
        deltas = []
        for split in dataset.splits:
            clean = dataset.values_matrix(split)
            dirty = noisy.values_matrix(split)
            deltas.append((dirty - clean).ravel())
        deltas = np.concatenate(deltas)
        assert len(deltas) >= 1_000_000
        assert 0.0095 <= deltas.var() <= 0.0105
        assert abs(deltas.mean()) < 1e-3

    def test_noise_changes_features(self):
        dataset = synthetic_dataset()
        noisy = inject_noise(dataset, 0.05, 7)
        clean_feats = trajectory_features(dataset.splits["train"][0].values)
        noisy_feats = trajectory_features(noisy.splits["train"][0].values)
        assert np.max(np.abs(clean_feats - noisy_feats)) > 0.0

    def test_noise_deterministic_per_sigma(self):
        dataset = synthetic_dataset()
        a = inject_noise(dataset, 0.05, 7)
        b = inject_noise(dataset, 0.05, 7)
        c = inject_noise(dataset, 0.06, 7)
        assert np.array_equal(a.values_matrix("test"), b.values_matrix("test"))
        assert not np.array_equal(a.values_matrix("test"),
                                  c.values_matrix("test"))


class TestPersistence:
    def test_round_trip_lossless(self, tmp_path):
        dataset = generate_dataset(tiny_dephasing_spec(), 3)
        save_dataset(dataset, tmp_path / "d")
        loaded = load_dataset(tmp_path / "d")
        assert loaded.scenario == dataset.scenario
        assert loaded.sigma == dataset.sigma
        assert loaded.n_points == dataset.n_points
        for split in dataset.splits:
            for ta, tb in zip(dataset.splits[split], loaded.splits[split]):
                assert ta.label is tb.label
                assert ta.s == tb.s
                assert ta.eta == tb.eta
                assert ta.beta == tb.beta
                assert ta.omega0 == tb.omega0
                assert np.array_equal(ta.values, tb.values)

    def test_sigma_header_survives(self, tmp_path):
        noisy = inject_noise(synthetic_dataset(), 0.25, 3)
        save_dataset(noisy, tmp_path / "d")
        assert load_dataset(tmp_path / "d").sigma == 0.25

    def test_truncated_file_names_row(self, tmp_path):
        dataset = synthetic_dataset()
        save_dataset(dataset, tmp_path / "d")
        csv = tmp_path / "d" / "valid.csv"
        lines = csv.read_text().splitlines()
        lines[2] = lines[2][: len(lines[2]) // 2]
        csv.write_text("\n".join(lines) + "\n")
        with pytest.raises(ValueError) as excinfo:
            load_dataset(tmp_path / "d")
        assert "valid.csv row 2" in str(excinfo.value)

    def test_format_version_mismatch(self, tmp_path):
        save_dataset(synthetic_dataset(), tmp_path / "d")
        meta = tmp_path / "d" / "meta.txt"
        meta.write_text(meta.read_text().replace("format_version=1",
                                                 "format_version=99"))
        with pytest.raises(ValueError):
            load_dataset(tmp_path / "d")
