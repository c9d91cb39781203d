"""Scenario configs: parsing, grids, runs, sweeps, output files, builtins."""

import json
import math

import numpy as np
import pytest

from emdof import quadrature
from emdof.errors import CapacityError, ConfigurationError
from emdof.scenarios import (
    build_grid,
    builtin_text,
    hz_to_rad_per_m,
    list_builtins,
    load_builtin,
    load_config_file,
    parse_config_text,
    run_scenario,
    run_sweep,
    write_outputs,
)


def _mini(**overrides):
    base = {
        "name": "mini",
        "kernel": {"variant": "time1d", "omega_rad_s": math.pi},
        "region": {"type": "interval", "half_span_s": 1.0},
        "grid": {"rule": "gauss_legendre", "counts": [16]},
    }
    base.update(overrides)
    return base


def _parse_one(obj):
    return parse_config_text(json.dumps(obj))[0]


class TestParsing:
    def test_minimal_config_defaults(self):
        cfg = _parse_one(_mini())
        assert cfg.name == "mini"
        assert cfg.counts == [16]
        assert cfg.spacing_m is None
        assert cfg.seed == 0
        assert cfg.outputs == {
            "spectrum": True,
            "patterns": 0,
            "correlation": 0,
            "dof": [0.3, 0.1, 0.03, 0.01],
        }

    def test_three_top_level_shapes(self):
        single = parse_config_text(json.dumps(_mini()))
        as_list = parse_config_text(json.dumps([_mini(), _mini(name="b")]))
        wrapped = parse_config_text(
            json.dumps({"name": "group", "scenarios": [_mini()]})
        )
        assert [c.name for c in single] == ["mini"]
        assert [c.name for c in as_list] == ["mini", "b"]
        assert [c.name for c in wrapped] == ["mini"]

    def test_canonical_round_trip(self):
        for name in list_builtins():
            for cfg in load_builtin(name):
                again = _parse_one(cfg.canonical)
                assert again.canonical == cfg.canonical, cfg.name

    def test_unknown_key_rejected(self):
        with pytest.raises(ConfigurationError) as err:
            _parse_one(_mini(extra_knob=1))
        assert "extra_knob" in str(err.value)

    def test_unknown_kernel_key_rejected(self):
        bad = _mini(kernel={"variant": "time1d", "omega_rad_s": 1.0, "phase": 0.0})
        with pytest.raises(ConfigurationError):
            _parse_one(bad)

    def test_invalid_json_reports_source(self):
        with pytest.raises(ConfigurationError) as err:
            parse_config_text("{not json", source="bad.json")
        assert "bad.json" in str(err.value)

    def test_grid_parameterizations_are_exclusive(self):
        grid = {"rule": "uniform", "counts": [4], "spacing_m": 0.1}
        with pytest.raises(ConfigurationError):
            _parse_one(_mini(grid=grid))
        with pytest.raises(ConfigurationError):
            _parse_one(_mini(grid={"rule": "uniform"}))

    def test_counts_must_match_region_axes(self):
        bad = _mini(grid={"rule": "uniform", "counts": [4, 4]})
        with pytest.raises(ConfigurationError):
            _parse_one(bad)

    def test_counts_must_be_positive_integers(self):
        for counts in ([0], [-1], [2.5], [True]):
            with pytest.raises(ConfigurationError):
                _parse_one(_mini(grid={"rule": "uniform", "counts": counts}))

    def test_outputs_validation(self):
        with pytest.raises(ConfigurationError):
            _parse_one(_mini(outputs={"patterns": -1}))
        with pytest.raises(ConfigurationError):
            _parse_one(_mini(outputs={"dof": [0.5, 1.5]}))
        with pytest.raises(ConfigurationError):
            _parse_one(_mini(outputs={"spectrum": "yes"}))

    def test_unknown_region_and_rule(self):
        with pytest.raises(ConfigurationError):
            _parse_one(_mini(region={"type": "torus", "half_span_s": 1.0}))
        with pytest.raises(ConfigurationError):
            _parse_one(_mini(grid={"rule": "simpson", "counts": [4]}))


class TestSpacing:
    def _ball_box(self, grid):
        return {
            "name": "cube",
            "kernel": {"variant": "ball3d", "f_max_hz": 3e9},
            "region": {"type": "box", "extents_m": [0.5, 0.5, 0.5]},
            "grid": grid,
        }

    def test_hz_conversion(self):
        c = 299792458.0
        assert hz_to_rad_per_m(3e9) == pytest.approx(2 * math.pi * 3e9 / c, rel=1e-15)

    def test_half_wavelength_at_3ghz(self):
        cfg = _parse_one(
            self._ball_box({"rule": "uniform", "spacing_wavelengths": 0.5})
        )
        # lambda/2 = c / (2 f) = 0.049965... m; 0.5 m / that rounds to 10,
        # plus the fencepost node
        assert cfg.spacing_m == pytest.approx(0.0499654, abs=1e-7)
        assert cfg.counts == [11, 11, 11]

    def test_explicit_spacing_metres(self):
        cfg = _parse_one(self._ball_box({"rule": "uniform", "spacing_m": 0.1}))
        assert cfg.counts == [6, 6, 6]
        assert cfg.spacing_m == 0.1

    def test_wavelength_spacing_needs_spatial_frequency(self):
        bad = _mini(grid={"rule": "uniform", "spacing_wavelengths": 0.5})
        with pytest.raises(ConfigurationError) as err:
            _parse_one(bad)
        assert "spacing" in str(err.value).lower()

    def test_spacing_only_on_boxes_and_intervals(self):
        bad = {
            "name": "cap",
            "kernel": {"variant": "dual_ball", "r0_m": 0.5, "f_hz": 3e9},
            "region": {"type": "sphere_cap"},
            "grid": {"rule": "uniform", "spacing_m": 0.1},
        }
        with pytest.raises(ConfigurationError):
            _parse_one(bad)


class TestBuildGrid:
    def test_interval(self):
        grid = build_grid(_parse_one(_mini()))
        assert grid.domain_tag == quadrature.INTERVAL
        assert grid.n_nodes == 16
        assert grid.weights.sum() == pytest.approx(2.0, rel=1e-13)

    def test_box(self):
        cfg = _parse_one(
            {
                "name": "b",
                "kernel": {"variant": "disk2d", "k_rad_m": 30.0},
                "region": {"type": "box", "extents_m": [0.4, 0.6]},
                "grid": {"rule": "uniform", "counts": [4, 6]},
            }
        )
        grid = build_grid(cfg)
        assert grid.domain_tag == quadrature.BOX
        assert grid.dim == 2
        assert grid.n_nodes == 24
        assert grid.weights.sum() == pytest.approx(0.24, rel=1e-13)

    def test_sphere_cap(self):
        cfg = _parse_one(
            {
                "name": "s",
                "kernel": {"variant": "dual_ball", "r0_m": 0.5, "f_hz": 3e9},
                "region": {"type": "sphere_cap", "theta_deg": [0, 60]},
                "grid": {"rule": "gauss_legendre", "counts": [6, 12]},
            }
        )
        grid = build_grid(cfg)
        assert grid.domain_tag == quadrature.SPHERICAL_CAP
        assert grid.weights.sum() == pytest.approx(math.pi, rel=1e-12)

    def test_wavenumber_sector(self):
        cfg = _parse_one(
            {
                "name": "w",
                "kernel": {"variant": "dual_ball", "r0_m": 0.5},
                "region": {"type": "wavenumber_sector", "k_rad_m": [10.0, 20.0]},
                "grid": {"rule": "gauss_legendre", "counts": [4, 5, 10]},
            }
        )
        grid = build_grid(cfg)
        assert grid.domain_tag == quadrature.WAVENUMBER_BALL_SECTOR
        radii = np.linalg.norm(grid.nodes, axis=1)
        assert radii.min() >= 10.0 and radii.max() <= 20.0

    def test_line_time(self):
        cfg = _parse_one(
            {
                "name": "lt",
                "kernel": {"variant": "spacetime", "f_max_hz": 3e8},
                "region": {"type": "line_time", "length_m": 2.0, "t_half_span_s": 1e-8},
                "grid": {"rule": "uniform", "counts": [8, 4]},
            }
        )
        grid = build_grid(cfg)
        assert grid.domain_tag == quadrature.SPACE_TIME
        assert grid.n_nodes == 32
        assert grid.weights.sum() == pytest.approx(2.0 * 2e-8, rel=1e-12)

    def test_node_cap_respected(self):
        cfg = _parse_one(_mini(grid={"rule": "uniform", "counts": [500]}))
        with pytest.raises(CapacityError):
            build_grid(cfg, node_cap=100)


class TestRunScenario:
    def test_spectrum_rows_match_nodes(self):
        result = run_scenario(_parse_one(_mini()))
        assert result.spectrum.n == result.grid.n_nodes == 16
        assert result.patterns.values.shape == (16, 16)

    def test_provenance_fields(self):
        result = run_scenario(_parse_one(_mini()))
        prov = result.provenance
        assert prov["grid"]["n_nodes"] == 16
        assert prov["grid"]["rule"] == "gauss_legendre"
        assert prov["region_measure"] == pytest.approx(2.0)
        assert prov["trace"] == pytest.approx(result.spectrum.trace)
        assert prov["runtime_s"] >= 0.0
        assert isinstance(prov["backend"], str)
        assert "kernel_normalization_note" in prov

    def test_pattern_request_capped_by_grid(self):
        cfg = _parse_one(_mini(outputs={"patterns": 17}))
        with pytest.raises(ConfigurationError):
            run_scenario(cfg)

    def test_correlation_output(self):
        cfg = _parse_one(_mini(outputs={"correlation": 5}))
        result = run_scenario(cfg)
        assert result.correlation.shape == (5, 5)
        assert np.max(np.abs(result.correlation - np.eye(5))) <= 1e-8

    def test_deterministic(self):
        a = run_scenario(_parse_one(_mini()))
        b = run_scenario(_parse_one(_mini()))
        assert np.array_equal(a.spectrum.eigenvalues, b.spectrum.eigenvalues)
        assert np.array_equal(a.patterns.values, b.patterns.values)


class TestRunSweep:
    def test_empty(self):
        assert run_sweep([]) == []

    def test_duplicate_configs_identical_results(self):
        cfg = _parse_one(_mini())
        outcomes = run_sweep([cfg, cfg])
        assert all(o.ok for o in outcomes)
        assert np.array_equal(
            outcomes[0].result.spectrum.eigenvalues,
            outcomes[1].result.spectrum.eigenvalues,
        )

    def test_collects_errors_without_fail_fast(self):
        good = _parse_one(_mini())
        bad = _parse_one(_mini(name="big", grid={"rule": "uniform", "counts": [200]}))
        outcomes = run_sweep([good, bad, good], node_cap=100)
        assert [o.ok for o in outcomes] == [True, False, True]
        assert isinstance(outcomes[1].error, CapacityError)
        assert outcomes[1].name == "big"

    def test_fail_fast_raises(self):
        bad = _parse_one(_mini(grid={"rule": "uniform", "counts": [200]}))
        with pytest.raises(CapacityError):
            run_sweep([bad], fail_fast=True, node_cap=100)

    def test_threaded_matches_serial(self):
        configs = [
            _parse_one(_mini(name=f"s{i}", kernel={"variant": "time1d", "omega_rad_s": float(i)}))
            for i in (1, 2, 3, 4)
        ]
        serial = run_sweep(configs, threads=1)
        threaded = run_sweep(configs, threads=4)
        for a, b in zip(serial, threaded):
            assert a.name == b.name
            assert np.array_equal(
                a.result.spectrum.eigenvalues, b.result.spectrum.eigenvalues
            )


class TestWriteOutputs:
    def _result(self):
        return run_scenario(
            _parse_one(_mini(outputs={"patterns": 3, "correlation": 4}))
        )

    def test_csv_files_and_shapes(self, tmp_path):
        result = self._result()
        paths = write_outputs(result, tmp_path)
        names = sorted(p.split("/")[-1] for p in paths)
        assert names == [
            "mini.correlation.csv",
            "mini.patterns.csv",
            "mini.spectrum.csv",
            "mini.summary.json",
        ]
        spectrum_lines = (tmp_path / "mini.spectrum.csv").read_text().strip().splitlines()
        assert spectrum_lines[0] == "index,lambda,lambda_normalized"
        assert len(spectrum_lines) == 1 + 16
        pattern_lines = (tmp_path / "mini.patterns.csv").read_text().strip().splitlines()
        assert pattern_lines[0] == "mode,t,value"
        assert len(pattern_lines) == 1 + 3 * 16
        corr_lines = (tmp_path / "mini.correlation.csv").read_text().strip().splitlines()
        assert len(corr_lines) == 1 + 16

    def test_summary_contents(self, tmp_path):
        result = self._result()
        write_outputs(result, tmp_path)
        summary = json.loads((tmp_path / "mini.summary.json").read_text())
        assert summary["name"] == "mini"
        assert summary["n_modes"] == 16
        assert summary["config"] == result.config.canonical
        assert summary["dof"]["fdof_at"].keys() == {"0.01", "0.03", "0.1", "0.3"}
        assert len(summary["top_eigenvalues"]) == 10

    def test_json_format(self, tmp_path):
        result = self._result()
        paths = write_outputs(result, tmp_path, fmt="json")
        spect = json.loads((tmp_path / "mini.spectrum.json").read_text())
        assert spect["columns"] == ["index", "lambda", "lambda_normalized"]
        assert len(spect["rows"]) == 16
        assert any(p.endswith("mini.summary.json") for p in paths)

    def test_bad_format(self, tmp_path):
        with pytest.raises(ConfigurationError):
            write_outputs(self._result(), tmp_path, fmt="yaml")

    def test_spectrum_only_when_others_disabled(self, tmp_path):
        result = run_scenario(_parse_one(_mini()))
        paths = write_outputs(result, tmp_path)
        names = sorted(p.split("/")[-1] for p in paths)
        assert names == ["mini.spectrum.csv", "mini.summary.json"]


class TestBuiltins:
    def test_catalogue(self):
        assert list_builtins() == [
            "fig1",
            "fig3",
            "fig4",
            "fig5",
            "fig6",
            "fig7",
            "fig8",
            "fig9",
        ]

    def test_all_parse(self):
        for name in list_builtins():
            configs = load_builtin(name)
            assert configs, name
            for cfg in configs:
                assert cfg.name

    def test_text_is_valid_json(self):
        for name in list_builtins():
            json.loads(builtin_text(name))

    def test_unknown_name_lists_catalogue(self):
        with pytest.raises(ConfigurationError) as err:
            load_builtin("fig2")
        msg = str(err.value)
        assert "fig1" in msg and "fig9" in msg

    def test_load_config_file(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps(_mini()))
        configs = load_config_file(path)
        assert [c.name for c in configs] == ["mini"]

    def test_missing_config_file(self, tmp_path):
        with pytest.raises(ConfigurationError):
            load_config_file(tmp_path / "absent.json")
