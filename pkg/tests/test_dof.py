"""DoF counts: asymptotic formulas, threshold counts, half-maximum check."""

import math

import numpy as np
import pytest

from emdof.dof import (
    DofReport,
    asymptotic_dof,
    build_dof_report,
    fdof,
    shannon_check,
    shannon_count,
)
from emdof.errors import ConfigurationError
from emdof.kernels import KernelSpec
from emdof.quadrature import gl_box_grid, uniform_box_grid
from emdof.spectrum import Spectrum, assemble, eigendecompose


def _spectrum_from(eigenvalues):
    lam = np.asarray(eigenvalues, dtype=np.float64)
    top = lam[0] if lam.size else 1.0
    normalized = np.clip(lam / top, 0.0, None) if lam.size else lam
    return Spectrum(eigenvalues=lam, trace=float(lam.sum()), normalized=normalized)


class TestAsymptoticDof:
    def test_time1d(self):
        # Omega * T / pi with Omega = pi, T = 2
        assert asymptotic_dof(KernelSpec.time1d(math.pi), 2.0) == pytest.approx(2.0)

    def test_disk2d(self):
        k, area = 5.0, 0.8
        want = k * k * area / (4 * math.pi)
        assert asymptotic_dof(KernelSpec.disk2d(k), area) == pytest.approx(want)

    def test_ball3d(self):
        k0 = 2 * math.pi
        want = k0**3 / (6 * math.pi**2)  # = 4 pi / 3 at unit volume
        got = asymptotic_dof(KernelSpec.ball3d(k0), 1.0)
        assert got == pytest.approx(want, rel=1e-14)
        assert got == pytest.approx(4 * math.pi / 3, rel=1e-14)

    def test_shell_vanishes_as_radii_merge(self):
        k0 = 10.0
        got = asymptotic_dof(KernelSpec.shell3d(k0, k0 * (1 - 1e-9)), 1.0)
        assert 0.0 < got < 1e-6

    def test_no_formula_variants_rejected(self):
        for spec in (
            KernelSpec.sphere3d(5.0),
            KernelSpec.spacetime(5.0),
            KernelSpec.dual_ball(0.5),
            KernelSpec.dual_cuboid(0.3, 0.3, 0.3),
        ):
            with pytest.raises(ConfigurationError):
                asymptotic_dof(spec, 1.0)

    def test_bad_measure(self):
        with pytest.raises(ConfigurationError):
            asymptotic_dof(KernelSpec.time1d(1.0), 0.0)
        with pytest.raises(ConfigurationError):
            asymptotic_dof(KernelSpec.time1d(1.0), float("inf"))


class TestFdof:
    def test_synthetic_counts(self):
        spectrum = _spectrum_from([1.0, 0.9, 0.5, 1e-6])
        # eps = 0.1 -> threshold 0.01 -> first three qualify
        assert fdof(spectrum, 0.1) == 3
        assert fdof(spectrum, 0.8) == 2
        assert fdof(spectrum, 0.999) == 1

    def test_threshold_is_eps_squared(self):
        spectrum = _spectrum_from([1.0, 0.25])
        assert fdof(spectrum, 0.5) == 2  # 0.25 >= 0.25 inclusive
        assert fdof(spectrum, 0.500001) == 1

    def test_tiny_eps_counts_everything_positive(self):
        spectrum = _spectrum_from([1.0, 0.9, 0.5, 1e-6])
        assert fdof(spectrum, 1e-4) == 4

    def test_monotone_in_eps(self):
        grid = gl_box_grid([(0.0, 2.0)], [64])
        spectrum, _ = eigendecompose(assemble(KernelSpec.time1d(6 * math.pi), grid))
        counts = [fdof(spectrum, e) for e in (0.3, 0.1, 0.03, 0.01)]
        assert counts == sorted(counts)

    def test_raw_vs_normalized(self):
        # on a resolved grid the raw eigenvalues stay at or below 1, so the
        # raw count is at most the normalized one
        grid = uniform_box_grid([0.5, 0.5, 0.5], [11, 11, 11])
        k0 = 2 * math.pi * 3e9 / 299792458.0
        spectrum, _ = eigendecompose(assemble(KernelSpec.ball3d(k0), grid))
        for eps in (0.3, 0.1, 0.03):
            assert fdof(spectrum, eps, "raw") <= fdof(spectrum, eps, "normalized")

    def test_eps_validated(self):
        spectrum = _spectrum_from([1.0])
        for eps in (0.0, 1.0, -0.1, 1.5):
            with pytest.raises(ConfigurationError):
                fdof(spectrum, eps)

    def test_scale_validated(self):
        with pytest.raises(ConfigurationError):
            fdof(_spectrum_from([1.0]), 0.1, "absolute")


class TestShannon:
    def test_synthetic_flat_spectrum(self):
        spectrum = _spectrum_from([1.0, 1.0, 1.0, 0.0, 0.0])
        count, dev = shannon_check(spectrum, 3.0)
        assert count == 3
        assert dev == 0.0

    def test_empty_spectrum(self):
        assert shannon_count(_spectrum_from([])) == 0

    @pytest.mark.parametrize("omega_t", [4 * math.pi, 8 * math.pi])
    def test_time1d_transition_tracks_asymptote(self, omega_t):
        t_len = 2.0
        omega = omega_t / t_len
        grid = gl_box_grid([(0.0, t_len)], [128])
        spectrum, _ = eigendecompose(assemble(KernelSpec.time1d(omega), grid))
        count, dev = shannon_check(spectrum, omega_t / math.pi)
        assert count == shannon_count(spectrum)
        assert abs(dev) <= 2.0

    def test_asymptotic_validated(self):
        with pytest.raises(ConfigurationError):
            shannon_check(_spectrum_from([1.0]), 0.0)


class TestDofReport:
    def _report(self):
        grid = gl_box_grid([(0.0, 2.0)], [64])
        spec = KernelSpec.time1d(4 * math.pi)
        spectrum, _ = eigendecompose(assemble(spec, grid))
        return build_dof_report(spec, spectrum, region_measure=2.0), spectrum

    def test_fields(self):
        report, spectrum = self._report()
        assert report.asymptotic == pytest.approx(8.0)
        assert report.trace == pytest.approx(spectrum.trace)
        assert set(report.fdof_at) == {0.3, 0.1, 0.03, 0.01}

    def test_fdof_ladder_non_increasing_with_eps(self):
        report, _ = self._report()
        ordered = [report.fdof_at[e] for e in sorted(report.fdof_at)]
        # smaller eps -> lower threshold -> no fewer modes
        assert ordered == sorted(ordered, reverse=True)

    def test_shannon_at_most_total(self):
        report, spectrum = self._report()
        assert 0 < report.shannon_count <= spectrum.n

    def test_no_formula_kernel_keeps_asymptotic_none(self):
        grid = uniform_box_grid([0.3, 0.3, 0.3], [4, 4, 4])
        spec = KernelSpec.sphere3d(30.0)
        spectrum, _ = eigendecompose(assemble(spec, grid))
        report = build_dof_report(spec, spectrum, region_measure=0.027)
        assert report.asymptotic is None

    def test_as_dict_shape(self):
        report, _ = self._report()
        d = report.as_dict()
        assert d["asymptotic"] == pytest.approx(8.0)
        assert d["shannon_count"] == report.shannon_count
        assert list(d["fdof_at"]) == ["0.01", "0.03", "0.1", "0.3"]

    def test_custom_eps_ladder(self):
        grid = gl_box_grid([(0.0, 2.0)], [32])
        spec = KernelSpec.time1d(2 * math.pi)
        spectrum, _ = eigendecompose(assemble(spec, grid))
        report = build_dof_report(spec, spectrum, eps_ladder=(0.5, 0.2))
        assert set(report.fdof_at) == {0.5, 0.2}
        assert report.asymptotic is None  # no measure given


def test_report_is_frozen():
    report = DofReport(asymptotic=None, shannon_count=1, fdof_at={}, trace=1.0)
    with pytest.raises(AttributeError):
        report.trace = 2.0
