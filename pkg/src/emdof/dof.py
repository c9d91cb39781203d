"""Degree-of-freedom counts from concentration spectra.

Three views of the same quantity: the asymptotic closed formulas (volume of
the phase-space cell count), the threshold count #{lambda_i >= eps^2} behind
the functional-DoF definition, and the half-maximum count locating the
spectrum's cut-off transition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ConfigurationError
from .kernels import KernelSpec
from .spectrum import Spectrum

DEFAULT_EPS_LADDER = (0.3, 0.1, 0.03, 0.01)

RAW = "raw"
NORMALIZED = "normalized"


def asymptotic_dof(spec: KernelSpec, region_measure: float) -> float:
    """Closed-form asymptotic DoF of `spec` on a region of the given measure.

    Omega*T_len/pi in 1D time, K^2 A/(4 pi) on a plane, V k0^3/(6 pi^2) for
    the ball and V (k0^3 - k1^3)/(6 pi^2) for the shell. The sphere-surface,
    space-time and dual kernels have no such formula (their asymptotic count
    degenerates) and are rejected.
    """
    if not (math.isfinite(region_measure) and region_measure > 0.0):
        raise ConfigurationError(
            f"region_measure must be positive, got {region_measure}"
        )
    v = spec.variant
    if v == kernels.TIME1D:
        return spec.omega * region_measure / math.pi
    if v == kernels.DISK2D:
        return spec.k**2 * region_measure / (4.0 * math.pi)
    if v == kernels.BALL3D:
        return region_measure * spec.k0**3 / (6.0 * math.pi**2)
    if v == kernels.SHELL3D:
        return region_measure * (spec.k0**3 - spec.k1**3) / (6.0 * math.pi**2)
    raise ConfigurationError(
        f"no asymptotic DoF formula for kernel variant {v!r}"
    )


def fdof(spectrum: Spectrum, eps: float, scale: str = NORMALIZED) -> int:
    """Count of eigenvalues >= eps^2 on the chosen scale ('raw'|'normalized')."""
    if not 0.0 < eps < 1.0:
        raise ConfigurationError(f"eps must lie in (0, 1), got {eps}")
    if scale == RAW:
        values = spectrum.eigenvalues
    elif scale == NORMALIZED:
        values = spectrum.normalized
    else:
        raise ConfigurationError(f"scale must be 'raw' or 'normalized', got {scale!r}")
    return int(np.count_nonzero(values >= eps * eps))


def shannon_count(spectrum: Spectrum) -> int:
    """Count of eigenvalues at or above half the largest one."""
    if spectrum.n == 0:
        return 0
    return int(np.count_nonzero(spectrum.eigenvalues >= 0.5 * spectrum.eigenvalues[0]))


def shannon_check(spectrum: Spectrum, asymptotic: float) -> tuple[int, float]:
    """Half-maximum count and its deviation from the asymptotic DoF."""
    if not asymptotic > 0.0:
        raise ConfigurationError(f"asymptotic must be positive, got {asymptotic}")
    count = shannon_count(spectrum)
    return count, count - asymptotic


@dataclass(frozen=True)
class DofReport:
    """Summary DoF statistics of one spectrum.

    `asymptotic` is None for kernels without a closed formula rather than 0,
    since the degenerate limit is not the operative count. `fdof_at` is on
    the normalized scale.
    """

    asymptotic: float | None
    shannon_count: int
    fdof_at: dict[float, int]
    trace: float

    def as_dict(self) -> dict:
        return {
            "asymptotic": self.asymptotic,
            "shannon_count": self.shannon_count,
            "fdof_at": {str(eps): n for eps, n in sorted(self.fdof_at.items())},
            "trace": self.trace,
        }


def build_dof_report(
    spec: KernelSpec,
    spectrum: Spectrum,
    region_measure: float | None = None,
    eps_ladder=DEFAULT_EPS_LADDER,
) -> DofReport:
    """DofReport for `spectrum`; asymptotic filled only where a formula exists."""
    asymptotic = None
    if region_measure is not None and spec.variant in (
        kernels.TIME1D,
        kernels.DISK2D,
        kernels.BALL3D,
        kernels.SHELL3D,
    ):
        asymptotic = asymptotic_dof(spec, region_measure)
    ladder = {float(eps): fdof(spectrum, float(eps), NORMALIZED) for eps in eps_ladder}
    return DofReport(
        asymptotic=asymptotic,
        shannon_count=shannon_count(spectrum),
        fdof_at=ladder,
        trace=spectrum.trace,
    )
