"""Discrete channel operators between two sampled regions.

A kernel G(y, x) between a transmit grid and a receive grid defines
(Pg)(y_j) = sum_i w^tx_i G(y_j, x_i) g(x_i). Singular values of the
weight-symmetrized matrix sqrt(W_rx) G sqrt(W_tx) give the channel DoF:
the best rank-n approximation errs by sigma_{n+1}, so cdof(delta) counts
singular values above delta.

`verify_theorem2` ties this to the functional DoF of the two regions: with
N1 tx modes kept at tolerance eps1 and N2 rx modes at eps2, the truncation
error of the channel at rank max(N1, N2) stays below
hs_norm * eps1 + hs_norm * (1 + eps1) * eps2. The harness instantiates the
two function classes as ball-bandlimited fields on random boxes and uses the
ball kernel itself as the channel, which is bandlimited in both arguments,
and checks the inequality over seeded random geometries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import dof, quadrature, spectrum
from .errors import ConfigurationError, NumericFailureError
from .kernels import KernelSpec, evaluate
from .quadrature import Grid


@dataclass(frozen=True)
class ChannelOperator:
    """Sampled kernel between a transmit and a receive grid."""

    tx_grid: Grid
    rx_grid: Grid
    kernel_samples: np.ndarray  # n_rx x n_tx, G(y_j, x_i)
    weighted: np.ndarray  # sqrt(W_rx) G sqrt(W_tx)

    @property
    def shape(self) -> tuple[int, int]:
        return self.kernel_samples.shape


def build_channel_operator(spec: KernelSpec, tx_grid: Grid, rx_grid: Grid) -> ChannelOperator:
    """Sample `spec` at all rx/tx node pairs and form the weighted matrix."""
    if tx_grid.dim != rx_grid.dim:
        raise ConfigurationError(
            f"tx and rx grids must share a dimension, got {tx_grid.dim} and {rx_grid.dim}"
        )
    g = evaluate(spec, rx_grid.nodes[:, np.newaxis, :], tx_grid.nodes[np.newaxis, :, :])
    if not np.all(np.isfinite(g)):
        raise NumericFailureError("channel kernel produced non-finite samples")
    weighted = np.sqrt(rx_grid.weights)[:, np.newaxis] * g * np.sqrt(tx_grid.weights)[np.newaxis, :]
    return ChannelOperator(tx_grid=tx_grid, rx_grid=rx_grid, kernel_samples=g, weighted=weighted)


def hs_norm(op: ChannelOperator) -> float:
    """Hilbert-Schmidt norm sqrt(sum_ij w^rx_j w^tx_i G_ji^2)."""
    return float(np.linalg.norm(op.weighted))


def apply_channel(op: ChannelOperator, g: np.ndarray) -> np.ndarray:
    """Receive-side samples (Pg)_j = sum_i w^tx_i G_ji g_i."""
    g = np.asarray(g, dtype=np.float64)
    n_tx = op.kernel_samples.shape[1]
    if g.shape != (n_tx,):
        raise ConfigurationError(f"field must have shape ({n_tx},), got {g.shape}")
    return op.kernel_samples @ (op.tx_grid.weights * g)


def singular_values(op: ChannelOperator) -> np.ndarray:
    """Descending singular values of the weighted matrix."""
    try:
        return np.linalg.svd(op.weighted, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NumericFailureError(f"singular value decomposition failed: {exc}") from exc


def cdof(op: ChannelOperator, delta: float) -> int:
    """Count of singular values strictly above delta."""
    if not delta > 0.0:
        raise ConfigurationError(f"delta must be positive, got {delta}")
    return int(np.count_nonzero(singular_values(op) > delta))


@dataclass(frozen=True)
class TrialGeometry:
    """Sampling ranges for randomized channel trials.

    Extents and offsets keep every box inside the unit cube; node counts per
    axis stay small enough that a trial's dense decompositions remain cheap.
    """

    extent_range: tuple[float, float] = (0.25, 0.6)
    k0_range: tuple[float, float] = (2.0 * math.pi, 12.0 * math.pi)
    count_range: tuple[int, int] = (5, 9)

    _MAX_EXTENT = 1.0
    _MAX_K0 = 20.0 * math.pi
    _MAX_COUNT = 9

    def __post_init__(self):
        lo, hi = self.extent_range
        if not 0.0 < lo <= hi <= self._MAX_EXTENT:
            raise ConfigurationError(
                f"extent_range must satisfy 0 < lo <= hi <= {self._MAX_EXTENT}, got {self.extent_range}"
            )
        lo, hi = self.k0_range
        if not 0.0 < lo <= hi <= self._MAX_K0:
            raise ConfigurationError(
                f"k0_range must satisfy 0 < lo <= hi <= {self._MAX_K0:.6g}, got {self.k0_range}"
            )
        lo, hi = self.count_range
        if not 1 <= lo <= hi <= self._MAX_COUNT:
            raise ConfigurationError(
                f"count_range must satisfy 1 <= lo <= hi <= {self._MAX_COUNT}, got {self.count_range}"
            )

    def draw_box(self, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Random (extents, origin, counts) for one box inside the unit cube."""
        lo, hi = self.extent_range
        extents = rng.uniform(lo, hi, size=3)
        origin = rng.uniform(0.0, self._MAX_EXTENT - extents)
        counts = rng.integers(self.count_range[0], self.count_range[1] + 1, size=3)
        return extents, origin, counts


@dataclass(frozen=True)
class Theorem2Record:
    """One trial's functional-DoF counts and channel truncation check.

    `achieved_error` is sigma_{max(n1, n2) + 1} (0 beyond the matrix rank)
    and `holds` asserts achieved_error <= delta. `cdof_within_min` is
    exploratory: whether cdof(delta) <= min(n1, n2) also held.
    """

    n1: int
    n2: int
    delta: float
    achieved_error: float
    holds: bool
    cdof_value: int
    cdof_within_min: bool


@dataclass(frozen=True)
class ChannelReport:
    """Per-trial summary emitted by verify_theorem2."""

    trial: int
    k0: float
    hs_norm: float
    singular_values: np.ndarray
    cdof_at: dict[float, int]
    theorem2: Theorem2Record
    lemma1_max_ratio: float
    tx_extents: tuple[float, float, float]
    rx_extents: tuple[float, float, float]


def _offset_box_grid(extents, origin, counts, node_cap) -> Grid:
    base = quadrature.uniform_box_grid(extents, counts, node_cap=node_cap)
    nodes = base.nodes + np.asarray(origin, dtype=np.float64)[np.newaxis, :]
    return Grid(
        dim=base.dim,
        nodes=np.ascontiguousarray(nodes),
        weights=base.weights.copy(),
        domain_tag=base.domain_tag,
    )


def _lemma1_max_ratio(op: ChannelOperator, rng: np.random.Generator, n_fields: int) -> float:
    """max ||Pg||_rx / ||g||_tx over random fields g."""
    n_tx = op.kernel_samples.shape[1]
    g = rng.standard_normal((n_tx, n_fields))
    out = op.kernel_samples @ (op.tx_grid.weights[:, np.newaxis] * g)
    norm_in = np.sqrt(op.tx_grid.weights @ (g * g))
    norm_out = np.sqrt(op.rx_grid.weights @ (out * out))
    return float(np.max(norm_out / norm_in))


def verify_theorem2(
    tx_spec: KernelSpec | None = None,
    rx_spec: KernelSpec | None = None,
    geometry: TrialGeometry | None = None,
    eps1: float = 0.1,
    eps2: float = 0.1,
    trials: int = 100,
    seed: int = 0,
    n_test_fields: int = 1000,
) -> list[ChannelReport]:
    """Randomized check of the rank-truncation bound, one report per trial.

    Each trial draws tx and rx boxes (and a shared band limit k0, unless
    fixed tx/rx ball specs are supplied), computes N1 and N2 as the raw-scale
    eps1/eps2 functional DoF of the two concentration spectra, builds the
    ball-kernel channel between the boxes, and checks
    sigma_{max(N1,N2)+1} <= hs*eps1 + hs*(1+eps1)*eps2. Randomness derives
    from (seed, trial), so trials may run in any order.
    """
    if not (0.0 < eps1 < 1.0 and 0.0 < eps2 < 1.0):
        raise ConfigurationError(f"eps1 and eps2 must lie in (0, 1), got {eps1}, {eps2}")
    if trials < 1:
        raise ConfigurationError(f"trials must be >= 1, got {trials}")
    for name, fixed in (("tx_spec", tx_spec), ("rx_spec", rx_spec)):
        if fixed is not None and fixed.variant != "ball3d":
            raise ConfigurationError(f"{name} must be a ball3d spec, got {fixed.variant!r}")
    if tx_spec is not None and rx_spec is not None and tx_spec.k0 != rx_spec.k0:
        raise ConfigurationError(
            "fixed tx and rx specs must share k0 so one channel band limit exists"
        )
    geometry = geometry or TrialGeometry()
    node_cap = quadrature.DEFAULT_NODE_CAP

    reports = []
    for trial in range(trials):
        rng = np.random.default_rng((seed, trial))
        fixed = tx_spec if tx_spec is not None else rx_spec
        k0 = fixed.k0 if fixed is not None else rng.uniform(*geometry.k0_range)
        spec = KernelSpec.ball3d(k0)

        tx_box = geometry.draw_box(rng)
        rx_box = geometry.draw_box(rng)
        tx_grid = _offset_box_grid(*tx_box, node_cap)
        rx_grid = _offset_box_grid(*rx_box, node_cap)

        tx_spectrum, _ = spectrum.eigendecompose(spectrum.assemble(spec, tx_grid))
        rx_spectrum, _ = spectrum.eigendecompose(spectrum.assemble(spec, rx_grid))
        n1 = dof.fdof(tx_spectrum, eps1, dof.RAW)
        n2 = dof.fdof(rx_spectrum, eps2, dof.RAW)

        op = build_channel_operator(spec, tx_grid, rx_grid)
        hs = hs_norm(op)
        sigma = singular_values(op)
        delta = hs * eps1 + hs * (1.0 + eps1) * eps2
        rank_kept = max(n1, n2)
        achieved = float(sigma[rank_kept]) if rank_kept < sigma.size else 0.0
        cdof_value = int(np.count_nonzero(sigma > delta))
        record = Theorem2Record(
            n1=n1,
            n2=n2,
            delta=delta,
            achieved_error=achieved,
            holds=achieved <= delta,
            cdof_value=cdof_value,
            cdof_within_min=cdof_value <= min(n1, n2),
        )
        reports.append(
            ChannelReport(
                trial=trial,
                k0=k0,
                hs_norm=hs,
                singular_values=sigma,
                cdof_at={delta: cdof_value},
                theorem2=record,
                lemma1_max_ratio=_lemma1_max_ratio(op, rng, n_test_fields),
                tx_extents=tuple(float(e) for e in tx_box[0]),
                rx_extents=tuple(float(e) for e in rx_box[0]),
            )
        )
    return reports
