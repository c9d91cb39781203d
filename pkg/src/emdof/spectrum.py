"""Dense symmetric discretization of concentration operators.

A kernel D and a quadrature grid (p_i, w_i) induce the symmetrized matrix
M_ij = sqrt(w_i) D(p_i, p_j) sqrt(w_j), whose eigenvalues approximate the
operator's and whose scaled eigenvectors sample its eigenfunctions. On
wavenumber sector grids the radial k^2 measure factor is folded into the
scaling symmetrically (k_i sqrt(w_i) on each side), so the effective node
weight there is k_i^2 w_i.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels, quadrature
from .errors import CapacityError, ConfigurationError, NumericFailureError
from .kernels import KernelSpec
from .quadrature import Grid

# Grid tags each kernel variant can be discretized on, with the point
# dimension the kernel expects.
_COMPATIBLE_TAGS = {
    kernels.TIME1D: frozenset({quadrature.INTERVAL}),
    kernels.DISK2D: frozenset({quadrature.BOX}),
    kernels.BALL3D: frozenset({quadrature.BOX}),
    kernels.SHELL3D: frozenset({quadrature.BOX}),
    kernels.SPHERE3D: frozenset({quadrature.BOX}),
    kernels.SPACETIME: frozenset({quadrature.SPACE_TIME}),
    kernels.DUAL_BALL: frozenset(
        {
            quadrature.WAVENUMBER_BALL_SECTOR,
            quadrature.SPHERE_SURFACE,
            quadrature.SPHERICAL_CAP,
        }
    ),
    kernels.DUAL_CUBOID: frozenset(
        {
            quadrature.WAVENUMBER_BALL_SECTOR,
            quadrature.SPHERE_SURFACE,
            quadrature.SPHERICAL_CAP,
        }
    ),
}

_EXPECTED_DIM = {
    kernels.TIME1D: 1,
    kernels.DISK2D: 2,
    kernels.BALL3D: 3,
    kernels.SHELL3D: 3,
    kernels.SPHERE3D: 3,
    kernels.SPACETIME: 2,
    kernels.DUAL_BALL: 3,
    kernels.DUAL_CUBOID: 3,
}


@dataclass(frozen=True)
class DiscreteOperator:
    """Symmetrized dense matrix of a concentration operator on a grid."""

    matrix: np.ndarray
    grid: Grid
    spec: KernelSpec
    radial_jacobian_applied: bool
    sqrt_weights: np.ndarray
    effective_weights: np.ndarray

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues in descending order with their trace and lambda/lambda1."""

    eigenvalues: np.ndarray
    trace: float
    normalized: np.ndarray

    @property
    def n(self) -> int:
        return self.eigenvalues.shape[0]


@dataclass(frozen=True)
class PatternSet:
    """Eigenfunction samples values[i, j] = f_i(p_j), orthonormal under weights."""

    values: np.ndarray
    grid: Grid
    weights: np.ndarray

    @property
    def n_modes(self) -> int:
        return self.values.shape[0]


def assemble(
    spec: KernelSpec, grid: Grid, node_cap: int = quadrature.DEFAULT_NODE_CAP
) -> DiscreteOperator:
    """Build the symmetrized matrix of `spec` on `grid`.

    Sector grids fold the radial k^2 Jacobian into the weights; unit-sphere
    grids for the dual kernels are scaled to radius spec.k0 first.
    """
    n = grid.n_nodes
    if n > node_cap:
        raise CapacityError(
            f"grid has {n} nodes, above the cap {node_cap}; "
            f"the dense matrix would hold {n * n} entries"
        )
    allowed = _COMPATIBLE_TAGS[spec.variant]
    if grid.domain_tag not in allowed:
        raise ConfigurationError(
            f"kernel {spec.variant!r} cannot be discretized on a "
            f"{grid.domain_tag!r} grid (allowed: {sorted(allowed)})"
        )
    if grid.dim != _EXPECTED_DIM[spec.variant]:
        raise ConfigurationError(
            f"kernel {spec.variant!r} expects {_EXPECTED_DIM[spec.variant]}-dimensional "
            f"points, grid has dim {grid.dim}"
        )

    points = grid.nodes
    radial_jacobian_applied = False
    if grid.domain_tag == quadrature.WAVENUMBER_BALL_SECTOR:
        radii = np.sqrt(np.sum(grid.nodes * grid.nodes, axis=1))
        effective = radii * radii * grid.weights
        radial_jacobian_applied = True
    elif grid.domain_tag in (quadrature.SPHERE_SURFACE, quadrature.SPHERICAL_CAP):
        if spec.k0 is None:
            raise ConfigurationError(
                f"kernel {spec.variant!r} on a {grid.domain_tag!r} grid needs k0, "
                "the radius of the wavenumber sphere the unit directions scale to"
            )
        points = spec.k0 * grid.nodes
        effective = grid.weights
    else:
        effective = grid.weights

    sw = np.sqrt(effective)
    dense = kernels.pairwise_matrix(spec, points)
    matrix = dense * np.outer(sw, sw)
    matrix.flags.writeable = False
    return DiscreteOperator(
        matrix=matrix,
        grid=grid,
        spec=spec,
        radial_jacobian_applied=radial_jacobian_applied,
        sqrt_weights=sw,
        effective_weights=effective,
    )


# Normalized eigenvalues in [-NEG_FLOOR * lambda1, 0) are quadrature noise
# and are reported as 0; raw values are kept unchanged.
_NEG_FLOOR = 1e-9


def eigendecompose(op: DiscreteOperator) -> tuple[Spectrum, PatternSet]:
    """Full symmetric eigendecomposition, eigenvalues descending.

    Pattern row i samples eigenfunction f_i at the grid nodes,
    f_i(p_j) = v_ij / sqrt(w_j) with w the effective weights, so the
    weighted Gram of the rows is the identity.
    """
    try:
        evals, evecs = np.linalg.eigh(op.matrix)
    except np.linalg.LinAlgError as exc:
        raise NumericFailureError(f"eigendecomposition failed: {exc}") from exc
    evals = evals[::-1]
    evecs = evecs[:, ::-1]

    trace = float(np.trace(op.matrix))
    lam1 = evals[0] if op.n else 0.0
    if lam1 > 0.0:
        normalized = evals / lam1
        noise = (normalized < 0.0) & (normalized >= -_NEG_FLOOR)
        normalized = np.where(noise, 0.0, normalized)
    else:
        normalized = np.zeros_like(evals)

    spectrum = Spectrum(eigenvalues=evals, trace=trace, normalized=normalized)
    patterns = PatternSet(
        values=evecs.T / op.sqrt_weights[np.newaxis, :],
        grid=op.grid,
        weights=op.effective_weights,
    )
    return spectrum, patterns


def correlation_matrix(patterns: PatternSet, n_modes: int) -> np.ndarray:
    """Weighted Gram matrix of the first n_modes patterns."""
    if not 1 <= n_modes <= patterns.n_modes:
        raise ConfigurationError(
            f"n_modes must be in [1, {patterns.n_modes}], got {n_modes}"
        )
    v = patterns.values[:n_modes]
    return (v * patterns.weights[np.newaxis, :]) @ v.T
