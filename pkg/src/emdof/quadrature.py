"""Quadrature rules and discretization grids for concentration operators.

Every region of interest (time interval, planar/volumetric box, spherical cap,
radial wavenumber sector, space-time slab) is discretized into a Grid: a flat
list of nodes with strictly positive quadrature weights whose sum equals the
region measure. Grids are deterministic: identical inputs produce bitwise
identical node orderings, with the last axis varying fastest.

The Gauss-Legendre rule is computed from scratch: nodes are Legendre roots
found by Newton iteration from the Chebyshev-angle initial guess, and weights
use A_k = 2 / (n * P_{n-1}(x_k) * P'_n(x_k)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, ConfigurationError, InvalidRegionError, NumericFailureError

# Domain tags
INTERVAL = "interval"
BOX = "box"
SPHERE_SURFACE = "sphere_surface"
SPHERICAL_CAP = "spherical_cap"
WAVENUMBER_BALL_SECTOR = "wavenumber_ball_sector"
SPACE_TIME = "space_time"

DOMAIN_TAGS = frozenset(
    {INTERVAL, BOX, SPHERE_SURFACE, SPHERICAL_CAP, WAVENUMBER_BALL_SECTOR, SPACE_TIME}
)

DEFAULT_NODE_CAP = 5000

_GL_MAX_N = 10_000
_GL_STEP_TOL = 1e-15


@dataclass(frozen=True)
class Grid:
    """A flat quadrature grid over one region.

    nodes has shape (n, dim) and weights shape (n,); weights are strictly
    positive and sum to the represented product measure. For
    wavenumber_ball_sector grids the stored weights integrate dk x dS; the
    k^2 radial Jacobian is folded in at operator assembly, not here.
    """

    dim: int
    nodes: np.ndarray
    weights: np.ndarray
    domain_tag: str

    def __post_init__(self):
        if self.domain_tag not in DOMAIN_TAGS:
            raise ConfigurationError(f"unknown domain_tag {self.domain_tag!r}")
        nodes = np.ascontiguousarray(np.asarray(self.nodes, dtype=np.float64))
        weights = np.ascontiguousarray(np.asarray(self.weights, dtype=np.float64))
        if nodes.ndim != 2 or nodes.shape[1] != self.dim:
            raise ConfigurationError(
                f"nodes must have shape (n, {self.dim}), got {nodes.shape}"
            )
        if weights.shape != (nodes.shape[0],):
            raise ConfigurationError(
                f"weights must have shape ({nodes.shape[0]},), got {weights.shape}"
            )
        if not np.all(weights > 0.0):
            raise ConfigurationError("all quadrature weights must be strictly positive")
        nodes.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    @property
    def n_nodes(self) -> int:
        return self.nodes.shape[0]

    @property
    def measure(self) -> float:
        return float(self.weights.sum())


def _check_node_cap(total: int, node_cap: int) -> None:
    if total > node_cap:
        raise CapacityError(f"grid would need {total} nodes, node cap is {node_cap}")


def _legendre_triplet(n: int, x: np.ndarray):
    """Evaluate (P_n, P'_n, P_{n-1}) at x via the three-term recurrence."""
    p_prev = np.ones_like(x)
    p = x.copy()
    for k in range(1, n):
        p_prev, p = p, ((2 * k + 1) * x * p - k * p_prev) / (k + 1)
    dp = n * (x * p - p_prev) / (x * x - 1.0)
    return p, dp, p_prev


def gauss_legendre_rule(n: int, max_iter: int = 100):
    """Nodes and weights of the n-point Gauss-Legendre rule on (-1, 1).

    Returns (nodes, weights) with nodes ascending. Weights sum to 2 within
    1e-13. Raises NumericFailureError if any Newton iteration fails to
    converge within max_iter steps.
    """
    if not isinstance(n, (int, np.integer)):
        raise ConfigurationError(f"n must be an integer, got {type(n).__name__}")
    n = int(n)
    if n < 1 or n > _GL_MAX_N:
        raise ConfigurationError(f"n must satisfy 1 <= n <= {_GL_MAX_N}, got {n}")

    k = np.arange(1, n + 1, dtype=np.float64)
    x = np.cos(math.pi * (k - 0.25) / (n + 0.5))

    converged = False
    for _ in range(max_iter):
        p, dp, _ = _legendre_triplet(n, x)
        step = p / dp
        x = x - step
        if np.max(np.abs(step)) <= _GL_STEP_TOL:
            converged = True
            break
    if not converged:
        raise NumericFailureError(
            f"Legendre root search did not converge for n={n} within {max_iter} iterations"
        )

    _, dp, p_prev = _legendre_triplet(n, x)
    w = 2.0 / (n * p_prev * dp)
    return x[::-1].copy(), w[::-1].copy()


def _axis_nodes(lo: float, hi: float, count: int, rule: str):
    """Per-axis 1-D nodes/weights on [lo, hi] for rule 'uniform' or 'gauss_legendre'."""
    if rule == "uniform":
        width = (hi - lo) / count
        nodes = lo + (np.arange(count, dtype=np.float64) + 0.5) * width
        weights = np.full(count, width, dtype=np.float64)
    elif rule == "gauss_legendre":
        xi, wi = gauss_legendre_rule(count)
        nodes = 0.5 * (lo + hi) + 0.5 * (hi - lo) * xi
        weights = 0.5 * (hi - lo) * wi
    else:
        raise ConfigurationError(f"unknown axis rule {rule!r}")
    return nodes, weights


def _product_grid(axes, tag: str, node_cap: int) -> Grid:
    """Tensor grid from per-axis (nodes, weights), last axis fastest."""
    counts = [len(nodes) for nodes, _ in axes]
    total = 1
    for c in counts:
        total *= c
    _check_node_cap(total, node_cap)
    mesh = np.meshgrid(*[nodes for nodes, _ in axes], indexing="ij")
    nodes = np.stack([m.reshape(-1) for m in mesh], axis=-1)
    weights = axes[0][1]
    for _, w in axes[1:]:
        weights = np.multiply.outer(weights, w)
    return Grid(
        dim=len(axes),
        nodes=nodes,
        weights=np.asarray(weights).reshape(-1),
        domain_tag=tag,
    )


def _validate_extents(extents):
    # Each axis is either a length L (meaning [0, L]) or an explicit (lo, hi).
    pairs = []
    for i, axis in enumerate(extents):
        if np.ndim(axis) == 0:
            lo, hi = 0.0, float(axis)
        else:
            lo, hi = (float(v) for v in axis)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise ConfigurationError(f"axis {i}: extents must be finite, got [{lo}, {hi}]")
        if not lo < hi:
            raise ConfigurationError(f"axis {i}: extent lower bound must be < upper, got [{lo}, {hi}]")
        pairs.append((lo, hi))
    return pairs


def _validate_counts(counts, n_axes: int):
    counts = list(counts)
    if len(counts) != n_axes:
        raise ConfigurationError(f"expected {n_axes} per-axis counts, got {len(counts)}")
    out = []
    for i, c in enumerate(counts):
        if not isinstance(c, (int, np.integer)) or int(c) < 1:
            raise ConfigurationError(f"axis {i}: count must be a positive integer, got {c!r}")
        out.append(int(c))
    return out


def _box_grid(extents, counts, rule: str, node_cap: int) -> Grid:
    extents = _validate_extents(extents)
    if not 1 <= len(extents) <= 3:
        raise ConfigurationError(f"box grids support 1 to 3 axes, got {len(extents)}")
    counts = _validate_counts(counts, len(extents))
    axes = [_axis_nodes(lo, hi, c, rule) for (lo, hi), c in zip(extents, counts)]
    tag = INTERVAL if len(axes) == 1 else BOX
    return _product_grid(axes, tag, node_cap)


def uniform_box_grid(extents, counts, node_cap: int = DEFAULT_NODE_CAP) -> Grid:
    """Midpoint-cell lattice over a 1-3 axis box; weight = cell volume."""
    return _box_grid(extents, counts, "uniform", node_cap)


def gl_box_grid(extents, counts, node_cap: int = DEFAULT_NODE_CAP) -> Grid:
    """Per-axis Gauss-Legendre grid affine-mapped onto a 1-3 axis box."""
    return _box_grid(extents, counts, "gauss_legendre", node_cap)


_FULL_TOL = 1e-12


def _sphere_axes(n_polar, n_azimuth, theta_range, phi_range):
    theta_lo, theta_hi = (float(v) for v in theta_range)
    phi_lo, phi_hi = (float(v) for v in phi_range)
    if not (0.0 <= theta_lo <= math.pi and 0.0 <= theta_hi <= math.pi):
        raise ConfigurationError(f"polar angles must lie in [0, pi], got [{theta_lo}, {theta_hi}]")
    if theta_lo > theta_hi or phi_lo > phi_hi:
        raise ConfigurationError("angle ranges must be ordered lo <= hi")
    if phi_hi - phi_lo > 2.0 * math.pi + _FULL_TOL:
        raise ConfigurationError(f"azimuth span must be <= 2*pi, got {phi_hi - phi_lo}")
    if theta_lo == theta_hi or phi_lo == phi_hi:
        raise InvalidRegionError("spherical cap has zero measure")
    n_polar, n_azimuth = _validate_counts([n_polar, n_azimuth], 2)

    # Gauss-Legendre in u = cos(theta), uniform midpoint cells in phi.
    u_nodes, u_weights = _axis_nodes(math.cos(theta_hi), math.cos(theta_lo), n_polar, "gauss_legendre")
    phi_nodes, phi_weights = _axis_nodes(phi_lo, phi_hi, n_azimuth, "uniform")

    full = (
        theta_lo <= _FULL_TOL
        and theta_hi >= math.pi - _FULL_TOL
        and phi_hi - phi_lo >= 2.0 * math.pi - _FULL_TOL
    )
    return (u_nodes, u_weights), (phi_nodes, phi_weights), full


def _sphere_points(u_nodes, phi_nodes):
    """Unit vectors for the (polar-major, azimuth-fastest) tensor ordering."""
    u = np.repeat(u_nodes, len(phi_nodes))
    phi = np.tile(phi_nodes, len(u_nodes))
    sin_theta = np.sqrt(np.maximum(0.0, 1.0 - u * u))
    return np.stack([sin_theta * np.cos(phi), sin_theta * np.sin(phi), u], axis=-1)


def sphere_grid(
    n_polar: int,
    n_azimuth: int,
    theta_range=(0.0, math.pi),
    phi_range=(0.0, 2.0 * math.pi),
    node_cap: int = DEFAULT_NODE_CAP,
) -> Grid:
    """Unit-sphere (or cap) grid; weights sum to the cap surface area.

    Polar direction uses Gauss-Legendre in cos(theta), azimuth uses uniform
    midpoint cells, so the full-sphere measure 4*pi is exact.
    """
    (u_nodes, u_weights), (phi_nodes, phi_weights), full = _sphere_axes(
        n_polar, n_azimuth, theta_range, phi_range
    )
    _check_node_cap(len(u_nodes) * len(phi_nodes), node_cap)
    nodes = _sphere_points(u_nodes, phi_nodes)
    weights = np.multiply.outer(u_weights, phi_weights).reshape(-1)
    tag = SPHERE_SURFACE if full else SPHERICAL_CAP
    return Grid(dim=3, nodes=nodes, weights=weights, domain_tag=tag)


def wavenumber_sector_grid(
    k_lo: float,
    k_hi: float,
    n_radial: int,
    n_polar: int,
    n_azimuth: int,
    theta_range=(0.0, math.pi),
    phi_range=(0.0, 2.0 * math.pi),
    node_cap: int = DEFAULT_NODE_CAP,
) -> Grid:
    """Radial Gauss-Legendre x spherical grid over a wavenumber ball sector.

    Nodes are wavenumber 3-vectors k * khat. Radial weights are plain dk
    (no k^2 Jacobian); operator assembly folds k_i * k_j into the
    symmetrized weights.
    """
    k_lo, k_hi = float(k_lo), float(k_hi)
    if not (0.0 <= k_lo < k_hi) or not math.isfinite(k_hi):
        raise ConfigurationError(f"radial range must satisfy 0 <= k_lo < k_hi, got [{k_lo}, {k_hi}]")
    (n_radial,) = _validate_counts([n_radial], 1)
    (u_nodes, u_weights), (phi_nodes, phi_weights), _ = _sphere_axes(
        n_polar, n_azimuth, theta_range, phi_range
    )
    n_sphere = len(u_nodes) * len(phi_nodes)
    _check_node_cap(n_radial * n_sphere, node_cap)

    k_nodes, k_weights = _axis_nodes(k_lo, k_hi, n_radial, "gauss_legendre")
    directions = _sphere_points(u_nodes, phi_nodes)
    sphere_weights = np.multiply.outer(u_weights, phi_weights).reshape(-1)

    nodes = (k_nodes[:, None, None] * directions[None, :, :]).reshape(-1, 3)
    weights = np.multiply.outer(k_weights, sphere_weights).reshape(-1)
    return Grid(dim=3, nodes=nodes, weights=weights, domain_tag=WAVENUMBER_BALL_SECTOR)


def space_time_grid(
    length: float,
    n_x: int,
    t_half_span: float,
    n_t: int,
    rule: str = "uniform",
    node_cap: int = DEFAULT_NODE_CAP,
) -> Grid:
    """Product grid over [0, length] x [-T, T]; nodes are (x, t) pairs."""
    length = float(length)
    t_half_span = float(t_half_span)
    if not (length > 0.0 and math.isfinite(length)):
        raise ConfigurationError(f"length must be positive and finite, got {length}")
    if not (t_half_span > 0.0 and math.isfinite(t_half_span)):
        raise ConfigurationError(f"t_half_span must be positive and finite, got {t_half_span}")
    n_x, n_t = _validate_counts([n_x, n_t], 2)
    if rule not in ("uniform", "gauss_legendre"):
        raise ConfigurationError(f"unknown grid rule {rule!r}")
    axes = [
        _axis_nodes(0.0, length, n_x, rule),
        _axis_nodes(-t_half_span, t_half_span, n_t, rule),
    ]
    return _product_grid(axes, SPACE_TIME, node_cap)
