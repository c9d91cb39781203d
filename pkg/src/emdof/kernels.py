"""Closed-form concentration kernels and their parameter specs.

Each kernel D(p, q) is the inverse Fourier transform of the indicator of a
frequency/wavenumber concentration region, so the integral operator
f -> integral_R D(., q) f(q) dq projects onto fields bandlimited to that
region and concentrated on R:

  time1d    band [-Omega, Omega] rad/s          -> sin(Omega tau) / (pi tau)
  disk2d    wavenumber disk of radius K         -> (K / 2 pi) J_1(K d) / d
  ball3d    wavenumber ball of radius k0        -> (sin(k0 d)/d^3 - k0 cos(k0 d)/d^2) / (2 pi^2)
  shell3d   spherical shell k1 < |k| < k0       -> ball(k0) - ball(k1)
  sphere3d  sphere surface |k| = k0             -> k0 sin(k0 d) / (2 pi^2 d)
  spacetime double light cone |w| = c|k|, |k| <= k0, over (x, t) pairs
  dual_ball / dual_cuboid                       -> transforms of spatial-region
            indicators, evaluated at wavenumber-vector differences

The space-time kernel follows its defining radial integral
(2 pi)^-3 * int_0^k0 4 pi sinc(k d) 2 cos(c k tau) k^2 dk, whose closed form
is D = [S(d + c tau) + S(d - c tau)] / (2 pi^2 d) with
S(a) = sin(k0 a)/a^2 - k0 cos(k0 a)/a; the tau = 0 slice equals twice the
ball3d kernel. All kernels switch to Taylor series at small arguments; the
series and closed forms agree to better than 1e-10 at each switchover.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError

C_LIGHT = 299792458.0

# Dimensionless small-argument thresholds. The 3D radial closed forms lose
# ~eps/u^2 to cancellation, so their switchover sits at 1e-2 where both
# branches are good to ~1e-12; the 1D/2D forms are stable down to 1e-8.
_SMALL_U_RADIAL = 1e-2
_SMALL_U_1D = 1e-8
_SMALL_D_SPACETIME = 1e-5
_SMALL_DELTA_CUBOID = 1e-12

_J1_SPLIT = 12.0
_J1_SERIES_TERMS = 40
_J1_ASYM_TERMS = 24

# Kernel variants
TIME1D = "time1d"
DISK2D = "disk2d"
BALL3D = "ball3d"
SHELL3D = "shell3d"
SPHERE3D = "sphere3d"
SPACETIME = "spacetime"
DUAL_BALL = "dual_ball"
DUAL_CUBOID = "dual_cuboid"

VARIANTS = frozenset(
    {TIME1D, DISK2D, BALL3D, SHELL3D, SPHERE3D, SPACETIME, DUAL_BALL, DUAL_CUBOID}
)

# Variants whose eigenproblem lives on wavenumber-domain grids.
DUAL_VARIANTS = frozenset({DUAL_BALL, DUAL_CUBOID})


def _as_float_array(x):
    return np.asarray(x, dtype=np.float64)


def _maybe_scalar(value):
    arr = np.asarray(value)
    return float(arr) if arr.ndim == 0 else arr


def _require_positive(name: str, value) -> float:
    value = float(value)
    if not (math.isfinite(value) and value > 0.0):
        raise ConfigurationError(f"{name} must be positive and finite, got {value}")
    return value


# ---------------------------------------------------------------------------
# Bessel J1


def _j1_series(z):
    """Power series of J1, adequate for |z| <= 12."""
    z = _as_float_array(z)
    u = 0.25 * z * z
    term = 0.5 * z
    acc = term.copy() if term.ndim else np.asarray(term)
    for m in range(1, _J1_SERIES_TERMS + 1):
        term = term * (-u) / (m * (m + 1))
        acc = acc + term
    return acc


def _j1_asymptotic(z):
    """Hankel asymptotic expansion of J1 for z >= 12 (positive z only)."""
    z = _as_float_array(z)
    mu = 4.0
    a = 1.0
    zp = np.ones_like(z)
    zi = 1.0 / z
    p = np.ones_like(z)
    q = np.zeros_like(z)
    for k in range(1, _J1_ASYM_TERMS + 1):
        a *= (mu - (2 * k - 1) ** 2) / (k * 8.0)
        zp = zp * zi
        t = a * zp
        if k % 2 == 1:
            q = q + ((-1) ** ((k - 1) // 2)) * t
        else:
            p = p + ((-1) ** (k // 2)) * t
    chi = z - 0.75 * math.pi
    return np.sqrt(2.0 / (math.pi * z)) * (p * np.cos(chi) - q * np.sin(chi))


def bessel_j1(z):
    """Bessel function of the first kind, order 1; odd in z.

    Power series for |z| <= 12, Hankel asymptotic expansion beyond; relative
    accuracy better than 1e-9 over the whole real line.
    """
    z = _as_float_array(z)
    az = np.abs(z)
    small = az <= _J1_SPLIT
    series = _j1_series(np.where(small, az, 0.0))
    asym = _j1_asymptotic(np.where(small, 2.0 * _J1_SPLIT, az))
    return _maybe_scalar(np.sign(z) * np.where(small, series, asym))


# ---------------------------------------------------------------------------
# Radial building blocks (arguments u = k0 * distance are dimensionless)


def _ball_profile(u):
    """(sin u / u^3 - cos u / u^2), the ball transform profile; even in u."""
    u = np.abs(_as_float_array(u))
    small = u < _SMALL_U_RADIAL
    us = np.where(small, 1.0, u)
    closed = np.sin(us) / us**3 - np.cos(us) / us**2
    u2 = u * u
    series = 1.0 / 3.0 - u2 / 30.0 + u2 * u2 / 840.0
    return np.where(small, series, closed)


def _sinc_profile(u):
    """sin(u)/u with series fallback; even in u."""
    u = np.abs(_as_float_array(u))
    small = u < _SMALL_U_RADIAL
    us = np.where(small, 1.0, u)
    closed = np.sin(us) / us
    u2 = u * u
    series = 1.0 - u2 / 6.0 + u2 * u2 / 120.0
    return np.where(small, series, closed)


def _s_profile(u):
    """(sin u / u^2 - cos u / u) = u * ball profile at small u; odd in u."""
    u = _as_float_array(u)
    au = np.abs(u)
    small = au < _SMALL_U_RADIAL
    us = np.where(small, 1.0, u)
    closed = np.sin(us) / us**2 - np.cos(us) / us
    u2 = u * u
    series = u * (1.0 / 3.0 - u2 / 30.0 + u2 * u2 / 840.0)
    return np.where(small, series, closed)


def _s_prime_profile(u):
    """d/du of the S profile: 2 cos u/u^2 - 2 sin u/u^3 + sin u/u; even."""
    u = np.abs(_as_float_array(u))
    small = u < _SMALL_U_RADIAL
    us = np.where(small, 1.0, u)
    closed = 2.0 * np.cos(us) / us**2 - 2.0 * np.sin(us) / us**3 + np.sin(us) / us
    u2 = u * u
    series = 1.0 / 3.0 - u2 / 10.0 + u2 * u2 / 168.0
    return np.where(small, series, closed)


def _pair_distance(x, x_prime, dim: int):
    x = _as_float_array(x)
    x_prime = _as_float_array(x_prime)
    if x.shape[-1:] != (dim,) or x_prime.shape[-1:] != (dim,):
        raise ConfigurationError(
            f"points must have {dim} components, got shapes {x.shape} and {x_prime.shape}"
        )
    diff = x - x_prime
    return np.sqrt(np.sum(diff * diff, axis=-1))


# ---------------------------------------------------------------------------
# Kernel evaluators


def eval_time1d(omega: float, t, t_prime):
    """sin(Omega tau) / (pi tau) at tau = t - t_prime; diagonal Omega/pi."""
    omega = _require_positive("omega", omega)
    tau = np.abs(_as_float_array(t) - _as_float_array(t_prime))
    u = omega * tau
    small = u < _SMALL_U_1D
    us = np.where(small, 1.0, u)
    closed = omega * np.sin(us) / (math.pi * us)
    u2 = u * u
    series = (omega / math.pi) * (1.0 - u2 / 6.0 + u2 * u2 / 120.0)
    return _maybe_scalar(np.where(small, series, closed))


def eval_disk2d(k: float, x, x_prime):
    """(K / 2 pi) J_1(K d) / d on planar points; diagonal K^2 / (4 pi)."""
    k = _require_positive("k", k)
    d = _pair_distance(x, x_prime, 2)
    u = k * d
    small = u < _SMALL_U_1D
    us = np.where(small, 1.0, u)
    closed = (k * k / (2.0 * math.pi)) * (bessel_j1(us) / us)
    series = (k * k / (4.0 * math.pi)) * (1.0 - u * u / 8.0)
    return _maybe_scalar(np.where(small, series, closed))


def _ball_value(k0: float, d):
    return (k0**3 / (2.0 * math.pi**2)) * _ball_profile(k0 * _as_float_array(d))


def eval_ball3d(k0: float, x, x_prime):
    """Ball-band kernel on 3D points; diagonal k0^3 / (6 pi^2)."""
    k0 = _require_positive("k0", k0)
    return _maybe_scalar(_ball_value(k0, _pair_distance(x, x_prime, 3)))


def eval_shell3d(k0: float, k1: float, x, x_prime):
    """Shell-band kernel: ball3d(k0) - ball3d(k1), requires 0 < k1 < k0."""
    k0 = _require_positive("k0", k0)
    k1 = _require_positive("k1", k1)
    if not k1 < k0:
        raise ConfigurationError(f"shell requires k1 < k0, got k1={k1}, k0={k0}")
    d = _pair_distance(x, x_prime, 3)
    return _maybe_scalar(_ball_value(k0, d) - _ball_value(k1, d))


def eval_sphere3d(k0: float, x, x_prime):
    """Single-frequency sphere-surface kernel; diagonal k0^2 / (2 pi^2)."""
    k0 = _require_positive("k0", k0)
    d = _pair_distance(x, x_prime, 3)
    return _maybe_scalar((k0**2 / (2.0 * math.pi**2)) * _sinc_profile(k0 * d))


def eval_spacetime(k0: float, c: float, p, q):
    """Space-time double-cone kernel on (x..., t) points.

    D = [S(d + c tau) + S(d - c tau)] / (2 pi^2 d) with
    S(a) = sin(k0 a)/a^2 - k0 cos(k0 a)/a, and the d -> 0 limit
    S'(c tau) / pi^2. The tau = 0 slice equals 2 * eval_ball3d(k0).
    """
    k0 = _require_positive("k0", k0)
    c = _require_positive("c", c)
    p = _as_float_array(p)
    q = _as_float_array(q)
    if p.shape[-1] < 2 or q.shape[-1] != p.shape[-1]:
        raise ConfigurationError(
            f"space-time points need >= 2 components (space..., t), got shapes {p.shape}, {q.shape}"
        )
    diff = p[..., :-1] - q[..., :-1]
    d = np.sqrt(np.sum(diff * diff, axis=-1))
    ctau = c * np.abs(p[..., -1] - q[..., -1])

    u = k0 * d
    small = u < _SMALL_D_SPACETIME
    ds = np.where(small, 1.0, d)
    s_sum = _s_profile(k0 * (ds + ctau)) + _s_profile(k0 * (ds - ctau))
    exact = (k0**2 / (2.0 * math.pi**2)) * s_sum / ds
    limit = (k0**3 / math.pi**2) * _s_prime_profile(k0 * ctau)
    return _maybe_scalar(np.where(small, limit, exact))


def eval_dual_ball(r0: float, kvec, kvec_prime):
    """Spatial-ball transform at a wavenumber difference g = |kvec - kvec'|.

    Same radial profile as ball3d with the roles of space and wavenumber
    swapped; diagonal r0^3 / (6 pi^2).
    """
    r0 = _require_positive("r0", r0)
    g = _pair_distance(kvec, kvec_prime, 3)
    return _maybe_scalar(_ball_value(r0, g))


def eval_dual_cuboid(ax: float, ay: float, az: float, kvec, kvec_prime):
    """Spatial-cuboid transform: prod_i sin(a_i delta_i) / (pi delta_i)."""
    half = [
        _require_positive("ax", ax),
        _require_positive("ay", ay),
        _require_positive("az", az),
    ]
    kvec = _as_float_array(kvec)
    kvec_prime = _as_float_array(kvec_prime)
    if kvec.shape[-1:] != (3,) or kvec_prime.shape[-1:] != (3,):
        raise ConfigurationError("dual_cuboid expects wavenumber 3-vectors")
    delta = np.abs(kvec - kvec_prime)
    result = None
    for i, a in enumerate(half):
        di = delta[..., i]
        small = di < _SMALL_DELTA_CUBOID
        dsafe = np.where(small, 1.0, di)
        factor = np.where(small, a / math.pi, np.sin(a * dsafe) / (math.pi * dsafe))
        result = factor if result is None else result * factor
    return _maybe_scalar(result)


# ---------------------------------------------------------------------------
# Kernel specs


@dataclass(frozen=True)
class KernelSpec:
    """Parameters of one concentration kernel; build via the classmethods.

    Rates are rad/s (omega), wavenumbers rad/m, lengths meters. For the dual
    variants k0 is the evaluation wavenumber used on unit-sphere grids;
    wavenumber-sector grids carry their own node radii and ignore it.
    """

    variant: str
    omega: float | None = None
    k: float | None = None
    k0: float | None = None
    k1: float | None = None
    c: float | None = None
    r0: float | None = None
    half_extents: tuple[float, float, float] | None = None

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ConfigurationError(f"unknown kernel variant {self.variant!r}")

    @classmethod
    def time1d(cls, omega: float) -> "KernelSpec":
        return cls(variant=TIME1D, omega=_require_positive("omega", omega))

    @classmethod
    def disk2d(cls, k: float) -> "KernelSpec":
        return cls(variant=DISK2D, k=_require_positive("k", k))

    @classmethod
    def ball3d(cls, k0: float) -> "KernelSpec":
        return cls(variant=BALL3D, k0=_require_positive("k0", k0))

    @classmethod
    def shell3d(cls, k0: float, k1: float) -> "KernelSpec":
        k0 = _require_positive("k0", k0)
        k1 = _require_positive("k1", k1)
        if not k1 < k0:
            raise ConfigurationError(f"shell requires k1 < k0, got k1={k1}, k0={k0}")
        return cls(variant=SHELL3D, k0=k0, k1=k1)

    @classmethod
    def sphere3d(cls, k0: float) -> "KernelSpec":
        return cls(variant=SPHERE3D, k0=_require_positive("k0", k0))

    @classmethod
    def spacetime(cls, k0: float, c: float = C_LIGHT) -> "KernelSpec":
        return cls(
            variant=SPACETIME,
            k0=_require_positive("k0", k0),
            c=_require_positive("c", c),
        )

    @classmethod
    def dual_ball(cls, r0: float, k0: float | None = None) -> "KernelSpec":
        return cls(
            variant=DUAL_BALL,
            r0=_require_positive("r0", r0),
            k0=None if k0 is None else _require_positive("k0", k0),
        )

    @classmethod
    def dual_cuboid(
        cls, ax: float, ay: float, az: float, k0: float | None = None
    ) -> "KernelSpec":
        return cls(
            variant=DUAL_CUBOID,
            half_extents=(
                _require_positive("ax", ax),
                _require_positive("ay", ay),
                _require_positive("az", az),
            ),
            k0=None if k0 is None else _require_positive("k0", k0),
        )


def kernel_diagonal(spec: KernelSpec) -> float:
    """D(p, p), the constant kernel diagonal for the given spec."""
    if spec.variant == TIME1D:
        return spec.omega / math.pi
    if spec.variant == DISK2D:
        return spec.k**2 / (4.0 * math.pi)
    if spec.variant == BALL3D:
        return spec.k0**3 / (6.0 * math.pi**2)
    if spec.variant == SHELL3D:
        return (spec.k0**3 - spec.k1**3) / (6.0 * math.pi**2)
    if spec.variant == SPHERE3D:
        return spec.k0**2 / (2.0 * math.pi**2)
    if spec.variant == SPACETIME:
        return spec.k0**3 / (3.0 * math.pi**2)
    if spec.variant == DUAL_BALL:
        return spec.r0**3 / (6.0 * math.pi**2)
    if spec.variant == DUAL_CUBOID:
        ax, ay, az = spec.half_extents
        return ax * ay * az / math.pi**3
    raise ConfigurationError(f"unknown kernel variant {spec.variant!r}")


def max_wavenumber(spec: KernelSpec) -> float | None:
    """Largest spatial wavenumber of the spec, or None if not spatial."""
    if spec.variant == DISK2D:
        return spec.k
    if spec.variant in (BALL3D, SHELL3D, SPHERE3D, SPACETIME):
        return spec.k0
    return None


def pairwise_numpy(spec: KernelSpec, points: np.ndarray, chunk: int = 256) -> np.ndarray:
    """Dense matrix D[i, j] = D(p_i, p_j), vectorized in row chunks."""
    points = np.ascontiguousarray(points, dtype=np.float64)
    n = points.shape[0]
    out = np.empty((n, n), dtype=np.float64)
    for start in range(0, n, chunk):
        stop = min(start + chunk, n)
        out[start:stop] = evaluate(spec, points[start:stop, None, :], points[None, :, :])
    return out


def pairwise_matrix(spec: KernelSpec, points: np.ndarray) -> np.ndarray:
    """Dense kernel matrix on `points`, using the compiled fill if enabled."""
    from . import backend

    if backend.USE_NUMBA:
        from . import _accel

        return _accel.pairwise(spec, np.ascontiguousarray(points, dtype=np.float64))
    return pairwise_numpy(spec, points)


def evaluate(spec: KernelSpec, p, q):
    """Evaluate the kernel of `spec` at point arrays p, q (broadcasting)."""
    v = spec.variant
    if v == TIME1D:
        p = _as_float_array(p)
        q = _as_float_array(q)
        return eval_time1d(spec.omega, p[..., 0], q[..., 0])
    if v == DISK2D:
        return eval_disk2d(spec.k, p, q)
    if v == BALL3D:
        return eval_ball3d(spec.k0, p, q)
    if v == SHELL3D:
        return eval_shell3d(spec.k0, spec.k1, p, q)
    if v == SPHERE3D:
        return eval_sphere3d(spec.k0, p, q)
    if v == SPACETIME:
        return eval_spacetime(spec.k0, spec.c, p, q)
    if v == DUAL_BALL:
        return eval_dual_ball(spec.r0, p, q)
    if v == DUAL_CUBOID:
        ax, ay, az = spec.half_extents
        return eval_dual_cuboid(ax, ay, az, p, q)
    raise ConfigurationError(f"unknown kernel variant {v!r}")
