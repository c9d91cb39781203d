"""Compiled pairwise kernel fills.

Scalar twins of the kernel evaluators in `kernels`, compiled with numba, plus
row-parallel dense matrix fills. Each matrix entry is computed independently
from the two points involved, so results do not depend on the thread count.
Import this module only when `backend.USE_NUMBA` is true.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit, prange

from . import kernels
from .kernels import (
    _J1_ASYM_TERMS,
    _J1_SERIES_TERMS,
    _J1_SPLIT,
    _SMALL_D_SPACETIME,
    _SMALL_DELTA_CUBOID,
    _SMALL_U_1D,
    _SMALL_U_RADIAL,
)


@njit(cache=True)
def _j1_scalar(z):
    az = abs(z)
    if az <= _J1_SPLIT:
        u = 0.25 * az * az
        term = 0.5 * az
        acc = term
        for m in range(1, _J1_SERIES_TERMS + 1):
            term = term * (-u) / (m * (m + 1))
            acc = acc + term
        val = acc
    else:
        a = 1.0
        zp = 1.0
        zi = 1.0 / az
        p = 1.0
        q = 0.0
        for k in range(1, _J1_ASYM_TERMS + 1):
            a *= (4.0 - (2 * k - 1) ** 2) / (k * 8.0)
            zp = zp * zi
            t = a * zp
            if k % 2 == 1:
                q = q + ((-1) ** ((k - 1) // 2)) * t
            else:
                p = p + ((-1) ** (k // 2)) * t
        chi = az - 0.75 * math.pi
        val = math.sqrt(2.0 / (math.pi * az)) * (p * math.cos(chi) - q * math.sin(chi))
    if z < 0.0:
        return -val
    return val


@njit(cache=True)
def _ball_profile_scalar(u):
    u = abs(u)
    if u < _SMALL_U_RADIAL:
        u2 = u * u
        return 1.0 / 3.0 - u2 / 30.0 + u2 * u2 / 840.0
    return math.sin(u) / u**3 - math.cos(u) / u**2


@njit(cache=True)
def _sinc_profile_scalar(u):
    u = abs(u)
    if u < _SMALL_U_RADIAL:
        u2 = u * u
        return 1.0 - u2 / 6.0 + u2 * u2 / 120.0
    return math.sin(u) / u


@njit(cache=True)
def _s_profile_scalar(u):
    if abs(u) < _SMALL_U_RADIAL:
        u2 = u * u
        return u * (1.0 / 3.0 - u2 / 30.0 + u2 * u2 / 840.0)
    return math.sin(u) / u**2 - math.cos(u) / u


@njit(cache=True)
def _s_prime_profile_scalar(u):
    u = abs(u)
    if u < _SMALL_U_RADIAL:
        u2 = u * u
        return 1.0 / 3.0 - u2 / 10.0 + u2 * u2 / 168.0
    return 2.0 * math.cos(u) / u**2 - 2.0 * math.sin(u) / u**3 + math.sin(u) / u


@njit(cache=True)
def _time1d_scalar(omega, ti, tj):
    u = omega * abs(ti - tj)
    if u < _SMALL_U_1D:
        u2 = u * u
        return (omega / math.pi) * (1.0 - u2 / 6.0 + u2 * u2 / 120.0)
    return omega * math.sin(u) / (math.pi * u)


@njit(cache=True)
def _disk2d_scalar(k, u):
    if u < _SMALL_U_1D:
        return (k * k / (4.0 * math.pi)) * (1.0 - u * u / 8.0)
    return (k * k / (2.0 * math.pi)) * (_j1_scalar(u) / u)


@njit(cache=True)
def _dist(pts, i, j, m):
    acc = 0.0
    for a in range(m):
        diff = pts[i, a] - pts[j, a]
        acc += diff * diff
    return math.sqrt(acc)


@njit(parallel=True, cache=True)
def _fill_time1d(omega, pts, out):
    n = pts.shape[0]
    for i in prange(n):
        for j in range(n):
            out[i, j] = _time1d_scalar(omega, pts[i, 0], pts[j, 0])


@njit(parallel=True, cache=True)
def _fill_disk2d(k, pts, out):
    n = pts.shape[0]
    for i in prange(n):
        for j in range(n):
            out[i, j] = _disk2d_scalar(k, k * _dist(pts, i, j, 2))


@njit(parallel=True, cache=True)
def _fill_radial3d(scale, coef, pts, out):
    # coef * ball_profile(scale * d) covers ball3d and dual_ball
    n = pts.shape[0]
    for i in prange(n):
        for j in range(n):
            out[i, j] = coef * _ball_profile_scalar(scale * _dist(pts, i, j, 3))


@njit(parallel=True, cache=True)
def _fill_shell3d(k0, k1, pts, out):
    n = pts.shape[0]
    c0 = k0**3 / (2.0 * math.pi**2)
    c1 = k1**3 / (2.0 * math.pi**2)
    for i in prange(n):
        for j in range(n):
            d = _dist(pts, i, j, 3)
            out[i, j] = c0 * _ball_profile_scalar(k0 * d) - c1 * _ball_profile_scalar(k1 * d)


@njit(parallel=True, cache=True)
def _fill_sphere3d(k0, pts, out):
    n = pts.shape[0]
    coef = k0**2 / (2.0 * math.pi**2)
    for i in prange(n):
        for j in range(n):
            out[i, j] = coef * _sinc_profile_scalar(k0 * _dist(pts, i, j, 3))


@njit(parallel=True, cache=True)
def _fill_spacetime(k0, c, pts, out):
    n = pts.shape[0]
    m = pts.shape[1] - 1
    coef = k0**2 / (2.0 * math.pi**2)
    limit_coef = k0**3 / math.pi**2
    for i in prange(n):
        for j in range(n):
            acc = 0.0
            for a in range(m):
                diff = pts[i, a] - pts[j, a]
                acc += diff * diff
            d = math.sqrt(acc)
            ctau = c * abs(pts[i, m] - pts[j, m])
            if k0 * d < _SMALL_D_SPACETIME:
                out[i, j] = limit_coef * _s_prime_profile_scalar(k0 * ctau)
            else:
                s_sum = _s_profile_scalar(k0 * (d + ctau)) + _s_profile_scalar(
                    k0 * (d - ctau)
                )
                out[i, j] = (coef * s_sum) / d


@njit(parallel=True, cache=True)
def _fill_dual_cuboid(ax, ay, az, pts, out):
    n = pts.shape[0]
    for i in prange(n):
        for j in range(n):
            val = 1.0
            d0 = abs(pts[i, 0] - pts[j, 0])
            if d0 < _SMALL_DELTA_CUBOID:
                val = val * (ax / math.pi)
            else:
                val = val * (math.sin(ax * d0) / (math.pi * d0))
            d1 = abs(pts[i, 1] - pts[j, 1])
            if d1 < _SMALL_DELTA_CUBOID:
                val = val * (ay / math.pi)
            else:
                val = val * (math.sin(ay * d1) / (math.pi * d1))
            d2 = abs(pts[i, 2] - pts[j, 2])
            if d2 < _SMALL_DELTA_CUBOID:
                val = val * (az / math.pi)
            else:
                val = val * (math.sin(az * d2) / (math.pi * d2))
            out[i, j] = val


def pairwise(spec: kernels.KernelSpec, points: np.ndarray) -> np.ndarray:
    """Dense kernel matrix on `points` via the compiled row-parallel fills."""
    n = points.shape[0]
    out = np.empty((n, n), dtype=np.float64)
    v = spec.variant
    if v == kernels.TIME1D:
        _fill_time1d(spec.omega, points, out)
    elif v == kernels.DISK2D:
        _fill_disk2d(spec.k, points, out)
    elif v == kernels.BALL3D:
        _fill_radial3d(spec.k0, spec.k0**3 / (2.0 * math.pi**2), points, out)
    elif v == kernels.SHELL3D:
        _fill_shell3d(spec.k0, spec.k1, points, out)
    elif v == kernels.SPHERE3D:
        _fill_sphere3d(spec.k0, points, out)
    elif v == kernels.SPACETIME:
        _fill_spacetime(spec.k0, spec.c, points, out)
    elif v == kernels.DUAL_BALL:
        _fill_radial3d(spec.r0, spec.r0**3 / (2.0 * math.pi**2), points, out)
    elif v == kernels.DUAL_CUBOID:
        ax, ay, az = spec.half_extents
        _fill_dual_cuboid(ax, ay, az, points, out)
    else:
        raise kernels.ConfigurationError(f"unknown kernel variant {v!r}")
    return out
