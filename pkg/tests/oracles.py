"""Independent quadrature oracles for every closed-form kernel.

Each oracle integrates the defining wavenumber/space integral with
scipy.integrate.quad (adaptive Gauss-Kronrod), sharing no code with the
shipped closed forms. Angular integrals are reduced to 1D radial/polar
integrals analytically before quadrature, which keeps the reduction trivial
(even symmetry only) while the oscillatory part stays numeric.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.integrate import quad
from scipy.special import j0

_QUAD_KW = dict(limit=400, epsabs=1e-12, epsrel=1e-10)


def _sinc(u: float) -> float:
    return 1.0 if u == 0.0 else math.sin(u) / u


def time1d_oracle(omega: float, tau: float) -> float:
    val, _ = quad(lambda w: math.cos(w * tau) / math.pi, 0.0, omega, **_QUAD_KW)
    return val


def disk2d_oracle(k: float, d: float) -> float:
    val, _ = quad(lambda r: j0(r * d) * r / (2.0 * math.pi), 0.0, k, **_QUAD_KW)
    return val


def ball3d_oracle(k0: float, d: float) -> float:
    val, _ = quad(
        lambda r: _sinc(r * d) * r * r / (2.0 * math.pi**2), 0.0, k0, **_QUAD_KW
    )
    return val


def shell3d_oracle(k0: float, k1: float, d: float) -> float:
    val, _ = quad(
        lambda r: _sinc(r * d) * r * r / (2.0 * math.pi**2), k1, k0, **_QUAD_KW
    )
    return val


def sphere3d_oracle(k0: float, d: float) -> float:
    val, _ = quad(
        lambda t: math.cos(k0 * d * math.cos(t)) * math.sin(t),
        0.0,
        math.pi,
        **_QUAD_KW,
    )
    return k0 * k0 / (2.0 * math.pi) ** 2 * val


def spacetime_oracle(k0: float, c: float, d: float, tau: float) -> float:
    val, _ = quad(
        lambda r: _sinc(r * d) * 2.0 * math.cos(c * r * tau) * r * r / (2.0 * math.pi**2),
        0.0,
        k0,
        **_QUAD_KW,
    )
    return val


def dual_ball_oracle(r0: float, g: float) -> float:
    val, _ = quad(
        lambda r: _sinc(r * g) * r * r / (2.0 * math.pi**2), 0.0, r0, **_QUAD_KW
    )
    return val


def dual_cuboid_oracle(half_extents, delta) -> float:
    out = 1.0
    for a, dk in zip(half_extents, delta):
        val, _ = quad(lambda x: math.cos(dk * x) / math.pi, 0.0, a, **_QUAD_KW)
        out *= val
    return out


def j1_series_oracle(z: float) -> float:
    """Power series of the first-order Bessel function, summed to convergence."""
    term = z / 2.0
    total = term
    u = z * z / 4.0
    for m in range(1, 400):
        term *= -u / (m * (m + 1))
        total += term
        if abs(term) <= 1e-18 * abs(total):
            break
    return total


def random_pair_batteries(seed: int = 20260818) -> dict:
    """Per-kernel batteries of (args, oracle_value) with seeded draws.

    Returns {variant: (list of argument tuples, list of oracle values)}.
    Draw ranges keep the oscillatory quadratures well inside adaptive reach
    (k*d up to ~60 radians).
    """
    rng = np.random.default_rng(seed)
    n = 100
    batteries = {}

    omega = rng.uniform(0.5, 20.0, n)
    tau = rng.uniform(-3.0, 3.0, n)
    batteries["time1d"] = [
        ((o, t), time1d_oracle(o, t)) for o, t in zip(omega, tau)
    ]

    k = rng.uniform(0.5, 15.0, n)
    d = rng.uniform(0.0, 4.0, n)
    batteries["disk2d"] = [((kk, dd), disk2d_oracle(kk, dd)) for kk, dd in zip(k, d)]

    k0 = rng.uniform(0.5, 15.0, n)
    d = rng.uniform(0.0, 4.0, n)
    batteries["ball3d"] = [((kk, dd), ball3d_oracle(kk, dd)) for kk, dd in zip(k0, d)]

    k0 = rng.uniform(1.0, 15.0, n)
    k1 = k0 * rng.uniform(0.05, 0.95, n)
    d = rng.uniform(0.0, 4.0, n)
    batteries["shell3d"] = [
        ((a, b, dd), shell3d_oracle(a, b, dd)) for a, b, dd in zip(k0, k1, d)
    ]

    k0 = rng.uniform(0.5, 15.0, n)
    d = rng.uniform(1e-6, 4.0, n)
    batteries["sphere3d"] = [
        ((kk, dd), sphere3d_oracle(kk, dd)) for kk, dd in zip(k0, d)
    ]

    k0 = rng.uniform(0.5, 12.0, n)
    c = rng.uniform(0.5, 3.0, n)
    d = rng.uniform(0.0, 4.0, n)
    tau = rng.uniform(-2.0, 2.0, n)
    batteries["spacetime"] = [
        ((a, b, dd, tt), spacetime_oracle(a, b, dd, tt))
        for a, b, dd, tt in zip(k0, c, d, tau)
    ]

    r0 = rng.uniform(0.5, 5.0, n)
    g = rng.uniform(0.0, 10.0, n)
    batteries["dual_ball"] = [
        ((rr, gg), dual_ball_oracle(rr, gg)) for rr, gg in zip(r0, g)
    ]

    half = rng.uniform(0.2, 3.0, (n, 3))
    delta = rng.uniform(-8.0, 8.0, (n, 3))
    batteries["dual_cuboid"] = [
        ((tuple(h), tuple(dk)), dual_cuboid_oracle(h, dk))
        for h, dk in zip(half, delta)
    ]
    return batteries


def closed_form_adapters() -> dict:
    """{variant: callable taking a battery argument tuple} for the shipped
    closed forms, matching the argument layout of `random_pair_batteries`."""
    from emdof import kernels

    return {
        "time1d": lambda omega, tau: kernels.eval_time1d(omega, tau, 0.0),
        "disk2d": lambda k, d: kernels.eval_disk2d(
            k, np.array([d, 0.0]), np.zeros(2)
        ),
        "ball3d": lambda k0, d: kernels.eval_ball3d(
            k0, np.array([d, 0.0, 0.0]), np.zeros(3)
        ),
        "shell3d": lambda k0, k1, d: kernels.eval_shell3d(
            k0, k1, np.array([d, 0.0, 0.0]), np.zeros(3)
        ),
        "sphere3d": lambda k0, d: kernels.eval_sphere3d(
            k0, np.array([d, 0.0, 0.0]), np.zeros(3)
        ),
        "spacetime": lambda k0, c, d, tau: kernels.eval_spacetime(
            k0, c, np.array([d, tau]), np.zeros(2)
        ),
        "dual_ball": lambda r0, g: kernels.eval_dual_ball(
            r0, np.array([g, 0.0, 0.0]), np.zeros(3)
        ),
        "dual_cuboid": lambda half, delta: kernels.eval_dual_cuboid(
            half[0], half[1], half[2], np.array(delta), np.zeros(3)
        ),
    }
