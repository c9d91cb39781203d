"""Config-driven scenario runner.

A scenario is one kernel, one region, one grid rule, and output flags,
given as a JSON-compatible dict (typically from a file). Parsing is strict:
unknown keys and malformed values fail with the offending field named.
Frequencies may be given in Hz and are converted via k = 2 pi f / c.

Grid counts may be given directly or derived from a spacing (meters, or
wavelengths of the kernel's maximum frequency) as
count = round(extent / spacing) + 1 per axis, one node per cell midpoint.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from importlib import resources

import numpy as np

from . import backend, dof, quadrature, spectrum
from .errors import ConfigurationError, EmdofError
from .kernels import C_LIGHT, KernelSpec, max_wavenumber
from .quadrature import DEFAULT_NODE_CAP, Grid

_REGION_TYPES = ("interval", "box", "sphere_cap", "wavenumber_sector", "line_time")
_GRID_RULES = ("uniform", "gauss_legendre")

# Unstated values every space-time scenario falls back to, echoed in output.
DEFAULT_LINE_LENGTH_M = 2.0
DEFAULT_T_HALF_SPAN_S = 5e-9
DEFAULT_SPACETIME_F_HZ = 3e9


def _fail(path: str, message: str):
    raise ConfigurationError(f"{path}: {message}")


def _check_keys(obj: dict, path: str, required: tuple, optional: tuple = ()):
    if not isinstance(obj, dict):
        _fail(path, f"expected an object, got {type(obj).__name__}")
    unknown = sorted(set(obj) - set(required) - set(optional))
    if unknown:
        _fail(path, f"unknown keys {unknown}")
    missing = [k for k in required if k not in obj]
    if missing:
        _fail(path, f"missing keys {missing}")


def _number(obj: dict, key: str, path: str, positive: bool = True) -> float:
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        _fail(f"{path}.{key}", f"expected a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        _fail(f"{path}.{key}", f"must be finite, got {value}")
    if positive and value <= 0.0:
        _fail(f"{path}.{key}", f"must be positive, got {value}")
    return value


def _exactly_one(obj: dict, path: str, *groups: tuple):
    present = [g for g in groups if all(k in obj for k in g)]
    partial = [
        g for g in groups if any(k in obj for k in g) and not all(k in obj for k in g)
    ]
    if partial:
        _fail(path, f"incomplete key group {sorted(partial[0])}")
    if len(present) != 1:
        names = " or ".join("+".join(g) for g in groups)
        _fail(path, f"exactly one of ({names}) is required")
    return present[0]


def hz_to_rad_per_m(f_hz: float) -> float:
    return 2.0 * math.pi * f_hz / C_LIGHT


def _parse_kernel(obj: dict, path: str = "kernel") -> tuple[KernelSpec, dict]:
    if not isinstance(obj, dict) or "variant" not in obj:
        _fail(path, "must be an object with a 'variant' key")
    variant = obj["variant"]
    echo = {"variant": variant}

    if variant == "time1d":
        _check_keys(obj, path, ("variant",), ("omega_rad_s", "f_hz"))
        group = _exactly_one(obj, path, ("omega_rad_s",), ("f_hz",))
        if group == ("f_hz",):
            omega = 2.0 * math.pi * _number(obj, "f_hz", path)
        else:
            omega = _number(obj, "omega_rad_s", path)
        echo["omega_rad_s"] = omega
        return KernelSpec.time1d(omega), echo

    if variant == "disk2d":
        _check_keys(obj, path, ("variant",), ("k_rad_m", "f_max_hz"))
        group = _exactly_one(obj, path, ("k_rad_m",), ("f_max_hz",))
        k = (
            hz_to_rad_per_m(_number(obj, "f_max_hz", path))
            if group == ("f_max_hz",)
            else _number(obj, "k_rad_m", path)
        )
        echo["k_rad_m"] = k
        return KernelSpec.disk2d(k), echo

    if variant == "ball3d":
        _check_keys(obj, path, ("variant",), ("k0_rad_m", "f_max_hz"))
        group = _exactly_one(obj, path, ("k0_rad_m",), ("f_max_hz",))
        k0 = (
            hz_to_rad_per_m(_number(obj, "f_max_hz", path))
            if group == ("f_max_hz",)
            else _number(obj, "k0_rad_m", path)
        )
        echo["k0_rad_m"] = k0
        return KernelSpec.ball3d(k0), echo

    if variant == "shell3d":
        _check_keys(obj, path, ("variant",), ("k0_rad_m", "k1_rad_m", "f_max_hz", "f_min_hz"))
        group = _exactly_one(obj, path, ("k0_rad_m", "k1_rad_m"), ("f_max_hz", "f_min_hz"))
        if group == ("f_max_hz", "f_min_hz"):
            k0 = hz_to_rad_per_m(_number(obj, "f_max_hz", path))
            k1 = hz_to_rad_per_m(_number(obj, "f_min_hz", path))
        else:
            k0 = _number(obj, "k0_rad_m", path)
            k1 = _number(obj, "k1_rad_m", path)
        echo["k0_rad_m"], echo["k1_rad_m"] = k0, k1
        return KernelSpec.shell3d(k0, k1), echo

    if variant == "sphere3d":
        _check_keys(obj, path, ("variant",), ("k0_rad_m", "f_hz"))
        group = _exactly_one(obj, path, ("k0_rad_m",), ("f_hz",))
        k0 = (
            hz_to_rad_per_m(_number(obj, "f_hz", path))
            if group == ("f_hz",)
            else _number(obj, "k0_rad_m", path)
        )
        echo["k0_rad_m"] = k0
        return KernelSpec.sphere3d(k0), echo

    if variant == "spacetime":
        _check_keys(obj, path, ("variant",), ("k0_rad_m", "f_max_hz", "c_m_s"))
        c = float(obj.get("c_m_s", C_LIGHT))
        if "c_m_s" in obj:
            c = _number(obj, "c_m_s", path)
        if "k0_rad_m" in obj and "f_max_hz" in obj:
            _fail(path, "exactly one of (k0_rad_m or f_max_hz) is required")
        if "k0_rad_m" in obj:
            k0 = _number(obj, "k0_rad_m", path)
        else:
            f = (
                _number(obj, "f_max_hz", path)
                if "f_max_hz" in obj
                else DEFAULT_SPACETIME_F_HZ
            )
            k0 = 2.0 * math.pi * f / c
        echo["k0_rad_m"], echo["c_m_s"] = k0, c
        return KernelSpec.spacetime(k0, c), echo

    if variant == "dual_ball":
        _check_keys(obj, path, ("variant", "r0_m"), ("k0_rad_m", "f_hz"))
        if "k0_rad_m" in obj and "f_hz" in obj:
            _fail(path, "at most one of (k0_rad_m or f_hz) may be given")
        k0 = None
        if "k0_rad_m" in obj:
            k0 = _number(obj, "k0_rad_m", path)
        elif "f_hz" in obj:
            k0 = hz_to_rad_per_m(_number(obj, "f_hz", path))
        r0 = _number(obj, "r0_m", path)
        echo["r0_m"] = r0
        if k0 is not None:
            echo["k0_rad_m"] = k0
        return KernelSpec.dual_ball(r0, k0=k0), echo

    if variant == "dual_cuboid":
        _check_keys(obj, path, ("variant", "half_extents_m"), ("k0_rad_m", "f_hz"))
        if "k0_rad_m" in obj and "f_hz" in obj:
            _fail(path, "at most one of (k0_rad_m or f_hz) may be given")
        half = obj["half_extents_m"]
        if not isinstance(half, (list, tuple)) or len(half) != 3:
            _fail(f"{path}.half_extents_m", "expected three half extents")
        ax, ay, az = (float(v) for v in half)
        k0 = None
        if "k0_rad_m" in obj:
            k0 = _number(obj, "k0_rad_m", path)
        elif "f_hz" in obj:
            k0 = hz_to_rad_per_m(_number(obj, "f_hz", path))
        echo["half_extents_m"] = [ax, ay, az]
        if k0 is not None:
            echo["k0_rad_m"] = k0
        return KernelSpec.dual_cuboid(ax, ay, az, k0=k0), echo

    _fail(f"{path}.variant", f"unknown kernel variant {variant!r}")


def _angles(obj: dict, key: str, path: str, default: tuple, limit: tuple) -> tuple:
    if key not in obj:
        return default
    pair = obj[key]
    if not isinstance(pair, (list, tuple)) or len(pair) != 2:
        _fail(f"{path}.{key}", "expected [lo, hi] in degrees")
    lo, hi = (float(v) for v in pair)
    if not (limit[0] <= lo < hi <= limit[1]):
        _fail(f"{path}.{key}", f"must satisfy {limit[0]} <= lo < hi <= {limit[1]}")
    return math.radians(lo), math.radians(hi)


def _parse_region(obj: dict, path: str = "region") -> dict:
    if not isinstance(obj, dict) or "type" not in obj:
        _fail(path, "must be an object with a 'type' key")
    rtype = obj["type"]
    if rtype == "interval":
        _check_keys(obj, path, ("type", "half_span_s"))
        t = _number(obj, "half_span_s", path)
        return {"type": rtype, "half_span_s": t}
    if rtype == "box":
        _check_keys(obj, path, ("type", "extents_m"))
        ext = obj["extents_m"]
        if not isinstance(ext, (list, tuple)) or not 1 <= len(ext) <= 3:
            _fail(f"{path}.extents_m", "expected 1 to 3 axis lengths")
        ext = [float(v) for v in ext]
        for i, v in enumerate(ext):
            if not (math.isfinite(v) and v > 0.0):
                _fail(f"{path}.extents_m", f"axis {i} length must be positive, got {v}")
        return {"type": rtype, "extents_m": ext}
    if rtype == "sphere_cap":
        _check_keys(obj, path, ("type",), ("theta_deg", "phi_deg"))
        theta = _angles(obj, "theta_deg", path, (0.0, math.pi), (0.0, 180.0))
        phi = _angles(obj, "phi_deg", path, (0.0, 2.0 * math.pi), (0.0, 360.0))
        return {
            "type": rtype,
            "theta_deg": [math.degrees(v) for v in theta],
            "phi_deg": [math.degrees(v) for v in phi],
        }
    if rtype == "wavenumber_sector":
        _check_keys(obj, path, ("type", "k_rad_m"), ("theta_deg", "phi_deg"))
        pair = obj["k_rad_m"]
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            _fail(f"{path}.k_rad_m", "expected [k_lo, k_hi]")
        k_lo, k_hi = (float(v) for v in pair)
        if not 0.0 <= k_lo < k_hi:
            _fail(f"{path}.k_rad_m", f"must satisfy 0 <= k_lo < k_hi, got {pair}")
        theta = _angles(obj, "theta_deg", path, (0.0, math.pi), (0.0, 180.0))
        phi = _angles(obj, "phi_deg", path, (0.0, 2.0 * math.pi), (0.0, 360.0))
        return {
            "type": rtype,
            "k_rad_m": [k_lo, k_hi],
            "theta_deg": [math.degrees(v) for v in theta],
            "phi_deg": [math.degrees(v) for v in phi],
        }
    if rtype == "line_time":
        _check_keys(obj, path, ("type",), ("length_m", "t_half_span_s"))
        length = (
            _number(obj, "length_m", path) if "length_m" in obj else DEFAULT_LINE_LENGTH_M
        )
        t_half = (
            _number(obj, "t_half_span_s", path)
            if "t_half_span_s" in obj
            else DEFAULT_T_HALF_SPAN_S
        )
        return {"type": rtype, "length_m": length, "t_half_span_s": t_half}
    _fail(f"{path}.type", f"unknown region type {rtype!r} (expected one of {_REGION_TYPES})")


_AXIS_COUNTS = {"interval": 1, "box": None, "sphere_cap": 2, "wavenumber_sector": 3, "line_time": 2}


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def _parse_grid(obj: dict, region: dict, kspec: KernelSpec, path: str = "grid") -> dict:
    _check_keys(obj, path, ("rule",), ("counts", "spacing_m", "spacing_wavelengths"))
    rule = obj["rule"]
    if rule not in _GRID_RULES:
        _fail(f"{path}.rule", f"unknown rule {rule!r} (expected one of {_GRID_RULES})")
    group = _exactly_one(obj, path, ("counts",), ("spacing_m",), ("spacing_wavelengths",))

    rtype = region["type"]
    n_axes = _AXIS_COUNTS[rtype]
    if n_axes is None:
        n_axes = len(region["extents_m"])

    # The echo keeps only the caller's parameterization so it reparses
    # cleanly; the resolved counts and spacing travel separately.
    echo = {"rule": rule}
    if group == ("counts",):
        counts = obj["counts"]
        if not isinstance(counts, (list, tuple)) or len(counts) != n_axes:
            _fail(f"{path}.counts", f"expected {n_axes} per-axis counts")
        resolved = []
        for i, c in enumerate(counts):
            if isinstance(c, bool) or not isinstance(c, int) or c < 1:
                _fail(f"{path}.counts", f"axis {i}: count must be a positive integer, got {c!r}")
            resolved.append(c)
        echo["counts"] = resolved
        return echo, resolved, None

    if rtype not in ("box", "interval"):
        _fail(path, f"spacing applies to box or interval regions, not {rtype!r}")
    if group == ("spacing_m",):
        spacing = _number(obj, "spacing_m", path)
        echo["spacing_m"] = spacing
    else:
        factor = _number(obj, "spacing_wavelengths", path)
        k_max = max_wavenumber(kspec)
        if k_max is None:
            _fail(
                f"{path}.spacing_wavelengths",
                f"kernel {kspec.variant!r} has no maximum spatial frequency to "
                "take a wavelength from; give spacing_m or counts",
            )
        spacing = factor * (2.0 * math.pi / k_max)
        echo["spacing_wavelengths"] = factor
    extents = (
        [2.0 * region["half_span_s"]] if rtype == "interval" else region["extents_m"]
    )
    resolved = [_round_half_up(extent / spacing) + 1 for extent in extents]
    return echo, resolved, spacing


def _parse_outputs(obj: dict, path: str = "outputs") -> dict:
    if obj is None:
        obj = {}
    _check_keys(obj, path, (), ("spectrum", "patterns", "correlation", "dof"))
    out = {
        "spectrum": obj.get("spectrum", True),
        "patterns": obj.get("patterns", 0),
        "correlation": obj.get("correlation", 0),
        "dof": list(obj.get("dof", dof.DEFAULT_EPS_LADDER)),
    }
    if not isinstance(out["spectrum"], bool):
        _fail(f"{path}.spectrum", f"expected a boolean, got {out['spectrum']!r}")
    for key in ("patterns", "correlation"):
        v = out[key]
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            _fail(f"{path}.{key}", f"expected a nonnegative integer mode count, got {v!r}")
    for eps in out["dof"]:
        if isinstance(eps, bool) or not isinstance(eps, (int, float)) or not 0 < eps < 1:
            _fail(f"{path}.dof", f"thresholds must lie in (0, 1), got {eps!r}")
    out["dof"] = [float(e) for e in out["dof"]]
    return out


@dataclass(frozen=True)
class ScenarioConfig:
    """One validated scenario; `canonical` round-trips through JSON.

    `counts` are the per-axis node counts actually used, resolved from an
    explicit list or from a spacing; `spacing_m` is the resolved spacing when
    one was given, else None.
    """

    name: str
    kernel_spec: KernelSpec
    region: dict
    grid: dict
    counts: list[int]
    spacing_m: float | None
    outputs: dict
    seed: int
    description: str | None
    canonical: dict


def parse_config(obj: dict) -> ScenarioConfig:
    _check_keys(
        obj,
        "scenario",
        ("name", "kernel", "region", "grid"),
        ("outputs", "seed", "description"),
    )
    name = obj["name"]
    if not isinstance(name, str) or not name.strip():
        _fail("scenario.name", f"expected a non-empty string, got {name!r}")
    bad = set(name) - set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_-.")
    if bad:
        _fail("scenario.name", f"characters {sorted(bad)} not allowed in file names")
    seed = obj.get("seed", 0)
    if isinstance(seed, bool) or not isinstance(seed, int):
        _fail("scenario.seed", f"expected an integer, got {seed!r}")
    description = obj.get("description")
    if description is not None and not isinstance(description, str):
        _fail("scenario.description", "expected a string")

    kspec, kernel_echo = _parse_kernel(obj["kernel"])
    region = _parse_region(obj["region"])
    grid, counts, spacing_m = _parse_grid(obj["grid"], region, kspec)
    outputs = _parse_outputs(obj.get("outputs"))

    canonical = {
        "name": name,
        "kernel": kernel_echo,
        "region": region,
        "grid": grid,
        "outputs": outputs,
        "seed": seed,
    }
    if description is not None:
        canonical["description"] = description
    return ScenarioConfig(
        name=name,
        kernel_spec=kspec,
        region=region,
        grid=grid,
        counts=counts,
        spacing_m=spacing_m,
        outputs=outputs,
        seed=seed,
        description=description,
        canonical=canonical,
    )


def build_grid(config: ScenarioConfig, node_cap: int = DEFAULT_NODE_CAP) -> Grid:
    region = config.region
    rule = config.grid["rule"]
    counts = config.counts
    rtype = region["type"]
    if rtype == "interval":
        t = region["half_span_s"]
        builder = quadrature.gl_box_grid if rule == "gauss_legendre" else quadrature.uniform_box_grid
        return builder([(-t, t)], counts, node_cap=node_cap)
    if rtype == "box":
        builder = quadrature.gl_box_grid if rule == "gauss_legendre" else quadrature.uniform_box_grid
        return builder(region["extents_m"], counts, node_cap=node_cap)
    if rtype == "sphere_cap":
        theta = tuple(math.radians(v) for v in region["theta_deg"])
        phi = tuple(math.radians(v) for v in region["phi_deg"])
        return quadrature.sphere_grid(
            counts[0], counts[1], theta_range=theta, phi_range=phi, node_cap=node_cap
        )
    if rtype == "wavenumber_sector":
        theta = tuple(math.radians(v) for v in region["theta_deg"])
        phi = tuple(math.radians(v) for v in region["phi_deg"])
        k_lo, k_hi = region["k_rad_m"]
        return quadrature.wavenumber_sector_grid(
            k_lo, k_hi, counts[0], counts[1], counts[2],
            theta_range=theta, phi_range=phi, node_cap=node_cap,
        )
    if rtype == "line_time":
        return quadrature.space_time_grid(
            region["length_m"], counts[0], region["t_half_span_s"], counts[1],
            rule=rule, node_cap=node_cap,
        )
    _fail("region.type", f"unknown region type {rtype!r}")


def _region_measure(config: ScenarioConfig) -> float | None:
    region = config.region
    if region["type"] == "interval":
        return 2.0 * region["half_span_s"]
    if region["type"] == "box":
        measure = 1.0
        for v in region["extents_m"]:
            measure *= v
        return measure
    return None


@dataclass(frozen=True)
class ScenarioResult:
    config: ScenarioConfig
    grid: Grid
    spectrum: spectrum.Spectrum
    patterns: spectrum.PatternSet
    dof_report: dof.DofReport
    correlation: np.ndarray | None
    provenance: dict


def run_scenario(config: ScenarioConfig, node_cap: int = DEFAULT_NODE_CAP) -> ScenarioResult:
    """grid -> assemble -> eigendecompose -> DoF/patterns/correlation."""
    start = time.perf_counter()
    grid = build_grid(config, node_cap=node_cap)
    for key in ("patterns", "correlation"):
        if config.outputs[key] > grid.n_nodes:
            _fail(
                f"outputs.{key}",
                f"{config.outputs[key]} modes requested, grid has {grid.n_nodes} nodes",
            )
    op = spectrum.assemble(config.kernel_spec, grid, node_cap=node_cap)
    spect, patterns = spectrum.eigendecompose(op)
    report = dof.build_dof_report(
        config.kernel_spec,
        spect,
        region_measure=_region_measure(config),
        eps_ladder=config.outputs["dof"],
    )
    correlation = None
    if config.outputs["correlation"] > 0:
        correlation = spectrum.correlation_matrix(patterns, config.outputs["correlation"])
    runtime = time.perf_counter() - start

    provenance = {
        "grid": {
            "n_nodes": grid.n_nodes,
            "counts": list(config.counts),
            "rule": config.grid["rule"],
            "spacing_m": config.spacing_m,
            "domain_tag": grid.domain_tag,
            "measure": grid.measure,
            "node_convention": "one node per uniform cell midpoint"
            if config.grid["rule"] == "uniform"
            else "per-axis Gauss-Legendre nodes",
        },
        "region_measure": _region_measure(config),
        "trace": spect.trace,
        "radial_jacobian_applied": op.radial_jacobian_applied,
        "runtime_s": runtime,
        "backend": backend.backend_name(),
        "eigenvalue_scale": "raw and lambda/lambda1",
        "kernel_normalization_note": _normalization_note(config.kernel_spec),
    }
    return ScenarioResult(
        config=config,
        grid=grid,
        spectrum=spect,
        patterns=patterns,
        dof_report=report,
        correlation=correlation,
        provenance=provenance,
    )


def _normalization_note(spec: KernelSpec) -> str:
    if spec.variant == "spacetime":
        return (
            "space-time kernel defined by its radial wavenumber integral and "
            "scaled so the equal-time slice equals twice the ball kernel; "
            "spectra are reported raw and as lambda/lambda1"
        )
    return (
        "kernel is the inverse Fourier transform of the concentration-region "
        "indicator; spectra are reported raw and as lambda/lambda1"
    )


@dataclass(frozen=True)
class ScenarioOutcome:
    """One sweep slot: a result, or the error that replaced it."""

    name: str
    result: ScenarioResult | None
    error: Exception | None

    @property
    def ok(self) -> bool:
        return self.error is None


def run_sweep(
    configs,
    threads: int = 1,
    fail_fast: bool = False,
    node_cap: int = DEFAULT_NODE_CAP,
) -> list[ScenarioOutcome]:
    """Run scenarios independently; output order equals input order."""
    configs = list(configs)

    def one(config: ScenarioConfig) -> ScenarioOutcome:
        try:
            return ScenarioOutcome(config.name, run_scenario(config, node_cap=node_cap), None)
        except EmdofError as exc:
            if fail_fast:
                raise
            return ScenarioOutcome(config.name, None, exc)

    if threads <= 1:
        return [one(c) for c in configs]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(one, configs))


# ---------------------------------------------------------------------------
# Output files

_COORD_HEADERS = {
    quadrature.INTERVAL: ["t"],
    quadrature.SPACE_TIME: ["x", "t"],
    quadrature.SPHERE_SURFACE: ["ux", "uy", "uz"],
    quadrature.SPHERICAL_CAP: ["ux", "uy", "uz"],
    quadrature.WAVENUMBER_BALL_SECTOR: ["kx", "ky", "kz"],
}


def _coord_headers(grid: Grid) -> list[str]:
    if grid.domain_tag == quadrature.BOX:
        return ["x", "y", "z"][: grid.dim]
    return _COORD_HEADERS[grid.domain_tag]


def _write_table(path, columns: list[str], rows, fmt: str):
    import csv

    if fmt == "json":
        payload = {"columns": columns, "rows": [list(r) for r in rows]}
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh)
            fh.write("\n")
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(columns)
        writer.writerows(rows)


def write_outputs(result: ScenarioResult, out_dir, fmt: str = "csv") -> list[str]:
    """Write the scenario's tables and summary into out_dir; returns paths."""
    import os

    if fmt not in ("csv", "json"):
        raise ConfigurationError(f"format must be 'csv' or 'json', got {fmt!r}")
    os.makedirs(out_dir, exist_ok=True)
    name = result.config.name
    ext = "json" if fmt == "json" else "csv"
    written = []

    if result.config.outputs["spectrum"]:
        path = os.path.join(out_dir, f"{name}.spectrum.{ext}")
        spect = result.spectrum
        rows = [
            [i, float(spect.eigenvalues[i]), float(spect.normalized[i])]
            for i in range(spect.n)
        ]
        _write_table(path, ["index", "lambda", "lambda_normalized"], rows, fmt)
        written.append(path)

    n_pat = result.config.outputs["patterns"]
    if n_pat > 0:
        path = os.path.join(out_dir, f"{name}.patterns.{ext}")
        coords = _coord_headers(result.grid)
        nodes = result.grid.nodes
        values = result.patterns.values
        rows = []
        for mode in range(n_pat):
            for j in range(result.grid.n_nodes):
                rows.append(
                    [mode, *(float(c) for c in nodes[j]), float(values[mode, j])]
                )
        _write_table(path, ["mode", *coords, "value"], rows, fmt)
        written.append(path)

    if result.correlation is not None:
        path = os.path.join(out_dir, f"{name}.correlation.{ext}")
        n = result.correlation.shape[0]
        rows = [
            [i, j, float(result.correlation[i, j])]
            for i in range(n)
            for j in range(n)
        ]
        _write_table(path, ["i", "j", "value"], rows, fmt)
        written.append(path)

    summary = {
        "name": name,
        "config": result.config.canonical,
        "grid": result.provenance["grid"],
        "region_measure": result.provenance["region_measure"],
        "trace": result.provenance["trace"],
        "dof": result.dof_report.as_dict(),
        "runtime_s": result.provenance["runtime_s"],
        "backend": result.provenance["backend"],
        "radial_jacobian_applied": result.provenance["radial_jacobian_applied"],
        "eigenvalue_scale": result.provenance["eigenvalue_scale"],
        "kernel_normalization_note": result.provenance["kernel_normalization_note"],
        "n_modes": result.spectrum.n,
        "top_eigenvalues": [float(v) for v in result.spectrum.eigenvalues[:10]],
    }
    path = os.path.join(out_dir, f"{name}.summary.json")
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(summary, fh, indent=2)
        fh.write("\n")
    written.append(path)
    return written


# ---------------------------------------------------------------------------
# Config files and builtins


def parse_config_text(text: str, source: str = "<config>") -> list[ScenarioConfig]:
    """Parse a JSON scenario file: one scenario, a list, or a named bundle."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"{source}: not valid JSON: {exc}") from exc
    if isinstance(obj, dict) and "scenarios" in obj:
        _check_keys(obj, source, ("scenarios",), ("name", "description"))
        entries = obj["scenarios"]
        if not isinstance(entries, list):
            raise ConfigurationError(f"{source}: 'scenarios' must be a list")
    elif isinstance(obj, list):
        entries = obj
    else:
        entries = [obj]
    return [parse_config(entry) for entry in entries]


def load_config_file(path) -> list[ScenarioConfig]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigurationError(f"cannot read config file {path}: {exc}") from exc
    return parse_config_text(text, source=str(path))


def _builtin_dir():
    return resources.files("emdof").joinpath("builtins")


def list_builtins() -> list[str]:
    names = []
    for entry in _builtin_dir().iterdir():
        if entry.name.endswith(".json"):
            names.append(entry.name[: -len(".json")])
    return sorted(names)


def builtin_text(name: str) -> str:
    if name not in list_builtins():
        raise ConfigurationError(
            f"unknown builtin {name!r}; available: {', '.join(list_builtins())}"
        )
    return _builtin_dir().joinpath(f"{name}.json").read_text("utf-8")


def load_builtin(name: str) -> list[ScenarioConfig]:
    return parse_config_text(builtin_text(name), source=f"builtin:{name}")
