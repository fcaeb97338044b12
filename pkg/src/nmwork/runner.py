"""Scenario runner: time grids, presets, CSV rows and run manifests."""
from __future__ import annotations

import dataclasses
import hashlib
import io
import json
import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Optional, Union

import numpy as np

from . import __version__
from .channels import (PauliRateSet, amplitude_damping_kraus, apply_to_subsystem, constant_rate,
                       flags_from_rates, pauli_kraus, pauli_snapshot, tan_rate, tanh_rate)
from .errors import DegenerateEchoError, InvalidArgumentError, ModelViolationError
from .ising import IsingParams, ising_rates
from .linalg import MEMORY, SYSTEM, singlet
from .pbg import PBGParams, pbg_coefficients, pbg_G
from .thermo import WorkPoint

log = logging.getLogger(__name__)

MODELS = ("pauli", "ising", "pbg")
SCENARIOS = {"system": SYSTEM, "memory": MEMORY, SYSTEM: SYSTEM, MEMORY: MEMORY}
CSV_COLUMNS = ("t", "H_S", "H_Q", "H_SQ", "cond_entropy", "coherent_info", "mutual_info",
               "w_ex_kTln2", "cp_divisible", "p_divisible")


@dataclass(frozen=True)
class PauliParams:
    """gamma_1 = gamma_2 = lam/2 and gamma_3 = +-(omega/2) tan/tanh(omega t)."""

    lam: float = 0.1
    omega: float = 2.0
    rate3: str = "tan"

    def __post_init__(self):
        if not (math.isfinite(self.lam) and self.lam >= 0):
            raise InvalidArgumentError("lambda must be a non-negative number")
        if not (math.isfinite(self.omega) and self.omega > 0):
            raise InvalidArgumentError("omega must be positive")
        if self.rate3 not in ("tan", "tanh"):
            raise InvalidArgumentError("rate3 must be 'tan' or 'tanh'")

    def rates(self) -> PauliRateSet:
        g3 = tan_rate(self.omega) if self.rate3 == "tan" else tanh_rate(self.omega)
        return PauliRateSet(constant_rate(self.lam), constant_rate(self.lam), g3)


ModelParams = Union[PauliParams, IsingParams, PBGParams]
_PARAM_TYPES = {"pauli": PauliParams, "ising": IsingParams, "pbg": PBGParams}


@dataclass(frozen=True)
class ScenarioConfig:
    model: str
    params: ModelParams
    t_max: float
    steps: int
    scenario: str = "memory"
    output_path: Optional[str] = None
    temperature: Optional[float] = None
    preset: Optional[str] = None
    workers: int = 1
    aj_scale: float = 1.0

    def __post_init__(self):
        if self.model not in MODELS:
            raise InvalidArgumentError(f"model must be one of {MODELS}")
        if not isinstance(self.params, _PARAM_TYPES[self.model]):
            raise InvalidArgumentError(f"{self.model} model needs {_PARAM_TYPES[self.model].__name__}")
        if not (math.isfinite(self.t_max) and self.t_max > 0):
            raise InvalidArgumentError("t_max must be positive")
        if not (isinstance(self.steps, int) and self.steps >= 2):
            raise InvalidArgumentError("steps must be an integer >= 2")
        if self.scenario not in SCENARIOS:
            raise InvalidArgumentError("scenario must be 'system' or 'memory'")
        if self.temperature is not None and not (math.isfinite(self.temperature) and self.temperature > 0):
            raise InvalidArgumentError("temperature must be positive (kelvin)")
        if not (isinstance(self.workers, int) and self.workers >= 1):
            raise InvalidArgumentError("workers must be a positive integer")

    @property
    def target(self) -> str:
        return SCENARIOS[self.scenario]

    def times(self) -> list[float]:
        n = self.steps - 1
        return [i * self.t_max / n for i in range(self.steps)]


PRESETS = {
    "fig2a": dict(model="pauli", params=PauliParams(0.1, 2.0, "tan"), t_max=5.0, steps=500, scenario="memory"),
    "fig2b": dict(model="pauli", params=PauliParams(1.0, 0.5, "tanh"), t_max=10.0, steps=500, scenario="memory"),
    "fig3a": dict(model="ising", params=IsingParams(0.9, 0.1, 4000, 1.0), t_max=20.0, steps=1000, scenario="memory"),
    "fig3b": dict(model="ising", params=IsingParams(0.0, 0.1, 4000, 1.0), t_max=20.0, steps=1000, scenario="memory"),
    "fig3c": dict(model="ising", params=IsingParams(1.8, 0.1, 4000, 1.0), t_max=20.0, steps=1000, scenario="memory"),
    "fig4": dict(model="pbg", params=PBGParams(beta=1.0, detuning=-1.0), t_max=20.0, steps=1000, scenario="system"),
}


def preset_config(name: str, **overrides) -> ScenarioConfig:
    if name not in PRESETS:
        raise InvalidArgumentError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
    kwargs = dict(PRESETS[name], preset=name)
    kwargs.update({k: v for k, v in overrides.items() if v is not None})
    return ScenarioConfig(**kwargs)


@dataclass
class ScenarioResult:
    config: ScenarioConfig
    points: list[WorkPoint]
    g_abs: Optional[list[float]] = None
    derived: dict = field(default_factory=dict)


def _pauli_like_points(rates: PauliRateSet, times: list[float], target: str) -> list[WorkPoint]:
    rho0 = singlet()
    out = []
    for t in times:
        snap = pauli_snapshot(rates, t)
        if snap.cp_violation:
            raise ModelViolationError(f"channel is not CPTP at t={t!r}: p={snap.p}")
        rho = apply_to_subsystem(pauli_kraus(snap), rho0, target)
        try:
            flags = flags_from_rates(rates.values(t), snap.p)
        except DegenerateEchoError as exc:
            log.warning("no divisibility flags at t=%r: %s", t, exc)
            flags = None
        out.append(WorkPoint.from_state(t, rho, flags))
    return out


def _pbg_points(params: PBGParams, coeffs, times: list[float], target: str):
    g = pbg_G(params, np.array(times), coefficients=coeffs)
    rho0 = singlet()
    points = [WorkPoint.from_state(t, apply_to_subsystem(amplitude_damping_kraus(gi), rho0, target))
              for t, gi in zip(times, g)]
    return points, [float(abs(gi)) for gi in g]


def _chunks(seq: list, n: int) -> list[list]:
    size = math.ceil(len(seq) / n)
    return [seq[i:i + size] for i in range(0, len(seq), size)]


def simulate(config: ScenarioConfig) -> ScenarioResult:
    """Evaluate every time sample; rows come back in ascending t regardless of `workers`."""
    times = config.times()
    derived: dict = {}
    if config.model == "pbg":
        coeffs = pbg_coefficients(config.params, a_scale=config.aj_scale)
        derived.update(discriminant=config.params.discriminant,
                       x=[[z.real, z.imag] for z in coeffs.x],
                       v=[[z.real, z.imag] for z in coeffs.v],
                       y=[[z.real, z.imag] for z in coeffs.y])
        job = lambda ts: _pbg_points(config.params, coeffs, ts, config.target)
    else:
        if config.model == "ising":
            rates = ising_rates(config.params)
            derived["lambda_star"] = config.params.perturbed_field
        else:
            rates = config.params.rates()
        job = lambda ts: (_pauli_like_points(rates, ts, config.target), None)

    if config.workers == 1:
        parts = [job(times)]
    else:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            parts = list(pool.map(job, _chunks(times, config.workers)))
    points = [p for pts, _ in parts for p in pts]
    g_abs = None if config.model != "pbg" else [g for _, gs in parts for g in gs]
    return ScenarioResult(config, points, g_abs, derived)


def _fmt(x: float) -> str:
    return repr(float(x))


def _flag(value: Optional[bool]) -> str:
    return "" if value is None else ("1" if value else "0")


def csv_header(config: ScenarioConfig) -> list[str]:
    cols = list(CSV_COLUMNS)
    if config.model == "pbg":
        cols.append("g_abs")
    if config.temperature is not None:
        cols.append("w_ex_J")
    return cols


def render_csv(result: ScenarioResult) -> str:
    cfg = result.config
    buf = io.StringIO()
    buf.write(",".join(csv_header(cfg)) + "\n")
    for i, p in enumerate(result.points):
        row = [_fmt(v) for v in (p.t, p.H_S, p.H_Q, p.H_SQ, p.cond_entropy, p.coherent_info,
                                 p.mutual_info, p.w_ex)]
        flags = p.flags if cfg.model != "pbg" else None
        row += [_flag(flags.cp_divisible if flags else None), _flag(flags.p_divisible if flags else None)]
        if cfg.model == "pbg":
            row.append(_fmt(result.g_abs[i]))
        if cfg.temperature is not None:
            row.append(_fmt(p.joules(cfg.temperature)))
        buf.write(",".join(row) + "\n")
    return buf.getvalue()


def config_echo(config: ScenarioConfig) -> dict:
    echo = dataclasses.asdict(config)
    echo["params"] = dataclasses.asdict(config.params)
    return echo


def run_scenario(config: ScenarioConfig) -> dict:
    """Simulate, write `<out>` and `<out>.manifest.json`, and return the manifest."""
    if config.output_path is None:
        raise InvalidArgumentError("an output path is required")
    started = datetime.now(timezone.utc)
    clock = time.perf_counter()
    result = simulate(config)
    body = render_csv(result)
    with open(config.output_path, "w", newline="", encoding="utf-8") as fh:
        fh.write(body)
    manifest = {
        "artifact": "nmwork",
        "version": __version__,
        "config": config_echo(config),
        "derived": result.derived,
        "grid": {"kind": "uniform", "t_min": 0.0, "t_max": config.t_max, "steps": config.steps},
        "columns": csv_header(config),
        "rows": len(result.points),
        "csv_sha256": hashlib.sha256(body.encode("utf-8")).hexdigest(),
        "started_utc": started.isoformat(),
        "wall_clock_seconds": time.perf_counter() - clock,
    }
    with open(config.output_path + ".manifest.json", "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2)
        fh.write("\n")
    return manifest
