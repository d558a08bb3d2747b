"""Grid sweeps over (theta, g, q) and numeric-vs-analytic cross validation."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence, TextIO

import numpy as np

from . import closed_form, holonomy, states
from .entanglement import concurrence_wootters
from .errors import (
    ConvergenceFailureError,
    DegeneratePhaseError,
    DomainBoundaryError,
    IllPosedError,
)
from .spin_model import ModelParams
from .topology import winding_number

QUANTITIES = (
    "uhlmann_numeric",
    "uhlmann_closed",
    "berry",
    "interferometric",
    "concurrence",
    "winding",
)

CSV_HEADER = "theta,g,q,j,subsystem,quantity,value_pi,flag"


@dataclass(frozen=True)
class SweepSpec:
    """Grid description for one sweep."""

    theta_range: tuple[float, float, int]
    g_range: tuple[float, float, int]
    q_list: Sequence[float] = (0.0,)
    j: int = 2
    subsystem: str = "A"
    quantity: str = "uhlmann_closed"
    steps: int = holonomy.DEFAULT_STEPS

    def __post_init__(self):
        if self.quantity not in QUANTITIES:
            raise ValueError(f"unknown quantity {self.quantity!r}")
        if self.subsystem not in ("A", "B", "composite"):
            raise ValueError(f"subsystem must be A, B or composite, got {self.subsystem!r}")
        for lo, hi, count in (self.theta_range, self.g_range):
            if count < 2:
                raise ValueError("range counts must be >= 2")
            if not (math.isfinite(lo) and math.isfinite(hi) and lo <= hi):
                raise ValueError(f"invalid range ({lo}, {hi})")
        if not 0.0 <= self.theta_range[0] <= self.theta_range[1] <= math.pi:
            raise ValueError("theta range must lie within [0, pi]")
        for q in self.q_list:
            if not 0.0 <= q <= 1.0:
                raise ValueError(f"q must lie in [0, 1], got {q}")
        if self.quantity == "uhlmann_closed" and self.subsystem == "composite":
            raise ValueError("no closed form for the composite Uhlmann phase")

    def theta_axis(self) -> np.ndarray:
        lo, hi, count = self.theta_range
        return np.linspace(lo, hi, count)

    def g_axis(self) -> np.ndarray:
        lo, hi, count = self.g_range
        return np.linspace(lo, hi, count)


@dataclass(frozen=True)
class SweepRow:
    theta: float | None
    g: float
    q: float
    j: int
    subsystem: str
    quantity: str
    value: float | None
    flag: str = ""


def _numeric_phase(params: ModelParams, subsystem: str, steps: int) -> float:
    if subsystem == "composite":
        rho0 = states.depolarize(
            states.pure_density(params.j, params.theta, params.g, params.phi0), params.q
        )
        sampler = holonomy.composite_sampler(params)
    else:
        qs = states.depolarize_reduced(
            states.reduce_state(params.j, params.theta, params.g, subsystem), params.q
        )
        rho0 = qs.matrix(params.phi0)
        sampler = holonomy.reduced_sampler(qs)
    phase, _ = holonomy.converged_phase(
        None, rho0, params.phi0, start_steps=steps, sampler=sampler
    )
    return phase.value


def _point_value(spec: SweepSpec, theta: float, g: float, q: float) -> SweepRow:
    params = ModelParams(theta, g, q, spec.j)
    quantity = spec.quantity
    try:
        if quantity == "uhlmann_numeric":
            value = _numeric_phase(params, spec.subsystem, spec.steps) / math.pi
        elif quantity == "uhlmann_closed":
            phase = closed_form.uhlmann_subsystem(params, spec.subsystem)
            value = phase.in_units_of_pi()
        elif quantity == "berry":
            value = closed_form.berry_composite(spec.j, theta, g).in_units_of_pi()
        elif quantity == "interferometric":
            if spec.subsystem == "composite":
                raise ValueError("interferometric phase is defined per subsystem")
            value = closed_form.interferometric_subsystem(params, spec.subsystem).in_units_of_pi()
        elif quantity == "concurrence":
            rho = states.depolarize(states.pure_density(spec.j, theta, g, 0.0), q)
            value = concurrence_wootters(rho).value
        else:  # pragma: no cover - dispatch is exhaustive
            raise AssertionError(quantity)
    except DegeneratePhaseError:
        return SweepRow(theta, g, q, spec.j, spec.subsystem, quantity, None, "vortex")
    except DomainBoundaryError:
        return SweepRow(theta, g, q, spec.j, spec.subsystem, quantity, None, "boundary")
    except ConvergenceFailureError:
        return SweepRow(theta, g, q, spec.j, spec.subsystem, quantity, None, "no-convergence")
    return SweepRow(theta, g, q, spec.j, spec.subsystem, quantity, value)


def run_sweep(spec: SweepSpec, workers: int = 1) -> list[SweepRow]:
    """Evaluate the sweep grid; per-point failures become flags, never aborts.

    Rows are ordered q-major, then theta, then g, deterministically for a
    fixed spec regardless of the worker count.
    """
    if spec.quantity == "winding":
        rows = []
        for q in spec.q_list:
            for g in spec.g_axis():
                try:
                    result = winding_number(float(g), q, spec.subsystem, j=spec.j)
                    rows.append(
                        SweepRow(None, float(g), q, spec.j, spec.subsystem, "winding",
                                 float(result.winding))
                    )
                except IllPosedError:
                    rows.append(
                        SweepRow(None, float(g), q, spec.j, spec.subsystem, "winding",
                                 None, "ill-posed")
                    )
        return rows

    points = [
        (float(theta), float(g), q)
        for q in spec.q_list
        for theta in spec.theta_axis()
        for g in spec.g_axis()
    ]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda p: _point_value(spec, *p), points))
    return [_point_value(spec, *p) for p in points]


def write_csv(rows: Iterable[SweepRow], stream: TextIO) -> None:
    """Emit rows as CSV with 12 significant digits and LF line endings."""

    def fmt(x: float | None) -> str:
        return "" if x is None else f"{x:.12g}"

    stream.write(CSV_HEADER + "\n")
    for row in rows:
        stream.write(
            f"{fmt(row.theta)},{fmt(row.g)},{fmt(row.q)},{row.j},"
            f"{row.subsystem},{row.quantity},{fmt(row.value)},{row.flag}\n"
        )


@dataclass
class ValidationReport:
    """Per-point numeric-vs-closed-form error statistics."""

    max_error: float = 0.0
    count: int = 0
    flagged: int = 0
    exceeding: list[tuple[float, float, float, float]] = field(default_factory=list)
    warn_tol: float = 1e-6
    fail_tol: float = 1e-5

    @property
    def failed(self) -> bool:
        return any(err > self.fail_tol for _, _, _, err in self.exceeding)


def cross_validate(spec: SweepSpec) -> ValidationReport:
    """Compare the ODE holonomy phase against the closed form on the grid."""
    if spec.subsystem == "composite":
        raise ValueError("cross validation applies to subsystem phases")
    report = ValidationReport()
    for q in spec.q_list:
        for theta in spec.theta_axis():
            for g in spec.g_axis():
                params = ModelParams(float(theta), float(g), q, spec.j)
                try:
                    analytic = closed_form.uhlmann_subsystem(params, spec.subsystem).value
                    numeric = _numeric_phase(params, spec.subsystem, spec.steps)
                except (DegeneratePhaseError, DomainBoundaryError, ConvergenceFailureError):
                    report.flagged += 1
                    continue
                err = abs(closed_form.wrap_angle(numeric - analytic))
                report.count += 1
                report.max_error = max(report.max_error, err)
                if err > report.warn_tol:
                    report.exceeding.append((float(theta), float(g), q, err))
    return report
