"""Winding numbers of the phase curve and vortex detection on phase maps."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .closed_form import wrap_angle, z_point
from .entanglement import Q_TRANSITION_MAX, critical_coupling
from .errors import (
    DegeneratePhaseError,
    DomainBoundaryError,
    GridTooCoarseError,
    IllPosedError,
)
from .spin_model import ModelParams

# Inset applied to the theta sweep so samples stay off the sin(theta) = 0
# boundary; the remaining gap is reported as part of the closure defect.
THETA_MARGIN = 1e-6
ROOT_CLEARANCE = 1e-9


@dataclass(frozen=True)
class WindingResult:
    winding: int
    curve_samples: np.ndarray
    closure_defect: float
    residual: float


@dataclass(frozen=True)
class VortexHit:
    theta_cell: float
    g_cell: float
    circulation: float


def winding_number(
    g: float,
    q: float = 0.0,
    subsystem: str = "A",
    theta_samples: int = 256,
    j: int = 2,
) -> WindingResult:
    """Winding of the phase curve about the origin over a theta sweep.

    The curve is -2 z(theta) for theta in [0, pi]; the winding is the
    accumulated argument divided by 2 pi, rounded to the nearest integer.
    """
    if theta_samples < 64:
        raise ValueError(f"theta_samples must be >= 64, got {theta_samples}")
    # At the critical coupling the curve passes through the origin at the
    # equator, which the discrete sweep can straddle without sampling; reject
    # the coupling itself before looking at sample clearances.
    if q <= Q_TRANSITION_MAX and abs(g - critical_coupling(q)) < ROOT_CLEARANCE:
        raise IllPosedError(
            f"winding undefined at the critical coupling g = {g:g} (q = {q:g})"
        )
    thetas = np.linspace(THETA_MARGIN, math.pi - THETA_MARGIN, theta_samples)
    curve = np.array(
        [-2.0 * z_point(ModelParams(t, g, q, j), subsystem) for t in thetas]
    )
    if np.abs(curve).min() < ROOT_CLEARANCE:
        raise IllPosedError(
            f"curve passes within {ROOT_CLEARANCE:g} of the root at g = {g:g}"
        )
    angles = np.unwrap(np.angle(curve))
    total = float(angles[-1] - angles[0])
    winding = int(round(total / (2.0 * math.pi)))
    residual = abs(total / (2.0 * math.pi) - winding)
    defect = float(abs(curve[-1] - curve[0]))
    return WindingResult(winding, curve, defect, residual)


def phase_map(
    theta_axis: np.ndarray,
    g_axis: np.ndarray,
    q: float = 0.0,
    subsystem: str = "A",
    j: int = 2,
) -> tuple[np.ndarray, np.ndarray]:
    """Closed-form subsystem phase on a (theta, g) grid.

    Returns (values, flags); values are NaN where flags is nonzero.  Flag 1
    marks domain-boundary points, flag 2 degenerate (vortex) points.
    """
    values = np.full((len(theta_axis), len(g_axis)), np.nan)
    flags = np.zeros((len(theta_axis), len(g_axis)), dtype=int)
    from .closed_form import uhlmann_subsystem

    for it, theta in enumerate(theta_axis):
        for ig, g in enumerate(g_axis):
            try:
                values[it, ig] = uhlmann_subsystem(
                    ModelParams(float(theta), float(g), q, j), subsystem
                ).value
            except DomainBoundaryError:
                flags[it, ig] = 1
            except DegeneratePhaseError:
                flags[it, ig] = 2
    return values, flags


def find_vortices(
    values: np.ndarray,
    theta_axis: np.ndarray,
    g_axis: np.ndarray,
    flags: np.ndarray | None = None,
    jump_fraction_limit: float = 0.05,
) -> list[VortexHit]:
    """Locate phase vortices by plaquette circulation of wrapped differences.

    Plaquettes touching a degenerate sample are flagged as hits outright;
    those touching a domain-boundary sample are skipped.  Raises
    GridTooCoarseError when too many clean links jump by more than pi/2.
    """
    if flags is None:
        flags = np.where(np.isnan(values), 2, 0)
    hits: list[VortexHit] = []
    jumpy_links = 0
    clean_links = 0
    for it in range(values.shape[0] - 1):
        for ig in range(values.shape[1] - 1):
            cell_flags = flags[it : it + 2, ig : ig + 2]
            t_mid = 0.5 * (theta_axis[it] + theta_axis[it + 1])
            g_mid = 0.5 * (g_axis[ig] + g_axis[ig + 1])
            if (cell_flags == 1).any():
                continue
            if (cell_flags == 2).any():
                hits.append(VortexHit(t_mid, g_mid, math.copysign(2.0 * math.pi, 1.0)))
                continue
            a = values[it, ig]
            b = values[it, ig + 1]
            c = values[it + 1, ig + 1]
            d = values[it + 1, ig]
            diffs = [wrap_angle(b - a), wrap_angle(c - b), wrap_angle(d - c), wrap_angle(a - d)]
            for diff in diffs:
                clean_links += 1
                if abs(diff) > math.pi / 2.0:
                    jumpy_links += 1
            circulation = sum(diffs)
            if abs(circulation) > math.pi:
                hits.append(VortexHit(t_mid, g_mid, circulation))
    if clean_links and jumpy_links / clean_links > jump_fraction_limit:
        raise GridTooCoarseError(
            f"{jumpy_links}/{clean_links} links jump by more than pi/2"
        )
    return hits
