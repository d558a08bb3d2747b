"""Analytic geometric-phase formulas: Berry, Uhlmann and interferometric.

Level Berry phases and their weighted sum enter the Uhlmann formulas
unwrapped; only final outputs are reduced to the principal branch (-pi, pi].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .entanglement import concurrence_pure_from_subsystem
from .errors import DegeneratePhaseError
from .spin_model import ModelParams, eigenvector_components
from .states import QubitState, reduce_state

_TWO_PI = 2.0 * math.pi


def wrap_angle(x: float) -> float:
    """Reduce an angle to the principal branch (-pi, pi]."""
    return x - _TWO_PI * math.ceil((x - math.pi) / _TWO_PI)


@dataclass(frozen=True)
class PhaseValue:
    """An angle on the principal branch, with optional diagnostics.

    unwrapped keeps the raw accumulated value when it differs from the wrapped
    one; magnitude is the visibility |Tr[rho V]| for holonomy phases; trivial
    marks phases defined as zero because the connection vanishes identically.
    """

    value: float
    unwrapped: float | None = None
    magnitude: float | None = None
    trivial: bool = False

    def __post_init__(self):
        if not -math.pi - 1e-12 < self.value <= math.pi + 1e-12:
            raise ValueError(f"phase {self.value} outside (-pi, pi]")

    def in_units_of_pi(self) -> float:
        return self.value / math.pi


def berry_composite(j: int, theta: float, g: float) -> PhaseValue:
    """Berry phase of the j-th composite eigenstate: (2 pi / N)(u1^2 - u4^2)."""
    u1, _, _, u4, norm = eigenvector_components(j, theta, g)
    raw = _TWO_PI * (u1 * u1 - u4 * u4) / norm
    return PhaseValue(wrap_angle(raw), unwrapped=raw)


def berry_qubit_levels(qs: QubitState) -> tuple[float, float]:
    """Berry phases 2 pi beta^2 / N of the two subsystem levels, in [0, 2 pi)."""
    if qs.trivial:
        raise ValueError("level Berry phases undefined for a diagonal reduced state")
    g1 = _TWO_PI * qs.beta1 * qs.beta1 / qs.n1
    g2 = _TWO_PI * qs.beta2 * qs.beta2 / qs.n2
    return (g1, g2)


def mean_berry(qs: QubitState) -> float:
    """Probability-weighted level Berry phase sum, kept unwrapped."""
    g1, g2 = berry_qubit_levels(qs)
    return qs.p1 * g1 + qs.p2 * g2


def _r_factor(g1: float, g2: float, q: float, c_pure: float) -> float:
    radicand = 1.0 - g1 * g2 * (1.0 - q) ** 2 * (1.0 - c_pure * c_pure) / math.pi**2
    return math.sqrt(max(radicand, 0.0))


def _phase_from_parts(re: float, im: float) -> PhaseValue:
    if abs(re) < 1e-14 and abs(im) < 1e-14:
        raise DegeneratePhaseError("phase argument vanishes (vortex point)")
    # A negligible imaginary part is rounding noise (e.g. exactly on the
    # equator); take the Arg of the real axis so the step function is exact.
    if abs(im) < 1e-13 * max(abs(re), 1.0):
        return PhaseValue(math.pi if re < 0.0 else 0.0)
    value = math.atan2(im, re)
    if value <= -math.pi:
        value = math.pi
    return PhaseValue(value)


def uhlmann_subsystem(params: ModelParams, subsystem: str) -> PhaseValue:
    """Exact subsystem Uhlmann phase, depolarized or pure (q = 0).

    Arg{-cos(pi r) - i (1-q) (gbar - pi) sin(pi r)/(pi r)} with r built from
    the level Berry phases and the pure-state concurrence.
    """
    qs = reduce_state(params.j, params.theta, params.g, subsystem)
    if qs.trivial:
        return PhaseValue(0.0, trivial=True)
    g1, g2 = berry_qubit_levels(qs)
    gbar = mean_berry(qs)
    c_pure = concurrence_pure_from_subsystem(qs).value
    r = _r_factor(g1, g2, params.q, c_pure)
    re = -math.cos(math.pi * r)
    # np.sinc(r) = sin(pi r)/(pi r), series-safe at r -> 0.
    im = -(1.0 - params.q) * (gbar - math.pi) * float(np.sinc(r))
    return _phase_from_parts(re, im)


def uhlmann_equator(concurrence: float, q: float = 0.0) -> PhaseValue:
    """Equator (theta = pi/2) Uhlmann phase: Arg{-cos(pi r)} with r^2 = 1 - (1-q)^2 (1 - C^2)."""
    c = float(getattr(concurrence, "value", concurrence))
    r = math.sqrt(max(1.0 - (1.0 - q) ** 2 * (1.0 - c * c), 0.0))
    x = -math.cos(math.pi * r)
    if abs(x) < 1e-12:
        raise DegeneratePhaseError(f"equator phase node at r = {r:g}")
    return PhaseValue(math.pi if x < 0.0 else 0.0)


def interferometric(probs: tuple[float, float], levels: tuple[float, float]) -> PhaseValue:
    """Mixed-state interferometric phase Arg{sum_l p_l e^{i gamma_l}}."""
    p1, p2 = probs
    if abs(p1 + p2 - 1.0) > 1e-10:
        raise ValueError("probabilities must sum to 1")
    z = p1 * np.exp(1j * levels[0]) + p2 * np.exp(1j * levels[1])
    if abs(z) < 1e-12:
        raise DegeneratePhaseError("weighted phase factors cancel")
    return _phase_from_parts(float(z.real), float(z.imag))


def z_point(params: ModelParams, subsystem: str) -> complex:
    """Argument z of the degree-one Chebyshev form of the Uhlmann phase.

    The subsystem phase is Arg{-2 z}.  For q > 0 the (1-q) factor is carried
    through consistently with the depolarized closed form (an extension; the
    source analysis draws the curve for q = 0 only).
    """
    qs = reduce_state(params.j, params.theta, params.g, subsystem)
    if qs.trivial:
        # Trivial holonomy: phase 0, i.e. Arg{-2z} = 0.
        return -0.5 + 0.0j
    g1, g2 = berry_qubit_levels(qs)
    gbar = mean_berry(qs)
    c_pure = concurrence_pure_from_subsystem(qs).value
    r = _r_factor(g1, g2, params.q, c_pure)
    return 0.5 * (
        math.cos(math.pi * r)
        + 1j * (1.0 - params.q) * (gbar - math.pi) * float(np.sinc(r))
    )


def interferometric_subsystem(params: ModelParams, subsystem: str) -> PhaseValue:
    """Interferometric phase of a subsystem, with depolarized weights for q > 0."""
    qs = reduce_state(params.j, params.theta, params.g, subsystem)
    if qs.trivial:
        return PhaseValue(0.0, trivial=True)
    levels = berry_qubit_levels(qs)
    p1 = params.q / 2.0 + (1.0 - params.q) * qs.p1
    p2 = params.q / 2.0 + (1.0 - params.q) * qs.p2
    return interferometric((p1, p2), levels)
