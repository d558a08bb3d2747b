"""Spectrum and eigenstates of two coupled spin-1/2 particles in a rotating field.

The rescaled Hamiltonian is n(theta, phi) . sigma acting on the driven spin,
plus a coupling g (sigma1+ sigma2+ + sigma2- sigma1-).  Everything is expressed
in the composite basis {|+->, |++>, |-->, |-+>}; eigenstate labels j = 1..4 are
fixed by the closed-form energies, never by sorting.  j = 2 is the ground state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainBoundaryError

# Below this coupling the closed-form component denominators degenerate and the
# separable-limit eigenvectors are used instead.
G_LIMIT = 1e-9
SIN_THETA_LIMIT = 1e-9

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)

# Map from the standard tensor order {++, +-, -+, --} to the basis order
# {+-, ++, --, -+} used throughout.
_BASIS_PERM = np.array([1, 0, 3, 2])


def _check_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class ModelParams:
    """Full control space: field direction, coupling, depolarization, state label."""

    theta: float
    g: float
    q: float = 0.0
    j: int = 2
    phi0: float = 0.0

    def __post_init__(self):
        theta = _check_finite("theta", self.theta)
        g = _check_finite("g", self.g)
        q = _check_finite("q", self.q)
        _check_finite("phi0", self.phi0)
        if not 0.0 <= theta <= math.pi:
            raise ValueError(f"theta must lie in [0, pi], got {theta}")
        if g < 0.0:
            raise ValueError(f"g must be >= 0, got {g}")
        if not 0.0 <= q <= 1.0:
            raise ValueError(f"q must lie in [0, 1], got {q}")
        if self.j not in (1, 2, 3, 4):
            raise ValueError(f"j must be one of 1..4, got {self.j}")


@dataclass(frozen=True)
class SpectralData:
    """Energies, eigenvector components and normalizations for all four states."""

    energies: tuple[float, float, float, float]
    components: tuple[tuple[float, float, float, float], ...]
    norms: tuple[float, float, float, float]


def _validate_angles(theta: float, g: float) -> tuple[float, float]:
    theta = _check_finite("theta", theta)
    g = _check_finite("g", g)
    if not 0.0 <= theta <= math.pi:
        raise ValueError(f"theta must lie in [0, pi], got {theta}")
    if g < 0.0:
        raise ValueError(f"g must be >= 0, got {g}")
    return theta, g


def hamiltonian(theta: float, phi: float, g: float) -> np.ndarray:
    """Rescaled 4x4 Hamiltonian in the {+-, ++, --, -+} basis.

    Serves as the validation oracle for the closed-form eigen-pairs.
    """
    theta, g = _validate_angles(theta, g)
    phi = _check_finite("phi", phi)
    n = (math.sin(theta) * math.cos(phi),
         math.sin(theta) * math.sin(phi),
         math.cos(theta))
    h_spin = sum(nc * s for nc, s in zip(n, PAULI))
    sp = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    sm = sp.T.conj()
    h = np.kron(h_spin, np.eye(2)) + g * (np.kron(sp, sp) + np.kron(sm, sm))
    return h[np.ix_(_BASIS_PERM, _BASIS_PERM)]


def eigenvalues(theta: float, g: float) -> tuple[float, float, float, float]:
    """Closed-form energies (E1, E2, E3, E4) with E2 = -E1 and E4 = -E3."""
    theta, g = _validate_angles(theta, g)
    root = g * math.sqrt(g * g + 4.0 * math.sin(theta) ** 2) / 2.0
    e1 = math.sqrt(1.0 + g * g / 2.0 + root)
    e3 = math.sqrt(max(1.0 + g * g / 2.0 - root, 0.0))
    return (e1, -e1, e3, -e3)


def eigenvector_components(
    j: int, theta: float, g: float
) -> tuple[float, float, float, float, float]:
    """Real components (u1, u2, u3, u4) of state j and their norm sum N.

    For g below G_LIMIT the separable-limit components are used; on the
    sin(theta) boundary with finite coupling no closed form exists and a
    DomainBoundaryError is raised.
    """
    theta, g = _validate_angles(theta, g)
    if j not in (1, 2, 3, 4):
        raise ValueError(f"j must be one of 1..4, got {j}")
    e = eigenvalues(theta, g)[j - 1]
    st, ct = math.sin(theta), math.cos(theta)
    if g <= G_LIMIT:
        # Separable limit: components of the g -> 0+ eigenstates.
        sign = 1.0 if j in (1, 2) else -1.0
        u1, u3 = st, e - ct
        u2, u4 = sign * u1, sign * u3
    else:
        if st <= SIN_THETA_LIMIT:
            raise DomainBoundaryError(
                f"sin(theta) = {st:g} too small for the closed-form "
                f"eigenvectors at g = {g:g}"
            )
        denom = 1.0 - e * e
        if abs(denom) < 1e-12:
            raise DomainBoundaryError(
                f"1 - E_{j}^2 = {denom:g}: eigenvector formula breaks down"
            )
        u1 = st
        u2 = g * (ct * ct - e * e) / denom
        u3 = e - ct
        u4 = g * st * (ct - e) / denom
    norm = u1 * u1 + u2 * u2 + u3 * u3 + u4 * u4
    if norm <= 0.0:
        raise DomainBoundaryError(f"vanishing eigenvector norm for j={j} at theta={theta:g}, g={g:g}")
    return (u1, u2, u3, u4, norm)


def spectral_data(theta: float, g: float) -> SpectralData:
    """Energies, components and norms for all four eigenstates at once."""
    energies = eigenvalues(theta, g)
    comps = []
    norms = []
    for j in (1, 2, 3, 4):
        u1, u2, u3, u4, n = eigenvector_components(j, theta, g)
        comps.append((u1, u2, u3, u4))
        norms.append(n)
    return SpectralData(energies, tuple(comps), tuple(norms))


def eigenstate(j: int, theta: float, g: float, phi: float) -> np.ndarray:
    """Normalized eigenstate N^{-1/2} [u1 e^{-i phi}, u2, u3, u4 e^{i phi}]."""
    phi = _check_finite("phi", phi)
    u1, u2, u3, u4, norm = eigenvector_components(j, theta, g)
    vec = np.array(
        [u1 * np.exp(-1j * phi), u2, u3, u4 * np.exp(1j * phi)], dtype=complex
    )
    return vec / math.sqrt(norm)


def eigenbasis(theta: float, g: float, phi: float) -> np.ndarray:
    """4x4 matrix whose columns are the four eigenstates at phi."""
    return np.column_stack([eigenstate(j, theta, g, phi) for j in (1, 2, 3, 4)])
