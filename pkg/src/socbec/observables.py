"""Reduced spin density matrix, purity, Bloch vector, and spin dipole moment.

Tracing out the spatial dependence of a two-component condensate spinor
leaves a 2x2 density matrix with trace N.  Its purity equals the squared
length of the Bloch vector, so a spatially entangled spin state sits
strictly inside the Bloch sphere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .grid import SpatialGrid, SpinorField, integrate

_PURITY_SLACK = 1e-10


@dataclass(frozen=True)
class SpinDensityMatrix:
    """Spatially reduced 2x2 spin density matrix.

    Hermiticity is built in: only rho12 is stored, rho21 is its conjugate.
    """

    rho11: float
    rho22: float
    rho12: complex
    particle_number: float


@dataclass(frozen=True)
class BlochRecord:
    sx: float
    sy: float
    sz: float
    purity: float
    t: float = 0.0


def spin_density_matrix(state: SpinorField) -> SpinDensityMatrix:
    """Integrate out x to get the collective spin density matrix."""
    grid = state.grid
    rho11 = float(integrate(np.abs(state.up) ** 2, grid))
    rho22 = float(integrate(np.abs(state.down) ** 2, grid))
    rho12 = complex(integrate(np.conj(state.up) * state.down, grid))
    return SpinDensityMatrix(rho11, rho22, rho12, rho11 + rho22)


def purity(rho: SpinDensityMatrix) -> float:
    """Spin-state purity in [0, 1]; 1 on the Bloch sphere, 0 at its center."""
    n = rho.particle_number
    p = 1.0 + 4.0 * (abs(rho.rho12) ** 2 - rho.rho11 * rho.rho22) / n**2
    if p < -_PURITY_SLACK or p > 1.0 + _PURITY_SLACK:
        raise ValueError(
            f"purity {p} outside [0, 1]: density-matrix invariants are broken"
        )
    return min(max(p, 0.0), 1.0)


def bloch_vector(rho: SpinDensityMatrix, t: float = 0.0) -> BlochRecord:
    """Spin components <sigma_i> = tr(sigma_i rho)/N and the purity.

    The identity purity == sx^2 + sy^2 + sz^2 is enforced; a violation
    means the density matrix was not produced by a consistent quadrature.
    """
    n = rho.particle_number
    sx = 2.0 * rho.rho12.real / n
    sy = -2.0 * rho.rho12.imag / n
    sz = (rho.rho11 - rho.rho22) / n
    p = purity(rho)
    if abs(p - (sx * sx + sy * sy + sz * sz)) > _PURITY_SLACK:
        raise ValueError("purity does not match the squared Bloch-vector length")
    return BlochRecord(sx, sy, sz, p, t)


def spin_dipole_moment(state: SpinorField) -> float:
    """Spin density dipole moment <x sigma_z> per particle."""
    grid = state.grid
    diff = np.abs(state.up) ** 2 - np.abs(state.down) ** 2
    return float(integrate(grid.x * diff, grid) / state.norm())


def mean_position(state: SpinorField) -> float:
    """Center of mass of the total density."""
    grid = state.grid
    rho = state.density()
    return float(integrate(grid.x * rho, grid) / state.norm())


def mean_momentum(state: SpinorField) -> float:
    """<p> over both components, evaluated spectrally."""
    grid = state.grid
    phi = np.fft.fft(state.psi, axis=1)
    weights = (np.abs(phi) ** 2).sum(axis=0)
    # Parseval: sum |psi|^2 dx = sum |F|^2 dx / n
    total = weights.sum() * grid.dx / grid.n_points
    return float((grid.k * weights).sum() * grid.dx / grid.n_points / total)


def component_centroids(state: SpinorField) -> tuple[float, float]:
    """Mean position of the spin-up and spin-down densities separately."""
    grid = state.grid
    out = []
    for comp in (state.up, state.down):
        rho = np.abs(comp) ** 2
        w = integrate(rho, grid)
        out.append(float(integrate(grid.x * rho, grid) / w))
    return out[0], out[1]


def condensate_width(obj, grid: SpatialGrid | None = None) -> float:
    """RMS width w = sqrt(2/N * integral x^2 rho dx).

    Accepts a SpinorField, a ground-state result carrying psi0/grid, or a
    bare real/complex array together with its grid.  Normalized so the
    Gaussian exp(-x^2 / 2 w^2) has width w.
    """
    if isinstance(obj, SpinorField):
        rho, g = obj.density(), obj.grid
    elif hasattr(obj, "psi0") and hasattr(obj, "grid"):
        rho, g = np.abs(obj.psi0) ** 2, obj.grid
    else:
        if grid is None:
            raise TypeError("bare arrays require an explicit grid")
        rho, g = np.abs(np.asarray(obj)) ** 2, grid
    n = integrate(rho, g)
    return float(math.sqrt(2.0 * integrate(g.x**2 * rho, g) / n))


def analytic_free_purity(alpha: float, w: float, t: float) -> float:
    """Ballistic-expansion purity of a noninteracting Gaussian, exp[-2(alpha t / w)^2]."""
    return math.exp(-2.0 * (alpha * t / w) ** 2)


class PurityEstimate(NamedTuple):
    value: float
    asymptotic: bool


def analytic_imprinted_purity(alpha: float, w: float,
                              profile: str = "gaussian") -> PurityEstimate:
    """Initial purity of a phase-imprinted spinor exp(-i alpha x sigma_z) psi (1,1)/sqrt(2).

    gaussian: exact closed form exp[-2 (alpha w)^2].
    thomas_fermi: large-(alpha w) envelope cos^2(2 alpha w)/(alpha w)^4, valid
    only as a proportionality; requires alpha*w >= 3 and is flagged asymptotic.
    """
    if profile == "gaussian":
        return PurityEstimate(math.exp(-2.0 * (alpha * w) ** 2), False)
    if profile == "thomas_fermi":
        aw = alpha * w
        if aw < 3.0:
            raise ValueError(
                f"thomas_fermi purity envelope requires alpha*w >= 3, got {aw}"
            )
        return PurityEstimate(math.cos(2.0 * aw) ** 2 / aw**4, True)
    raise ValueError(f"unknown profile {profile!r}")
