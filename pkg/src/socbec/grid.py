"""Spatial/momentum grids, spinor field storage, and unit conversion.

Everything downstream works in harmonic-oscillator units (hbar = M = 1,
energies in units of the axial trap frequency, lengths in units of the
oscillator length).  Fields live on a uniform periodic grid; integrals use
the rectangle rule, which is spectrally accurate for periodic or rapidly
decaying integrands.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Boundary-density guard: runs are flagged invalid once the density at the
# box edge exceeds this fraction of the peak density (aliasing protection
# for the periodic spectral method).
BOUNDARY_DENSITY_LIMIT = 1e-8


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@dataclass(frozen=True, eq=False)
class SpatialGrid:
    """Uniform periodic 1D grid with its conjugate momentum grid.

    Momentum nodes follow the standard discrete-Fourier layout
    (0, dk, ..., k_max, -k_max, ..., -dk) spanning [-pi/dx, pi/dx).
    """

    x_min: float
    x_max: float
    n_points: int
    x: np.ndarray
    dx: float
    k: np.ndarray
    dk: float

    @property
    def length(self) -> float:
        return self.x_max - self.x_min


def make_grid(x_min: float, x_max: float, n_points: int) -> SpatialGrid:
    """Build a periodic grid on [x_min, x_max) with n_points nodes.

    n_points must be a power of two >= 16.  The right edge x_max is not a
    node (periodic wrap-around).
    """
    if x_max <= x_min:
        raise ValueError(f"x_max ({x_max}) must exceed x_min ({x_min})")
    if n_points < 16 or not _is_power_of_two(int(n_points)):
        raise ValueError(f"n_points must be a power of two >= 16, got {n_points}")
    n = int(n_points)
    dx = (x_max - x_min) / n
    x = x_min + dx * np.arange(n)
    k = 2.0 * np.pi * np.fft.fftfreq(n, d=dx)
    dk = 2.0 * np.pi / (x_max - x_min)
    return SpatialGrid(float(x_min), float(x_max), n, x, dx, k, dk)


def integrate(values: np.ndarray, grid: SpatialGrid):
    """Rectangle-rule integral over the grid (exact for band-limited fields)."""
    return values.sum() * grid.dx


@dataclass(eq=False)
class SpinorField:
    """Two-component complex field sampled on a SpatialGrid.

    psi has shape (2, n_points); psi[0] is the spin-up component, psi[1]
    the spin-down component.  Treated as an immutable value: operations
    return new instances.
    """

    grid: SpatialGrid
    psi: np.ndarray

    def __post_init__(self):
        psi = np.asarray(self.psi, dtype=complex)
        if psi.shape != (2, self.grid.n_points):
            raise ValueError(
                f"spinor shape {psi.shape} does not match (2, {self.grid.n_points})"
            )
        self.psi = psi

    @property
    def up(self) -> np.ndarray:
        return self.psi[0]

    @property
    def down(self) -> np.ndarray:
        return self.psi[1]

    def density(self) -> np.ndarray:
        """Total particle density |psi_up|^2 + |psi_down|^2."""
        return np.abs(self.psi[0]) ** 2 + np.abs(self.psi[1]) ** 2

    def norm(self) -> float:
        """Integrated total density (the particle number the field carries)."""
        return float(integrate(self.density(), self.grid))

    def copy(self) -> "SpinorField":
        return SpinorField(self.grid, self.psi.copy())


def spinor_from_components(grid: SpatialGrid, up, down) -> SpinorField:
    return SpinorField(grid, np.stack([np.asarray(up, dtype=complex),
                                       np.asarray(down, dtype=complex)]))


def normalize(field: SpinorField, particle_number: float = 1.0) -> SpinorField:
    """Rescale so the integrated density equals particle_number."""
    if particle_number <= 0:
        raise ValueError("particle_number must be positive")
    current = field.norm()
    if current <= 0.0 or not math.isfinite(current):
        raise ValueError("cannot normalize a zero-norm field")
    return SpinorField(field.grid, field.psi * math.sqrt(particle_number / current))


def boundary_density_ratio(field: SpinorField) -> float:
    """Edge density (first and last node) relative to the peak density."""
    rho = field.density()
    peak = rho.max()
    if peak <= 0.0:
        return 0.0
    return float((rho[0] + rho[-1]) / peak)


@dataclass(eq=False)
class MomentumSpinor:
    """Spinor in momentum representation, nodes in DFT order (grid.k)."""

    grid: SpatialGrid
    phi: np.ndarray

    def norm(self) -> float:
        rho_k = np.abs(self.phi[0]) ** 2 + np.abs(self.phi[1]) ** 2
        return float(rho_k.sum() * self.grid.dk)


def spectral_transform(field, direction: str = "forward"):
    """Unitary Fourier transform between position and momentum representation.

    The forward transform approximates phi(k) = (2*pi)^{-1/2} * integral of
    psi(x) exp(-i k x) dx, so Parseval holds with the dk-weighted sum and a
    centered Gaussian stays real in momentum space.
    """
    grid = field.grid
    if direction == "forward":
        if not isinstance(field, SpinorField):
            raise TypeError("forward transform expects a SpinorField")
        phase = np.exp(-1j * grid.k * grid.x_min)
        phi = grid.dx / math.sqrt(2.0 * np.pi) * np.fft.fft(field.psi, axis=1) * phase
        return MomentumSpinor(grid, phi)
    if direction == "inverse":
        if not isinstance(field, MomentumSpinor):
            raise TypeError("inverse transform expects a MomentumSpinor")
        phase = np.exp(1j * grid.k * grid.x_min)
        psi = np.fft.ifft(field.phi * phase, axis=1) * math.sqrt(2.0 * np.pi) / grid.dx
        return SpinorField(grid, psi)
    raise ValueError(f"unknown direction {direction!r}")


_DRIVE_MODES = ("none", "resonant_sine")
_INIT_PHASES = ("plain", "imprinted")


@dataclass(frozen=True)
class ModelParams:
    """Dimensionless physics knobs of the driven spinor condensate.

    g1N is the single interaction parameter (coupling constant times
    particle number); alpha the spin-orbit strength; delta the synthetic
    Zeeman splitting; d0 the trap-drive amplitude.
    """

    g1N: float = 0.0
    alpha: float = 0.0
    delta: float = 0.0
    d0: float = 0.0
    drive: str = "none"
    init_phase: str = "plain"
    trap_on: bool = True

    def __post_init__(self):
        if self.g1N < 0:
            raise ValueError("g1N must be >= 0")
        if self.d0 < 0:
            raise ValueError("d0 must be >= 0")
        if self.delta < 0:
            raise ValueError("delta must be >= 0")
        if self.drive not in _DRIVE_MODES:
            raise ValueError(f"drive must be one of {_DRIVE_MODES}")
        if self.init_phase not in _INIT_PHASES:
            raise ValueError(f"init_phase must be one of {_INIT_PHASES}")


@dataclass(frozen=True)
class PhysicalUnits:
    """Laboratory-frame trap/atom parameters (SI units)."""

    mass: float
    omega0: float
    omega_perp: float
    scattering_length: float
    particle_number: float

    def __post_init__(self):
        for name in ("mass", "omega0", "omega_perp", "scattering_length",
                     "particle_number"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be strictly positive")


@dataclass(frozen=True)
class DimensionlessScales:
    a_ho: float          # oscillator length [m]
    time_unit: float     # 1/omega0 [s]
    speed_unit: float    # a_ho * omega0 [m/s]
    g1: float            # dimensionless 1D coupling constant


_HBAR = 1.054571817e-34  # J s


def physical_to_dimensionless(units: PhysicalUnits) -> DimensionlessScales:
    """Convert trap/atom parameters to oscillator units.

    a_ho = sqrt(hbar / (M omega0)), time unit 1/omega0, speed a_ho*omega0,
    and g1 = 2 (a_s / a_ho) (omega_perp / omega0) for the effective 1D
    contact coupling of a transversally frozen gas.
    """
    a_ho = math.sqrt(_HBAR / (units.mass * units.omega0))
    time_unit = 1.0 / units.omega0
    speed_unit = a_ho * units.omega0
    g1 = 2.0 * (units.scattering_length / a_ho) * (units.omega_perp / units.omega0)
    return DimensionlessScales(a_ho, time_unit, speed_unit, g1)
