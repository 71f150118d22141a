"""Interacting scalar ground states of the trapped 1D condensate.

The primary method minimizes the Gross-Pitaevskii energy in a truncated
basis of even harmonic-oscillator eigenfunctions; an imaginary-time
relaxation of the same equation serves as an independent oracle.  The
Thomas-Fermi profile and a single-width Gaussian variational ansatz give
the closed-form strong- and weak-coupling limits, including the spin-dipole
oscillation frequency of two symmetrically displaced components.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.optimize import brentq

from .dynamics import DriveSchedule, SplitStepper, total_energy
from .grid import ModelParams, SpatialGrid, SpinorField, integrate, make_grid
from .observables import condensate_width

SQRT_2PI = math.sqrt(2.0 * math.pi)

# Convergence requires the highest retained basis coefficient to be small.
COEFF_TAIL_LIMIT = 1e-3
_BOUNDARY_DECAY = 1e-12


class ConvergenceError(RuntimeError):
    """Minimization or relaxation failed; carries the best iterate found."""

    def __init__(self, message, best=None, energy_history=None):
        super().__init__(message)
        self.best = best
        self.energy_history = energy_history


@dataclass(frozen=True)
class HermiteExpansion:
    """Even-order oscillator-basis coefficients of a unit-normalized shape."""

    coefficients: np.ndarray  # C_0, C_2, ..., C_{2 n_max}
    n_max: int
    particle_number: float


@dataclass(frozen=True)
class GroundStateResult:
    psi0: np.ndarray          # real profile, normalized to particle_number
    grid: SpatialGrid
    energy: float             # total energy in trap units
    width: float
    method: str
    particle_number: float = 1.0
    n_max: int | None = None
    converged: bool = True
    iterations: int = 0


@dataclass(frozen=True)
class VariationalGaussian:
    width: float
    energy: float
    shift: float = 0.0


def hermite_basis_functions(grid: SpatialGrid, n_max: int) -> np.ndarray:
    """Even harmonic-oscillator eigenfunctions phi_0, phi_2, ..., phi_{2 n_max}.

    Built by the stable three-term recurrence on the normalized functions
    themselves (never on raw Hermite polynomial values, which overflow at
    large order).  Each returned function must decay below 1e-12 at the
    grid boundary; otherwise the grid is too narrow for that order.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    x = grid.x
    prev = np.pi**-0.25 * np.exp(-(x**2) / 2.0)
    rows = [prev]
    if n_max > 0:
        cur = math.sqrt(2.0) * x * prev
        for order in range(2, 2 * n_max + 1):
            prev, cur = cur, (math.sqrt(2.0 / order) * x * cur
                              - math.sqrt((order - 1.0) / order) * prev)
            if order % 2 == 0:
                rows.append(cur)
    basis = np.array(rows)
    edge = np.maximum(np.abs(basis[:, 0]), np.abs(basis[:, -1]))
    bad = np.nonzero(edge >= _BOUNDARY_DECAY)[0]
    if bad.size:
        order = 2 * int(bad[0])
        raise ValueError(
            f"grid [{grid.x_min}, {grid.x_max}] too narrow for oscillator order "
            f"{order}: boundary amplitude {edge[bad[0]]:.2e} >= {_BOUNDARY_DECAY:g}")
    return basis


def total_energy_functional(psi: np.ndarray, g1N: float, grid: SpatialGrid,
                            particle_number: float = 1.0) -> float:
    """Gross-Pitaevskii energy of a real trapped profile normalized to N.

    E = N * [ (1/2) int ((phi')^2 + x^2 phi^2) dx + (g1N/2) int phi^4 dx ]
    for the unit-normalized shape phi = psi/sqrt(N); the derivative is
    evaluated spectrally.
    """
    psi = np.asarray(psi, dtype=float)
    nrm = integrate(psi**2, grid)
    if abs(nrm - particle_number) > 1e-8 * max(1.0, particle_number):
        raise ValueError(
            f"profile norm {nrm} does not match particle number {particle_number}")
    phi = psi / math.sqrt(particle_number)
    dphi = np.fft.ifft(1j * grid.k * np.fft.fft(phi)).real
    e_kin = 0.5 * integrate(dphi**2, grid)
    e_trap = 0.5 * integrate(grid.x**2 * phi**2, grid)
    e_int = 0.5 * g1N * integrate(phi**4, grid)
    return particle_number * (e_kin + e_trap + e_int)


def _coefficient_energy_grad(c, basis, dx, g1N, eps):
    """Energy and gradient in coefficient space for a unit-normalized shape."""
    s = c @ basis
    s2 = s * s
    energy = float(np.sum(eps * c * c) + 0.5 * g1N * np.sum(s2 * s2) * dx)
    grad = 2.0 * eps * c + 2.0 * g1N * (basis @ (s2 * s)) * dx
    return energy, grad


def _ncg_on_sphere(f_grad, c0, gtol, max_iter):
    """Projected nonlinear conjugate gradient on the unit coefficient sphere."""
    c = c0 / np.linalg.norm(c0)
    energy, grad = f_grad(c)
    rgrad = grad - (grad @ c) * c
    direction = -rgrad
    trial = 1.0
    for iteration in range(max_iter):
        gnorm = np.linalg.norm(rgrad)
        if gnorm < gtol:
            return c, energy, iteration, True
        slope = float(rgrad @ direction)
        if slope >= 0.0:  # not a descent direction: restart
            direction = -rgrad
            slope = -(gnorm * gnorm)
        a = trial
        for _ in range(60):
            c_try = c + a * direction
            c_try /= np.linalg.norm(c_try)
            e_try, g_try = f_grad(c_try)
            if e_try <= energy + 1e-4 * a * slope:
                break
            a *= 0.5
        else:
            return c, energy, iteration, gnorm < 10.0 * gtol
        trial = 2.0 * a
        rg_new = g_try - (g_try @ c_try) * c_try
        beta = max(0.0, float(rg_new @ (rg_new - rgrad)) / float(rgrad @ rgrad))
        direction = -rg_new + beta * (direction - (direction @ c_try) * c_try)
        c, energy, rgrad = c_try, e_try, rg_new
    return c, energy, max_iter, False


def _auto_grid(n_max: int) -> SpatialGrid:
    """Box wide enough for order 2*n_max with dx fine enough for quadrature."""
    turning = math.sqrt(2.0 * (2 * n_max) + 1.0)
    half = max(16.0, math.ceil(1.3 * turning + 5.0))
    n = 16
    while (2.0 * half) / n > 0.05:
        n *= 2
    return make_grid(-half, half, n)


def minimize_hermite(g1N: float, n_max: int = 32, tol: float = 1e-10,
                     grid: SpatialGrid | None = None, particle_number: float = 1.0,
                     auto_expand: bool = True, max_iter: int = 5000,
                     ) -> tuple[HermiteExpansion, GroundStateResult]:
    """Ground state by energy minimization over even oscillator-basis coefficients.

    In coefficient space the trap + kinetic part is diagonal with the exact
    eigenvalues 2n + 1/2, so only the quartic term needs quadrature.  The
    iteration stops when the projected gradient norm drops below sqrt(tol),
    which bounds the energy error by about tol.  n_max doubles automatically
    until the highest coefficient satisfies |C| < 1e-3 (a user grid must be
    wide enough for the final basis order).
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    gtol = math.sqrt(tol)
    current_n_max = n_max
    while True:
        g = grid if grid is not None else _auto_grid(current_n_max)
        basis = hermite_basis_functions(g, current_n_max)
        eps = 2.0 * np.arange(current_n_max + 1) + 0.5
        c0 = np.zeros(current_n_max + 1)
        c0[0] = 1.0

        def f_grad(c, _basis=basis, _eps=eps, _dx=g.dx):
            return _coefficient_energy_grad(c, _basis, _dx, g1N, _eps)

        c, energy, iterations, ok = _ncg_on_sphere(f_grad, c0, gtol, max_iter)
        if c[0] < 0:
            c = -c
        expansion = HermiteExpansion(c, current_n_max, particle_number)
        if not ok:
            raise ConvergenceError(
                f"minimization stalled after {iterations} iterations at g1N={g1N}",
                best=expansion)
        if abs(c[-1]) < COEFF_TAIL_LIMIT:
            break
        if auto_expand and current_n_max < 512:
            current_n_max *= 2
            continue
        raise ConvergenceError(
            f"highest coefficient |C_{2 * current_n_max}| = {abs(c[-1]):.2e} "
            f">= {COEFF_TAIL_LIMIT}; increase n_max", best=expansion)

    psi0 = math.sqrt(particle_number) * (c @ basis)
    result = GroundStateResult(
        psi0=psi0, grid=g, energy=particle_number * energy,
        width=condensate_width(psi0, g), method="hermite",
        particle_number=particle_number, n_max=current_n_max,
        converged=True, iterations=iterations)
    return expansion, result


def imaginary_time_ground_state(g1N: float, grid: SpatialGrid, dtau: float = 2.5e-4,
                                tol: float = 1e-8, particle_number: float = 1.0,
                                initial: np.ndarray | None = None,
                                max_steps: int = 200_000) -> GroundStateResult:
    """Ground state by normalized imaginary-time split-step relaxation.

    Reuses the real-time kernel with dt -> -i*dtau (spin-up component only,
    no spin-orbit or Zeeman terms), renormalizing every step.  The energy
    must decrease monotonically; relaxation stops once the per-step energy
    drop falls below tol*dtau, which bounds the final energy error by
    roughly tol / (2 * excitation gap).
    """
    if dtau > 1e-3 or dtau <= 0:
        raise ValueError("dtau must satisfy 0 < dtau <= 1e-3")
    if tol <= 0:
        raise ValueError("tol must be positive")
    params = ModelParams(g1N=g1N, trap_on=True)
    schedule = DriveSchedule("static")
    stepper = SplitStepper(grid, params, schedule, complex(0.0, -dtau),
                           particle_number)
    if initial is None:
        shape = np.pi**-0.25 * np.exp(-(grid.x**2) / 2.0)
    else:
        shape = np.asarray(initial, dtype=float)
        if integrate(shape**2, grid) <= 0:
            raise ValueError("initial guess must have nonzero norm")
    psi = np.zeros((2, grid.n_points), dtype=complex)
    psi[0] = shape
    psi *= math.sqrt(particle_number / integrate(np.abs(psi[0]) ** 2, grid))

    def energy_of(arr):
        return total_energy(SpinorField(grid, arr), params, schedule)

    history = [energy_of(psi)]
    threshold = tol * dtau
    for _ in range(max_steps):
        stepper.step(psi, 0.0)
        psi *= math.sqrt(particle_number / integrate(
            np.abs(psi[0]) ** 2 + np.abs(psi[1]) ** 2, grid))
        e_new = energy_of(psi)
        if e_new > history[-1] + 1e-12:
            raise ConvergenceError(
                f"imaginary-time energy increased ({history[-1]} -> {e_new}); "
                f"reduce dtau", energy_history=history)
        drop = history[-1] - e_new
        history.append(e_new)
        if drop < threshold:
            profile = np.abs(psi[0])
            profile *= math.sqrt(particle_number / integrate(profile**2, grid))
            return GroundStateResult(
                psi0=profile, grid=grid, energy=e_new,
                width=condensate_width(profile, grid), method="imaginary_time",
                particle_number=particle_number, converged=True,
                iterations=len(history) - 1)
    raise ConvergenceError(
        f"imaginary time did not converge in {max_steps} steps",
        energy_history=history)


def thomas_fermi_profile(g1N: float, grid: SpatialGrid,
                         particle_number: float = 1.0) -> GroundStateResult:
    """Strong-coupling density profile: inverted parabola of half-width (3 g1N / 2)^(1/3).

    The kinetic-energy-free limit; energy is trap + interaction only.  The
    profile edge is a cusp, so grid norms are accurate only to ~1e-3.
    """
    if g1N <= 0:
        raise ValueError("Thomas-Fermi profile requires g1N > 0")
    w_tf = (1.5 * g1N) ** (1.0 / 3.0)
    psi = np.zeros_like(grid.x)
    inside = np.abs(grid.x) <= w_tf
    psi[inside] = (math.sqrt(3.0) / 2.0 * math.sqrt(particle_number)
                   / w_tf**1.5 * np.sqrt(w_tf**2 - grid.x[inside] ** 2))
    energy = particle_number * 0.3 * w_tf**2
    return GroundStateResult(
        psi0=psi, grid=grid, energy=energy,
        width=w_tf * math.sqrt(0.4), method="thomas_fermi",
        particle_number=particle_number)


def thomas_fermi_radius(g1N: float) -> float:
    if g1N <= 0:
        raise ValueError("Thomas-Fermi radius requires g1N > 0")
    return (1.5 * g1N) ** (1.0 / 3.0)


def gaussian_profile(grid: SpatialGrid, width: float = 1.0,
                     particle_number: float = 1.0, center: float = 0.0) -> np.ndarray:
    """Normalized Gaussian (N / (sqrt(pi) w))^(1/2) exp(-(x-c)^2 / 2 w^2)."""
    return (math.sqrt(particle_number / (math.sqrt(math.pi) * width))
            * np.exp(-((grid.x - center) ** 2) / (2.0 * width**2)))


def _gaussian_energy(w: float, g1N: float) -> float:
    return 0.25 * (w**2 + 1.0 / w**2) + g1N / (2.0 * SQRT_2PI * w)


def _gaussian_energy_derivative(w: float, g1N: float) -> float:
    return 0.5 * (w - 1.0 / w**3) - g1N / (2.0 * SQRT_2PI * w**2)


def asymptotic_gaussian_width(g1N: float) -> float:
    """Strong-coupling width (g1N/sqrt(2 pi))^(1/3) + sqrt(2 pi)/(3 g1N)."""
    if g1N <= 0:
        raise ValueError("asymptotic width requires g1N > 0")
    return (g1N / SQRT_2PI) ** (1.0 / 3.0) + SQRT_2PI / (3.0 * g1N)


def gaussian_variational(g1N: float, particle_number: float = 1.0) -> VariationalGaussian:
    """Single-parameter Gaussian ansatz: width from dE/dw = 0, bracketed root find."""
    if g1N < 0:
        raise ValueError("g1N must be >= 0")
    if g1N == 0.0:
        return VariationalGaussian(1.0, 0.5 * particle_number)
    upper = 1.0 + 2.0 * asymptotic_gaussian_width(g1N)
    w = brentq(_gaussian_energy_derivative, 1.0, upper, args=(g1N,),
               xtol=1e-14, rtol=8.9e-16)
    residual = abs(_gaussian_energy_derivative(w, g1N))
    if residual > 1e-10:
        raise RuntimeError(f"variational width residual {residual:g} too large")
    return VariationalGaussian(float(w), particle_number * _gaussian_energy(w, g1N))


class SpinDipoleFrequency(NamedTuple):
    exact: float
    asymptotic: float  # nan when g1N = 0 (no strong-coupling limit)


def spin_dipole_frequency(g1N: float, width: float | None = None) -> SpinDipoleFrequency:
    """Oscillation frequency of two symmetrically displaced spin components.

    exact: sqrt(1 - g1N / (sqrt(2 pi) w^3)) with the variational width w
    (or a caller-supplied one); asymptotic: the strong-coupling power law
    (sqrt(2 pi)/g1N)^(2/3), nan at g1N = 0.
    """
    w = gaussian_variational(g1N).width if width is None else width
    radicand = 1.0 - g1N / (SQRT_2PI * w**3)
    if radicand < 0.0:
        raise ValueError(
            f"negative radicand {radicand:g}: width {w} is inconsistent with g1N={g1N}")
    asymptotic = (SQRT_2PI / g1N) ** (2.0 / 3.0) if g1N > 0 else math.nan
    return SpinDipoleFrequency(math.sqrt(radicand), asymptotic)


def shifted_gaussian_energy(g1N: float, width: float, shift: float,
                            particle_number: float = 1.0) -> float:
    """Quadratic energy cost (N/2) xi^2 (1 - g1N / (sqrt(2 pi) w^3)) of displacing
    the two spin components by +/- xi.

    Valid to quadratic order only; shifts above 0.1*w are rejected because
    the neglected quartic terms are uncontrolled there.
    """
    if width <= 0:
        raise ValueError("width must be positive")
    if abs(shift) > 0.1 * width:
        raise ValueError(
            f"shift {shift} exceeds 0.1*width = {0.1 * width}: quadratic "
            f"approximation not valid")
    return (0.5 * particle_number * shift**2
            * (1.0 - g1N / (SQRT_2PI * width**3)))
