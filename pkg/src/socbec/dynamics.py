"""Driven spinor Gross-Pitaevskii evolution.

The Hamiltonian is

    H = alpha*sigma_z*p + p^2/2 + (delta/2)*sigma_x
        + (x - d(t))^2/2 + g1*|Psi|^2

in oscillator units, with d(t) the displacement of the trap center.  The
integrator is a Strang split-step spectral scheme: the momentum-diagonal
part (kinetic + spin-orbit) alternates with the position-diagonal part
(trap + interaction) composed with the exact 2x2 Zeeman rotation.  A
Crank-Nicolson finite-difference stepper serves as an independent oracle.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .grid import (
    BOUNDARY_DENSITY_LIMIT,
    ModelParams,
    SpatialGrid,
    SpinorField,
    boundary_density_ratio,
    integrate,
)
from .observables import bloch_vector, condensate_width, spin_density_matrix, spin_dipole_moment


class NumericalError(RuntimeError):
    """Raised when the state stops being finite or a solver stalls."""

    def __init__(self, message, step=None, history=None):
        super().__init__(message)
        self.step = step
        self.history = history


@dataclass(frozen=True)
class DriveSchedule:
    """Trap-center displacement law: static, or d0*sin(delta*t) on resonance."""

    mode: str = "static"
    d0: float = 0.0
    delta: float = 0.0

    def __post_init__(self):
        if self.mode not in ("static", "resonant_sine"):
            raise ValueError(f"unknown drive mode {self.mode!r}")


def schedule_from_params(params: ModelParams) -> DriveSchedule:
    if params.drive == "resonant_sine":
        return DriveSchedule("resonant_sine", params.d0, params.delta)
    return DriveSchedule("static", 0.0, 0.0)


def trap_displacement(t: float, schedule: DriveSchedule) -> float:
    if schedule.mode == "resonant_sine":
        return schedule.d0 * math.sin(schedule.delta * t)
    return 0.0


@dataclass(frozen=True)
class EvolutionConfig:
    dt: float
    t_final: float
    sample_stride: int = 100
    snapshot_times: tuple = ()

    def __post_init__(self):
        if not 0.0 < self.dt <= 1e-2:
            raise ValueError("dt must satisfy 0 < dt <= 1e-2")
        if self.t_final < 0:
            raise ValueError("t_final must be >= 0")
        if self.sample_stride < 1:
            raise ValueError("sample_stride must be >= 1")
        object.__setattr__(self, "snapshot_times", tuple(self.snapshot_times))


@dataclass(frozen=True)
class RabiParameters:
    omega_R: float
    T_sf: float


def rabi_parameters(params: ModelParams) -> RabiParameters:
    """Resonant-drive Rabi frequency alpha*d0*delta and spin-flip time pi/omega_R."""
    omega = params.alpha * params.d0 * params.delta
    if omega <= 0.0:
        raise ValueError("Rabi frequency alpha*d0*delta vanishes: no resonance defined")
    return RabiParameters(omega, math.pi / omega)


def build_initial_state(psi_in: np.ndarray, grid: SpatialGrid,
                        mode: str = "plain", alpha: float = 0.0) -> SpinorField:
    """Spinor with spin along +x from a scalar profile normalized to N.

    plain:     psi_in/sqrt(2) * (1, 1)
    imprinted: psi_in/sqrt(2) * (e^{-i alpha x}, e^{+i alpha x}), the
               coordinate-dependent SU(2) rotation that cancels the
               spin-orbit anomalous velocity of each component.
    """
    psi_in = np.asarray(psi_in, dtype=complex)
    if mode == "plain":
        up = psi_in / math.sqrt(2.0)
        down = up.copy()
    elif mode == "imprinted":
        up = psi_in * np.exp(-1j * alpha * grid.x) / math.sqrt(2.0)
        down = psi_in * np.exp(1j * alpha * grid.x) / math.sqrt(2.0)
    else:
        raise ValueError(f"unknown initial-state mode {mode!r}")
    return SpinorField(grid, np.stack([up, down]))


class SplitStepper:
    """Strang step B(dt/2) A(dt) B(dt/2) for the spinor GPE.

    A = p^2/2 + alpha*sigma_z*p is applied as per-component phases in
    momentum space; B applies the scalar phase of trap + interaction and
    the exact Zeeman sigma_x rotation (angle delta*dt/4 per half step; the
    scalar and sigma_x parts commute).  The trap displacement is evaluated
    at the step midpoint.  dt may be complex: dt -> -i*dtau turns the same
    kernel into the imaginary-time relaxation used for ground states.
    """

    def __init__(self, grid: SpatialGrid, params: ModelParams,
                 schedule: DriveSchedule, dt: complex, particle_number: float = 1.0):
        self.grid = grid
        self.params = params
        self.schedule = schedule
        self.dt = dt
        self.g_eff = params.g1N / particle_number
        k = grid.k
        kin_up = k**2 / 2.0 + params.alpha * k
        kin_dn = k**2 / 2.0 - params.alpha * k
        self._kin_phase = np.exp(-1j * dt * np.stack([kin_up, kin_dn]))
        theta = params.delta * dt / 4.0
        self._cos_t = cmath.cos(theta) if isinstance(dt, complex) else math.cos(theta)
        self._sin_t = cmath.sin(theta) if isinstance(dt, complex) else math.sin(theta)
        self._half_coeff = -1j * dt / 2.0
        if isinstance(dt, complex) and dt.imag != 0.0 and schedule.mode != "static":
            raise ValueError("imaginary-time stepping requires a static trap")

    def _half_potential(self, psi: np.ndarray, d: float) -> None:
        rho = np.abs(psi[0]) ** 2 + np.abs(psi[1]) ** 2
        v = self.g_eff * rho
        if self.params.trap_on:
            v = v + 0.5 * (self.grid.x - d) ** 2
        psi *= np.exp(self._half_coeff * v)
        if self.params.delta != 0.0:
            up = self._cos_t * psi[0] - 1j * self._sin_t * psi[1]
            dn = -1j * self._sin_t * psi[0] + self._cos_t * psi[1]
            psi[0], psi[1] = up, dn

    def step(self, psi: np.ndarray, t: float) -> None:
        """Advance psi (shape (2, n), modified in place) from t to t + dt."""
        d_mid = trap_displacement(t + self.dt.real / 2.0, self.schedule)
        self._half_potential(psi, d_mid)
        phi = np.fft.fft(psi, axis=1)
        phi *= self._kin_phase
        psi[:] = np.fft.ifft(phi, axis=1)
        self._half_potential(psi, d_mid)


def split_step(state: SpinorField, t: float, dt: float, params: ModelParams,
               schedule: DriveSchedule | None = None) -> SpinorField:
    """One Strang step; negative dt steps backwards in time."""
    if abs(dt) > 1e-2:
        raise ValueError("|dt| must be <= 1e-2")
    schedule = schedule or schedule_from_params(params)
    out = state.copy()
    stepper = SplitStepper(state.grid, params, schedule, dt, state.norm())
    stepper.step(out.psi, t)
    if not np.all(np.isfinite(out.psi.view(float))):
        raise NumericalError("non-finite amplitudes after split step", step=0)
    return out


def total_energy(state: SpinorField, params: ModelParams,
                 schedule: DriveSchedule | None = None, t: float = 0.0) -> float:
    """Total mean-field energy (kinetic + spin-orbit + Zeeman + trap + interaction)."""
    grid = state.grid
    schedule = schedule or schedule_from_params(params)
    n_part = state.norm()
    g_eff = params.g1N / n_part
    phi = np.fft.fft(state.psi, axis=1)
    w = grid.dx / grid.n_points  # Parseval weight for raw FFT
    abs2 = np.abs(phi) ** 2
    e_kin = 0.5 * float((grid.k**2 * (abs2[0] + abs2[1])).sum()) * w
    e_soc = params.alpha * float((grid.k * (abs2[0] - abs2[1])).sum()) * w
    rho = state.density()
    e_int = 0.5 * g_eff * float(integrate(rho**2, grid))
    e_zee = params.delta * float(integrate(np.conj(state.up) * state.down, grid).real)
    e_trap = 0.0
    if params.trap_on:
        d = trap_displacement(t, schedule)
        e_trap = 0.5 * float(integrate((grid.x - d) ** 2 * rho, grid))
    return e_kin + e_soc + e_zee + e_trap + e_int


@dataclass
class Trajectory:
    """Time series of spin-qubit observables plus optional field snapshots."""

    t: np.ndarray
    purity: np.ndarray
    sx: np.ndarray
    sy: np.ndarray
    sz: np.ndarray
    x_sz: np.ndarray
    width: np.ndarray
    norm: np.ndarray
    energy: np.ndarray
    d: np.ndarray
    snapshots: list = field(default_factory=list)  # (time, SpinorField) pairs
    valid: bool = True
    invalid_reason: str | None = None


def evolve(initial: SpinorField, params: ModelParams, schedule: DriveSchedule,
           config: EvolutionConfig) -> Trajectory:
    """Propagate the spinor GPE, sampling observables every sample_stride steps.

    The run is flagged invalid (and stopped) as soon as the boundary
    density exceeds the aliasing guard at a sample time.  Snapshots are
    taken at the steps nearest the requested times.
    """
    grid = initial.grid
    if not np.all(np.isfinite(initial.psi.view(float))):
        raise NumericalError("non-finite amplitudes in the initial state", step=0)
    if boundary_density_ratio(initial) >= BOUNDARY_DENSITY_LIMIT:
        raise ValueError("initial state already violates the boundary-density guard")
    n_steps = int(round(config.t_final / config.dt))
    snap_steps = {}
    for ts in config.snapshot_times:
        idx = int(round(ts / config.dt))
        if 0 <= idx <= n_steps:
            snap_steps.setdefault(idx, ts)

    stepper = SplitStepper(grid, params, schedule, config.dt, initial.norm())
    psi = initial.psi.copy()
    rows = []
    snapshots = []
    valid = True
    reason = None

    def record(step_idx):
        t = step_idx * config.dt
        state = SpinorField(grid, psi)
        rho = spin_density_matrix(state)
        b = bloch_vector(rho, t)
        rows.append((
            t, b.purity, b.sx, b.sy, b.sz,
            spin_dipole_moment(state),
            condensate_width(state),
            state.norm(),
            total_energy(state, params, schedule, t),
            trap_displacement(t, schedule),
        ))
        return boundary_density_ratio(state) < BOUNDARY_DENSITY_LIMIT

    for step_idx in range(n_steps + 1):
        if step_idx in snap_steps:
            snapshots.append((step_idx * config.dt, SpinorField(grid, psi.copy())))
        if step_idx % config.sample_stride == 0 or step_idx == n_steps:
            if not record(step_idx):
                valid = False
                reason = (f"boundary density exceeded {BOUNDARY_DENSITY_LIMIT:g} "
                          f"of peak at t={step_idx * config.dt:g}")
                break
        if step_idx == n_steps:
            break
        stepper.step(psi, step_idx * config.dt)
        if not np.all(np.isfinite(psi.view(float))):
            raise NumericalError(
                f"non-finite amplitudes at step {step_idx + 1}", step=step_idx + 1)

    cols = np.array(rows, dtype=float).T if rows else np.zeros((10, 0))
    return Trajectory(
        t=cols[0], purity=cols[1], sx=cols[2], sy=cols[3], sz=cols[4],
        x_sz=cols[5], width=cols[6], norm=cols[7], energy=cols[8], d=cols[9],
        snapshots=snapshots, valid=valid, invalid_reason=reason,
    )


def crank_nicolson_step(state: SpinorField, t: float, dt: float,
                        params: ModelParams, schedule: DriveSchedule | None = None,
                        tol: float = 1e-10, max_iter: int = 500) -> SpinorField:
    """Implicit-midpoint finite-difference step, the oracle for the split stepper.

    Centered second differences for p^2, centered first differences for the
    spin-orbit term, periodic wrap, nonlinearity lagged at the step-start
    density; the implicit equation is solved by fixed-point iteration.
    Norm-conserving up to the solver tolerance.
    """
    grid = state.grid
    if grid.n_points > 512:
        raise ValueError("Crank-Nicolson oracle is restricted to n_points <= 512")
    schedule = schedule or schedule_from_params(params)
    n_part = state.norm()
    g_eff = params.g1N / n_part
    dx = grid.dx
    rho0 = state.density()  # lagged nonlinearity
    v = g_eff * rho0
    if params.trap_on:
        d_mid = trap_displacement(t + dt / 2.0, schedule)
        v = v + 0.5 * (grid.x - d_mid) ** 2
    alpha = params.alpha
    half_delta = params.delta / 2.0

    def apply_h(y):
        y_plus = np.roll(y, -1, axis=1)
        y_minus = np.roll(y, 1, axis=1)
        out = -0.5 * (y_plus - 2.0 * y + y_minus) / dx**2
        if alpha != 0.0:
            p_y = -0.5j * (y_plus - y_minus) / dx
            out[0] += alpha * p_y[0]
            out[1] -= alpha * p_y[1]
        if half_delta != 0.0:
            out += half_delta * y[::-1]
        out += v * y
        return out

    psi0 = state.psi
    psi_new = psi0 - 1j * dt * apply_h(psi0)
    scale = math.sqrt(n_part)
    for _ in range(max_iter):
        mid = 0.5 * (psi0 + psi_new)
        nxt = psi0 - 1j * dt * apply_h(mid)
        delta_norm = math.sqrt(float((np.abs(nxt - psi_new) ** 2).sum() * dx))
        psi_new = nxt
        if delta_norm <= tol * scale:
            return SpinorField(grid, psi_new)
    raise NumericalError(
        f"Crank-Nicolson fixed point did not reach {tol:g} in {max_iter} iterations")
