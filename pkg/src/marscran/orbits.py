"""Circular-orbit kinematics, drag, and drag-driven orbital decay.

The lifetime integrator advances the orbital period P with the secular
decay rate

    dP/dt = -3*pi * rho(h) * (R + h) * A*C_D/m

and recovers the altitude from P in closed form, r = (mu*(P/2pi)^2)^(1/3).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .environment import (
    PlanetProfile,
    SpacecraftSpec,
    _out,
    check_altitude,
    cross_section,
)
from .errors import CeilingExceededError, DomainError, NumericalError

SECONDS_PER_DAY = 86400.0
SECONDS_PER_YEAR = 365.25 * SECONDS_PER_DAY

DEFAULT_HORIZON = 100 * SECONDS_PER_YEAR
MAX_TRAJECTORY_SAMPLES = 10_000

# per-step caps at step_scale == 1
PERIOD_STEP_FRACTION = 1e-3
ALTITUDE_STEP_FRACTION = 0.1  # of the scale height
TARGET_FILL = 0.98  # aim slightly under the caps to avoid rejected steps
LANDING_OVERSHOOT = 1.05


@dataclass(frozen=True)
class OrbitState:
    altitude: float
    radius: float
    velocity: float
    period: float

    @classmethod
    def at(cls, planet: PlanetProfile, h: float) -> OrbitState:
        return cls(
            altitude=float(h),
            radius=planet.radius + float(h),
            velocity=circular_velocity(planet, h),
            period=orbital_period(planet, h),
        )


def circular_velocity(planet: PlanetProfile, h):
    """Circular orbital speed sqrt(mu/(R+h)) in m/s."""
    h = check_altitude(h)
    return _out(np.sqrt(planet.mu / (planet.radius + h)))


def drag_force(planet: PlanetProfile, spec: SpacecraftSpec, h):
    """Aerodynamic drag 0.5*rho*v^2*C_D*A in newtons at altitude ``h`` (m)."""
    h = check_altitude(h)
    rho = planet.rho0 * np.exp(-h / planet.scale_height)
    v2 = planet.mu / (planet.radius + h)
    return _out(0.5 * rho * v2 * spec.drag_coefficient * cross_section(spec))


def orbital_period(planet: PlanetProfile, h):
    """Circular orbital period 2*pi*sqrt((R+h)^3/mu) in seconds."""
    h = check_altitude(h)
    return _out(2 * np.pi * np.sqrt((planet.radius + h) ** 3 / planet.mu))


def altitude_from_period(planet: PlanetProfile, period):
    """Inverse of :func:`orbital_period`. May return negative altitudes."""
    p = np.asarray(period, dtype=float)
    r = np.cbrt(planet.mu * (p / (2 * np.pi)) ** 2)
    return _out(r - planet.radius)


def period_decay_rate(planet: PlanetProfile, spec: SpacecraftSpec, h):
    """Drag-induced dP/dt (s/s, always negative) at altitude ``h`` (m)."""
    h = check_altitude(h)
    return _out(_decay_rate(planet, spec.ballistic_factor, h))


def _decay_rate(planet: PlanetProfile, ballistic: float, h):
    # unchecked: integrator stages may probe slightly below the surface
    rho = planet.rho0 * np.exp(-h / planet.scale_height)
    return -3 * np.pi * rho * (planet.radius + h) * ballistic


@dataclass(frozen=True)
class LifetimeResult:
    """Outcome of a decay run.

    ``lifetime`` is in seconds. ``terminal_reason`` is ``surface_reached``,
    ``period_collapsed`` or ``horizon_exceeded``; in the last case
    ``lifetime`` equals the horizon and is only a lower bound.
    ``times``, ``altitudes`` and ``periods`` hold the (thinned) trajectory.
    """

    lifetime: float
    terminal_reason: str
    times: np.ndarray
    altitudes: np.ndarray
    periods: np.ndarray
    steps: int

    @property
    def lifetime_days(self) -> float:
        return self.lifetime / SECONDS_PER_DAY

    @property
    def lifetime_years(self) -> float:
        return self.lifetime / SECONDS_PER_YEAR


def _rk4_step(planet, ballistic, period, dt):
    def f(p):
        return _decay_rate(planet, ballistic, altitude_from_period(planet, p))

    k1 = f(period)
    k2 = f(period + 0.5 * dt * k1)
    k3 = f(period + 0.5 * dt * k2)
    k4 = f(period + dt * k3)
    return period + dt * (k1 + 2 * k2 + 2 * k3 + k4) / 6


def _thin(n: int, limit: int) -> np.ndarray:
    if n <= limit:
        return np.arange(n)
    return np.unique(np.linspace(0, n - 1, limit).round().astype(int))


def orbital_lifetime(
    planet: PlanetProfile,
    spec: SpacecraftSpec,
    h0: float,
    horizon: float = DEFAULT_HORIZON,
    *,
    step_scale: float = 1.0,
    max_samples: int = MAX_TRAJECTORY_SAMPLES,
) -> LifetimeResult:
    """Integrate drag decay from a circular orbit at ``h0`` until impact.

    Classical RK4 on the period with an adaptive step: each accepted step
    changes P by at most ``1e-3*step_scale`` of its value and the altitude
    by at most ``0.1*step_scale`` scale heights. The final step is shortened
    so that the last sample sits on the surface.

    Raises
    ------
    DomainError
        If ``h0`` or ``horizon`` is not positive.
    NumericalError
        If the step size underflows.
    """
    if not h0 > 0:
        raise DomainError(f"initial altitude must be > 0 m, got {h0!r}")
    if not horizon > 0:
        raise DomainError(f"horizon must be > 0 s, got {horizon!r}")
    if not step_scale > 0:
        raise DomainError(f"step_scale must be > 0, got {step_scale!r}")

    ballistic = spec.ballistic_factor
    max_dp_frac = PERIOD_STEP_FRACTION * step_scale
    max_dh = ALTITUDE_STEP_FRACTION * step_scale * planet.scale_height

    t, h = 0.0, float(h0)
    p = orbital_period(planet, h)
    times, alts, periods = [t], [h], [p]
    reason = None
    steps = 0

    def h_rate(alt):
        # dh/dt from r ~ P^(2/3)
        per = orbital_period(planet, max(alt, 0.0))
        return (2.0 / 3.0) * (planet.radius + alt) / per * _decay_rate(planet, ballistic, alt)

    p_surface = orbital_period(planet, 0.0)
    while reason is None:
        # split the remaining descent evenly so the landing step is not a stub
        n = math.ceil(h / (TARGET_FILL * max_dh))
        dh_target = h / n
        if n == 1:
            # aim past the surface so the crossing is cut, not approached in stubs
            dh_target = LANDING_OVERSHOOT * h
        dt = min(
            TARGET_FILL * max_dp_frac * p / -_decay_rate(planet, ballistic, h),
            dh_target / -h_rate(h - 0.5 * dh_target),
        )
        last = False
        if t + dt >= horizon:
            dt, last = horizon - t, True

        while True:
            if not dt > 0 or t + dt == t:
                raise NumericalError(
                    f"step size underflow at altitude {h:.3f} m (t={t:.6g} s)", altitude=h
                )
            p_new = _rk4_step(planet, ballistic, p, dt)
            # a step that crosses the surface is cut there, so only that part counts
            h_new = altitude_from_period(planet, p_new) if p_new > 0 else -planet.radius
            dp = p - max(p_new, p_surface)
            dh = h - max(h_new, 0.0)
            if dp <= max_dp_frac * p * (1 + 1e-9) and dh <= max_dh * (1 + 1e-9):
                break
            dt *= 0.9 * min(max_dp_frac * p / dp, max_dh / dh)
            last = False

        steps += 1
        if h_new <= 0:
            # land exactly on the surface within this step
            if p_new <= 0:
                reason = "period_collapsed"
            else:
                reason = "surface_reached"

            def residual(tau):
                return _rk4_step(planet, ballistic, p, tau) - p_surface

            tau = brentq(residual, 0.0, dt, xtol=1e-12 * max(t, 1.0), rtol=1e-14)
            t, h, p = t + tau, 0.0, p_surface
        else:
            t, h, p = t + dt, h_new, p_new
            if last:
                reason = "horizon_exceeded"

        times.append(t)
        alts.append(h)
        periods.append(p)

    keep = _thin(len(times), max_samples)
    return LifetimeResult(
        lifetime=float(horizon) if reason == "horizon_exceeded" else t,
        terminal_reason=reason,
        times=np.asarray(times)[keep],
        altitudes=np.asarray(alts)[keep],
        periods=np.asarray(periods)[keep],
        steps=steps,
    )


def altitude_for_lifetime(
    planet: PlanetProfile,
    spec: SpacecraftSpec,
    target: float,
    *,
    grid_step: float = 100.0,
    ceiling: float = 1000e3,
    step_scale: float = 1.0,
) -> float:
    """Lowest altitude on a ``grid_step`` grid whose decay lifetime reaches ``target`` s.

    Bisection over grid indices; relies on the lifetime being monotone in
    altitude. Raises CeilingExceededError if even ``ceiling`` falls short.
    """
    if not target > 0:
        raise DomainError(f"target lifetime must be > 0 s, got {target!r}")
    if not (grid_step > 0 and ceiling > grid_step):
        raise DomainError("need 0 < grid_step < ceiling")

    def long_enough(k: int) -> bool:
        run = orbital_lifetime(planet, spec, k * grid_step, horizon=target, step_scale=step_scale)
        return run.terminal_reason == "horizon_exceeded" or run.lifetime >= target

    hi = int(math.floor(ceiling / grid_step + 1e-9))
    if not long_enough(hi):
        raise CeilingExceededError(
            f"lifetime of {target:.6g} s not reached below the {ceiling / 1e3:.1f} km ceiling"
        )
    lo = 1
    if long_enough(lo):
        return lo * grid_step
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if long_enough(mid):
            hi = mid
        else:
            lo = mid
    return hi * grid_step
