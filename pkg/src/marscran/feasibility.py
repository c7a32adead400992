"""Thrust-versus-drag altitude limits, altitude sweeps and knee selection."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import brentq

from .environment import EARTH, MARS, PlanetProfile, SpacecraftSpec, atmospheric_density
from .errors import DomainError, LatencyInfeasibleError
from .geometry import LatencyBudget, session_time
from .orbits import circular_velocity, drag_force

logger = logging.getLogger(__name__)

# Published Earth minimum altitudes (km) for the three catalog CubeSats,
# kept only for side-by-side reporting.
REFERENCE_EARTH_MIN_ALTITUDE_KM = {"1U": 163.5, "6U": 143.0, "12U": 86.5}


def min_sustainable_altitude(planet: PlanetProfile, spec: SpacecraftSpec) -> float:
    """Altitude (m) where drag equals the available thrust.

    Above it the thruster can hold the orbit. Returns 0.0 when drag at the
    surface is already below the thrust.
    """
    def excess(h):
        return drag_force(planet, spec, h) - spec.thrust

    if excess(0.0) <= 0:
        logger.info("%s on %s: drag negligible down to the surface", spec.form_factor, planet.name)
        return 0.0
    hi = planet.scale_height
    while excess(hi) > 0:
        hi *= 2
        if hi > 1e3 * planet.radius:
            raise DomainError("could not bracket the drag/thrust crossing")
    # tight xtol: the residual check needs |F - F_prop|/F_prop < 1e-6
    return brentq(excess, 0.0, hi, xtol=1e-6, rtol=1e-14, maxiter=200)


@dataclass(frozen=True)
class FeasibilityRow:
    """One altitude sample of a sweep. ``epsilon_min`` and ``session_time``
    are None above the zenith-feasibility ceiling."""

    h: float
    rho: float
    velocity: float
    drag: float
    thrust_margin: float
    epsilon_min: float | None
    session_time: float | None

    @property
    def latency_feasible(self) -> bool:
        return self.session_time is not None

    @property
    def feasible(self) -> bool:
        """Within the latency budget and sustainable by the thruster."""
        return self.latency_feasible and self.thrust_margin >= 0


def _check_grid(h_grid, h_uav: float) -> np.ndarray:
    grid = np.asarray(h_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise DomainError("altitude grid must be a non-empty 1-d sequence")
    if np.any(np.diff(grid) <= 0):
        raise DomainError("altitude grid must be strictly increasing")
    if grid[0] <= h_uav:
        raise DomainError(f"grid altitudes must exceed h_uav = {h_uav} m")
    return grid


def feasibility_sweep(
    planet: PlanetProfile,
    spec: SpacecraftSpec,
    budget: LatencyBudget,
    h_grid: Sequence[float],
    h_uav: float = 0.0,
) -> list[FeasibilityRow]:
    """Evaluate density, speed, drag and the session window on every grid altitude."""
    grid = _check_grid(h_grid, h_uav)
    rows = []
    for h in grid:
        h = float(h)
        drag = drag_force(planet, spec, h)
        try:
            link = session_time(planet, h, h_uav, budget.d_max)
            eps, ts = link.epsilon, link.session_time
        except LatencyInfeasibleError:
            eps = ts = None
        rows.append(
            FeasibilityRow(
                h=h,
                rho=atmospheric_density(planet, h),
                velocity=circular_velocity(planet, h),
                drag=drag,
                thrust_margin=spec.thrust - drag,
                epsilon_min=eps,
                session_time=ts,
            )
        )
    return rows


@dataclass(frozen=True)
class ParetoPoint:
    """Normalized session time and drag of one feasible row.

    ``knee_error`` is the weighted forward change to the next row; None
    for the highest altitude.
    """

    h: float
    session_time_norm: float
    drag_norm: float
    knee_error: float | None


@dataclass(frozen=True)
class KneeResult:
    h_opt: float
    error: float
    index: int
    row: FeasibilityRow
    points: list[ParetoPoint]
    rows: list[FeasibilityRow]


def _minmax(x: np.ndarray) -> np.ndarray:
    span = x.max() - x.min()
    if span == 0:
        return np.zeros_like(x)
    return (x - x.min()) / span


def knee_errors(session_times, drags, weights=(1.0, 1.0)) -> np.ndarray:
    """Weighted sum of absolute forward differences of min-max normalized columns."""
    ts = _minmax(np.asarray(session_times, dtype=float))
    fd = _minmax(np.asarray(drags, dtype=float))
    return weights[0] * np.abs(np.diff(ts)) + weights[1] * np.abs(np.diff(fd))


TIE_TOLERANCE = 1e-12


def _argmin_low(errors: np.ndarray) -> int:
    # values within rounding noise of the minimum count as ties
    return int(np.flatnonzero(errors <= errors.min() + TIE_TOLERANCE)[0])


def knee_index(session_times, drags, weights=(1.0, 1.0)) -> int:
    """Index minimizing :func:`knee_errors`; ties go to the lowest index."""
    return _argmin_low(knee_errors(session_times, drags, weights))


def knee_altitude(rows: Iterable[FeasibilityRow], weights=(1.0, 1.0)) -> KneeResult:
    """Pick the knee of the drag/session-time front over the feasible rows.

    Rows must come from an ascending, uniformly spaced grid. Only rows that
    are both latency-feasible and thrust-sustainable take part.
    """
    feasible = [r for r in rows if r.feasible]
    if len(feasible) < 3:
        raise DomainError(f"knee needs at least 3 feasible rows, got {len(feasible)}")
    h = np.array([r.h for r in feasible])
    steps = np.diff(h)
    if np.any(steps <= 0) or np.ptp(steps) > 1e-6 * steps.mean():
        raise DomainError("knee needs feasible rows on an ascending uniform grid")
    if any(w < 0 for w in weights) or not any(w > 0 for w in weights):
        raise DomainError(f"knee weights must be non-negative and not all zero, got {weights!r}")

    ts = np.array([r.session_time for r in feasible])
    fd = np.array([r.drag for r in feasible])
    errors = knee_errors(ts, fd, weights)
    i = _argmin_low(errors)
    ts_n, fd_n = _minmax(ts), _minmax(fd)
    points = [
        ParetoPoint(
            h=float(h[k]),
            session_time_norm=float(ts_n[k]),
            drag_norm=float(fd_n[k]),
            knee_error=float(errors[k]) if k < len(errors) else None,
        )
        for k in range(len(feasible))
    ]
    return KneeResult(
        h_opt=float(h[i]),
        error=float(errors[i]),
        index=i,
        row=feasible[i],
        points=points,
        rows=feasible,
    )


@dataclass(frozen=True)
class EarthComparison:
    form_factor: str
    mars_min_altitude: float
    earth_min_altitude: float
    reference_earth_km: float | None

    @property
    def delta_km(self) -> float | None:
        """Model minus reference Earth altitude, km."""
        if self.reference_earth_km is None:
            return None
        return self.earth_min_altitude / 1e3 - self.reference_earth_km


def earth_comparison(
    specs: Iterable[SpacecraftSpec],
    mars: PlanetProfile = MARS,
    earth: PlanetProfile = EARTH,
) -> list[EarthComparison]:
    """Minimum sustainable altitude of each spacecraft on Mars and on Earth."""
    return [
        EarthComparison(
            form_factor=spec.form_factor,
            mars_min_altitude=min_sustainable_altitude(mars, spec),
            earth_min_altitude=min_sustainable_altitude(earth, spec),
            reference_earth_km=REFERENCE_EARTH_MIN_ALTITUDE_KM.get(spec.form_factor),
        )
        for spec in specs
    ]
