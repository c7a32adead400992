"""UAV-to-CubeSat link geometry under a one-way latency budget.

Elevation angles are in radians. The UAV hovers at ``h_uav`` above the
surface, the CubeSat sits on a circular orbit at ``h_cs``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .environment import PlanetProfile
from .errors import DomainError, LatencyInfeasibleError
from .orbits import circular_velocity

SPEED_OF_LIGHT = 299_792_458.0  # m/s
TAU_IDEAL = 250e-6  # s, one-way budget for the lower-PHY splits


@dataclass(frozen=True)
class LatencyBudget:
    """One-way propagation budget ``tau`` and the slant range it allows."""

    tau: float = TAU_IDEAL
    c: float = SPEED_OF_LIGHT

    def __post_init__(self):
        if not self.tau > 0:
            raise DomainError(f"tau must be > 0 s, got {self.tau!r}")

    @property
    def d_max(self) -> float:
        return self.c * self.tau

    @classmethod
    def from_range(cls, d_max: float, c: float = SPEED_OF_LIGHT) -> LatencyBudget:
        """Budget whose maximum slant range is exactly ``d_max`` metres."""
        return cls(tau=d_max / c, c=c)


@dataclass(frozen=True)
class LinkGeometry:
    """One zenith-to-loss-of-signal pass evaluated at its budget edge.

    ``epsilon`` is the minimum elevation, ``slant_range`` the LOS length at
    that elevation, ``theta_max`` the orbit angle swept from zenith,
    ``arc_length`` the distance flown and ``session_time`` its duration.
    """

    h_cs: float
    h_uav: float
    epsilon: float
    slant_range: float
    theta_max: float
    arc_length: float
    session_time: float


def max_slant_range(tau: float) -> float:
    """Distance light covers in ``tau`` seconds."""
    if not tau > 0:
        raise DomainError(f"tau must be > 0 s, got {tau!r}")
    return SPEED_OF_LIGHT * tau


def _check_pair(h_cs: float, h_uav: float):
    if not h_uav >= 0:
        raise DomainError(f"h_uav must be >= 0 m, got {h_uav!r}")
    if not h_cs > h_uav:
        raise DomainError(f"h_cs ({h_cs!r} m) must exceed h_uav ({h_uav!r} m)")


def slant_range(planet: PlanetProfile, h_cs: float, h_uav: float, epsilon: float) -> float:
    """Line-of-sight distance at elevation ``epsilon`` from the law of cosines."""
    _check_pair(h_cs, h_uav)
    if not 0 <= epsilon <= math.pi / 2:
        raise DomainError(f"epsilon must lie in [0, pi/2], got {epsilon!r}")
    a = planet.radius + h_uav
    b = planet.radius + h_cs
    return (math.sqrt((b / a) ** 2 - math.cos(epsilon) ** 2) - math.sin(epsilon)) * a


def min_elevation(planet: PlanetProfile, h_cs: float, h_uav: float, d_max: float) -> float:
    """Lowest elevation at which the slant range stays within ``d_max``.

    Closed form of the law of cosines solved for sin(epsilon). Returns 0
    when the whole pass down to the horizon fits the budget.

    Raises LatencyInfeasibleError if the zenith distance exceeds ``d_max``.
    """
    _check_pair(h_cs, h_uav)
    if not d_max > 0:
        raise DomainError(f"d_max must be > 0 m, got {d_max!r}")
    zenith = h_cs - h_uav
    if zenith > d_max:
        raise LatencyInfeasibleError(
            f"latency-infeasible altitude: zenith distance {zenith:.3f} m exceeds "
            f"d_max {d_max:.3f} m",
            zenith_distance=zenith,
            max_range=d_max,
        )
    a = planet.radius + h_uav
    b = planet.radius + h_cs
    # (b - a)(b + a) keeps precision when b ~ a
    s = ((b - a) * (b + a) - d_max**2) / (2 * a * d_max)
    return math.asin(min(max(s, 0.0), 1.0))


def session_time(planet: PlanetProfile, h_cs: float, h_uav: float, d_max: float) -> LinkGeometry:
    """Session window from zenith down to the minimum elevation."""
    eps = min_elevation(planet, h_cs, h_uav, d_max)
    r = planet.radius + h_cs
    # at eps == 0 the horizon is reached before d_max
    d = d_max if eps > 0 else slant_range(planet, h_cs, h_uav, 0.0)
    theta = math.asin(min(d * math.cos(eps) / r, 1.0))
    arc = theta * r
    return LinkGeometry(
        h_cs=h_cs,
        h_uav=h_uav,
        epsilon=eps,
        slant_range=d,
        theta_max=theta,
        arc_length=arc,
        session_time=arc / circular_velocity(planet, h_cs),
    )


def zenith_latency(h_cs: float, h_uav: float = 0.0) -> float:
    """One-way propagation delay with the CubeSat overhead, in seconds."""
    _check_pair(h_cs, h_uav)
    return (h_cs - h_uav) / SPEED_OF_LIGHT
