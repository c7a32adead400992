"""Feasibility calculations for a Martian UAV/CubeSat C-RAN.

Altitude limits from thrust versus drag, latency-bounded link geometry and
session times, knee selection on the drag/session-time front, and
drag-driven orbital lifetimes.
"""

__version__ = "0.1.0"

from .environment import (
    CUBESAT_1U,
    CUBESAT_6U,
    CUBESAT_12U,
    EARTH,
    MARS,
    MARS_LOW_DENSITY,
    PLANETS,
    SPACECRAFT,
    PlanetProfile,
    SpacecraftSpec,
    atmospheric_density,
    cross_section,
)
from .errors import (
    CeilingExceededError,
    ConfigError,
    DomainError,
    LatencyInfeasibleError,
    MarsCranError,
    NumericalError,
)
from .feasibility import (
    FeasibilityRow,
    KneeResult,
    ParetoPoint,
    earth_comparison,
    feasibility_sweep,
    knee_altitude,
    min_sustainable_altitude,
)
from .geometry import (
    SPEED_OF_LIGHT,
    LatencyBudget,
    LinkGeometry,
    max_slant_range,
    min_elevation,
    session_time,
    slant_range,
    zenith_latency,
)
from .orbits import (
    SECONDS_PER_DAY,
    SECONDS_PER_YEAR,
    LifetimeResult,
    OrbitState,
    altitude_for_lifetime,
    circular_velocity,
    drag_force,
    orbital_lifetime,
    orbital_period,
    period_decay_rate,
)
from .scenario import ReportBundle, ScenarioConfig, emit_tables, load_scenario, run_scenario
