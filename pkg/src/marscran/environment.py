"""Planet and spacecraft models: exponential atmosphere and CubeSat catalog.

All quantities are SI (m, kg, s, N). Functions accept scalars or numpy
arrays and return the same kind.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import DomainError

GRAVITATIONAL_CONSTANT = 6.67e-11  # m^3 kg^-1 s^-2, three-digit value used throughout

MARS_RHO0_LOW = 1e-4  # kg/m^3
MARS_RHO0_HIGH = 1e-3  # kg/m^3


@dataclass(frozen=True)
class PlanetProfile:
    """Gravity and exponential-atmosphere parameters of one body.

    Attributes
    ----------
    name : str
    gravitational_constant : float
        G in m^3 kg^-1 s^-2.
    mass : float
        kg.
    radius : float
        Mean radius, m.
    scale_height : float
        Atmospheric e-folding height, m.
    rho0 : float
        Surface reference density, kg/m^3.
    """

    name: str
    gravitational_constant: float
    mass: float
    radius: float
    scale_height: float
    rho0: float

    def __post_init__(self):
        for field in ("gravitational_constant", "mass", "radius", "scale_height", "rho0"):
            value = getattr(self, field)
            if not np.isfinite(value) or value <= 0:
                raise DomainError(f"{self.name}: {field} must be positive, got {value!r}")

    @property
    def mu(self) -> float:
        """Gravitational parameter G*M (m^3/s^2)."""
        return self.gravitational_constant * self.mass

    def with_rho0(self, rho0: float) -> PlanetProfile:
        return replace(self, rho0=rho0)


MARS = PlanetProfile(
    name="mars",
    gravitational_constant=GRAVITATIONAL_CONSTANT,
    mass=6.39e23,
    radius=3389.5e3,
    scale_height=11.1e3,
    rho0=MARS_RHO0_HIGH,
)

MARS_LOW_DENSITY = MARS.with_rho0(MARS_RHO0_LOW)

# Earth mass and radius are standard reference values; the atmosphere
# parameters are the ones used for the Mars/Earth comparison.
EARTH = PlanetProfile(
    name="earth",
    gravitational_constant=GRAVITATIONAL_CONSTANT,
    mass=5.972e24,
    radius=6.371e6,
    scale_height=8.5e3,
    rho0=1.217,
)

PLANETS: dict[str, PlanetProfile] = {"mars": MARS, "earth": EARTH}


@dataclass(frozen=True)
class SpacecraftSpec:
    """Parallelepiped CubeSat with a single sustained-thrust figure.

    ``dimensions`` are the three edge lengths in metres, ``thrust`` the
    force available to counter drag in newtons.
    """

    form_factor: str
    dimensions: tuple[float, float, float]
    mass: float
    thrust: float
    drag_coefficient: float = 2.0

    def __post_init__(self):
        dims = tuple(float(d) for d in self.dimensions)
        if len(dims) != 3:
            raise DomainError(f"{self.form_factor}: need three dimensions, got {len(dims)}")
        object.__setattr__(self, "dimensions", dims)
        values = dims + (self.mass, self.thrust, self.drag_coefficient)
        if not all(np.isfinite(v) and v > 0 for v in values):
            raise DomainError(f"{self.form_factor}: dimensions, mass, C_D and thrust must be positive")

    @property
    def ballistic_factor(self) -> float:
        """A*C_D/m in m^2/kg."""
        return cross_section(self) * self.drag_coefficient / self.mass


CUBESAT_1U = SpacecraftSpec("1U", (0.10, 0.10, 0.10), mass=1.33, thrust=1e-3)
CUBESAT_6U = SpacecraftSpec("6U", (0.20, 0.30, 0.10), mass=13.5, thrust=4 * 10e-3)
CUBESAT_12U = SpacecraftSpec("12U", (0.20, 0.30, 0.20), mass=25.0, thrust=44.4)

SPACECRAFT: dict[str, SpacecraftSpec] = {
    "1u": CUBESAT_1U,
    "6u": CUBESAT_6U,
    "12u": CUBESAT_12U,
}


def _out(x: np.ndarray):
    return float(x) if np.ndim(x) == 0 else x


def check_altitude(h, name: str = "altitude") -> np.ndarray:
    """Return ``h`` as a float array, raising DomainError for negative or NaN values."""
    arr = np.asarray(h, dtype=float)
    if np.any(np.isnan(arr)) or np.any(arr < 0):
        raise DomainError(f"{name} must be >= 0 m, got {h!r}")
    return arr


def atmospheric_density(planet: PlanetProfile, h):
    """Density rho0 * exp(-h/H) in kg/m^3 at altitude ``h`` (m)."""
    h = check_altitude(h)
    return _out(planet.rho0 * np.exp(-h / planet.scale_height))


def cross_section(spec: SpacecraftSpec) -> float:
    """Mean projected area: half the sum of the three distinct face areas.

    Solar arrays are not included.
    """
    a, b, c = spec.dimensions
    return 0.5 * (a * b + b * c + a * c)
