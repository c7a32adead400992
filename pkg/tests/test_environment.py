import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from marscran import (
    CUBESAT_1U,
    CUBESAT_6U,
    CUBESAT_12U,
    EARTH,
    MARS,
    MARS_LOW_DENSITY,
    DomainError,
    PlanetProfile,
    SpacecraftSpec,
    atmospheric_density,
    cross_section,
)

altitudes = st.floats(min_value=0, max_value=500e3, allow_nan=False)


def test_builtin_profiles():
    assert (MARS.gravitational_constant, MARS.mass, MARS.radius, MARS.scale_height) == (
        6.67e-11, 6.39e23, 3389.5e3, 11.1e3)
    assert MARS.rho0 == 1e-3
    assert MARS_LOW_DENSITY.rho0 == 1e-4
    assert (EARTH.scale_height, EARTH.rho0) == (8.5e3, 1.217)


def test_catalog_matches_table():
    assert CUBESAT_1U.dimensions == (0.1, 0.1, 0.1) and CUBESAT_1U.mass == 1.33
    assert CUBESAT_1U.thrust == pytest.approx(1e-3)
    assert CUBESAT_6U.dimensions == (0.2, 0.3, 0.1) and CUBESAT_6U.mass == 13.5
    assert CUBESAT_6U.thrust == pytest.approx(0.04)
    assert CUBESAT_12U.dimensions == (0.2, 0.3, 0.2) and CUBESAT_12U.mass == 25.0
    assert CUBESAT_12U.thrust == 44.4
    assert {s.drag_coefficient for s in (CUBESAT_1U, CUBESAT_6U, CUBESAT_12U)} == {2.0}


def test_density_examples():
    assert atmospheric_density(MARS, 0.0) == pytest.approx(1e-3, rel=1e-15)
    assert atmospheric_density(MARS, 11.1e3) == pytest.approx(1e-3 / math.e, rel=1e-12)
    # mpmath, 30 digits
    assert atmospheric_density(MARS, 67.1e3) == pytest.approx(2.36957409908e-6, rel=1e-10)


def test_density_accepts_arrays():
    h = np.array([0.0, 11.1e3, 22.2e3])
    np.testing.assert_allclose(atmospheric_density(MARS, h), 1e-3 * np.exp(-np.arange(3)), rtol=1e-12)


@pytest.mark.parametrize("h", [-1.0, -1e-9, float("nan"), [0.0, -5.0]])
def test_density_rejects_negative(h):
    with pytest.raises(DomainError):
        atmospheric_density(MARS, h)


@given(altitudes, altitudes)
def test_density_monotone_and_log_linear(h1, h2):
    lo, hi = sorted((h1, h2))
    assume(hi - lo > 1e-6 * max(hi, 1.0))
    r_lo, r_hi = atmospheric_density(MARS, lo), atmospheric_density(MARS, hi)
    assert r_hi < r_lo
    assert math.log(r_lo) - math.log(r_hi) == pytest.approx((hi - lo) / MARS.scale_height, rel=1e-12, abs=1e-12)


@pytest.mark.parametrize("spec, area", [(CUBESAT_1U, 0.015), (CUBESAT_6U, 0.055), (CUBESAT_12U, 0.080)])
def test_cross_section_catalog(spec, area):
    assert cross_section(spec) == pytest.approx(area, rel=1e-12)


sides = st.floats(min_value=1e-3, max_value=10.0)


@given(sides)
def test_cube_cross_section(s):
    assert cross_section(SpacecraftSpec("c", (s, s, s), 1.0, 1.0)) == pytest.approx(1.5 * s * s, rel=1e-12)


@given(sides, sides, sides)
def test_cross_section_permutation_invariant(a, b, c):
    ref = cross_section(SpacecraftSpec("x", (a, b, c), 1.0, 1.0))
    for dims in ((b, c, a), (c, a, b), (b, a, c)):
        assert cross_section(SpacecraftSpec("x", dims, 1.0, 1.0)) == pytest.approx(ref, rel=1e-12)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(dimensions=(0.1, 0.1, 0.0), mass=1.0, thrust=1.0),
        dict(dimensions=(0.1, 0.1, 0.1), mass=-1.0, thrust=1.0),
        dict(dimensions=(0.1, 0.1, 0.1), mass=1.0, thrust=0.0),
        dict(dimensions=(0.1, 0.1, 0.1), mass=1.0, thrust=1.0, drag_coefficient=0.0),
        dict(dimensions=(0.1, 0.1), mass=1.0, thrust=1.0),
    ],
)
def test_spacecraft_validation(kwargs):
    with pytest.raises(DomainError):
        SpacecraftSpec("bad", **kwargs)


def test_planet_validation():
    with pytest.raises(DomainError):
        PlanetProfile("x", 6.67e-11, 1e23, 1e6, 0.0, 1e-3)
