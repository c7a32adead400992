import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import solve_ivp

from marscran import (
    CUBESAT_1U,
    CUBESAT_6U,
    CUBESAT_12U,
    MARS,
    SECONDS_PER_DAY,
    SECONDS_PER_YEAR,
    CeilingExceededError,
    DomainError,
    OrbitState,
    SpacecraftSpec,
    altitude_for_lifetime,
    atmospheric_density,
    circular_velocity,
    drag_force,
    orbital_lifetime,
    orbital_period,
    period_decay_rate,
)
from marscran.orbits import altitude_from_period

GM = 6.67e-11 * 6.39e23
R = 3389.5e3


def test_velocity_examples():
    assert circular_velocity(MARS, 75e3) == pytest.approx(math.sqrt(GM / (R + 75e3)), rel=1e-12)
    assert circular_velocity(MARS, 75e3) == pytest.approx(3507, abs=1)
    assert circular_velocity(MARS, 0.0) == pytest.approx(math.sqrt(GM / R), rel=1e-12)
    for h in np.arange(35e3, 75.1e3, 5e3):
        assert 3.45e3 < circular_velocity(MARS, h) < 3.55e3


def test_velocity_decreasing():
    v = circular_velocity(MARS, np.linspace(0, 500e3, 101))
    assert np.all(np.diff(v) < 0)


def test_drag_examples():
    assert drag_force(MARS, CUBESAT_12U, 67.1e3) == pytest.approx(2.34, abs=0.01)
    # 1U at 134.5 km sits on its 1 mN thrust line
    assert drag_force(MARS, CUBESAT_1U, 134.5e3) == pytest.approx(0.99e-3, rel=0.01)
    big = drag_force(MARS, CUBESAT_12U, np.array([1e6, 2e6, 5e6]))
    assert np.all(np.diff(big) < 0) and big[-1] < 1e-30


def test_drag_decreasing_on_grid():
    h = np.arange(0, 300e3 + 1, 100.0)
    for spec in (CUBESAT_1U, CUBESAT_6U, CUBESAT_12U):
        assert np.all(np.diff(drag_force(MARS, spec, h)) < 0)


def test_period_examples():
    assert orbital_period(MARS, 75e3) == pytest.approx(6206, abs=1)
    assert orbital_period(MARS, 0.0) == pytest.approx(2 * math.pi * math.sqrt(R**3 / GM), rel=1e-12)
    assert orbital_period(MARS, 0.0) == pytest.approx(6005.8, abs=0.1)


@given(st.floats(min_value=0, max_value=2e6))
def test_period_velocity_identity(h):
    assert orbital_period(MARS, h) * circular_velocity(MARS, h) == pytest.approx(
        2 * math.pi * (R + h), rel=1e-9)
    assert altitude_from_period(MARS, orbital_period(MARS, h)) == pytest.approx(h, abs=1e-6)


def test_orbit_state():
    s = OrbitState.at(MARS, 100e3)
    assert s.radius == R + 100e3
    assert s.period * s.velocity == pytest.approx(2 * math.pi * s.radius, rel=1e-9)


def test_decay_rate_examples():
    assert period_decay_rate(MARS, CUBESAT_12U, 75e3) == pytest.approx(-0.244, abs=0.001)
    assert 0 < -period_decay_rate(MARS, CUBESAT_12U, 250e3) < 1e-7
    heavy = SpacecraftSpec("heavy", CUBESAT_12U.dimensions, 2 * CUBESAT_12U.mass, CUBESAT_12U.thrust)
    assert period_decay_rate(MARS, heavy, 100e3) == pytest.approx(
        0.5 * period_decay_rate(MARS, CUBESAT_12U, 100e3), rel=1e-12)


def test_decay_rate_magnitude_decreasing():
    rates = period_decay_rate(MARS, CUBESAT_12U, np.linspace(0, 400e3, 81))
    assert np.all(rates < 0) and np.all(np.diff(-rates) < 0)


@pytest.mark.parametrize("fn", [circular_velocity, orbital_period])
def test_negative_altitude_rejected(fn):
    with pytest.raises(DomainError):
        fn(MARS, -1.0)
    with pytest.raises(DomainError):
        drag_force(MARS, CUBESAT_12U, -1.0)
    with pytest.raises(DomainError):
        period_decay_rate(MARS, CUBESAT_12U, -1.0)


def _scipy_lifetime(spec, h0):
    """Independent route: LSODA on dP/dt with a surface event."""
    k = spec.ballistic_factor

    def h_of(p):
        return np.cbrt(GM * (p / (2 * math.pi)) ** 2) - R

    def rhs(t, y):
        h = h_of(y[0])
        return [-3 * math.pi * 1e-3 * math.exp(-h / 11.1e3) * (R + h) * k]

    def surface(t, y):
        return h_of(y[0])

    surface.terminal = True
    p0 = 2 * math.pi * math.sqrt((R + h0) ** 3 / GM)
    sol = solve_ivp(rhs, (0, 200 * SECONDS_PER_YEAR), [p0], method="LSODA", events=surface,
                    rtol=1e-10, atol=1e-9)
    return sol.t_events[0][0]


@pytest.mark.parametrize(
    "spec, h0", [(CUBESAT_12U, 75e3), (CUBESAT_12U, 150e3), (CUBESAT_1U, 175e3), (CUBESAT_12U, 250e3)]
)
def test_lifetime_matches_independent_integrator(spec, h0):
    ours = orbital_lifetime(MARS, spec, h0)
    assert ours.terminal_reason == "surface_reached"
    assert ours.lifetime == pytest.approx(_scipy_lifetime(spec, h0), rel=2e-3)


@pytest.mark.parametrize("spec", [CUBESAT_1U, CUBESAT_6U, CUBESAT_12U])
@pytest.mark.parametrize("h0", [75e3, 150e3, 175e3, 250e3])
def test_trajectory_invariants(spec, h0):
    run = orbital_lifetime(MARS, spec, h0)
    t, h, p = run.times, run.altitudes, run.periods
    assert t[0] == 0 and h[0] == h0
    assert np.all(np.diff(t) > 0)
    assert np.all(np.diff(h) < 0)
    assert np.all(np.diff(p) < 0)
    assert run.lifetime == t[-1] and h[-1] == 0
    v = np.sqrt(GM / (R + h))
    np.testing.assert_allclose(p * v, 2 * math.pi * (R + h), rtol=1e-6)
    # central differences against the decay rate
    fd = (p[2:] - p[:-2]) / (t[2:] - t[:-2])
    rate = period_decay_rate(MARS, spec, h[1:-1])
    np.testing.assert_allclose(fd, rate, rtol=0.01)
    # step caps
    assert np.all(-np.diff(h) <= 0.1 * MARS.scale_height * (1 + 1e-9))
    assert np.all(-np.diff(p) <= 1e-3 * p[:-1] * (1 + 1e-9))


def test_half_step_convergence():
    coarse = orbital_lifetime(MARS, CUBESAT_12U, 150e3)
    fine = orbital_lifetime(MARS, CUBESAT_12U, 150e3, step_scale=0.5)
    assert abs(fine.lifetime / coarse.lifetime - 1) < 0.005


def test_lifetime_monotone_in_altitude():
    lives = [orbital_lifetime(MARS, CUBESAT_12U, h).lifetime for h in np.arange(35e3, 251e3, 5e3)]
    assert np.all(np.diff(lives) > 0)


@settings(max_examples=20, deadline=None)
@given(st.floats(min_value=1.01, max_value=20.0), st.floats(min_value=40e3, max_value=200e3))
def test_lifetime_monotone_in_mass(k, h0):
    heavy = SpacecraftSpec("heavy", CUBESAT_12U.dimensions, k * CUBESAT_12U.mass, CUBESAT_12U.thrust)
    assert orbital_lifetime(MARS, heavy, h0).lifetime >= orbital_lifetime(MARS, CUBESAT_12U, h0).lifetime


def test_horizon_exceeded():
    run = orbital_lifetime(MARS, CUBESAT_12U, 250e3, horizon=SECONDS_PER_DAY)
    assert run.terminal_reason == "horizon_exceeded"
    assert run.lifetime == SECONDS_PER_DAY == run.times[-1]
    assert run.altitudes[-1] > 249e3


def test_sample_thinning():
    run = orbital_lifetime(MARS, CUBESAT_12U, 150e3, step_scale=0.01, max_samples=500)
    assert run.steps > 500 and len(run.times) == 500
    assert run.times[-1] == run.lifetime and run.altitudes[-1] == 0


@pytest.mark.parametrize("h0, horizon", [(0.0, 1.0), (-5.0, 1.0), (100e3, 0.0)])
def test_lifetime_domain(h0, horizon):
    with pytest.raises(DomainError):
        orbital_lifetime(MARS, CUBESAT_12U, h0, horizon)


def test_altitude_for_lifetime_bracket():
    target = 60.0
    h = altitude_for_lifetime(MARS, CUBESAT_12U, target)
    assert h <= 75e3
    assert orbital_lifetime(MARS, CUBESAT_12U, h).lifetime >= target
    assert orbital_lifetime(MARS, CUBESAT_12U, h - 100.0).lifetime < target


def test_altitude_for_lifetime_monotone():
    targets = [60.0, SECONDS_PER_DAY, 30 * SECONDS_PER_DAY, SECONDS_PER_YEAR]
    hs = [altitude_for_lifetime(MARS, CUBESAT_12U, t) for t in targets]
    assert hs == sorted(hs)


def test_altitude_for_lifetime_ceiling():
    with pytest.raises(CeilingExceededError):
        altitude_for_lifetime(MARS, CUBESAT_12U, 50 * SECONDS_PER_YEAR, ceiling=150e3)
    with pytest.raises(DomainError):
        altitude_for_lifetime(MARS, CUBESAT_12U, 0.0)
