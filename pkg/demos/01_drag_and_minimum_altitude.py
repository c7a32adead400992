"""
Drag versus thrust on Mars
==========================

Evaluate the exponential Martian atmosphere, the drag it exerts on the
three catalog CubeSats, and the altitude below which each thruster can no
longer hold the orbit. The same numbers for Earth show why very low
orbits are a Martian opportunity.
"""

import numpy as np

from marscran import CUBESAT_1U, CUBESAT_6U, CUBESAT_12U, EARTH, MARS, MARS_LOW_DENSITY
from marscran import atmospheric_density, cross_section, drag_force, earth_comparison
from marscran import min_sustainable_altitude

###############################################################################
# Density falls by a factor e every 11.1 km.
h = np.arange(0, 201e3, 25e3)
for hi, rho in zip(h, atmospheric_density(MARS, h)):
    print(f"{hi / 1e3:6.0f} km  rho = {rho:.3e} kg/m^3")

###############################################################################
# Mean cross-sections and drag at a few altitudes.
for spec in (CUBESAT_1U, CUBESAT_6U, CUBESAT_12U):
    f = drag_force(MARS, spec, np.array([35e3, 67.1e3, 108e3, 134.5e3]))
    print(f"{spec.form_factor:>3}: A = {cross_section(spec):.3f} m^2, F_drag =", np.array2string(f, precision=4))

###############################################################################
# Where drag meets thrust, for both reference densities.
for planet in (MARS, MARS_LOW_DENSITY):
    print(f"rho0 = {planet.rho0:g}")
    for spec in (CUBESAT_1U, CUBESAT_6U, CUBESAT_12U):
        h_min = min_sustainable_altitude(planet, spec)
        print(f"  {spec.form_factor:>3} ({spec.thrust:g} N): h_min = {h_min / 1e3:6.1f} km")

###############################################################################
# Earth needs much higher orbits for the same hardware.
for row in earth_comparison((CUBESAT_1U, CUBESAT_6U, CUBESAT_12U), earth=EARTH):
    print(f"{row.form_factor:>3}: Mars {row.mars_min_altitude / 1e3:6.1f} km   "
          f"Earth {row.earth_min_altitude / 1e3:6.1f} km   (published {row.reference_earth_km} km)")
