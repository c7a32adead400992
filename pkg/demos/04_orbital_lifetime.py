"""
Unpowered orbital decay
=======================

Without thrust, drag shrinks the orbital period until the CubeSat reaches
the surface. Integrate the decay from several starting altitudes and find
the altitude that buys a two-year lifetime.
"""

from marscran import CUBESAT_1U, CUBESAT_6U, CUBESAT_12U, MARS, SECONDS_PER_YEAR
from marscran import altitude_for_lifetime, orbital_lifetime


def pretty(seconds):
    if seconds < 3600:
        return f"{seconds:.0f} s"
    if seconds < SECONDS_PER_YEAR:
        return f"{seconds / 86400:.2f} days"
    return f"{seconds / SECONDS_PER_YEAR:.1f} years"


for h0 in (75e3, 150e3, 175e3, 250e3):
    cells = [pretty(orbital_lifetime(MARS, s, h0).lifetime) for s in (CUBESAT_1U, CUBESAT_6U, CUBESAT_12U)]
    print(f"{h0 / 1e3:5.0f} km  1U {cells[0]:>12}  6U {cells[1]:>12}  12U {cells[2]:>12}")

###############################################################################
# The trajectory of one run: altitude and period against time.
run = orbital_lifetime(MARS, CUBESAT_12U, 150e3)
for t, h, p in list(zip(run.times, run.altitudes, run.periods))[::20]:
    print(f"t = {t / 3600:7.2f} h  h = {h / 1e3:6.1f} km  P = {p:7.1f} s")

###############################################################################
h2 = altitude_for_lifetime(MARS, CUBESAT_12U, 2 * SECONDS_PER_YEAR)
print(f"two-year lifetime from {h2 / 1e3:.1f} km")
