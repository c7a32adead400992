"""
Slant range, elevation and session time
=======================================

A 250 us one-way budget caps the UAV-to-CubeSat line of sight at c*tau.
For each orbit altitude this fixes the lowest usable elevation and the
time the CubeSat needs to fly from zenith to loss of signal.
"""

import math

import numpy as np

from marscran import MARS, LatencyBudget, min_elevation, session_time, slant_range, zenith_latency

budget = LatencyBudget(250e-6)
print(f"d_max = {budget.d_max:.2f} m")

###############################################################################
# Slant range surface: rows are altitudes, columns elevation angles.
eps = np.radians([0, 15, 30, 45, 60, 75, 90])
print("h_km  " + "  ".join(f"{math.degrees(e):5.0f}deg" for e in eps))
for h in (35e3, 45e3, 55e3, 65e3, 74e3):
    d = [slant_range(MARS, h, 0.0, e) / 1e3 for e in eps]
    print(f"{h / 1e3:4.0f}  " + "  ".join(f"{x:8.1f}" for x in d))

###############################################################################
# Minimum elevation and session time across the latency-feasible band.
for h in np.arange(35e3, 75e3, 5e3):
    g = session_time(MARS, h, 0.0, budget.d_max)
    print(f"h = {h / 1e3:4.0f} km  eps_min = {math.degrees(g.epsilon):5.1f} deg  "
          f"t_s = {g.session_time:5.2f} s")

###############################################################################
# Just below c*tau only a zenith pass fits, and the window closes.
edge = budget.d_max - 1.0
print(f"eps_min at {edge:.0f} m: {math.degrees(min_elevation(MARS, edge, 0.0, budget.d_max)):.2f} deg")

###############################################################################
# A higher, longer-lived orbit at 225 km costs three times the delay.
print(f"zenith latency at 225 km: {zenith_latency(225e3) * 1e3:.3f} ms")
