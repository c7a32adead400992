"""
Trading drag against session time
=================================

Lower orbits give longer sessions but more drag. Sweep the deployable band
for the 12U CubeSat, normalize both columns and pick the altitude where
their combined change per grid step is smallest.
"""

import numpy as np

from marscran import CUBESAT_12U, MARS, LatencyBudget, feasibility_sweep, knee_altitude

grid = np.round(np.arange(35.0, 75.0 + 1e-9, 0.1), 1) * 1e3
rows = feasibility_sweep(MARS, CUBESAT_12U, LatencyBudget(), grid)
print(f"{len(rows)} rows, {sum(r.feasible for r in rows)} feasible")

knee = knee_altitude(rows)
r = knee.row
print(f"knee at {knee.h_opt / 1e3:.1f} km: F_drag = {r.drag:.2f} N "
      f"({100 * r.drag / CUBESAT_12U.thrust:.1f} % of thrust), t_s = {r.session_time:.2f} s")

###############################################################################
# Uneven weights move the knee: favouring low drag pushes it up.
for w in [(1, 1), (1, 2), (1, 5), (2, 1)]:
    print(f"weights {w}: {knee_altitude(rows, weights=w).h_opt / 1e3:.1f} km")

###############################################################################
# Values at 67.1 km for reference.
(row,) = feasibility_sweep(MARS, CUBESAT_12U, LatencyBudget(), [67.1e3])
print(f"67.1 km: F_drag = {row.drag:.3f} N, t_s = {row.session_time:.2f} s")
