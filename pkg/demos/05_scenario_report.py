"""
A full scenario report
======================

Load a scenario from text, run every stage and write CSV tables plus a
metadata file. The same runs are available as ``marscran report``.
"""

import tempfile
from pathlib import Path

from marscran import emit_tables, load_scenario, run_scenario

scenario = """
sats = 1u, 6u, 12u
lifetime_altitudes_km = 75, 150, 175, 225, 250

[spacecraft.12u]
drag_coefficient = 2.2
"""

cfg = load_scenario(text=scenario)
bundle = run_scenario(cfg)
for name, table in bundle.tables.items():
    print(f"{name:18} {len(table.rows):5d} rows  {', '.join(table.columns)}")

out = Path(tempfile.mkdtemp()) / "report"
paths = emit_tables(bundle, "csv", out)
print(f"wrote {len(paths)} files to {out}")
print((out / "knee.csv").read_text())
