"""Scenario files, end-to-end runs and deterministic table output.

Scenario files are INI-like ``key = value`` text. Top-level keys (before
any section header, or under ``[scenario]``) configure the run; catalog
entries are overridden or added with ``[planet.<name>]`` and
``[spacecraft.<name>]`` sections::

    planet = mars
    rho0 = high          # low | high | kg/m^3; empty keeps the catalog value
    sats = 1u, 6u, 12u
    tau = 250e-6
    grid_lo_km = 35
    grid_hi_km = 75
    grid_step_km = 0.1

    [spacecraft.12u]
    mass_kg = 30

Boundary units are km, degrees and seconds; everything is converted to SI
on load.
"""

from __future__ import annotations

import configparser
import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Any, Callable, Mapping

import numpy as np

from . import __version__
from .environment import (
    MARS_RHO0_HIGH,
    MARS_RHO0_LOW,
    PLANETS,
    SPACECRAFT,
    PlanetProfile,
    SpacecraftSpec,
    cross_section,
)
from .errors import ConfigError, DomainError, MarsCranError
from .feasibility import (
    earth_comparison,
    feasibility_sweep,
    knee_altitude,
    min_sustainable_altitude,
)
from .geometry import LatencyBudget, SPEED_OF_LIGHT, slant_range, session_time, zenith_latency
from .orbits import SECONDS_PER_DAY, SECONDS_PER_YEAR, circular_velocity, orbital_lifetime

MAX_H_UAV = 10e3

SCENARIO_DEFAULTS: dict[str, str] = {
    "planet": "mars",
    "rho0": "",
    "sats": "12u",
    "tau": "250e-6",
    "d_max_km": "",
    "h_uav_km": "0",
    "grid_lo_km": "35",
    "grid_hi_km": "75",
    "grid_step_km": "0.1",
    "horizon_years": "100",
    "lifetime_altitudes_km": "75, 150, 175, 250",
    "knee_weights": "1, 1",
    "surface_h_step_km": "5",
    "surface_eps_step_deg": "5",
    "format": "csv",
    "out": "report",
}

PLANET_KEYS = {
    "gravitational_constant": ("gravitational_constant", 1.0),
    "mass_kg": ("mass", 1.0),
    "radius_km": ("radius", 1e3),
    "scale_height_km": ("scale_height", 1e3),
    "rho0": ("rho0", 1.0),
}

SPACECRAFT_KEYS = {"dimensions_m", "mass_kg", "drag_coefficient", "thrust_n"}

FORMATS = ("csv", "json")


@dataclass(frozen=True)
class ScenarioConfig:
    """Validated scenario, SI units throughout."""

    planet: PlanetProfile
    spacecraft: tuple[SpacecraftSpec, ...]
    budget: LatencyBudget
    h_uav: float
    grid: tuple[float, float, float]
    horizon: float
    lifetime_altitudes: tuple[float, ...]
    knee_weights: tuple[float, float] = (1.0, 1.0)
    surface_steps: tuple[float, float] = (5e3, math.radians(5))
    format: str = "csv"
    out: str = "report"
    rho0_label: str = "high"
    settings: Mapping[str, str] = field(default_factory=dict)

    @property
    def altitudes(self) -> np.ndarray:
        """Sweep grid in metres (rounded to the millimetre to avoid drift)."""
        lo, hi, step = self.grid
        n = int(math.floor((hi - lo) / step + 1e-9)) + 1
        return np.round(lo + step * np.arange(n), 3)


# ---------------------------------------------------------------- parsing


def _float(key: str, text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ConfigError("invalid_value", f"{key}: expected a number, got {text!r}", key) from None
    if not math.isfinite(value):
        raise ConfigError("invalid_value", f"{key}: must be finite, got {text!r}", key)
    return value


def _floats(key: str, text: str) -> tuple[float, ...]:
    return tuple(_float(key, part) for part in text.split(",") if part.strip())


def _require(cond: bool, key: str, message: str):
    if not cond:
        raise ConfigError("invalid_value", f"{key}: {message}", key)


def _parse_text(text: str) -> configparser.ConfigParser:
    parser = configparser.ConfigParser(
        interpolation=None, delimiters=("=",), comment_prefixes=("#", ";"), inline_comment_prefixes=("#",)
    )
    parser.optionxform = str.lower
    lines = text.splitlines()
    first = next((ln.strip() for ln in lines if ln.strip() and not ln.strip().startswith(("#", ";"))), "")
    if not first.startswith("["):
        text = "[scenario]\n" + text
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError("parse_error", f"cannot parse scenario: {exc}") from None
    return parser


def _planet_section(base: PlanetProfile | None, name: str, items: Mapping[str, str]) -> PlanetProfile:
    values = asdict(base) if base is not None else {"name": name}
    for key, text in items.items():
        if key not in PLANET_KEYS:
            raise ConfigError("unknown_key", f"unknown planet key {key!r}", f"planet.{name}.{key}")
        attr, scale = PLANET_KEYS[key]
        values[attr] = _float(f"planet.{name}.{key}", text) * scale
    missing = [k for k, (attr, _) in PLANET_KEYS.items() if attr not in values]
    if missing:
        raise ConfigError(
            "invalid_value", f"new planet {name!r} needs {', '.join(missing)}", f"planet.{name}"
        )
    try:
        return PlanetProfile(**values)
    except DomainError as exc:
        raise ConfigError("invalid_value", str(exc), f"planet.{name}") from None


def _spacecraft_section(base: SpacecraftSpec | None, name: str, items: Mapping[str, str]) -> SpacecraftSpec:
    values: dict[str, Any] = asdict(base) if base is not None else {"form_factor": name.upper()}
    for key, text in items.items():
        full = f"spacecraft.{name}.{key}"
        if key not in SPACECRAFT_KEYS:
            raise ConfigError("unknown_key", f"unknown spacecraft key {key!r}", full)
        if key == "dimensions_m":
            dims = _floats(full, text)
            _require(len(dims) == 3, full, "expected three comma-separated lengths")
            values["dimensions"] = dims
        elif key == "mass_kg":
            values["mass"] = _float(full, text)
        elif key == "drag_coefficient":
            values["drag_coefficient"] = _float(full, text)
        else:
            values["thrust"] = _float(full, text)
    missing = [k for k in ("dimensions", "mass", "thrust") if k not in values]
    if missing:
        raise ConfigError(
            "invalid_value", f"new spacecraft {name!r} needs {', '.join(missing)}", f"spacecraft.{name}"
        )
    try:
        return SpacecraftSpec(**values)
    except DomainError as exc:
        raise ConfigError("invalid_value", str(exc), f"spacecraft.{name}") from None


def load_scenario(
    path: str | Path | None = None,
    *,
    text: str | None = None,
    overrides: Mapping[str, str] | None = None,
) -> ScenarioConfig:
    """Read a scenario from ``path`` or ``text`` and apply defaults.

    ``overrides`` maps keys to raw string values and wins over the file.
    Plain keys address the scenario block; ``planet.<name>.<key>`` and
    ``spacecraft.<name>.<key>`` address catalog sections.

    Raises ConfigError with a machine-readable ``code`` and the offending
    ``key``.
    """
    if path is not None and text is not None:
        raise ValueError("pass either path or text, not both")
    if path is not None:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ConfigError("parse_error", f"cannot read {path}: {exc.strerror}") from None
    parser = _parse_text(text or "")

    for key, value in (overrides or {}).items():
        key = key.lower()
        section, _, option = key.rpartition(".")
        section = section or "scenario"
        if not parser.has_section(section):
            parser.add_section(section)
        parser.set(section, option, str(value))

    settings = dict(SCENARIO_DEFAULTS)
    planets = dict(PLANETS)
    crafts = dict(SPACECRAFT)
    for section in parser.sections():
        items = dict(parser.items(section))
        kind, _, name = section.partition(".")
        if section == "scenario":
            for key, value in items.items():
                if key not in SCENARIO_DEFAULTS:
                    raise ConfigError("unknown_key", f"unknown scenario key {key!r}", key)
                settings[key] = value.strip()
        elif kind == "planet" and name:
            planets[name] = _planet_section(planets.get(name), name, items)
        elif kind == "spacecraft" and name:
            crafts[name] = _spacecraft_section(crafts.get(name), name, items)
        else:
            raise ConfigError("unknown_key", f"unknown section [{section}]", section)

    return _build(settings, planets, crafts)


def _build(settings: dict[str, str], planets: dict, crafts: dict) -> ScenarioConfig:
    s = settings
    pname = s["planet"].lower()
    if pname not in planets:
        raise ConfigError("unknown_entry", f"planet: no catalog entry {pname!r}", "planet")
    planet = planets[pname]

    rho0_label = s["rho0"].lower()
    if rho0_label in ("low", "high"):
        if pname != "mars":
            raise ConfigError("invalid_value", "rho0: low/high presets exist only for mars", "rho0")
        planet = planet.with_rho0(MARS_RHO0_LOW if rho0_label == "low" else MARS_RHO0_HIGH)
    elif rho0_label:
        rho0 = _float("rho0", rho0_label)
        _require(rho0 > 0, "rho0", "must be > 0")
        planet = planet.with_rho0(rho0)
        rho0_label = "custom"
    elif pname == "mars" and planet.rho0 in (MARS_RHO0_LOW, MARS_RHO0_HIGH):
        rho0_label = "low" if planet.rho0 == MARS_RHO0_LOW else "high"
    else:
        rho0_label = "catalog"

    names = [n.strip().lower() for n in s["sats"].split(",") if n.strip()]
    _require(bool(names), "sats", "select at least one spacecraft")
    for n in names:
        if n not in crafts:
            raise ConfigError("unknown_entry", f"sats: no catalog entry {n!r}", "sats")
    names = list(dict.fromkeys(names))

    tau = _float("tau", s["tau"])
    _require(tau > 0, "tau", "must be > 0")
    budget = LatencyBudget(tau)
    if s["d_max_km"]:
        d_max = _float("d_max_km", s["d_max_km"]) * 1e3
        _require(d_max > 0, "d_max_km", "must be > 0")
        budget = LatencyBudget.from_range(d_max)

    h_uav = _float("h_uav_km", s["h_uav_km"]) * 1e3
    _require(0 <= h_uav <= MAX_H_UAV, "h_uav_km", "must lie in [0, 10] km")

    lo = _float("grid_lo_km", s["grid_lo_km"]) * 1e3
    hi = _float("grid_hi_km", s["grid_hi_km"]) * 1e3
    step = _float("grid_step_km", s["grid_step_km"]) * 1e3
    _require(step > 0, "grid_step_km", "must be > 0")
    _require(lo < hi, "grid_lo_km", "must be below grid_hi_km")
    _require(lo > h_uav, "grid_lo_km", "must be above the UAV height")

    horizon = _float("horizon_years", s["horizon_years"]) * SECONDS_PER_YEAR
    _require(horizon > 0, "horizon_years", "must be > 0")

    life_alts = tuple(h * 1e3 for h in _floats("lifetime_altitudes_km", s["lifetime_altitudes_km"]))
    _require(all(h > 0 for h in life_alts), "lifetime_altitudes_km", "altitudes must be > 0")

    weights = _floats("knee_weights", s["knee_weights"])
    _require(
        len(weights) == 2 and min(weights) >= 0 and max(weights) > 0,
        "knee_weights",
        "expected two non-negative weights, not both zero",
    )

    sh = _float("surface_h_step_km", s["surface_h_step_km"]) * 1e3
    se = _float("surface_eps_step_deg", s["surface_eps_step_deg"])
    _require(sh > 0, "surface_h_step_km", "must be > 0")
    _require(0 < se <= 90, "surface_eps_step_deg", "must lie in (0, 90]")

    fmt = s["format"].lower()
    _require(fmt in FORMATS, "format", f"must be one of {', '.join(FORMATS)}")

    return ScenarioConfig(
        planet=planet,
        spacecraft=tuple(replace(crafts[n]) for n in names),
        budget=budget,
        h_uav=h_uav,
        grid=(lo, hi, step),
        horizon=horizon,
        lifetime_altitudes=life_alts,
        knee_weights=(weights[0], weights[1]),
        surface_steps=(sh, math.radians(se)),
        format=fmt,
        out=s["out"],
        rho0_label=rho0_label,
        settings={k: s[k] for k in sorted(s)},
    )


# ---------------------------------------------------------------- running


@dataclass
class Table:
    columns: tuple[str, ...]
    rows: list[tuple] = field(default_factory=list)


@dataclass
class ReportBundle:
    metadata: dict[str, Any]
    tables: dict[str, Table]


DRAG_COLUMNS = ("h_km", "rho_kg_m3", "v_m_s", "F_drag_N", "eps_min_deg", "t_s_s")
SESSION_COLUMNS = (
    "h_km", "eps_min_deg", "slant_range_km", "theta_max_deg", "d_arc_km",
    "v_m_s", "t_s_s", "zenith_latency_ms",
)
SURFACE_COLUMNS = ("h_km", "eps_deg", "slant_range_km", "within_budget")
PARETO_COLUMNS = (
    "h_km", "t_s_s", "F_drag_N", "thrust_margin_N", "t_s_norm", "F_drag_norm", "E", "knee",
)
KNEE_COLUMNS = ("sat", "h_opt_km", "E_min", "F_drag_N", "t_s_s", "drag_to_thrust_pct", "note")
MIN_ALT_COLUMNS = ("sat", "F_prop_N", "h_min_km", "note")
EARTH_COLUMNS = ("sat", "mars_h_min_km", "earth_h_min_km", "reference_earth_km", "delta_km")
LIFETIME_SUMMARY_COLUMNS = (
    "sat", "h0_km", "lifetime_s", "lifetime_days", "lifetime_years", "terminal_reason", "steps",
)
LIFETIME_COLUMNS = ("h0_km", "time_s", "time_days", "h_km", "period_s")

STAGES = ("min-altitude", "sweep", "session", "knee", "lifetime")


def _deg(x):
    return None if x is None else math.degrees(x)


def _key(spec: SpacecraftSpec) -> str:
    return spec.form_factor.lower()


def _metadata(cfg: ScenarioConfig, stages) -> dict[str, Any]:
    p = cfg.planet
    return {
        "tool": "marscran",
        "version": __version__,
        "stages": list(stages),
        "settings": dict(cfg.settings),
        "constants": {
            "planet": asdict(p),
            "rho0_selection": cfg.rho0_label,
            "speed_of_light_m_s": SPEED_OF_LIGHT,
            "tau_s": cfg.budget.tau,
            "d_max_m": cfg.budget.d_max,
            "h_uav_m": cfg.h_uav,
            "grid_m": list(cfg.grid),
            "horizon_s": cfg.horizon,
            "seconds_per_year": SECONDS_PER_YEAR,
            "knee_weights": list(cfg.knee_weights),
            "spacecraft": [
                {**asdict(s), "cross_section_m2": cross_section(s), "ballistic_factor_m2_kg": s.ballistic_factor}
                for s in cfg.spacecraft
            ],
        },
    }


def _staged(stage: str, fn: Callable, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except MarsCranError as exc:
        exc.stage = stage
        raise


def _min_altitude_tables(cfg: ScenarioConfig, tables: dict):
    t = tables["min_altitude"] = Table(MIN_ALT_COLUMNS)
    for spec in cfg.spacecraft:
        h = min_sustainable_altitude(cfg.planet, spec)
        t.rows.append((spec.form_factor, spec.thrust, h / 1e3, "drag-negligible" if h == 0 else ""))
    if cfg.planet.name == "mars":
        e = tables["earth_comparison"] = Table(EARTH_COLUMNS)
        for row in earth_comparison(cfg.spacecraft, mars=cfg.planet):
            e.rows.append(
                (row.form_factor, row.mars_min_altitude / 1e3, row.earth_min_altitude / 1e3,
                 row.reference_earth_km, row.delta_km)
            )


def _sweeps(cfg: ScenarioConfig) -> dict[str, list]:
    return {
        _key(spec): feasibility_sweep(cfg.planet, spec, cfg.budget, cfg.altitudes, cfg.h_uav)
        for spec in cfg.spacecraft
    }


def _drag_tables(cfg, sweeps, tables):
    for name, rows in sweeps.items():
        tables[f"drag_{name}"] = Table(
            DRAG_COLUMNS,
            [(r.h / 1e3, r.rho, r.velocity, r.drag, _deg(r.epsilon_min), r.session_time) for r in rows],
        )


def _session_tables(cfg: ScenarioConfig, tables):
    t = tables["session"] = Table(SESSION_COLUMNS)
    for h in cfg.altitudes:
        h = float(h)
        lat = zenith_latency(h, cfg.h_uav) * 1e3
        if h - cfg.h_uav > cfg.budget.d_max:
            t.rows.append((h / 1e3, None, None, None, None, None, None, lat))
            continue
        g = session_time(cfg.planet, h, cfg.h_uav, cfg.budget.d_max)
        v = circular_velocity(cfg.planet, h)
        t.rows.append(
            (h / 1e3, math.degrees(g.epsilon), g.slant_range / 1e3, math.degrees(g.theta_max),
             g.arc_length / 1e3, v, g.session_time, lat)
        )

    s = tables["elevation_surface"] = Table(SURFACE_COLUMNS)
    lo, hi, _ = cfg.grid
    h_step, e_step = cfg.surface_steps
    hs = np.round(np.arange(lo, hi + h_step / 2, h_step), 3)
    eps = np.arange(0.0, math.pi / 2 + e_step / 2, e_step)
    eps[-1] = min(eps[-1], math.pi / 2)
    for h in hs:
        for e in eps:
            d = slant_range(cfg.planet, float(h), cfg.h_uav, float(e))
            s.rows.append((float(h) / 1e3, math.degrees(e), d / 1e3, bool(d <= cfg.budget.d_max)))


def _knee_tables(cfg, sweeps, tables):
    kt = tables["knee"] = Table(KNEE_COLUMNS)
    for spec in cfg.spacecraft:
        name = _key(spec)
        pt = tables[f"pareto_{name}"] = Table(PARETO_COLUMNS)
        rows = sweeps[name]
        if sum(r.feasible for r in rows) < 3:
            kt.rows.append((spec.form_factor, None, None, None, None, None, "no feasible band"))
            continue
        knee = knee_altitude(rows, cfg.knee_weights)
        for k, (row, pp) in enumerate(zip(knee.rows, knee.points)):
            pt.rows.append(
                (row.h / 1e3, row.session_time, row.drag, row.thrust_margin,
                 pp.session_time_norm, pp.drag_norm, pp.knee_error, k == knee.index)
            )
        r = knee.row
        kt.rows.append(
            (spec.form_factor, knee.h_opt / 1e3, knee.error, r.drag, r.session_time,
             100 * r.drag / spec.thrust, "")
        )


def _lifetime_tables(cfg, tables):
    summary = tables["lifetime_summary"] = Table(LIFETIME_SUMMARY_COLUMNS)
    for spec in cfg.spacecraft:
        t = tables[f"lifetime_{_key(spec)}"] = Table(LIFETIME_COLUMNS)
        for h0 in cfg.lifetime_altitudes:
            run = orbital_lifetime(cfg.planet, spec, h0, cfg.horizon)
            summary.rows.append(
                (spec.form_factor, h0 / 1e3, run.lifetime, run.lifetime_days, run.lifetime_years,
                 run.terminal_reason, run.steps)
            )
            for ti, hi, pi in zip(run.times, run.altitudes, run.periods):
                t.rows.append((h0 / 1e3, float(ti), float(ti) / SECONDS_PER_DAY, float(hi) / 1e3, float(pi)))


def run_scenario(cfg: ScenarioConfig, stages=STAGES) -> ReportBundle:
    """Run the selected pipeline stages and collect their tables.

    Errors raised by an operation carry the failing stage in ``exc.stage``.
    """
    unknown = set(stages) - set(STAGES)
    if unknown:
        raise ValueError(f"unknown stages: {sorted(unknown)}")
    tables: dict[str, Table] = {}
    sweeps = None
    if "min-altitude" in stages:
        _staged("min-altitude", _min_altitude_tables, cfg, tables)
    if "sweep" in stages or "knee" in stages:
        sweeps = _staged("sweep", _sweeps, cfg)
    if "sweep" in stages:
        _drag_tables(cfg, sweeps, tables)
    if "session" in stages:
        _staged("session", _session_tables, cfg, tables)
    if "knee" in stages:
        _staged("knee", _knee_tables, cfg, sweeps, tables)
    if "lifetime" in stages:
        _staged("lifetime", _lifetime_tables, cfg, tables)
    return ReportBundle(metadata=_metadata(cfg, [s for s in STAGES if s in stages]), tables=tables)


# ---------------------------------------------------------------- output


def format_value(value) -> str:
    """CSV cell text: 9 significant digits, ``true``/``false``, empty for missing."""
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".9g")
    return str(value)


def _json_value(value):
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(format(float(value), ".9g"))
        return value if math.isfinite(value) else None
    return value


def table_to_csv(table: Table) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([format_value(v) for v in row])
    return buf.getvalue()


def table_to_json(table: Table) -> str:
    payload = {"columns": list(table.columns), "rows": [[_json_value(v) for v in row] for row in table.rows]}
    return json.dumps(payload, indent=1) + "\n"


def _metadata_json(metadata) -> str:
    def clean(obj):
        if isinstance(obj, dict):
            return {k: clean(v) for k, v in obj.items()}
        if isinstance(obj, (list, tuple)):
            return [clean(v) for v in obj]
        return _json_value(obj)

    return json.dumps(clean(metadata), indent=1, sort_keys=True) + "\n"


def render_tables(bundle: ReportBundle, fmt: str = "csv") -> dict[str, str]:
    """File name to file text for every table plus ``metadata.json``."""
    if fmt not in FORMATS:
        raise ValueError(f"format must be one of {FORMATS}, got {fmt!r}")
    render = table_to_csv if fmt == "csv" else table_to_json
    files = {f"{name}.{fmt}": render(t) for name, t in bundle.tables.items()}
    files["metadata.json"] = _metadata_json(bundle.metadata)
    return files


def emit_tables(bundle: ReportBundle, fmt: str, destination: str | Path) -> list[Path]:
    """Write all tables into ``destination`` (created if needed); returns the paths.

    Raises OSError naming the path on write failure.
    """
    dest = Path(destination)
    written = []
    try:
        dest.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(exc.errno, f"cannot create output directory: {exc.strerror}", str(dest)) from None
    for name, text in render_tables(bundle, fmt).items():
        path = dest / name
        try:
            with open(path, "w", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise OSError(exc.errno, f"cannot write table: {exc.strerror}", str(path)) from None
        written.append(path)
    return written
