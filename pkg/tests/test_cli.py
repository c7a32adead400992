import json

import pytest

from marscran import cli
from marscran.cli import main
from marscran.errors import DomainError, NumericalError


def test_report_writes_files(tmp_path, capsys):
    out = tmp_path / "rep"
    assert main(["report", "--out", str(out), "--sat", "1u,12u", "--lifetime-altitudes-km", "75"]) == 0
    names = {p.name for p in out.iterdir()}
    assert {"drag_1u.csv", "drag_12u.csv", "knee.csv", "metadata.json", "lifetime_summary.csv"} <= names
    meta = json.loads((out / "metadata.json").read_text())
    assert meta["settings"]["sats"] == "1u,12u"


@pytest.mark.parametrize(
    "command, table",
    [("sweep", "drag_12u.csv"), ("min-altitude", "min_altitude.csv"), ("knee", "knee.csv"),
     ("session", "session.csv"), ("lifetime", "lifetime_summary.csv")],
)
def test_subcommands_stdout(command, table, capsys):
    assert main([command, "--lifetime-altitudes-km", "75"]) == 0
    assert f"# {table}" in capsys.readouterr().out


def test_json_format(capsys):
    assert main(["min-altitude", "--format", "json", "--sat", "6u"]) == 0
    out = capsys.readouterr().out
    body = out.split("# min_altitude.json\n", 1)[1].split("# ", 1)[0]
    doc = json.loads(body)
    assert doc["rows"][0][0] == "6U"


def test_rho0_and_planet_flags(capsys):
    assert main(["min-altitude", "--planet", "earth", "--sat", "12u"]) == 0
    assert "earth_comparison" not in capsys.readouterr().out
    assert main(["min-altitude", "--rho0", "low"]) == 0
    low = capsys.readouterr().out
    assert main(["min-altitude", "--rho0", "high"]) == 0
    assert low != capsys.readouterr().out


@pytest.mark.parametrize(
    "argv, code",
    [
        (["sweep", "--tau", "-1"], 2),
        (["sweep", "--set", "nonsense=1"], 2),
        (["sweep", "--set", "novalue"], 2),
    ],
)
def test_exit_codes(argv, code, capsys):
    assert main(argv) == code
    assert capsys.readouterr().err


def test_io_exit_code(tmp_path, capsys):
    blocker = tmp_path / "f"
    blocker.write_text("")
    assert main(["sweep", "--out", str(blocker / "x")]) == 5


@pytest.mark.parametrize(
    "exc, code",
    [(DomainError("bad"), 3), (NumericalError("stalled", altitude=1.0), 4), (OSError(13, "denied", "x"), 5)],
)
def test_error_mapping(monkeypatch, exc, code, capsys):
    def boom(*args, **kwargs):
        raise exc

    monkeypatch.setattr(cli, "run_scenario", boom)
    assert main(["sweep"]) == code
    assert capsys.readouterr().err
