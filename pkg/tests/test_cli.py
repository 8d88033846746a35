import csv
import json

from fractions import Fraction

import pytest

from kemmer import ConfigError
from kemmer import cli
from kemmer.cli import CATALOGUE, RunConfig
from .base import out_path


def _config(name, data):
    path = out_path(name)
    with open(path, "w") as f:
        json.dump(data, f)
    return path


def _load(path):
    with open(path) as f:
        return json.load(f)


def test_config_rationals():
    config = RunConfig.from_dict({"m": [1, 2], "B": 3, "modes": [[0, 0, 1]]})
    assert config.m == Fraction(1, 2)
    assert config.B == Fraction(3)
    assert config.modes == ([0, 0, 1],)

    data = config.to_dict()
    assert data["m"] == [1, 2]
    assert data["p_z"] == [0, 1]


@pytest.mark.parametrize(
    "data",
    [
        {"colour": 1},
        {"m": 0.5},
        {"m": 0},
        {"m": [1, 0]},
        {"spins": [2]},
        {"identities": ["9.9"]},
        {"method": "shooting"},
        {"fields": ["radial"]},
        {"modes": [[1, 2]]},
        {"size": 0},
        {"tolerance": -1},
        {"oracle_rows": "yes"},
        [],
    ],
)
def test_config_errors(data):
    with pytest.raises(ConfigError):
        RunConfig.from_dict(data)


def test_field_configs():
    config = RunConfig.from_dict({"fields": ["shipped", {"kind": "uniform-B", "B": [1, 2]}]})
    fields = config.field_configs()
    assert [f.kind for f in fields][-2:] == ["null-wave-poly", "uniform-B"]
    assert len(fields) == 6

    config = RunConfig.from_dict({"fields": [{"kind": "null-wave-poly", "n": 4}]})
    with pytest.raises(ConfigError):
        config.field_configs()


def test_catalogue_ids():
    for identity in ["1.2", "2.2", "3.3", "4.4", "4.11", "5.9", "6.1", "6.6"]:
        assert identity in CATALOGUE
    assert all(suite.spins for suites in CATALOGUE.values() for suite in suites)


def test_no_subcommand():
    assert cli.main([]) == 2


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["--version"])
    assert exc.value.code == 0
    assert "kemmer" in capsys.readouterr().out


def test_verify_trilinear():
    path = out_path("trilinear.json")
    assert cli.main(["-q", "verify", "-i", "1.2", "-o", path]) == 0

    document = _load(path)
    assert document["schema"] == cli.SCHEMA
    assert document["passed"]
    assert [(r["identity"], r["spin"]) for r in document["reports"]] == [("1.2", 0), ("1.2", 1)]
    assert all(r["checked"] == 64 for r in document["reports"])


def test_verify_expected_failure():
    path = out_path("strong.json")
    assert cli.main(["-q", "verify", "-i", "2.2", "-o", path]) == 0

    spin1 = [r for r in _load(path)["reports"] if r["spin"] == 1]
    assert spin1 and not spin1[0]["passed"]
    assert spin1[0]["expect"] is False
    assert spin1[0]["as_expected"]


def test_verify_unknown_identity():
    assert cli.main(["verify", "-i", "9.9"]) == 2


def test_verify_bad_config():
    assert cli.main(["verify", "-c", _config("bad.json", {"colour": "red"})]) == 2
    assert cli.main(["verify", "-c", out_path("missing.json")]) == 2


def test_verify_from_config():
    path = _config(
        "commutator.json",
        {
            "spins": [1],
            "identities": ["6.1"],
            "fields": [{"kind": "uniform-B", "B": [1, 2]}, "zero"],
            "degree": 1,
        },
    )
    out = out_path("commutator.out.json")
    assert cli.main(["-q", "verify", "-c", path, "-o", out, "-j", "2"]) == 0

    reports = _load(out)["reports"]
    assert len(reports) == 2
    assert {r["identity"] for r in reports} == {"6.1"}
    assert all(r["passed"] for r in reports)


def _csv_rows(name):
    with open(out_path(name), newline="") as f:
        return list(csv.reader(f))[1:]


def test_spectrum_oscillator_basis():
    path = _config(
        "spectrum-in.json", {"spins": [0], "method": "oscillator-basis", "size": 32, "B": 2}
    )
    out = out_path("spectrum.json")
    assert cli.main(["-q", "spectrum", "-c", path, "-o", out]) == 0

    document = _load(out)
    assert document["passed"]
    (entry,) = document["spectra"]
    assert entry["route"] == "oscillator-basis"
    assert entry["oracle_delta"] < 1e-10

    rows = _csv_rows("spectrum.csv")
    assert len(rows) == 5
    assert {row[1] for row in rows} == {"oscillator-basis"}


def test_spectrum_oracle_rows():
    path = _config(
        "oracle-rows-in.json",
        {"spins": [0], "method": "oscillator-basis", "size": 32, "oracle_rows": True},
    )
    assert cli.main(["-q", "spectrum", "-c", path, "-o", out_path("oracle-rows.json")]) == 0

    rows = _csv_rows("oracle-rows.csv")
    assert [row[1] for row in rows] == ["oscillator-basis"] * 5 + ["oscillator-oracle"] * 5

    assert cli.main(["spectrum", "-c", _config("bad-rows.json", {"oracle_rows": 1})]) == 2


def test_spectrum_spin1():
    path = _config(
        "spin1-in.json", {"spins": [1], "size": 128, "n_max": 4, "route_tolerance": 1e-4}
    )
    out = out_path("spin1.json")
    assert cli.main(["-q", "spectrum", "-c", path, "-o", out]) == 0

    document = _load(out)
    assert document["passed"]
    assert [entry["route"] for entry in document["spectra"]] == ["o_red-eigen", "fourth-order"]
    assert document["spectra"][1]["oracle_delta"] < 1e-4

    rows = _csv_rows("spin1.csv")
    assert len(rows) == 10
    assert {row[4] for row in rows if row[1] == "fourth-order"} <= {"-1", "0", "1", "mixed"}
    assert all(float(row[7]) <= 1e-4 for row in rows)


@pytest.mark.slow
def test_spectrum_default_config():
    out = out_path("default-spectrum.json")
    assert cli.main(["-q", "spectrum", "-o", out]) == 0

    document = _load(out)
    assert document["passed"]
    routes = [(entry["spin"], entry["route"]) for entry in document["spectra"]]
    assert routes == [(0, "fourier-grid"), (1, "o_red-eigen"), (1, "fourth-order")]

    rows = _csv_rows("default-spectrum.csv")
    assert len([row for row in rows if row[0] == "0"]) == 5


def test_spectrum_needs_field():
    assert cli.main(["spectrum", "-c", _config("flat.json", {"B": 0})]) == 2


def test_currents():
    out = out_path("currents.json")
    assert cli.main(["-q", "currents", "-o", out]) == 0

    document = _load(out)
    assert document["passed"]
    assert {r["identity"] for r in document["reports"]} == {"1.3", "1.5"}

    with open(out_path("currents.csv"), newline="") as f:
        rows = list(csv.reader(f))
    assert tuple(rows[0]) == cli.PROFILE_COLUMNS
    # two spins, two currents, a 4 x 4 sample grid
    assert len(rows) == 1 + 2 * 2 * 16


def test_currents_need_modes():
    assert cli.main(["currents", "-c", _config("nomodes.json", {"modes": []})]) == 2


def test_report(capsys):
    path = out_path("report.json")
    assert cli.main(["-q", "verify", "-i", "1.2", "-o", path]) == 0
    capsys.readouterr()

    assert cli.main(["report", path]) == 0
    out = capsys.readouterr().out
    assert "report.json" in out
    assert "1.2" in out
    assert "pass" in out


def test_report_missing_file():
    assert cli.main(["report", out_path("nothing.json")]) == 2
