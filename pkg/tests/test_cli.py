"""Command line behaviour: exit codes, outputs, CSV determinism."""

import json

import numpy as np
import pytest

from levlab.cli import main

WELL_CONFIG = {"potential": {"kind": "square-well", "depth": 1.0, "half_width": 1.0}}


def write_config(tmp_path, payload, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


# --- point ------------------------------------------------------------------


def test_point_attractive_delta(capsys):
    assert main(["point", "--kind", "delta", "--param", "-1"]) == 0
    out = capsys.readouterr().out
    assert "index identity: OK" in out
    assert "[even]" in out and "[odd " in out


def test_point_infinite_coupling(capsys):
    assert main(["point", "--kind", "delta-prime", "--param", "inf"]) == 0
    assert "index identity: OK" in capsys.readouterr().out


def test_point_json_reports(capsys):
    assert main(["point", "--kind", "delta", "--param", "2", "--json"]) == 0
    out = capsys.readouterr().out
    payload = next(line for line in out.splitlines() if line.startswith("{"))
    reports = json.loads(payload)
    assert set(reports) == {"even", "odd"}
    assert reports["even"]["n_bound"] == 0


def test_point_rejects_unknown_kind(capsys):
    assert main(["point", "--kind", "contact", "--param", "1"]) == 2


def test_point_rejects_bad_param(capsys):
    assert main(["point", "--kind", "delta", "--param", "strong"]) == 2
    assert "config error" in capsys.readouterr().err


def test_missing_subcommand_is_usage_error(capsys):
    assert main([]) == 2


# --- potential --------------------------------------------------------------


def test_potential_square_well(tmp_path, capsys):
    cfg = write_config(tmp_path, WELL_CONFIG)
    assert main(["potential", "--config", cfg]) == 0
    out = capsys.readouterr().out
    assert "threshold: generic" in out
    assert "time delay integral" in out
    assert "index identity: OK" in out
    for tag in ("[full]", "[even]", "[odd "):
        assert tag in out


def test_potential_point_system_config(tmp_path, capsys):
    cfg = write_config(tmp_path, {"system": "delta", "param": -1})
    assert main(["potential", "--config", cfg]) == 0
    out = capsys.readouterr().out
    assert "delta (alpha = -1)" in out
    assert "index identity: OK" in out


def test_potential_csv_outputs_are_deterministic(tmp_path, capsys):
    cfg = write_config(tmp_path, WELL_CONFIG)
    first, second = tmp_path / "s1.csv", tmp_path / "s2.csv"
    phases = tmp_path / "phases.csv"
    assert main(["potential", "--config", cfg, "--csv", str(first)]) == 0
    assert (
        main(
            [
                "potential",
                "--config",
                cfg,
                "--csv",
                str(second),
                "--phase-csv",
                str(phases),
            ]
        )
        == 0
    )
    capsys.readouterr()
    assert first.read_bytes() == second.read_bytes()
    header = first.read_text().splitlines()[0]
    assert header == "kappa,re11,im11,re12,im12,re21,im21,re22,im22"
    assert phases.read_text().splitlines()[0] == "kappa,arg_det,phase1,phase2"


def test_potential_csv_via_config_output(tmp_path, capsys):
    target = tmp_path / "out.csv"
    cfg = write_config(
        tmp_path, dict(WELL_CONFIG, output={"csv": str(target)})
    )
    assert main(["potential", "--config", cfg]) == 0
    assert target.exists()
    data = np.loadtxt(target, delimiter=",", skiprows=1)
    assert data.shape[1] == 9
    assert np.all(np.diff(data[:, 0]) > 0)


def test_potential_sector_selection(tmp_path, capsys):
    cfg = write_config(tmp_path, dict(WELL_CONFIG, sectors=["even"]))
    assert main(["potential", "--config", cfg]) == 0
    out = capsys.readouterr().out
    assert "[even]" in out and "[full]" not in out


def test_potential_tabulated_slow_tail_warns_but_runs(tmp_path, capsys):
    xs = np.linspace(-2.0, 2.0, 81)
    values = -0.4 * np.exp(-((xs - 0.3) ** 2))
    cfg = write_config(
        tmp_path,
        {
            "potential": {
                "kind": "tabulated",
                "xs": xs.tolist(),
                "values": values.tolist(),
                "decay_exponent": 2.0,
            }
        },
    )
    with pytest.warns(UserWarning, match="tail decay"):
        code = main(["potential", "--config", cfg])
    assert code == 0
    assert "index identity: OK" in capsys.readouterr().out


def test_potential_config_errors(tmp_path, capsys):
    missing = str(tmp_path / "absent.json")
    assert main(["potential", "--config", missing]) == 2

    not_json = tmp_path / "broken.json"
    not_json.write_text("{not json")
    assert main(["potential", "--config", str(not_json)]) == 2

    for payload in (
        {"potential": {"kind": "velvet"}},
        {"potential": {"kind": "square-well", "depth": 1.0}},
        {"system": "rotor"},
        {"system": "delta"},
        dict(WELL_CONFIG, numerics={"mesh_flavor": 3}),
        dict(WELL_CONFIG, sectors=["diagonal"]),
        dict(WELL_CONFIG, sectors=[]),
        {"potential": "deep"},
    ):
        cfg = write_config(tmp_path, payload)
        assert main(["potential", "--config", cfg]) == 2, payload
    err = capsys.readouterr().err
    assert "config error" in err


def test_potential_numerics_override(tmp_path, capsys):
    cfg = write_config(
        tmp_path, dict(WELL_CONFIG, numerics={"winding_samples": 129})
    )
    assert main(["potential", "--config", cfg]) == 0


# --- tables and the multiplier identity -------------------------------------


def test_tables_reproduce(capsys):
    assert main(["tables"]) == 0
    out = capsys.readouterr().out
    assert "all golden rows reproduced" in out
    assert "MISMATCH" not in out


def test_verify_r_passes(capsys):
    assert main(["verify-r"]) == 0
    assert "multiplier identity: OK" in capsys.readouterr().out


def test_verify_r_flipped_sign_fails(capsys):
    assert main(["verify-r", "--flip-mellin-sign"]) == 1
    assert "multiplier identity: FAIL" in capsys.readouterr().out
