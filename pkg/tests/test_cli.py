import io
import subprocess
import sys

import pytest

from dickemirror import cli, scenarios


def run(*argv):
    out = io.StringIO()
    code = cli.run(list(argv), out=out)
    return code, out.getvalue()


def parse_kv(text):
    pairs = (line.split("=", 1) for line in text.splitlines() if "=" in line)
    return {k.strip(): v.strip() for k, v in pairs}


def test_rate_mirror_near_zone():
    code, out = run("rate", "--env", "mirror", "--zA", "2e-9", "--zB", "1e-9", "--orient", "zz",
                    "--parity", "sym", "--omega0", "1.55e16")
    assert code == 0
    values = parse_kv(out)
    assert float(values["scaled_pair_sum"]) == pytest.approx(2.0, rel=5e-3)
    # keys are aligned on the '=' sign
    assert len({line.index("=") for line in out.splitlines()}) == 1


def test_rate_coincident_atoms(capsys):
    code, _ = run("rate", "--zA", "1e-9", "--zB", "1e-9")
    assert code == 1
    err = capsys.readouterr().err
    assert "atom positions coincide" in err
    assert len(err.strip().splitlines()) == 1


@pytest.mark.parametrize("argv,field", [
    (["rate", "--zA", "abc", "--zB", "1e-9"], "--zA"),
    (["rate", "--zA", "1e-9", "--zB", "2e-9", "--bogus"], "--bogus"),
    (["rate", "--zA", "1e-9", "--zB=-1e-9", "--env", "mirror"], "zB"),
    (["rate", "--zA", "1e-9"], "zB"),
    (["rate", "--zA", "1e-9", "--zB", "2e-9", "--parity", "odd"], "parity"),
    (["rate", "--zA", "1e-9", "--zB", "2e-9", "--orient", "yz"], "orient"),
    (["rate", "--zA", "1e-9", "--zB", "2e-9", "--omega0", "-5"], "omega0"),
    (["figure", "fig9"], "fig9"),
    (["sweep", "--min", "1e-9"], "out"),
])
def test_errors_exit_one(argv, field, capsys):
    code, _ = run(*argv)
    assert code == 1
    assert field in capsys.readouterr().err


def test_rate_writes_csv_row(tmp_path):
    path = tmp_path / "rate.csv"
    code, _ = run("rate", "--zA", "3e-8", "--zB", "1e-8", "--csv", str(path))
    assert code == 0
    lines = path.read_text().splitlines()
    assert lines[0] == ",".join(scenarios.CSV_COLUMNS)
    assert len(lines) == 2


def test_figure_fig1(tmp_path):
    path = tmp_path / "fig1.csv"
    code, _ = run("figure", "fig1", "--out", str(path), "--count", "50")
    assert code == 0
    cols = scenarios.read_csv(path)
    assert set(cols["curve"]) == {"symmetric", "antisymmetric"}
    assert len(cols["curve"]) == 100


def test_figure_svg(tmp_path):
    code, _ = run("figure", "fig3", "--out", str(tmp_path / "f.csv"), "--svg", str(tmp_path / "f.svg"),
                  "--count", "20")
    assert code == 0
    assert (tmp_path / "f.svg").read_text().count("<polyline") == 4


def test_figure_io_error(tmp_path):
    code, _ = run("figure", "fig1", "--count", "5", "--out", str(tmp_path / "nope" / "x.csv"))
    assert code == 2


def test_missing_config_is_io_error(tmp_path):
    code, _ = run("rate", "--config", str(tmp_path / "absent.cfg"))
    assert code == 2


def test_sweep_with_config_file(tmp_path):
    cfg = tmp_path / "sweep.cfg"
    cfg.write_text("# mirror sweep\nenv = mirror\nzB = 1e-9\norient = xx\ncount = 7\nmin = 3e-9\n"
                   "max = 2e-7\nparity = anti\n")
    out = tmp_path / "s.csv"
    code, text = run("sweep", "--config", str(cfg), "--out", str(out), "--count", "5",
                     "--svg", str(tmp_path / "s.svg"))
    assert code == 0, text
    cols = scenarios.read_csv(out)
    assert len(cols["z_A_m"]) == 5  # flag wins over file
    assert cols["z_A_m"][0] == 3e-9
    assert (tmp_path / "s.svg").exists()


def test_config_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    code, _ = run("sweep", "--config", str(cfg), "--out", str(tmp_path / "s.csv"))
    assert code == 1
    assert "colour" in capsys.readouterr().err


def test_config_bad_number(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("zB = one\n")
    code, _ = run("sweep", "--config", str(cfg), "--out", str(tmp_path / "s.csv"))
    assert code == 1
    assert "zB" in capsys.readouterr().err
    assert not (tmp_path / "s.csv").exists()


def test_validate_small_run():
    code, out = run("validate", "--samples", "10", "--seed", "1")
    assert code == 0
    lines = out.splitlines()
    assert all(line.startswith("PASS") for line in lines[:-1])
    assert "max_err=" in lines[0]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "dickemirror", "rate", "--zA", "2e-8", "--zB", "1e-8"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "gamma_total" in proc.stdout
