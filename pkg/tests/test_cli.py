import json
import os

import pytest
from click.testing import CliRunner

from dqm.cli import JobConfig, cli, main
from dqm.cli.config import default_cache_dir, parse_modulus
from dqm.hyperderive import reset_engines


def run(*args):
    res = CliRunner().invoke(cli, ["-q", *args])
    return res.exit_code, res.stdout


def test_expand_examples():
    code, out = run("expand", "--expr", "x[1]", "--prec", "8")
    assert code == 0 and out.startswith("(T^3-T)*u^3")
    code, out = run("expand", "--expr", "Delta", "--nu")
    assert code == 0 and out.strip().endswith("nu = 2")
    code, out = run("expand", "--expr", "E*g + h", "--nu")
    assert out.strip().endswith("nu = 3")


def test_nu_and_seq():
    code, out = run("nu", "--expr", "xi[0]")
    assert code == 0 and out.startswith("nu = 10\n")
    code, out = run("seq", "--name", "Delta")
    assert code == 0 and out.strip() == "Delta = -h^2"
    code, out = run("--format", "json", "seq", "--name", "x", "--k", "1")
    d = json.loads(out)
    assert (d["w"], d["m"], d["l"]) == (4, 1, 1)


def test_derive_examples():
    assert run("derive", "--expr", "Delta", "--n", "3") == (0, "-g*h^3/(T^3-T)\n")
    assert run("--p", "2", "derive", "--expr", "Delta", "--n", "2") == (0, "g*h^2/(T^2+T)\n")
    assert run("derive", "--expr", "x[1]", "--n", "1") == (0, "0\n")
    assert run("derive", "--expr", "E", "--n", "1") == (0, "E^2\n")


def test_taylor_example():
    assert run("taylor", "--target", "Delta", "--stage", "1") == (0, "Delta*(1-E*X)\n")
    code, out = run("--format", "csv", "taylor", "--target", "g", "--stage", "1")
    assert code == 0 and out.splitlines()[0] == "n,coefficient"


def test_extremal_and_spectrum():
    code, out = run("extremal", "--w", "10", "--m", "1", "--l", "1")
    assert code == 0
    assert "dim = 3\nnu_max = 9\nspectrum = [1, 3, 9]" in out
    code, out = run("extremal", "--w", "2", "--m", "1", "--l", "1")
    assert out.strip().endswith("form = E")
    assert run("spectrum", "--w", "10", "--m", "1", "--l", "1") == (0, "[1, 3, 9]\n")
    code, out = run("--format", "json", "spectrum", "--w", "10", "--m", "1", "--l", "1")
    assert json.loads(out)["is_interval"] is False


def test_configuration_errors_exit_2():
    code, out = run("expand", "--expr", "E*(g+")
    assert code == 2
    assert run("--p", "4", "expand", "--expr", "E")[0] == 2
    assert run("--p", "2", "--e", "2", "--modulus", "1,0,1", "expand", "--expr", "E")[0] == 2
    assert run("--jobs", "0", "seq", "--name", "g")[0] == 2
    assert run("extremal", "--w", "3", "--m", "0", "--l", "1")[0] == 2
    assert run("derive", "--expr", "E", "--n", "-1")[0] == 2


def test_parse_error_points_at_column(capsys):
    assert main(["-q", "expand", "--expr", "E*(g+"]) == 2
    err = capsys.readouterr().err
    assert "^" in err


def test_budget_errors_exit_3():
    assert run("--precision-cap", "4", "derive", "--expr", "E", "--n", "9")[0] == 3
    assert run("--precision-cap", "4", "expand", "--expr", "Delta")[0] == 3
    assert run("--precision-cap", "4", "taylor", "--target", "E", "--stage", "2")[0] == 3
    code, out = run("--precision-cap", "4", "extremal", "--w", "20", "--m", "1", "--l", "2")
    assert code == 3 and "unresolved at precision cap 4" in out


def test_verify_exit_codes():
    code, out = run("verify", "--suite", "fast")
    assert code == 4
    lines = out.splitlines()
    assert any(line.startswith("[FAIL] C8") for line in lines)
    assert all(line.startswith(("[PASS]", "[PAPER-DISCREPANCY]")) for line in lines
               if line.startswith("[") and " C8 " not in line)
    code, out = run("--p", "2", "verify", "--suite", "fast")
    assert code == 0 and out.splitlines()[-1].startswith("summary:")


def test_table_and_parallel_determinism(tmp_path):
    args = ["--kmax", "1", "--no-epsilon"]
    code, seq_out = run("--format", "csv", "table", *args)
    assert code == 0
    code, par_out = run("--format", "csv", "--jobs", "2", "table", *args)
    assert code == 0 and par_out == seq_out
    rows = seq_out.splitlines()
    assert rows[0] == "q,k,l,w,m,dim,nu_max,form_id,epsilon_D,status"
    assert len(rows) == 1 + 2 * 4
    code, out = run("--format", "json", "table", "--kmax", "0", "--lmax", "2", "--store", str(tmp_path))
    data = json.loads(out)
    assert [r["nu_max"] for r in data] == [1, 2]
    assert sorted(os.listdir(tmp_path)) == sorted(r["form_id"] + ".json" for r in data)


def test_corrupted_cache_is_rebuilt(tmp_path, caplog):
    cache = tmp_path / "c"
    reset_engines()
    assert run("--cache", str(cache), "derive", "--expr", "Delta", "--n", "10")[0] == 0
    files = list((cache / "p3e1").glob("taylor_*.json"))
    assert files
    for f in files:
        f.write_text("garbage")
    reset_engines()
    res = CliRunner().invoke(cli, ["--cache", str(cache), "derive", "--expr", "Delta", "--n", "10"])
    assert res.exit_code == 0
    assert "discarding unreadable cache file" in caplog.text
    assert all(json.loads(f.read_text())["q"] for f in files)
    assert run("--cache", str(cache), "--p", "2", "verify")[0] == 0


def test_no_cache_writes_nothing(tmp_path, monkeypatch):
    reset_engines()
    monkeypatch.setenv("DQM_CACHE_DIR", str(tmp_path / "none"))
    assert run("--no-cache", "derive", "--expr", "g", "--n", "12")[0] == 0
    assert not (tmp_path / "none").exists()


def test_job_config():
    cfg = JobConfig(2, 2, (1, 1, 1), "/tmp/x", "json", 3, 100)
    assert JobConfig.from_json(cfg.to_json()) == cfg
    assert cfg.field().q == 4
    with pytest.raises(ValueError):
        JobConfig(fmt="xml")
    with pytest.raises(ValueError):
        JobConfig(p=6)
    assert parse_modulus("1, 1,1") == (1, 1, 1) and parse_modulus(None) is None
    with pytest.raises(ValueError):
        parse_modulus("1,a")


def test_default_cache_dir(monkeypatch, tmp_path):
    monkeypatch.delenv("DQM_CACHE_DIR", raising=False)
    monkeypatch.setenv("XDG_CACHE_HOME", str(tmp_path))
    assert default_cache_dir() == os.path.join(str(tmp_path), "dqm")
    monkeypatch.setenv("DQM_CACHE_DIR", "/elsewhere")
    assert default_cache_dir() == "/elsewhere"
