import json
import subprocess
import sys

import pytest

from chartests.cli import EXIT_NUMERIC, EXIT_USAGE, RunReport, main, read_data


@pytest.fixture
def files(tmp_path):
    (tmp_path / "ones.txt").write_text("1\n1\n1\n")
    (tmp_path / "pair.txt").write_text("# two values\n1.0\n\n   3\n")
    (tmp_path / "bad.txt").write_text("1\n2\n# fine\nx2\n")
    (tmp_path / "neg.txt").write_text("1\n-2\n3\n")
    (tmp_path / "empty.txt").write_text("# nothing\n\n")
    return tmp_path


def _json(capsys, argv):
    code = main(argv + ["--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_read_data_skips_comments(files):
    assert read_data(str(files / "pair.txt")) == [1.0, 3.0]


def test_read_data_names_bad_line(files):
    with pytest.raises(ValueError, match="line 4"):
        read_data(str(files / "bad.txt"))


def test_test_command_desu_kolmogorov(files, cache_dir, capsys):
    code, rep = _json(capsys, ["test", "--test", "desu", "--kind", "kolmogorov", "--data",
                               str(files / "ones.txt"), "--reps", "200"])
    assert code == 0
    assert rep["statistic"] == 1.0
    assert rep["test"] == "desu-kolmogorov"


def test_test_command_gini(files, cache_dir, capsys):
    code, rep = _json(capsys, ["test", "--test", "gini", "--data", str(files / "pair.txt"),
                               "--reps", "200"])
    assert code == 0
    assert rep["statistic"] == 0.5
    assert 0 < rep["p_value"] <= 1
    assert "0.05" in rep["critical_values"]


def test_same_seed_same_report(files, cache_dir, capsys):
    argv = ["test", "--test", "rossberg", "--kind", "integral", "--data",
            str(files / "ones.txt"), "--reps", "300", "--seed", "9", "--no-cache"]
    _, a = _json(capsys, argv)
    _, b = _json(capsys, argv)
    a.pop("timing"), b.pop("timing")
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_usage_errors(files, cache_dir, capsys):
    assert main(["test", "--test", "nope", "--data", str(files / "pair.txt")]) == EXIT_USAGE
    assert main(["test", "--test", "gini", "--data", str(files / "bad.txt")]) == EXIT_USAGE
    assert "line 4" in capsys.readouterr().err
    assert main(["test", "--test", "desu", "--data", str(files / "neg.txt")]) == EXIT_USAGE
    assert main(["test", "--test", "gini", "--data", str(files / "empty.txt")]) == EXIT_USAGE
    assert main(["test", "--test", "gini", "--data", str(files / "missing.txt")]) == EXIT_USAGE
    assert main(["test", "--test", "gini", "--kind", "kolmogorov", "--data",
                 str(files / "pair.txt")]) == EXIT_USAGE
    assert main(["test", "--test", "gini", "--data", str(files / "pair.txt"),
                 "--alpha", "1.5"]) == EXIT_USAGE
    assert main(["test", "--test", "gini", "--data", str(files / "pair.txt"),
                 "--reps", "10"]) == EXIT_USAGE
    assert main(["bogus"]) == EXIT_USAGE
    assert main([]) == EXIT_USAGE


def test_critical_values_command(cache_dir, capsys):
    code, rep = _json(capsys, ["critical-values", "--test", "moran", "--n", "20", "--reps",
                               "500", "--alpha", "0.1", "0.05", "0.01"])
    assert code == 0
    cv = rep["critical_values"]
    assert cv["0.1"] <= cv["0.05"] <= cv["0.01"]
    assert list(cache_dir.iterdir())


def test_power_command(cache_dir, tmp_path, capsys):
    out = tmp_path / "curve.csv"
    code, rep = _json(capsys, ["power", "--test", "desu", "--alt", "weibull", "--theta", "0",
                               "1.0", "--n", "50", "--reps", "1000", "--csv", str(out)])
    assert code == 0
    curve = rep["extra"]["curve"]
    assert curve[0]["ci_low"] <= 0.05 <= curve[0]["ci_high"]
    assert curve[1]["estimate"] > curve[0]["estimate"]
    assert out.read_text().splitlines()[0] == "theta,estimate,ci_low,ci_high,rejections"


def test_power_incompatible_alternative(capsys):
    assert main(["power", "--test", "desu", "--alt", "shift-normal", "--theta", "0.5"]) == \
        EXIT_USAGE
    assert main(["power", "--test", "desu", "--alt", "weibull", "--theta", "-1"]) == EXIT_USAGE


def test_efficiency_command(capsys):
    code, rep = _json(capsys, ["efficiency", "--test", "desu", "--kind", "integral", "--alt",
                               "weibull"])
    assert code == 0
    assert rep["statistic"] == pytest.approx(0.697, abs=0.005)
    assert main(["efficiency", "--test", "desu", "--kind", "integral", "--alt",
                 "shift-normal"]) == EXIT_USAGE
    assert main(["efficiency", "--test", "bh-symmetry", "--kind", "integral", "--alt",
                 "shift-symmetric"]) == EXIT_USAGE


def test_efficiency_numeric_failure_exit_code(monkeypatch, capsys):
    from chartests import bahadur
    from chartests.errors import NumericError

    def boom(*a, **k):
        raise NumericError("forced")

    monkeypatch.setattr(bahadur, "local_efficiency", boom)
    assert main(["efficiency", "--test", "gini", "--alt", "weibull"]) == EXIT_NUMERIC


def test_human_output(files, cache_dir, capsys):
    assert main(["test", "--test", "gini", "--data", str(files / "pair.txt"), "--reps",
                 "200"]) == 0
    out = capsys.readouterr().out
    assert "statistic" in out and "0.5" in out


def test_report_round_trip():
    r = RunReport(command=["test", "--test", "gini"], test="gini", n=3, statistic=0.1 + 0.2,
                  p_value=1 / 3, critical_values={"0.05": 0.123456789012345678}, seed=2**63,
                  timing=0.5, extra={"curve": [{"theta": 0.1, "estimate": 0.2}]})
    assert RunReport.from_json(r.to_json()) == r


def test_module_entry_point(files, tmp_path):
    env = {"CHARTESTS_CACHE_DIR": str(tmp_path / "c"), "PATH": "/usr/bin:/bin"}
    proc = subprocess.run([sys.executable, "-m", "chartests", "test", "--test", "gini",
                           "--data", str(files / "pair.txt"), "--reps", "100", "--json"],
                          capture_output=True, text=True, env=env)
    assert proc.returncode == 0, proc.stderr
    assert json.loads(proc.stdout)["statistic"] == 0.5


def test_ties_reported_in_report(tmp_path, cache_dir, capsys):
    p = tmp_path / "tied.txt"
    p.write_text("1.0\n1.0\n2.0\n3.5\n0.7\n2.2\n")
    code = main(["test", "--test", "desu", "--kind", "integral", "--data", str(p),
                 "--reps", "200", "--json"])
    out = capsys.readouterr()
    assert code == 0
    assert json.loads(out.out)["extra"]["ties"] is True
    assert "ties" in out.err
