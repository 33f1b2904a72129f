import json
import subprocess
import sys

import pytest

from critline.cli import RunConfig, UsageError, fmt_complex, main
from critline.forms import load_maass_table

FIELDS = ["T", "c", "l_one", "zeta2", "moment_re", "moment_im", "main_term", "residual_re",
          "residual_im", "ratio", "grid_step", "panels", "richardson_defect", "seconds"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_zeta_smoke(capsys):
    code, out, _ = run(capsys, "zeta", "--t", "0")
    assert code == 0
    assert out == "-1.46035450880959+0j\n"


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "critline", "zeta", "--t", "14.134725141734695"],
                       capture_output=True, text=True)
    assert p.returncode == 0
    assert abs(complex(p.stdout.strip())) <= 1e-12


def test_moment_without_form_is_usage_error(capsys):
    code, _, err = run(capsys, "moment")
    assert code == 2
    assert "usage:" in err and "--form" in err


@pytest.mark.parametrize("argv", [["zeta", "--t", "1", "--bogus"], ["frobnicate"], [], ["zeta", "--t", "x"]])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_domain_errors_exit_1(capsys):
    code, _, err = run(capsys, "lvalue", "--form", "maass", "--t", "5000")
    assert code == 1
    assert "TableTooShort" in err
    code, _, err = run(capsys, "moment", "--form", "delta", "--T", "40")
    assert code == 1
    assert "T >= 50" in err


def test_lvalue_real_point(capsys):
    code, out, _ = run(capsys, "lvalue", "--form", "delta", "--t", "0")
    assert code == 0
    assert complex(out) == pytest.approx(0.792122838646028, abs=1e-12)


def test_moment_json_byte_identical(capsys, tmp_path, monkeypatch):
    a, b, c = tmp_path / "a.json", tmp_path / "b.json", tmp_path / "c.json"
    argv = ["moment", "--form", "delta", "--T", "60", "--window-delta", "8"]
    assert main(argv + ["--out", str(a)]) == 0
    assert main(argv + ["--out", str(b), "--workers", "2"]) == 0
    monkeypatch.setenv("CRITLINE_WORKERS", "3")
    assert main(argv + ["--out", str(c)]) == 0
    assert a.read_bytes() == b.read_bytes() == c.read_bytes()
    rep = json.loads(a.read_text())
    assert list(rep) == FIELDS
    assert rep["T"] == 60 and rep["seconds"] == 0
    assert rep["residual_re"] == pytest.approx(rep["moment_re"] - rep["main_term"], abs=1e-12)


def test_moment_to_stdout(capsys):
    code, out, _ = run(capsys, "moment", "--form", "delta", "--T", "60", "--sharp")
    assert code == 0
    rep = json.loads(out)
    assert rep["c"] == 1


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# settings\nwindow_delta = 4\nworkers = 2\nrichardson-tol = 0.5\n")
    code, out, _ = run(capsys, "moment", "--form", "delta", "--T", "60", "--config", str(cfg))
    assert code == 0
    assert json.loads(out)["c"] == pytest.approx(0.75, abs=0.01)
    # the flag wins over the file
    code, out, _ = run(capsys, "moment", "--form", "delta", "--T", "60", "--config", str(cfg),
                       "--window-delta", "8")
    assert json.loads(out)["c"] == pytest.approx(0.875, abs=1e-9)


def test_config_richardson_tolerance(capsys, tmp_path):
    cfg = tmp_path / "tight.cfg"
    cfg.write_text("richardson_tol = 1e-30\n")
    code, _, err = run(capsys, "moment", "--form", "delta", "--T", "60", "--config", str(cfg))
    assert code == 1
    assert "GridTooCoarse" in err


@pytest.mark.parametrize("text", ["workers = 0\n", "richardson_tol = -1\n", "no equals sign\n",
                                  "workers = many\n"])
def test_bad_config(text):
    with pytest.raises(UsageError):
        RunConfig.from_text(text)


def test_bad_config_exit_code(capsys, tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("workers = 0\n")
    assert run(capsys, "zeta", "--t", "1", "--config", str(cfg))[0] == 2
    assert run(capsys, "zeta", "--t", "1", "--config", str(tmp_path / "missing.cfg"))[0] == 2
    assert run(capsys, "zeta", "--t", "1", "--workers", "0")[0] == 2


def test_config_keeps_unknown_keys():
    cfg = RunConfig.from_text("colour = blue  # trailing comment\n")
    assert cfg.extra == {"colour": "blue"}


def test_eigens(capsys, tmp_path):
    code, out, _ = run(capsys, "eigens", "--form", "delta", "--n", "3")
    assert code == 0
    rows = out.splitlines()
    assert rows[0] == "# form = delta"
    assert rows[1] == "1\t1"
    assert float(rows[2].split("\t")[1]) == pytest.approx(-24 / 2**5.5, abs=1e-14)


def test_ingest_roundtrip(capsys, tmp_path):
    f = load_maass_table()
    src = tmp_path / "primes.txt"
    src.write_text("".join(f"{p}\t{float(f.eigenvalues[p - 1])!r}\n" for p in (2, 3, 5, 7, 11, 13, 17, 19)))
    out = tmp_path / "table.txt"
    code, text, _ = run(capsys, "ingest", "--file", str(src), "--mu", str(f.mu), "--n-max", "20",
                        "--out", str(out))
    assert code == 0
    assert "n_max = 20" in text
    rows = out.read_text().splitlines()
    assert rows[0].startswith("# mu = ")
    assert len(rows) == 21
    # the written table feeds back in as the Maass form
    cfg = tmp_path / "m.cfg"
    cfg.write_text(f"maass_table = {out}\n")
    code, text, _ = run(capsys, "eigens", "--form", "maass", "--n", "4", "--config", str(cfg))
    assert code == 0
    assert float(text.splitlines()[4].split("\t")[1]) == pytest.approx(f.eigenvalues[3], abs=1e-12)


def test_ingest_missing_file(capsys, tmp_path):
    assert run(capsys, "ingest", "--file", str(tmp_path / "nope"), "--n-max", "5")[0] == 1


def test_kloosterman(capsys):
    code, out, _ = run(capsys, "kloosterman", "--a", "1", "--b", "1", "--c", "7")
    assert code == 0
    ratio = float(out.splitlines()[1].split("=")[1])
    assert 0 <= ratio <= 1


def test_bilinear(capsys):
    code, out, _ = run(capsys, "bilinear", "--M", "8", "--N", "8", "--C", "8", "--trials", "2", "--seed", "5")
    assert code == 0
    rows = out.splitlines()
    assert rows[0] == "trial,seed,ratio"
    assert [r.split(",")[1] for r in rows[1:]] == ["5", "7"]
    assert all(float(r.split(",")[2]) <= 20 for r in rows[1:])


def test_voronoi_check(capsys):
    code, out, _ = run(capsys, "voronoi-check", "--q", "1", "--a", "1", "--N", "10")
    assert code == 0
    assert float(out.splitlines()[0].split("=")[1]) <= 1e-4


def test_scaling_rejects_non_dyadic(capsys):
    code, _, err = run(capsys, "scaling", "--form", "delta", "--T", "100,200,300,400")
    assert code == 1
    assert "dyadic" in err


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 8
    assert all("PASS" in line for line in lines)


def test_fmt_complex_digits():
    assert fmt_complex(1 / 3 - 2j / 3) == "0.333333333333333-0.666666666666667j"
    assert fmt_complex(2.0) == "2+0j"
