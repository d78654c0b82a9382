import io
import json
import subprocess
import sys

import pytest

from chatelet_manin.points import count_points
from chatelet_manin.surface import validate
from chatelet_manin.cli import config_from_args, load_config, main, run


def _run(argv):
    buf = io.StringIO()
    code = run(config_from_args(argv), buf)
    return code, buf.getvalue()


def test_count_row():
    code, out = _run(["count", "--bound", "25"])
    lines = out.splitlines()
    assert code == 0
    assert lines[0].startswith("# chatelet-manin")
    assert lines[1] == "B,nondegenerate,degenerate"
    assert lines[2] == "25,16,4"


def test_flags_before_subcommand():
    assert _run(["--bound", "25", "--surface", "1,1,1,-1", "count"])[1].splitlines()[2] == "25,16,4"


def test_count_bounds_jsonl():
    code, out = _run(["count", "--bounds", "24,25", "--format", "jsonl"])
    rows = [json.loads(x) for x in out.splitlines()]
    assert rows == [{"B": 24, "nondegenerate": 0, "degenerate": 4},
                    {"B": 25, "nondegenerate": 16, "degenerate": 4}]


def test_crosscheck_ok():
    code, out = _run(["crosscheck", "--bound", "200"])
    assert code == 0 and out.strip() == "OK: 200/200 values equal"


def test_crosscheck_reports_mismatch():
    code, out = _run(["crosscheck", "--bound", "2025"])
    assert code == 1 and "first mismatch at B=2025" in out
    code, out = _run(["crosscheck", "--bound", "2025", "--t-weight", "primitive"])
    assert code == 0


def test_points_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert _run(["points", "--bound", "300", "--out", str(a)])[0] == 0
    assert _run(["points", "--bound", "300", "--out", str(b)])[0] == 0
    assert a.read_bytes() == b.read_bytes()
    rows = a.read_text().splitlines()[2:]
    assert len(rows) == sum(count_points(validate(1, 1, 1, -1), 300))
    for r in rows:
        f = r.split(",")
        if f[11] != "none":
            assert (f[11], f[12]) in (("black", "A"), ("white", "B"))


def test_config_file(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# comment\nbound = 25\nformat = jsonl\n")
    c = config_from_args(["count", "--config", str(cfg)])
    assert c.bound == 25 and c.format == "jsonl"
    assert config_from_args(["count", "--config", str(cfg), "--bound", "30"]).bound == 30
    bad = tmp_path / "bad.cfg"
    bad.write_text("bound = 25\nfoo = 1\n")
    with pytest.raises(ValueError, match=r"bad.cfg:2: unknown key 'foo'"):
        load_config(str(bad))
    js = tmp_path / "run.json"
    js.write_text('{"bounds": [24, 25], "surface": [1, 2, 1, 3]}')
    c = config_from_args(["count", "--config", str(js)])
    assert c.bounds == (24, 25) and c.surface == (1, 2, 1, 3)


def test_errors_exit_2(capsys):
    assert main(["count", "--bound", "10", "--surface", "1,1,1,1"]) == 2
    assert "chatelet-manin: error:" in capsys.readouterr().err
    assert main(["count"]) == 2
    assert main(["count", "--bound", "0"]) == 2


def test_constant_json():
    code, out = _run(["constant", "--lmax", "1", "--bmax", "1"])
    d = json.loads(out)
    assert code == 0
    assert d["terms"] == 2 and d["tors"] == 256 and d["surface"] == [1, 1, 1, -1]
    assert abs(d["c_limit"] - 0.113405) < 1e-4 and d["c_primitive"] < d["c_limit"]


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "chatelet_manin", "count", "--bound", "25"],
                       capture_output=True, text=True, check=True)
    assert p.stdout.splitlines()[-1] == "25,16,4"
