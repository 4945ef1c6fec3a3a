import json
import subprocess
import sys

import pytest

from cantornet.cantor import kraft_check
from cantornet.cli import main
from cantornet.fixtures import emit_fixtures


@pytest.fixture
def fx(tmp_path):
    emit_fixtures(tmp_path)
    return tmp_path


def run(capsys, *argv):
    status = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return status, out, err


def test_emit_fixtures_deterministic(tmp_path):
    first = [p.read_bytes() for p in emit_fixtures(tmp_path / "one")]
    second = [p.read_bytes() for p in emit_fixtures(tmp_path / "two")]
    assert first == second


def test_validate_fixtures(capsys, fx):
    assert run(capsys, "validate", fx / "phaseA.json") == (0, "phase1: s=2, M=5, edges=4\n", "")
    assert run(capsys, "validate", fx / "phaseB.json") == (0, "phase2: M=5, edges=5\n", "")


def test_invariants_json(capsys, fx):
    status, out, _ = run(capsys, "invariants", fx / "phaseA.json", "--json")
    assert status == 0
    assert json.loads(out)["result"]["components"] == 2


def test_diff_json(capsys, fx):
    status, out, _ = run(capsys, "diff", fx / "phaseA.json", fx / "phaseB.json", "--atom", "a2", "--json")
    report = json.loads(out)
    assert status == 0 and report["ok"]
    assert (report["result"]["J"], report["result"]["p"], report["result"]["q"]) == ([0], 2, 2)
    assert report["schema"] == "cantornet/1"


def test_compare_text(capsys, fx):
    status, out, _ = run(capsys, "compare", fx / "phaseA.json", fx / "phaseB.json")
    assert status == 0 and out == "NOT HOMEOMORPHIC: components 2 vs 1\n"


def test_encode_round_trip_passes_kraft(capsys, fx):
    for name, table in (("phaseA.json", "K"), ("phaseB.json", "L")):
        _, out, _ = run(capsys, "encode", fx / name, "--json")
        result = json.loads(out)["result"]
        if table == "K":
            assert kraft_check(list(result["J"].values())).complete
            assert all(kraft_check(c).complete for c in result["K"].values())
        else:
            assert kraft_check(result["L"]).complete


def test_fiber_outputs(capsys, fx):
    status, out, _ = run(capsys, "fiber", fx / "phaseA.json", "--edge-point", "c1:1:1/2", "--json")
    parts = json.loads(out)["result"]["fiber"]["parts"]
    assert status == 0 and len(parts) == 2
    assert [p["tail"]["stream"] for p in parts] == [{"prefix": [1], "cycle": [0]}, {"prefix": [0], "cycle": [1]}]
    status, out, _ = run(capsys, "fiber", fx / "phaseB.json", "--edge-point", "2:1/3")
    assert status == 0 and "1 part(s)" in out
    status, out, _ = run(capsys, "fiber", fx / "phaseB.json", "--atom", "a2")
    assert status == 0 and "2 part(s)" in out


def test_check(capsys, fx):
    status, out, _ = run(capsys, "check", fx / "phaseA.json", "--depth", "4")
    assert status == 0 and "PASS" in out
    status, _, err = run(capsys, "check", fx / "phaseA.json", "--depth", "1")
    assert status == 1 and "DepthTooSmall" in err


def test_output_flag(capsys, fx, tmp_path):
    target = tmp_path / "report.json"
    status, out, _ = run(capsys, "--json", "--output", target, "validate", fx / "phaseA.json")
    assert status == 0 and out == ""
    assert json.loads(target.read_text())["result"]["s"] == 2


def test_determinism(capsys, fx):
    argv = ("diff", fx / "phaseA.json", fx / "phaseB.json", "--atom", "a4", "--json")
    assert run(capsys, *argv) == run(capsys, *argv)


@pytest.mark.parametrize(
    "content, error",
    [
        ("{not json", "MalformedJSON"),
        ('{"schema": "cantornet/1", "kind": "phase1", "clusters": [{"id": "c", "atoms": ["a", "b"], "bonds": [["a", "a"]]}]}', "SelfLoop"),
        ('{"schema": "cantornet/1", "kind": "phase2", "atoms": ["a", "b", "c"], "bonds": [["a", "b"]]}', "IsolatedAtom"),
        ('{"schema": "cantornet/1", "kind": "phase2", "atoms": ["a", "b", "c", "d"], "bonds": [["a", "b"], ["c", "d"]]}', "Disconnected"),
        ('{"schema": "cantornet/2", "kind": "phase2"}', "SchemaError"),
    ],
)
def test_domain_errors_exit_one(capsys, tmp_path, content, error):
    bad = tmp_path / "bad.json"
    bad.write_text(content)
    status, out, err = run(capsys, "validate", bad)
    assert status == 1 and error in err and out == ""
    status, out, _ = run(capsys, "validate", bad, "--json")
    report = json.loads(out)
    assert status == 1 and not report["ok"] and report["diagnostics"][0]["error"] == error


def test_missing_file_exit_one(capsys, tmp_path):
    status, _, err = run(capsys, "validate", tmp_path / "absent.json")
    assert status == 1 and "FileError" in err


def test_domain_errors_in_fiber_and_diff(capsys, fx):
    assert run(capsys, "fiber", fx / "phaseA.json", "--edge-point", "c1:1:0")[0] == 1
    assert run(capsys, "fiber", fx / "phaseA.json", "--atom", "zz")[0] == 1
    assert run(capsys, "diff", fx / "phaseA.json", fx / "phaseA.json", "--atom", "a1")[0] == 1


def test_usage_errors_exit_two(capsys, fx):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["diff", str(fx / "phaseA.json")])
    assert info.value.code == 2
    capsys.readouterr()
    assert run(capsys, "fiber", fx / "phaseA.json", "--edge-point", "c1:x:1/2")[0] == 2


def test_module_entry_point(fx):
    proc = subprocess.run(
        [sys.executable, "-m", "cantornet", "compare", str(fx / "phaseA.json"), str(fx / "phaseB.json")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stdout == "NOT HOMEOMORPHIC: components 2 vs 1\n"
    proc = subprocess.run([sys.executable, "-m", "cantornet"], capture_output=True, text=True)
    assert proc.returncode == 2
