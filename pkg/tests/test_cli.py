import json
import subprocess
import sys

from hellylab import cli, codes
from hellylab.serialize import family_to_json
from hellylab.geometry import Box


def test_intersect(run_cli, w4_files):
    F, S = w4_files
    code, r = run_cli("intersect", "--family", F, "--tuple", "1,2", "--s", S)
    assert code == 0 and r["intersection"] == {"min": ["2", "4"], "max": ["8", "7"]}
    assert r["S_intersecting"] is True
    code, r = run_cli("intersect", "--family", F, "--tuple", "1,2,3", "--s", S)
    assert r["S_intersecting"] is False


def test_sigma(run_cli, write_json):
    F = write_json("f.json", {"d": 1, "boxes": [{"min": ["2"], "max": ["9"]}, {"min": [0], "max": ["7"]}]})
    code, r = run_cli("sigma", "--family", F)
    assert code == 0 and [o["perm"] for o in r["orders"]] == [[2, 1], [1, 2]]


def test_dep(run_cli, write_json):
    A = write_json("a.json", {"n": 4, "perms": [[1, 2, 3, 4], [2, 1, 4, 3]]})
    code, r = run_cli("dep", "--perms", A, "--P", "1,4")
    assert (code, r["value"], r["dependent_set"]) == (0, 1, [1, 2, 4])
    code, r = run_cli("dep", "--perms", A, "--p", "2")
    assert (r["value"], r["P"]) == (2, [3, 4])
    code, r = run_cli("dep", "--perms", A)
    assert code == 1


def test_pattern_graph(run_cli, write_json):
    A = write_json("a.json", {"n": 3, "perms": [[1, 2, 3], [3, 2, 1]]})
    code, r = run_cli("pattern-graph", "--perms", A)
    assert code == 0 and r["longest_path"] == [1, 2, 3] and r["dependency_lower_bound"] == 1
    # without the identity the set is normalized by its first member
    A = write_json("b.json", {"n": 3, "perms": [[3, 2, 1]]})
    code, r = run_cli("pattern-graph", "--perms", A)
    assert code == 0 and r["members"] == [] and r["num_colors"] == 1


def test_perm_examples(run_cli):
    assert run_cli("perm-delete", "--perm", "15672834", "--v", "6")[1]["one_line"] == "1562734"
    assert run_cli("perm-delete", "--perm", "15672834", "--v", "3")[1]["one_line"] == "1456273"
    assert run_cli("perm-quotient", "--perm", "15672834", "--v", "6")[1]["one_line"] == "1567234"
    assert run_cli("perm-quotient", "--perm", "231", "--v", "2")[1]["result"] == [2, 1]
    code, r = run_cli("perm-quotient", "--perm", "231", "--v", "4")
    assert code == 1 and "error" in r


def test_code(run_cli, w4_files):
    code, r = run_cli("code", "--family", w4_files[0])
    pairs = [w["members"] for w in r["codewords"] if len(w["members"]) == 2]
    assert code == 0 and len(pairs) == 6


def test_witness_n2(run_cli, tmp_path):
    svg = tmp_path / "w.svg"
    code, r = run_cli("witness-n2", "--reference", "--svg", svg)
    assert code == 0 and r["validation"]["valid"]
    assert r["family"] == family_to_json(codes.w4_family())
    assert svg.read_text().startswith("<svg")
    code, r = run_cli("witness-n2")
    assert code == 0 and r["validation"]["max_subfamily"] == 2


def test_lower_bound(run_cli):
    code, r = run_cli("lower-bound", "-d", "9")
    assert code == 0 and r["validation"] == {"n": 12, "pair_count": 66, "max_subfamily": 8, "valid": True}
    assert run_cli("lower-bound", "-d", "3")[0] == 1


def test_search_and_recurrence(run_cli):
    code, r = run_cli("search-n", "-a", 2, "-b", 2, "-p", 2, "--nmax", 3)
    assert code == 0 and r["empirical_n"] == 3
    code, r = run_cli("search-n", "-a", 4, "-b", 2, "-p", 3, "--nmax", 5, "--nmin", 5)
    assert code == 0 and r["rows"][0]["status"] == "counterexample"
    code, r = run_cli("recurrence", "-a", 1, "-b", 1, "-p", 2, "--nmax", 3)
    assert code == 0 and r["status"] == "verified"


def test_pipeline(run_cli, w4_files, tmp_path):
    F, S = w4_files
    code, r = run_cli("pipeline", "--family", F, "--s", S, "--N", 4, "--svg", tmp_path / "p.svg")
    assert code == 0 and r["pair_density"] == "1" and r["max_fraction"] == "1/2"
    assert r["tuple_forcing"]["counterexample_candidate"] is True
    assert r["double_counting"]["holds"] is False


def test_verify_n2(run_cli):
    code, r = run_cli("verify-n2", "--no-timing")
    assert code == 0 and r["covered_count"] == 0 and "elapsed" not in r


def test_check_all(run_cli):
    code, r = run_cli("check-all", "--trials", 3)
    assert code == 0 and r["all_passed"] and not r["failed"]


def test_check_all_negative_control(run_cli, write_json, w4_files):
    bad = codes.w4_family().replace(3, Box((2, 1), (7, 8)))
    F = write_json("bad.json", family_to_json(bad))
    code, r = run_cli("check-all", "--trials", 2, "--family", F, "--s", w4_files[1])
    assert code == 2 and "fixture.witness_no_S_triple" in r["failed"]


def test_usage_errors(run_cli, tmp_path):
    assert run_cli("check-all", "--trials", 0)[0] == 1
    assert run_cli("bogus")[0] == 1
    assert run_cli("dep", "--perms", tmp_path / "missing.json")[0] == 1
    assert run_cli("verify-n2", "--workers", 0)[0] == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, r = run_cli("code", "--family", bad)
    assert code == 1 and "line 1" in r["error"]


def test_invalid_family_schema(run_cli, write_json):
    F = write_json("f.json", {"d": 2, "boxes": [{"min": ["0"], "max": ["1", "2"]}]})
    code, r = run_cli("code", "--family", F)
    assert code == 1


def test_out_file(tmp_path, w4_files):
    out = tmp_path / "r.json"
    assert cli.main(["lower-bound", "-d", "4", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["validation"]["valid"]


def test_byte_identical_across_runs_and_workers(capsys):
    outputs = []
    for workers in ("1", "1", "2"):
        argv = ["search-n", "-a", "3", "-b", "3", "-p", "2", "--nmax", "5", "--no-timing", "--workers", workers]
        assert cli.main(argv) == 0
        outputs.append(capsys.readouterr().out)
    for workers in ("1", "2"):
        assert cli.main(["check-all", "--trials", "4", "--seed", "9", "--no-timing", "--workers", workers]) == 0
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1] == outputs[2]
    assert outputs[3] == outputs[4]


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hellylab", "perm-delete", "--perm", "15672834", "--v", "3"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["one_line"] == "1456273"
    proc = subprocess.run([sys.executable, "-m", "hellylab"], capture_output=True, text=True, check=False)
    assert proc.returncode == 1 and "hellylab:" in proc.stderr


def test_every_command_has_a_schema():
    from hellylab.serialize import load_schema

    for name in list(cli.COMMANDS) + ["family", "points", "perms", "error"]:
        assert load_schema(name)["type"] == "object"
