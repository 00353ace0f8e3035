import json

import pytest

from weylext.cli import TSV_COLUMNS, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_ext_examples(capsys):
    assert run(capsys, "ext", "--a", "2", "--b", "3", "--k", "2", "--degree", "2")[:2] == (0, "Z_5\n")
    assert run(capsys, "ext", "--a", "1", "--b", "2", "--k", "2", "--degree", "2", "--skew")[:2] == (0, "Z_3\n")
    code, out, _ = run(capsys, "ext", "--a", "1", "--b", "3", "--k", "0", "--degree", "0")
    assert out == "Z\n"


def test_ext_json(capsys):
    code, out, _ = run(capsys, "ext", "--a", "2", "--b", "4", "--k", "2", "--degree", "2",
                       "--format", "json", "--generator")
    assert code == 0
    assert json.loads(out) == {"a": 2, "b": 4, "k": 2, "degree": 2, "coefficients": "weyl",
                               "free_rank": 0, "invariant_factors": [3], "generator_order": 3}


@pytest.mark.parametrize("argv", [
    ["ext", "--a", "2", "--b", "4", "--k", "5", "--degree", "2"],
    ["ext", "--a", "0", "--b", "4", "--k", "1", "--degree", "2"],
    ["ext", "--a", "1", "--b", "4", "--k", "1"],
    ["table", "--amin", "3", "--amax", "2", "--bmax", "3", "--degree", "2"],
    ["verify", "--suite", "nonsense"],
    ["verify", "--primes", "2,4"],
])
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_table_rows(capsys):
    code, out, err = run(capsys, "table", "--amax", "1", "--bmax", "2", "--degree", "2")
    lines = out.splitlines()
    assert code == 0
    assert lines[0].split("\t") == list(TSV_COLUMNS)
    assert lines[1:] == ["1\t2\t0\t0\t0\ttrue", "1\t2\t1\t0\t0\ttrue", "1\t2\t2\tZ_3\tZ_3\ttrue"]
    assert "cells" in err


def test_table_all_match(capsys):
    code, out, _ = run(capsys, "table", "--amax", "3", "--bmax", "5", "--degree", "2")
    rows = [line.split("\t") for line in out.splitlines()[1:]]
    assert len(rows) == 3 * sum(b + 1 for b in range(2, 6))
    assert all(r[5] == "true" for r in rows)


def test_table_degree_one_has_no_expected_column(capsys):
    code, out, _ = run(capsys, "table", "--amax", "2", "--bmax", "4", "--degree", "1")
    rows = [line.split("\t") for line in out.splitlines()[1:]]
    assert rows and all(r[4] == "" and r[5] == "" for r in rows)


def test_table_deterministic_across_jobs_and_cache(capsys, tmp_path, monkeypatch):
    argv = ["table", "--amax", "2", "--bmax", "4", "--degree", "2"]
    _, serial, _ = run(capsys, *argv)
    _, parallel, _ = run(capsys, *argv, "--jobs", "3")
    _, cached, _ = run(capsys, *argv, "--cache-dir", str(tmp_path / "c"))
    _, cached_again, _ = run(capsys, *argv, "--cache-dir", str(tmp_path / "c"))
    assert serial == parallel == cached == cached_again
    assert any((tmp_path / "c").iterdir())
    monkeypatch.setenv("WEYLEXT_CACHE", str(tmp_path / "env"))
    _, env, _ = run(capsys, *argv, "--cache-dir", str(tmp_path / "ignored"))
    assert env == serial
    assert (tmp_path / "env").exists() and not (tmp_path / "ignored").exists()


def test_table_json(capsys):
    code, out, _ = run(capsys, "table", "--amax", "1", "--bmax", "2", "--degree", "2", "--format", "json")
    rows = json.loads(out)
    assert [r["k"] for r in rows] == [0, 1, 2]
    assert rows[2]["invariant_factors"] == [3] and rows[2]["match"] == "true"


def test_verify_fixtures(capsys):
    code, out, err = run(capsys, "verify", "--suite", "fixtures")
    assert code == 0
    assert out.startswith("PASS fixtures")
    assert "fixtures:" in err


def test_verify_modular(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "modular", "--primes", "2,3,5", "--jobs", "2")
    assert code == 0 and out.startswith("PASS modular")


def test_verify_generators_reports_failure(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "generators", "--amax", "3", "--bmax", "6")
    assert code == 1
    assert "FAIL generators a=3 b=3" in out
    assert out.count("FAIL generators a=") == 1


def test_verify_small_ranges(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "phi", "--suite", "relations", "--amax", "2", "--bmax", "4")
    assert code == 0
    assert out.splitlines()[0].startswith("PASS phi") and "PASS relations" in out
