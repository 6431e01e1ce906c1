import dataclasses
import io
import json
import logging

import pytest

import gapbench
from commands.oeis import REGISTRY, Generator
from gapbench import EXIT_IDENTITY_FAILED, EXIT_OK, EXIT_USAGE, GapBench, main
from gapseries.enumerate import GapClass
from gapseries.reciprocity import build_gamma, build_mu, overpartition_counts
from tests.test_reciprocity import GAMMA_G2, MU_G2


@pytest.fixture
def bench(monkeypatch, tmp_path):
    monkeypatch.setenv("GAPSERIES_DATABASE", str(tmp_path / "database.db"))
    monkeypatch.setenv("GAPSERIES_LOG_FILE", str(tmp_path / "gapbench.log"))

    def run(*argv):
        out, err = io.StringIO(), io.StringIO()
        host = GapBench(out=out, err=err)
        host.load_commands()
        code = host.run(list(argv))
        return code, out.getvalue(), err.getvalue()

    return run


def test_every_group_is_loaded():
    host = GapBench(out=io.StringIO())
    host.load_commands()
    assert set(host.groups) == {"count", "history", "matrix", "oeis", "series", "verify"}


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["count", "compositions", "--n", "4", "--g", "2", "--s", "1"], "7"),
        (["count", "partitions", "--n", "0", "--g", "5", "--s", "3"], "1"),
        (["count", "compositions", "--n", "10", "--g", "1", "--s", "1"], "42"),
        (["count", "compositions", "--n", "5", "--g", "2", "--m-step", "1"], "6"),
    ],
)
def test_count(bench, argv, expected):
    code, out, _ = bench(*argv)
    assert code == EXIT_OK
    assert out == expected + "\n"


def test_count_list(bench):
    code, out, _ = bench("count", "partitions", "--n", "4", "--g", "2", "--list")
    assert code == EXIT_OK
    assert out.splitlines() == ["(1,3)", "(4)"]


def test_count_rejects_flags_of_the_other_kind(bench):
    code, _, err = bench("count", "partitions", "--n", "4", "--m-step", "2")
    assert code == EXIT_USAGE
    assert "--m-step" in err
    code, _, err = bench("count", "compositions", "--n", "4", "--max-part", "2")
    assert code == EXIT_USAGE
    assert "--max-part" in err


def test_missing_required_flag(bench):
    code, _, _ = bench("count", "partitions")
    assert code == EXIT_USAGE


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["series", "C", "--g", "2", "--s", "1", "--N", "6", "--at-x", "1"], "1 1 2 4 7 13 23"),
        (["series", "Ple", "--g", "1", "--s", "1", "--m", "3", "--N", "6", "--at-x", "-1"], "1 -1 -1 0 1 1 -1"),
        (["series", "P", "--g", "0", "--s", "1", "--N", "0", "--L", "0"], "x^0: 1"),
        (["series", "C", "--g", "2", "--N", "4", "--at-x", "1", "--format", "csv"], "1,1,2,4,7"),
    ],
)
def test_series(bench, argv, expected):
    code, out, _ = bench(*argv)
    assert code == EXIT_OK
    assert out == expected + "\n"


def test_series_json(bench):
    code, out, _ = bench("series", "Cge", "--g", "2", "--m", "1", "--N", "6", "--at-x", "1", "--format", "json")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["coeffs"] == [1, 1, 2, 4, 7, 13, 23]
    assert payload["m"] == 1


def test_series_needs_m(bench):
    code, _, err = bench("series", "Ple", "--g", "1", "--N", "6")
    assert code == EXIT_USAGE
    assert "--m" in err


def test_matrix_gamma_csv(bench):
    code, out, _ = bench("matrix", "gamma", "--g", "2", "--s", "1", "--dim", "12", "--format", "csv")
    assert code == EXIT_OK
    assert [[int(v) for v in line.split(",")] for line in out.splitlines()] == GAMMA_G2


def test_matrix_mu_json(bench):
    code, out, _ = bench("matrix", "mu", "--g", "2", "--s", "1", "--dim", "12", "--format", "json")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["kind"] == "mu"
    assert payload["dim"] == 12
    assert payload["entries"] == MU_G2


def test_matrix_mu_needs_positive_gap(bench):
    code, out, err = bench("matrix", "mu", "--g", "0", "--s", "1", "--dim", "5")
    assert code == EXIT_USAGE
    assert out == ""
    assert "g >= 1" in err


def test_matrix_product_pretty(bench):
    code, out, _ = bench("matrix", "product", "--g", "0,1", "--dim", "20")
    assert code == EXIT_OK
    rows = [[int(v) for v in line.split()] for line in out.splitlines()]
    assert [rows[2 * k + 1][k + 1] for k in range(9)] == overpartition_counts(8)


def test_verify_inverse(bench):
    code, out, _ = bench("verify", "inverse", "--g", "2", "--s", "1", "--dim", "12")
    assert code == EXIT_OK
    assert out.startswith("PASS  inverse")
    assert out.splitlines()[-1] == "1/1 checks passed"


def test_verify_inverse_with_corrupted_cell(bench):
    code, out, _ = bench("verify", "inverse", "--g", "2", "--s", "1", "--dim", "12", "--corrupt", "3,2")
    assert code == EXIT_IDENTITY_FAILED
    assert "FAIL" in out
    assert "mu*gamma(3,1)" in out


def test_verify_series_suite_with_corrupted_coefficient(bench):
    code, out, _ = bench("verify", "kidentity", "--g", "2", "--s", "1", "--m", "1", "--N", "10", "--corrupt", "4")
    assert code == EXIT_IDENTITY_FAILED
    assert "at q^4" in out


def test_verify_rejects_corrupt_for_unsupported_suites(bench):
    code, _, err = bench("verify", "involution", "--corrupt", "2")
    assert code == EXIT_USAGE
    assert "--corrupt" in err
    code, _, _ = bench("verify", "inverse", "--dim", "5", "--corrupt", "2,3")
    assert code == EXIT_USAGE


def test_verify_small_ranges_of_every_suite(bench):
    for argv in (
        ["verify", "kidentity", "--g", "0-2", "--s", "1,2", "--m", "1-3", "--N", "15"],
        ["verify", "gm", "--g", "1", "--s", "1", "--m", "1,2", "--N", "8"],
        ["verify", "euler", "--m", "1-4", "--N", "15"],
        ["verify", "involution", "--g", "2", "--s", "1", "--bound", "8"],
        ["verify", "oracle", "--g", "1", "--s", "1", "--N", "8", "--L", "4", "--m", "3"],
        ["verify", "gamma", "--k", "4"],
    ):
        code, out, _ = bench(*argv)
        assert code == EXIT_OK, out
        assert "FAIL" not in out


def test_verify_with_workers_keeps_cell_order(bench):
    code, out, _ = bench("verify", "inverse", "--g", "1-3", "--s", "1", "--dim", "10", "--workers", "2")
    assert code == EXIT_OK
    rows = out.splitlines()[:-1]
    assert [row.split()[2] for row in rows] == ["g=1", "g=2", "g=3"]


def test_verify_from_file_round_trip(bench, tmp_path):
    code, out, _ = bench("matrix", "mu", "--g", "3", "--s", "2", "--dim", "10", "--format", "json")
    assert code == EXIT_OK
    path = tmp_path / "mu.json"
    path.write_text(out, encoding="utf-8")
    code, out, _ = bench("verify", "inverse", "--from-file", str(path))
    assert code == EXIT_OK
    assert "g=3 s=2 dim=10" in out


def test_verify_from_file_with_both_csv_matrices(bench, tmp_path):
    cls = GapClass(2, 1)
    mu_path, gamma_path = tmp_path / "mu.csv", tmp_path / "gamma.csv"
    mu_path.write_text(build_mu(cls, 8).to_csv(), encoding="utf-8")
    gamma_path.write_text(build_gamma(cls, 8).to_csv(), encoding="utf-8")
    code, _, err = bench("verify", "inverse", "--from-file", str(mu_path))
    assert code == EXIT_USAGE
    assert "--kind" in err
    code, _, _ = bench(
        "verify", "inverse", "--from-file", str(mu_path), "--kind", "mu", "--g", "2", "--s", "1"
    )
    assert code == EXIT_OK


def test_verify_from_file_with_corrupted_entry(bench, tmp_path):
    mu = build_mu(GapClass(2, 1), 12)
    corrupted = mu.with_entry(5, 2, mu[5, 2] + 1)
    path = tmp_path / "mu.json"
    path.write_text(corrupted.to_json(g=2, s=1, kind="mu"), encoding="utf-8")
    code, out, _ = bench("verify", "inverse", "--from-file", str(path))
    assert code == EXIT_IDENTITY_FAILED
    assert "mu*gamma(5,1)" in out


@pytest.mark.parametrize(
    "text",
    [
        "{not json",
        "1,0\nx,1\n",
        '{"kind": "mu", "g": 2, "s": 1, "dim": 2, "entries": [[1, 0], [1.7, 1]]}',
        '{"kind": "mu", "g": [2], "s": 1, "dim": 2, "entries": [[1, 0], [-1, 1]]}',
        '{"kind": "mu", "g": 2, "s": 1, "entries": [[1, 0], [-1, 1]]}',
    ],
    ids=["bad-json", "bad-csv-cell", "float-entry", "list-g", "no-dim"],
)
def test_verify_from_file_rejects_malformed_matrices(bench, tmp_path, text):
    path = tmp_path / "matrix.txt"
    path.write_text(text, encoding="utf-8")
    code, out, err = bench("verify", "inverse", "--from-file", str(path), "--kind", "mu", "--g", "2", "--s", "1")
    assert code == EXIT_USAGE
    assert out == ""
    assert "--from-file cannot read" in err


def test_verify_from_file_with_a_missing_path(bench, tmp_path):
    code, _, err = bench("verify", "inverse", "--from-file", str(tmp_path / "absent.json"))
    assert code == EXIT_USAGE
    assert "--from-file cannot read" in err


def test_series_at_x_refuses_a_short_x_truncation(bench):
    code, out, err = bench("series", "C", "--g", "2", "--N", "6", "--L", "1", "--at-x", "1")
    assert code == EXIT_USAGE
    assert out == ""
    assert "--L" in err
    code, out, _ = bench("series", "C", "--g", "2", "--N", "6", "--L", "6", "--at-x", "1")
    assert code == EXIT_OK
    assert out == "1 1 2 4 7 13 23\n"


def test_main_refuses_an_unknown_log_level(monkeypatch, tmp_path, capsys):
    monkeypatch.setenv("GAPSERIES_LOG_LEVEL", "LOUD")
    monkeypatch.setenv("GAPSERIES_LOG_FILE", str(tmp_path / "gapbench.log"))
    assert main(["history"]) == EXIT_USAGE
    assert "GAPSERIES_LOG_LEVEL" in capsys.readouterr().err


def test_main_stops_when_a_command_group_fails_to_load(monkeypatch, tmp_path, capsys):
    monkeypatch.setenv("GAPSERIES_DATABASE", str(tmp_path / "database.db"))
    monkeypatch.setenv("GAPSERIES_LOG_FILE", str(tmp_path / "gapbench.log"))
    import_module = gapbench.importlib.import_module

    def broken_import(name, *args, **kwargs):
        if name == "commands.oeis":
            raise ImportError("broken on purpose")
        return import_module(name, *args, **kwargs)

    monkeypatch.setattr(gapbench.importlib, "import_module", broken_import)
    monkeypatch.setattr(gapbench, "setup_logger", lambda: logging.getLogger("gapseries"))
    host = GapBench(out=io.StringIO(), err=io.StringIO())
    host.load_commands()
    assert host.failed_groups == ["oeis"]
    assert "oeis" not in host.groups

    assert main(["count", "partitions", "--n", "4"]) == EXIT_USAGE
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "failed to load command group(s) oeis" in captured.err


def test_oeis_gap_compositions(bench):
    code, out, _ = bench("oeis", "gap-compositions", "--g", "2", "--s", "1", "--count", "7")
    assert code == EXIT_OK
    assert out == "0 1\n1 1\n2 2\n3 4\n4 7\n5 13\n6 23\n"


def test_oeis_offset_and_registry(bench):
    code, out, _ = bench("oeis", "partitions", "--count", "1")
    assert out == "0 1\n"
    code, out, _ = bench("oeis", "partitions", "--count", "3", "--offset", "10")
    assert out == "10 42\n11 56\n12 77\n"
    code, out, _ = bench("oeis", "distinct-partitions", "--count", "6")
    assert out == "0 1\n1 1\n2 1\n3 2\n4 2\n5 3\n"
    code, out, _ = bench("oeis", "overpartitions", "--count", "9")
    assert [int(line.split()[1]) for line in out.splitlines()] == overpartition_counts(8)
    code, out, _ = bench("oeis", "m-step", "--g", "2", "--m", "1", "--count", "6")
    assert out.splitlines()[-1] == "5 6"


def test_oeis_unknown_sequence(bench):
    code, _, err = bench("oeis", "fibonacci")
    assert code == EXIT_USAGE
    assert "unknown sequence" in err
    code, _, err = bench("oeis", "m-step")
    assert code == EXIT_USAGE
    assert "--m" in err


def test_oeis_registry_entries_are_frozen():
    assert all(isinstance(generator, Generator) for generator in REGISTRY.values())
    assert [name for name, generator in REGISTRY.items() if generator.needs_bound] == ["m-step"]
    with pytest.raises(dataclasses.FrozenInstanceError):
        REGISTRY["partitions"].needs_bound = True


def test_record_and_history(bench):
    code, out, _ = bench("history")
    assert code == EXIT_OK
    assert out == "No recorded runs.\n"
    bench("verify", "inverse", "--g", "1,2", "--s", "1", "--dim", "6", "--record")
    bench("verify", "kidentity", "--g", "1", "--s", "1", "--m", "1", "--N", "6", "--corrupt", "2", "--record")
    code, out, _ = bench("history", "--limit", "5")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert len(lines) == 3
    assert "FAIL" in lines[0] and "kidentity" in lines[0] and "at q^2" in lines[0]
    code, out, _ = bench("history", "--suite", "inverse")
    assert len(out.splitlines()) == 2
    assert all("PASS" in line for line in out.splitlines())
