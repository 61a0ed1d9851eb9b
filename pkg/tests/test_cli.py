"""The klab executable: argument wiring and exit codes."""

import csv
import io
import json

import pytest

from klab.cli import main


class TestExitCodes:
    def test_success(self, capsys):
        code = main(
            ["verify-identity", "--p", "101", "--H", "4", "--ell", "1",
             "--deterministic"]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "verify-identity" in out

    def test_usage_error_composite_p(self, capsys):
        code = main(["verify-identity", "--p", "91", "--H", "4"])
        assert code == 1
        captured = capsys.readouterr()
        assert captured.out == ""
        assert "error:" in captured.err

    def test_usage_error_unknown_flag(self, capsys):
        code = main(["verify-identity", "--p", "101", "--frobnicate"])
        assert code == 1
        assert "error:" in capsys.readouterr().err

    def test_usage_error_missing_subcommand(self, capsys):
        code = main([])
        assert code == 1
        assert "subcommand" in capsys.readouterr().err

    def test_usage_error_bad_token(self, capsys):
        code = main(["verify-lemma1", "--p", "101", "--H", "x..y"])
        assert code == 1


class TestWiring:
    def test_multiple_moduli(self, capsys):
        code = main(
            ["verify-lemma1", "--p", "101", "997", "--H", "8", "--ell", "2",
             "--deterministic"]
        )
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
        assert [r["p"] for r in rows] == ["101", "997"]

    def test_json_flag(self, capsys):
        code = main(
            ["scan-hooley", "--p", "101", "--H", "16", "--ell", "1",
             "--format", "json", "--deterministic"]
        )
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload[0]["command"] == "scan-hooley"

    def test_out_file(self, tmp_path, capsys):
        out = tmp_path / "rows.csv"
        code = main(
            ["bench", "--p", "101", "--H", "4", "--out", str(out),
             "--deterministic"]
        )
        assert code == 0
        assert capsys.readouterr().out == ""
        assert out.exists()
        header = out.read_text().splitlines()[0]
        assert header == "command,p,H,windows,wall_time_ms"

    def test_solve_flags(self, capsys):
        code = main(
            ["solve", "--p", "997", "--H", "60", "--K", "60", "--J", "4",
             "--seed", "9", "--mode", "equally-spaced", "--deterministic"]
        )
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
        assert rows[0]["J"] == "4"

    def test_version(self, capsys):
        with pytest.raises(SystemExit) as exc_info:
            main(["--version"])
        assert exc_info.value.code == 0
        assert "klab" in capsys.readouterr().out

    def test_deterministic_reruns_identical(self, capsys):
        argv = ["verify-mvt", "--p", "101", "--H", "8", "--ell", "5",
                "--J", "6", "--deterministic"]
        main(argv)
        first = capsys.readouterr().out
        main(argv)
        second = capsys.readouterr().out
        assert first == second
