import json

import pytest

from finpolylog.cli import main, parse_primes, load_config
from finpolylog.errors import BadParams


def run_cli(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def run_json(argv, capsys):
    code, out = run_cli(argv, capsys)
    return code, json.loads(out)


class TestPrimeParsing:
    def test_range_expands_to_primes_only(self):
        assert parse_primes("5..31") == [5, 7, 11, 13, 17, 19, 23, 29, 31]

    def test_comma_list(self):
        assert parse_primes("7,11,13") == [7, 11, 13]

    def test_mixed(self):
        assert parse_primes("5,11..13") == [5, 11, 13]

    def test_non_prime_rejected(self):
        with pytest.raises(BadParams):
            parse_primes("4")
        with pytest.raises(BadParams):
            parse_primes("2")


class TestReports:
    def test_schema_and_exit_code(self, capsys):
        code, report = run_json(
            ["verify", "--eq", "feit", "--p", "5", "--mode", "both"], capsys
        )
        assert code == 0
        assert report["schema"] == 1
        assert report["summary"]["failed"] == 0
        assert all(r["holds"] for r in report["records"])

    def test_missed_expectation_sets_exit_code_and_repro_line(self, capsys):
        # feit holds, so expecting it to fail must produce exit status 1
        # and a reproduction command line on the offending record
        code, report = run_json(
            ["verify", "--eq", "feit", "--p", "5", "--mode", "strong",
             "--expect-fail"], capsys
        )
        assert code == 1
        assert report["summary"]["failed"] == 1
        assert "reproduce" in report["records"][0]

    def test_determinism(self, capsys):
        argv = ["verify", "--eq", "two_term,feit", "--p", "5,7", "--mode", "both"]
        _, out1 = run_cli(argv, capsys)
        _, out2 = run_cli(argv, capsys)
        assert out1 == out2

    def test_solve_report(self, capsys):
        code, report = run_json(["solve", "--preset", "FEIT", "--p", "5..13"], capsys)
        assert code == 0
        assert [r["dimension"] for r in report["records"]] == [1, 1, 1, 1]

    def test_cocycle_report_includes_certificate(self, capsys):
        code, report = run_json(
            ["cocycle", "--p", "5", "--check", "coboundary"], capsys
        )
        assert code == 0
        rec = report["records"][0]
        assert not rec["consistent"] and rec["certificate"]["multipliers"]

    def test_entropy_report(self, capsys):
        code, report = run_json(
            ["entropy", "--p", "5", "--probs", "1/2,1/2"], capsys
        )
        assert code == 0
        assert report["records"][0]["entropy"] == 3

    def test_tables_csv(self, capsys):
        code, out = run_cli(["tables", "--p", "7", "--kummer", "4"], capsys)
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0].startswith("p,kind,index")
        assert any("kummer_congruence" in ln for ln in lines)

    def test_list_contains_every_id(self, capsys):
        from finpolylog import catalog_ids

        code, report = run_json(["list"], capsys)
        assert code == 0
        listed = [r["id"] for r in report["records"]]
        assert listed == catalog_ids()

    def test_derive_example(self, capsys):
        code, report = run_json(
            ["derive", "--eq", "five_term_classical",
             "--derivation", "a:a*(1-a);b:b*(1-b)", "--verify", "11"],
            capsys,
        )
        assert code == 0
        assert report["records"][0]["weak"]["holds"]

    def test_padic_ranges(self, capsys):
        code, report = run_json(
            ["padic", "--clean", "2..4", "--recursion", "3..4"], capsys
        )
        assert code == 0
        assert report["summary"]["checked"] == 5

    def test_config_error_exit_code(self, capsys):
        code = main(["verify", "--eq", "feit", "--p", "4"])
        assert code == 2


class TestConfigFile:
    def test_key_value_parsing(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("# comment\np = 5,7\nmode = weak\n")
        conf = load_config(str(cfg))
        assert conf == {"p": "5,7", "mode": "weak"}

    def test_config_supplies_defaults_and_flags_override(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("p = 5\nmode = strong\n")
        code, report = run_json(
            ["--config", str(cfg), "verify", "--eq", "feit", "--p", "7"], capsys
        )
        assert code == 0
        assert [r["p"] for r in report["records"]] == [7]  # flag wins
        assert report["records"][0]["mode"] == "strong"  # config default used

    def test_malformed_config(self, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("not a pair\n")
        with pytest.raises(BadParams) as err:
            load_config(str(cfg))
        assert "1" in str(err.value)

    def test_budget_env_override(self, monkeypatch, capsys):
        monkeypatch.setenv("FINPOLYLOG_BUDGET", "123")
        code, report = run_json(
            ["verify", "--eq", "feit", "--p", "5", "--mode", "weak"], capsys
        )
        assert code == 0
        assert report["config"]["budget"] == 123
