"""Tests for the command-line interface: exit codes, schemas, determinism."""

import csv
import io
import json
import subprocess
import sys

import pytest

from hopfdeform import cli
from hopfdeform.cli import UsageError, main, parse_test_algebra

STEP_NAMES = [
    "build",
    "axioms-base-ring",
    "special-fiber-axioms",
    "generic-fiber-axioms",
    "special-product-split",
    "generic-grouplike-order",
    "generic-multiplicative",
    "generic-dual-constant",
    "quotient-by-x",
]


def run_json(capsys, argv):
    code = main(["--format", "json"] + argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


class TestVerify:
    def test_p2_passes(self, capsys):
        assert main(["verify", "--p", "2"]) == 0
        out = capsys.readouterr().out
        assert "all 9 steps passed" in out

    def test_p3_passes(self, capsys):
        code, payload = run_json(capsys, ["verify", "--p", "3"])
        assert code == 0
        assert payload["ok"] is True
        assert [s["name"] for s in payload["steps"]] == STEP_NAMES
        assert all(s["status"] == "passed" for s in payload["steps"])

    def test_schema_field(self, capsys):
        _, payload = run_json(capsys, ["verify", "--p", "2"])
        assert payload["schema"] == 1
        assert payload["command"] == "verify"

    def test_not_prime_is_usage_error(self, capsys):
        assert main(["verify", "--p", "4"]) == 2
        assert "not prime" in capsys.readouterr().err

    def test_large_prime_is_guard(self, capsys):
        assert main(["verify", "--p", "7"]) == 3
        assert "p <= 5" in capsys.readouterr().err

    def test_p5_needs_slow_flag(self, capsys):
        assert main(["verify", "--p", "5"]) == 2
        assert "--slow" in capsys.readouterr().err

    def test_unknown_mutation(self, capsys):
        assert main(["verify", "--p", "2", "--mutate", "nonsense"]) == 2

    @pytest.mark.parametrize("mutation,step,needle", [
        ("corrupt-antipode", "axioms-base-ring", "antipode"),
        ("drop-comul-t-term", "build", "relation"),
        ("drop-comul-x-term", "build", "relation"),
    ])
    def test_mutations_fail_at_their_step(self, capsys, mutation, step, needle):
        code, payload = run_json(capsys, ["verify", "--p", "2", "--mutate", mutation])
        assert code == 1
        assert payload["ok"] is False
        failed = [s for s in payload["steps"] if s["status"] == "failed"]
        assert len(failed) == 1
        assert failed[0]["name"] == step
        assert needle in failed[0]["detail"].lower()
        # everything after the failure is skipped, nothing silently passes
        tail = payload["steps"][payload["steps"].index(failed[0]) + 1:]
        assert all(s["status"] == "skipped" for s in tail)


class TestDual:
    @pytest.mark.parametrize("name,expected_dual", [
        ("alpha_p", "alpha_p"),
        ("mu", "constant_cyclic"),
        ("constant_cyclic", "mu"),
    ])
    def test_catalog_duals(self, capsys, name, expected_dual):
        argv = ["dual", "--p", "2", "--name", name]
        if name != "alpha_p":
            argv += ["--power", "2"]
        code, payload = run_json(capsys, argv)
        assert code == 0
        assert payload["dual"] == expected_dual
        assert all(c["passed"] for c in payload["checks"])

    def test_generic_fiber(self, capsys):
        code, payload = run_json(
            capsys, ["dual", "--p", "3", "--name", "mu", "--fiber", "generic"])
        assert code == 0
        assert payload["order"] == 3

    def test_unsupported_power(self, capsys):
        assert main(["dual", "--p", "2", "--name", "mu", "--power", "3"]) == 2


class TestQuotient:
    def test_kill_x_reproduces_rank_p_deformation(self, capsys):
        code, payload = run_json(capsys, ["quotient", "--p", "2", "--kill", "x"])
        assert code == 0
        assert payload["rank"] == 2
        pres = payload["presentation"]
        assert pres["generators"] == ["y"]
        assert pres["comultiplication"]["y"] == "1⊗y + y⊗1 + t*y⊗y"

    def test_kill_x_at_p3(self, capsys):
        code, payload = run_json(capsys, ["quotient", "--p", "3", "--kill", "x"])
        assert code == 0
        assert payload["rank"] == 3

    def test_kill_y_is_not_free(self, capsys):
        code, payload = run_json(capsys, ["quotient", "--p", "3", "--kill", "y"])
        assert code == 1
        assert payload["error"]["kind"] == "NotFreeQuotientError"
        assert "t = 0" in payload["error"]["detail"]

    def test_kill_both(self, capsys):
        code, payload = run_json(capsys, ["quotient", "--p", "2", "--kill", "x,y"])
        assert code == 0
        assert payload["rank"] == 1

    def test_unknown_generator(self, capsys):
        assert main(["quotient", "--p", "2", "--kill", "z"]) == 2

    def test_empty_ideal(self, capsys):
        assert main(["quotient", "--p", "2", "--kill", ","]) == 2


class TestCohomologyTable:
    def test_small_table(self, capsys):
        code, payload = run_json(
            capsys, ["cohomology-table", "--max-n", "2", "--max-degree", "3"])
        assert code == 0
        assert payload["crosscheck"]["ok"] is True
        assert len(payload["rows"]) == 2 * 4 * 3
        cell = {r["fiber"]: r["dim"]
                for r in payload["rows"] if r["n"] == 1 and r["i"] == 1}
        assert cell == {"generic": 1, "special": 2, "gap": 1}

    def test_fiber_filter(self, capsys):
        code, payload = run_json(
            capsys, ["cohomology-table", "--max-n", "1", "--max-degree", "2",
                     "--fiber", "generic"])
        assert code == 0
        assert {r["fiber"] for r in payload["rows"]} == {"generic"}
        assert all(r["dim"] == 1 for r in payload["rows"])

    def test_csv_matches_json(self, capsys):
        args = ["cohomology-table", "--max-n", "2", "--max-degree", "4"]
        code, payload = run_json(capsys, args)
        assert code == 0
        assert main(["--format", "csv"] + args) == 0
        text = capsys.readouterr().out
        rows = list(csv.DictReader(io.StringIO(text)))
        assert len(rows) == len(payload["rows"])
        for got, want in zip(rows, payload["rows"]):
            assert int(got["n"]) == want["n"]
            assert int(got["i"]) == want["i"]
            assert got["fiber"] == want["fiber"]
            assert int(got["dim"]) == want["dim"]

    def test_guards(self, capsys):
        assert main(["cohomology-table", "--max-n", "33"]) == 3
        assert main(["cohomology-table", "--max-degree", "201"]) == 3
        assert main(["cohomology-table", "--max-n", "0"]) == 2


class TestJump:
    def test_degree_one_solution(self, capsys):
        code, payload = run_json(capsys, ["jump", "--gap", "5", "--degree", "1"])
        assert code == 0
        assert payload["minimal_n"] == 5
        assert payload["special_dim"] >= payload["required"]
        assert payload["fiber_jump"] >= 5
        assert payload["certificate"]["termwise_dominated"] is True

    def test_stabilized_default(self, capsys):
        code, payload = run_json(capsys, ["jump", "--gap", "2", "--degree", "4"])
        assert code == 0
        assert payload["stabilized"] is True
        assert payload["bundle_dim"] == 2

    def test_explicit_bundle_dim(self, capsys):
        code, payload = run_json(
            capsys, ["jump", "--gap", "2", "--degree", "4", "--bundle-dim", "1"])
        assert code == 0
        assert payload["stabilized"] is False
        assert len(payload["certificate"]["terms"]) == 2

    def test_usage_errors(self, capsys):
        assert main(["jump", "--gap", "0", "--degree", "1"]) == 2
        assert main(["jump", "--gap", "1", "--degree", "0"]) == 2
        assert main(["jump", "--gap", "1", "--degree", "1", "--bundle-dim", "-1"]) == 2

    def test_guards(self, capsys):
        assert main(["jump", "--gap", str(10**6 + 1), "--degree", "1"]) == 3
        assert main(["jump", "--gap", "1", "--degree", "1001"]) == 3


class TestFreeLocus:
    def test_exhaustive_dual_numbers(self, capsys):
        code, payload = run_json(
            capsys, ["free-locus", "--p", "2", "--n", "1",
                     "--test-algebra", "F2[e]/(e^2)"])
        assert code == 0
        assert payload["action_law_ok"] is True
        locus = payload["free_locus"]
        assert locus["mode"] == "exhaustive"
        assert locus["trials"] == 8
        assert locus["points"] == 2
        assert locus["failures"] == []
        assert payload["symbolic_identity"]["passed"] is True

    def test_random_trials_echo_seed(self, capsys):
        code, payload = run_json(
            capsys, ["free-locus", "--p", "3", "--n", "2",
                     "--test-algebra", "F3[e]/(e^3)", "--trials", "50",
                     "--seed", "7"])
        assert code == 0
        assert payload["seed"] == 7
        assert payload["free_locus"]["seed"] == 7
        assert payload["free_locus"]["mode"] == "random"
        assert payload["free_locus"]["trials"] == 50

    def test_plain_field_coefficients(self, capsys):
        code, payload = run_json(
            capsys, ["free-locus", "--p", "2", "--n", "2", "--test-algebra", "F2"])
        assert code == 0
        assert payload["test_algebra"] == "F2"
        assert payload["free_locus"]["points"] == 1

    def test_identity_skipped_out_of_guard(self, capsys):
        code, payload = run_json(
            capsys, ["free-locus", "--p", "2", "--n", "4",
                     "--test-algebra", "F2", "--trials", "20"])
        assert code == 0
        assert "skipped" in payload["symbolic_identity"]

    def test_malformed_algebra(self, capsys):
        assert main(["free-locus", "--p", "2", "--n", "1",
                     "--test-algebra", "F2[e/(e^2)"]) == 2
        err = capsys.readouterr().err
        assert "F3[e]/(e^3)" in err  # the grammar hint

    def test_characteristic_mismatch(self, capsys):
        assert main(["free-locus", "--p", "2", "--n", "1",
                     "--test-algebra", "F3[e]/(e^3)"]) == 2

    def test_trials_validation(self, capsys):
        assert main(["free-locus", "--p", "2", "--n", "1",
                     "--test-algebra", "F2", "--trials", "0"]) == 2


class TestAlgebraGrammar:
    def test_plain_field(self):
        B = parse_test_algebra("F2")
        assert B.ring.p == 2
        assert B.gens == ()
        assert B.rank == 1

    def test_single_generator(self):
        B = parse_test_algebra("F3[e]/(e^3)")
        assert (B.ring.p, B.gens, B.bounds) == (3, ("e",), (3,))
        assert B.rules == ({},)

    def test_two_generators_and_spaces(self):
        for text in ("F2[e,d]/(e^2,d^2)", "F2[e, d]/(e^2, d^2)"):
            B = parse_test_algebra(text)
            assert (B.gens, B.bounds) == (("e", "d"), (2, 2))

    def test_relations_in_any_order(self):
        B = parse_test_algebra("F2[e,d]/(d^3,e^2)")
        assert B.bounds == (2, 3)

    def test_roundtrip_with_description(self):
        from hopfdeform.action import describe_test_algebra
        for text in ("F2", "F3[e]/(e^3)", "F2[e, d]/(e^2, d^2)"):
            B = parse_test_algebra(text)
            assert parse_test_algebra(describe_test_algebra(B)).bounds == B.bounds

    @pytest.mark.parametrize("bad", [
        "F4[e]/(e^2)",      # characteristic not prime
        "F2[e]",            # no relation block
        "F2[e]/(e^1)",      # exponent below 2
        "F2[e,e]/(e^2,e^2)",  # repeated generator
        "F2[e]/(d^2)",      # relation for an unknown generator
        "F2[e,d]/(e^2)",    # missing relation
        "F2[e]/(e^2,e^3)",  # two relations for one generator
        "Q[e]/(e^2)",       # not a prime field
    ])
    def test_rejects(self, bad):
        with pytest.raises(UsageError):
            parse_test_algebra(bad)


class TestPlumbing:
    def test_env_var_sets_format(self, capsys, monkeypatch):
        monkeypatch.setenv(cli.FORMAT_ENV_VAR, "json")
        assert main(["jump", "--gap", "1", "--degree", "1"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["command"] == "jump"

    def test_flag_overrides_env_var(self, capsys, monkeypatch):
        monkeypatch.setenv(cli.FORMAT_ENV_VAR, "json")
        assert main(["--format", "pretty", "jump", "--gap", "1", "--degree", "1"]) == 0
        assert "minimal n = 1" in capsys.readouterr().out

    def test_bad_env_var(self, capsys, monkeypatch):
        monkeypatch.setenv(cli.FORMAT_ENV_VAR, "bogus")
        assert main(["jump", "--gap", "1", "--degree", "1"]) == 2

    def test_csv_limited_to_tables(self, capsys):
        assert main(["--format", "csv", "verify", "--p", "2"]) == 2
        assert "cohomology-table" in capsys.readouterr().err

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "out.json"
        assert main(["--format", "json", "--output", str(target),
                     "jump", "--gap", "3", "--degree", "2"]) == 0
        assert capsys.readouterr().out == ""
        assert json.loads(target.read_text())["minimal_n"] == 2

    def test_json_runs_are_byte_identical(self, capsys):
        outputs = []
        for _ in range(2):
            assert main(["--format", "json", "free-locus", "--p", "2", "--n", "1",
                         "--test-algebra", "F2[e]/(e^2)"]) == 0
            outputs.append(capsys.readouterr().out)
        assert outputs[0] == outputs[1]

    def test_console_script(self):
        proc = subprocess.run(
            [sys.executable, "-m", "hopfdeform.cli", "verify", "--p", "2"],
            capture_output=True, text=True)
        assert proc.returncode == 0
        assert "all 9 steps passed" in proc.stdout
