"""Command-line interface: exit codes, report determinism, subcommands.

Everything runs in-process through main(argv); stdout is captured with
capsys so byte-level determinism of --json reports can be asserted.
"""

import json

import pytest

from quiverqh.cli import EXIT_BUDGET, EXIT_FAIL, EXIT_INPUT, EXIT_OK, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def jrun(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out), out


# -- exit codes ---------------------------------------------------------------------


def test_validate_ok(capsys, quivers):
    code, out, _ = run(capsys, "validate", quivers.path("gr24"))
    assert code == EXIT_OK
    assert "acyclic" in out and "yes" in out


def test_validate_infeasible_fails(capsys, quivers):
    code, _, _ = run(capsys, "validate", quivers.path("a2"))
    assert code == EXIT_FAIL


def test_missing_file_is_input_error(capsys):
    code, _, err = run(capsys, "validate", "no/such/quiver.json")
    assert code == EXIT_INPUT
    assert "input error" in err


def test_malformed_json_is_input_error(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"nodes": [,]}')
    code, _, err = run(capsys, "validate", str(bad))
    assert code == EXIT_INPUT
    assert "line" in err


def test_budget_exhaustion_exit(capsys, quivers):
    code, _, err = run(
        capsys, "groebner", quivers.path("fl234"), "--pmax", "5",
        "--budget-steps", "10",
    )
    assert code == EXIT_BUDGET
    assert "budget" in err


def test_unknown_command_exits_two(capsys):
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 2


def test_type_a_on_bad_chain_is_input_error(capsys, quivers):
    code, _, err = run(capsys, "verify", "type-a", quivers.path("fl123"))
    assert code == EXIT_INPUT
    assert "type-A" in err


# -- determinism --------------------------------------------------------------------


def test_groebner_report_is_byte_identical(capsys, quivers):
    _, first = jrun(capsys, "groebner", quivers.path("gr24"), "--pmax", "3")[1:]
    _, second = jrun(capsys, "groebner", quivers.path("gr24"), "--pmax", "3")[1:]
    assert first == second


def test_qde_rows_independent_of_jobs(capsys, quivers):
    code1, rep1, _ = jrun(capsys, "verify", "qde", quivers.path("p2"), "--qorder", "3")
    code2, rep2, _ = jrun(
        capsys, "verify", "qde", quivers.path("p2"), "--qorder", "3", "--jobs", "3"
    )
    assert code1 == code2 == EXIT_OK
    assert rep1["rows"] == rep2["rows"]


def test_json_schema_and_config_echo(capsys, quivers):
    code, rep, raw = jrun(capsys, "present", quivers.path("gr24"), "--pmax", "3")
    assert code == EXIT_OK
    assert rep["schema"] == 1
    assert rep["config"]["command"] == "present"
    assert rep["config"]["pmax"] == 3
    # canonical serialization: keys sorted, two-space indent
    assert raw == json.dumps(rep, sort_keys=True, indent=2) + "\n"


# -- subcommand smoke ---------------------------------------------------------------


def test_present_lists_generators(capsys, quivers):
    code, out, _ = run(capsys, "present", quivers.path("p2"), "--pmax", "4")
    assert code == EXIT_OK
    assert "xi[1][1]^3 - Q[1]" in out


def test_groebner_prints_fingerprint(capsys, quivers):
    code, rep, _ = jrun(capsys, "groebner", quivers.path("gr24"), "--pmax", "3")
    assert code == EXIT_OK
    assert rep["fingerprint"]
    assert rep["basis"]


def test_verify_exchange(capsys, quivers):
    code, rep, _ = jrun(capsys, "verify", "exchange", quivers.path("gr24"), "--pmax", "3")
    assert code == EXIT_OK
    assert all(r["ok"] for r in rep["rows"])


def test_verify_exchange_classical(capsys, quivers):
    code, _, _ = run(
        capsys, "verify", "exchange", quivers.path("gr24"), "--pmax", "3", "--classical"
    )
    assert code == EXIT_OK


def test_verify_type_a(capsys, quivers):
    code, rep, _ = jrun(capsys, "verify", "type-a", quivers.path("fl234"))
    assert code == EXIT_OK
    assert len(rep["rows"]) == 12


def test_verify_vgit(capsys, quivers):
    code, _, _ = run(
        capsys, "verify", "vgit",
        quivers.path("vgit312_plus"), quivers.path("vgit312_minus"),
        "--pmax", "3",
    )
    assert code == EXIT_OK


def test_verify_separation(capsys, quivers):
    code, rep, _ = jrun(
        capsys, "verify", "separation", quivers.path("a2"), "--path", "1,2"
    )
    assert code == EXIT_OK
    assert rep["separation"] and rep["constant_term_one"]
    assert rep["f_polynomial"] == "y[1]*y[2] + y[1] + 1"


def test_cluster_enumerate(capsys, quivers):
    code, rep, _ = jrun(
        capsys, "cluster", "enumerate", quivers.path("a2"), "--max-depth", "5"
    )
    assert code == EXIT_OK
    assert len(rep["variables"]) == 5


def test_cluster_mutate(capsys, quivers):
    code, rep, _ = jrun(
        capsys, "cluster", "mutate", quivers.path("a2"), "--path", "1,2"
    )
    assert code == EXIT_OK
    assert rep["cluster"]


def test_embed_report(capsys, quivers):
    code, out, _ = run(capsys, "embed", quivers.path("gr24"), "--pmax", "3")
    assert code == EXIT_OK
    assert "zeta" in out


def test_embed_with_path(capsys, quivers):
    code, out, _ = run(
        capsys, "embed", quivers.path("gr24"), "--pmax", "3",
        "--path", "1", "--at", "1",
    )
    assert code == EXIT_OK
    assert "zeta[0]" in out
