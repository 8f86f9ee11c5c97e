"""Command line: argument parsing, output formats, exit codes.

Exit codes are part of the interface: 0 success/pass, 1 verification
failure, 2 usage error, 3 resource-guard abort.  JSON output must parse
and carry the payload schema; csv and markdown are rendered from the same
flattened payload.
"""

import json

import pytest

from schurext import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_hom_json(capsys):
    code, out, _ = run(capsys, "hom", "sym(2)", "wedge(2)", "--p", "2")
    assert code == 0
    pay = json.loads(out)
    assert pay["schema"] == "schurext-payload-v1"
    assert pay["dim"] == 1


def test_json_is_canonical(capsys):
    code, out1, _ = run(capsys, "hom", "sym(2)", "sym(2)", "--p", "3")
    _, out2, _ = run(capsys, "hom", "sym(2)", "sym(2)", "--p", "3")
    assert code == 0
    assert out1 == out2
    assert out1 == json.dumps(json.loads(out1), sort_keys=True, indent=2) + "\n"


def test_bad_expression_exits_2(capsys):
    code, _, err = run(capsys, "hom", "sym((", "I", "--p", "2")
    assert code == 2
    assert "error:" in err


def test_eval_dim_below_degree_exits_2(capsys):
    code, _, err = run(capsys, "ext", "sym(3)", "sym(3)",
                       "--p", "3", "--max-deg", "1", "--eval-dim", "2")
    assert code == 2
    assert "unsafe-eval-dim" in err


def test_ext_guard_exits_3(capsys, tmp_path):
    code, out, _ = run(
        capsys, "ext", "gamma(2)", "twist(I, 1)", "--p", "2",
        "--max-deg", "2", "--max-layer-dim", "1",
        "--cache-dir", str(tmp_path),
    )
    assert code == 3
    assert json.loads(out)["status"] == "guard"


def test_verify_pass_exits_0(capsys):
    code, out, _ = run(capsys, "verify", "fs-star", "--p", "2", "--r", "1")
    assert code == 0
    assert json.loads(out)["report"]["verdict"] == "pass"


def test_verify_unknown_check_exits_2(capsys):
    with pytest.raises(SystemExit) as e:
        cli.main(["verify", "goldbach"])
    assert e.value.code == 2


def test_verify_md_format(capsys):
    code, out, _ = run(
        capsys, "verify", "chalupnik", "--p", "2", "--family", "gamma",
        "--format", "md",
    )
    assert code == 0
    assert out.startswith("| key | value |")
    assert "| report.verdict | pass |" in out


def test_csv_format(capsys):
    code, out, _ = run(
        capsys, "hom", "sym(2)", "sym(2)", "--p", "2", "--format", "csv"
    )
    assert code == 0
    assert "dim,1" in out.splitlines()


def test_oracle_weight_parsing(capsys):
    code, out, _ = run(capsys, "oracle", "sym(3)",
                       "--weight", "2,1", "--p", "3")
    assert code == 0
    assert json.loads(out)["dim"] == 1


def test_oracle_two_variable_weight(capsys):
    code, out, _ = run(capsys, "oracle", "box(I, I)",
                       "--weight", "1;1", "--p", "2")
    assert code == 0
    assert json.loads(out)["dim"] == 1


def test_lell_runs(capsys):
    code, out, _ = run(capsys, "lell", "gamma(2)", "--p", "2",
                       "--r", "1", "--length", "1")
    assert code == 0
    assert json.loads(out)["homology_dims"] == {"0": 2, "1": 0}


def test_hilbert_closed_form(capsys):
    code, out, _ = run(capsys, "hilbert", "--group", "o", "--dmax", "2",
                       "--closed-form-only")
    assert code == 0
    pay = json.loads(out)
    assert pay["table"]["2"]["8"] == 1


def test_resolve_and_cache_roundtrip(capsys, tmp_path):
    root = str(tmp_path / "cache")
    code, out, _ = run(capsys, "resolve", "sym(2)", "--p", "2",
                       "--length", "2", "--cache-dir", root)
    assert code == 0
    first = json.loads(out)["layer_dims"]
    code, out, _ = run(capsys, "cache", "stats", "--cache-dir", root)
    assert json.loads(out)["entries"] >= 1
    code, out, _ = run(capsys, "resolve", "sym(2)", "--p", "2",
                       "--length", "2", "--cache-dir", root)
    assert json.loads(out)["layer_dims"] == first
    code, out, _ = run(capsys, "cache", "clear", "--cache-dir", root)
    assert code == 0
    code, out, _ = run(capsys, "cache", "stats", "--cache-dir", root)
    assert json.loads(out)["entries"] == 0


def test_missing_subcommand_exits_2():
    with pytest.raises(SystemExit) as e:
        cli.main([])
    assert e.value.code == 2
