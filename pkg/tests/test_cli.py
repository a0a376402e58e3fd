import json

import pytest

from diagcat import cli

WORKED_BITS = "10 10 10 00 00 00 01 10 00 01 01 10 00 00 01 01"


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_paren_decode_worked_example(capsys):
    code, out, _ = run_cli(capsys, "paren", "decode", "--bits", WORKED_BITS)
    assert code == 0
    assert out.strip() == "(((_ _ _)(_))(_ _))"


def test_paren_encode_round_trip(capsys):
    code, out, _ = run_cli(
        capsys, "paren", "encode", "--pattern", "((( _ _ _ )( _ ))( _ _ ))"
    )
    assert code == 0
    assert out.strip() == WORKED_BITS


def test_paren_count(capsys):
    code, out, _ = run_cli(capsys, "paren", "count", "--leaves", "6")
    assert code == 0 and out.strip() == "42"


def test_paren_bad_pattern_exit_2(capsys):
    code, _, err = run_cli(capsys, "paren", "encode", "--pattern", "(( _ ))")
    assert code == 2 and "error" in err


def test_invalid_group_exit_2(capsys):
    code, _, err = run_cli(
        capsys, "model", "inspect", "--field", "Q", "--group", "Banana"
    )
    assert code == 2 and "error" in err


def test_model_inspect_json(capsys):
    code, out, _ = run_cli(
        capsys,
        "model", "inspect", "--field", "F5", "--group", "Z/4",
        "--max-dim", "1", "--max-len", "1", "--json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["schema"] == 1
    assert payload["count"] == 4  # four characters of Z/4
    assert all(entry["sort"] == [1, 1] for entry in payload["objects"])


def test_model_inspect_infinite_group_fragments(capsys):
    code, out, _ = run_cli(
        capsys,
        "model", "inspect", "--field", "Q", "--group", "Z",
        "--max-dim", "2", "--max-len", "2", "--coord-bound", "1",
        "--limit", "500", "--json",
    )
    assert code == 0
    payload = json.loads(out)
    sorts = {tuple(entry["sort"]) for entry in payload["objects"]}
    # fragments of every sort within the bounds appear
    assert {(1, 1), (1, 2), (2, 1), (2, 2)} <= sorts


def test_model_inspect_hom_blocks(capsys):
    code, out, _ = run_cli(
        capsys,
        "model", "inspect", "--field", "F5", "--group", "Z/4",
        "--hom", "{1 1}", "{1 2}", "--json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["dimension"] == 2
    assert len(payload["basis"]) == 2
    assert payload["basis"][0]["blocks"][0]["weight"] == "(1)"
    assert payload["source"]["basis"][0]["weight"] == "(1)"


def test_char_group(capsys):
    code, out, _ = run_cli(capsys, "char-group", "--group", "Z/6", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["isomorphism_verified"] is True
    code, out, _ = run_cli(capsys, "char-group", "--group", "Z/1", "--json")
    assert code == 0 and json.loads(out)["elements_checked"] == 1


def test_axioms_check_json_deterministic(capsys):
    args = [
        "axioms", "check", "--field", "F3", "--group", "Z/2",
        "--max-dim", "1", "--max-len", "2", "--json",
    ]
    code1, out1, _ = run_cli(capsys, *args)
    code2, out2, _ = run_cli(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2  # byte-identical
    payload = json.loads(out1)
    assert payload["passed"] == 27


def test_axioms_check_failure_exit_1(capsys):
    code, out, _ = run_cli(
        capsys,
        "axioms", "check", "--field", "F3", "--group", "Z/2",
        "--max-dim", "1", "--max-len", "1",
        "--mutate", "tensor-collapses-to-zero", "--json",
    )
    assert code == 1
    payload = json.loads(out)
    assert payload["failed"] == 1


def test_defining_degree_group_file(tmp_path, capsys):
    mu3 = {
        "schema": 1,
        "n": 1,
        "field": "Q",
        "name": "mu3",
        "generators": ["Z[1,1]^3 - 1"],
        "weights": {"group": "Z/3", "elements": ["(1)"]},
    }
    path = tmp_path / "mu3.json"
    path.write_text(json.dumps(mu3))
    code, out, _ = run_cli(
        capsys, "stab", "defining-degree", "--group-file", str(path), "--dmax", "4"
    )
    assert code == 0 and out.strip() == "2"


def test_defining_degree_catalog_json(capsys):
    code, out, _ = run_cli(
        capsys, "stab", "defining-degree", "--catalog", "mu5", "--json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["defining_degree"] == 3
    assert payload["witnesses_verified"] is True
    assert payload["minimality_certified"] is True


def test_degrees_equal(capsys):
    code, out, _ = run_cli(
        capsys, "stab", "degrees-equal", "--catalog", "mu2", "--d", "1", "--dprime", "4"
    )
    assert code == 0 and out.strip() == "equal"
    code, out, _ = run_cli(
        capsys,
        "stab", "degrees-equal", "--catalog", "torus-t-t2-gl2",
        "--d", "1", "--dprime", "2",
    )
    assert code == 0 and out.strip() == "not_equal"


def test_qpolys_csv(tmp_path, capsys):
    mat = tmp_path / "a.csv"
    mat.write_text("1\n1\n")
    code, out, _ = run_cli(
        capsys,
        "stab", "qpolys", "--shape", "X", "--n", "2",
        "--pivots", "1", "--matrix", str(mat),
    )
    assert code == 0
    assert out.strip() == "Z[2,2] + Z[2,1] - Z[1,2] - Z[1,1]"


def test_is_stable(tmp_path, capsys):
    mat = tmp_path / "a.csv"
    mat.write_text("1\n0\n")
    code, out, _ = run_cli(
        capsys,
        "stab", "is-stable", "--shape", "X", "--object", "{1 2}",
        "--group", "Z", "--matrix", str(mat),
    )
    assert code == 0 and out.strip() == "stable"
    mat.write_text("1\n1\n")
    code, out, _ = run_cli(
        capsys,
        "stab", "is-stable", "--shape", "X", "--object", "{1 2}",
        "--group", "Z", "--matrix", str(mat),
    )
    assert code == 0 and out.strip() == "not stable"


def test_unknown_flag_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["paren", "count", "--leaves", "3", "--bogus"])
    assert exc.value.code == 2


def test_group_file_round_trip(tmp_path):
    from diagcat import laurent as la
    from diagcat.field import QQ

    pres = la.catalog(QQ)["torus-t-t2-gl2"]
    payload = cli.dump_group_file(pres)
    path = tmp_path / "g.json"
    path.write_text(json.dumps(payload))
    loaded = cli._load_group_file(str(path))
    assert loaded.n == pres.n
    assert loaded.weights == pres.weights
    assert [g.poly for g in loaded.ideal.generators] == [
        g.poly for g in pres.ideal.generators
    ]
