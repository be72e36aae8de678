"""CLI surface: exit codes, JSON schema, determinism, report files."""

import json


from alcove_center.cli import emit_json, run
from alcove_center.scalars import CycScalar, QLaurent
from fractions import Fraction


def test_datum_command(capsys):
    assert run(["datum", "--type", "A2"]) == 0
    out = capsys.readouterr().out
    assert "coxeter_number: 3" in out and "exponents: [1, 2]" in out


def test_datum_json(capsys):
    assert run(["datum", "--type", "G2", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["schema"] == "alcove-center/1"
    assert payload["datum"]["pi1_order"] == 1


def test_blocks_command(capsys):
    assert run(["blocks", "--type", "A1", "--l", "3", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    rows = payload["blocks"]
    assert [r["omega"] for r in rows] == [[-1], [0], [1], [2]]
    assert [r["stabilizer_order"] for r in rows] == [2, 1, 1, 2]


def test_blocks_rejects_bad_l(capsys):
    assert run(["blocks", "--type", "A2", "--l", "3"]) == 2


def test_character_command(capsys):
    assert run(["character", "--type", "A2", "--weight", "1,1", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    zero = [t for t in payload["terms"] if t["weight"] == [0, 0]]
    assert zero and zero[0]["coeff"] == {"num": "2", "den": "1", "qpow": 0}


def test_character_zeta_mode(capsys):
    assert run(["character", "--type", "A1", "--weight", "1", "--q", "zeta", "--l", "3", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["mode"] == "zeta"
    assert all("cyc" in t["coeff"] for t in payload["terms"])


def test_weight_parse_error():
    assert run(["character", "--type", "A2", "--weight", "1"]) == 2


def test_usage_error():
    assert run(["datum"]) == 2
    assert run(["nonsense"]) == 2


def test_trace_command(capsys):
    assert run(["trace", "--type", "A1", "--l", "3", "--omega", "-1", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["scalar"] == "2" and payload["expected"] == 2 and payload["stable"]


def test_trace_rejects_non_box_omega():
    assert run(["trace", "--type", "A1", "--l", "3", "--omega", "5"]) == 2


def test_verify_suite_json_and_determinism(capsys):
    assert run(["verify", "poincare", "--json"]) == 0
    first = capsys.readouterr().out
    assert run(["verify", "poincare", "--json"]) == 0
    second = capsys.readouterr().out
    assert first == second
    payload = json.loads(first)
    assert payload["pass"] is True
    assert payload["schema"] == "alcove-center/1"


def test_verify_single_type_filter(capsys):
    assert run(["verify", "l514", "--type", "A1", "--l", "3"]) == 0
    out = capsys.readouterr().out
    assert "suite l514: pass" in out


def test_report_files(tmp_path, capsys):
    out_dir = str(tmp_path / "rep")
    assert run(["verify", "poincare", "--report", out_dir]) == 0
    capsys.readouterr()
    assert (tmp_path / "rep" / "poincare.csv").exists()
    assert (tmp_path / "rep" / "poincare.png").exists()
    assert run(["blocks", "--type", "A2", "--l", "5", "--report", out_dir]) == 0
    assert (tmp_path / "rep" / "blocks.csv").exists()
    assert (tmp_path / "rep" / "blocks.png").exists()
    assert run(["character", "--type", "A2", "--weight", "1,1", "--report", out_dir]) == 0
    assert (tmp_path / "rep" / "character.csv").exists()
    assert (tmp_path / "rep" / "character.png").exists()


def test_emit_json_scalar_forms():
    assert json.loads(emit_json(Fraction(3, 2))) == {"num": "3", "den": "2"}
    two = CycScalar.const(3, 2)
    assert json.loads(emit_json(two)) == {"cyc": ["2", "0"]}
    q = QLaurent.q_power(4, Fraction(1, 3))
    assert json.loads(emit_json(q)) == {"num": "1", "den": "3", "qpow": 4}
    multi = QLaurent({0: 1, 2: -1})
    assert json.loads(emit_json(multi)) == {
        "terms": [{"num": "1", "den": "1", "qpow": 0}, {"num": "-1", "den": "1", "qpow": 2}]
    }


def test_negative_vector_weights(capsys):
    # "-1,2" must parse as a weight, not as an option token
    assert run(["trace", "--type", "A2", "--l", "5", "--omega", "-1,2", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["omega"] == [-1, 2] and payload["scalar"] == "2"
    assert run(["character", "--type", "A2", "--weight", "1,1", "--json"]) == 0
