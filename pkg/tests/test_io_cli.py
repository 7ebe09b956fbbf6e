"""Algebra files and the command-line interface."""

import json

import pytest

from complen.cli import main, parse_vector_set
from complen.constructors import (
    make_hurwitz_tower,
    make_okubo_isotropic,
    make_two_dim_form,
)
from complen.errors import InvariantViolation, ParseError
from complen.fields import field_make
from complen.iofmt import (
    algebra_from_dict,
    algebra_to_dict,
    dump_algebra,
    io_roundtrip,
    load_algebra,
    parse_algebra,
    save_algebra,
)

F2 = field_make("F2")
F5 = field_make("F5")
Q = field_make("Q")


# --- file format ---------------------------------------------------------------


def test_roundtrip_is_byte_identical(tmp_path):
    for a in (
        make_hurwitz_tower(Q, None, (Q.one(), Q.from_int(-2))),
        make_okubo_isotropic(F5, F5.from_int(2), F5.from_int(3)),
        make_two_dim_form(F5, F5.one()),
    ):
        p = tmp_path / "alg.json"
        save_algebra(a, str(p))
        assert io_roundtrip(str(p))
        b = load_algebra(str(p))
        assert b.table == a.table
        assert b.quad == a.quad
        assert b.unit_element() == a.unit_element()
        assert b.labels == a.labels


def test_loaded_algebra_multiplies_identically():
    a = make_okubo_isotropic(F5, F5.from_int(2), F5.from_int(3))
    b = parse_algebra(dump_algebra(a))
    x = a.add(a.basis_element(0), a.scale(F5.from_int(3), a.basis_element(5)))
    y = a.basis_element(7)
    assert b.multiply(x, y) == a.multiply(x, y)


def test_parse_error_carries_position():
    with pytest.raises(ParseError) as exc:
        parse_algebra('{"name": }')
    assert exc.value.line == 1
    assert exc.value.column is not None


def test_unknown_top_level_key_rejected():
    a = make_two_dim_form(F5, F5.one())
    doc = algebra_to_dict(a)
    doc["flavor"] = "mild"
    with pytest.raises(ParseError, match="flavor"):
        algebra_from_dict(doc)


def test_missing_and_malformed_fields_rejected():
    a = make_two_dim_form(F5, F5.one())
    good = algebra_to_dict(a)
    for mutate in (
        lambda d: d.pop("mul"),
        lambda d: d.__setitem__("dim", "2"),
        lambda d: d.__setitem__("labels", ["u"]),
        lambda d: d["mul"][0].pop(),
        lambda d: d.__setitem__("quad", {"diag": good["quad"]["diag"]}),
    ):
        doc = json.loads(json.dumps(good))
        mutate(doc)
        with pytest.raises(ParseError):
            algebra_from_dict(doc)


def test_bad_polar_triples_rejected():
    a = make_two_dim_form(F5, F5.one())
    doc = algebra_to_dict(a)
    doc["quad"]["polar"] = [[1, 0, "1"]]
    with pytest.raises(ParseError, match="polar"):
        algebra_from_dict(doc)
    doc["quad"]["polar"] = [[0, 1, "1"], [0, 1, "2"]]
    with pytest.raises(ParseError, match="duplicate"):
        algebra_from_dict(doc)


def test_false_unit_claim_rejected():
    a = make_okubo_isotropic(F5, F5.from_int(2), F5.from_int(3))
    doc = algebra_to_dict(a)
    doc["unit"] = ["1"] + ["0"] * 7
    with pytest.raises(InvariantViolation):
        algebra_from_dict(doc)


# --- vector-set grammar ----------------------------------------------------------


def test_parse_vector_set_prime_field():
    vs = parse_vector_set(F5, 3, "1,0,2; 0,4,0")
    assert vs == [
        (F5.one(), F5.zero(), F5.from_int(2)),
        (F5.zero(), F5.from_int(4), F5.zero()),
    ]


def test_parse_vector_set_extension_scalars():
    F4 = field_make("F2^2:1,1,1")
    vs = parse_vector_set(F4, 2, "[1,1],[0,1]; 1,0")
    assert vs == [(F4.parse("1,1"), F4.parse("0,1")), (F4.one(), F4.zero())]


def test_parse_vector_set_errors():
    with pytest.raises(ParseError):
        parse_vector_set(F5, 3, "1,2")  # wrong arity
    with pytest.raises(ParseError):
        parse_vector_set(F5, 2, "[1,2")  # unbalanced bracket
    with pytest.raises(ParseError):
        parse_vector_set(F5, 2, "")


# --- CLI ---------------------------------------------------------------------


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_construct_and_check(tmp_path, capsys):
    path = str(tmp_path / "iso.json")
    code, out, _ = _run(
        capsys,
        "construct", "--family", "okubo-isotropic", "--field", "F3",
        "--params", "1,2", "--out", path,
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["dim"] == 8 and doc["field"] == "F3" and not doc["unital"]
    assert doc["out"] == path

    code, out, _ = _run(capsys, "check", "--algebra", path, "--what", "composition",
                        "--strategy", "exhaustive")
    assert code == 0
    doc = json.loads(out)
    assert doc["holds"] is True and doc["certificate"] == "exhaustive"


def test_cli_check_reports_failure_with_exit_zero(tmp_path, capsys):
    path = str(tmp_path / "iso.json")
    _run(capsys, "construct", "--family", "okubo-isotropic", "--field", "F2",
         "--params", "1,1", "--out", path)
    code, out, _ = _run(capsys, "check", "--algebra", path, "--what", "alternative",
                        "--strategy", "exhaustive")
    assert code == 0  # the check completed; the property just fails
    doc = json.loads(out)
    assert doc["holds"] is False
    assert doc["counterexample"] is not None


def test_cli_twist_requires_flag_consistency(tmp_path, capsys):
    path = str(tmp_path / "t.json")
    code, _, err = _run(capsys, "construct", "--family", "twist", "--field", "F3",
                        "--params", "1,1", "--out", path)
    assert code == 1
    assert json.loads(err)["error"] == "UnknownFamily"
    code, out, _ = _run(capsys, "construct", "--family", "twist", "--field", "F3",
                        "--params", "1,1", "--twist", "IV", "--out", path)
    assert code == 0
    assert json.loads(out)["unital"] is False


def test_cli_length_set_general(tmp_path, capsys):
    path = str(tmp_path / "iso.json")
    _run(capsys, "construct", "--family", "okubo-isotropic", "--field", "F5",
         "--params", "2,3", "--out", path)
    code, out, _ = _run(capsys, "length-set", "--algebra", path,
                        "--set", "0,0,1,0,0,0,0,0; 1,0,0,0,0,0,0,0")
    assert code == 0
    doc = json.loads(out)
    assert doc["d"] == [0, 2, 3, 2, 1]
    assert doc["length"] == 4 and doc["generating"] is True


def test_cli_length_set_descending_modes(tmp_path, capsys):
    # a dim-16 doubling carries no descending certificate and none is acquirable
    path = str(tmp_path / "a16.json")
    _run(capsys, "construct", "--family", "hurwitz", "--field", "Q",
         "--params", "from-field,1,1,1,1", "--out", path)
    vec16 = ",".join(["0", "1"] + ["0"] * 14)
    code, _, err = _run(capsys, "length-set", "--algebra", path,
                        "--set", vec16, "--mode", "descending")
    assert code == 1
    assert json.loads(err)["error"] == "ModeUnjustified"
    code, out, _ = _run(capsys, "length-set", "--algebra", path,
                        "--set", vec16, "--mode", "descending", "--assume-descending")
    assert code == 0
    assert json.loads(out)["mode"] == "descending"


def test_cli_length_algebra_exhaustive(tmp_path, capsys):
    path = str(tmp_path / "k.json")
    _run(capsys, "construct", "--family", "hurwitz", "--field", "F2",
         "--params", "1", "--out", path)
    code, out, _ = _run(capsys, "length-algebra", "--algebra", path)
    assert code == 0
    doc = json.loads(out)
    assert doc["best_length"] == 1 and doc["exact"] is True
    assert doc["enumerated"] == 4


def test_cli_length_algebra_cost_cap(tmp_path, capsys):
    path = str(tmp_path / "iso3.json")
    _run(capsys, "construct", "--family", "okubo-isotropic", "--field", "F3",
         "--params", "1,2", "--out", path)
    code, _, err = _run(capsys, "length-algebra", "--algebra", path)
    assert code == 2
    doc = json.loads(err)
    assert doc["error"] == "CostCapExceeded"
    assert doc["estimate"] > 10**7


def test_cli_bad_set_is_parse_error(tmp_path, capsys):
    path = str(tmp_path / "k.json")
    _run(capsys, "construct", "--family", "hurwitz", "--field", "F2",
         "--params", "1", "--out", path)
    code, _, err = _run(capsys, "length-set", "--algebra", path, "--set", "1")
    assert code == 1
    assert json.loads(err)["error"] == "ParseError"


def test_cli_verify_paper_single_case(capsys):
    code, out, _ = _run(capsys, "verify-paper", "--filter", "standard-F3-I-dim1")
    assert code == 0
    lines = [l for l in out.splitlines() if l and not l.startswith("#")]
    assert len(lines) == 2  # header + one case
    fields = lines[1].split("\t")
    assert fields[0] == "standard-F3-I-dim1"
    assert fields[1] == "PASS"


def test_cli_verify_paper_json(capsys):
    code, out, _ = _run(capsys, "verify-paper", "--filter", "standard-F3-I-dim1",
                        "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["failures"] == 0
    assert len(doc["cases"]) == 1
    assert doc["cases"][0]["status"] == "PASS"
