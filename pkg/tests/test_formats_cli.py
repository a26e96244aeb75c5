"""JSON round trips and the command-line surface, exit codes included."""

import json
from fractions import Fraction

import pytest

from icbound.certificate import c5_certificate
from icbound.cli import main
from icbound.errors import InputError
from icbound.formats import (SCHEMA_NAMES, certificate_from_json,
                             certificate_to_json, code_from_json,
                             code_to_json, dump_json, instance_from_json,
                             instance_to_json, load_json, matroid_from_json,
                             matroid_to_json, schema_by_name)
from icbound.instance import cycle_instance
from icbound.lincode import ScalarLinearCode
from icbound.lp import build_problem, solve_problem
from icbound.certificate import certificate_from_solution, verify_certificate
from icbound.matroid import _FANO_LABELS, fano, to_index_coding
from icbound.rational import rat, rat_str

FANO_ROWS = [[int(lab[i]) for lab in _FANO_LABELS] for i in range(3)]


def string_c5():
    """C5 with string labels, as any instance read back from a file has."""
    return instance_from_json(instance_to_json(cycle_instance(5)))


# -- serialization ---------------------------------------------------------------


def test_instance_roundtrip_stringifies_labels():
    inst = cycle_instance(5)
    obj = instance_to_json(inst)
    assert obj["messages"] == ["1", "2", "3", "4", "5"]
    back = instance_from_json(obj)
    assert back.messages.labels == ("1", "2", "3", "4", "5")
    assert list(back.receivers) == list(inst.receivers)  # same bit layout
    assert instance_to_json(back) == obj


def test_instance_graph_form():
    obj = {"graph": {"vertices": [1, 2, 3], "edges": [[1, 2], [2, 3]]}}
    inst = instance_from_json(obj)
    assert inst.n == 3
    # middle vertex knows both ends
    assert (1, 0b101) in list(inst.receivers)
    with pytest.raises(InputError):
        instance_from_json({"graph": {"vertices": [1, 2], "edges": [[1, 2, 1]]}})


def test_rational_strings():
    assert rat_str(rat("5/2")) == "5/2"
    assert rat_str(rat(4)) == "4"
    assert rat_str(rat("-6/4")) == "-3/2"


def test_certificate_roundtrip_bit_exact():
    inst = string_c5()
    schema = schema_by_name("submod")
    sol = solve_problem(build_problem(inst, schema))
    cert = certificate_from_solution(sol, schema.name)
    obj = certificate_to_json(cert, inst.messages, schema)
    text = dump_json(obj, None)
    back, back_schema = certificate_from_json(json.loads(text), inst.messages)
    assert back.x == cert.x
    assert back.y == cert.y
    assert back.claimed_value == cert.claimed_value
    assert back.closure == cert.closure
    assert verify_certificate(inst, back_schema, back) == rat("5/2")


def test_homext_certificate_roundtrip():
    from icbound.matroid import addineq_certificate

    inst = instance_from_json(instance_to_json(to_index_coding(fano())))
    schema = schema_by_name("submod+fano-odd")
    row = next(r for r in schema.rows(inst.messages) if r.side == 1)
    cert = addineq_certificate(fano(), row, schema)
    obj = certificate_to_json(cert, inst.messages, schema)
    kinds = {entry["row"]["kind"] for entry in obj["y"]}
    assert kinds == {"right"}
    assert obj["y"][0]["row"]["inner"]["kind"] == "homext"
    back, _ = certificate_from_json(obj, inst.messages, schema)
    assert back.x == cert.x and back.y == cert.y
    assert verify_certificate(inst, schema, back) == rat("133/33")


def test_schema_registry():
    for name in SCHEMA_NAMES:
        assert schema_by_name(name).name == name
    with pytest.raises(InputError):
        schema_by_name("entropic")


def test_matroid_json_forms():
    obj = matroid_to_json(fano())
    assert obj["elements"] == list(_FANO_LABELS)
    assert matroid_from_json(obj).ranks == fano().ranks
    via_matrix = matroid_from_json(
        {"elements": list(_FANO_LABELS), "matrix": {"p": 2, "rows": FANO_ROWS}}
    )
    assert via_matrix.ranks == fano().ranks
    bad = dict(obj)
    bad["ranks"] = list(obj["ranks"])
    bad["ranks"][3] = 3  # a pair cannot jump two ranks above its members
    with pytest.raises(InputError):
        matroid_from_json(bad)
    with pytest.raises(InputError):
        matroid_from_json(
            {"elements": ["a", "b"], "matrix": {"p": 2, "rows": [[1]]}}
        )


def test_code_json_roundtrip():
    code = ScalarLinearCode(3, ((1, 2, 0), (0, 1, 1)))
    assert code_from_json(code_to_json(code)) == code
    with pytest.raises(InputError):
        code_from_json([1, 2])
    with pytest.raises(InputError):
        code_from_json({"p": 3})


def test_malformed_certificate_fields():
    inst = string_c5()
    good = certificate_to_json(c5_certificate()[2], cycle_instance(5).messages,
                               schema_by_name("submod"))
    for mutate in (
        lambda o: o.pop("schema"),
        lambda o: o.pop("closure"),
        lambda o: o.update(closure="transitive"),
        lambda o: o["x"].append(dict(o["x"][0])),  # duplicate pair
        lambda o: o["x"][0].pop("v"),
        lambda o: o["y"][0]["row"].update(kind="mystery"),
    ):
        obj = json.loads(json.dumps(good))
        mutate(obj)
        with pytest.raises(InputError):
            certificate_from_json(obj, inst.messages)
    # homext row placed under a schema that has no such part
    with pytest.raises(InputError):
        certificate_from_json(
            {"schema": "submod", "closure": "single", "y": [
                {"row": {"kind": "homext", "schema": "submod", "base": [],
                         "atoms": {}}, "v": "1"},
            ], "x": []},
            inst.messages,
        )


def test_load_json_errors(tmp_path):
    with pytest.raises(InputError):
        load_json(str(tmp_path / "absent.json"))
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    with pytest.raises(InputError):
        load_json(str(bad))


# -- command line ----------------------------------------------------------------


@pytest.fixture()
def c5_file(tmp_path):
    path = tmp_path / "c5.json"
    dump_json(instance_to_json(cycle_instance(5)), str(path))
    return str(path)


@pytest.fixture()
def fano_file(tmp_path):
    path = tmp_path / "fano.json"
    dump_json(instance_to_json(to_index_coding(fano())), str(path))
    return str(path)


def test_cli_solve_verify_and_tamper(c5_file, tmp_path, capsys):
    cert = str(tmp_path / "cert.json")
    assert main(["solve", c5_file, "--emit-cert", cert]) == 0
    out = capsys.readouterr().out
    assert "b = 5/2" in out and cert in out

    assert main(["verify", c5_file, cert]) == 0
    assert "value = 5/2" in capsys.readouterr().out

    obj = load_json(cert)
    obj["value"] = "3"
    dump_json(obj, cert)
    assert main(["verify", c5_file, cert]) == 1
    assert "verification failed" in capsys.readouterr().err

    obj.pop("schema")
    dump_json(obj, cert)
    assert main(["verify", c5_file, cert]) == 2
    assert "input error" in capsys.readouterr().err


def test_cli_solve_iterated_closure(c5_file, capsys):
    assert main(["solve", c5_file, "--closure", "iterated"]) == 0
    assert "b = 5/2" in capsys.readouterr().out


def test_cli_product_and_combine(c5_file, tmp_path, capsys):
    cert = str(tmp_path / "cert.json")
    assert main(["solve", c5_file, "--emit-cert", cert]) == 0
    capsys.readouterr()

    prod = str(tmp_path / "c5sq.json")
    assert main(["product", c5_file, c5_file, "--out", prod]) == 0
    assert load_json(prod)["messages"] == [
        f"{a}:{b}" for a in "12345" for b in "12345"
    ]

    comb = str(tmp_path / "comb.json")
    assert main(["combine", c5_file, c5_file, cert, cert, "--out", comb]) == 0
    assert "value = 25/4" in capsys.readouterr().out
    assert main(["verify", prod, comb]) == 0
    assert "value = 25/4" in capsys.readouterr().out


def test_cli_matroid_alpha_search(tmp_path, c5_file, capsys):
    mat = str(tmp_path / "fano-matroid.json")
    dump_json(matroid_to_json(fano()), mat)
    inst = str(tmp_path / "fano-inst.json")
    assert main(["matroid2ic", mat, "--out", inst]) == 0
    assert len(load_json(inst)["receivers"]) == 49

    assert main(["alpha", c5_file]) == 0
    assert "alpha = 2" in capsys.readouterr().out
    assert main(["alpha", c5_file, "--cap", "3"]) == 3
    assert "resource cap" in capsys.readouterr().err

    assert main(["search-linear", c5_file, "2"]) == 0
    assert "lambda1 = 3" in capsys.readouterr().out
    assert main(["search-linear", c5_file, "2", "--l-max", "2"]) == 0
    assert "exceeds 2" in capsys.readouterr().out
    assert main(["search-linear", inst, "2"]) == 3


def test_cli_row_policies(fano_file, tmp_path, capsys):
    assert main(["solve", fano_file, "--schema", "submod+fano-odd"]) == 0
    assert "b = 73/18" in capsys.readouterr().out

    # swapping the first two coordinates is an automorphism, so the orbit
    # policy adds a row without moving the optimum
    perms = str(tmp_path / "perms.json")
    with open(perms, "w") as fh:
        json.dump([{"100": "010", "010": "100", "101": "011", "011": "101"}], fh)
    assert main(["solve", fano_file, "--schema", "submod+fano-odd",
                 "--rows", f"orbit:{perms}"]) == 0
    assert "b = 73/18" in capsys.readouterr().out

    homs = str(tmp_path / "homs.json")
    atoms = {lab: [lab] for lab in _FANO_LABELS}
    with open(homs, "w") as fh:
        json.dump([{"base": [], "atoms": atoms}], fh)
    assert main(["solve", fano_file, "--schema", "submod+fano-odd",
                 "--rows", f"file:{homs}"]) == 0
    assert "b = 73/18" in capsys.readouterr().out

    assert main(["solve", fano_file, "--schema", "submod",
                 "--rows", f"file:{homs}"]) == 2
    assert main(["solve", fano_file, "--schema", "submod+fano-odd",
                 "--rows", "sideways"]) == 2
    err = capsys.readouterr().err
    assert "input error" in err


def test_cli_demos(capsys):
    assert main(["demo", "c5"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out and out.count("ok:") == 4

    assert main(["demo", "alpha-beta"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out and "25/4" in out
