import json

import pytest

from hopfkit import io
from hopfkit.catalog import (
    HOPF_NAMES,
    dual_numbers,
    hopf_by_name,
    subgroup,
    sweedler4,
    sweedler_projection,
    symmetric,
)
from hopfkit.errors import FormatError
from hopfkit.fixtures import fixture_files, graded_module, parity_module
from hopfkit.localunits import group_oracle, infinite_dihedral


@pytest.mark.parametrize("name", HOPF_NAMES)
def test_hopf_round_trip(name):
    H = hopf_by_name(name)
    d = io.hopf_to_dict(H)
    K = io.hopf_from_dict(json.loads(io.dumps(d)))
    assert K.same_structure(H)
    assert K.antipode == H.antipode and K.counit == H.counit
    assert io.hopf_to_dict(K) == d


def test_hopf_without_antipode_is_solved():
    d = io.hopf_to_dict(sweedler4())
    for key in ("counit", "antipode", "antipode_inverse"):
        del d[key]
    H = io.hopf_from_dict(d)
    assert H.antipode == sweedler4().antipode


def test_hopf_reference():
    assert io.hopf_from_dict({"format": io.HOPF, "ref": "sweedler4"}).same_structure(sweedler4())
    with pytest.raises(FormatError):
        io.hopf_from_dict({"ref": "nothing"})


def test_labels_or_indices():
    by_label = {"basis": ["1", "y"], "unit": ["1", "0"],
                "mult": [["1", "1", "1", "1"], ["1", "y", "y", "1"], ["y", "1", "y", "1"]]}
    by_index = {"basis": ["1", "y"], "unit": [1, 0], "mult": [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1]]}
    A, B = io.algebra_from_dict(by_label), io.algebra_from_dict(by_index)
    assert A.mult == B.mult == dual_numbers().mult


def test_repeated_entries_add_up():
    d = {"basis": ["1"], "unit": ["1"], "mult": [[0, 0, 0, "1/2"], [0, 0, 0, "1/2"]]}
    assert io.algebra_from_dict(d).mult[0, 0, 0] == 1


@pytest.mark.parametrize("bad,match", [
    ({"basis": ["1"], "unit": ["1"], "mult": [[0, 0, 3, 1]]}, "out of range"),
    ({"basis": ["1"], "unit": ["1"], "mult": [[0, 0, "z", 1]]}, "unknown basis element"),
    ({"basis": ["1"], "unit": ["1"], "mult": [[0, 0, 0, 0.5]]}, "integer or a string"),
    ({"basis": ["1"], "unit": ["1"], "mult": [[0, 0, 0, "1/0"]]}, "bad coefficient"),
    ({"basis": ["1", "1"], "unit": ["1", "0"]}, "duplicate"),
    ({"basis": ["1"], "unit": ["1", "0"]}, "length 1"),
    ({"basis": ["1"], "unit": ["1"], "mult": [[0, 0, 1]]}, "must be"),
    ({"format": "hopfkit/hopf", "basis": ["1"], "unit": ["1"]}, "expected format"),
])
def test_algebra_format_errors(bad, match):
    with pytest.raises(FormatError, match=match):
        io.algebra_from_dict(bad)


def test_json_errors_carry_position():
    with pytest.raises(FormatError, match=r"line 2, column"):
        io.parse_json('{\n  "basis": [1,,]\n}', "bad.json")
    with pytest.raises(FormatError, match="top level"):
        io.parse_json("[1, 2]")


def test_group_round_trip():
    G = symmetric(3)
    H = io.group_from_dict(io.group_to_dict(G))
    assert H.elements == G.elements and all(H.mul(i, j) == G.mul(i, j) for i in range(6) for j in range(6))
    with pytest.raises(FormatError):
        io.group_from_dict({"elements": ["e", "a"], "table": [[0, 1], [1, 1]]})
    named = io.group_from_dict({"elements": ["e", "a"], "table": [["e", "a"], ["a", "e"]]})
    assert named.mul(1, 1) == 0


def test_morphism_round_trip():
    pi = sweedler_projection()
    d = io.morphism_to_dict(pi)
    back = io.morphism_from_dict(json.loads(io.dumps(d)), pi.source, pi.target)
    assert back.matrix == pi.matrix
    with pytest.raises(FormatError):
        io.morphism_from_dict(d, pi.target, pi.source)


def test_module_algebra_round_trip():
    U = sweedler_projection().target
    for M in (graded_module(U), parity_module()):
        d = io.module_algebra_to_dict(M)
        back = io.module_algebra_from_dict(json.loads(io.dumps(d)))
        assert back.action == M.action and back.side == M.side
        assert back.hopf.same_structure(M.hopf)
        short = io.module_algebra_to_dict(M, include_hopf=False)
        assert isinstance(short["hopf"], str)
        with pytest.raises(FormatError):
            io.module_algebra_from_dict(short)
        assert io.module_algebra_from_dict(short, M.hopf).action == M.action


def test_module_side_is_checked():
    d = io.module_algebra_to_dict(parity_module())
    d["side"] = "middle"
    with pytest.raises(FormatError):
        io.module_algebra_from_dict(d)


def test_group_module_round_trip():
    D = infinite_dihedral()
    d = fixture_files()["coeff-parity.json"]
    sub = [D.identity, D.parse("s")]
    coeff = io.group_module_from_dict(d, D, sub)
    assert coeff.verify().ok
    assert io.group_module_to_dict(coeff)["action"] == d["action"]
    with pytest.raises(FormatError, match="not in the subgroup"):
        io.group_module_from_dict(d, D, [D.identity])
    with pytest.raises(FormatError, match="no action"):
        io.group_module_from_dict(d, D, sub + [D.parse("r")])


def test_group_module_over_finite_group():
    emb = subgroup(symmetric(3), ["e", "(1 2)"])
    G = group_oracle("symmetric:3")
    d = {"algebra": io.algebra_to_dict(dual_numbers()), "action": {"(1 2)": [["1", "0"], ["0", "-1"]]}}
    coeff = io.group_module_from_dict(d, G, ["e", "(1 2)"])
    assert coeff.verify().ok and coeff.order == emb.subgroup.order


def test_dumps_is_canonical():
    text = io.dumps(io.hopf_to_dict(sweedler4()))
    assert text.endswith("}\n")
    assert '"basis": ["1", "g", "x", "gx"]' in text
    assert json.loads(text) == io.hopf_to_dict(sweedler4())


def test_fixture_files_load():
    files = fixture_files()
    for name, d in files.items():
        fmt = d.get("format")
        if fmt == io.HOPF:
            assert io.hopf_from_dict(d).dim >= 1, name
        elif fmt == io.MORPHISM:
            assert "matrix" in d
        elif fmt == io.GROUP:
            assert io.group_from_dict(d).order == 6
