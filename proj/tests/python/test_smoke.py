import pytest

import tetra3d as t


def test_golden_selftest():
    total, failures = t.selftest()
    assert total > 500
    assert failures == []


def test_coefficients_round_trip():
    z = t.z_gamma([0, 1, 1, 2, 0, 0, 3, 1])
    assert z == t.QCoeff.parse("q^4*(1+q)^2*(1+q^2)")
    assert t.QCoeff.parse(str(z)) == z
    assert str(t.QCoeff(1) + t.QCoeff.parse("s^2")) == "1+s^2"


def test_operator_access():
    L = t.family("L")
    assert L.signature == "FFB"
    assert str(L.element([0, 1, 2], [0, 1, 2])) == "-s^6"
    assert [str(c) for _, c in L.column([1, 0, 2])] == ["1-s^8", "s^4"]
    assert t.family("L", "negq").element([0, 1, 0], [0, 1, 0]) == t.QCoeff.parse("q")
    with pytest.raises(ValueError):
        t.family("L", "q3")


def test_equations_and_mutation():
    rep = t.verify("TE_BS06", 1)
    assert rep["passed"] and rep["status"] == "pass" and rep["checked"] > 0
    assert not t.verify_mutated("TE_BS06", 1)["passed"]
    assert "RE_B7" in t.equation_names()
    with pytest.raises(ValueError):
        t.verify("TE_missing", 1)


def test_relations_and_involutions():
    for name in t.relation_names():
        assert t.verify_relation(name, 2)["passed"], name
    assert t.verify_involution("Y", 2)["passed"]


def test_crystal_and_pbw():
    assert t.crystal_element("Y", [1, 1, 2, 0], [3, 0, 2, 1]) == -1
    assert t.verify_combinatorial("BS06_crys", 2)["status"] == "pass"
    assert t.operator_for("A:ox") == "L"
    rows = t.pbw_transition("A:ox", [1, 2])
    L = t.family("L")
    assert rows
    for out, inp, c in rows:
        assert L.element(out, inp) == c
