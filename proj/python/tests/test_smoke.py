import pytest

import bloch_forge as bf


def test_ring_info():
    info = bf.ring_info("gf(9)")
    assert info["size"] == 9
    assert info["unit_factors"] == [8]
    assert bf.ring_info("truncpoly(gf(4),2)")["unit_factors"] == [2, 6]


def test_bloch_group_of_finite_fields():
    for q in (4, 5, 7, 8, 9, 11, 13, 16):
        expected = q + 1 if q % 2 == 0 else (q + 1) // 2
        assert bf.bloch_group(f"gf({q})")["bloch"]["invariant_factors"] == [expected]


def test_k2_vanishes():
    k = bf.k2_presentations("gf(7)")
    assert k["ms"]["text"] == "0" and k["milnor"]["text"] == "0"


def test_general_position():
    assert not bf.in_general_position("zmod(9)", 2, [["1", "0"]], [["1", "3"]])
    assert bf.in_general_position("gf(3)", 2, [["1", "1"]], [["1", "0"], ["0", "1"]], oracle=True)
    res = bf.max_general_position("gf(4)", 3)
    assert res["exhaustive"] and res["size"] == 6
    assert bf.c2_exact("gf(4)") == 5


def test_homology():
    assert bf.homology("sl2(gf(4))", 3, method="stable")["text"] == "Z/30"
    assert bf.homology("cyclic(4)", 3)["invariant_factors"] == [4]
    with pytest.raises(bf.BudgetExceeded):
        bf.homology("sl2(gf(5))", 3)


def test_exactness_and_chains():
    rep = bf.complex_exactness("lines", "gf(3)", 1, 2)
    assert rep["all_exact"]
    assert bf.verify_d3_identity("gf(7)", "3")
    assert bf.additive_coinvariants("gf(4)", 2)["coinvariants"]["text"] == "Z/2"


def test_bad_ring_is_rejected():
    with pytest.raises(ValueError):
        bf.ring_info("bogus(3)")


def test_quick_criterion():
    c = bf.run_criterion(6)
    assert c["pass"]
