import json
import time

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import brute_allowed_restrictions
from swcalc import scenario as sc
from swcalc.blowdown import (
    CpConfig,
    LensBoundary,
    Lifter,
    LiftNotFound,
    allowed_restrictions,
    cp_gram,
    descend_element,
    descends,
    lift,
    short_vectors,
)
from swcalc.lattice import ClassTable, LatticeError, is_characteristic, pair, solve_pairings, standard_lattice
from swcalc.ring import SWElement


def r8_table():
    data = sc.load("r8-q-xn")
    return ClassTable(standard_lattice(10), data["classes"])


def r8_config(t):
    return CpConfig(3, [t["C"], t["S"]])


def test_cp_gram_examples():
    assert cp_gram(2) == [[-4]]
    assert cp_gram(3) == [[-5, 1], [1, -2]]
    g = cp_gram(5)
    assert [g[i][i] for i in range(4)] == [-7, -2, -2, -2]
    assert g[0][1] == g[2][3] == 1 and g[0][2] == 0
    with pytest.raises(ValueError):
        cp_gram(1)


def test_lens_boundary():
    assert str(LensBoundary.of(5)) == "L(25, -4)"
    assert LensBoundary.of(3) == LensBoundary(9, -2)


def test_config_validates_chain():
    t = r8_table()
    with pytest.raises(LatticeError):
        CpConfig(3, [t["S"], t["C"]])
    with pytest.raises(LatticeError):
        CpConfig(4, [t["C"], t["S"]])


def test_allowed_p2():
    assert allowed_restrictions(2) == [(-2,), (2,)]


def test_allowed_p3_contains_fiber_classes():
    found = allowed_restrictions(3)
    assert (3, 0) in found and (-3, 0) in found
    # (1, -2) is characteristic on the chain with square -2 as well
    assert solve_pairings(cp_gram(3), (1, -2))[1] == -2
    assert found == [(-3, 0), (-1, 2), (1, -2), (3, 0)]


@pytest.mark.parametrize("v, ok", [((3, 0), True), ((-3, 0), True), ((-1, 0), False), ((1, 0), False), ((0, 0), False)])
def test_descends_p3(v, ok):
    assert descends(v, 3) is ok


def test_descends_length():
    with pytest.raises(ValueError):
        descends((3,), 3)


def test_allowed_counts():
    assert [len(allowed_restrictions(p)) for p in range(2, 8)] == [2, 4, 8, 16, 32, 64]


@pytest.mark.parametrize("p", range(2, 8))
def test_matches_brute_force(p):
    assert allowed_restrictions(p) == brute_allowed_restrictions(p)


@pytest.mark.parametrize("p", range(2, 10))
def test_negation_closed_and_parity(p):
    found = set(allowed_restrictions(p))
    g = cp_gram(p)
    for v in found:
        assert tuple(-x for x in v) in found
        assert all((v[i] - g[i][i]) % 2 == 0 for i in range(p - 1))


def test_golden_allowed(golden_dir):
    table = json.loads((golden_dir / "allowed_restrictions.json").read_text())
    for p, vs in table.items():
        assert [list(v) for v in allowed_restrictions(int(p))] == vs


def test_short_vectors_small():
    assert short_vectors([[1, 0], [0, 1]], 1) == [(-1, 0), (0, -1), (0, 0), (0, 1), (1, 0)]
    with pytest.raises(ValueError):
        short_vectors([[1, 0], [0, -1]], 1)


def test_r8_lift_of_fiber_plus_exceptional():
    t = r8_table()
    gens = [t[x] for x in ["H", "E1", "E2", "E3", "E4", "E5", "E6", "E7", "G9"]]
    cand = [pair(t["T"], g) for g in gens]
    assert cand == [3, 1, 1, 1, 1, 1, 1, 1, 3]
    k = lift(cand, t.lattice, r8_config(t), gens)
    assert k == t["T"]
    assert r8_config(t).pairings(k) == (3, 0)


def test_lift_rejects_non_characteristic():
    t = r8_table()
    gens = [t[x] for x in ["H", "E1", "E2", "E3", "E4", "E5", "E6", "E7", "G9"]]
    with pytest.raises(ValueError):
        Lifter(t.lattice, r8_config(t), gens).lift([0] * 9)


def test_lift_not_found():
    t = r8_table()
    gens = [t[x] for x in ["H", "E1", "E2", "E3", "E4", "E5", "E6", "E7", "G9"]]
    # F - E restricts to (-1, 0) on the chain, so no allowed restriction fits
    cand = [pair(t["F"] - t["E"], g) for g in gens]
    with pytest.raises(LiftNotFound):
        Lifter(t.lattice, r8_config(t), gens).lift(cand)


def test_lifter_needs_full_rank():
    t = r8_table()
    with pytest.raises(LatticeError):
        Lifter(t.lattice, r8_config(t), [t["H"]])


def test_r7_survivor_lifts():
    report = sc.run("r7-basic-classes")
    data = sc.load("r7-basic-classes")
    t = ClassTable(standard_lattice(11), data["classes"])
    cfg = CpConfig(5, [t[x] for x in ["u0", "u1", "u2", "u3"]])
    gens = [t[f"V{i}"] for i in range(1, 9)]
    lifter = Lifter(t.lattice, cfg, gens)
    survivors = report["enumeration"][1]["candidates"]
    assert len(survivors) == 14
    for cand in survivors:
        v = cand["pairings"][:8]
        ks = lifter.lifts(v)
        assert ks, v
        q = lifter.candidate_square(v)
        for k in ks:
            assert is_characteristic(k)
            assert k.square() == q - 4
            assert [pair(k, g) for g in gens] == v
            assert cfg.pairings(k) in allowed_restrictions(5)


def test_descend_element_r8():
    t = r8_table()
    sw = SWElement.parse("t^-1*e^-1 + t^-1*e - t*e^-1 - t*e", ["t", "e"])
    out, rows = descend_element(sw, {"t": t["F"], "e": t["E"]}, r8_config(t), {"t": t["T"]})
    assert out == SWElement.parse("t^-1 - t", ["t"])
    kept = [(r.ambient_class, r.coefficient) for r in rows if r.descends]
    assert kept == [(-t["T"], 1), (t["T"], -1)]
    assert sorted(r.pairings for r in rows if not r.descends) == [(-1, 0), (1, 0)]


def test_p9_runtime():
    start = time.perf_counter()
    found = allowed_restrictions(9)
    assert len(found) == 256
    assert time.perf_counter() - start < 30


@given(st.integers(2, 7), st.data())
def test_descends_agrees_with_membership(p, data):
    v = tuple(data.draw(st.lists(st.integers(-p - 3, p + 3), min_size=p - 1, max_size=p - 1)))
    assert descends(v, p) == (v in set(allowed_restrictions(p)))
