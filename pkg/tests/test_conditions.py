"""Screening-condition tests, pinned to the published witness (12, 111, 13).

The full witness report is computed once per module.  Frozen expectations
(symbol values, survivor counts, uncertified places) were produced by the
deterministic searches and then cross-checked by direct modular arithmetic;
local-point certificates are re-verified by substitution rather than pinned
coordinate-by-coordinate.
"""

from fractions import Fraction

import pytest

from enriq.arith import is_prime, legendre
from enriq.conditions import (
    FAIL,
    PASS,
    PROBABLE,
    UNKNOWN,
    WITNESS,
    check_condition,
    check_nonsingular,
    condition3,
    condition4,
    evaluate_triplet,
    is_nonsingular,
    nonsingularity_factors,
    search_triplets,
)


@pytest.fixture(scope="module")
def witness_report():
    return evaluate_triplet(*WITNESS)


def _by_index(report):
    return {c.index: c for c in report.conditions}


def test_witness_verdicts(witness_report):
    verdicts = {i: c.verdict for i, c in _by_index(witness_report).items()}
    assert verdicts == {1: PASS, 2: PASS, 3: PASS, 4: PASS, 5: PASS, 6: PASS,
                        7: PROBABLE, 8: PASS}
    assert witness_report.overall == PROBABLE
    assert witness_report.nonsingular is True


def test_witness_nonsingularity_factors():
    assert nonsingularity_factors(*WITNESS) == {
        "a*b*c": 17316,
        "5a+5b+c": 628,
        "20a+5b+2c": 821,
        "4a^2+b^2": 12897,
        "c^2-100ab": -133031,
        "c^2+5bc+10ac+25ab": 42244,
    }
    assert check_nonsingular is is_nonsingular
    # c^2 = 100ab kills one factor:
    assert not is_nonsingular(1, 1, 10)


def test_condition1_witness_symbols(witness_report):
    rpt = _by_index(witness_report)[1]
    assert rpt.data["value"] == 628  # = 2^2 * 157
    assert rpt.data["primes"] == [2, 157]
    assert rpt.data["symbols"] == {"2": None, "157": -1}
    assert any("degenerate" in note for note in rpt.notes)
    # independent check: 5 really is a non-residue mod 157
    assert pow(5, 78, 157) == 156


def test_condition2_witness_symbols(witness_report):
    rpt = _by_index(witness_report)[2]
    assert rpt.data["value"] == 821
    assert is_prime(821)
    assert rpt.data["symbols"] == {"821": -1}
    assert legendre(10, 821) == -1


def test_condition3_isotropic_counterexample():
    # <1,1,1,1> has square discriminant and trivial Hasse invariant over
    # Q_3, hence is isotropic there; the screen must reject it.
    assert condition3(1, 1, 1).verdict == FAIL
    assert condition3(*WITNESS).verdict == PASS


def test_condition4_values():
    # -111*13 = -1443 = 2 mod 5, a non-residue.
    rpt = condition4(*WITNESS)
    assert rpt.verdict == PASS
    assert rpt.data["legendre_minus_bc_mod5"] == -1
    # -1*4 = 1 mod 5 is a square: reject.
    assert condition4(1, 1, 4).verdict == FAIL
    # 5 | bc degenerates the symbol to 0, which passes with a note.
    rpt0 = condition4(1, 5, 4)
    assert rpt0.verdict == PASS
    assert rpt0.data["legendre_minus_bc_mod5"] == 0
    assert rpt0.notes


def test_condition4_depends_only_on_bc_mod5():
    for b in range(1, 12):
        for c in range(1, 12):
            base = condition4(7, b, c).verdict
            assert condition4(1, b, c).verdict == base  # a is irrelevant
            assert condition4(7, b + 5, c).verdict == base
            assert condition4(7, b, c + 10).verdict == base


def test_residue_screens():
    assert check_condition(*WITNESS, 5).verdict == PASS
    assert check_condition(*WITNESS, 6).verdict == PASS
    a, b, c = WITNESS
    assert check_condition(a + 1, b, c, 5).verdict == FAIL
    assert check_condition(a, b + 7, c, 5).verdict == PASS  # mod-7 shift is invisible
    assert check_condition(a, b, c + 11, 6).verdict == PASS  # mod-11 shift is invisible
    assert check_condition(a, b, c + 1, 6).verdict == FAIL


def test_condition7_witness_places(witness_report):
    rpt = _by_index(witness_report)[7]
    places = rpt.data["places"]
    # the real place plus every prime below the default bound of 100
    assert len(places) == 26
    assert rpt.data["uncertified_places"] == ["2"]
    assert places["2"] == {"status": "survived", "modulus": "2^4", "survivors": 64}
    for p in (3, 5, 13, 97):
        assert places[str(p)]["status"] == "certified"

    a, b, c = WITNESS
    for key, info in places.items():
        if info["status"] != "certified":
            continue
        if key == "real":
            v0, v1, v2 = (Fraction(s) for s in info["point"])
            q0 = v0 * v1 + 5 * v2 * v2
            q1 = (v0 + v1) * (v0 + 2 * v1)
            q2 = a * v0 * v0 + b * v1 * v1 + c * v2 * v2
            assert q0 >= 0 and q0 - q1 >= 0 and q2 >= 0
            continue
        p = int(key)
        (v0, v1, v2), (w0, w1, w2) = info["point"]
        assert any(x % p for x in (v0, v1, v2))
        assert (v0 * v1 + 5 * v2 * v2 - w0 * w0) % p == 0
        assert ((v0 + v1) * (v0 + 2 * v1) - w0 * w0 + 5 * w1 * w1) % p == 0
        assert (a * v0 * v0 + b * v1 * v1 + c * v2 * v2 - w2 * w2) % p == 0


def test_condition7_small_bound():
    rpt = check_condition(*WITNESS, 7, prime_bound=3)
    assert set(rpt.data["places"]) == {"real", "2", "3"}
    assert rpt.verdict == PROBABLE


def test_condition8_witness(witness_report):
    rpt = _by_index(witness_report)[8]
    assert rpt.verdict == PASS
    assert len(rpt.data["steps"]) == 18
    assert rpt.data["degenerate_steps"] == []
    assert rpt.data["unverified_steps"] == []


def test_condition8_degenerate_triplet():
    rpt = check_condition(1, 1, 1, 8)
    assert rpt.verdict == FAIL
    assert rpt.data["degenerate_steps"] == [
        "rt4ab", "sqrt_mc_m10rab", "sqrta", "sqrtab",
        "sqrtc", "theta0", "theta2p", "xi0",
    ]


def test_check_condition_rejects_unknown_index():
    with pytest.raises(ValueError):
        check_condition(*WITNESS, 0)
    with pytest.raises(ValueError):
        check_condition(*WITNESS, 9)


def test_evaluate_subset_of_conditions():
    report = evaluate_triplet(*WITNESS, conditions=[5, 6])
    assert [c.index for c in report.conditions] == [5, 6]
    assert report.overall == PASS
    # a singular triplet fails overall even when the asked screens pass
    singular = evaluate_triplet(1, 1, 10, conditions=[4])
    assert singular.conditions[0].verdict == PASS
    assert singular.overall == FAIL


def test_report_serialization(witness_report):
    d = witness_report.to_dict()
    assert d["triplet"] == [12, 111, 13]
    assert d["overall"] == PROBABLE
    assert len(d["conditions"]) == 8
    assert all(set(c) == {"condition", "verdict", "detail", "notes", "data"}
               for c in d["conditions"])


def test_search_box_finds_witness():
    hits = list(search_triplets([(12, 12), (111, 111), (13, 13)],
                                conditions=[1, 2, 3, 4, 5, 6]))
    assert len(hits) == 1
    assert (hits[0].a, hits[0].b, hits[0].c) == WITNESS
    assert hits[0].overall == PASS


def test_search_box_small_cube_empty():
    # a = 1..4 never hits 5 mod 7, so the first cheap filter clears the box
    assert list(search_triplets([(1, 4), (1, 4), (1, 4)], conditions=[5])) == []


def test_search_box_residue_neighbour():
    # (12, 34, 13) matches both residue screens (34 = 6 mod 7, 1 mod 11)
    hits = list(search_triplets([(12, 12), (30, 40), (13, 13)], conditions=[5, 6]))
    assert [(r.a, r.b, r.c) for r in hits] == [(12, 34, 13)]
