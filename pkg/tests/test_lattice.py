"""Lattice-model tests.

The numeric expectations (pairings, determinants, dimensions) are frozen
from independent computations: the determinants were recomputed with sympy
over exact rationals, the pairing examples by hand from the two-generator
rule, and the invariant dimensions cross-checked against the published
counts.
"""

from fractions import Fraction

import pytest
import sympy

from enriq import lattice
from enriq.lattice import (
    CORE_CLASSES,
    GENERATORS,
    LATTICE_BASIS,
    RANK,
    as_vector,
    class_vector,
    core_action_table,
    exceptional_pullback,
    galois_invariant_classes,
    galois_matrix,
    gram,
    gram_matrix,
    in_lattice,
    invariants_under,
    lattice_coords,
    pullback_sublattice,
    quotient_F2,
    subfield_fixing_rows,
    verify_decomposition,
    verify_exceptional_pullbacks,
    verify_galois_isometries,
    verify_suite,
)

ALL_ROWS = [
    "sqrt5", "i", "sqrt_m2p2r2", "sqrt2", "sqrtc", "gamma0", "eta0",
    "rt4ab", "sqrta", "sqrt_mc_m10rab", "xi0", "theta0", "xi0p",
    "theta1p", "xi1p", "theta2p", "xi2p",
]


def test_pairing_examples():
    assert gram("F1", "G1") == 4
    assert gram("F1", "F1") == 0
    assert gram("F3", "G7") == 2
    assert gram("F2", "F9") == 2
    assert gram("Z1", "Z1") == 10
    assert gram("Z2", "Z2") == 22
    assert gram("Z3", "Z3") == 10
    assert gram("Z4", "Z4") == 22
    assert gram("Z1", "F1") == 4
    assert isinstance(gram("Z1", "Z1"), int)


def test_companion_classes():
    # G7 = F1 + G1 - F7 in the ambient coordinates
    assert class_vector("G7") == as_vector({"F1": 1, "G1": 1, "F7": -1})
    for j in range(2, 15):
        assert gram(f"F{j}", f"G{j}") == 4
        assert gram(f"F{j}", f"F{j}") == 0


def test_gram_matrix_is_even_of_determinant_512():
    # ambient units are isotropic and pair by the two-generator rule ...
    m = sympy.Matrix(RANK, RANK, lambda i, j: sympy.Rational(gram_matrix()[i][j]))
    assert m == m.T
    assert all(m[i, i] == 0 for i in range(RANK))
    # ... while the pairing restricted to the lattice basis is even of det 512
    cols = [class_vector(n) for n in LATTICE_BASIS]
    b = sympy.Matrix(RANK, RANK, lambda i, j: sympy.Rational(cols[j][i]))
    gb = b.T * m * b
    assert [gb[i, i] for i in range(RANK)] == [10, 22, 10, 22] + [0] * 11
    assert all(gb[i, j] == int(gb[i, j]) for i in range(RANK) for j in range(RANK))
    assert all(gb[i, i] % 2 == 0 for i in range(RANK))
    assert gb.det() == 512


def test_basis_change_determinant():
    # index 16 over the span of the unit classes, orientation-reversing
    cols = [class_vector(n) for n in LATTICE_BASIS]
    b = sympy.Matrix(RANK, RANK, lambda i, j: sympy.Rational(cols[j][i]))
    assert b.det() == sympy.Rational(-1, 16)


def test_every_generator_is_integral():
    for name in GENERATORS:
        assert in_lattice(name)
    for j in range(1, 15):
        assert in_lattice(f"G{j}")
    assert all(c.denominator == 1 for c in lattice_coords("Z3"))


def test_half_sums_are_not_lattice_points():
    assert not in_lattice({"F1": Fraction(1, 2)})
    # the combination whose membership the corrected quarter-turn row hinges on
    assert not in_lattice({"F1": Fraction(1, 2), "G1": Fraction(1, 2)})
    assert in_lattice({"F1": 1, "G1": 1})


def test_pullback_sublattice_memberships():
    sub = pullback_sublattice()
    assert sub.rank == 6
    assert "G1" in sub
    assert "F5" not in sub
    assert sub.contains({"Z1": 1, "F2": -1, "F10": -1, "F12": -1})
    coeffs = sub.membership_coordinates("G1")
    assert coeffs is not None and all(isinstance(c, int) for c in coeffs)


def test_quotient_dimension_and_basis():
    q = quotient_F2()
    assert q.dimension == 9
    assert q.basis_names == ("F5", "F6", "F8", "F9", "F11", "F13", "Z2", "Z3", "Z4")


def test_quotient_relations():
    q = quotient_F2()
    assert q.verify_relations()
    assert q.image_names(class_vector("F14")) == ["F5", "F6", "F8", "F9", "F13"]
    assert q.image_names(class_vector("F4")) == ["F5", "F6", "F11"]
    assert q.image_names(class_vector("F7")) == ["F8", "F9", "F11"]
    assert q.image(class_vector("G1")) == 0
    assert q.image(class_vector("Z1")) == 0
    # companions agree with their partners in the quotient
    for j in range(1, 15):
        assert q.image(class_vector(f"F{j}")) == q.image(class_vector(f"G{j}"))


def test_quotient_rejects_non_lattice_input():
    q = quotient_F2()
    with pytest.raises(ValueError):
        q.image({"F1": Fraction(1, 2)})


def test_galois_rows_are_isometries():
    assert verify_galois_isometries()


def test_galois_matrix_preserves_gram():
    from enriq.actions import rows_by_name

    g = sympy.Matrix(RANK, RANK, lambda i, j: sympy.Rational(gram_matrix()[i][j]))
    for name in ("rt4ab", "sqrt5", "theta0"):
        a = galois_matrix(rows_by_name()[name])
        am = sympy.Matrix(RANK, RANK, lambda i, j: sympy.Rational(a[i][j]))
        assert am.T * g * am == g
        assert abs(am.det()) == 1


def test_core_action_table():
    table = core_action_table()
    assert set(table) == set(ALL_ROWS)
    assert table["theta0"] == {"F5": "F5", "F6": "F6", "F8": "F9", "F9": "F8", "F11": "F11"}
    assert table["rt4ab"] == {"F5": "F6", "F6": "F5", "F8": "F8", "F9": "F9", "F11": "F11"}
    assert table["sqrt2"] == {c: c for c in CORE_CLASSES}
    # F11 is never moved
    assert all(perm["F11"] == "F11" for perm in table.values())


def test_decomposition_structure():
    assert verify_decomposition()
    table = core_action_table()
    broken = dict(table)
    broken["theta0"] = {c: c for c in CORE_CLASSES}
    assert not verify_decomposition(broken)
    trivial = {name: {c: c for c in CORE_CLASSES} for name in table}
    assert not verify_decomposition(trivial)


def test_exceptional_pullbacks():
    assert verify_exceptional_pullbacks()
    es = [exceptional_pullback(f"E{i}") for i in range(1, 5)]
    for i, e in enumerate(es):
        assert gram(e, e) == -8
        assert in_lattice(e)
        assert gram("G1", e) == 0
        for other in es[i + 1:]:
            assert gram(e, other) == 0
    fibre_sum = as_vector({"F2": 1, "G2": 1})
    assert all(gram(fibre_sum, e) == 4 for e in es)
    with pytest.raises(KeyError):
        exceptional_pullback("E5")


def test_invariants_trivial_and_full_group():
    assert invariants_under([]).dimension == 9
    full = invariants_under(ALL_ROWS)
    assert full.dimension == 3
    assert sorted(full.basis_names) == [("F11",), ("F5", "F6"), ("F8", "F9")]
    with pytest.raises(ValueError):
        invariants_under(["nope"])


def test_invariants_shrink_along_subgroup_chains():
    chain = [[], ["theta0"], ["theta0", "rt4ab"], ["theta0", "rt4ab", "gamma0"], ALL_ROWS]
    dims = [invariants_under(s).dimension for s in chain]
    assert dims == sorted(dims, reverse=True)
    assert dims[0] == 9 and dims[-1] == 3


def test_subfield_fixing_rows_derived_not_hardcoded(k_tower_witness, k1_tower_witness):
    names = subfield_fixing_rows(k_tower_witness, k1_tower_witness.step_names())
    assert names == ["sqrtc", "xi0", "xi0p", "xi1p", "theta2p", "xi2p"]
    inv = galois_invariant_classes(k_tower_witness, k1_tower_witness.step_names())
    assert inv.dimension == 5
    assert sorted(inv.basis_names) == [("F11",), ("F5",), ("F6",), ("F8",), ("F9",)]


def test_verify_suite(k_tower_witness, k1_tower_witness):
    res = verify_suite(splitting_tower=k_tower_witness,
                       subfield_names=k1_tower_witness.step_names())
    assert res["ok"] is True
    assert res["even_lattice"] is True
    assert res["pullback_rank"] == 6
    assert res["quotient_dimension"] == 9
    assert res["galois_isometries"] is True
    assert res["decomposition"] is True
    assert res["exceptional_pullbacks"] is True
    assert res["invariants_trivial_group_dim"] == 9
    assert res["invariants_full_group_dim"] == 3
    assert res["ground_field_invariants_dim"] == 5
    assert res["ground_field_invariants_match"] is True
