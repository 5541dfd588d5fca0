"""The rank-15 fibre-class lattice, its Galois action, and the mod-2 quotient.

The K3 cover carries 28 genus-1 fibre classes F1..F14, G1..G14 subject to
F_i + G_i = F_j + G_j, pairing by F_i.G_i = 4, any two other distinct
classes meeting in 2, and all self-intersections 0.  Together with four
half-integer classes Z1..Z4 they span a rank-15 even lattice.  This module
provides

* exact Gram pairing of arbitrary rational combinations (:func:`gram`);
* the rank-6 sublattice pulled back from the del Pezzo quotient
  (:func:`pullback_sublattice`) with an integral membership test;
* the 9-dimensional F2 quotient by that sublattice plus doubles
  (:func:`quotient_F2`) carrying the induced Galois action;
* fixed-subspace computations (:func:`invariants_under`) and the
  trivial-times-induced-times-induced structure test
  (:func:`verify_decomposition`);
* consistency checks for the exceptional-curve pullback classes and for
  every Galois row acting as a lattice isometry.

All queries are exact (``fractions.Fraction`` / bitmask F2) and cached;
the shipped ``lattice_classes.json`` is the single source of class data.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Optional, Sequence, Union

from . import actions, datafiles, f2

DATA_FILE = "lattice_classes.json"
DATA_FORMAT = "picard-lattice/1"

RANK = 15

#: Integral basis of the full lattice chosen among the nineteen generators.
#: The four remaining fibre classes and every companion class G_j have
#: integer coordinates here; the change of basis from the ambient unit
#: classes has determinant -1/16 (index 16 = 2^4, one factor 2 per Z_i).
LATTICE_BASIS: tuple[str, ...] = (
    "Z1", "Z2", "Z3", "Z4", "G1", "F1", "F3", "F4", "F6", "F7",
    "F9", "F10", "F11", "F12", "F14",
)

#: The nineteen listed generators of the lattice.
GENERATORS: tuple[str, ...] = (
    ("G1",) + tuple(f"F{i}" for i in range(1, 15)) + ("Z1", "Z2", "Z3", "Z4")
)

#: The five classes carrying the trivial x induced x induced module.
CORE_CLASSES: tuple[str, ...] = ("F5", "F6", "F8", "F9", "F11")

Vector = tuple[Fraction, ...]
ClassLike = Union[str, Mapping[str, int], Sequence]


def _data() -> dict:
    return datafiles.load(DATA_FILE, DATA_FORMAT)


@lru_cache(maxsize=1)
def ambient_basis() -> tuple[str, ...]:
    return tuple(_data()["ambient_basis"])


@lru_cache(maxsize=1)
def _ambient_index() -> dict[str, int]:
    return {n: i for i, n in enumerate(ambient_basis())}


def _pair_rule(x: str, y: str) -> int:
    if x == y:
        return 0
    if x[1:] == y[1:] and {x[0], y[0]} == {"F", "G"}:
        return 4
    return 2


@lru_cache(maxsize=1)
def gram_matrix() -> tuple[tuple[Fraction, ...], ...]:
    """Pairing matrix of the ambient unit classes G1, F1..F14."""
    amb = ambient_basis()
    return tuple(
        tuple(Fraction(_pair_rule(a, b)) for b in amb) for a in amb
    )


@lru_cache(maxsize=None)
def class_vector(name: str) -> Vector:
    """Ambient coordinates of a class name (F*, G*, Z*)."""
    idx = _ambient_index()
    if name in idx:
        v = [Fraction(0)] * RANK
        v[idx[name]] = Fraction(1)
        return tuple(v)
    half = _data()["half_classes"]
    if name in half:
        acc = [Fraction(0)] * RANK
        for member in half[name]:
            acc = [a + b for a, b in zip(acc, class_vector(member))]
        return tuple(x / 2 for x in acc)
    if name.startswith("G") and name[1:].isdigit():
        # companion classes: G_j = F1 + G1 - F_j
        acc = [
            a + b - c
            for a, b, c in zip(
                class_vector("F1"), class_vector("G1"), class_vector("F" + name[1:])
            )
        ]
        return tuple(acc)
    raise KeyError(f"unknown lattice class {name!r}")


def as_vector(x: ClassLike) -> Vector:
    """Coerce a class name, a name->coefficient mapping, or raw ambient
    coordinates into an ambient vector."""
    if isinstance(x, str):
        return class_vector(x)
    if isinstance(x, Mapping):
        acc = [Fraction(0)] * RANK
        for name, coeff in x.items():
            acc = [a + Fraction(coeff) * b for a, b in zip(acc, class_vector(name))]
        return tuple(acc)
    v = tuple(Fraction(c) for c in x)
    if len(v) != RANK:
        raise ValueError(f"expected {RANK} coordinates, got {len(v)}")
    return v


def gram(u: ClassLike, v: ClassLike):
    """Intersection pairing, bilinear over the ambient rules; returns an
    int when the value is integral (it always is on lattice elements)."""
    uu, vv = as_vector(u), as_vector(v)
    mat = gram_matrix()
    total = Fraction(0)
    for i, ui in enumerate(uu):
        if not ui:
            continue
        row = mat[i]
        total += ui * sum(row[j] * vj for j, vj in enumerate(vv) if vj)
    return int(total) if total.denominator == 1 else total


def exceptional_pullback(label: str) -> Vector:
    """The class 2 pi^* E_i of an exceptional curve, by label E1..E4."""
    table = _data()["exceptional_pullbacks"]
    if label not in table:
        raise KeyError(f"no exceptional pullback {label!r}")
    return as_vector(table[label])


# -- integral structure -------------------------------------------------


def _solve(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]):
    """Unique solution of a square nonsingular system, or None if
    inconsistent/singular (exact Gaussian elimination)."""
    n = len(matrix)
    aug = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]


@lru_cache(maxsize=1)
def _basis_matrix() -> tuple[tuple[Fraction, ...], ...]:
    cols = [class_vector(n) for n in LATTICE_BASIS]
    return tuple(tuple(cols[j][i] for j in range(RANK)) for i in range(RANK))


def lattice_coords(x: ClassLike) -> Vector:
    """Coordinates over LATTICE_BASIS (rational for arbitrary input;
    integral exactly when the element lies in the lattice)."""
    sol = _solve(_basis_matrix(), as_vector(x))
    if sol is None:  # pragma: no cover - basis matrix is nonsingular
        raise ArithmeticError("lattice basis failed to span")
    return tuple(sol)


def in_lattice(x: ClassLike) -> bool:
    return all(c.denominator == 1 for c in lattice_coords(x))


@dataclass(frozen=True)
class PullbackSublattice:
    """The rank-6 image of the del Pezzo Picard lattice, as a Z-span."""

    generators: tuple[Vector, ...]

    @property
    def rank(self) -> int:
        return 6

    def membership_coordinates(self, x: ClassLike) -> Optional[tuple[int, ...]]:
        """Integer coefficients expressing ``x`` over the generators, or
        None when ``x`` is outside the span."""
        target = as_vector(x)
        # Solve the 15x6 overdetermined system exactly: reduce [G | target].
        aug = [
            [self.generators[j][i] for j in range(6)] + [target[i]]
            for i in range(RANK)
        ]
        piv_rows: list[list[Fraction]] = []
        piv_cols: list[int] = []
        for row in aug:
            row = list(row)
            for pr, pc in zip(piv_rows, piv_cols):
                if row[pc]:
                    f = row[pc]
                    row = [x0 - f * y for x0, y in zip(row, pr)]
            lead = next((c for c in range(6) if row[c]), None)
            if lead is None:
                if row[6]:
                    return None  # inconsistent: 0 = nonzero
                continue
            row = [x0 / row[lead] for x0 in row]
            piv_rows.append(row)
            piv_cols.append(lead)
        coeffs = [Fraction(0)] * 6
        for pr, pc in sorted(zip(piv_rows, piv_cols), key=lambda t: -t[1]):
            val = pr[6] - sum(pr[c] * coeffs[c] for c in range(pc + 1, 6))
            coeffs[pc] = val
        if any(c.denominator != 1 for c in coeffs):
            return None
        return tuple(int(c) for c in coeffs)

    def contains(self, x: ClassLike) -> bool:
        return self.membership_coordinates(x) is not None

    def __contains__(self, x: ClassLike) -> bool:
        return self.contains(x)


@lru_cache(maxsize=1)
def pullback_sublattice() -> PullbackSublattice:
    gens = tuple(as_vector(d) for d in _data()["pi_star_pic_s"])
    sub = PullbackSublattice(gens)
    # The six generators are Q-independent: the membership solve is unique.
    ranked = [lattice_coords(g) for g in gens]
    assert all(all(c.denominator == 1 for c in v) for v in ranked)
    assert _f2_rank_of(ranked) == 6, "pullback generators degenerate mod 2"
    return sub


def _f2_rank_of(coord_vectors) -> int:
    masks = [
        sum((int(c) & 1) << i for i, c in enumerate(v)) for v in coord_vectors
    ]
    return f2.rank(masks)


# -- the F2 quotient ----------------------------------------------------


class QuotientF2:
    """Pic / (pullback sublattice + 2 Pic) as a 9-dimensional F2 space.

    Vectors are bitmasks over ``basis_names`` (bit i = coefficient of the
    i-th basis class).  The mod-2 reduction runs through coordinates over
    LATTICE_BASIS, so every lattice element — including the half-classes
    and companion classes — reduces exactly.
    """

    def __init__(self):
        data = _data()
        self.basis_names: tuple[str, ...] = tuple(data["quotient_basis"])
        self._pi_masks = [self._lattice_mask(v) for v in pullback_sublattice().generators]
        self._basis_masks = [self._lattice_mask(class_vector(n)) for n in self.basis_names]
        self._full_basis = self._basis_masks + self._pi_masks
        if f2.rank(self._pi_masks) != 6 or f2.rank(self._full_basis) != RANK:
            raise ArithmeticError("quotient basis does not complement the pullback span")

    @property
    def dimension(self) -> int:
        return len(self.basis_names)

    @staticmethod
    def _lattice_mask(x: ClassLike) -> int:
        coords = lattice_coords(x)
        if any(c.denominator != 1 for c in coords):
            raise ValueError("element lies outside the lattice")
        return sum((int(c) & 1) << i for i, c in enumerate(coords))

    def image(self, x: ClassLike) -> int:
        """Quotient coordinates of a lattice element, as a 9-bit mask."""
        coeffs = f2.express(self._full_basis, self._lattice_mask(x), RANK)
        if coeffs is None:  # pragma: no cover - full_basis spans F2^15
            raise ArithmeticError("quotient expression failed")
        return sum(bit << i for i, bit in enumerate(coeffs[: self.dimension]))

    def image_names(self, x: ClassLike) -> list[str]:
        mask = x if isinstance(x, int) else self.image(x)
        return [n for i, n in enumerate(self.basis_names) if (mask >> i) & 1]

    # -- Galois action ------------------------------------------------

    def permuted_vector(self, perm: Mapping[str, str], name: str) -> Vector:
        """Ambient vector of a class after permuting the fibre classes."""
        half = _data()["half_classes"]
        if name in half:
            acc = [Fraction(0)] * RANK
            for member in half[name]:
                acc = [a + b for a, b in zip(acc, class_vector(perm[member]))]
            return tuple(c / 2 for c in acc)
        return class_vector(perm[name])

    def action(self, row) -> list[int]:
        """Images of the quotient basis under a Galois row (9 masks)."""
        if isinstance(row, str):
            row = actions.rows_by_name()[row]
        perm = row.class_permutation()
        return [self.image(self.permuted_vector(perm, n)) for n in self.basis_names]

    def verify_relations(self) -> bool:
        """Every shipped reduction identity holds in the quotient."""
        for name, rel in _data()["quotient_relations"].items():
            if self.image_names(class_vector(name)) != sorted(
                rel, key=self.basis_names.index
            ):
                return False
        return True


@lru_cache(maxsize=1)
def quotient_F2() -> QuotientF2:
    return QuotientF2()


# -- invariants ---------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """An F2 subspace of the quotient, echelon basis + readable names."""

    basis_masks: tuple[int, ...]
    basis_names: tuple[tuple[str, ...], ...]

    @property
    def dimension(self) -> int:
        return len(self.basis_masks)

    def contains(self, mask: int) -> bool:
        return f2.in_span(self.basis_masks, mask)


def invariants_under(subgroup) -> Subspace:
    """Fixed subspace of the quotient under the named Galois rows.

    ``subgroup`` is an iterable of row names; the fixed space of the
    generated group equals the intersection of the generators' fixed
    spaces, so only the listed rows are applied.  An empty iterable gives
    the whole 9-dimensional space.
    """
    q = quotient_F2()
    table = actions.rows_by_name()
    endos = []
    for name in subgroup:
        if name not in table:
            raise ValueError(f"unknown Galois row {name!r}")
        endos.append(q.action(name))
    unit = [1 << i for i in range(q.dimension)]
    fixed = f2.fixed_space(endos, unit, q.dimension)
    return Subspace(
        basis_masks=tuple(fixed),
        basis_names=tuple(tuple(q.image_names(m)) for m in fixed),
    )


def subfield_fixing_rows(tower, subfield_names) -> list[str]:
    """Names of the table rows acting trivially on a subfield.

    ``tower`` must be the full splitting tower (so that derived elements
    like the ratio roots are available); ``subfield_names`` lists the named
    elements generating the subfield.  No subgroup list is hard-coded: the
    membership falls out of the field columns.
    """
    return [r.name for r in actions.rows_fixing(tower, subfield_names)]


def galois_invariant_classes(tower, subfield_names) -> Subspace:
    """Quotient invariants under the rows fixing the given subfield."""
    return invariants_under(subfield_fixing_rows(tower, subfield_names))


# -- structure tests ----------------------------------------------------


def core_action_table() -> dict[str, dict[str, str]]:
    """Induced permutation of the five core classes, one entry per row.

    Raises if any row fails to permute the core classes among themselves
    (it never does for the shipped table).
    """
    q = quotient_F2()
    out: dict[str, dict[str, str]] = {}
    for row in actions.load_rows():
        perm = row.class_permutation()
        entry = {}
        for name in CORE_CLASSES:
            img = q.image_names(class_vector(perm[name]))
            if len(img) != 1 or img[0] not in CORE_CLASSES:
                raise ArithmeticError(
                    f"row {row.name}: core class {name} maps to {img}"
                )
            entry[name] = img[0]
        out[row.name] = entry
    return out


def verify_decomposition(action_table: Optional[Mapping[str, Mapping[str, str]]] = None) -> bool:
    """Test the trivial x induced x induced shape of the core module.

    The five-class module decomposes as claimed precisely when, for every
    Galois row: F11 is fixed; {F5, F6} are swapped exactly by the rows
    moving sqrt(ab); and {F8, F9} are swapped exactly by the rows moving
    theta0.  ``action_table`` (row name -> class images) substitutes for
    the derived action, so deliberately broken tables can be probed.
    """
    if action_table is None:
        action_table = core_action_table()
    for row in actions.load_rows():
        entry = action_table.get(row.name, {n: n for n in CORE_CLASSES})
        if sorted(entry.get(n, n) for n in CORE_CLASSES) != sorted(CORE_CLASSES):
            return False
        if entry.get("F11", "F11") != "F11":
            return False
        pair56 = (entry.get("F5", "F5"), entry.get("F6", "F6"))
        if pair56 not in (("F5", "F6"), ("F6", "F5")):
            return False
        if (pair56 == ("F6", "F5")) != row.moves_root("sqrtab"):
            return False
        pair89 = (entry.get("F8", "F8"), entry.get("F9", "F9"))
        if pair89 not in (("F8", "F9"), ("F9", "F8")):
            return False
        if (pair89 == ("F9", "F8")) != row.moves_root("theta0"):
            return False
    return True


def verify_exceptional_pullbacks() -> bool:
    """Self-pairing -8, mutual orthogonality, and the constant pairing of
    every fibre-sum F_i + G_i against each pullback class."""
    labels = sorted(_data()["exceptional_pullbacks"])
    vectors = {lab: exceptional_pullback(lab) for lab in labels}
    for lab, vec in vectors.items():
        if gram(vec, vec) != -8:
            return False
        if not in_lattice(vec):
            return False
    for i, a in enumerate(labels):
        for b in labels[i + 1:]:
            if gram(vectors[a], vectors[b]) != 0:
                return False
    for lab, vec in vectors.items():
        sums = {gram({f"F{i}": 1, f"G{i}": 1}, vec) for i in range(1, 15)}
        if sums != {4}:
            return False
    return True


# -- isometry checks ----------------------------------------------------


def galois_matrix(row) -> tuple[tuple[Fraction, ...], ...]:
    """Matrix of a Galois row on ambient coordinates (columns = images of
    the ambient unit classes, companion moves expanded)."""
    if isinstance(row, str):
        row = actions.rows_by_name()[row]
    perm = row.class_permutation()
    cols = [class_vector(perm[name]) for name in ambient_basis()]
    return tuple(tuple(cols[j][i] for j in range(RANK)) for i in range(RANK))


def _matmul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n) if a[i][k]) for j in range(n))
        for i in range(n)
    )


def verify_galois_isometries() -> bool:
    """Every row preserves the pairing, the lattice, and the fibre-sum
    relation F_i + G_i = F_j + G_j."""
    mat = gram_matrix()
    fibre_sum = as_vector({"F1": 1, "G1": 1})
    q = quotient_F2()
    for row in actions.load_rows():
        a = galois_matrix(row)
        at = tuple(tuple(a[j][i] for j in range(RANK)) for i in range(RANK))
        if _matmul(at, _matmul(mat, a)) != mat:
            return False
        perm = row.class_permutation()
        for name in GENERATORS:
            if not in_lattice(q.permuted_vector(perm, name)):
                return False
        for i in range(1, 15):
            img = [
                x + y
                for x, y in zip(class_vector(perm[f"F{i}"]), class_vector(perm[f"G{i}"]))
            ]
            if tuple(img) != fibre_sum:
                return False
    return True


# -- roll-up ------------------------------------------------------------


def verify_suite(splitting_tower=None, subfield_names=None) -> dict:
    """One-shot verification report used by the surface-verification CLI.

    ``splitting_tower`` (optional) supplies the concrete full splitting
    tower and ``subfield_names`` the generators of the curve-splitting
    subfield, so the ground-field invariants can be derived from the field
    action; when omitted those entries are skipped.
    """
    q = quotient_F2()
    checks: dict[str, object] = {}
    checks["gram_examples"] = (
        gram("F1", "G1") == 4 and gram("Z1", "Z1") == 10 and gram("F1", "F1") == 0
    )
    checks["even_lattice"] = all(gram(n, n) % 2 == 0 for n in GENERATORS)
    sub = pullback_sublattice()
    checks["pullback_rank"] = sub.rank
    checks["pullback_memberships"] = sub.contains("G1") and not sub.contains("F5")
    checks["quotient_dimension"] = q.dimension
    checks["quotient_relations"] = q.verify_relations()
    checks["galois_isometries"] = verify_galois_isometries()
    checks["decomposition"] = verify_decomposition()
    checks["exceptional_pullbacks"] = verify_exceptional_pullbacks()
    trivial = invariants_under([])
    everything = invariants_under([r.name for r in actions.load_rows()])
    checks["invariants_trivial_group_dim"] = trivial.dimension
    checks["invariants_full_group_dim"] = everything.dimension
    checks["invariants_full_group_basis"] = [
        "+".join(names) for names in everything.basis_names
    ]
    checks["ok"] = (
        all(
            checks[k] is True
            for k in (
                "gram_examples", "even_lattice", "pullback_memberships",
                "quotient_relations", "galois_isometries", "decomposition",
                "exceptional_pullbacks",
            )
        )
        and checks["pullback_rank"] == 6
        and checks["quotient_dimension"] == 9
        and checks["invariants_trivial_group_dim"] == 9
        and checks["invariants_full_group_dim"] == 3
    )
    if splitting_tower is not None and subfield_names is not None:
        fixing = subfield_fixing_rows(splitting_tower, subfield_names)
        inv = invariants_under(fixing)
        checks["subfield_fixing_rows"] = fixing
        checks["ground_field_invariants_dim"] = inv.dimension
        checks["ground_field_invariants_basis"] = [
            "+".join(names) for names in inv.basis_names
        ]
        core_match = inv.dimension == len(CORE_CLASSES) and all(
            inv.contains(q.image(name)) for name in CORE_CLASSES
        )
        checks["ground_field_invariants_match"] = core_match
        checks["ok"] = bool(checks["ok"] and core_match)
    return checks
