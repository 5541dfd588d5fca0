"""2-torsion of the branch-curve Jacobian as Weierstrass-subset classes.

The eight Weierstrass points P1..P4, Q1..Q4 index the bits of an 8-bit
mask.  Even-cardinality subsets modulo complementation model the 64-element
2-torsion group of the genus-3 hyperelliptic quotient curve; the group law
is symmetric difference.  Pulling divisor classes back to the branch curve
kills exactly the class of {P1,P2,P3,P4}; the quotient by that kernel is a
5-dimensional F2 Galois module built from two induced blocks and one
extension class, and the package's final contradiction is an exhaustive
scan of this picture: no odd-P class survives the subgroup of the Galois
table that fixes both theta0 and sqrt(ab).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Optional, Sequence, Union

from . import actions, f2
from .actions import POINT_NAMES, GaloisRow

#: Bit layout: P1..P4 are bits 0-3, Q1..Q4 bits 4-7 (the order of POINT_NAMES).
P_MASK = 0x0F
Q_MASK = 0xF0
OMEGA = 0xFF

_BIT = {name: i for i, name in enumerate(POINT_NAMES)}


def _canonical(mask: int) -> int:
    """The lexicographically smaller of a subset and its complement.

    For nonempty proper subsets that is the one containing P1 (the least
    label belongs to exactly one of the two); the empty set beats the full
    set by the prefix rule.
    """
    mask &= OMEGA
    if mask in (0, OMEGA):
        return 0
    return mask if mask & 1 else mask ^ OMEGA


@dataclass(frozen=True, order=True)
class WeierstrassClass:
    """An even subset of the 8 Weierstrass points modulo complementation."""

    mask: int

    def __post_init__(self):
        if self.mask != _canonical(self.mask):
            raise ValueError(f"mask {self.mask:#04x} is not a canonical representative")
        if bin(self.mask).count("1") % 2:
            raise ValueError("2-torsion classes have even representatives")

    @classmethod
    def from_mask(cls, mask: int) -> "WeierstrassClass":
        return cls(_canonical(mask))

    @classmethod
    def from_points(cls, points: Iterable[str]) -> "WeierstrassClass":
        mask = 0
        for p in points:
            mask ^= 1 << _BIT[p]
        return cls.from_mask(mask)

    @property
    def points(self) -> tuple[str, ...]:
        return tuple(n for n in POINT_NAMES if (self.mask >> _BIT[n]) & 1)

    def __add__(self, other: "WeierstrassClass") -> "WeierstrassClass":
        return WeierstrassClass.from_mask(self.mask ^ other.mask)

    def __bool__(self) -> bool:
        return self.mask != 0

    def odd_p_part(self) -> bool:
        """Does the class meet {P1..P4} in an odd number of points?

        Well-defined: both the complement and the kernel representative
        shift the P-intersection by an even count.
        """
        return bin(self.mask & P_MASK).count("1") % 2 == 1

    def transformed(self, perm: Mapping[str, str]) -> "WeierstrassClass":
        return WeierstrassClass.from_points(perm[p] for p in self.points)

    def __str__(self) -> str:
        return "{" + ",".join(self.points) + "}" if self.mask else "0"


IDENTITY = WeierstrassClass(0)


@lru_cache(maxsize=1)
def jac2_group() -> tuple[WeierstrassClass, ...]:
    """All 64 classes (2^{2g} for genus 3), in ascending mask order."""
    out = sorted({WeierstrassClass.from_mask(m) for m in range(256)
                  if bin(m).count("1") % 2 == 0})
    assert len(out) == 64
    return tuple(out)


def pullback_kernel() -> WeierstrassClass:
    """The unique nontrivial class killed by pulling back to the branch
    curve upstairs: {P1,P2,P3,P4} (equivalently {Q1,Q2,Q3,Q4})."""
    return WeierstrassClass(P_MASK)


def _resolve_rows(rows) -> list[GaloisRow]:
    table = actions.rows_by_name()
    out = []
    for r in rows:
        if isinstance(r, GaloisRow):
            out.append(r)
        elif r in table:
            out.append(table[r])
        else:
            raise ValueError(f"unknown Galois row {r!r}")
    return out


# -- the pullback image as a Galois module ------------------------------


class F2GModule:
    """An F2 space with a distinguished basis of Weierstrass classes and a
    Galois action by invertible matrices.

    Elements are bitmasks over ``basis_classes`` (bit i = coefficient of
    generator i).  Reduction of an arbitrary class to coordinates runs
    modulo the listed relation masks, so the kernel class and
    complementation are invisible downstream.
    """

    def __init__(self, basis_classes: Sequence[WeierstrassClass],
                 relation_masks: Sequence[int], rows: Sequence[GaloisRow]):
        self.basis_classes = tuple(basis_classes)
        self._relations = tuple(relation_masks)
        self._ambient = [c.mask for c in self.basis_classes] + list(self._relations)
        if f2.rank(self._ambient) != len(self._ambient):
            raise ArithmeticError("module generators overlap the relation span")
        self.actions: dict[str, tuple[int, ...]] = {}
        for row in rows:
            perm = row.point_permutation()
            imgs = tuple(self.coordinates(c.transformed(perm)) for c in self.basis_classes)
            if f2.rank(imgs) != self.dimension:
                raise ArithmeticError(f"row {row.name} does not act invertibly")
            self.actions[row.name] = imgs

    @property
    def dimension(self) -> int:
        return len(self.basis_classes)

    def coordinates(self, cls: WeierstrassClass) -> int:
        coeffs = f2.express(self._ambient, cls.mask, 8)
        if coeffs is None:
            raise ValueError(f"{cls} lies outside the module")
        return sum(bit << i for i, bit in enumerate(coeffs[: self.dimension]))

    def element(self, coord_mask: int) -> WeierstrassClass:
        acc = IDENTITY
        for i, c in enumerate(self.basis_classes):
            if (coord_mask >> i) & 1:
                acc = acc + c
        return acc

    def act(self, row: Union[str, GaloisRow], coord_mask: int) -> int:
        imgs = self.actions[row if isinstance(row, str) else row.name]
        out = 0
        for i, img in enumerate(imgs):
            if (coord_mask >> i) & 1:
                out ^= img
        return out

    def fixed_subspace(self, row_names: Optional[Iterable[str]] = None) -> list[int]:
        """Echelon basis (coordinate masks) of the common fixed space."""
        names = list(self.actions) if row_names is None else list(row_names)
        endos = [self.actions[n] for n in names]
        unit = [1 << i for i in range(self.dimension)]
        return f2.fixed_space(endos, unit, self.dimension)


@lru_cache(maxsize=1)
def pullback_image_module() -> F2GModule:
    """The image of 2-torsion under pullback, i.e. Jac[2]/kernel, with the
    Galois-table action: dimension 5, generated by {P1,P3}, {P1,P4},
    {Q1,Q3}, {Q1,Q4} (the two induced blocks) and {P1,Q1}."""
    basis = [WeierstrassClass.from_points(pts) for pts in
             (("P1", "P3"), ("P1", "P4"), ("Q1", "Q3"), ("Q1", "Q4"), ("P1", "Q1"))]
    module = F2GModule(basis, (P_MASK, Q_MASK), actions.load_rows())
    assert module.dimension == 5
    return module


def induced_block_basis() -> list[int]:
    """Coordinate masks spanning the Ind x Ind part (the first four
    generators; equivalently the classes of even P-intersection)."""
    return [1 << i for i in range(4)]


def verify_induced_blocks() -> bool:
    """The module decomposes over its first four generators as two induced
    blocks: rows moving sqrt(ab) swap the first pair, rows moving theta0
    swap the second pair, and nothing else touches either pair."""
    module = pullback_image_module()
    for row in actions.load_rows():
        e1, e2, e3, e4, _ = (module.act(row, 1 << i) for i in range(5))
        swap_ab = row.moves_root("sqrtab")
        swap_th = row.moves_root("theta0")
        if (e1, e2) != ((0b00010, 0b00001) if swap_ab else (0b00001, 0b00010)):
            return False
        if (e3, e4) != ((0b01000, 0b00100) if swap_th else (0b00100, 0b01000)):
            return False
    return True


def verify_non_splitness() -> bool:
    """No class of the shape {P_i, Q_j} is fixed by the whole table; the
    extension of the trivial class by the two induced blocks is non-split."""
    module = pullback_image_module()
    for i in range(1, 5):
        for j in range(1, 5):
            coord = module.coordinates(
                WeierstrassClass.from_points((f"P{i}", f"Q{j}")))
            if all(module.act(name, coord) == coord for name in module.actions):
                return False
    return True


@dataclass(frozen=True)
class Submodule:
    """A Galois-invariant subspace, echelon coordinate basis + classes."""

    basis: tuple[int, ...]
    classes: tuple[WeierstrassClass, ...]
    index: int

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def contains(self, coord_mask: int) -> bool:
        return f2.in_span(self.basis, coord_mask)

    def __contains__(self, coord_mask: int) -> bool:
        return self.contains(coord_mask)


def enumerate_invariant_submodules(module: F2GModule, index: int) -> list[Submodule]:
    """All Galois-invariant submodules of the given index, exhaustively.

    The spaces involved are tiny (dimension <= 5), so every subspace of
    the right dimension is generated and filtered for invariance.
    """
    if index < 1 or index & (index - 1):
        raise ValueError("index must be a power of 2")
    dim = module.dimension - index.bit_length() + 1
    if dim < 0:
        return []
    full = [1 << i for i in range(module.dimension)]
    out = []
    for basis in f2.all_subspaces(full, dim):
        if all(f2.in_span(basis, module.act(name, b))
               for name in module.actions for b in basis):
            out.append(Submodule(
                basis=tuple(basis),
                classes=tuple(module.element(b) for b in basis),
                index=index,
            ))
    return out


# -- the fixed-odd-class scan -------------------------------------------


def default_scan_rows() -> list[GaloisRow]:
    """The table rows fixing both theta0 and sqrt(ab), read off the field
    columns (note the quarter-turn row maps the fourth root of ab to i
    times itself, hence flips sqrt(ab) and is excluded)."""
    return [row for row in actions.load_rows()
            if not row.moves_root("theta0") and not row.moves_root("sqrtab")]


def fixed_odd_class_scan(rows=None) -> list[WeierstrassClass]:
    """Classes meeting {P1..P4} oddly that every subgroup element fixes
    modulo the pullback kernel (and complementation); expected empty.

    ``rows`` overrides the subgroup (names or row objects; the empty list
    is the trivial subgroup).  The candidates are the odd-P classes because
    those are the possible divisor-parity obstructions; invariance is
    tested modulo the kernel since the pullback kills it.
    """
    subgroup = default_scan_rows() if rows is None else _resolve_rows(rows)
    perms = [row.point_permutation() for row in subgroup]
    kernel = pullback_kernel()
    out = []
    for cls in jac2_group():
        if not cls.odd_p_part():
            continue
        if all(cls + cls.transformed(perm) in (IDENTITY, kernel) for perm in perms):
            out.append(cls)
    return out


def scan_report(rows=None) -> dict:
    """The scan with its audit trail: which rows were included and why."""
    default = rows is None
    subgroup = default_scan_rows() if default else _resolve_rows(rows)
    chosen = {row.name for row in subgroup}
    selection = []
    for row in actions.load_rows():
        if default:
            reasons = [f"field column moves {root}"
                       for root in ("theta0", "sqrtab") if row.moves_root(root)]
            reason = "; ".join(reasons) if reasons else "fixes theta0 and sqrt(ab)"
        else:
            reason = "listed" if row.name in chosen else "not listed"
        selection.append({
            "row": row.name,
            "included": row.name in chosen,
            "reason": reason,
            "point_pairs": [list(pair) for pair in row.weier_pairs],
        })
    fixed = fixed_odd_class_scan(subgroup)
    return {
        "subgroup": selection,
        "candidates": sum(1 for c in jac2_group() if c.odd_p_part()),
        "fixed_classes": [str(c) for c in fixed],
    }


# -- transitivity of the point action -----------------------------------


def point_orbits(rows=None) -> list[tuple[str, ...]]:
    """Orbits of the 8 points under the group generated by the given rows
    (default: the whole table)."""
    subgroup = list(actions.load_rows()) if rows is None else _resolve_rows(rows)
    parent = {p: p for p in POINT_NAMES}

    def find(p):
        while parent[p] != p:
            parent[p] = parent[parent[p]]
            p = parent[p]
        return p

    for row in subgroup:
        for a, b in row.point_permutation().items():
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
    orbits: dict[str, list[str]] = {}
    for p in POINT_NAMES:
        orbits.setdefault(find(p), []).append(p)
    return sorted(tuple(sorted(o)) for o in orbits.values())


def transitivity_check(rows=None) -> bool:
    """True iff the generated permutation group is transitive on all 8
    points.  With the shipped columns this is false: every row preserves
    the P-quartet and the Q-quartet (see point_orbits), so the action is
    transitive on each quartet but not on their union."""
    return len(point_orbits(rows)) == 1
