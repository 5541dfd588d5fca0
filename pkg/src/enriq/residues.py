"""Quaternion symbols over function fields and their residue calculus.

The heart of the package's unramified-class computations.  Three layers:

* symbols ``(f, g)`` over k(t) -- or over k(t)(x) for the ruled surface --
  with the tame-residue closed formula at every place, and full residue
  profiles with the product-formula consistency that entails;

* corestricted classes on split double covers: a declared section
  function expands into a formal sum of slot symbols, and its ramification
  is computed twice -- once structurally (component places carry the
  declared function, the section at infinity carries its norm, vertical
  fibers are cleared slot by slot against powers of the fiber polynomial)
  and once by brute force through Gauss valuations.  The two routes are
  independently coded and compared place by place;

* Faddeev reconstruction: given target residue classes at places of the
  t-line (degree <= 2 or infinity), either build an explicit symbol sum
  realising them exactly, or certify the corestriction-sum obstruction
  that makes the profile unrealisable.

Everything is exact: coefficients are rationals or quadratic-tower
elements, and residue-field arithmetic goes through the tower engine.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from . import f2
from .funcfield import (
    CoefficientField,
    Place,
    Poly,
    QQ,
    RatFunc,
    RationalField,
    RationalFunctions,
    TowerCoefficients,
    parse_ratfunc,
    poly_square_free,
    rational_square_free,
    ratfunc_is_square,
    ratfunc_square_free,
    support_places,
    valuation,
)
from .towers import TowerElem

__all__ = [
    "XCOEFF",
    "t_function",
    "x_variable",
    "FunctionFieldSymbol",
    "SymbolSum",
    "SquareClass",
    "residue_symbol",
    "symbol_profile",
    "gauss_valuation",
    "gauss_reduce",
    "SurfacePlace",
    "SurfaceProfile",
    "SplitCover",
    "KummerCover",
    "DeclaredFunction",
    "DivisorDeclarationError",
    "ResidueParityError",
    "expand_corestriction",
    "ramification_profile",
    "expanded_symbol_profile",
    "compare_routes",
    "check_component_residues",
    "divisor_parity_membership",
    "parity_generators",
    "standard_desks",
    "DeskCover",
    "ResidueSpec",
    "faddeev_obstruction",
    "faddeev_reconstruct",
    "repair_spec",
    "FaddeevRepairError",
]


#: coefficient field of polynomials in x: rational functions of t
XCOEFF = RationalFunctions("t", QQ)


def t_function(text: str) -> RatFunc:
    """Parse an element of Q(t)."""
    return parse_ratfunc(text, "t", QQ)


def x_variable() -> RatFunc:
    """The coordinate x of the ruled surface, as an element of Q(t)(x)."""
    return RatFunc.variable(XCOEFF)


def _tvar() -> RatFunc:
    return RatFunc.variable(QQ)


# ==========================================================================
# square classes
# ==========================================================================

def _fields_compatible(f1: CoefficientField, f2: CoefficientField) -> bool:
    if f1 is f2:
        return True
    if isinstance(f1, RationalField) and isinstance(f2, RationalField):
        return True
    if isinstance(f1, TowerCoefficients) and isinstance(f2, TowerCoefficients):
        return f1.tower is f2.tower
    if isinstance(f1, RationalFunctions) and isinstance(f2, RationalFunctions):
        return _fields_compatible(f1.base, f2.base)
    return False


class SquareClass:
    """An element of k*/k*^2 for one of the exact fields in play."""

    __slots__ = ("field", "value")

    def __init__(self, field: CoefficientField, value):
        value = field.coerce(value)
        if field.is_zero(value):
            raise ZeroDivisionError("0 has no square class")
        self.field = field
        self.value = value

    @classmethod
    def trivial(cls, field: CoefficientField) -> "SquareClass":
        return cls(field, 1)

    def is_trivial(self) -> bool:
        from .funcfield import is_square_element

        return is_square_element(self.field, self.value)

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        if not _fields_compatible(self.field, other.field):
            raise TypeError("square classes live in incompatible fields")
        return SquareClass(self.field, self.value * other.value)

    def same_class(self, other: "SquareClass") -> bool:
        if not _fields_compatible(self.field, other.field):
            # a constant class embeds into the rational-function level
            if isinstance(self.field, RationalFunctions) and _fields_compatible(
                self.field.base, other.field
            ):
                return self.same_class(SquareClass(self.field, other.value))
            if isinstance(other.field, RationalFunctions):
                return other.same_class(self)
            raise TypeError(
                f"cannot compare classes over {self.field!r} and {other.field!r}"
            )
        return (self * other).is_trivial()

    def canonical(self):
        """A reduced representative (display / serialization)."""
        v = self.value
        if isinstance(v, Fraction):
            return rational_square_free(v)
        if isinstance(v, RatFunc) and isinstance(v.field, RationalField):
            sf, lead = ratfunc_square_free(v)
            try:
                lead = rational_square_free(lead)
            except ArithmeticError:  # pragma: no cover - giant leading parts
                pass
            return RatFunc.from_poly(sf) * lead
        return v

    def __str__(self):
        return str(self.canonical())

    def __repr__(self):
        return f"SquareClass({self})"


# ==========================================================================
# symbols and residues
# ==========================================================================

class FunctionFieldSymbol:
    """The quaternion symbol ``(f, g)`` with f, g nonzero field elements."""

    __slots__ = ("f", "g")

    def __init__(self, f, g):
        if isinstance(f, RatFunc) and not isinstance(g, RatFunc):
            g = f._coerce(g)
        elif isinstance(g, RatFunc) and not isinstance(f, RatFunc):
            f = g._coerce(f)
        pair = f._level_pair(g)
        if pair is None:
            raise TypeError(f"incompatible symbol slots {f!r}, {g!r}")
        f, g = pair
        if f.is_zero() or g.is_zero():
            raise ZeroDivisionError("symbol slots must be nonzero")
        self.f = f
        self.g = g

    @property
    def field(self) -> CoefficientField:
        return self.f.field

    def __iter__(self):
        return iter((self.f, self.g))

    def __str__(self):
        return f"({self.f}, {self.g})"

    def __repr__(self):
        return f"FunctionFieldSymbol{str(self)}"


class SymbolSum:
    """A formal sum of symbols; residues multiply across the terms."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[FunctionFieldSymbol] = ()):
        self.terms = list(terms)
        for term in self.terms:
            if not isinstance(term, FunctionFieldSymbol):
                raise TypeError(f"not a symbol: {term!r}")

    def __add__(self, other: "SymbolSum") -> "SymbolSum":
        return SymbolSum(self.terms + list(other.terms))

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)

    def __str__(self):
        return " + ".join(str(t) for t in self.terms) if self.terms else "0"

    def __repr__(self):
        return f"SymbolSum[{self}]"


def _class_field_of(rf) -> CoefficientField:
    """Field adapter in which residue values at this place live."""
    if rf.kind == "base":
        return rf.place.field
    adapter = getattr(rf, "_class_adapter", None)
    if adapter is None:
        adapter = TowerCoefficients(rf.tower)
        rf._class_adapter = adapter
    return adapter


def _unit_part(fn: RatFunc, place: Place, v: int) -> RatFunc:
    """``fn`` divided by the ``v``-th power of a uniformizer at the place."""
    if v == 0:
        return fn
    if place.is_infinite:
        pi = RatFunc.variable(place.field).inv()
    else:
        pi = RatFunc.from_poly(place.poly)
    return fn * pi ** (-v)


def residue_symbol(sym: FunctionFieldSymbol, place: Place) -> SquareClass:
    """Tame residue of ``(f, g)`` at a place of the projective line.

    The class of ``(-1)^{v(f)v(g)} f^{v(g)} g^{-v(f)}`` reduced at the
    place.  The unit parts are reduced *before* exponentiation: writing
    u = f pi^{-v(f)} and w = g pi^{-v(g)}, the reduction of the full
    expression is u-bar^{v(g)} w-bar^{-v(f)}, and only the exponent
    parities matter for the square class.  This keeps the arithmetic in
    the residue field instead of building huge function-field powers.
    """
    a = valuation(sym.f, place)
    b = valuation(sym.g, place)
    if a == 0 and b == 0:
        rf = place.residue_field()
        return SquareClass.trivial(_class_field_of(rf))
    rf = place.residue_field()
    field = _class_field_of(rf)
    value = field.one()
    if b % 2:
        value = value * rf.reduce(_unit_part(sym.f, place, a))
    if a % 2:
        value = value * rf.reduce(_unit_part(sym.g, place, b))
    if (a * b) % 2:
        value = -value
    return SquareClass(field, value)


def _as_symbol_list(syms) -> list[FunctionFieldSymbol]:
    if isinstance(syms, FunctionFieldSymbol):
        return [syms]
    if isinstance(syms, SymbolSum):
        return list(syms)
    return list(syms)


def _verify_support(fn: RatFunc, places: Sequence[Place]) -> None:
    """Check that the finite places listed exhaust fn's zeros and poles."""
    rest = fn
    for place in places:
        if place.is_infinite:
            continue
        v = valuation(fn, place)
        if v:
            rest = rest * RatFunc.from_poly(place.poly) ** (-v)
    if not rest.is_constant():
        raise ValueError(
            f"support of {fn} is not exhausted by the given places"
        )


def symbol_profile(
    syms,
    *,
    places: Optional[Sequence[Place]] = None,
    keep_trivial: bool = False,
) -> dict[Place, SquareClass]:
    """Residues of a symbol sum at every place where they can be nonzero.

    With ``places=None`` the support is discovered by factoring numerators
    and denominators (rational base field); otherwise the given places
    are used after checking that they exhaust the support.
    """
    syms = _as_symbol_list(syms)
    if not syms:
        return {}
    base_field = syms[0].field
    if places is None:
        seen: dict[Place, None] = {}
        for sym in syms:
            for fn in (sym.f, sym.g):
                for place in support_places(fn, include_infinity=False):
                    seen.setdefault(place, None)
        place_list = list(seen) + [Place.infinite(base_field)]
    else:
        place_list = list(places)
        if not any(p.is_infinite for p in place_list):
            place_list.append(Place.infinite(base_field))
        for sym in syms:
            for fn in (sym.f, sym.g):
                _verify_support(fn, place_list)
    place_list.sort(key=_place_sort_key)
    out: dict[Place, SquareClass] = {}
    for place in place_list:
        total: Optional[SquareClass] = None
        for sym in syms:
            cls = residue_symbol(sym, place)
            total = cls if total is None else total * cls
        if total is None:  # pragma: no cover - syms nonempty
            continue
        if keep_trivial or not total.is_trivial():
            out[place] = total
    return out


def _place_sort_key(place: Place):
    if place.is_infinite:
        return (1, 0, "")
    return (0, place.degree, str(place.poly))


# ==========================================================================
# Gauss valuations: vertical behaviour of two-variable symbols
# ==========================================================================

def _poly_gauss(p: Poly, tplace: Place) -> int:
    if p.is_zero():
        raise ZeroDivisionError("gauss valuation of 0")
    return min(
        valuation(c, tplace)
        for c in p.coeffs
        if not p.field.is_zero(c)
    )


def gauss_valuation(F: RatFunc, tplace: Place) -> int:
    """The Gauss extension of ``v_t`` to k(t)(x): min over coefficients."""
    return _poly_gauss(F.num, tplace) - _poly_gauss(F.den, tplace)


def _vertical_fields(rf):
    """(coefficient adapter, x-level adapter) for the residue field."""
    cached = getattr(rf, "_vertical_fields", None)
    if cached is not None:
        return cached
    if rf.kind == "quadratic":
        coeff = TowerCoefficients(rf.tower)
    else:
        base = rf.place.field
        if isinstance(base, RationalField):
            coeff = RationalField()
        elif isinstance(base, TowerCoefficients):
            coeff = TowerCoefficients(base.tower)
        else:  # pragma: no cover - vertical places live on the t-line
            raise TypeError(f"unexpected base field {base!r}")
    coeff.poly_var = "x"
    fields = (coeff, RationalFunctions("res", coeff))
    rf._vertical_fields = fields
    return fields


def _uniformizer(tplace: Place) -> RatFunc:
    if tplace.is_infinite:
        return RatFunc.constant(tplace.field, 1) / RatFunc.variable(tplace.field)
    return RatFunc.from_poly(tplace.poly)


def _reduce_coefficient(c: RatFunc, tplace: Place, rf, coeff_field):
    if c.is_zero():
        return coeff_field.zero()
    v = valuation(c, tplace)
    if v > 0:
        return coeff_field.zero()
    if v < 0:
        raise ValueError(f"coefficient {c} is not integral at {tplace}")
    return coeff_field.coerce(rf.reduce(c))


def gauss_reduce(F: RatFunc, tplace: Place) -> RatFunc:
    """Reduce a Gauss-unit of k(t)(x) into k(residue)(x)."""
    rf = tplace.residue_field()
    coeff_field, _ = _vertical_fields(rf)
    mn = _poly_gauss(F.num, tplace)
    md = _poly_gauss(F.den, tplace)
    if mn != md:
        raise ValueError(f"{F} is not a Gauss unit at {tplace}")
    pi = _uniformizer(tplace)
    num = Poly(coeff_field, [
        _reduce_coefficient(XCOEFF.coerce(c) * pi ** (-mn), tplace, rf, coeff_field)
        for c in F.num.coeffs
    ])
    den = Poly(coeff_field, [
        _reduce_coefficient(XCOEFF.coerce(c) * pi ** (-md), tplace, rf, coeff_field)
        for c in F.den.coeffs
    ])
    return RatFunc(num, den)


def vertical_residue(syms, tplace: Place) -> SquareClass:
    """Brute-force vertical residue of a symbol sum at a fiber of the t-line.

    Returns a square class of k(residue)(x); the class of a corestricted
    sum is expected to be constant (i.e. come from k(residue)), and the
    profile machinery flags it when it is not.
    """
    syms = _as_symbol_list(syms)
    rf = tplace.residue_field()
    coeff_field, x_field = _vertical_fields(rf)
    total = RatFunc.constant(coeff_field, 1)
    for sym in syms:
        a = gauss_valuation(sym.f, tplace)
        b = gauss_valuation(sym.g, tplace)
        if a == 0 and b == 0:
            continue
        u = sym.f ** b * sym.g ** (-a)
        if (a * b) % 2:
            u = -u
        total = total * gauss_reduce(u, tplace)
    return SquareClass(x_field, total)


def constant_part(cls: SquareClass) -> Optional[SquareClass]:
    """The class as a constant of the coefficient field, if it is one."""
    if not isinstance(cls.field, RationalFunctions):
        return cls
    sf, lead = ratfunc_square_free(cls.value)
    if sf.degree > 0:
        return None
    return SquareClass(cls.field.base, lead)


# ==========================================================================
# places and profiles on the ruled surface
# ==========================================================================

@dataclass(frozen=True)
class SurfacePlace:
    """A codimension-1 locus of the ruled surface over the t-line.

    ``axis='x'``: horizontal curves (finite: an irreducible polynomial in
    x over k(t); infinite: the section x = infinity).  ``axis='t'``:
    vertical fibers over places of the t-line.
    """

    axis: str
    place: Place

    def __post_init__(self):
        if self.axis not in ("x", "t"):
            raise ValueError(f"unknown axis {self.axis!r}")

    def __str__(self):
        if self.axis == "x":
            if self.place.is_infinite:
                return "section x = infinity"
            return f"curve {self.place.poly} = 0"
        if self.place.is_infinite:
            return "fiber t = infinity"
        return f"fiber {self.place.poly} = 0"

    def sort_key(self):
        return (0 if self.axis == "x" else 1,) + _place_sort_key(self.place)


class SurfaceProfile:
    """Residue classes of a corestricted sum along surface places."""

    def __init__(
        self,
        entries: dict[SurfacePlace, SquareClass],
        support: Sequence[SurfacePlace],
        certificates: Optional[dict] = None,
    ):
        self.entries = dict(entries)
        self.support = sorted(support, key=SurfacePlace.sort_key)
        self.certificates = certificates or {}

    def entry(self, place: SurfacePlace) -> Optional[SquareClass]:
        return self.entries.get(place)

    def nontrivial(self) -> dict[SurfacePlace, SquareClass]:
        return {p: c for p, c in self.entries.items() if not c.is_trivial()}

    def to_pairs(self) -> list[tuple[str, str]]:
        out = []
        for place in self.support:
            cls = self.entries.get(place)
            out.append((str(place), "1" if cls is None else str(cls)))
        return out

    def __repr__(self):
        return f"SurfaceProfile({self.to_pairs()})"


# ==========================================================================
# covers of the t-line and declared section functions
# ==========================================================================

class DivisorDeclarationError(ValueError):
    """A declared divisor disagrees with computed valuations."""


class ResidueParityError(ArithmeticError):
    """A vertical residue fails to be constant: the section function does
    not satisfy the divisor-parity condition at that fiber."""


class SplitCover:
    """A hyperelliptic-style double cover y^2 = c'(t) h(x) with h split.

    ``h`` is the monic product of ``x - a_i`` over the declared roots
    a_i in k(t); the branch curve B = {h = 0} is the disjoint union of
    the component sections x = a_i.  ``c_prime`` is carried for the
    cover's definition but does not enter the residue calculus of the
    corestricted classes computed here.
    """

    def __init__(self, roots: Sequence[RatFunc], c_prime: Union[RatFunc, int] = 1):
        roots = tuple(QQ_ratfunc(r) for r in roots)
        if len(roots) < 2 or len(roots) % 2:
            raise ValueError("need an even number (>= 2) of roots: deg h = 2g + 2")
        for i, j in itertools.combinations(range(len(roots)), 2):
            if roots[i] == roots[j]:
                raise ValueError(f"h is not square-free: roots {i} and {j} coincide")
        self.roots = roots
        self.c_prime = QQ_ratfunc(c_prime)
        if self.c_prime.is_zero():
            raise ValueError("c' must be nonzero")

    @property
    def genus(self) -> int:
        return len(self.roots) // 2 - 1

    def h_poly(self) -> Poly:
        x = x_variable()
        h = RatFunc.constant(XCOEFF, 1)
        for a in self.roots:
            h = h * (x - a)
        return h.num

    def component_place(self, i: int) -> Place:
        return Place.finite(Poly(XCOEFF, [-self.roots[i], 1]))

    def horizontal_places(self) -> list[Place]:
        return [self.component_place(i) for i in range(len(self.roots))]

    def __repr__(self):
        return f"SplitCover(roots=[{', '.join(map(str, self.roots))}])"


class KummerCover:
    """A double cover y^2 = c'(t) (x^2 - m(t)) whose branch curve is
    rational: reduction at the branch place is realised by an explicit
    parametrisation (x(s), t(s)) with x(s)^2 = m(t(s))."""

    def __init__(self, m: RatFunc, c_prime=1, *, x_of_s: RatFunc, t_of_s: RatFunc):
        self.m = QQ_ratfunc(m)
        self.c_prime = QQ_ratfunc(c_prime)
        if self.c_prime.is_zero():
            raise ValueError("c' must be nonzero")
        self.x_of_s = QQ_ratfunc(x_of_s)
        self.t_of_s = QQ_ratfunc(t_of_s)
        if not (self.x_of_s * self.x_of_s == _compose(self.m, self.t_of_s)):
            raise ValueError("parametrisation does not satisfy x^2 = m(t)")
        #: classes on the branch curve live in Q(s)
        self.s_field = RationalFunctions("s", QQ)

    @property
    def genus(self) -> int:
        return 0

    def h_poly(self) -> Poly:
        mm = XCOEFF.coerce(self.m)
        return Poly(XCOEFF, [-mm, XCOEFF.coerce(0), XCOEFF.coerce(1)])

    def branch_place(self) -> Place:
        return Place.finite(self.h_poly())

    def horizontal_places(self) -> list[Place]:
        return [self.branch_place()]

    def branch_reduce(self, fn: RatFunc) -> RatFunc:
        """Image of a t-level function in k(B) = k(s)."""
        return _compose(fn, self.t_of_s)

    def __repr__(self):
        return f"KummerCover(x^2 - ({self.m}))"


def QQ_ratfunc(value) -> RatFunc:
    if isinstance(value, RatFunc):
        if value.field is not QQ:
            raise TypeError("expected a rational function over Q")
        return value
    if isinstance(value, str):
        return t_function(value)
    return RatFunc.constant(QQ, value)


def _compose(fn: RatFunc, inner: RatFunc) -> RatFunc:
    num = fn.num.evaluate(inner)
    den = fn.den.evaluate(inner)
    num = inner._coerce(num)
    den = inner._coerce(den)
    return num / den


class DeclaredFunction:
    """A section function together with its declared divisor.

    Either one component function per root of a split cover, or a single
    base-field function (an element of k(t), giving the collapsed symbol
    ``(l, h(x))``).  The divisor is *declared* as (component, t-place,
    multiplicity) triples -- component ``None`` for the base form -- and
    is fully verified against computed valuations by :meth:`validate`.
    """

    def __init__(
        self,
        *,
        components: Optional[Sequence] = None,
        base: Optional[Union[RatFunc, int, str]] = None,
        divisor: Sequence[tuple] = (),
        label: str = "",
    ):
        if (components is None) == (base is None):
            raise ValueError("give either components or a base function")
        self.components = (
            None if components is None else tuple(QQ_ratfunc(c) for c in components)
        )
        self.base = None if base is None else QQ_ratfunc(base)
        if self.components is not None and any(c.is_zero() for c in self.components):
            raise ValueError("component functions must be nonzero")
        if self.base is not None and self.base.is_zero():
            raise ValueError("the base function must be nonzero")
        self.divisor = tuple(
            (comp, place, int(mult)) for comp, place, mult in divisor
        )
        self.label = label

    @property
    def is_base_form(self) -> bool:
        return self.base is not None

    def slot_functions(self, cover) -> tuple[RatFunc, ...]:
        if self.is_base_form:
            return tuple(self.base for _ in cover.roots)
        return self.components

    def validate(self, cover) -> None:
        degree = sum(mult * place.degree for _, place, mult in self.divisor)
        if degree != 0:
            raise DivisorDeclarationError(
                f"declared divisor of {self.label or 'function'} has degree {degree}"
            )
        if self.is_base_form:
            fns = {None: self.base}
        else:
            if not isinstance(cover, SplitCover):
                raise TypeError("component functions need a split cover")
            if len(self.components) != len(cover.roots):
                raise DivisorDeclarationError(
                    f"{len(self.components)} component functions for "
                    f"{len(cover.roots)} components"
                )
            fns = dict(enumerate(self.components))
        declared: dict = {}
        for comp, place, mult in self.divisor:
            if comp not in fns:
                raise DivisorDeclarationError(f"unknown component {comp!r}")
            key = (comp, place)
            declared[key] = declared.get(key, 0) + mult
        for comp, fn in fns.items():
            computed = support_places(fn)
            mine = {
                place: mult for (c, place), mult in declared.items()
                if c == comp and mult
            }
            if computed != mine:
                raise DivisorDeclarationError(
                    f"declared divisor of component {comp!r} is "
                    f"{_fmt_divisor(mine)}, computed {_fmt_divisor(computed)}"
                )


def _fmt_divisor(div: dict) -> str:
    if not div:
        return "0"
    return " + ".join(
        f"{mult}*({place})" for place, mult in sorted(div.items(), key=lambda kv: _place_sort_key(kv[0]))
    )


# ==========================================================================
# corestriction expansion and the two residue routes
# ==========================================================================

def expand_corestriction(cover, func: DeclaredFunction) -> SymbolSum:
    """The corestricted class as an explicit symbol sum over k(t)(x).

    Split cover, component form: one slot symbol ``(l_i, x - a_i)`` per
    component.  Base-field form (either cover): the projection formula
    collapses the sum to the single symbol ``(l, h(x))``.
    """
    func.validate(cover)
    if func.is_base_form:
        h = RatFunc.from_poly(cover.h_poly())
        lifted = RatFunc.constant(XCOEFF, func.base)
        return SymbolSum([FunctionFieldSymbol(lifted, h)])
    if not isinstance(cover, SplitCover):
        raise TypeError("component functions need a split cover")
    x = x_variable()
    terms = []
    for ell, a in zip(func.components, cover.roots):
        lifted = RatFunc.constant(XCOEFF, ell)
        terms.append(FunctionFieldSymbol(lifted, x - a))
    return SymbolSum(terms)


def _vertical_support(cover, func: DeclaredFunction) -> list[Place]:
    places: dict[Place, None] = {}
    for fn in func.slot_functions(cover) if isinstance(cover, SplitCover) else [func.base]:
        for place in support_places(fn, include_infinity=False):
            places.setdefault(place, None)
    roots = cover.roots if isinstance(cover, SplitCover) else []
    for a in roots:
        for place, mult in support_places(a, include_infinity=False).items():
            if mult < 0:
                places.setdefault(place, None)
    if isinstance(cover, KummerCover):
        for place in support_places(cover.m, include_infinity=False):
            places.setdefault(place, None)
    out = list(places)
    out.append(Place.infinite(QQ))
    out.sort(key=_place_sort_key)
    return out


def expanded_symbol_profile(cover, func: DeclaredFunction) -> SurfaceProfile:
    """Route B: residues of the expanded sum, computed by brute force.

    Horizontal places via the univariate residue formula over the
    coefficient field k(t); vertical fibers via Gauss valuations.  No
    appeal to the structure of the corestriction.
    """
    syms = expand_corestriction(cover, func)
    entries: dict[SurfacePlace, SquareClass] = {}
    support: list[SurfacePlace] = []

    for place in cover.horizontal_places() + [Place.infinite(XCOEFF)]:
        spot = SurfacePlace("x", place)
        support.append(spot)
        if isinstance(cover, KummerCover) and not place.is_infinite:
            cls = _kummer_branch_residue(cover, syms, place)
        else:
            total: Optional[SquareClass] = None
            for sym in syms:
                c = residue_symbol(sym, place)
                total = c if total is None else total * c
            cls = total
        if cls is not None and not cls.is_trivial():
            entries[spot] = cls

    for tplace in _vertical_support(cover, func):
        spot = SurfacePlace("t", tplace)
        support.append(spot)
        cls = vertical_residue(syms, tplace)
        if not cls.is_trivial():
            entries[spot] = cls
    return SurfaceProfile(entries, support)


def _kummer_branch_residue(cover: KummerCover, syms, place: Place) -> SquareClass:
    """Residue at the irreducible branch place of a Kummer cover, realised
    through the rational parametrisation of the branch curve."""
    out = SquareClass.trivial(cover.s_field)
    for sym in syms:
        a = valuation(sym.f, place)
        b = valuation(sym.g, place)
        if a == 0 and b == 0:
            continue
        u = sym.f ** b * sym.g ** (-a)
        if (a * b) % 2:
            u = -u
        out = out * SquareClass(cover.s_field, _kummer_reduce(cover, u, place))
    return out


def _kummer_reduce(cover: KummerCover, u: RatFunc, place: Place) -> RatFunc:
    """Evaluate a unit of k(t)(x) at x = x(s), t = t(s)."""
    if valuation(u, place) != 0:
        raise ValueError(f"{u} is not a unit at the branch place")

    def eval_poly(p: Poly) -> RatFunc:
        acc = RatFunc.constant(QQ, 0)
        for c in reversed(p.coeffs):
            c_s = _compose(XCOEFF.coerce(c), cover.t_of_s)
            acc = acc * cover.x_of_s + c_s
        return acc

    num = eval_poly(u.num)
    den = eval_poly(u.den)
    if den.is_zero() or num.is_zero():
        raise ZeroDivisionError(
            "parametrised reduction hit a zero; clear the symbol first"
        )
    return num / den


def ramification_profile(cover, func: DeclaredFunction) -> SurfaceProfile:
    """Route A: the structured residue profile of the corestricted class.

    Horizontal: component places carry the class of the matching section
    function, all other horizontal curves are unramified, and the section
    at infinity carries the norm (the product over the slots).  Vertical:
    each fiber is handled slot by slot -- slots whose root stays finite
    must cancel in pairs through the identified points (else
    :class:`ResidueParityError`), and slots whose root has a pole are
    cleared against the matching power of the fiber polynomial, i.e.
    ``(l_i, x - a_i) = (l_i, p^mu (x - a_i)) - (l_i, p^mu)``; the
    coordinate change on the fiber is the identity Moebius map, and the
    clearing data is recorded in the certificates.
    """
    func.validate(cover)
    entries: dict[SurfacePlace, SquareClass] = {}
    support: list[SurfacePlace] = []
    certificates: dict = {}

    if isinstance(cover, KummerCover):
        return _kummer_structured_profile(cover, func)

    slots = func.slot_functions(cover)

    # horizontal: component places and the section at infinity
    norm = RatFunc.constant(QQ, 1)
    for i, ell in enumerate(slots):
        spot = SurfacePlace("x", cover.component_place(i))
        support.append(spot)
        cls = SquareClass(XCOEFF, ell)
        if not cls.is_trivial():
            entries[spot] = cls
        norm = norm * ell
    spot = SurfacePlace("x", Place.infinite(XCOEFF))
    support.append(spot)
    norm_cls = SquareClass(XCOEFF, norm)
    if not norm_cls.is_trivial():
        entries[spot] = norm_cls

    # vertical fibers
    for tplace in _vertical_support(cover, func):
        spot = SurfacePlace("t", tplace)
        support.append(spot)
        cls, certificate = _structured_vertical(cover, slots, tplace)
        certificates[str(spot)] = certificate
        if cls is not None and not cls.is_trivial():
            entries[spot] = cls
    return SurfaceProfile(entries, support, certificates)


def _structured_vertical(cover: SplitCover, slots, tplace: Place):
    """One fiber of the structured route; returns (class, certificate)."""
    rf = tplace.residue_field()
    coeff_field, x_field = _vertical_fields(rf)
    finite_groups: dict = {}
    cleared = []
    total = None

    for i, (ell, a) in enumerate(zip(slots, cover.roots)):
        m = valuation(ell, tplace)
        va = None if a.is_zero() else valuation(a, tplace)
        pole = -min(0, va) if va is not None else 0
        if pole == 0:
            if m == 0:
                continue
            if va is None or va > 0:
                abar = coeff_field.zero()
            else:
                abar = coeff_field.coerce(rf.reduce(a))
            key = _residue_key(abar)
            finite_groups.setdefault(key, [abar, 0])
            finite_groups[key][1] += m
            continue
        # slot over the section at infinity: clear the pole against p^mu
        pi = _uniformizer(tplace)
        u_ell = rf.reduce(ell * pi ** (-m))
        v_a = rf.reduce(-a * pi ** pole)
        term = coeff_field.coerce(u_ell) ** (pole % 2) * coeff_field.coerce(v_a) ** (m % 2)
        if (pole * m) % 2:
            term = -term
        cls = SquareClass(coeff_field, term)
        total = cls if total is None else total * cls
        cleared.append({
            "slot": i,
            "pole_order": pole,
            "multiplier": f"({tplace})^{pole}" if not tplace.is_infinite else f"(1/t)^{pole}",
            "unit_part": str(u_ell),
            "root_part": str(v_a),
        })

    odd = {
        key: group for key, group in finite_groups.items() if group[1] % 2
    }
    if odd:
        points = ", ".join(f"x = {group[0]}" for group in odd.values())
        raise ResidueParityError(
            f"vertical residue on the {SurfacePlace('t', tplace)} is not "
            f"constant: odd total multiplicity at {points}; the function "
            f"violates the divisor-parity condition on this fiber"
        )
    certificate = {
        "moebius": "identity",
        "cancelled_in_pairs": [
            {"x": str(group[0]), "total_multiplicity": group[1]}
            for group in finite_groups.values()
        ],
        "cleared_slots": cleared,
    }
    if total is None:
        return None, certificate
    embedded = SquareClass(x_field, RatFunc.constant(coeff_field, total.value))
    certificate["constant"] = str(total)
    return embedded, certificate


def _residue_key(value):
    if isinstance(value, Fraction):
        return ("q", value)
    if isinstance(value, TowerElem):
        return ("t", tuple(sorted(
            (tuple(sorted(mono)), coeff) for mono, coeff in value.coeffs.items()
        )))
    raise TypeError(f"unhashable residue value {value!r}")  # pragma: no cover


def _kummer_structured_profile(cover: KummerCover, func: DeclaredFunction) -> SurfaceProfile:
    """Structured route for the collapsed symbol (l, h): the branch place
    carries l pushed to k(B); elsewhere the single-symbol formula applies
    verbatim (recorded as such in the certificates)."""
    entries: dict[SurfacePlace, SquareClass] = {}
    support: list[SurfacePlace] = []
    certificates: dict = {"form": "(l, h) with l from the base field"}
    syms = expand_corestriction(cover, func)

    spot = SurfacePlace("x", cover.branch_place())
    support.append(spot)
    pushed = SquareClass(cover.s_field, cover.branch_reduce(func.base))
    if not pushed.is_trivial():
        entries[spot] = pushed

    spot = SurfacePlace("x", Place.infinite(XCOEFF))
    support.append(spot)
    v_inf = 2 * cover.genus + 2  # v_S(h) = -deg h: even, so no residue
    certificates[str(spot)] = {"h_degree": v_inf, "residue": "trivial (even degree)"}

    for tplace in _vertical_support(cover, func):
        spot = SurfacePlace("t", tplace)
        support.append(spot)
        cls = vertical_residue(syms, tplace)
        const = constant_part(cls)
        if const is None:
            raise ResidueParityError(
                f"vertical residue at {tplace} is not constant"
            )
        if not cls.is_trivial():
            entries[spot] = cls
    return SurfaceProfile(entries, support, certificates)


def compare_routes(cover, func: DeclaredFunction) -> dict:
    """Place-by-place comparison of the structured and brute-force routes."""
    structured = ramification_profile(cover, func)
    oracle = expanded_symbol_profile(cover, func)
    places: dict[SurfacePlace, None] = {}
    for spot in structured.support + oracle.support:
        places.setdefault(spot, None)
    rows = []
    all_ok = True
    for spot in sorted(places, key=SurfacePlace.sort_key):
        s_cls = structured.entry(spot)
        o_cls = oracle.entry(spot)
        if s_cls is None and o_cls is None:
            agree = True
        elif s_cls is None:
            agree = o_cls.is_trivial()
        elif o_cls is None:
            agree = s_cls.is_trivial()
        else:
            agree = s_cls.same_class(o_cls)
        rows.append({
            "place": str(spot),
            "structured": "1" if s_cls is None else str(s_cls),
            "bruteforce": "1" if o_cls is None else str(o_cls),
            "agree": agree,
        })
        all_ok = all_ok and agree
    return {"rows": rows, "ok": all_ok}


def check_component_residues(cover, func: DeclaredFunction) -> dict:
    """Verify that the brute-force residue on each branch component equals
    the class of the declared section function itself."""
    oracle = expanded_symbol_profile(cover, func)
    rows = []
    ok = True
    if isinstance(cover, KummerCover):
        spot = SurfacePlace("x", cover.branch_place())
        expected = SquareClass(cover.s_field, cover.branch_reduce(func.base))
        got = oracle.entry(spot)
        agree = expected.is_trivial() if got is None else got.same_class(expected)
        rows.append({"place": str(spot), "expected": str(expected),
                     "got": "1" if got is None else str(got), "agree": agree})
        ok = ok and agree
    else:
        slots = func.slot_functions(cover)
        for i, ell in enumerate(slots):
            spot = SurfacePlace("x", cover.component_place(i))
            expected = SquareClass(XCOEFF, ell)
            got = oracle.entry(spot)
            agree = expected.is_trivial() if got is None else got.same_class(expected)
            rows.append({"place": str(spot), "expected": str(expected),
                         "got": "1" if got is None else str(got), "agree": agree})
            ok = ok and agree
    return {"rows": rows, "ok": ok}


# ==========================================================================
# divisor parity membership
# ==========================================================================

def _point_signature(a: RatFunc, tplace: Place):
    """Which point of the (nodal) image curve a component hits over tplace."""
    rf = tplace.residue_field()
    v = None if a.is_zero() else valuation(a, tplace)
    if v is not None and v < 0:
        return ("S", _place_key(tplace))
    if v is None or v > 0:
        value = Fraction(0) if rf.kind == "base" else rf.tower.zero()
    else:
        value = rf.reduce(a)
    return ("pt", _place_key(tplace), _residue_key(value))


def _place_key(place: Place):
    return "inf" if place.is_infinite else str(place.poly)


def divisor_parity_membership(
    cover: SplitCover,
    func: DeclaredFunction,
    generators: Optional[Sequence[dict]] = None,
) -> dict:
    """Does the declared divisor, pushed to the nodal image curve and read
    modulo 2, lie in the span of the allowed divisors?

    The allowed divisors default to the intersection cycles with the
    section at infinity and with the infinite fiber, both mod 2.  The
    pushforward identifies component points lying over the same
    (fiber, x-value) pair -- that is where the pairing cancellation
    happens.  Returns the parity vector data and the verdict.
    """
    if func.is_base_form:
        raise TypeError("membership applies to component-form functions")
    func.validate(cover)

    pushed: dict = {}
    for comp, tplace, mult in func.divisor:
        sig = _point_signature(cover.roots[comp], tplace)
        pushed[sig] = pushed.get(sig, 0) ^ (mult & 1)
    pushed = {sig: 1 for sig, bit in pushed.items() if bit}

    if generators is None:
        generators = parity_generators(cover)

    keys: dict = {}
    for sig in pushed:
        keys.setdefault(sig, len(keys))
    for gen in generators:
        for sig in gen:
            keys.setdefault(sig, len(keys))

    def vec(d: dict) -> int:
        out = 0
        for sig, bit in d.items():
            if bit:
                out |= 1 << keys[sig]
        return out

    gen_vecs = [vec(g) for g in generators]
    member = f2.in_span(gen_vecs, vec(pushed))
    return {
        "member": member,
        "pushforward": sorted(str(sig) for sig in pushed),
        "generators": [sorted(str(sig) for sig in g if g[sig]) for g in generators],
    }


def parity_generators(cover: SplitCover) -> list[dict]:
    """The mod-2 cycles cut on the branch image by the section at infinity
    and by the infinite fiber."""
    section: dict = {}
    pole_places: dict[Place, None] = {}
    for a in cover.roots:
        for place, mult in support_places(a).items():
            if mult < 0:
                pole_places.setdefault(place, None)
    for place in pole_places:
        count = sum(
            1 for a in cover.roots
            if valuation(a, place) < 0
        )
        if count % 2:
            section[("S", _place_key(place))] = 1

    fiber: dict = {}
    inf = Place.infinite(QQ)
    for a in cover.roots:
        sig = _point_signature(a, inf)
        fiber[sig] = fiber.get(sig, 0) ^ 1
    fiber = {sig: 1 for sig, bit in fiber.items() if bit}
    return [section, fiber]


# ==========================================================================
# desk covers
# ==========================================================================

@dataclass
class DeskCover:
    """A small worked cover with hand-checked expectations (see tests)."""

    name: str
    cover: object
    functions: dict[str, DeclaredFunction]
    notes: str = ""


def standard_desks() -> dict[str, DeskCover]:
    """The desk inventory used by the verification suite and the tests."""
    t = _tvar()
    one = RatFunc.constant(QQ, 1)
    P_T = Place.finite(Poly(QQ, [0, 1]))
    P_Q2 = Place.finite(Poly(QQ, [-2, 0, 1]))
    INF = Place.infinite(QQ)
    s = RatFunc.variable(QQ)

    desks: dict[str, DeskCover] = {}

    kummer = KummerCover(t, 1, x_of_s=s, t_of_s=s * s)
    desks["kummer-line"] = DeskCover(
        name="kummer-line",
        cover=kummer,
        functions={
            "t": DeclaredFunction(
                base=t,
                divisor=((None, P_T, 1), (None, INF, -1)),
                label="t",
            ),
        },
        notes=(
            "x^2 - t with the base function t: the collapsed symbol "
            "(t, x^2 - t); the branch curve is parametrised by s with "
            "t = s^2, so the branch residue [t] = [s^2] is trivial."
        ),
    )

    split_const = SplitCover([one, -one, 2 * one, -2 * one])
    desks["constant-split"] = DeskCover(
        name="constant-split",
        cover=split_const,
        functions={
            "d-base": DeclaredFunction(base=5, divisor=(), label="d-base"),
            "d-slots": DeclaredFunction(
                components=(5, 5, 5, 5), divisor=(), label="d-slots",
            ),
        },
        notes=(
            "constant roots, constant function 5 in both the collapsed "
            "and the slot form: the two expansions must agree everywhere."
        ),
    )

    split_node = SplitCover([t, -t, t + 1, -(t + 1)])
    desks["node-paired"] = DeskCover(
        name="node-paired",
        cover=split_node,
        functions={
            "paired": DeclaredFunction(
                components=(t, t, 1, 1),
                divisor=((0, P_T, 1), (0, INF, -1), (1, P_T, 1), (1, INF, -1)),
                label="paired",
            ),
            "unpaired": DeclaredFunction(
                components=(t, 1, 1, 1),
                divisor=((0, P_T, 1), (0, INF, -1)),
                label="unpaired",
            ),
        },
        notes=(
            "components 1 and 2 cross at (t, x) = (0, 0): the paired "
            "function is odd on both branches there and the parities "
            "cancel through the node; the unpaired one is odd on a "
            "single branch and is rejected."
        ),
    )

    split_poles = SplitCover([t, -t, 1 / t, -1 / t])
    desks["section-poles"] = DeskCover(
        name="section-poles",
        cover=split_poles,
        functions={
            "balanced": DeclaredFunction(
                components=(1, 1, t, t),
                divisor=((2, P_T, 1), (2, INF, -1), (3, P_T, 1), (3, INF, -1)),
                label="balanced",
            ),
            "half": DeclaredFunction(
                components=(1, 1, t, 1),
                divisor=((2, P_T, 1), (2, INF, -1)),
                label="half",
            ),
        },
        notes=(
            "roots 1/t and -1/t hit the section at infinity over t = 0: "
            "the balanced function is cleared slot by slot there and "
            "leaves the nontrivial constant class [-1] on that fiber.  "
            "The half function clears fine at t = 0 but its odd slot "
            "lands at the finite point x = 0 of the infinite fiber with "
            "no partner: the parity failure sits over t = infinity."
        ),
    )

    r_loop = (t * t + 1) / t
    desks["loop-poles"] = DeskCover(
        name="loop-poles",
        cover=SplitCover([r_loop, -r_loop, t, -t]),
        functions={
            "s-only": DeclaredFunction(
                components=(t, 1, 1, 1),
                divisor=((0, P_T, 1), (0, INF, -1)),
                label="s-only",
            ),
        },
        notes=(
            "the first root (t^2+1)/t has poles at both t = 0 and "
            "t = infinity, so the odd divisor of the function t on that "
            "component sits entirely over the section at infinity: every "
            "residue of the corestricted class is constant (pole "
            "clearing applies at both fibers), yet the pushed divisor is "
            "not in the allowed span.  Residue constancy does not imply "
            "divisor parity membership."
        ),
    )


    split_quad = SplitCover([t, 2 / t, -t, -2 / t])
    desks["quadratic-fiber"] = DeskCover(
        name="quadratic-fiber",
        cover=split_quad,
        functions={
            "quad": DeclaredFunction(
                components=("t**2 - 2", "t**2 - 2", 1, 1),
                divisor=((0, P_Q2, 1), (0, INF, -2), (1, P_Q2, 1), (1, INF, -2)),
                label="quad",
            ),
        },
        notes=(
            "components 1 and 2 meet over the degree-2 place t^2 - 2 "
            "(where t-bar = 2/t-bar): the cancellation happens inside "
            "the quadratic residue field Q(sqrt 2)."
        ),
    )
    return desks


# ==========================================================================
# Faddeev data: obstruction and reconstruction on the t-line
# ==========================================================================

class FaddeevRepairError(ArithmeticError):
    """No small element of the requested norm class exists at this place."""


def _lift_into(tower, value):
    if isinstance(value, TowerElem):
        return tower.lift(value)
    return tower.rational(Fraction(value))


class ResidueSpec:
    """Target residue classes at places of the t-line (degree <= 2 or
    infinity).  Degree-2 values may be given as ``(A, B)`` meaning
    ``A + B*beta`` for the stored root ``beta`` of the place polynomial.

    Without an entry at infinity, the infinite residue is left free and
    the reconstruction reports what it comes out to; with one, the full
    projective profile is fixed and the corestriction-sum condition
    becomes an actual obstruction.
    """

    def __init__(self, base: CoefficientField = QQ):
        self.base = base
        self.entries: dict[Place, object] = {}

    def add(self, place: Place, value) -> "ResidueSpec":
        if place.field is not self.base:
            raise TypeError("place is over a different base field")
        if place.degree > 2:
            raise NotImplementedError("places of degree > 2 are out of scope")
        rf = place.residue_field()
        if place.degree == 2:
            if isinstance(value, tuple):
                a_part, b_part = (self.base.coerce(v) for v in value)
                value = _lift_into(rf.tower, a_part) + rf.beta * _lift_into(rf.tower, b_part)
            elif isinstance(value, (int, Fraction)):
                value = rf.tower.rational(Fraction(value))
            elif isinstance(value, TowerElem) and value.tower is not rf.tower:
                value = rf.tower.lift(value)
            if value.is_zero():
                raise ZeroDivisionError("residue classes are nonzero")
        else:
            value = self.base.coerce(value)
            if self.base.is_zero(value):
                raise ZeroDivisionError("residue classes are nonzero")
        if place in self.entries:
            raise ValueError(f"duplicate entry at {place}")
        self.entries[place] = value
        return self

    def places(self) -> list[Place]:
        return sorted(self.entries, key=_place_sort_key)

    def infinity_value(self):
        for place, value in self.entries.items():
            if place.is_infinite:
                return value
        return None

    def copy(self) -> "ResidueSpec":
        out = ResidueSpec(self.base)
        out.entries = dict(self.entries)
        return out

    def to_pairs(self) -> list[tuple[str, str]]:
        return [(str(p), str(self.entries[p])) for p in self.places()]


def _entry_norm(place: Place, value):
    if place.degree == 2:
        rf = place.residue_field()
        return rf.norm_to_base(value)
    return value


def faddeev_obstruction(spec: ResidueSpec) -> SquareClass:
    """The corestriction-sum class: the product of the norms of all
    entries, as a square class of the base field.  The profile extends to
    an actual symbol sum on the projective line iff this is trivial."""
    total = spec.base.one()
    for place, value in spec.entries.items():
        total = total * spec.base.coerce(_entry_norm(place, value))
    return SquareClass(spec.base, total)


def _beta_coordinates(rf, value) -> tuple:
    """Write a degree-2 residue value as A + B*beta over the base."""
    top = len(rf.tower.steps) - 1
    even, odd = value.split(top)
    u = rf.place.poly.coeff(1)
    # beta = (sqrt_disc - u)/2  =>  sqrt_disc = 2*beta + u
    base_field = rf.place.field
    if isinstance(base_field, RationalField):
        if not even.is_rational() or not odd.is_rational():
            raise ValueError(f"residue value {value} is not in the quadratic field")
        x_part, y_part = even.as_rational(), odd.as_rational()
    else:
        x_part = _strip_top(rf, even)
        y_part = _strip_top(rf, odd)
    a_part = x_part + y_part * u
    b_part = 2 * y_part
    return a_part, b_part


def _strip_top(rf, elem):
    base_tower = rf.place.field.tower
    top = len(rf.tower.steps) - 1
    for mono in elem.coeffs:
        if top in mono:  # pragma: no cover - guarded by split()
            raise ValueError("element does not descend")
    return TowerElem(base_tower, elem.coeffs)


def faddeev_reconstruct(spec: ResidueSpec) -> dict:
    """Build a symbol sum over the base's rational function field whose
    residue profile matches the spec exactly, or report the obstruction.

    Degree-2 entries are realised by ``(B t + A, p)`` -- whose reduction
    at p is exactly A + B beta -- plus a degree-1 correction at the zero
    of the linear slot; degree-1 targets and corrections are realised by
    constant symbols ``(d, t - t0)``.  No constant (everywhere-unramified)
    symbols are ever added: the constant part of the reconstruction is
    normalised to zero, which fixes the class at infinity.
    """
    base = spec.base
    tvar = RatFunc.variable(base)
    inf_place = Place.infinite(base)

    declared_inf = spec.infinity_value()
    if declared_inf is not None:
        obstruction = faddeev_obstruction(spec)
        if not obstruction.is_trivial():
            return {
                "status": "obstructed",
                "witness": obstruction,
                "message": (
                    "the product of the norms of the residues is not a "
                    "square; no symbol sum has this projective profile"
                ),
            }

    symbols: list[FunctionFieldSymbol] = []
    # residues acquired at degree-1 places as side effects
    targets: dict[Place, object] = {}
    for place, value in spec.entries.items():
        if place.is_infinite:
            continue
        if place.degree == 1:
            targets.setdefault(place, base.one())
            targets[place] = targets[place] * base.coerce(value)
            continue
        rf = place.residue_field()
        a_part, b_part = _beta_coordinates(rf, value)
        if _is_zero_scalar(base, b_part):
            symbols.append(FunctionFieldSymbol(
                RatFunc.constant(base, a_part), RatFunc.from_poly(place.poly),
            ))
            continue
        linear = tvar * b_part + a_part
        symbols.append(
            FunctionFieldSymbol(linear, RatFunc.from_poly(place.poly))
        )
        # the linear slot vanishes at t0 = -A/B and deposits [p(t0)] there
        t0 = -base.coerce(a_part) * base.invert(b_part)
        zero_place = Place.finite(Poly(base, [-t0, 1]))
        targets.setdefault(zero_place, base.one())

    # degree-1 corrections: push the current residue to the target
    for place in sorted(targets, key=_place_sort_key):
        target = targets[place]
        rf = place.residue_field()
        current = base.one()
        for sym in symbols:
            cls = residue_symbol(sym, place)
            current = current * base.coerce(cls.value)
        delta = base.coerce(target) * base.invert(current)
        if not SquareClass(base, delta).is_trivial():
            root = -place.poly.coeff(0)
            symbols.append(FunctionFieldSymbol(
                RatFunc.constant(base, delta), tvar - root,
            ))

    # honest roundtrip: recompute the full profile of what we built
    known_places = list(targets)
    for place in spec.places():
        if not place.is_infinite and place not in targets:
            known_places.append(place)
    profile = symbol_profile(
        symbols, places=known_places + [inf_place], keep_trivial=True,
    ) if symbols else {}

    roundtrip_ok = True
    problems = []
    for place, value in spec.entries.items():
        if place.is_infinite:
            continue
        got = profile.get(place)
        want = _spec_entry_class(spec, place, value)
        if got is None:
            got = SquareClass.trivial(want.field)
        if not got.same_class(want):
            roundtrip_ok = False  # pragma: no cover - construction is exact
            problems.append(str(place))
    inf_class = profile.get(inf_place)
    if inf_class is None:
        inf_class = SquareClass.trivial(base)
    if declared_inf is not None:
        want_inf = SquareClass(base, declared_inf)
        if not inf_class.same_class(want_inf):  # pragma: no cover - obstruction caught above
            roundtrip_ok = False
            problems.append("infinity")
    # unspecified finite places must come out unramified
    for place in known_places:
        if place in spec.entries:
            continue
        got = profile.get(place)
        if got is not None and not got.is_trivial():
            roundtrip_ok = False  # pragma: no cover - corrections are exact
            problems.append(str(place))

    return {
        "status": "reconstructed",
        "symbols": SymbolSum(symbols),
        "infinity_class": inf_class,
        "roundtrip_ok": roundtrip_ok,
        "problems": problems,
    }


def _spec_entry_class(spec: ResidueSpec, place: Place, value) -> SquareClass:
    if place.degree == 2:
        rf = place.residue_field()
        return SquareClass(_class_field_of(rf), value)
    return SquareClass(spec.base, value)


def _is_zero_scalar(base: CoefficientField, value) -> bool:
    return base.is_zero(base.coerce(value))


def repair_spec(spec: ResidueSpec, place: Place, *, search_bound: int = 25) -> ResidueSpec:
    """Fix a full projective profile by changing the single entry at
    ``place`` so that the corestriction sum vanishes.

    At degree-1 places and infinity the entry is multiplied by the
    obstruction class itself.  At a degree-2 place an element of the
    right norm class is searched among small ``A + B*beta``; not every
    class is a norm from a quadratic extension, so this can honestly
    fail (:class:`FaddeevRepairError`)."""
    obstruction = faddeev_obstruction(spec)
    if obstruction.is_trivial():
        return spec.copy()
    if place not in spec.entries:
        raise KeyError(f"no entry at {place}")
    out = spec.copy()
    value = out.entries[place]
    if place.degree == 1 or place.is_infinite:
        out.entries[place] = spec.base.coerce(value) * obstruction.value
        return out
    rf = place.residue_field()
    u = place.poly.coeff(1)
    v = place.poly.coeff(0)
    target = obstruction.value
    for size in range(1, search_bound + 1):
        for a_part in range(-size, size + 1):
            for b_part in range(-size, size + 1):
                if abs(a_part) != size and abs(b_part) != size:
                    continue
                if a_part == 0 and b_part == 0:
                    continue
                norm = (
                    Fraction(a_part) ** 2
                    - Fraction(a_part) * Fraction(b_part) * u
                    + Fraction(b_part) ** 2 * v
                )
                if spec.base.is_zero(spec.base.coerce(norm)):
                    continue
                ratio = spec.base.coerce(norm) * target
                if SquareClass(spec.base, ratio).is_trivial():
                    elem = rf.tower.rational(Fraction(a_part)) + rf.beta * Fraction(b_part)
                    out.entries[place] = value * elem
                    return out
    raise FaddeevRepairError(
        f"no element of norm class {obstruction} of size <= {search_bound} "
        f"at {place}; the class may simply not be a norm there"
    )
