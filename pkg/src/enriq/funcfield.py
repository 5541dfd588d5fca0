"""Rational function fields in one variable over exchangeable base fields.

The residue calculus needs k(t) for three different k: the rationals, a
quadratic tower, and -- for the two-variable symbols on the ruled surface
-- another rational function field.  Everything here is generic over a
small ``CoefficientField`` adapter so the same polynomial code serves all
three.  Places of the projective line are monic irreducible polynomials
plus a distinguished infinite place; residue fields are realised exactly:
degree-1 places evaluate into the base field, degree-2 places over the
rationals or over a tower build the corresponding quadratic extension
through the tower engine.  Higher-degree residue fields are out of scope
and raise.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

import sympy

from . import arith
from .towers import Tower, TowerElem, parse_element

__all__ = [
    "CoefficientField",
    "QQ",
    "RationalField",
    "TowerCoefficients",
    "RationalFunctions",
    "Poly",
    "RatFunc",
    "Place",
    "ResidueField",
    "valuation",
    "reduce_unit",
    "support_places",
    "factor_poly",
    "square_free_decomposition",
    "poly_square_free",
    "rational_square_free",
    "ratfunc_square_free",
    "ratfunc_is_square",
    "is_square_element",
    "parse_ratfunc",
]


# --------------------------------------------------------------------------
# coefficient field adapters
# --------------------------------------------------------------------------

class CoefficientField:
    """What Poly/RatFunc need to know about their coefficients."""

    name = "?"
    #: variable name used when printing polynomials over this field
    poly_var = "t"

    def coerce(self, x):
        raise NotImplementedError

    def zero(self):
        return self.coerce(0)

    def one(self):
        return self.coerce(1)

    def is_zero(self, c) -> bool:
        raise NotImplementedError

    def invert(self, c):
        raise NotImplementedError

    def is_square(self, c):
        """True/False, or raise if undecidable."""
        raise NotImplementedError

    def __repr__(self):
        return f"<{self.name}>"


class RationalField(CoefficientField):
    name = "Q"

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into Q")

    def is_zero(self, c) -> bool:
        return c == 0

    def invert(self, c):
        return 1 / self.coerce(c)

    def is_square(self, c) -> bool:
        return arith.rational_is_square(c)


#: The rationals, shared by everyone.
QQ = RationalField()


class TowerCoefficients(CoefficientField):
    """Coefficients in an iterated quadratic extension."""

    def __init__(self, tower: Tower):
        self.tower = tower
        self.name = f"tower:{tower.label}"

    def coerce(self, x):
        if isinstance(x, TowerElem):
            if x.tower is self.tower:
                return x
            return self.tower.lift(x)
        if isinstance(x, (int, Fraction)):
            return self.tower.rational(x)
        raise TypeError(f"cannot coerce {x!r} into {self.name}")

    def is_zero(self, c) -> bool:
        return self.coerce(c).is_zero()

    def invert(self, c):
        return self.coerce(c).inv()

    def is_square(self, c) -> bool:
        verdict = self.tower.is_square(self.coerce(c))
        if verdict.verdict is None:
            raise ArithmeticError(
                f"square test inconclusive in {self.name}: {c}"
            )
        return verdict.verdict


class RationalFunctions(CoefficientField):
    """Coefficient field k(var): elements are RatFunc over ``base``.

    Polynomials over this adapter live one variable up (printed as
    ``poly_var``); this is how two-variable symbols are represented.
    """

    poly_var = "x"

    def __init__(self, var: str, base: CoefficientField):
        self.var = var
        self.base = base
        self.name = f"{base.name}({var})"

    def coerce(self, x):
        if isinstance(x, RatFunc):
            if x.field is self.base:
                return x
            raise TypeError(f"rational function over {x.field!r}, not {self.base!r}")
        if isinstance(x, Poly) and x.field is self.base:
            return RatFunc.from_poly(x)
        return RatFunc.constant(self.base, x)

    def is_zero(self, c) -> bool:
        return self.coerce(c).is_zero()

    def invert(self, c):
        return self.coerce(c).inv()

    def is_square(self, c) -> bool:
        return ratfunc_is_square(self.coerce(c))

    def variable(self) -> "RatFunc":
        """The inner variable (an element of this coefficient field)."""
        return RatFunc.variable(self.base)


# --------------------------------------------------------------------------
# polynomials
# --------------------------------------------------------------------------

class Poly:
    """Dense univariate polynomial; ``coeffs[i]`` multiplies the i-th power."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: CoefficientField, coeffs: Sequence, *, inner: bool = False):
        if not inner:
            coeffs = [field.coerce(c) for c in coeffs]
        while coeffs and field.is_zero(coeffs[-1]):
            coeffs = coeffs[:-1]
        self.field = field
        self.coeffs = list(coeffs)

    # -- constructors ---------------------------------------------------

    @classmethod
    def constant(cls, field: CoefficientField, c, *, inner: bool = False) -> "Poly":
        return cls(field, [c], inner=inner)

    @classmethod
    def variable(cls, field: CoefficientField) -> "Poly":
        return cls(field, [0, 1])

    # -- structure ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self):
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i: int):
        return self.coeffs[i] if i < len(self.coeffs) else self.field.zero()

    def is_one(self) -> bool:
        return self.degree == 0 and self.field.is_zero(self.coeffs[0] - self.field.one())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly) or other.field is not self.field:
            return NotImplemented
        if len(self.coeffs) != len(other.coeffs):
            return False
        return all(
            self.field.is_zero(a - b) for a, b in zip(self.coeffs, other.coeffs)
        )

    def __hash__(self):
        return hash((id(self.field), tuple(self.coeffs)))

    # -- ring operations ------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(self.field, out, inner=True)

    def __neg__(self) -> "Poly":
        return Poly(self.field, [-c for c in self.coeffs], inner=True)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero() or other.is_zero():
            return Poly(self.field, [], inner=True)
        out = [self.field.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if self.field.is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(self.field, out, inner=True)

    def scale(self, c) -> "Poly":
        c = self.field.coerce(c)
        return Poly(self.field, [a * c for a in self.coeffs], inner=True)

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative polynomial power")
        out = Poly.constant(self.field, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        field = self.field
        inv_lead = field.invert(other.leading)
        rem = list(self.coeffs)
        deg_o = other.degree
        if self.degree < deg_o:
            return Poly(field, [], inner=True), self
        quot = [field.zero()] * (self.degree - deg_o + 1)
        for i in range(self.degree - deg_o, -1, -1):
            c = rem[i + deg_o] * inv_lead
            quot[i] = c
            if not field.is_zero(c):
                for j, b in enumerate(other.coeffs):
                    rem[i + j] = rem[i + j] - c * b
        return Poly(field, quot, inner=True), Poly(field, rem, inner=True)

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def __floordiv__(self, other: "Poly") -> "Poly":
        quot, rem = self.divmod(other)
        if not rem.is_zero():
            raise ValueError("polynomial division is not exact")
        return quot

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(self.field.invert(self.leading))

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def derivative(self) -> "Poly":
        out = [c * i for i, c in enumerate(self.coeffs)][1:]
        return Poly(self.field, out, inner=True)

    def evaluate(self, value):
        """Horner evaluation; ``value`` may live in an extension field."""
        if self.is_zero():
            return value * 0
        acc = value * 0 + self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * value + c
        return acc

    def map_coeffs(self, fn, field: CoefficientField) -> "Poly":
        return Poly(field, [fn(c) for c in self.coeffs])

    def __str__(self):
        if self.is_zero():
            return "0"
        var = self.field.poly_var
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeff(i)
            if self.field.is_zero(c):
                continue
            cs = f"{c}"
            if i == 0:
                parts.append(cs)
                continue
            mono = var if i == 1 else f"{var}^{i}"
            if cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append(f"-{mono}")
            else:
                if any(op in cs[1:] for op in ("+", "-", " ")) and not cs.startswith("("):
                    cs = f"({cs})"
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Poly({self})"


def square_free_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's decomposition: monic pairwise-coprime A_i with p ~ prod A_i^i."""
    if p.is_zero():
        raise ValueError("zero polynomial has no square-free decomposition")
    f = p.monic()
    if f.degree == 0:
        return []
    g = f.gcd(f.derivative())
    if g.degree == 0:
        return [(f, 1)]
    b = f // g
    c = f.derivative() // g
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree > 0:
        a = b.gcd(d)
        if a.degree > 0:
            out.append((a.monic(), i))
        b = b // a
        c = d // a
        d = c - b.derivative()
        i += 1
    return out


def poly_square_free(p: Poly) -> Poly:
    """The monic representative of p's square class: odd-multiplicity part."""
    out = Poly.constant(p.field, 1)
    for factor, mult in square_free_decomposition(p):
        if mult % 2:
            out = out * factor
    return out


# --------------------------------------------------------------------------
# rational functions
# --------------------------------------------------------------------------

class RatFunc:
    """Quotient of two polynomials, reduced, with monic denominator."""

    __slots__ = ("field", "num", "den")

    def __init__(self, num: Poly, den: Poly):
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        g = num.gcd(den)
        if not g.is_zero() and g.degree > 0:
            num, den = num // g, den // g
        lead_inv = den.field.invert(den.leading)
        self.field = num.field
        self.num = num.scale(lead_inv)
        self.den = den.scale(lead_inv)

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_poly(cls, p: Poly) -> "RatFunc":
        return cls(p, Poly.constant(p.field, 1))

    @classmethod
    def constant(cls, field: CoefficientField, c) -> "RatFunc":
        return cls(Poly.constant(field, c), Poly.constant(field, 1))

    @classmethod
    def variable(cls, field: CoefficientField) -> "RatFunc":
        return cls.from_poly(Poly.variable(field))

    # -- structure ------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        if self.num.is_zero():
            return self.field.zero()
        return self.num.coeffs[0]

    def __eq__(self, other) -> bool:
        pair = self._level_pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return (a.num * b.den - b.num * a.den).is_zero()

    def __hash__(self):
        return hash((hash(self.num), hash(self.den)))

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.field is self.field:
                return other
            if isinstance(self.field, RationalFunctions) and other.field is self.field.base:
                return RatFunc.constant(self.field, other)  # constant coefficient
            return NotImplemented
        if isinstance(other, Poly):
            return RatFunc.from_poly(other)
        try:
            return RatFunc.constant(self.field, other)
        except TypeError:
            return NotImplemented

    def _level_pair(self, other):
        """Bring both operands to a common level, lifting constants up."""
        b = self._coerce(other)
        if b is not NotImplemented:
            return self, b
        if isinstance(other, RatFunc):
            a = other._coerce(self)
            if a is not NotImplemented:
                return a, other
        return None

    # -- field operations -----------------------------------------------

    def __add__(self, other):
        pair = self._level_pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return RatFunc(a.num * b.den + b.num * a.den, a.den * b.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        pair = self._level_pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a + (-b)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        pair = self._level_pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return RatFunc(a.num * b.num, a.den * b.den)

    __rmul__ = __mul__

    def inv(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverting the zero function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        pair = self._level_pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a * b.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return self.inv() ** (-n)
        return RatFunc(self.num ** n, self.den ** n)

    def evaluate(self, value):
        den = self.den.evaluate(value)
        return self.num.evaluate(value) * _generic_invert(den)

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RatFunc({self})"


def _generic_invert(x):
    if isinstance(x, Fraction):
        return 1 / x
    if isinstance(x, TowerElem):
        return x.inv()
    if isinstance(x, RatFunc):
        return x.inv()
    raise TypeError(f"cannot invert {x!r}")


def _generic_is_zero(x) -> bool:
    if isinstance(x, Fraction):
        return x == 0
    if isinstance(x, (TowerElem, RatFunc)):
        return x.is_zero()
    raise TypeError(f"no zero test for {x!r}")


# --------------------------------------------------------------------------
# places of the projective line
# --------------------------------------------------------------------------

class Place:
    """A closed point of P^1 over the base: monic irreducible, or infinity.

    Irreducibility is verified exactly through degree 2 (and for linear
    factors in degree 3); square-freeness is always enforced.  The desk
    computations never go beyond quadratic places.
    """

    __slots__ = ("poly", "field")

    def __init__(self, poly: Optional[Poly], field: CoefficientField):
        self.poly = poly
        self.field = field
        if poly is not None:
            self._validate(poly)

    @classmethod
    def infinite(cls, field: CoefficientField) -> "Place":
        return cls(None, field)

    @classmethod
    def finite(cls, poly: Poly) -> "Place":
        return cls(poly, poly.field)

    @staticmethod
    def _validate(poly: Poly) -> None:
        if poly.degree < 1:
            raise ValueError("a finite place needs a non-constant polynomial")
        field = poly.field
        if not field.is_zero(poly.leading - field.one()):
            raise ValueError("finite places must be monic")
        if poly.degree == 1:
            return
        if poly.gcd(poly.derivative()).degree > 0:
            raise ValueError(f"{poly} is not square-free")
        if poly.degree == 2:
            # t^2 + u t + v is reducible iff u^2 - 4v is a square
            u, v = poly.coeff(1), poly.coeff(0)
            disc = u * u - v * 4
            if field.is_square(disc):
                raise ValueError(f"{poly} splits over the base field")
            return
        if poly.degree == 3 and isinstance(field, RationalField):
            for root, _ in _rational_roots(poly):
                raise ValueError(f"{poly} has the rational root {root}")
            return
        raise ValueError(
            f"cannot certify irreducibility in degree {poly.degree}"
        )

    @property
    def is_infinite(self) -> bool:
        return self.poly is None

    @property
    def degree(self) -> int:
        return 1 if self.poly is None else self.poly.degree

    def __eq__(self, other) -> bool:
        if not isinstance(other, Place):
            return NotImplemented
        if self.field is not other.field:
            return False
        if self.is_infinite or other.is_infinite:
            return self.is_infinite and other.is_infinite
        return self.poly == other.poly

    def __hash__(self):
        return hash((id(self.field), None if self.poly is None else hash(self.poly)))

    def __str__(self):
        return "infinity" if self.is_infinite else str(self.poly)

    def __repr__(self):
        return f"Place({self})"

    def residue_field(self) -> "ResidueField":
        # cached so that repeated lookups share one residue tower instance
        cached = _RESIDUE_CACHE.get(self)
        if cached is None:
            cached = ResidueField.of(self)
            _RESIDUE_CACHE[self] = cached
        return cached


_RESIDUE_CACHE: dict = {}


def valuation(f: Union[RatFunc, Poly], place: Place) -> int:
    """Order of vanishing of ``f`` at the place; poles are negative."""
    if isinstance(f, Poly):
        f = RatFunc.from_poly(f)
    if f.is_zero():
        raise ZeroDivisionError("the zero function has no valuation")
    if place.is_infinite:
        return f.den.degree - f.num.degree
    return _poly_order(f.num, place.poly) - _poly_order(f.den, place.poly)


def _poly_order(p: Poly, q: Poly) -> int:
    if p.is_zero():
        raise ZeroDivisionError("zero polynomial")
    order = 0
    quot, rem = p.divmod(q)
    while rem.is_zero():
        order += 1
        p = quot
        quot, rem = p.divmod(q)
    return order


# --------------------------------------------------------------------------
# residue fields and reduction
# --------------------------------------------------------------------------

class ResidueField:
    """The residue field at a place, with an exact reduction map.

    ``kind`` is one of ``"base"`` (degree-1 or infinite places: reduction
    lands in the base coefficient field) and ``"quadratic"`` (degree-2
    places over Q or over a tower: reduction lands in a tower extension
    holding a root ``beta`` of the place polynomial).
    """

    def __init__(self, place: Place, kind: str, *, tower=None, beta=None, root=None):
        self.place = place
        self.kind = kind
        self.tower = tower
        self.beta = beta
        self.root = root

    @classmethod
    def of(cls, place: Place) -> "ResidueField":
        field = place.field
        if place.is_infinite:
            return cls(place, "base")
        if place.degree == 1:
            root = -place.poly.coeff(0)
            return cls(place, "base", root=root)
        if place.degree == 2:
            u, v = place.poly.coeff(1), place.poly.coeff(0)
            disc = u * u - v * 4
            if isinstance(field, RationalField):
                tower = Tower(f"Q[T]/({place.poly})")
                sqrt_disc = tower.add_step("sqrt_disc", disc, on_degenerate="error")
                beta = (sqrt_disc - tower.rational(u)) * Fraction(1, 2)
            elif isinstance(field, TowerCoefficients):
                tower = field.tower.extend(
                    "res_sqrt_disc", disc, label=f"{field.tower.label}[T]/({place.poly})"
                )
                beta = (tower.gen("res_sqrt_disc") - tower.lift(u)) * Fraction(1, 2)
            else:
                raise NotImplementedError(
                    "quadratic residue fields are only realised over Q or a tower"
                )
            return cls(place, "quadratic", tower=tower, beta=beta)
        raise NotImplementedError(
            f"residue fields of degree {place.degree} are out of scope"
        )

    # -- the reduction map ----------------------------------------------

    def reduce(self, f: RatFunc):
        """Image of a unit ``f`` in the residue field."""
        place = self.place
        if valuation(f, place) != 0:
            raise ValueError(f"{f} is not a unit at {place}")
        if place.is_infinite:
            return f.num.leading * _generic_invert(f.den.leading)
        if self.kind == "base":
            return f.evaluate(self.root)
        num = self._eval_at_beta(f.num)
        return num * _generic_invert(self._eval_at_beta(f.den))

    def _eval_at_beta(self, p: Poly):
        acc = self.tower.zero()
        for c in reversed(p.coeffs):
            acc = acc * self.beta + self._lift_scalar(c)
        return acc

    def _lift_scalar(self, c):
        if isinstance(c, Fraction):
            return self.tower.rational(c)
        return self.tower.lift(c)

    def norm_to_base(self, element):
        """Norm down to the base field of the place."""
        if self.kind == "base":
            return element
        # conjugate beta -> -u - beta; elements are a + b*beta expressions
        # but may be arbitrary tower elements: use the step involution.
        conj = self._conjugate(element)
        product = element * conj
        return self._descend(product)

    def _conjugate(self, element):
        # the residue tower's top step is the adjoined sqrt(disc); conjugation
        # negates it and fixes everything below.
        top = len(self.tower.steps) - 1
        coeffs = {}
        for mono, coeff in element.coeffs.items():
            coeffs[mono] = -coeff if top in mono else coeff
        return TowerElem(self.tower, coeffs)

    def _descend(self, element):
        top = len(self.tower.steps) - 1
        for mono in element.coeffs:
            if top in mono:
                raise ArithmeticError("norm did not land in the base field")
        if isinstance(self.place.field, RationalField):
            if not element.is_rational():
                raise ArithmeticError("norm over Q is not rational")
            return element.as_rational()
        base_tower = self.place.field.tower
        return TowerElem(base_tower, element.coeffs)

    def is_square(self, element) -> bool:
        if self.kind == "base":
            field = self.place.field
            if isinstance(field, RationalFunctions):
                return ratfunc_is_square(field.coerce(element))
            return field.is_square(element)
        verdict = self.tower.is_square(element)
        if verdict.verdict is None:
            raise ArithmeticError(
                f"square test inconclusive in residue field at {self.place}"
            )
        return verdict.verdict


def reduce_unit(f: RatFunc, place: Place):
    return place.residue_field().reduce(f)


# --------------------------------------------------------------------------
# support and factorization
# --------------------------------------------------------------------------

def _rational_roots(p: Poly) -> list[tuple[Fraction, int]]:
    """Rational roots with multiplicities (rational coefficients only)."""
    sym_t = sympy.Symbol("T")
    expr = sum(
        sympy.Rational(c.numerator, c.denominator) * sym_t ** i
        for i, c in enumerate(p.coeffs)
    )
    roots = []
    for root, mult in sympy.roots(sympy.Poly(expr, sym_t), filter="Q").items():
        frac = Fraction(int(root.p), int(root.q))
        roots.append((frac, int(mult)))
    return roots


def _factor_rational_poly(p: Poly) -> list[tuple[Poly, int]]:
    """Monic irreducible factors with multiplicities, over Q via sympy."""
    sym_t = sympy.Symbol("T")
    expr = sum(
        sympy.Rational(c.numerator, c.denominator) * sym_t ** i
        for i, c in enumerate(p.coeffs)
    )
    _, factors = sympy.Poly(expr, sym_t).factor_list()
    out = []
    for fac, mult in factors:
        fac = fac.monic()
        coeffs = [
            Fraction(int(c.p), int(c.q))
            for c in reversed(fac.all_coeffs())
        ]
        out.append((Poly(QQ, coeffs), int(mult)))
    return out


def _factor_tower_poly(p: Poly) -> list[tuple[Poly, int]]:
    """Factor over a tower: peel linear factors found among rational roots
    of the norm-free path is out of scope; we only split off the linear
    factors visible from degree-1 and keep a degree-<=2 remainder."""
    field = p.field
    work = p.monic()
    out: dict = {}
    # repeatedly remove roots that are rational multiples of known elements
    # is undecidable in general; only degrees <= 2 are supported directly.
    if work.degree <= 2:
        if work.degree == 2:
            u, v = work.coeff(1), work.coeff(0)
            disc = u * u - v * 4
            if field.is_square(disc):
                raise NotImplementedError(
                    "splitting a reducible quadratic over a tower is not supported"
                )
        out[work] = out.get(work, 0) + 1
        return list(out.items())
    raise NotImplementedError(
        f"factorization over {field.name} beyond degree 2 is out of scope"
    )


def factor_poly(p: Poly) -> list[tuple[Poly, int]]:
    if p.is_zero():
        raise ZeroDivisionError("cannot factor the zero polynomial")
    if p.degree == 0:
        return []
    if isinstance(p.field, RationalField):
        return _factor_rational_poly(p)
    return _factor_tower_poly(p)


def support_places(f: RatFunc, *, include_infinity: bool = True) -> dict[Place, int]:
    """All places where ``f`` has a zero or pole, with multiplicities."""
    if f.is_zero():
        raise ZeroDivisionError("the zero function has no divisor")
    out: dict[Place, int] = {}
    for poly, mult in factor_poly(f.num):
        out[Place.finite(poly)] = out.get(Place.finite(poly), 0) + mult
    for poly, mult in factor_poly(f.den):
        place = Place.finite(poly)
        out[place] = out.get(place, 0) - mult
    out = {place: m for place, m in out.items() if m}
    if include_infinity:
        v_inf = f.den.degree - f.num.degree
        if v_inf:
            out[Place.infinite(f.field)] = v_inf
    return out


# --------------------------------------------------------------------------
# square classes of field elements
# --------------------------------------------------------------------------

def rational_square_free(x: Union[int, Fraction]) -> Fraction:
    """The canonical square-free representative of x modulo squares."""
    x = Fraction(x)
    if x == 0:
        raise ZeroDivisionError("0 has no square class")
    n = x.numerator * x.denominator
    sign = -1 if n < 0 else 1
    fact = arith.factorize(abs(n))
    if not fact.complete:
        raise ArithmeticError(f"cannot certify the square-free part of {x}")
    out = sign
    for prime, exp in fact.factors.items():
        if exp % 2:
            out *= prime
    return Fraction(out)


def ratfunc_square_free(f: RatFunc) -> tuple[Poly, object]:
    """Split a nonzero f into (monic square-free polynomial part, constant)
    modulo squares of the function field."""
    if f.is_zero():
        raise ZeroDivisionError("0 has no square class")
    combined = f.num * f.den  # same class as f modulo squares
    # combined = lead * prod q_i^{e_i}; dividing by lead * (odd part) leaves
    # every exponent even, i.e. a perfect square of a monic polynomial.
    return poly_square_free(combined), combined.leading


def ratfunc_is_square(f: RatFunc) -> bool:
    if f.is_zero():
        raise ZeroDivisionError("0 is not classified")
    sf, const = ratfunc_square_free(f)
    if sf.degree > 0:
        return False
    return _base_is_square(f.field, const)


def _base_is_square(field: CoefficientField, c) -> bool:
    if isinstance(field, RationalFunctions):
        return ratfunc_is_square(field.coerce(c))
    return field.is_square(c)


def is_square_element(field: CoefficientField, value) -> bool:
    """Square test dispatching on the field adapter."""
    if isinstance(field, RationalFunctions):
        return ratfunc_is_square(field.coerce(value))
    return field.is_square(field.coerce(value))


# --------------------------------------------------------------------------
# parsing
# --------------------------------------------------------------------------

def parse_ratfunc(
    text: str,
    var: str,
    field: CoefficientField,
    env: Optional[dict] = None,
) -> RatFunc:
    """Parse an arithmetic expression into a rational function in ``var``."""
    env = env or {}

    def lookup(name: str) -> RatFunc:
        if name == var:
            return RatFunc.variable(field)
        if name in env:
            value = env[name]
            return value if isinstance(value, RatFunc) else RatFunc.constant(field, value)
        raise ValueError(f"unknown name {name!r} in rational function")

    return parse_element(text, lookup, lambda x: RatFunc.constant(field, x))
