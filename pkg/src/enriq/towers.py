"""Iterated quadratic extension towers over Q with exact arithmetic.

A tower is an ordered list of steps; step ``i`` adjoins a square root of a
``radicand`` that must be an element of the tower built from steps
``0..i-1`` (a rational number in the simplest case).  Elements are finite
Q-linear combinations of square-free monomials in the adjoined roots,
stored as ``{frozenset_of_step_indices: Fraction}``.

The interesting operations are ``is_square`` (a certified descent through
the levels, with an honest Unknown verdict past a recursion budget),
inversion by conjugate norms, and validated automorphisms given by images
of the roots.
"""

from __future__ import annotations

import ast
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional, Union

from .arith import Rational, rational_is_square, rational_sqrt

Scalar = Union[int, Fraction]

#: Default budget for nested norm-equation recursions inside is_square.
DEFAULT_SQUARE_DEPTH = 8


class DegenerateStepError(ArithmeticError):
    """Raised when arithmetic runs into a radicand that is itself a square."""


@dataclass(frozen=True)
class SquareVerdict:
    """Outcome of a square test: True / False are certified, None = unknown."""

    verdict: Optional[bool]
    witness: Optional["TowerElem"] = None

    def __bool__(self) -> bool:  # pragma: no cover - guard against misuse
        raise TypeError("SquareVerdict is tri-valued; inspect .verdict")


class TowerStep:
    def __init__(self, name: str, radicand: "TowerElem"):
        self.name = name
        self.radicand = radicand

    def __repr__(self) -> str:
        return f"TowerStep({self.name!r}, sqrt of {self.radicand})"


class Tower:
    """A tower of successive quadratic extensions of Q."""

    def __init__(self, label: str = ""):
        self.label = label
        self.steps: list[TowerStep] = []
        #: name -> element; contains every root, plus derived named elements
        #: and witnesses of eliminated (degenerate) steps.
        self.named: dict[str, TowerElem] = {}
        #: names of steps that were requested but eliminated as degenerate,
        #: mapped to the witness square root of their radicand.
        self.degenerate: dict[str, TowerElem] = {}
        #: names of steps whose independence check came back Unknown.
        self.unverified: list[str] = []
        self._inv_radicand: dict[int, TowerElem] = {}
        self._mono_cache: dict[frozenset, "TowerElem"] = {}
        self._sq_cache: dict = {}
        self._lift_ok: set[int] = set()

    # -- construction -------------------------------------------------

    def zero(self) -> "TowerElem":
        return TowerElem(self, {})

    def one(self) -> "TowerElem":
        return self.rational(1)

    def rational(self, x: Scalar) -> "TowerElem":
        x = Fraction(x)
        return TowerElem(self, {frozenset(): x} if x else {})

    def gen(self, name: str) -> "TowerElem":
        if name not in self.named:
            raise KeyError(f"tower {self.label!r} has no generator {name!r}")
        return self.named[name]

    def root(self, index: int) -> "TowerElem":
        return TowerElem(self, {frozenset([index]): Fraction(1)})

    def define(self, name: str, value: "TowerElem") -> "TowerElem":
        """Attach a derived named element (e.g. a quotient of roots)."""
        if name in self.named:
            raise ValueError(f"name {name!r} already defined")
        self.named[name] = value
        return value

    def add_step(
        self,
        name: str,
        radicand: Union["TowerElem", Scalar],
        *,
        depth: int = DEFAULT_SQUARE_DEPTH,
        on_degenerate: str = "eliminate",
    ) -> "TowerElem":
        """Adjoin sqrt(radicand); returns the named element for ``name``.

        The radicand is square-tested against the tower built so far.  A
        radicand that is already a square makes the step *degenerate*: with
        ``on_degenerate='eliminate'`` the step is skipped and ``name`` is
        bound to the witness root instead (recorded in ``self.degenerate``);
        with ``'error'`` a DegenerateStepError is raised.  An Unknown square
        verdict keeps the step but records it in ``self.unverified``.
        """
        if not isinstance(radicand, TowerElem):
            radicand = self.rational(radicand)
        if radicand.tower is not self:
            raise ValueError("radicand belongs to a different tower")
        if radicand.is_zero():
            raise ValueError(f"step {name!r} has zero radicand")
        sq = self.is_square(radicand, depth=depth)
        if sq.verdict is True:
            if on_degenerate == "error":
                raise DegenerateStepError(
                    f"step {name!r}: radicand {radicand} is already a square"
                )
            self.degenerate[name] = sq.witness
            self.named[name] = sq.witness
            return sq.witness
        if sq.verdict is None:
            self.unverified.append(name)
        idx = len(self.steps)
        self.steps.append(TowerStep(name, radicand))
        elem = self.root(idx)
        self.named[name] = elem
        self._sq_cache.clear()
        return elem

    # -- arithmetic helpers (monomial products, inversion) -------------

    def _radicand_inverse(self, idx: int) -> "TowerElem":
        if idx not in self._inv_radicand:
            self._inv_radicand[idx] = self.steps[idx].radicand.inv()
        return self._inv_radicand[idx]

    def _mono_product(self, common: frozenset) -> "TowerElem":
        """Product of radicands over a set of step indices (cached)."""
        hit = self._mono_cache.get(common)
        if hit is None:
            hit = self.one()
            for i in sorted(common):
                hit = hit * self.steps[i].radicand
            self._mono_cache[common] = hit
        return hit

    # -- the square-test descent ---------------------------------------

    def is_square(self, z: "TowerElem", depth: int = DEFAULT_SQUARE_DEPTH) -> SquareVerdict:
        """Square test in the full tower; see _is_square_at for the descent.

        The ``depth`` budget bounds how many nested norm-equation recursions
        (the expensive mixed-term case) are attempted before giving up with
        an Unknown verdict.  Levels where the element has no mixed term are
        free and do not consume budget.
        """
        out = self._is_square_at(z, len(self.steps) - 1, depth)
        if out.verdict is True:
            assert out.witness * out.witness == z, "internal witness check failed"
        return out

    def _is_square_at(self, z: "TowerElem", lvl: int, depth: int) -> SquareVerdict:
        """Is z a square in the subfield generated by steps 0..lvl?

        Descends level by level: writing z = A + r*B at the top level with
        r = sqrt(d), either B = 0 (then z is a square iff A or A/d is a
        square one level down -- the root may still involve r) or B != 0
        (then norm considerations force (A^2 - d B^2) to be a square below,
        and the candidate root is reconstructed and verified exactly).
        """
        if z.is_zero():
            return SquareVerdict(True, self.zero())
        if lvl < 0:
            x = z.as_rational()
            if rational_is_square(x):
                return SquareVerdict(True, self.rational(rational_sqrt(x)))
            return SquareVerdict(False)
        key = (frozenset(z.coeffs.items()), lvl, depth)
        hit = self._sq_cache.get(key)
        if hit is not None:
            return hit
        out = self._descend_square(z, lvl, depth)
        self._sq_cache[key] = out
        return out

    def _descend_square(self, z: "TowerElem", lvl: int, depth: int) -> SquareVerdict:
        a, b = z.split(lvl)
        d = self.steps[lvl].radicand
        root = self.root(lvl)
        if b.is_zero():
            # z = x^2 with either x below this level or x = root * (something below)
            first = self._is_square_at(a, lvl - 1, depth)
            if first.verdict is True:
                return first
            second = self._is_square_at(
                a * self._radicand_inverse(lvl), lvl - 1, depth
            )
            if second.verdict is True:
                return SquareVerdict(True, root * second.witness)
            if first.verdict is None or second.verdict is None:
                return SquareVerdict(None)
            return SquareVerdict(False)
        # mixed case: z = (p + root*q)^2 forces (p^2 - d q^2)^2 = a^2 - d b^2
        if depth <= 0:
            return SquareVerdict(None)
        norm = a * a - d * b * b
        nsq = self._is_square_at(norm, lvl - 1, depth - 1)
        if nsq.verdict is False:
            return SquareVerdict(False)
        if nsq.verdict is None:
            return SquareVerdict(None)
        m = nsq.witness
        half = self.rational(Fraction(1, 2))
        unknown = False
        for sgn in (1, -1):
            cand = (a + m * self.rational(sgn)) * half  # candidate p^2
            psq = self._is_square_at(cand, lvl - 1, depth - 1)
            if psq.verdict is None:
                unknown = True
                continue
            if psq.verdict is False or psq.witness.is_zero():
                continue
            p = psq.witness
            q = b * (p + p).inv()
            x = p + root * q
            if x * x == z:
                return SquareVerdict(True, x)
        return SquareVerdict(None) if unknown else SquareVerdict(False)

    # -- serialization -------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "format": "quad-tower/1",
            "label": self.label,
            "steps": [
                {"name": s.name, "radicand": s.radicand.to_dict()} for s in self.steps
            ],
            "degenerate": {k: v.to_dict() for k, v in self.degenerate.items()},
            "derived": {
                k: v.to_dict()
                for k, v in self.named.items()
                if k not in self.degenerate
                and not any(s.name == k for s in self.steps)
            },
            "unverified": list(self.unverified),
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "Tower":
        if data.get("format") != "quad-tower/1":
            raise ValueError(f"unsupported tower format {data.get('format')!r}")
        tw = cls(data.get("label", ""))
        for step in data["steps"]:
            rad = TowerElem.from_dict(tw, step["radicand"])
            idx = len(tw.steps)
            tw.steps.append(TowerStep(step["name"], rad))
            tw.named[step["name"]] = tw.root(idx)
        for name, v in data.get("degenerate", {}).items():
            tw.degenerate[name] = TowerElem.from_dict(tw, v)
            tw.named[name] = tw.degenerate[name]
        for name, v in data.get("derived", {}).items():
            tw.named[name] = TowerElem.from_dict(tw, v)
        tw.unverified = list(data.get("unverified", []))
        return tw

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, **kw)

    @classmethod
    def from_json(cls, text: str) -> "Tower":
        return cls.from_dict(json.loads(text))

    def step_names(self) -> list[str]:
        return [s.name for s in self.steps]

    def degree(self) -> int:
        return 2 ** len(self.steps)

    # -- extension ------------------------------------------------------

    def extend(
        self,
        name: str,
        radicand: Union["TowerElem", Scalar],
        *,
        depth: int = DEFAULT_SQUARE_DEPTH,
        label: Optional[str] = None,
    ) -> "Tower":
        """Return a new tower: this one's steps plus sqrt(radicand) on top.

        ``self`` is left untouched; its elements transplant into the result
        via :meth:`lift`.  A radicand that is already a square raises
        DegenerateStepError (callers are expected to have established
        non-squareness, e.g. via an irreducibility check).
        """
        new = Tower(label if label is not None else f"{self.label}+{name}")
        for step in self.steps:
            idx = len(new.steps)
            new.steps.append(
                TowerStep(step.name, TowerElem(new, step.radicand.coeffs))
            )
            new.named[step.name] = new.root(idx)
        for key, val in self.named.items():
            if key not in new.named:
                new.named[key] = TowerElem(new, val.coeffs)
        new.degenerate = {
            k: TowerElem(new, v.coeffs) for k, v in self.degenerate.items()
        }
        new.unverified = list(self.unverified)
        if isinstance(radicand, TowerElem):
            if radicand.tower is not self:
                raise ValueError("radicand belongs to a different tower")
            radicand = TowerElem(new, radicand.coeffs)
        new.add_step(name, radicand, depth=depth, on_degenerate="error")
        new._lift_ok.add(id(self))
        return new

    def lift(self, elem: "TowerElem") -> "TowerElem":
        """Transplant an element of a prefix tower into this tower."""
        src = elem.tower
        if src is self:
            return elem
        if id(src) not in self._lift_ok:
            if len(src.steps) > len(self.steps):
                raise ValueError("element's tower is not a prefix of this one")
            for mine, theirs in zip(self.steps, src.steps):
                if (
                    mine.name != theirs.name
                    or mine.radicand.coeffs != theirs.radicand.coeffs
                ):
                    raise ValueError(
                        "element's tower is not a prefix of this one"
                    )
            self._lift_ok.add(id(src))
        return TowerElem(self, elem.coeffs)

    def __repr__(self) -> str:
        return f"Tower({self.label!r}, steps={self.step_names()})"


class TowerElem:
    """An element of a Tower; immutable in practice."""

    __slots__ = ("tower", "coeffs")

    def __init__(self, tower: Tower, coeffs: Mapping[frozenset, Fraction]):
        self.tower = tower
        self.coeffs = {k: v for k, v in coeffs.items() if v != 0}

    # -- basics --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_rational(self) -> bool:
        return all(not k for k in self.coeffs)

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self.coeffs.get(frozenset(), Fraction(0))

    def top_index(self) -> int:
        """Largest step index appearing in any monomial; -1 for rationals."""
        top = -1
        for mono in self.coeffs:
            if mono:
                top = max(top, max(mono))
        return top

    def split(self, idx: int) -> tuple["TowerElem", "TowerElem"]:
        """Write self = A + root_idx * B; returns (A, B)."""
        a, b = {}, {}
        for mono, c in self.coeffs.items():
            if idx in mono:
                b[mono - {idx}] = c
            else:
                a[mono] = c
        return TowerElem(self.tower, a), TowerElem(self.tower, b)

    # -- ring operations ----------------------------------------------

    def _coerce(self, other) -> "TowerElem":
        if isinstance(other, TowerElem):
            if other.tower is not self.tower:
                raise ValueError("elements of different towers")
            return other
        return self.tower.rational(other)

    def __add__(self, other) -> "TowerElem":
        other = self._coerce(other)
        out = dict(self.coeffs)
        for mono, c in other.coeffs.items():
            out[mono] = out.get(mono, Fraction(0)) + c
        return TowerElem(self.tower, out)

    __radd__ = __add__

    def __neg__(self) -> "TowerElem":
        return TowerElem(self.tower, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other) -> "TowerElem":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "TowerElem":
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "TowerElem":
        other = self._coerce(other)
        tower = self.tower
        if other.is_rational():
            x = other.coeffs.get(frozenset(), Fraction(0))
            return TowerElem(tower, {k: v * x for k, v in self.coeffs.items()})
        if self.is_rational():
            x = self.coeffs.get(frozenset(), Fraction(0))
            return TowerElem(tower, {k: v * x for k, v in other.coeffs.items()})
        acc = tower.zero()
        plain: dict[frozenset, Fraction] = {}
        for s, cs in self.coeffs.items():
            for t, ct in other.coeffs.items():
                common = s & t
                sym = s ^ t
                if not common:
                    plain[sym] = plain.get(sym, Fraction(0)) + cs * ct
                else:
                    term = tower._mono_product(common) * TowerElem(
                        tower, {sym: cs * ct}
                    )
                    acc = acc + term
        return acc + TowerElem(tower, plain)

    __rmul__ = __mul__

    def inv(self) -> "TowerElem":
        if self.is_zero():
            raise ZeroDivisionError("tower element is zero")
        lvl = self.top_index()
        if lvl < 0:
            return self.tower.rational(1 / self.as_rational())
        a, b = self.split(lvl)
        if b.is_zero():
            return a.inv()
        d = self.tower.steps[lvl].radicand
        conj = a - self.tower.root(lvl) * b
        norm = a * a - d * b * b
        if norm.is_zero():
            raise DegenerateStepError(
                f"norm vanished at level {lvl}; radicand is a square"
            )
        return conj * norm.inv()

    def __truediv__(self, other) -> "TowerElem":
        return self * self._coerce(other).inv()

    def __rtruediv__(self, other) -> "TowerElem":
        return self._coerce(other) * self.inv()

    def __pow__(self, n: int) -> "TowerElem":
        if n < 0:
            return self.inv() ** (-n)
        out = self.tower.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.tower.rational(other)
        if not isinstance(other, TowerElem):
            return NotImplemented
        return self.tower is other.tower and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((id(self.tower), frozenset(self.coeffs.items())))

    # -- io ------------------------------------------------------------

    def _mono_name(self, mono: frozenset) -> str:
        if not mono:
            return "1"
        return "*".join(self.tower.steps[i].name for i in sorted(mono))

    def to_dict(self) -> dict:
        return {self._mono_name(m): str(c) for m, c in sorted(
            self.coeffs.items(), key=lambda kv: sorted(kv[0])
        )}

    @staticmethod
    def from_dict(tower: Tower, data: Mapping[str, str]) -> "TowerElem":
        name_to_idx = {s.name: i for i, s in enumerate(tower.steps)}
        coeffs = {}
        for key, val in data.items():
            if key == "1":
                mono = frozenset()
            else:
                mono = frozenset(name_to_idx[part] for part in key.split("*"))
            coeffs[mono] = Fraction(val)
        return TowerElem(tower, coeffs)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for mono, c in sorted(self.coeffs.items(), key=lambda kv: sorted(kv[0])):
            name = self._mono_name(mono)
            parts.append(f"{c}" if name == "1" else f"{c}*{name}")
        return " + ".join(parts)

    __repr__ = __str__


class TowerAuto:
    """A field automorphism of a tower, given by images of the roots.

    Validation checks, for every step, that the proposed image of the root
    squares to the image of the radicand.  Images default to the root
    itself, so only the moved generators need to be listed.
    """

    def __init__(
        self,
        tower: Tower,
        images: Mapping[str, TowerElem],
        label: str = "",
        *,
        validate: bool = True,
    ):
        self.tower = tower
        self.label = label
        self.root_images: list[TowerElem] = []
        for i, step in enumerate(tower.steps):
            img = images.get(step.name, tower.root(i))
            self.root_images.append(img)
        self._mono_cache: dict[frozenset, TowerElem] = {}
        if validate:
            self.validate()

    def validate(self) -> None:
        for i, step in enumerate(self.tower.steps):
            img = self.root_images[i]
            should = self.apply(step.radicand)
            if not img * img == should:
                raise ValueError(
                    f"automorphism {self.label!r}: image of root {step.name!r} "
                    f"squares to {img * img}, expected {should}"
                )

    def apply(self, z: TowerElem) -> TowerElem:
        out = self.tower.zero()
        for mono, c in z.coeffs.items():
            img = self._mono_cache.get(mono)
            if img is None:
                img = self.tower.one()
                for i in sorted(mono):
                    img = img * self.root_images[i]
                self._mono_cache[mono] = img
            out = out + img * c
        return out

    def __call__(self, z: TowerElem) -> TowerElem:
        return self.apply(z)

    def compose(self, other: "TowerAuto") -> "TowerAuto":
        """self after other."""
        images = {
            s.name: self.apply(other.root_images[i])
            for i, s in enumerate(self.tower.steps)
        }
        return TowerAuto(self.tower, images, f"{self.label}.{other.label}")


# -- small expression language for data files and the CLI --------------


_ALLOWED_NODES = (
    ast.Expression, ast.BinOp, ast.UnaryOp, ast.Constant, ast.Name,
    ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow, ast.USub, ast.UAdd,
)


def parse_element(
    text: str,
    lookup: Callable[[str], TowerElem],
    rational: Callable[[Scalar], TowerElem],
):
    """Evaluate an arithmetic expression over named tower elements.

    Supports + - * / ** (integer exponents), unary minus, integer
    literals, and bare names resolved through ``lookup``.
    """
    tree = ast.parse(text, mode="eval")

    def run(node):
        if not isinstance(node, _ALLOWED_NODES):
            raise ValueError(f"unsupported syntax in {text!r}: {ast.dump(node)}")
        if isinstance(node, ast.Expression):
            return run(node.body)
        if isinstance(node, ast.Constant):
            if isinstance(node.value, int):
                return rational(node.value)
            raise ValueError(f"only integer literals allowed, got {node.value!r}")
        if isinstance(node, ast.Name):
            return lookup(node.id)
        if isinstance(node, ast.UnaryOp):
            val = run(node.operand)
            return -val if isinstance(node.op, ast.USub) else val
        if isinstance(node, ast.BinOp):
            lhs, rhs = run(node.left), run(node.right)
            if isinstance(node.op, ast.Add):
                return lhs + rhs
            if isinstance(node.op, ast.Sub):
                return lhs - rhs
            if isinstance(node.op, ast.Mult):
                return lhs * rhs
            if isinstance(node.op, ast.Div):
                return lhs / rhs
            if isinstance(node.op, ast.Pow):
                if not isinstance(node.right, ast.Constant) or not isinstance(
                    node.right.value, int
                ):
                    raise ValueError("exponent must be an integer literal")
                return lhs ** node.right.value
        raise ValueError(f"unsupported syntax in {text!r}")

    return run(tree)


def tower_expr(tower: Tower, text: str, env: Optional[Mapping[str, TowerElem]] = None) -> TowerElem:
    env = env or {}

    def lookup(name: str) -> TowerElem:
        if name in env:
            return env[name]
        return tower.gen(name)

    return parse_element(text, lookup, tower.rational)
