"""Exact integer and rational arithmetic helpers.

Everything here is deterministic and certified: primality is proven (for
inputs below a hard bound), factorizations either complete or carry an
explicit ``incomplete`` marker with the unfactored cofactor, and the local
symbols are computed by closed formulas rather than floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Union

#: Exact rational scalar used throughout the package.
Rational = Fraction

RationalLike = Union[int, Fraction]

#: Distinguished value naming the archimedean place of Q.
REAL = "real"

#: Strong-pseudoprime bases certifying primality for n < MR_BOUND (Jaeschke).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17)
MR_BOUND = 341_550_071_728_321

#: Trial-division cutoff used before switching to rho.
TRIAL_LIMIT = 10**6


def is_prime(n: int) -> bool:
    """Certified primality for 1 < n < MR_BOUND; raises beyond the bound."""
    if n >= MR_BOUND:
        raise ValueError(
            f"is_prime is only certified below {MR_BOUND}; got {n}"
        )
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _rho_brent(n: int) -> int:
    """Brent's cycle variant of Pollard rho; deterministic parameter sweep.

    Returns a nontrivial factor of composite odd n, or n itself on failure.
    """
    if n % 2 == 0:
        return 2
    for c in range(1, 50):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    return n


@dataclass
class Factorization:
    """Multiset of prime factors plus an explicit honesty marker.

    ``factors`` maps certified primes to exponents.  If the input could not
    be fully factored with certified primality, ``cofactor`` holds the
    remaining (composite or uncertified) part and ``complete`` is False.
    """

    n: int
    factors: dict[int, int] = field(default_factory=dict)
    cofactor: int = 1

    @property
    def complete(self) -> bool:
        return self.cofactor == 1

    def product(self) -> int:
        out = self.cofactor
        for p, e in self.factors.items():
            out *= p**e
        return out

    def primes(self) -> list[int]:
        return sorted(self.factors)

    def __str__(self) -> str:
        parts = [f"{p}^{e}" if e > 1 else str(p) for p, e in sorted(self.factors.items())]
        if not self.complete:
            parts.append(f"[unfactored {self.cofactor}]")
        return " * ".join(parts) if parts else "1"


def factorize(n: int) -> Factorization:
    """Factor a positive integer; never guesses.

    Trial division up to TRIAL_LIMIT, then Brent rho on what is left.  Any
    part that cannot be certified prime (too large for is_prime, or rho
    stalls) is reported in ``cofactor`` instead of being mislabelled.
    """
    if n <= 0:
        raise ValueError("factorize expects a positive integer")
    fz = Factorization(n)
    if n == 1:
        return fz
    m = n
    for p in range(2, TRIAL_LIMIT + 1):
        if p * p > m:
            break
        while m % p == 0:
            fz.factors[p] = fz.factors.get(p, 0) + 1
            m //= p
    if m == 1:
        return fz
    stack = [m]
    while stack:
        q = stack.pop()
        if q < MR_BOUND and is_prime(q):
            fz.factors[q] = fz.factors.get(q, 0) + 1
            continue
        if q < MR_BOUND:  # certified composite: split it
            d = _rho_brent(q)
            if 1 < d < q:
                stack.extend([d, q // d])
                continue
            fz.cofactor *= q  # rho stalled (practically unreachable)
            continue
        # too large to certify primality; try to peel a factor anyway
        d = _rho_brent(q)
        if 1 < d < q:
            stack.extend([d, q // d])
        else:
            fz.cofactor *= q
    return fz


def prime_divisors(n: int) -> list[int]:
    """Sorted prime divisors of |n|; raises if the factorization is incomplete."""
    if n == 0:
        raise ValueError("0 has no prime divisor list")
    fz = factorize(abs(n))
    if not fz.complete:
        raise ValueError(f"could not completely factor {n}: {fz}")
    return fz.primes()


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) in {-1, 0, 1} for an odd prime p."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"legendre needs an odd prime, got {p}")
    a %= p
    if a == 0:
        return 0
    t = pow(a, (p - 1) // 2, p)
    return 1 if t == 1 else -1


def _square_free_parts(x: RationalLike) -> tuple[int, int]:
    """Return (sign, |num*den|) -- an integer representative of x mod squares."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("square class of 0 is undefined")
    n = x.numerator * x.denominator
    return (1 if n > 0 else -1), abs(n)


def _padic_split(n: int, p: int) -> tuple[int, int]:
    """n = p^v * u with p not dividing u; returns (v, u)."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def hilbert_symbol(x: RationalLike, y: RationalLike, place) -> int:
    """Hilbert symbol (x, y) at a finite prime or at REAL; values +-1.

    (x, y) = 1 iff z^2 = x u^2 + y v^2 has a nontrivial solution over the
    completion at ``place``.
    """
    sx, ax = _square_free_parts(x)
    sy, ay = _square_free_parts(y)
    if place == REAL:
        return -1 if (sx < 0 and sy < 0) else 1
    p = place
    if not is_prime(p):
        raise ValueError(f"hilbert_symbol place must be a prime or REAL, got {place!r}")
    a_int, b_int = sx * ax, sy * ay
    alpha, u = _padic_split(a_int, p) if p != 0 else (0, a_int)
    beta, v = _padic_split(b_int, p)
    if p == 2:
        def eps(w: int) -> int:
            return ((w % 8) - 1) // 2 % 2  # (w-1)/2 mod 2 for odd w

        def omega(w: int) -> int:
            return (w * w - 1) // 8 % 2

        e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if e % 2 else 1
    e = ((p - 1) // 2) * alpha * beta
    sign = -1 if e % 2 else 1
    if beta % 2:
        sign *= legendre(u, p)
    if alpha % 2:
        sign *= legendre(v, p)
    return sign


def qp_is_square(x: RationalLike, place) -> bool:
    """Is x a square in the completion of Q at ``place`` (prime or REAL)?"""
    sx, ax = _square_free_parts(x)
    if place == REAL:
        return sx > 0
    p = place
    v, u = _padic_split(sx * ax, p)
    if v % 2:
        return False
    if p == 2:
        return u % 8 == 1
    return legendre(u, p) == 1


def is_anisotropic_diag4(coeffs: Iterable[RationalLike], place) -> bool:
    """Does the diagonal quadratic form <d1, d2, d3, d4> omit zero over Q_place?

    A nondegenerate rank-4 form over a p-adic field is anisotropic exactly
    when its discriminant is a square and its Hasse invariant is the
    negative of (-1, -1) at that place.
    """
    d = [Fraction(c) for c in coeffs]
    if len(d) != 4 or any(c == 0 for c in d):
        raise ValueError("need four nonzero coefficients")
    if place == REAL:
        return all(c > 0 for c in d) or all(c < 0 for c in d)
    disc = d[0] * d[1] * d[2] * d[3]
    if not qp_is_square(disc, place):
        return False
    hasse = 1
    for i in range(4):
        for j in range(i + 1, 4):
            hasse *= hilbert_symbol(d[i], d[j], place)
    return hasse == -hilbert_symbol(-1, -1, place)


def rational_is_square(x: RationalLike) -> bool:
    x = Fraction(x)
    if x < 0:
        return False
    if x == 0:
        return True
    rn = math.isqrt(x.numerator)
    rd = math.isqrt(x.denominator)
    return rn * rn == x.numerator and rd * rd == x.denominator


def rational_sqrt(x: RationalLike) -> Fraction:
    """Exact square root of a rational square; raises otherwise."""
    x = Fraction(x)
    if not rational_is_square(x):
        raise ValueError(f"{x} is not a rational square")
    return Fraction(math.isqrt(x.numerator), math.isqrt(x.denominator))
