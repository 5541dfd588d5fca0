"""Local-symbol arithmetic against brute-force modular oracles.

The closed-form Hilbert symbol / anisotropy routines are checked against
primitive-solution counts modulo p^3 (odd p) and 32 (p = 2).  For forms
whose coefficients have p-valuation <= 1, a primitive zero modulo those
powers lifts to Z_p by Hensel's lemma and, conversely, any Z_p zero scales
to a primitive one, so the counting oracle decides solvability exactly on
the inputs used here (which all keep valuations <= 1).
"""

import itertools
from fractions import Fraction

import numpy as np
import pytest
import sympy

from enriq import arith


def _square_counts(m: int) -> np.ndarray:
    w = np.arange(m, dtype=np.int64)
    return np.bincount((w * w) % m, minlength=m)


def brute_hilbert(x: int, y: int, p: int) -> int:
    """+1 iff z^2 = x u^2 + y v^2 has a primitive solution mod p^3 / 32."""
    m = 32 if p == 2 else p**3
    sq = _square_counts(m)
    a = np.arange(m, dtype=np.int64)
    target = (x * a[:, None] + y * a[None, :]) % m
    total = int((sq[:, None] * sq[None, :] * sq[target]).sum())
    # solutions with every coordinate divisible by p: scale out p, drop two
    # powers of p from the congruence, and count lifts
    mp = 8 if p == 2 else p
    core = sum(
        1
        for u, v, z in itertools.product(range(mp), repeat=3)
        if (z * z - x * u * u - y * v * v) % mp == 0
    )
    non_primitive = (8 if p == 2 else p**3) * core
    return 1 if total > non_primitive else -1


def brute_isotropic(coeffs, p: int) -> bool:
    """Primitive zero count of <d1,d2,d3,d4> mod p^3 / 32, via convolution."""
    m = 32 if p == 2 else p**3
    sq = _square_counts(m).astype(np.int64)
    a = np.arange(m, dtype=np.int64)

    def value_counts(d: int) -> np.ndarray:
        return np.bincount((d * a) % m, weights=sq, minlength=m).astype(np.int64)

    def convolve(f: np.ndarray, g: np.ndarray) -> np.ndarray:
        idx = (a[:, None] + a[None, :]) % m
        out = np.zeros(m, dtype=np.int64)
        np.add.at(out, idx, f[:, None] * g[None, :])
        return out

    h12 = convolve(value_counts(coeffs[0]), value_counts(coeffs[1]))
    h34 = convolve(value_counts(coeffs[2]), value_counts(coeffs[3]))
    total = int((h12 * h34[(-a) % m]).sum())
    mp = 8 if p == 2 else p
    core = 0
    for point in itertools.product(range(mp), repeat=4):
        if sum(d * c * c for d, c in zip(coeffs, point)) % mp == 0:
            core += 1
    non_primitive = (16 if p == 2 else p**4) * core
    return total > non_primitive


def test_legendre_exhaustive_small_primes():
    for p in (3, 5, 7, 11, 13):
        squares = {(z * z) % p for z in range(1, p)}
        for a in range(p):
            expected = 0 if a == 0 else (1 if a in squares else -1)
            assert arith.legendre(a, p) == expected
            assert arith.legendre(a + 7 * p, p) == expected


def test_legendre_rejects_bad_modulus():
    with pytest.raises(ValueError):
        arith.legendre(3, 2)
    with pytest.raises(ValueError):
        arith.legendre(3, 15)


HILBERT_VALUES = [-3, -2, -1, 1, 2, 3, 5, 6, 10]


@pytest.mark.parametrize("p", [3, 5, 7])
def test_hilbert_symbol_odd_prime_oracle(p):
    values = HILBERT_VALUES + [p, -p, 2 * p]
    for x, y in itertools.product(values, repeat=2):
        assert arith.hilbert_symbol(x, y, p) == brute_hilbert(x, y, p), (x, y, p)


def test_hilbert_symbol_two_adic_oracle():
    values = [-3, -2, -1, 1, 2, 3, 5, 6, -5, 10]
    for x, y in itertools.product(values, repeat=2):
        assert arith.hilbert_symbol(x, y, 2) == brute_hilbert(x, y, 2), (x, y)


def test_hilbert_symbol_real_and_rational_inputs():
    assert arith.hilbert_symbol(-1, -1, arith.REAL) == -1
    assert arith.hilbert_symbol(-1, 2, arith.REAL) == 1
    # mod-squares invariance: 3/4 ~ 3 and 50 ~ 2
    assert arith.hilbert_symbol(Fraction(3, 4), 50, 5) == arith.hilbert_symbol(3, 2, 5)


def test_hilbert_symbol_bimultiplicative():
    for p in (2, 3, 5, arith.REAL):
        for x, y, z in itertools.product([-2, -1, 2, 3, 5], repeat=3):
            lhs = arith.hilbert_symbol(x * y, z, p)
            rhs = arith.hilbert_symbol(x, z, p) * arith.hilbert_symbol(y, z, p)
            assert lhs == rhs, (x, y, z, p)


def test_qp_is_square_examples():
    assert arith.qp_is_square(2, 7)       # 2 = 3^2 mod 7
    assert not arith.qp_is_square(3, 7)
    assert not arith.qp_is_square(7, 7)   # odd valuation
    assert arith.qp_is_square(49 * 2, 7)
    assert arith.qp_is_square(17, 2)      # 1 mod 8
    assert not arith.qp_is_square(5, 2)
    assert not arith.qp_is_square(-4, arith.REAL)
    assert arith.qp_is_square(4, arith.REAL)


@pytest.mark.parametrize("p", [3, 5])
def test_anisotropy_oracle(p):
    pools = [
        (1, 1, 1, 1), (1, 1, 1, -1), (1, 2, 3, 5), (12, 111, 13, 1),
        (1, -1, 2, -2), (p, 1, 1, 1), (p, p, 1, 1), (1, 2, p, 2 * p),
        (2, 3, 5, 7), (1, 1, p, p),
    ]
    for coeffs in pools:
        got = arith.is_anisotropic_diag4(coeffs, p)
        assert got == (not brute_isotropic(coeffs, p)), (coeffs, p)


def test_anisotropy_two_adic_oracle():
    pools = [(1, 1, 1, 1), (1, 1, 1, -7), (1, 2, 3, 5), (2, 3, 10, 15),
             (1, -1, 1, -1), (1, 1, 2, 2)]
    for coeffs in pools:
        got = arith.is_anisotropic_diag4(coeffs, 2)
        assert got == (not brute_isotropic(coeffs, 2)), coeffs


def test_anisotropy_real_and_witness():
    assert arith.is_anisotropic_diag4([1, 2, 3, 4], arith.REAL)
    assert not arith.is_anisotropic_diag4([1, 2, 3, -4], arith.REAL)
    # the witness triplet's screening form is anisotropic over Q_3
    assert arith.is_anisotropic_diag4([12, 111, 13, 1], 3)


def test_is_prime_certified_range_and_guard():
    primes_below_100 = {p for p in range(100) if sympy.isprime(p)}
    assert {p for p in range(100) if arith.is_prime(p)} == primes_below_100
    assert arith.is_prime(341_550_071_728_289)  # largest prime below the bound
    with pytest.raises(ValueError):
        arith.is_prime(arith.MR_BOUND)


@pytest.mark.parametrize("n", [1, 2, 628, 821, 5 * 5 * 13, 2**20, 1000003 * 1000033])
def test_factorize_matches_sympy(n):
    fz = arith.factorize(n)
    assert fz.complete
    assert fz.factors == sympy.factorint(n)
    assert fz.product() == n


def test_prime_divisors():
    assert arith.prime_divisors(628) == [2, 157]
    assert arith.prime_divisors(-628) == [2, 157]
    assert arith.prime_divisors(821) == [821]
    with pytest.raises(ValueError):
        arith.prime_divisors(0)


def test_rational_square_helpers():
    assert arith.rational_is_square(Fraction(49, 64))
    assert arith.rational_sqrt(Fraction(49, 64)) == Fraction(7, 8)
    assert not arith.rational_is_square(Fraction(-4))
    assert not arith.rational_is_square(Fraction(2))
    with pytest.raises(ValueError):
        arith.rational_sqrt(2)
