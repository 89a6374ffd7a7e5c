"""Exact integer/rational scalars and perfect-square detection.

Integers are plain Python ``int`` (arbitrary precision, canonical zero) and
rationals are :class:`fractions.Fraction`, which is always stored reduced
with a positive denominator.
"""

from __future__ import annotations

import math
from fractions import Fraction

BigRat = Fraction

# Quadratic-residue tables for the cheap pre-filter in is_square().
_FILTER_MODULI = (64, 63, 65, 11)
_RESIDUES = tuple(
    frozenset((r * r) % m for r in range(m)) for m in _FILTER_MODULI
)
_FILTER_PRODUCT = 64 * 63 * 65 * 11


def isqrt(n: int) -> tuple[int, bool]:
    """Return ``(r, exact)`` with ``r = floor(sqrt(n))`` and ``exact`` iff ``r*r == n``."""
    if n < 0:
        raise ValueError(f"isqrt of negative number {n}")
    r = math.isqrt(n)
    return r, r * r == n


def is_square(n: int) -> bool:
    """Perfect-square test for integers; negative numbers are never squares."""
    if n < 0:
        return False
    if n < _FILTER_PRODUCT:
        return math.isqrt(n) ** 2 == n
    m = n % _FILTER_PRODUCT
    if (
        m % 64 not in _RESIDUES[0]
        or m % 63 not in _RESIDUES[1]
        or m % 65 not in _RESIDUES[2]
        or m % 11 not in _RESIDUES[3]
    ):
        return False
    r = math.isqrt(n)
    return r * r == n


def is_square_rat(q) -> bool:
    """True iff ``q`` is the square of a rational number.

    Zero counts as a square, negatives never do; otherwise the reduced
    numerator and denominator must both be perfect squares.
    """
    q = Fraction(q)
    if q == 0:
        return True
    if q < 0:
        return False
    return is_square(q.numerator) and is_square(q.denominator)


def parse_int(text: str) -> int:
    return int(text.strip())


def parse_rat(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` into a reduced fraction."""
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        if int(den) == 0:
            raise ZeroDivisionError(f"zero denominator in {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def format_rat(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def primes_below(n: int) -> list[int]:
    """Primes p < n by a plain sieve (n is small everywhere it is used)."""
    if n < 3:
        return []
    sieve = bytearray([1]) * n
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(n - 1) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n, i)))
    return [i for i in range(n) if sieve[i]]
