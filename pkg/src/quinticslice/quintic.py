"""Slice search for a^5 + b^5 = c^5 + d^5 with (c + d) - (a + b) = h.

Pairs are symmetrized as S = a + b, u = b - a and T = c + d = S + h,
v = d - c.  For each admissible (S, u) the equation becomes a quadratic in
Z = v^2 whose discriminant must be a perfect square; the remaining integer
conditions are checked in a fixed order and the first failure is recorded.
"""

from __future__ import annotations

import csv
import enum
import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, TextIO

from .exactmath import is_square, isqrt

log = logging.getLogger(__name__)

MDO_MODULUS = 30


class InadmissibleSliceError(ValueError):
    """Raised when searching a slice excluded by the 30 | h congruence."""


class Verdict(enum.Enum):
    FAIL_SQUARE_D = "FailSquareD"
    FAIL_INTEGRAL_Z = "FailIntegralZ"
    FAIL_NONNEG_Z = "FailNonnegZ"
    FAIL_SQUARE_Z = "FailSquareZ"
    FAIL_PARITY = "FailParity"
    FAIL_SIZE = "FailSize"
    SOLUTION = "Solution"


@dataclass(frozen=True)
class SliceParams:
    h: int
    S_min: int
    S_max: int

    def __post_init__(self):
        if self.S_min < 0 or self.S_min > self.S_max:
            raise ValueError(f"need 0 <= S_min <= S_max, got [{self.S_min}, {self.S_max}]")


@dataclass(frozen=True, order=True)
class Solution:
    a: int
    b: int
    c: int
    d: int

    @property
    def trivial(self) -> bool:
        return {self.a, self.b} == {self.c, self.d}

    @property
    def h(self) -> int:
        return (self.c + self.d) - (self.a + self.b)

    def check(self, k: int = 5) -> bool:
        """Independent re-check by direct exponentiation."""
        return (
            min(self.a, self.b, self.c, self.d) >= 0
            and self.a**k + self.b**k == self.c**k + self.d**k
        )

    def normalized(self) -> "Solution":
        a, b = sorted((self.a, self.b))
        c, d = sorted((self.c, self.d))
        return Solution(a, b, c, d)

    def as_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c, "d": self.d, "trivial": self.trivial}


@dataclass(frozen=True)
class SliceCell:
    S: int
    u: int
    h: int
    L: int
    D: int
    verdict: Verdict
    Y: int | None = None
    Z: int | None = None
    v: int | None = None

    @property
    def T(self) -> int:
        return self.S + self.h

    def solution(self) -> Solution | None:
        if self.verdict is not Verdict.SOLUTION:
            return None
        T = self.T
        return Solution((self.S - self.u) // 2, (self.S + self.u) // 2, (T - self.v) // 2, (T + self.v) // 2)


def mdo_admissible(h: int) -> bool:
    return h % MDO_MODULUS == 0


def mdo_verify_congruence(p: int) -> bool:
    """Check x^5 = x (mod p) for every residue; only meaningful for p in {2, 3, 5}."""
    if p not in (2, 3, 5):
        raise ValueError(f"x^5 = x mod p is only claimed for p in {{2, 3, 5}}, got {p}")
    return all(pow(x, 5, p) == x for x in range(p))


def sym_L(S: int, u: int) -> int:
    """S^5 + 10 S^3 u^2 + 5 S u^4, which equals 16(a^5 + b^5)."""
    S2, u2 = S * S, u * u
    return S * (S2 * S2 + 10 * S2 * u2 + 5 * u2 * u2)


def discriminant_DZ(S: int, u: int, h: int) -> int:
    T = S + h
    return 80 * T**6 + 20 * T * sym_L(S, u)


def z_quadratic_residue(T: int, L: int, Z: int) -> int:
    """5T Z^2 + 10T^3 Z + T^5 - L; zero exactly when Z = v^2 solves the slice equation."""
    return 5 * T * Z * Z + 10 * T**3 * Z + T**5 - L


def solve_cell(S: int, u: int, h: int) -> SliceCell:
    """Run the six integer conditions on one (S, u) cell, stopping at the first failure."""
    if u < 0 or u > S or (u - S) % 2:
        raise ValueError(f"need 0 <= u <= S and u = S mod 2, got S={S}, u={u}")
    T = S + h
    if T <= 0:
        raise ValueError(f"solve_cell needs T = S + h > 0, got T={T}")
    L = sym_L(S, u)
    D = 80 * T**6 + 20 * T * L
    if not is_square(D):
        return SliceCell(S, u, h, L, D, Verdict.FAIL_SQUARE_D)
    Y, _ = isqrt(D)
    den = 10 * T
    T3 = 10 * T**3
    # Y's sign is a free choice; keep the first integral root, preferring a nonnegative one
    roots = []
    for y in (Y, -Y):
        num = -T3 + y
        if num % den == 0:
            roots.append((y, num // den))
    if not roots:
        return SliceCell(S, u, h, L, D, Verdict.FAIL_INTEGRAL_Z, Y=Y)
    for _, z in roots:
        if z_quadratic_residue(T, L, z) != 0:
            raise AssertionError(f"integral root Z={z} does not solve the quadratic at S={S}, u={u}")
    nonneg = [(y, z) for y, z in roots if z >= 0]
    if not nonneg:
        y, z = roots[0]
        return SliceCell(S, u, h, L, D, Verdict.FAIL_NONNEG_Z, Y=y, Z=z)
    y, Z = nonneg[0]
    v, exact = isqrt(Z)
    if not exact:
        return SliceCell(S, u, h, L, D, Verdict.FAIL_SQUARE_Z, Y=y, Z=Z)
    if (Z - T) % 2:
        return SliceCell(S, u, h, L, D, Verdict.FAIL_PARITY, Y=y, Z=Z, v=v)
    if Z > T * T:
        return SliceCell(S, u, h, L, D, Verdict.FAIL_SIZE, Y=y, Z=Z, v=v)
    return SliceCell(S, u, h, L, D, Verdict.SOLUTION, Y=y, Z=Z, v=v)


def iter_cells(h: int, S_min: int, S_max: int) -> Iterator[SliceCell]:
    """All cells of the slice in ascending (S, u) order; T <= 0 rows are skipped."""
    for S in range(S_min, S_max + 1):
        if S + h <= 0:
            continue
        for u in range(S % 2, S + 1, 2):
            yield solve_cell(S, u, h)


@dataclass
class ScanResult:
    params: SliceParams
    solutions: list[Solution] = field(default_factory=list)
    counts: Counter = field(default_factory=Counter)
    square_cells: list[SliceCell] = field(default_factory=list)
    degenerate: bool = False

    @property
    def nontrivial(self) -> list[Solution]:
        return [s for s in self.solutions if not s.trivial]

    @property
    def trivial(self) -> list[Solution]:
        return [s for s in self.solutions if s.trivial]

    def merge(self, other: "ScanResult") -> None:
        self.solutions.extend(other.solutions)
        self.counts.update(other.counts)
        self.square_cells.extend(other.square_cells)

    def to_dict(self) -> dict:
        return {
            "h": self.params.h,
            "S_min": self.params.S_min,
            "S_max": self.params.S_max,
            "degenerate": self.degenerate,
            "cells": sum(self.counts.values()),
            "verdict_counts": {v.value: self.counts.get(v, 0) for v in Verdict},
            "trivial_count": len(self.trivial),
            "nontrivial": [s.as_dict() for s in self.nontrivial],
        }


def _scan_chunk(h: int, lo: int, hi: int, keep_square: bool) -> ScanResult:
    out = ScanResult(SliceParams(h, lo, hi))
    # T = 0 forces c = d = 0, then a = b = 0, so only S = 0 on h = 0 qualifies
    if h == 0 and lo == 0:
        out.solutions.append(Solution(0, 0, 0, 0))
    for cell in iter_cells(h, lo, hi):
        out.counts[cell.verdict] += 1
        if keep_square and cell.verdict is not Verdict.FAIL_SQUARE_D:
            out.square_cells.append(cell)
        if cell.verdict is Verdict.SOLUTION:
            out.solutions.append(cell.solution())
    return out


def _chunks(lo: int, hi: int, n: int) -> list[tuple[int, int]]:
    # cells per S grow linearly, so split on equal area of S rather than equal length
    if n <= 1 or hi - lo < n:
        return [(lo, hi)]
    bounds = [lo]
    total = (hi + 1) ** 2 - lo**2
    for i in range(1, n):
        target = lo**2 + total * i / n
        bounds.append(max(bounds[-1] + 1, int(target**0.5)))
    bounds.append(hi + 1)
    return [(a, b - 1) for a, b in zip(bounds, bounds[1:]) if a <= b - 1]


def scan_slice(
    params: SliceParams,
    *,
    mdo_filter: bool = True,
    workers: int = 1,
    keep_square_cells: bool = False,
) -> ScanResult:
    """Scan every admissible (S, u) with S in [S_min, S_max].

    Work per S is one pass over u = S mod 2, ..., S.  With ``mdo_filter`` an
    inadmissible h (30 does not divide h) raises before any cell is touched.
    Results are merged in ascending S regardless of ``workers``.
    """
    h = params.h
    if not mdo_admissible(h):
        if mdo_filter:
            raise InadmissibleSliceError(f"h={h} is not divisible by {MDO_MODULUS}; no solutions can exist")
        log.warning("scanning inadmissible slice h=%d", h)
    chunks = _chunks(params.S_min, params.S_max, workers)
    result = ScanResult(params, degenerate=(h == 0))
    if workers > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_scan_chunk, [h] * len(chunks), *zip(*chunks), [keep_square_cells] * len(chunks)))
    else:
        parts = [_scan_chunk(h, lo, hi, keep_square_cells) for lo, hi in chunks]
    for part in parts:
        result.merge(part)
    return result


def write_square_cells_csv(cells: list[SliceCell], fh: TextIO) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["S", "u", "T", "L", "D", "Y", "Z", "v", "verdict"])
    for c in cells:
        w.writerow([c.S, c.u, c.T, c.L, c.D, c.Y, "" if c.Z is None else c.Z, "" if c.v is None else c.v, c.verdict.value])
