"""Brute-force ground truth for equal sums of two k-th powers.

Nothing here uses the symmetrized criterion: sums are formed by direct
exponentiation and matched by hashing or sorting.  The cubic mode exists so
the pipeline has positive cases (1729 = 1^3 + 12^3 = 9^3 + 10^3).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from .exactmath import isqrt
from .quintic import SliceParams, Solution, scan_slice

RESIDENT_MAP_THRESHOLD = 3000


@dataclass
class CollisionTable:
    k: int
    N: int
    groups: dict[int, list[tuple[int, int]]] = field(default_factory=dict)

    @classmethod
    def build(cls, k: int, N: int, threshold: int = RESIDENT_MAP_THRESHOLD) -> "CollisionTable":
        """Only sums hit by two or more pairs are kept."""
        if k not in (3, 5):
            raise ValueError(f"k must be 3 or 5, got {k}")
        if N < 1:
            raise ValueError("bound must be >= 1")
        powers = [x**k for x in range(N + 1)]
        groups: dict[int, list[tuple[int, int]]] = {}
        if N <= threshold:
            table: dict[int, list[tuple[int, int]]] = defaultdict(list)
            for a in range(N + 1):
                pa = powers[a]
                for b in range(a, N + 1):
                    table[pa + powers[b]].append((a, b))
            groups = {s: pairs for s, pairs in table.items() if len(pairs) > 1}
        else:
            # sort-and-scan keeps one flat list instead of a dict of lists
            sums = sorted((powers[a] + powers[b], a, b) for a in range(N + 1) for b in range(a, N + 1))
            i = 0
            while i < len(sums):
                j = i + 1
                while j < len(sums) and sums[j][0] == sums[i][0]:
                    j += 1
                if j - i > 1:
                    groups[sums[i][0]] = [(t[1], t[2]) for t in sums[i:j]]
                i = j
        return cls(k, N, dict(sorted(groups.items())))

    def solutions(self) -> list[Solution]:
        out = []
        for pairs in self.groups.values():
            for i in range(len(pairs)):
                for j in range(i + 1, len(pairs)):
                    (a, b), (c, d) = pairs[i], pairs[j]
                    if a + b > c + d:
                        (a, b), (c, d) = (c, d), (a, b)
                    out.append(Solution(a, b, c, d))
        return sorted(out)


def brute_force(k: int, N: int, threshold: int = RESIDENT_MAP_THRESHOLD) -> list[Solution]:
    """Nontrivial a^k + b^k = c^k + d^k with all entries in [0, N], oriented so a + b <= c + d."""
    return CollisionTable.build(k, N, threshold).solutions()


def on_slice(solutions: list[Solution], h: int) -> list[Solution]:
    out = []
    for s in solutions:
        if s.h == h:
            out.append(s)
        elif s.h == -h:
            out.append(Solution(s.c, s.d, s.a, s.b))
    return sorted(set(out))


def slice_brute_force(h: int, S_max: int, k: int = 5, S_min: int = 0) -> list[Solution]:
    """All (a <= b, c <= d) with a + b = S <= S_max, c + d = S + h and equal k-th power sums."""
    out = []
    for S in range(S_min, S_max + 1):
        T = S + h
        if T < 0:
            continue
        right = {c**k + (T - c) ** k: c for c in range(T // 2 + 1)}
        for a in range(S // 2 + 1):
            c = right.get(a**k + (S - a) ** k)
            if c is not None:
                out.append(Solution(a, S - a, c, T - c))
    return sorted(out)


@dataclass
class CrossCheck:
    ok: bool
    scan: list[Solution]
    brute: list[Solution]

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "scan_count": len(self.scan),
            "brute_count": len(self.brute),
            "scan_nontrivial": [s.as_dict() for s in self.scan if not s.trivial],
            "brute_nontrivial": [s.as_dict() for s in self.brute if not s.trivial],
        }


def cross_check_slice(h: int, S_max: int, workers: int = 1) -> CrossCheck:
    """Compare the criterion-based slice scan with direct enumeration on the same slice."""
    res = scan_slice(SliceParams(h, 0, S_max), mdo_filter=False, workers=workers)
    scan = sorted(s.normalized() for s in res.solutions)
    brute = slice_brute_force(h, S_max)
    return CrossCheck(scan == brute, scan, brute)


# ---- cubic validation mode -------------------------------------------------


def cubic_sym_L(S: int, u: int) -> int:
    """S^3 + 3 S u^2, which equals 4(a^3 + b^3)."""
    return S * (S * S + 3 * u * u)


def cubic_solve_cell(S: int, u: int, h: int) -> Solution | None:
    """Solve T^3 + 3 T v^2 = S^3 + 3 S u^2 for v, i.e. v^2 = (4L/T - T^2) / 3."""
    T = S + h
    if T <= 0:
        return None
    num = cubic_sym_L(S, u) - T**3
    if num % (3 * T):
        return None
    Z = num // (3 * T)
    if Z < 0:
        return None
    v, exact = isqrt(Z)
    if not exact or (v - T) % 2 or v > T:
        return None
    return Solution((S - u) // 2, (S + u) // 2, (T - v) // 2, (T + v) // 2)


def cubic_scan_slice(h: int, S_max: int, S_min: int = 0) -> list[Solution]:
    out = []
    for S in range(S_min, S_max + 1):
        for u in range(S % 2, S + 1, 2):
            sol = cubic_solve_cell(S, u, h)
            if sol is not None:
                out.append(sol)
    return sorted(out)
