"""Specialization screening for the Jacobian over Q(S) on a fixed slice.

The injectivity test: at an integer S0, every nonconstant squarefree divisor
g of B or Delta = A^2 - 4B must give a non-square g(S0), and the specialized
curve must be nonsingular.  Torsion of accepted specializations is bracketed
between the explicit 2-torsion point and the gcd of point counts mod p.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from . import jacobian as jac
from .exactmath import is_square, is_square_rat, isqrt, primes_below
from .polyring import (
    FactorClaim,
    Poly,
    as_scalar,
    divides,
    normalize,
    squarefree_part,
    to_text,
    verify_factorization,
)

# B(S, h) = B_UNIT_PER_H * h * S (S+h)^2 Q4(S, h); at h = 30 the unit is -2^9 3^5 5^5
B_UNIT_PER_H = -12960000
DELTA_UNIT = 2**8 * 3**4 * 5**4
DEFAULT_PRIME_BOUND = 200
MIN_PRIMES = 5


class FixtureMismatch(AssertionError):
    pass


class SingularSpecializationError(ValueError):
    pass


class BadReductionError(ValueError):
    pass


class InsufficientEvidenceError(ValueError):
    pass


def q4(h=jac.H) -> Poly:
    S = jac.S
    return S**4 + 2 * h * S**3 + 2 * h**2 * S**2 + h**3 * S + Fraction(1, 5) * h**4


def two_torsion_model(h: int) -> jac.TwoTorsionModel:
    model = jac.jacobian_model(*jac.quartic_invariants(jac.slice_quartic(h)))
    return jac.verify_two_torsion_root(model, h)


def factor_claims(h: int) -> tuple[FactorClaim, FactorClaim]:
    """Factor lists of B and Delta on slice h, normalized to primitive integer factors."""
    S = jac.S
    q4n, q5n = normalize(q4(h)), normalize(jac.q5(h))
    # normalize() rescales the monic Q4, Q5; fold the scale back into the unit
    c4 = Fraction(1, q4n.lc)
    c5 = Fraction(1, q5n.lc)
    claim_b = FactorClaim(B_UNIT_PER_H * h * c4, ((S, 1), (S + h, 2), (q4n, 1)))
    claim_d = FactorClaim(DELTA_UNIT * c5, ((S, 1), (S + h, 2), (q5n, 1)))
    return claim_b, claim_d


@dataclass(frozen=True)
class DivisorSet:
    h: int
    polys: tuple[Poly, ...]

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)


def _subset_products(factors: list[Poly]) -> list[Poly]:
    out = []
    for k in range(1, len(factors) + 1):
        for combo in combinations(factors, k):
            g = Poly((1,), "S")
            for f in combo:
                g = g * f
            out.append(normalize(g))
    return out


def build_divisor_set(h: int = 30, expected: int | None = 11) -> DivisorSet:
    """All nonconstant squarefree divisors of rad(B) or rad(Delta).

    The factor claims are multiplied out against B and Delta first, so the
    irreducible pieces are known without a factorization engine.
    """
    tt = two_torsion_model(h)
    claim_b, claim_d = factor_claims(h)
    lists = []
    for name, f, claim in (("B", tt.B, claim_b), ("Delta", tt.Delta, claim_d)):
        if not verify_factorization(f, claim):
            raise FixtureMismatch(f"factor claim for {name} does not multiply out")
        rad = squarefree_part(f)
        facs = [normalize(g) for g, _ in claim.factors if g.degree > 0]
        prod = Poly((1,), "S")
        for g in facs:
            prod = prod * g
        if normalize(prod) != rad:
            raise FixtureMismatch(f"radical of {name} is not the product of its claimed factors")
        lists.append(facs)
    seen: set[str] = set()
    polys: list[Poly] = []
    for g in _subset_products(lists[0]) + _subset_products(lists[1]):
        key = to_text(g)
        if key not in seen:
            seen.add(key)
            polys.append(g)
    if expected is not None and len(polys) != expected:
        raise FixtureMismatch(f"expected {expected} squarefree divisors, found {len(polys)}")
    return DivisorSet(h, tuple(polys))


@dataclass(frozen=True)
class SpecializedCurve:
    h: int
    S0: int
    a4: int
    a6: int

    @property
    def disc(self) -> int:
        return -16 * (4 * self.a4**3 + 27 * self.a6**2)

    def rhs(self, x: int) -> int:
        return x**3 + self.a4 * x + self.a6


_MODEL_CACHE: dict[int, jac.WeierstrassModel] = {}


def _model(h: int) -> jac.WeierstrassModel:
    if h not in _MODEL_CACHE:
        _MODEL_CACHE[h] = jac.jacobian_model(*jac.quartic_invariants(jac.slice_quartic(h)))
    return _MODEL_CACHE[h]


def _specialize_raw(h: int, S0: int) -> SpecializedCurve:
    m = _model(h)
    return SpecializedCurve(h, S0, as_scalar(m.a4(S0)), as_scalar(m.a6(S0)))


def specialize(h: int, S0: int) -> SpecializedCurve:
    curve = _specialize_raw(h, S0)
    if curve.disc == 0:
        raise SingularSpecializationError(f"specialization at S0={S0} (h={h}) is singular")
    return curve


def count_points_mod_p(curve: SpecializedCurve, p: int) -> int:
    """#E(F_p) including the point at infinity."""
    if p == 2 or (2 * curve.disc) % p == 0:
        raise BadReductionError(f"p={p} is not an odd prime of good reduction")
    a4, a6 = curve.a4 % p, curve.a6 % p
    chi = [-1] * p
    chi[0] = 0
    for y in range(1, (p + 1) // 2):
        chi[y * y % p] = 1
    return p + 1 + sum(chi[(x * x * x + a4 * x + a6) % p] for x in range(p))


def good_primes(curve: SpecializedCurve, bound: int = DEFAULT_PRIME_BOUND) -> list[int]:
    d2 = 2 * curve.disc
    return [p for p in primes_below(bound) if p > 2 and d2 % p]


def _first_true(lo: int, hi: int, pred) -> int:
    """Smallest n in [lo, hi] with pred(n) (pred monotone False..True); hi + 1 if none."""
    while lo <= hi:
        mid = (lo + hi) // 2
        if pred(mid):
            hi = mid - 1
        else:
            lo = mid + 1
    return lo


def integer_roots_cubic(a4: int, a6: int) -> list[int]:
    """Integer (= rational, the cubic is monic) roots of X^3 + a4 X + a6.

    Exact: bisection over the integer points of each monotone piece.
    """
    f = lambda x: x**3 + a4 * x + a6  # noqa: E731
    bound = 1 + max(abs(a4), abs(a6))
    if a4 >= 0:
        pieces = [(-bound, bound, 1)]
    else:
        q = (-a4) // 3  # floor(sqrt(-a4/3)) == isqrt(floor(-a4/3))
        r, _ = isqrt(q)
        pieces = [(-bound, -r - 1, 1), (-r, r, -1), (r + 1, bound, 1)]
    roots = []
    for lo, hi, sign in pieces:
        if lo > hi:
            continue
        x = _first_true(lo, hi, lambda t: sign * f(t) >= 0)
        if x <= hi and f(x) == 0:
            roots.append(x)
    return sorted(set(roots))


@dataclass(frozen=True)
class TorsionDiagnosis:
    upper_bound: int
    two_torsion_points: int
    primes: tuple[int, ...]
    counts: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"upper_bound": self.upper_bound, "two_torsion_points": self.two_torsion_points}


def two_torsion_via_e1(curve: SpecializedCurve) -> int:
    """Count rational 2-torsion points from the known root e1 and the quadratic cofactor."""
    e1 = as_scalar(jac.e1_root(curve.h)(curve.S0))
    if curve.rhs(e1) != 0:
        raise FixtureMismatch(f"e1 is not a root at S0={curve.S0}")
    disc_q = -3 * e1 * e1 - 4 * curve.a4
    if not is_square(disc_q):
        return 1
    return 2 if disc_q == 0 else 3


def torsion_diagnosis(curve: SpecializedCurve, primes: list[int] | None = None) -> TorsionDiagnosis:
    if primes is None:
        primes = good_primes(curve)
    if len(primes) < MIN_PRIMES:
        raise InsufficientEvidenceError(f"need at least {MIN_PRIMES} good primes, got {len(primes)}")
    counts = []
    g = 0
    for p in primes:
        n = count_points_mod_p(curve, p)
        if (n - p - 1) ** 2 > 4 * p:
            raise AssertionError(f"Hasse bound violated: #E(F_{p}) = {n}")
        counts.append(n)
        g = math.gcd(g, n)
    roots = integer_roots_cubic(curve.a4, curve.a6)
    return TorsionDiagnosis(g, len(roots), tuple(primes), tuple(counts))


@dataclass
class ScreeningReport:
    S0: int
    h: int
    divisors: list[dict] = field(default_factory=list)
    disc_nonzero: bool = True
    torsion: TorsionDiagnosis | None = None

    @property
    def injective(self) -> bool:
        return self.disc_nonzero and not any(d["is_square"] for d in self.divisors)

    def to_dict(self) -> dict:
        return {
            "S0": self.S0,
            "divisors": self.divisors,
            "disc_nonzero": self.disc_nonzero,
            "injective": self.injective,
            "torsion": self.torsion.to_dict() if self.torsion else None,
        }


def gt_injective(S0: int, divisors: DivisorSet, torsion: bool = False) -> ScreeningReport:
    rep = ScreeningReport(S0, divisors.h)
    for g in divisors:
        value = as_scalar(g(S0))
        rep.divisors.append({"poly": to_text(g), "value": value, "is_square": is_square_rat(value)})
    curve = _specialize_raw(divisors.h, S0)
    rep.disc_nonzero = curve.disc != 0
    if torsion and rep.injective:
        rep.torsion = torsion_diagnosis(curve)
    return rep


def _screen_chunk(args) -> list[ScreeningReport]:
    values, divisors, torsion = args
    return [gt_injective(s, divisors, torsion) for s in values]


def screen_range(lo: int, hi: int, h: int = 30, *, torsion: bool = False, workers: int = 1) -> list[ScreeningReport]:
    if lo > hi:
        raise ValueError(f"empty range [{lo}, {hi}]")
    divisors = build_divisor_set(h)
    values = list(range(lo, hi + 1))
    if workers > 1 and len(values) > 1:
        chunks = [values[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = ex.map(_screen_chunk, [(c, divisors, torsion) for c in chunks if c])
            reports = [r for part in parts for r in part]
        return sorted(reports, key=lambda r: r.S0)
    return _screen_chunk((values, divisors, torsion))


def injective_values(reports: list[ScreeningReport]) -> list[int]:
    return [r.S0 for r in reports if r.injective]


def divisor_closure_ok(divisors: DivisorSet, h: int = 30) -> bool:
    """Every divisor divides S(S+h)Q4 or S(S+h)Q5 exactly."""
    S = jac.S
    big4 = S * (S + h) * normalize(q4(h))
    big5 = S * (S + h) * normalize(jac.q5(h))
    return all(divides(g, big4) or divides(g, big5) for g in divisors)
