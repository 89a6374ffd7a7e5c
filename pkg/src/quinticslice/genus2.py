"""The h-independent genus-two curve Y^2 = 25x^6 + 100x^5 + 200x^4 + 200x^3 + 100x^2 + 20x.

With x = S/h, P(S, h) = S * Q5(S, h) equals h^6 * f(x) / 25, so a rational
square value of P with S, h != 0 would give a rational point with x != 0.
Only a bounded-height search is done here; it can falsify but never prove
that the known three points are all of them.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from . import jacobian as jac
from .exactmath import format_rat, is_square, is_square_rat, isqrt
from .polyring import Poly, as_scalar

XN = jac.XN
UNIVERSAL_COEFFS = (0, 20, 100, 200, 200, 100, 25)


@dataclass(frozen=True)
class SexticModel:
    coeffs: tuple[int, ...]  # constant term first

    @property
    def poly(self) -> Poly:
        return Poly(self.coeffs, "x")

    def homogeneous_value(self, p: int, q: int) -> int:
        """q^6 f(p/q) as an exact integer."""
        out = 0
        for i in range(len(self.coeffs) - 1, -1, -1):
            out = out * p + self.coeffs[i] * q ** (6 - i)
        return out


def normalized_sextic() -> Poly:
    """x^6 + 4x^5 + 8x^4 + 8x^3 + 4x^2 + (4/5)x, the h-free form of P(S, h) / h^6."""
    return Poly((0, Fraction(4, 5), 4, 8, 8, 4, 1), "x")


def universal_curve() -> SexticModel:
    model = SexticModel(UNIVERSAL_COEFFS)
    residue = model.poly - 25 * normalized_sextic()
    if residue != 0:
        raise jac.IdentityError("universal_curve_clearing", residue)
    return model


@dataclass(frozen=True)
class RationalPointRecord:
    x: Fraction | None  # None marks a point at infinity
    Y: Fraction
    height: int

    @property
    def at_infinity(self) -> bool:
        return self.x is None

    def projective(self) -> str:
        """Weighted projective (X : Y : Z) with weights (1, 3, 1)."""
        if self.x is None:
            return f"(1 : {format_rat(self.Y)} : 0)"
        p, q = self.x.numerator, self.x.denominator
        return f"({p} : {format_rat(self.Y * q**3)} : {q})"

    def to_dict(self) -> dict:
        return {
            "x": None if self.x is None else format_rat(self.x),
            "Y": format_rat(self.Y),
            "height": self.height,
            "projective": self.projective(),
        }


def _points_at_infinity(model: SexticModel) -> list[RationalPointRecord]:
    r, exact = isqrt(model.coeffs[-1])
    if not exact:
        return []
    return [RationalPointRecord(None, Fraction(-r), 0), RationalPointRecord(None, Fraction(r), 0)]


def _scan_denominators(args) -> list[RationalPointRecord]:
    coeffs, H, qs = args
    c0, c1, c2, c3, c4, c5, c6 = coeffs
    found = []
    for q in qs:
        q2 = q * q
        q3 = q2 * q
        k5, k4, k3, k2, k1, k0 = c5 * q, c4 * q2, c3 * q3, c2 * q2 * q2, c1 * q3 * q2, c0 * q3 * q3
        for p in range(-H, H + 1):
            if p == 0 or math.gcd(p, q) != 1:
                continue
            v = (((((c6 * p + k5) * p + k4) * p + k3) * p + k2) * p + k1) * p + k0
            if is_square(v):
                r, _ = isqrt(v)
                x = Fraction(p, q)
                ht = max(abs(p), q)
                ys = [Fraction(0)] if r == 0 else [Fraction(-r, q3), Fraction(r, q3)]
                found.extend(RationalPointRecord(x, y, ht) for y in ys)
    return found


def _sort_key(pt: RationalPointRecord):
    return (pt.x is not None, pt.x if pt.x is not None else 0, pt.Y)


def bounded_height_scan(H: int, model: SexticModel | None = None, workers: int = 1) -> list[RationalPointRecord]:
    """All rational points with x = p/q, |p| <= H, 0 < q <= H, plus x = 0 and infinity."""
    if H < 1:
        raise ValueError("height bound must be >= 1")
    model = model or universal_curve()
    points = _points_at_infinity(model)
    c0 = model.coeffs[0]
    if is_square(c0):
        r, _ = isqrt(c0)
        ys = [Fraction(0)] if r == 0 else [Fraction(-r), Fraction(r)]
        points.extend(RationalPointRecord(Fraction(0), y, 1) for y in ys)
    qs = list(range(1, H + 1))
    if workers > 1:
        chunks = [qs[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            for part in ex.map(_scan_denominators, [(model.coeffs, H, c) for c in chunks]):
                points.extend(part)
    else:
        points.extend(_scan_denominators((model.coeffs, H, qs)))
    return sorted(points, key=_sort_key)


def p_value(S, h) -> Fraction:
    """P(S, h) = S * Q5(S, h) at rational arguments."""
    S, h = Fraction(S), Fraction(h)
    return S * (S**5 + 4 * h * S**4 + 8 * h**2 * S**3 + 8 * h**3 * S**2 + 4 * h**4 * S + Fraction(4, 5) * h**5)


def p_square_screen(S, h) -> bool:
    """Square verdict of P(S, h); also checks P(S, h) = h^6 g(S/h)."""
    S, h = Fraction(S), Fraction(h)
    if S == 0 or h == 0:
        raise ValueError("P(S, h) screening needs S != 0 and h != 0")
    P = p_value(S, h)
    via_x = h**6 * normalized_sextic()(S / h)
    if P != via_x:
        raise jac.IdentityError("p_homogeneity", Poly((P - via_x,), "x"))
    return is_square_rat(P)


@dataclass
class PScreenResult:
    tested: int
    squares: list[tuple[int, int]]

    def to_dict(self) -> dict:
        return {"tested": self.tested, "squares": [list(t) for t in self.squares]}


def p_grid_screen(S_max: int, h_max: int, h_step: int = 30) -> PScreenResult:
    """P(S, h) for S in [-S_max, S_max] minus 0 and h in +-h_step, ..., +-h_max."""
    hs = [k * h_step for k in range(-(h_max // h_step), h_max // h_step + 1) if k]
    squares, tested = [], 0
    for h in hs:
        for S in range(-S_max, S_max + 1):
            if S == 0:
                continue
            tested += 1
            if p_square_screen(S, h):
                squares.append((S, h))
    return PScreenResult(tested, squares)


def delta2_value(S0: int, h: int) -> int:
    e1 = -1200 * S0**3 * (S0 + h)
    T = S0 + h
    a4 = -864000 * T**2 * S0 * (3 * T**5 + 2 * S0**5)
    A = 3 * e1
    B = 3 * e1 * e1 + a4
    return A * A - 4 * B


def delta2_screen(lo: int, hi: int, h: int = 30) -> PScreenResult:
    """Square tests of the 2-torsion quadratic discriminant at integer S0."""
    sym = jac.verify_two_torsion_root(jac.explicit_jacobian(h), h).Delta
    squares, tested = [], 0
    for S0 in range(lo, hi + 1):
        v = delta2_value(S0, h)
        # spot-check the closed form against the symbolic polynomial
        if S0 % 997 == lo % 997 and as_scalar(sym(S0)) != v:
            raise jac.IdentityError("delta2_specialization", Poly((as_scalar(sym(S0)) - v,), "S"))
        tested += 1
        if is_square(v):
            squares.append((S0, h))
    return PScreenResult(tested, squares)
