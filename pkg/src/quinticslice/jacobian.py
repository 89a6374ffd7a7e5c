"""Genus-one fibration Y^2 = D_Z(S, u) and its Jacobian.

For a fixed slice h the discriminant is a binary quartic in u with
coefficients in Z[S] (no odd powers of u).  Everything here is exact
polynomial arithmetic; ``h`` may be an integer or the symbolic generator
``H`` in which case the identities hold in Z[S, h] (Q[S, h] where the 4/5
coefficient of Q5 appears).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .polyring import Poly, as_scalar, odd_part, to_text

S = Poly.gen("S")
H = Poly.gen("h")
U = Poly.gen("u")
X = Poly.gen("X")
XN = Poly.gen("x")  # normalized variable x = S / h


class IdentityError(ArithmeticError):
    """A claimed polynomial identity failed; carries the residue."""

    def __init__(self, name: str, residue):
        self.name = name
        self.residue = residue
        super().__init__(f"identity {name!r} failed, residue = {to_text(residue)}")


class DegenerateSliceError(ValueError):
    pass


def slice_T(h=H) -> Poly:
    return S + h


@dataclass(frozen=True)
class BinaryQuartic:
    """a u^4 + b u^3 + c u^2 + d u + e."""

    a: Poly
    b: Poly
    c: Poly
    d: Poly
    e: Poly

    def as_poly(self) -> Poly:
        return Poly([self.e, self.d, self.c, self.b, self.a], "u")


def slice_quartic(h=H) -> BinaryQuartic:
    T = slice_T(h)
    zero = Poly((), "S")
    return BinaryQuartic(
        a=100 * S * T,
        b=zero,
        c=200 * S**3 * T,
        d=zero,
        e=80 * T**6 + 20 * T * S**5,
    )


def quartic_invariants(q: BinaryQuartic) -> tuple[Poly, Poly]:
    a, b, c, d, e = q.a, q.b, q.c, q.d, q.e
    I = 12 * a * e - 3 * b * d + c**2
    J = 72 * a * c * e + 9 * b * c * d - 27 * a * d**2 - 27 * b**2 * e - 2 * c**3
    return I, J


@dataclass(frozen=True)
class WeierstrassModel:
    """y^2 = X^3 + a4 X + a6."""

    a4: Poly
    a6: Poly

    def cubic(self) -> Poly:
        return X**3 + self.a4 * X + self.a6

    def discriminant(self):
        return -16 * (4 * self.a4**3 + 27 * self.a6**2)


@dataclass(frozen=True)
class TwoTorsionModel:
    """y^2 = X (X^2 + A X + B) after shifting by the rational root e1."""

    e1: Poly
    A: Poly
    B: Poly
    Delta: Poly


def jacobian_model(I, J) -> WeierstrassModel:
    return WeierstrassModel(a4=-27 * I, a6=-27 * J)


def explicit_jacobian(h=H) -> WeierstrassModel:
    """The closed form with T = S + h, as printed for the h = 30 slice."""
    T = slice_T(h)
    return WeierstrassModel(
        a4=-864000 * T**2 * S * (3 * T**5 + 2 * S**5),
        a6=-345600000 * T**3 * S**4 * (9 * T**5 + S**5),
    )


def explicit_invariants(h=H) -> tuple[Poly, Poly]:
    T = slice_T(h)
    return (
        32000 * T**2 * S * (3 * T**5 + 2 * S**5),
        12800000 * T**3 * S**4 * (9 * T**5 + S**5),
    )


def e1_root(h=H) -> Poly:
    return -1200 * S**3 * slice_T(h)


def two_torsion_residue(model: WeierstrassModel, h=H):
    return model.cubic().evaluate(e1_root(h))


def verify_two_torsion_root(model: WeierstrassModel, h=H) -> TwoTorsionModel:
    """Check that e1 = -1200 S^3 (S + h) is a root of the cubic and shift to the 2-torsion model."""
    residue = two_torsion_residue(model, h)
    if residue != 0:
        raise IdentityError("two_torsion_root", residue)
    e1 = e1_root(h)
    A = 3 * e1
    B = 3 * e1**2 + model.a4
    return TwoTorsionModel(e1=e1, A=A, B=B, Delta=A**2 - 4 * B)


def cubic_split_residue(model: WeierstrassModel, h=H):
    """(X - e1)(X^2 + e1 X + e1^2 + a4) - (X^3 + a4 X + a6)."""
    e1 = e1_root(h)
    return (X - e1) * (X**2 + e1 * X + e1**2 + model.a4) - model.cubic()


def q5(h=H) -> Poly:
    """S^5 + 4h S^4 + 8h^2 S^3 + 8h^3 S^2 + 4h^4 S + (4/5) h^5."""
    return S**5 + 4 * h * S**4 + 8 * h**2 * S**3 + 8 * h**3 * S**2 + 4 * h**4 * S + Fraction(4, 5) * h**5


def p_poly(h=H) -> Poly:
    return S * q5(h)


def delta2_residue(h=H):
    tt = verify_two_torsion_root(jacobian_model(*quartic_invariants(slice_quartic(h))), h)
    return tt.Delta - 12960000 * S * slice_T(h) ** 2 * q5(h)


def verify_delta2_factorization(h=H) -> bool:
    return delta2_residue(h) == 0


def universal_jacobian() -> WeierstrassModel:
    """h-free model over Q(x), x = S / h."""
    x1 = XN + 1
    return WeierstrassModel(
        a4=-864000 * XN * x1**2 * (3 * x1**5 + 2 * XN**5),
        a6=-345600000 * x1**3 * XN**4 * (9 * x1**5 + XN**5),
    )


def universality_residues() -> tuple:
    """a4(hx, h) - h^8 a4u(x) and a6(hx, h) - h^12 a6u(x)."""
    gen = explicit_jacobian(H)
    uni = universal_jacobian()
    hx = H * XN
    r4 = gen.a4.substitute("S", hx) - H**8 * uni.a4
    r6 = gen.a6.substitute("S", hx) - H**12 * uni.a6
    return r4, r6


def verify_universality_scaling() -> bool:
    r4, r6 = universality_residues()
    return r4 == 0 and r6 == 0


def check_no_rational_infinity(h: int, a: Poly | None = None) -> bool:
    """True iff the leading coefficient a(S) of the quartic is not a square in Q(S).

    The two points above u = infinity are defined over Q(S)(sqrt(a(S))), so a
    non-square leading coefficient rules out rational points at infinity.
    """
    if a is None:
        if h == 0:
            raise DegenerateSliceError("h = 0: the discriminant is identically a square")
        a = slice_quartic(h).a
    # the odd-multiplicity part decides the square class up to a constant
    from .polyring import is_square_poly

    return odd_part(a).degree > 0 or not is_square_poly(a)


def evaluate_int(f, **values) -> int | Fraction:
    """Evaluate a (nested) polynomial at integer/rational values of its variables."""
    out = f
    for var, val in values.items():
        if isinstance(out, Poly):
            out = out.substitute(var, val)
    return as_scalar(out)
