from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from quinticslice.polyring import (
    FactorClaim,
    Poly,
    divides,
    find_certifying_prime,
    is_square_poly,
    mod_p_irreducible,
    normalize,
    odd_part,
    parse_poly,
    poly_divmod,
    poly_gcd,
    squarefree_decomposition,
    squarefree_part,
    to_text,
    verify_factorization,
)

from _oracles import to_sympy

Ssym = sp.Symbol("S")
coeff = st.integers(min_value=-50, max_value=50)
polys = st.lists(coeff, min_size=0, max_size=7).map(lambda cs: Poly(cs, "S"))
nonzero = polys.filter(lambda p: not p.is_zero())

Q4 = "S^4 + 60*S^3 + 1800*S^2 + 27000*S + 162000"
Q5 = "S^5 + 120*S^4 + 7200*S^3 + 216000*S^2 + 3240000*S + 19440000"


def sym(f):
    return sp.expand(to_sympy(f))


@given(polys, polys)
def test_ring_ops_match_sympy(f, g):
    assert sym(f + g) == sp.expand(sym(f) + sym(g))
    assert sym(f - g) == sp.expand(sym(f) - sym(g))
    assert sym(f * g) == sp.expand(sym(f) * sym(g))


@given(polys, st.integers(min_value=0, max_value=4))
def test_pow(f, n):
    assert sym(f**n) == sp.expand(sym(f) ** n)


@given(polys, nonzero)
def test_divmod(f, g):
    q, r = poly_divmod(f, g)
    assert q * g + r == f
    assert r.degree < g.degree
    sq, sr = sp.div(sym(f), sym(g), Ssym)
    assert sym(q) == sp.expand(sq) and sym(r) == sp.expand(sr)


@given(nonzero, nonzero, nonzero)
@settings(max_examples=150)
def test_gcd_matches_sympy(a, b, c):
    f, g = a * c, b * c
    ours = normalize(poly_gcd(f, g))
    theirs = sp.Poly(sp.gcd(sym(f), sym(g)), Ssym)
    assert divides(ours, f) and divides(ours, g)
    assert ours.degree == theirs.degree()
    assert sp.simplify(sym(ours) * theirs.LC() - theirs.as_expr() * ours.lc) == 0


@given(nonzero, nonzero)
@settings(max_examples=150)
def test_squarefree_decomposition(a, b):
    f = a * b**2
    unit, parts = squarefree_decomposition(f)
    prod = Poly((unit,), "S")
    for i, p in enumerate(parts):
        prod = prod * p ** (i + 1)
    assert prod == f
    for i, p in enumerate(parts):
        for q in parts[i + 1 :]:
            assert poly_gcd(p, q).degree <= 0
    rad = sp.Poly(sp.sqf_part(sym(f)), Ssym) if f.degree > 0 else None
    if rad is not None:
        assert squarefree_part(f).degree == rad.degree()


def test_odd_part_and_square_test():
    S = Poly.gen("S")
    assert is_square_poly(4 * S**2)
    assert not is_square_poly(2 * S**2)
    assert odd_part(4 * S**2) == 1
    assert odd_part(S**3 * (S + 1) ** 2) == S
    assert not is_square_poly(100 * S * (S + 30))


def test_nested_variables():
    S, h, u = Poly.gen("S"), Poly.gen("h"), Poly.gen("u")
    f = (S + h) ** 2 * u + h
    assert f.var == "u"
    g = f.substitute("h", 3)
    assert sp.expand(to_sympy(g) - to_sympy((S + 3) ** 2 * u + 3)) == 0
    assert f.substitute("S", h).substitute("u", 1) == 4 * h**2 + h
    assert f.substitute("S", 0).substitute("u", 2) == 2 * h**2 + h


def test_mixed_same_rank_raises():
    with pytest.raises(TypeError):
        Poly.gen("S") + Poly.gen("x")


@given(st.lists(st.fractions(max_denominator=20), max_size=6))
def test_text_roundtrip(cs):
    f = Poly(cs, "S")
    assert parse_poly(to_text(f), "S") == f


def test_to_text_examples():
    S = Poly.gen("S")
    assert to_text(-3600 * S**4 - 108000 * S**3) == "-3600*S^4 - 108000*S^3"
    assert to_text(Poly((), "S")) == "0"


def test_normalize():
    f = Poly((Fraction(1, 2), Fraction(-3, 4)), "S")
    assert normalize(f).coeffs == (-2, 3)
    assert normalize(-6 * Poly.gen("S") - 4) == 3 * Poly.gen("S") + 2
    with pytest.raises(ValueError):
        normalize(Poly((), "S"))


def test_exact_division():
    S = Poly.gen("S")
    assert (S**2 - 1) / (S - 1) == S + 1
    with pytest.raises(ArithmeticError):
        (S**2 + 1) / (S - 1)


@pytest.mark.parametrize("text", [Q4, Q5])
def test_quartic_quintic_irreducible(text):
    f = parse_poly(text)
    p = find_certifying_prime(f)
    assert p is not None and mod_p_irreducible(f, p)
    # independent route: factorization over Q
    _, facs = sp.factor_list(sym(f), Ssym)
    assert len(facs) == 1 and facs[0][1] == 1


@given(st.lists(st.integers(0, 6), min_size=2, max_size=6).filter(lambda c: c[-1] % 7))
@settings(max_examples=200)
def test_mod_p_irreducible_matches_sympy(cs):
    f = Poly(cs, "S")
    assume(f.degree >= 1)
    _, facs = sp.factor_list(sym(f), Ssym, modulus=7)
    expected = len(facs) == 1 and facs[0][1] == 1
    assert mod_p_irreducible(f, 7) == expected


def test_mod_p_requires_unit_leading_coefficient():
    with pytest.raises(ValueError):
        mod_p_irreducible(Poly((1, 0, 7), "S"), 7)


def test_factor_claim():
    S = Poly.gen("S")
    claim = FactorClaim(-2, ((S, 1), (S + 1, 2)))
    assert verify_factorization(-2 * S * (S + 1) ** 2, claim)
    assert not verify_factorization(2 * S * (S + 1) ** 2, claim)
    with pytest.raises(ValueError):
        FactorClaim(1, ((S, 0),))
