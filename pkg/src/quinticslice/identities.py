"""Named polynomial identities checked by exact equality.

Each check returns a residue (anything equal to 0 means pass).  The suite is
what ``quinticslice verify`` runs; a tampered fixture shows up as a failure
of the check that reads it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import golden
from . import jacobian as jac
from .genus2 import normalized_sextic, universal_curve
from .polyring import (
    Poly,
    find_certifying_prime,
    normalize,
    parse_poly,
    to_text,
    verify_factorization,
)
from .quintic import mdo_verify_congruence
from .specialization import B_UNIT_PER_H, build_divisor_set, q4

S, H, U = jac.S, jac.H, jac.U


@dataclass(frozen=True)
class IdentityResult:
    name: str
    passed: bool
    residue: str | None = None
    detail: str | None = None

    def to_dict(self) -> dict:
        d = {"name": self.name, "passed": self.passed}
        if self.residue is not None:
            d["residue"] = self.residue
        if self.detail is not None:
            d["detail"] = self.detail
        return d


def _L(Sv=S, u=U):
    return Sv**5 + 10 * Sv**3 * u**2 + 5 * Sv * u**4


def _bool(ok: bool, what: str = "false"):
    return 0 if ok else what


def check_mdo():
    bad = [p for p in (2, 3, 5) if not mdo_verify_congruence(p)]
    return _bool(not bad, f"x^5 != x mod {bad}")


def check_symmetrization():
    # 16(a^5 + b^5) with a = (S - u)/2, b = (S + u)/2
    a = (S - U) / 2
    b = (S + U) / 2
    return 16 * (a**5 + b**5) - _L()


def check_discriminant():
    T = jac.slice_T(H)
    L = _L()
    return (10 * T**3) ** 2 - 4 * (5 * T) * (T**5 - L) - (80 * T**6 + 20 * T * L)


def check_h0_square():
    T = jac.slice_T(0)
    D = 80 * T**6 + 20 * T * _L()
    return D - 100 * S**2 * (S**2 + U**2) ** 2


def check_quartic_coefficients():
    T = jac.slice_T(H)
    D = 80 * T**6 + 20 * T * _L()
    return D - jac.slice_quartic(H).as_poly()


def check_invariant_I():
    I, _ = jac.quartic_invariants(jac.slice_quartic(30))
    return I - jac.explicit_invariants(30)[0]


def check_invariant_J():
    _, J = jac.quartic_invariants(jac.slice_quartic(30))
    return J - jac.explicit_invariants(30)[1]


def check_jacobian_general():
    m = jac.jacobian_model(*jac.quartic_invariants(jac.slice_quartic(H)))
    e = jac.explicit_jacobian(H)
    r4, r6 = m.a4 - e.a4, m.a6 - e.a6
    return 0 if r4 == 0 and r6 == 0 else (r4 if r4 != 0 else r6)


def check_e1_h30():
    m = jac.jacobian_model(*jac.quartic_invariants(jac.slice_quartic(30)))
    return jac.two_torsion_residue(m, 30)


def check_e1_symbolic():
    m = jac.jacobian_model(*jac.quartic_invariants(jac.slice_quartic(H)))
    return jac.two_torsion_residue(m, H)


def check_cubic_split():
    return jac.cubic_split_residue(jac.explicit_jacobian(H), H)


def _tt30():
    return jac.verify_two_torsion_root(jac.explicit_jacobian(30), 30)


def check_A_explicit(fx):
    A = _tt30().A
    r = A - (-3600 * S**3 * (S + 30))
    return r if r != 0 else A - golden.poly(fx, "A_explicit")


def check_B_explicit(fx):
    return _tt30().B - golden.poly(fx, "B_explicit")


def check_Delta_explicit(fx):
    return _tt30().Delta - golden.poly(fx, "Delta_explicit")


def check_B_factorization(fx):
    claim = golden.factor_claim(fx["B_factorization"])
    B = _tt30().B
    return _bool(verify_factorization(B, claim), f"B != {claim.unit} * prod(factors)")


def check_Delta_factorization(fx):
    claim = golden.factor_claim(fx["Delta_factorization"])
    return _bool(verify_factorization(_tt30().Delta, claim), f"Delta != {claim.unit} * prod(factors)")


def check_B_factor_symbolic():
    tt = jac.verify_two_torsion_root(jac.explicit_jacobian(H), H)
    return tt.B - B_UNIT_PER_H * H * S * (S + H) ** 2 * q4(H)


def check_irreducible(fx):
    primes = {}
    for key in ("Q4", "Q5"):
        p = find_certifying_prime(golden.poly(fx, key))
        if p is None:
            return f"{key}: no certifying prime below 500"
        primes[key] = p
    return 0, ", ".join(f"{k} irreducible mod {p}" for k, p in primes.items())


def check_delta2_symbolic():
    return jac.delta2_residue(H)


def check_q5_h30(fx):
    return jac.q5(30) - golden.poly(fx, "Q5")


def check_q4_h30(fx):
    return normalize(q4(30)) - golden.poly(fx, "Q4")


def check_universality():
    r4, r6 = jac.universality_residues()
    return r4 if r4 != 0 else r6


def check_no_infinity():
    return _bool(jac.check_no_rational_infinity(30), "a(S) is a square in Q(S)")


def check_divisor_count(fx):
    n = len(build_divisor_set(30, expected=None))
    return _bool(n == fx["divisor_count"], f"{n} divisors, expected {fx['divisor_count']}")


def check_universal_curve(fx):
    universal_curve()
    return parse_poly(fx["genus2"]["curve"], "x") - 25 * normalized_sextic()


def check_p_homogeneity():
    xn = jac.XN
    lhs = jac.p_poly(H).substitute("S", H * xn)
    return lhs - H**6 * normalized_sextic()


CHECKS: list[tuple[str, Callable, bool]] = [
    ("mdo_congruence_2_3_5", check_mdo, False),
    ("symmetrization_L", check_symmetrization, False),
    ("discriminant_DZ", check_discriminant, False),
    ("h0_discriminant_square", check_h0_square, False),
    ("binary_quartic_coefficients", check_quartic_coefficients, False),
    ("invariant_I_h30", check_invariant_I, False),
    ("invariant_J_h30", check_invariant_J, False),
    ("jacobian_general_h", check_jacobian_general, False),
    ("two_torsion_root_h30", check_e1_h30, False),
    ("two_torsion_root_symbolic_h", check_e1_symbolic, False),
    ("cubic_split_symbolic_h", check_cubic_split, False),
    ("A_explicit", check_A_explicit, True),
    ("B_explicit", check_B_explicit, True),
    ("Delta_explicit", check_Delta_explicit, True),
    ("B_factorization_2^9_3^5_5^5", check_B_factorization, True),
    ("Delta_factorization_2^8_3^4_5^4", check_Delta_factorization, True),
    ("B_factorization_symbolic_h", check_B_factor_symbolic, False),
    ("Q4_matches_h30", check_q4_h30, True),
    ("Q5_matches_h30", check_q5_h30, True),
    ("Q4_Q5_irreducible_mod_p", check_irreducible, True),
    ("delta2_factor_Q5", check_delta2_symbolic, False),
    ("universality_h8_h12", check_universality, False),
    ("no_rational_points_at_infinity_h30", check_no_infinity, False),
    ("squarefree_divisor_count", check_divisor_count, True),
    ("universal_genus2_clearing", check_universal_curve, True),
    ("P_homogeneity", check_p_homogeneity, False),
]


def _residue_text(r) -> str:
    if isinstance(r, str):
        return r
    if isinstance(r, Poly):
        return to_text(r)
    if isinstance(r, Fraction):
        return str(r)
    return repr(r)


def run_identity_suite(fixtures: dict | None = None) -> list[IdentityResult]:
    fx = fixtures if fixtures is not None else golden.load()
    out = []
    for name, fn, needs_fx in CHECKS:
        detail = None
        try:
            r = fn(fx) if needs_fx else fn()
        except jac.IdentityError as err:
            out.append(IdentityResult(name, False, _residue_text(err.residue)))
            continue
        except (KeyError, ValueError, ArithmeticError) as err:
            out.append(IdentityResult(name, False, None, f"{type(err).__name__}: {err}"))
            continue
        if isinstance(r, tuple):
            r, detail = r
        ok = (r == 0) if not isinstance(r, str) else False
        out.append(IdentityResult(name, ok, None if ok else _residue_text(r), detail))
    return out
