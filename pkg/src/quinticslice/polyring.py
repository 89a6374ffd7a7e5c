"""Dense univariate polynomials over a pluggable coefficient ring.

Coefficients may be ``int``, ``Fraction`` or another :class:`Poly` in a
different variable, which gives bivariate (and deeper) polynomials by
nesting.  When two polynomials in different variables meet, the one whose
variable ranks higher in ``VARIABLE_RANK`` becomes the outer polynomial and
the other is treated as a coefficient, so ``S + h`` is a polynomial in ``S``
with coefficients in ``Z[h]`` regardless of operand order.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .exactmath import primes_below

# Higher rank = outer variable.
VARIABLE_RANK = {"h": 0, "S": 1, "x": 1, "u": 2, "X": 3}


def _rank(var: str) -> int:
    return VARIABLE_RANK.get(var, 1)


def _tidy(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class Poly:
    """Immutable dense polynomial, coefficients lowest degree first."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "S"):
        cs = [_tidy(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    @classmethod
    def gen(cls, var: str = "S") -> "Poly":
        return cls((0, 1), var)

    @classmethod
    def const(cls, c, var: str = "S") -> "Poly":
        return cls((c,), var)

    # ---- basic accessors -------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree in the outer variable; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    # ---- coercion --------------------------------------------------------

    def _other_is_outer(self, other) -> bool:
        if not isinstance(other, Poly) or other.var == self.var:
            return False
        ro, rs = _rank(other.var), _rank(self.var)
        if ro == rs:
            raise TypeError(f"cannot mix polynomial variables {self.var!r} and {other.var!r}")
        return ro > rs

    def _same(self, other) -> bool:
        return isinstance(other, Poly) and other.var == self.var

    # ---- ring operations -------------------------------------------------

    def __neg__(self):
        return Poly([-c for c in self.coeffs], self.var)

    def __pos__(self):
        return self

    def __add__(self, other):
        if self._other_is_outer(other):
            return other.__radd__(self)
        if self._same(other):
            n = max(len(self.coeffs), len(other.coeffs))
            return Poly([self[i] + other[i] for i in range(n)], self.var)
        if not self.coeffs:
            return Poly((other,), self.var)
        return Poly((self.coeffs[0] + other,) + self.coeffs[1:], self.var)

    def __radd__(self, other):
        if not self.coeffs:
            return Poly((other,), self.var)
        return Poly((other + self.coeffs[0],) + self.coeffs[1:], self.var)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self).__radd__(other)

    def __mul__(self, other):
        if self._other_is_outer(other):
            return other.__rmul__(self)
        if self._same(other):
            if not self.coeffs or not other.coeffs:
                return Poly((), self.var)
            out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a == 0:
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
            return Poly(out, self.var)
        return Poly([c * other for c in self.coeffs], self.var)

    def __rmul__(self, other):
        return Poly([other * c for c in self.coeffs], self.var)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial exponent must be a nonnegative int")
        result = Poly((1,), self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        """Division by a scalar (exact over the rationals)."""
        if isinstance(other, Poly):
            q, r = divmod(self, other)
            if r:
                raise ArithmeticError("polynomial division is not exact")
            return q
        return Poly([_scalar_div(c, other) for c in self.coeffs], self.var)

    def __divmod__(self, other: "Poly"):
        return poly_divmod(self, other)

    def __floordiv__(self, other: "Poly"):
        return poly_divmod(self, other)[0]

    def __mod__(self, other: "Poly"):
        return poly_divmod(self, other)[1]

    # ---- comparison ------------------------------------------------------

    def __eq__(self, other):
        if self._same(other):
            return self.coeffs == other.coeffs
        if len(self.coeffs) > 1:
            return False
        c = self.coeffs[0] if self.coeffs else 0
        return c == other

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.coeffs[0] if self.coeffs else 0)
        return hash((self.var, self.coeffs))

    # ---- calculus / substitution ----------------------------------------

    def __call__(self, value):
        return self.evaluate(value)

    def evaluate(self, value):
        """Horner evaluation; ``value`` may be a scalar or a polynomial."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def compose(self, inner: "Poly") -> "Poly":
        out = self.evaluate(inner)
        return out if isinstance(out, Poly) else Poly((out,), self.var)

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:], self.var)

    def substitute(self, var: str, value):
        """Substitute ``value`` for variable ``var`` wherever it occurs."""
        if self.var == var:
            return self.evaluate(value)
        acc = 0
        for c in reversed(self.coeffs):
            if isinstance(c, Poly):
                c = c.substitute(var, value)
            acc = acc * Poly.gen(self.var) + c
        return acc

    def map_coeffs(self, fn) -> "Poly":
        return Poly([fn(c) for c in self.coeffs], self.var)

    # ---- text ------------------------------------------------------------

    def __str__(self):
        return to_text(self)

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r}, var={self.var!r})"


def _scalar_div(c, d):
    if isinstance(c, Poly):
        return c / d
    return _tidy(Fraction(c) / Fraction(d))


def as_poly(f, var: str = "S") -> Poly:
    return f if isinstance(f, Poly) else Poly((f,), var)


def poly_divmod(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    """Euclidean division with rational (field) coefficients."""
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    var = f.var
    rem = [Fraction(c) for c in f.coeffs]
    gl = Fraction(g.lc)
    dg = g.degree
    q = [Fraction(0)] * max(len(rem) - dg, 0)
    for k in range(len(rem) - 1 - dg, -1, -1):
        coef = rem[k + dg] / gl
        q[k] = coef
        if coef:
            for j, b in enumerate(g.coeffs):
                rem[k + j] -= coef * b
    return Poly(q, var), Poly(rem[:dg] if dg > 0 else [], var)


def divides(g: Poly, f: Poly) -> bool:
    return poly_divmod(f, g)[1].is_zero()


# ---- integer-coefficient helpers -----------------------------------------


def _require_int_coeffs(f: Poly) -> None:
    for c in f.coeffs:
        if not isinstance(c, int):
            raise TypeError(f"expected integer coefficients, got {c!r}")


def content(f: Poly) -> int:
    _require_int_coeffs(f)
    g = 0
    for c in f.coeffs:
        g = math.gcd(g, c)
    return g


def primitive_part(f: Poly) -> Poly:
    c = content(f)
    if c == 0:
        return f
    return Poly([x // c for x in f.coeffs], f.var)


def normalize(f: Poly) -> Poly:
    """Primitive part of ``f`` with positive leading coefficient."""
    if f.is_zero():
        raise ValueError("cannot normalize the zero polynomial")
    f = clear_denominators(f)
    g = primitive_part(f)
    return -g if g.lc < 0 else g


def clear_denominators(f: Poly) -> Poly:
    dens = [Fraction(c).denominator for c in f.coeffs]
    m = math.lcm(*dens) if dens else 1
    return Poly([_tidy(Fraction(c) * m) for c in f.coeffs], f.var)


def pseudo_rem(f: Poly, g: Poly) -> Poly:
    """lc(g)^(deg f - deg g + 1) * f mod g, computed without division."""
    if g.is_zero():
        raise ZeroDivisionError("pseudo-remainder by zero")
    r = list(f.coeffs)
    dg, lg = g.degree, g.lc
    e = len(r) - 1 - dg + 1
    while len(r) - 1 >= dg and r:
        lr = r[-1]
        shift = len(r) - 1 - dg
        r = [lg * c for c in r]
        for j, b in enumerate(g.coeffs):
            r[shift + j] -= lr * b
        e -= 1
        while r and r[-1] == 0:
            r.pop()
    if e > 0:
        r = [c * lg**e for c in r]
    return Poly(r, f.var)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Normalized gcd in Z[x] by the subresultant remainder sequence."""
    a, b = clear_denominators(a), clear_denominators(b)
    if a.degree < b.degree:
        a, b = b, a
    if b.is_zero():
        return normalize(a) if a else a
    A, B = primitive_part(a), primitive_part(b)
    g = h = 1
    while True:
        delta = A.degree - B.degree
        R = pseudo_rem(A, B)
        if R.is_zero():
            break
        if R.degree == 0:
            B = Poly((1,), a.var)
            break
        A = B
        div = g * h**delta
        B = Poly([c // div for c in R.coeffs], a.var)
        g = A.lc
        if delta:
            h = g**delta // h ** (delta - 1)
    # integer content is dropped: callers only need the gcd up to units
    out = primitive_part(B)
    return -out if out.lc < 0 else out


def squarefree_part(f: Poly) -> Poly:
    """Normalized product of the distinct irreducible factors of ``f``."""
    if f.is_zero():
        raise ValueError("squarefree part of the zero polynomial")
    f = normalize(f)
    if f.degree <= 0:
        return Poly((1,), f.var)
    g = poly_gcd(f, f.derivative())
    return normalize(f // g)


def squarefree_decomposition(f: Poly) -> tuple[Fraction, list[Poly]]:
    """Yun's algorithm: ``f = unit * prod(parts[i] ** (i + 1))``.

    Each part is normalized and squarefree; parts are pairwise coprime.
    """
    if f.is_zero():
        raise ValueError("squarefree decomposition of the zero polynomial")
    var = f.var
    parts: list[Poly] = []
    if f.degree > 0:
        a = poly_gcd(f, f.derivative())
        b = f // a
        c = f.derivative() // a
        d = c - b.derivative()
        while b.degree > 0:
            ai = poly_gcd(b, d)
            b = b // ai
            c = d // ai
            d = c - b.derivative()
            parts.append(normalize(ai))
    prod = Poly((1,), var)
    for i, p in enumerate(parts):
        prod = prod * p ** (i + 1)
    unit = Fraction(f.lc) / Fraction(prod.lc)
    return unit, parts


def odd_part(f: Poly) -> Poly:
    """Normalized product of the factors of odd multiplicity (square-class kernel)."""
    _, parts = squarefree_decomposition(f)
    out = Poly((1,), f.var)
    for i, p in enumerate(parts):
        if i % 2 == 0:
            out = out * p
    return normalize(out)


def is_square_poly(f: Poly) -> bool:
    """True iff ``f`` is the square of a polynomial with rational coefficients."""
    from .exactmath import is_square_rat

    if f.is_zero():
        return True
    unit, parts = squarefree_decomposition(f)
    return all(p.degree <= 0 for p in parts[0::2]) and is_square_rat(unit)


def as_scalar(c):
    """Collapse constant (possibly nested) polynomials to their scalar value."""
    while isinstance(c, Poly):
        if c.degree > 0:
            raise ValueError(f"{c} is not constant")
        c = c.coeffs[0] if c.coeffs else 0
    return c


# ---- factorization claims ------------------------------------------------


@dataclass(frozen=True)
class FactorClaim:
    """unit * prod(factor ** multiplicity)."""

    unit: int | Fraction
    factors: tuple[tuple[Poly, int], ...] = field(default_factory=tuple)

    def __post_init__(self):
        for _, m in self.factors:
            if m < 1:
                raise ValueError("factor multiplicities must be >= 1")

    def expand(self, var: str = "S") -> Poly:
        out = Poly((self.unit,), var)
        for f, m in self.factors:
            out = out * f**m
        return out


def verify_factorization(f: Poly, claim: FactorClaim) -> bool:
    return claim.expand(f.var) == f


# ---- mod-p irreducibility ------------------------------------------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _mod_p(f: Sequence[int], p: int) -> list[int]:
    return _trim([c % p for c in f])


def _pmulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _prem_p(out, m, p)


def _prem_p(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    dm = len(m) - 1
    inv = pow(m[-1], -1, p)
    while len(a) - 1 >= dm and a:
        coef = a[-1] * inv % p
        shift = len(a) - 1 - dm
        for j, b in enumerate(m):
            a[shift + j] = (a[shift + j] - coef * b) % p
        _trim(a)
    return a


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _prem_p(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def _frobenius_power(x_pow: list[int], m: list[int], p: int) -> list[int]:
    """Raise a residue to the p-th power modulo m."""
    result, base, e = [1], x_pow, p
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, p)
        e >>= 1
        if e:
            base = _pmulmod(base, base, m, p)
    return result


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def mod_p_irreducible(f: Poly, p: int) -> bool:
    """Rabin's irreducibility test for ``f`` reduced modulo the prime ``p``.

    A True answer certifies irreducibility of ``f`` over the rationals
    (the leading coefficient survives reduction, so the degree is kept).
    """
    _require_int_coeffs(f)
    if f.lc % p == 0:
        raise ValueError(f"p={p} divides the leading coefficient")
    m = _mod_p(f.coeffs, p)
    n = len(m) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    x = [0, 1]
    # powers[k] = x^(p^k) mod m
    powers = [_prem_p(x, m, p)]
    for _ in range(n):
        powers.append(_frobenius_power(powers[-1], m, p))
    diff = _trim([(a - b) % p for a, b in _zip_pad(powers[n], x)])
    if diff:
        return False
    for r in _prime_factors(n):
        k = n // r
        d = _trim([(a - b) % p for a, b in _zip_pad(powers[k], x)])
        if len(_pgcd(m, d, p)) != 1:
            return False
    return True


def _zip_pad(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)]


def find_certifying_prime(f: Poly, bound: int = 500) -> int | None:
    """Smallest prime below ``bound`` at which ``f`` is irreducible mod p."""
    for p in primes_below(bound):
        if f.lc % p and mod_p_irreducible(f, p):
            return p
    return None


# ---- text form -----------------------------------------------------------


def _coeff_text(c) -> str:
    if isinstance(c, Poly):
        return f"({to_text(c)})"
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def to_text(f) -> str:
    """Canonical text ``c_k*S^k + ... + c_0``, highest degree first."""
    if not isinstance(f, Poly):
        return _coeff_text(f)
    if f.is_zero():
        return "0"
    parts: list[str] = []
    for k in range(f.degree, -1, -1):
        c = f.coeffs[k]
        if c == 0:
            continue
        neg = not isinstance(c, Poly) and c < 0
        a = -c if neg else c
        mono = "" if k == 0 else (f.var if k == 1 else f"{f.var}^{k}")
        if not mono:
            body = _coeff_text(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_coeff_text(a)}*{mono}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts)


_TERM = re.compile(r"([+-]?)\s*(\d+(?:/\d+)?)?\s*\*?\s*(?:([A-Za-z])(?:\^(\d+))?)?")


def parse_poly(text: str, var: str = "S") -> Poly:
    """Parse the canonical text form (integer or rational coefficients)."""
    s = text.replace(" ", "")
    if s in ("", "0"):
        return Poly((), var)
    coeffs: dict[int, Fraction] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {s[pos:]!r}")
        sign, num, name, exp = m.groups()
        if name is not None and name != var:
            raise ValueError(f"unexpected variable {name!r} (expected {var!r})")
        if num is None and name is None:
            raise ValueError(f"empty term in {text!r}")
        c = Fraction(num) if num is not None else Fraction(1)
        if sign == "-":
            c = -c
        k = 0 if name is None else int(exp or 1)
        coeffs[k] = coeffs.get(k, 0) + c
        pos = m.end()
    deg = max(coeffs)
    return Poly([coeffs.get(i, 0) for i in range(deg + 1)], var)
