"""Exact symbolic algebra over Airy terms.

The atoms are z^j Ai'(z)^k / Ai(z)^ell, encoded as AiryTerm(j, k, ell), with
exact rational coefficients.  Two operations generate everything: the
derivative rule (using Ai'' = z Ai)

    d/dz [z^j Ai'^k / Ai^ell] = j (j-1,k,ell) + k (j+1,k-1,ell-1)
                                - ell (j,k+1,ell+1)

and the reduction recurrence for contour integrals of terms with ell > k,

    I(j,k,ell) = (j/(ell-1)) I(j-1,k-1,ell-1)
               + ((k-1)/(ell-1)) I(j+1,k-2,ell-2)        (k >= 2)
    I(j,1,ell) = (j/(ell-1)) I(j-1,0,ell-1)
    I(j,k,ell) = 0 whenever j < 0 or k < 0,

which preserves ell - k and terminates at k = 0.  Iterating the derivative
on 1/Ai and reducing the product with a further 1/Ai factor produces the
moment polynomials p_n with p_0 = 1, p_2 = -z/3, p_4 = 7 z^2 / 15, ...
All arithmetic is exact (fractions.Fraction); floats never enter.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple, Union

from .errors import NotIntegrable

RationalLike = Union[int, Fraction]


class AiryTerm(NamedTuple):
    """z^j * Ai'(z)^k / Ai(z)^ell."""

    j: int
    k: int
    ell: int


def _as_fraction(c: RationalLike) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int) and not isinstance(c, bool):
        return Fraction(c)
    raise TypeError(f"coefficient must be int or Fraction, got {type(c).__name__}")


def _as_term(t) -> AiryTerm:
    if not isinstance(t, AiryTerm):
        t = AiryTerm(*t)
    if not all(isinstance(v, int) and not isinstance(v, bool) for v in t):
        raise TypeError("AiryTerm indices must be integers")
    if t.j < 0 or t.k < 0:
        raise ValueError(f"AiryTerm powers j, k must be nonnegative: {t}")
    return t


class TermSum:
    """Finite rational linear combination of AiryTerm atoms.

    Immutable; terms with zero coefficient are dropped at construction, and
    iteration is in a fixed sorted order so results never depend on how the
    sum was assembled.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Union[dict, Iterable[tuple]] = ()):
        acc: dict[AiryTerm, Fraction] = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for t, c in items:
            t = _as_term(t)
            c = _as_fraction(c)
            c = acc.get(t, Fraction(0)) + c
            if c:
                acc[t] = c
            else:
                acc.pop(t, None)
        self._terms = acc

    def items(self) -> Iterator[tuple[AiryTerm, Fraction]]:
        return iter(sorted(self._terms.items()))

    def coefficient(self, t) -> Fraction:
        return self._terms.get(_as_term(t), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TermSum):
            return NotImplemented
        return self._terms == other._terms

    def __add__(self, other: "TermSum") -> "TermSum":
        if not isinstance(other, TermSum):
            return NotImplemented
        merged = dict(self._terms)
        for t, c in other._terms.items():
            c = merged.get(t, Fraction(0)) + c
            if c:
                merged[t] = c
            else:
                merged.pop(t, None)
        out = TermSum.__new__(TermSum)
        out._terms = merged
        return out

    def __neg__(self) -> "TermSum":
        return self.scale(-1)

    def __sub__(self, other: "TermSum") -> "TermSum":
        return self + (-other)

    def scale(self, c: RationalLike) -> "TermSum":
        c = _as_fraction(c)
        out = TermSum.__new__(TermSum)
        out._terms = {} if c == 0 else {t: c * v for t, v in self._terms.items()}
        return out

    def shift_ell(self, d: int) -> "TermSum":
        """Multiply every atom by Ai^{-d} (d = 1 appends one 1/Ai factor)."""
        out = TermSum.__new__(TermSum)
        out._terms = {AiryTerm(t.j, t.k, t.ell + d): v for t, v in self._terms.items()}
        return out

    def __repr__(self) -> str:
        if not self._terms:
            return "TermSum()"
        parts = [f"{c!s}*(j={t.j},k={t.k},ell={t.ell})" for t, c in self.items()]
        return "TermSum[" + " + ".join(parts) + "]"


def term_sum_derivative(s: TermSum) -> TermSum:
    """d/dz of a TermSum, via Ai'' = z Ai."""
    acc: dict[AiryTerm, Fraction] = {}

    def add(t: AiryTerm, c: Fraction) -> None:
        v = acc.get(t, Fraction(0)) + c
        if v:
            acc[t] = v
        else:
            acc.pop(t, None)

    for (j, k, ell), c in s.items():
        if j >= 1:
            add(AiryTerm(j - 1, k, ell), j * c)
        if k >= 1:
            add(AiryTerm(j + 1, k - 1, ell - 1), k * c)
        if ell != 0:
            add(AiryTerm(j, k + 1, ell + 1), -ell * c)
    out = TermSum.__new__(TermSum)
    out._terms = acc
    return out


def term_sum_product(a: TermSum, b: TermSum) -> TermSum:
    """Pointwise product; atoms multiply by adding exponents."""
    acc: dict[AiryTerm, Fraction] = {}
    for ta, ca in a.items():
        for tb, cb in b.items():
            t = AiryTerm(ta.j + tb.j, ta.k + tb.k, ta.ell + tb.ell)
            v = acc.get(t, Fraction(0)) + ca * cb
            if v:
                acc[t] = v
            else:
                acc.pop(t, None)
    out = TermSum.__new__(TermSum)
    out._terms = acc
    return out


@lru_cache(maxsize=None)
def inv_ai_derivative(m: int) -> TermSum:
    """m-th derivative of 1/Ai as a TermSum.

    Every term has ell = k + 1, 2j + k <= m, integer coefficients, and
    2j + k == m (mod 3); these are checked by the test suite, not assumed
    here.
    """
    if isinstance(m, bool) or not isinstance(m, int):
        raise ValueError("m must be an integer")
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m == 0:
        return TermSum([(AiryTerm(0, 0, 1), 1)])
    return term_sum_derivative(inv_ai_derivative(m - 1))


_REDUCE_MEMO: dict[AiryTerm, TermSum] = {}


def reduce_integral(t) -> TermSum:
    """Rewrite the contour integral of one atom as a sum of k = 0 atoms.

    Valid only for ell > k (the boundary terms of the underlying
    integration by parts vanish there); anything else raises NotIntegrable.
    The result preserves ell - k, so atoms with ell = k + 2 land on
    (j, 0, 2), the moment-polynomial normal form.
    """
    t = _as_term(t)
    if t.ell <= t.k:
        raise NotIntegrable(f"reduction needs ell > k, got {t}")
    return _reduce_cached(t)


def _reduce_cached(t: AiryTerm) -> TermSum:
    hit = _REDUCE_MEMO.get(t)
    if hit is not None:
        return hit
    j, k, ell = t
    if k == 0:
        out = TermSum([(t, 1)])
    elif k == 1:
        # I(j,1,ell) = (j/(ell-1)) I(j-1,0,ell-1); zero when j = 0
        if j == 0:
            out = TermSum()
        else:
            out = _reduce_cached(AiryTerm(j - 1, 0, ell - 1)).scale(
                Fraction(j, ell - 1))
    else:
        out = TermSum()
        if j >= 1:
            out = out + _reduce_cached(AiryTerm(j - 1, k - 1, ell - 1)).scale(
                Fraction(j, ell - 1))
        out = out + _reduce_cached(AiryTerm(j + 1, k - 2, ell - 2)).scale(
            Fraction(k - 1, ell - 1))
    _REDUCE_MEMO[t] = out
    return out


def reduce_term_sum(s: TermSum) -> TermSum:
    out = TermSum()
    for t, c in s.items():
        out = out + reduce_integral(t).scale(c)
    return out


class RationalPoly:
    """Polynomial in z with Fraction coefficients, stored sparsely."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Union[dict, Iterable[tuple]] = ()):
        acc: dict[int, Fraction] = {}
        items = coeffs.items() if isinstance(coeffs, dict) else coeffs
        for p, c in items:
            if isinstance(p, bool) or not isinstance(p, int) or p < 0:
                raise ValueError(f"power must be a nonnegative integer, got {p!r}")
            c = _as_fraction(c)
            c = acc.get(p, Fraction(0)) + c
            if c:
                acc[p] = c
            else:
                acc.pop(p, None)
        self._coeffs = acc

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    def degree(self) -> int:
        """Degree, with the convention deg 0 = -1."""
        return max(self._coeffs) if self._coeffs else -1

    def coefficient(self, p: int) -> Fraction:
        return self._coeffs.get(p, Fraction(0))

    def items(self) -> Iterator[tuple[int, Fraction]]:
        return iter(sorted(self._coeffs.items()))

    def float_coeffs(self) -> list[float]:
        """Dense ascending coefficient list as floats (for quadrature)."""
        if not self._coeffs:
            return [0.0]
        out = [0.0] * (self.degree() + 1)
        for p, c in self._coeffs.items():
            out[p] = float(c)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __repr__(self) -> str:
        return f"RationalPoly({self!s})"

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for p, c in sorted(self._coeffs.items(), reverse=True):
            mag = str(abs(c))
            if p == 0:
                body = mag
            else:
                zpow = "z" if p == 1 else f"z^{p}"
                body = zpow if abs(c) == 1 else f"{mag}*{zpow}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)


def term_sum_to_poly(s: TermSum) -> RationalPoly:
    """Read off a polynomial from a fully reduced sum of (j, 0, 2) atoms."""
    coeffs: dict[int, Fraction] = {}
    for t, c in s.items():
        if t.k != 0 or t.ell != 2:
            raise AssertionError(f"not in (j, 0, 2) normal form: {t}")
        coeffs[t.j] = c
    return RationalPoly(coeffs)


@lru_cache(maxsize=None)
def moment_polynomial(n: int) -> RationalPoly:
    """The polynomial p_n with E V^n = (1/2 pi i) * integral of p_n / Ai^2.

    Built exactly: differentiate 1/Ai n times, multiply by another 1/Ai,
    and reduce the contour integral of each term to the (j, 0, 2) form.
    Odd n yields the zero polynomial.
    """
    if isinstance(n, bool) or not isinstance(n, int):
        raise ValueError("n must be an integer")
    if n < 0:
        raise ValueError("n must be nonnegative")
    integrand = inv_ai_derivative(n).shift_ell(1)
    return term_sum_to_poly(reduce_term_sum(integrand))


def moment_polynomial_json(n: int) -> dict:
    """JSON-ready exact form: {"n": n, "coeffs": {"j": "num/den"}}."""
    p = moment_polynomial(n)
    return {
        "n": n,
        "coeffs": {str(j): f"{c.numerator}/{c.denominator}" for j, c in p.items()},
    }


_SINH_B: list[Fraction] = [Fraction(1)]


def sinh_gf_coefficient(n: int) -> Fraction:
    """n! times the x^n coefficient of x/sinh(x).

    This is the conjectured closed form for the leading coefficient of p_n
    (n even); odd n gives 0.  Computed by exact power-series inversion of
    sinh(x)/x = sum x^{2m}/(2m+1)!.
    """
    if isinstance(n, bool) or not isinstance(n, int):
        raise ValueError("n must be an integer")
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n % 2:
        return Fraction(0)
    m_max = n // 2
    while len(_SINH_B) <= m_max:
        m = len(_SINH_B)
        acc = Fraction(0)
        for r in range(1, m + 1):
            acc += Fraction(1, math.factorial(2 * r + 1)) * _SINH_B[m - r]
        _SINH_B.append(-acc)
    return math.factorial(n) * _SINH_B[m_max]


@dataclass(frozen=True)
class ConjectureRow:
    """Checks for one n: p_n vanishes (odd) / has exact degree n/2 with the
    predicted leading coefficient and mod-3 support pattern (even)."""

    n: int
    poly_is_zero: bool
    degree: int
    degree_ok: bool
    leading: Fraction
    leading_ok: bool
    mod3_ok: bool

    @property
    def ok(self) -> bool:
        return self.degree_ok and self.leading_ok and self.mod3_ok


@dataclass(frozen=True)
class ConjectureReport:
    max_n: int
    rows: tuple[ConjectureRow, ...]

    @property
    def odd_all_zero(self) -> bool:
        return all(r.poly_is_zero for r in self.rows if r.n % 2)

    @property
    def all_ok(self) -> bool:
        return all(r.ok for r in self.rows)

    def failures(self) -> list[int]:
        return [r.n for r in self.rows if not r.ok]


def verify_conjectures(max_n: int) -> ConjectureReport:
    """Exactly test the structural conjectures for every n <= max_n.

    Odd n: p_n = 0.  Even n: deg p_n = n/2 exactly, the leading coefficient
    equals sinh_gf_coefficient(n), and only powers j == n/2 (mod 3) occur.
    """
    if isinstance(max_n, bool) or not isinstance(max_n, int) or max_n < 0:
        raise ValueError("max_n must be a nonnegative integer")
    rows = []
    for n in range(max_n + 1):
        p = moment_polynomial(n)
        if n % 2:
            lead = p.coefficient(p.degree()) if not p.is_zero else Fraction(0)
            rows.append(ConjectureRow(
                n=n, poly_is_zero=p.is_zero, degree=p.degree(),
                degree_ok=p.is_zero, leading=lead, leading_ok=p.is_zero,
                mod3_ok=p.is_zero))
            continue
        half = n // 2
        deg = p.degree()
        lead = p.coefficient(half)
        mod3 = all(j % 3 == half % 3 for j, _ in p.items())
        rows.append(ConjectureRow(
            n=n, poly_is_zero=p.is_zero, degree=deg, degree_ok=(deg == half),
            leading=lead, leading_ok=(lead == sinh_gf_coefficient(n)),
            mod3_ok=mod3))
    return ConjectureReport(max_n=max_n, rows=tuple(rows))
