"""Hilbert series, Hilbert function, Hilbert polynomial, degree and genus.

The series of S/I is computed from the leading-term ideal by the pivot
recursion HS(M) = HS(M + (v)) - s*... i.e. numerator N(M) = N(M + (v)) +
s*N(M : v); the Hilbert polynomial is interpolated from exact Hilbert
function values past the generator-degree bound and the witnessed
regularity index is reported.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .ideals import Ideal
from .poly import GREVLEX, MonomialOrder, monomial_divides


class NotHomogeneous(ValueError):
    """Hilbert data requested for an inhomogeneous ideal."""


class NotACurve(ValueError):
    """Degree/genus requested for a non-linear Hilbert polynomial."""


# ---------------------------------------------------------------------------
# Integer polynomial helpers for the series numerator (coefficients in Z)
# ---------------------------------------------------------------------------

def _ip_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def _ip_add(a, b):
    n = max(len(a), len(b))
    return _ip_trim(
        [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
    )


def _ip_shift(a, k):
    if not a:
        return ()
    return _ip_trim([0] * k + list(a))


def _ip_eval_at_one(a):
    return sum(a)


def _ip_div_one_minus_s(a):
    """Exact quotient by (1 - s); requires a(1) = 0."""
    out = []
    carry = 0
    for c in a:
        carry += c
        out.append(carry)
    if carry != 0:
        raise ValueError("numerator not divisible by (1 - s)")
    return _ip_trim(out[:-1]) if out else ()


# ---------------------------------------------------------------------------
# Numerator of the series of a monomial quotient
# ---------------------------------------------------------------------------

_NUMERATOR_CACHE: dict = {}


def _minimalize_monomial_gens(gens):
    gens = sorted(set(gens), key=lambda e: (sum(e), e))
    out = []
    for e in gens:
        if not any(monomial_divides(k, e) for k in out):
            out.append(e)
    return tuple(out)


def monomial_quotient_numerator(gens, arity: int):
    """N(s) with HS(S/M) = N(s)/(1-s)^arity for the monomial ideal M."""
    gens = _minimalize_monomial_gens(gens)
    key = (gens, arity)
    cached = _NUMERATOR_CACHE.get(key)
    if cached is not None:
        return cached
    if not gens:
        result = (1,)
    elif any(sum(e) == 0 for e in gens):
        result = ()
    elif all(sum(e) == 1 for e in gens):
        # coordinate subspace: N = (1-s)^k
        k = len(gens)
        result = _ip_trim([comb(k, i) * (-1) ** i for i in range(k + 1)])
    else:
        # pivot on the most frequent variable among the non-linear generators
        counts = [0] * arity
        for e in gens:
            if sum(e) > 1:
                for i, v in enumerate(e):
                    if v:
                        counts[i] += 1
        pivot = max(range(arity), key=lambda i: (counts[i], -i))
        pv = tuple(1 if i == pivot else 0 for i in range(arity))
        plus = _minimalize_monomial_gens(gens + (pv,))
        quot = tuple(
            tuple(max(0, v - 1) if i == pivot else v for i, v in enumerate(e))
            for e in gens
        )
        result = _ip_add(
            monomial_quotient_numerator(plus, arity),
            _ip_shift(monomial_quotient_numerator(quot, arity), 1),
        )
    _NUMERATOR_CACHE.setdefault(key, result)
    return _NUMERATOR_CACHE[key]


class HilbertData:
    """Series numerator, Hilbert polynomial and witnessed regularity index."""

    __slots__ = ("numerator", "nvars", "hp_coeffs", "regularity_index")

    def __init__(self, numerator, nvars, hp_coeffs, regularity_index):
        self.numerator = numerator
        self.nvars = nvars
        self.hp_coeffs = hp_coeffs
        self.regularity_index = regularity_index

    def hilbert_function(self, t: int) -> int:
        if t < 0:
            raise ValueError("Hilbert function at negative degree")
        n = self.nvars
        return sum(
            c * comb(t - j + n - 1, n - 1)
            for j, c in enumerate(self.numerator)
            if t >= j
        )

    def hp_at(self, t) -> Fraction:
        acc = Fraction(0)
        for i in range(len(self.hp_coeffs) - 1, -1, -1):
            acc = acc * t + self.hp_coeffs[i]
        return acc

    def hp_degree(self) -> int:
        return len(self.hp_coeffs) - 1 if self.hp_coeffs else -1

    def hp_str(self, var: str = "t") -> str:
        if not self.hp_coeffs:
            return "0"
        parts = []
        for i in range(len(self.hp_coeffs) - 1, -1, -1):
            c = self.hp_coeffs[i]
            if c == 0:
                continue
            if i == 0:
                mono = ""
            elif i == 1:
                mono = var
            else:
                mono = f"{var}^{i}"
            if mono and c == 1:
                piece = mono
            elif mono and c == -1:
                piece = f"-{mono}"
            else:
                piece = f"{c}*{mono}" if mono else str(c)
            parts.append(piece)
        if not parts:
            return "0"
        out = parts[0]
        for piece in parts[1:]:
            out += " - " + piece[1:] if piece.startswith("-") else " + " + piece
        return out

    def __eq__(self, other):
        return (
            isinstance(other, HilbertData)
            and other.numerator == self.numerator
            and other.nvars == self.nvars
            and other.hp_coeffs == self.hp_coeffs
            and other.regularity_index == self.regularity_index
        )

    def __repr__(self):
        return (
            f"HilbertData(HP = {self.hp_str()}, regularity <= {self.regularity_index})"
        )


def _interpolate(points):
    """Coefficients (low to high) of the polynomial through (t, value) pairs."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(points):
        # Lagrange basis polynomial for node i, expanded
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            denom *= Fraction(xi - xj)
            new = [Fraction(0)] * (len(basis) + 1)
            for k, c in enumerate(basis):
                new[k] -= c * xj
                new[k + 1] += c
            basis = new
        scale = Fraction(yi) / denom
        for k, c in enumerate(basis):
            coeffs[k] += c * scale
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def hilbert_series(ideal: Ideal, order: MonomialOrder = GREVLEX) -> HilbertData:
    """Full Hilbert data of S/I for a homogeneous ideal."""
    gb = ideal.groebner(order)
    for g in gb:
        if not g.is_homogeneous():
            raise NotHomogeneous("ideal has an inhomogeneous reduced basis element")
    n = ideal.ctx.arity
    leads = gb.leading_exponents()
    numerator = monomial_quotient_numerator(tuple(leads), n)

    def hf(t):
        return sum(
            c * comb(t - j + n - 1, n - 1) for j, c in enumerate(numerator) if t >= j
        )

    bound = max((sum(e) for e in leads), default=0)
    # HF agrees with a polynomial from degree deg(N) - n + 1 on; stay past both
    # that threshold and the generator degrees of the leading-term ideal.
    numer_degree = len(numerator) - 1 if numerator else 0
    sample_lo = max(bound + 1, numer_degree - n + 1, 0)
    points = [(t, hf(t)) for t in range(sample_lo, sample_lo + n + 1)]
    hp = _interpolate(points)
    data = HilbertData(numerator, n, hp, 0)
    for t in (sample_lo + n + 1, sample_lo + n + 2):
        if data.hp_at(t) != hf(t):
            raise AssertionError("interpolated Hilbert polynomial failed stability check")
    # witnessed regularity index: scan down from the sampling bound
    t0 = sample_lo
    while t0 > 0 and data.hp_at(t0 - 1) == hf(t0 - 1):
        t0 -= 1
    return HilbertData(numerator, n, hp, t0)


def hilbert_function(ideal: Ideal, t: int, order: MonomialOrder = GREVLEX) -> int:
    """dim of the degree-t graded piece of S/I."""
    if t < 0:
        raise ValueError("Hilbert function at negative degree")
    return hilbert_series(ideal, order).hilbert_function(t)


def hilbert_function_direct(ideal: Ideal, t: int, order: MonomialOrder = GREVLEX) -> int:
    """Brute-force count of degree-t standard monomials (test oracle)."""
    from .groebner import monomials_of_degree

    leads = ideal.leading_exponents(order)
    count = 0
    for m in monomials_of_degree(ideal.ctx.arity, t):
        if not any(monomial_divides(e, m) for e in leads):
            count += 1
    return count


def degree_genus(data: HilbertData):
    """(degree, arithmetic genus) for a linear Hilbert polynomial d*t + c."""
    if data.hp_degree() != 1:
        raise NotACurve(f"Hilbert polynomial {data.hp_str()} is not linear")
    d = data.hp_coeffs[1]
    c = data.hp_coeffs[0] if data.hp_coeffs else Fraction(0)
    if d.denominator != 1 or c.denominator != 1:
        raise NotACurve("linear Hilbert polynomial with non-integer coefficients")
    return int(d), int(1 - c)
