"""Exact scalar arithmetic: rationals, prime fields, rational functions, dual numbers.

Elements are plain immutable values (Fraction, int, RatFunc, DualNum); the
field object owns the operations.  Every constructor and every operation
returns the canonical form, so `a == b` iff the canonical representations
are equal.  No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt


class FieldError(ArithmeticError):
    """Base class for scalar arithmetic failures."""


class ZeroInversion(FieldError):
    """Inversion of the zero element."""


class DualNotInvertible(ZeroInversion):
    """Inversion of a dual number whose constant part is zero."""


class BadFieldParameter(ValueError):
    """Field constructed with unusable parameters (p not prime, p in {2, 3}, ...)."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# Univariate polynomial helpers, used by the rational function field and by
# root finding.  Polynomials are tuples of field elements, low degree first,
# with no trailing zeros; () is the zero polynomial.
# ---------------------------------------------------------------------------

def up_trim(field, coeffs):
    cs = list(coeffs)
    while cs and field.is_zero(cs[-1]):
        cs.pop()
    return tuple(cs)


def up_add(field, a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else field.zero
        y = b[i] if i < len(b) else field.zero
        out.append(field.add(x, y))
    return up_trim(field, out)


def up_neg(field, a):
    return tuple(field.neg(c) for c in a)


def up_sub(field, a, b):
    return up_add(field, a, up_neg(field, b))


def up_scale(field, a, c):
    if field.is_zero(c):
        return ()
    return tuple(field.mul(x, c) for x in a)


def up_mul(field, a, b):
    if not a or not b:
        return ()
    out = [field.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = field.add(out[i + j], field.mul(x, y))
    return up_trim(field, out)


def up_divmod(field, a, b):
    """Division with remainder; b must be nonzero."""
    if not b:
        raise ZeroDivisionError("univariate division by zero polynomial")
    q = [field.zero] * max(0, len(a) - len(b) + 1)
    r = list(a)
    inv_lead = field.inv(b[-1])
    while len(r) >= len(b):
        c = field.mul(r[-1], inv_lead)
        k = len(r) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            r[k + i] = field.sub(r[k + i], field.mul(c, y))
        while r and field.is_zero(r[-1]):
            r.pop()
    return up_trim(field, q), up_trim(field, r)


def up_monic(field, a):
    if not a:
        return a
    return up_scale(field, a, field.inv(a[-1]))


def up_gcd(field, a, b):
    """Monic gcd by the Euclidean algorithm."""
    while b:
        a, b = b, up_divmod(field, a, b)[1]
    return up_monic(field, a)


def up_eval(field, a, x):
    acc = field.zero
    for c in reversed(a):
        acc = field.add(field.mul(acc, x), c)
    return acc


def up_derivative(field, a):
    return up_trim(
        field, [field.mul(c, field.from_int(i)) for i, c in enumerate(a)][1:]
    )


def up_roots(field, a):
    """All roots of a nonzero univariate polynomial that lie in the field itself.

    Over Q this uses the rational root theorem; over GF(p) it tries every
    residue.  Multiplicities are not reported.
    """
    if not a:
        raise ValueError("zero polynomial has every root")
    if isinstance(field, PrimeField):
        return [c for c in range(field.p) if field.is_zero(up_eval(field, a, c))]
    if not isinstance(field, Rationals):
        raise FieldError(f"root finding not supported over {field.name}")
    # strip powers of t, remembering the root 0
    roots = []
    cs = list(a)
    if field.is_zero(cs[0]):
        roots.append(Fraction(0))
        while field.is_zero(cs[0]):
            cs.pop(0)
    # clear denominators to a primitive integer polynomial
    den = 1
    for c in cs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in cs]
    content = 0
    for v in ints:
        content = gcd(content, abs(v))
    ints = [v // content for v in ints]
    a0, an = abs(ints[0]), abs(ints[-1])
    for p in _divisors(a0):
        for q in _divisors(an):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand not in roots and field.is_zero(up_eval(field, a, cand)):
                    roots.append(cand)
    return sorted(roots)


def _divisors(n: int):
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def up_str(field, a, var: str) -> str:
    """Render a univariate polynomial, e.g. ``t^2 - 2*t + 1``."""
    if not a:
        return "0"
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if field.is_zero(c):
            continue
        cs, atomic = field.coeff_str(c)
        if i == 0:
            mono = ""
        elif i == 1:
            mono = var
        else:
            mono = f"{var}^{i}"
        if mono and cs == "1":
            piece = mono
        elif mono and cs == "-1":
            piece = f"-{mono}"
        else:
            if mono and not atomic:
                cs = f"({cs})"
            piece = f"{cs}*{mono}" if mono else cs
        parts.append(piece)
    out = parts[0]
    for piece in parts[1:]:
        if piece.startswith("-"):
            out += " - " + piece[1:]
        else:
            out += " + " + piece
    return out


# ---------------------------------------------------------------------------
# The fields
# ---------------------------------------------------------------------------

class Rationals:
    """The field Q, with Fraction elements."""

    name = "Q"
    characteristic = 0

    zero = Fraction(0)
    one = Fraction(1)

    def canonical(self, x):
        return x if isinstance(x, Fraction) else Fraction(x)

    def is_zero(self, x):
        return x == 0

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroInversion("1/0 in Q")
        return 1 / a

    def div(self, a, b):
        if b == 0:
            raise ZeroInversion("division by zero in Q")
        return a / b

    def pow(self, a, n):
        if n < 0:
            return self.pow(self.inv(a), -n)
        return a ** n

    def from_int(self, n):
        return Fraction(n)

    def from_fraction(self, q: Fraction):
        return Fraction(q)

    def is_square(self, a):
        if a < 0:
            return False
        n, d = a.numerator, a.denominator
        return isqrt(n) ** 2 == n and isqrt(d) ** 2 == d

    def sqrt(self, a):
        if not self.is_square(a):
            raise FieldError(f"{a} is not a square in Q")
        return Fraction(isqrt(a.numerator), isqrt(a.denominator))

    def is_cube(self, a):
        return self._icbrt(a.numerator) is not None and self._icbrt(a.denominator) is not None

    def cbrt(self, a):
        n, d = self._icbrt(a.numerator), self._icbrt(a.denominator)
        if n is None or d is None:
            raise FieldError(f"{a} is not a cube in Q")
        return Fraction(n, d)

    @staticmethod
    def _icbrt(n: int):
        s = -1 if n < 0 else 1
        m = abs(n)
        r = round(m ** (1 / 3)) if m else 0
        for c in (r - 1, r, r + 1):
            if c >= 0 and c ** 3 == m:
                return s * c
        return None

    def coeff_str(self, x):
        return str(x), True

    @property
    def scalar_atoms(self):
        return {}

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"


class PrimeField:
    """GF(p) for a prime p not in {2, 3}; elements are ints in [0, p)."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise BadFieldParameter(f"{p} is not prime")
        if p in (2, 3):
            raise BadFieldParameter(f"characteristic {p} is excluded")
        self.p = p
        self.name = f"GF({p})"
        self.characteristic = p
        self.zero = 0
        self.one = 1

    def canonical(self, x):
        return int(x) % self.p

    def is_zero(self, x):
        return x % self.p == 0

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroInversion(f"1/0 in {self.name}")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n):
        if n < 0:
            return pow(self.inv(a), -n, self.p)
        return pow(a, n, self.p)

    def from_int(self, n):
        return n % self.p

    def from_fraction(self, q: Fraction):
        if q.denominator % self.p == 0:
            raise ZeroInversion(f"denominator {q.denominator} vanishes in {self.name}")
        return self.mul(q.numerator % self.p, self.inv(q.denominator % self.p))

    def is_square(self, a):
        a %= self.p
        return any((r * r) % self.p == a for r in range(self.p))

    def sqrt(self, a):
        a %= self.p
        for r in range(self.p):
            if (r * r) % self.p == a:
                return r
        raise FieldError(f"{a} is not a square in {self.name}")

    def is_cube(self, a):
        a %= self.p
        return any(pow(r, 3, self.p) == a for r in range(self.p))

    def cbrt(self, a):
        a %= self.p
        for r in range(self.p):
            if pow(r, 3, self.p) == a:
                return r
        raise FieldError(f"{a} is not a cube in {self.name}")

    def coeff_str(self, x):
        return str(x % self.p), True

    @property
    def scalar_atoms(self):
        return {}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return self.name


class RatFunc:
    """A reduced rational function num/den; den monic, gcd(num, den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        self.num = num
        self.den = den

    def __eq__(self, other):
        return (
            isinstance(other, RatFunc)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFunc({self.num}, {self.den})"


class RationalFunctionField:
    """The fraction field base(t) of the univariate polynomial ring base[t].

    An optional ``division_log`` set collects every base-field value of t at
    which some inverted element vanishes; specializing t at a logged value is
    not guaranteed to commute with computations done in this field.
    """

    def __init__(self, base, var: str = "t", division_log=None):
        if isinstance(base, (RationalFunctionField, DualField)):
            raise BadFieldParameter("rational functions over composite fields are unsupported")
        self.base = base
        self.var = var
        self.name = f"{base.name}({var})"
        self.characteristic = base.characteristic
        self.division_log = division_log
        self.zero = RatFunc((), (base.one,))
        self.one = RatFunc((base.one,), (base.one,))
        self.t = RatFunc((base.zero, base.one), (base.one,))

    def make(self, num, den):
        F = self.base
        num = up_trim(F, num)
        den = up_trim(F, den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            return self.zero
        g = up_gcd(F, num, den)
        if len(g) > 1:
            num = up_divmod(F, num, g)[0]
            den = up_divmod(F, den, g)[0]
        lead = den[-1]
        if not F.is_zero(F.sub(lead, F.one)):
            c = F.inv(lead)
            num = up_scale(F, num, c)
            den = up_scale(F, den, c)
        return RatFunc(num, den)

    def from_polynomial(self, coeffs):
        return self.make(tuple(coeffs), (self.base.one,))

    def canonical(self, x):
        if isinstance(x, RatFunc):
            return self.make(x.num, x.den)
        return self.from_int(x)

    def is_zero(self, x):
        return not x.num

    def add(self, a, b):
        F = self.base
        num = up_add(F, up_mul(F, a.num, b.den), up_mul(F, b.num, a.den))
        return self.make(num, up_mul(F, a.den, b.den))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        return RatFunc(up_neg(self.base, a.num), a.den)

    def mul(self, a, b):
        F = self.base
        return self.make(up_mul(F, a.num, b.num), up_mul(F, a.den, b.den))

    def inv(self, a):
        if not a.num:
            raise ZeroInversion(f"1/0 in {self.name}")
        if self.division_log is not None and len(a.num) > 1:
            self.division_log.update(up_roots(self.base, a.num))
        return self.make(a.den, a.num)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n):
        if n < 0:
            return self.pow(self.inv(a), -n)
        out = self.one
        for _ in range(n):
            out = self.mul(out, a)
        return out

    def from_int(self, n):
        c = self.base.from_int(n)
        return RatFunc((c,), (self.base.one,)) if not self.base.is_zero(c) else self.zero

    def from_fraction(self, q: Fraction):
        c = self.base.from_fraction(q)
        return RatFunc((c,), (self.base.one,)) if not self.base.is_zero(c) else self.zero

    def is_polynomial(self, x):
        return len(x.den) == 1

    def evaluate(self, x, c):
        """Specialize t -> c (a base-field element); the denominator must not vanish."""
        F = self.base
        dv = up_eval(F, x.den, c)
        if F.is_zero(dv):
            raise ZeroInversion(f"denominator vanishes at {self.var}={c}")
        return F.div(up_eval(F, x.num, c), dv)

    def coeff_str(self, x):
        F = self.base
        ns = up_str(F, x.num, self.var)
        atomic_num = len(x.num) <= 1 or (len(x.num) == 2 and F.is_zero(x.num[0])
                                          and F.sub(x.num[1], F.one) == F.zero)
        if len(x.den) == 1:
            return ns, atomic_num and not ns.startswith("-")
        return f"({ns})/({up_str(F, x.den, self.var)})", False

    @property
    def scalar_atoms(self):
        return {self.var: self.t}

    def __eq__(self, other):
        return (
            isinstance(other, RationalFunctionField)
            and other.base == self.base
            and other.var == self.var
        )

    def __hash__(self):
        return hash(("ratfunc", self.base, self.var))

    def __repr__(self):
        return self.name


class DualNum:
    """a + b*eps with eps^2 = 0."""

    __slots__ = ("a", "b")

    def __init__(self, a, b):
        self.a = a
        self.b = b

    def __eq__(self, other):
        return isinstance(other, DualNum) and self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return f"DualNum({self.a}, {self.b})"


class DualField:
    """Dual numbers base[eps]/(eps^2); invertible iff the constant part is nonzero.

    Not a field, but supports the full scalar protocol so polynomials over it
    can be used for first-order computations.
    """

    def __init__(self, base):
        if isinstance(base, DualField):
            raise BadFieldParameter("iterated dual numbers are unsupported")
        self.base = base
        self.name = f"{base.name}[eps]"
        self.characteristic = base.characteristic
        self.zero = DualNum(base.zero, base.zero)
        self.one = DualNum(base.one, base.zero)
        self.eps = DualNum(base.zero, base.one)

    def make(self, a, b):
        return DualNum(a, b)

    def lift(self, a):
        return DualNum(a, self.base.zero)

    def canonical(self, x):
        if isinstance(x, DualNum):
            return x
        return self.lift(self.base.canonical(x))

    def is_zero(self, x):
        return self.base.is_zero(x.a) and self.base.is_zero(x.b)

    def add(self, x, y):
        F = self.base
        return DualNum(F.add(x.a, y.a), F.add(x.b, y.b))

    def sub(self, x, y):
        F = self.base
        return DualNum(F.sub(x.a, y.a), F.sub(x.b, y.b))

    def neg(self, x):
        F = self.base
        return DualNum(F.neg(x.a), F.neg(x.b))

    def mul(self, x, y):
        F = self.base
        return DualNum(F.mul(x.a, y.a), F.add(F.mul(x.a, y.b), F.mul(x.b, y.a)))

    def inv(self, x):
        F = self.base
        if F.is_zero(x.a):
            raise DualNotInvertible("constant part is zero")
        ia = F.inv(x.a)
        return DualNum(ia, F.neg(F.mul(F.mul(ia, ia), x.b)))

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def pow(self, x, n):
        if n < 0:
            return self.pow(self.inv(x), -n)
        out = self.one
        for _ in range(n):
            out = self.mul(out, x)
        return out

    def from_int(self, n):
        return self.lift(self.base.from_int(n))

    def from_fraction(self, q: Fraction):
        return self.lift(self.base.from_fraction(q))

    def coeff_str(self, x):
        F = self.base
        if F.is_zero(x.b):
            return F.coeff_str(x.a)
        ca, _ = F.coeff_str(x.a)
        cb, atomic_b = F.coeff_str(x.b)
        if not atomic_b:
            cb = f"({cb})"
        eps_part = "eps" if cb == "1" else ("-eps" if cb == "-1" else f"{cb}*eps")
        if F.is_zero(x.a):
            return eps_part, eps_part == "eps"
        if eps_part.startswith("-"):
            return f"{ca} - {eps_part[1:]}", False
        return f"{ca} + {eps_part}", False

    @property
    def scalar_atoms(self):
        return {"eps": self.eps}

    def __eq__(self, other):
        return isinstance(other, DualField) and other.base == self.base

    def __hash__(self):
        return hash(("dual", self.base))

    def __repr__(self):
        return self.name


QQ = Rationals()
GF5 = PrimeField(5)
GF7 = PrimeField(7)


def invert(field, x):
    """Multiplicative inverse in the given field; raises on zero."""
    return field.inv(x)


def canonicalize(field, x):
    """Unique normal form of a scalar; idempotent."""
    return field.canonical(x)


def field_from_name(name: str):
    """Resolve a field label as used in ring headers and CLI flags.

    Accepts ``Q``, ``GF(p)`` / ``GFp``, ``Q(t)`` / ``Qt``, an optional
    ``[eps]`` suffix for dual numbers, and ``GF(p)(t)``.
    """
    s = name.strip()
    dual = False
    if s.endswith("[eps]"):
        dual = True
        s = s[: -len("[eps]")]
    rational_t = False
    if s.endswith("(t)"):
        rational_t = True
        s = s[: -len("(t)")]
    elif s == "Qt":
        rational_t = True
        s = "Q"
    if s == "Q":
        base = QQ
    elif s.startswith("GF(") and s.endswith(")"):
        base = PrimeField(int(s[3:-1]))
    elif s.startswith("GF") and s[2:].isdigit():
        base = PrimeField(int(s[2:]))
    else:
        raise BadFieldParameter(f"unknown field {name!r}")
    if rational_t:
        base = RationalFunctionField(base)
    if dual:
        base = DualField(base)
    return base
