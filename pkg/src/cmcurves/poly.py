"""Sparse multivariate polynomials with pluggable monomial orders.

A monomial is an exponent tuple keyed against a VariableContext; a Polynomial
is a dict {exponents: nonzero coefficient} over the context's field.  All
values are immutable by convention: operations return new objects.
"""

from __future__ import annotations

class ContextMismatch(ValueError):
    """Operands live in different variable contexts."""


class UnknownVariable(ValueError):
    """A variable name that the context does not contain."""


# ---------------------------------------------------------------------------
# Monomial orders
# ---------------------------------------------------------------------------

class MonomialOrder:
    """A total, multiplicative well-order on exponent tuples.

    kind is 'lex', 'grevlex' or 'elim'; elimination orders compare a leading
    block of ``block`` variables grevlex-first, then the remaining variables
    grevlex.  ``key`` maps an exponent tuple to a sort key, largest last.
    """

    def __init__(self, kind: str, block: int = 0):
        if kind not in ("lex", "grevlex", "elim"):
            raise ValueError(f"unknown monomial order {kind!r}")
        if kind == "elim" and block < 1:
            raise ValueError("elimination order needs a positive block size")
        self.kind = kind
        self.block = block
        self.name = f"elim:{block}" if kind == "elim" else kind

    @staticmethod
    def _grevlex_key(exps):
        return (sum(exps), tuple(-e for e in reversed(exps)))

    def key(self, exps):
        if self.kind == "lex":
            return exps
        if self.kind == "grevlex":
            return self._grevlex_key(exps)
        head, tail = exps[: self.block], exps[self.block:]
        return (self._grevlex_key(head), self._grevlex_key(tail))

    def compare(self, e1, e2):
        k1, k2 = self.key(e1), self.key(e2)
        return (k1 > k2) - (k1 < k2)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and other.name == self.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return f"MonomialOrder({self.name})"


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


def elimination_order(block: int) -> MonomialOrder:
    return MonomialOrder("elim", block)


def order_from_name(name: str) -> MonomialOrder:
    if name == "lex":
        return LEX
    if name == "grevlex":
        return GREVLEX
    if name.startswith("elim:"):
        return elimination_order(int(name.split(":", 1)[1]))
    raise ValueError(f"unknown monomial order {name!r}")


def compare(m1, m2, order: MonomialOrder) -> int:
    """-1, 0 or 1 comparing two exponent tuples of equal arity."""
    if len(m1) != len(m2):
        raise ContextMismatch("exponent tuples of different arity")
    return order.compare(m1, m2)


def monomial_mul(e1, e2):
    return tuple(a + b for a, b in zip(e1, e2))


def monomial_lcm(e1, e2):
    return tuple(max(a, b) for a, b in zip(e1, e2))


def monomial_divides(e1, e2):
    """Whether x^e1 divides x^e2."""
    return all(a <= b for a, b in zip(e1, e2))


def monomial_div(e1, e2):
    """Exponents of x^e1 / x^e2; requires divisibility."""
    out = tuple(a - b for a, b in zip(e1, e2))
    if any(v < 0 for v in out):
        raise ValueError("monomial quotient with negative exponent")
    return out


# ---------------------------------------------------------------------------
# Contexts
# ---------------------------------------------------------------------------

class VariableContext:
    """An ordered tuple of variable names over a fixed coefficient field."""

    __slots__ = ("names", "field", "_index")

    def __init__(self, names, field):
        names = tuple(names)
        if not names or len(set(names)) != len(names):
            raise ValueError("variable names must be nonempty and distinct")
        for n in names:
            if not n or not (n[0].isalpha() and n.replace("_", "").isalnum()):
                raise ValueError(f"bad variable name {n!r}")
        self.names = names
        self.field = field
        self._index = {n: i for i, n in enumerate(names)}

    @property
    def arity(self):
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariable(f"{name!r} not in context {self.names}") from None

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return Polynomial(self, {(0,) * self.arity: self.field.one})

    def constant(self, c):
        c = self.field.canonical(c)
        if self.field.is_zero(c):
            return self.zero()
        return Polynomial(self, {(0,) * self.arity: c})

    def variable(self, name: str):
        i = self.index(name)
        e = [0] * self.arity
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    def gens(self):
        return [self.variable(n) for n in self.names]

    def monomial(self, exps, coeff=None):
        exps = tuple(exps)
        if len(exps) != self.arity or any(e < 0 for e in exps):
            raise ValueError(f"bad exponent tuple {exps}")
        c = self.field.one if coeff is None else self.field.canonical(coeff)
        if self.field.is_zero(c):
            return self.zero()
        return Polynomial(self, {exps: c})

    def extend(self, extra_names):
        return VariableContext(self.names + tuple(extra_names), self.field)

    def drop(self, name: str):
        i = self.index(name)
        return VariableContext(self.names[:i] + self.names[i + 1:], self.field)

    def with_field(self, field):
        return VariableContext(self.names, field)

    def __eq__(self, other):
        return (
            isinstance(other, VariableContext)
            and other.names == self.names
            and other.field == self.field
        )

    def __hash__(self):
        return hash((self.names, self.field))

    def __repr__(self):
        return f"{self.field.name}[{','.join(self.names)}]"


def _check_same_context(f, g):
    if f.ctx != g.ctx:
        raise ContextMismatch(f"{f.ctx!r} vs {g.ctx!r}")


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------

class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to coefficients."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: VariableContext, terms: dict):
        self.ctx = ctx
        self.terms = terms

    # -- construction helpers ------------------------------------------------

    @classmethod
    def from_terms(cls, ctx, pairs):
        field = ctx.field
        terms = {}
        for exps, c in pairs:
            exps = tuple(exps)
            c = field.canonical(c)
            if exps in terms:
                c = field.add(terms[exps], c)
            if field.is_zero(c):
                terms.pop(exps, None)
            else:
                terms[exps] = c
        return cls(ctx, terms)

    # -- basic predicates ----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * self.ctx.arity, self.ctx.field.zero)

    def total_degree(self):
        """Largest term degree, or -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def grading(self):
        """(is_homogeneous, degree); degree is None for the zero polynomial."""
        degrees = {sum(e) for e in self.terms}
        if not degrees:
            return True, None
        if len(degrees) == 1:
            return True, degrees.pop()
        return False, None

    def is_homogeneous(self):
        return self.grading()[0]

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other):
        _check_same_context(self, other)
        field = self.ctx.field
        terms = dict(self.terms)
        for e, c in other.terms.items():
            if e in terms:
                s = field.add(terms[e], c)
                if field.is_zero(s):
                    del terms[e]
                else:
                    terms[e] = s
            else:
                terms[e] = c
        return Polynomial(self.ctx, terms)

    def __neg__(self):
        field = self.ctx.field
        return Polynomial(self.ctx, {e: field.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        _check_same_context(self, other)
        field = self.ctx.field
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = monomial_mul(e1, e2)
                c = field.mul(c1, c2)
                if e in terms:
                    c = field.add(terms[e], c)
                if field.is_zero(c):
                    terms.pop(e, None)
                else:
                    terms[e] = c
        return Polynomial(self.ctx, terms)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        out = self.ctx.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, c):
        field = self.ctx.field
        c = field.canonical(c)
        if field.is_zero(c):
            return self.ctx.zero()
        return Polynomial(self.ctx, {e: field.mul(c, v) for e, v in self.terms.items()})

    def mul_monomial(self, exps, coeff=None):
        field = self.ctx.field
        c = field.one if coeff is None else coeff
        if field.is_zero(c):
            return self.ctx.zero()
        return Polynomial(
            self.ctx,
            {monomial_mul(e, exps): field.mul(c, v) for e, v in self.terms.items()},
        )

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and other.ctx == self.ctx
            and other.terms == self.terms
        )

    def __hash__(self):
        return hash((self.ctx, frozenset(self.terms.items())))

    # -- leading data -----------------------------------------------------------

    def leading_pair(self, order: MonomialOrder = GREVLEX):
        """(exponents, coefficient) of the order-largest term; None for zero."""
        if not self.terms:
            return None
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def sorted_terms(self, order: MonomialOrder = GREVLEX, reverse=True):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=reverse)

    def monic(self, order: MonomialOrder = GREVLEX):
        if not self.terms:
            return self
        _, c = self.leading_pair(order)
        return self.scale(self.ctx.field.inv(c))

    # -- calculus / substitution --------------------------------------------------

    def partial_derivative(self, name: str):
        i = self.ctx.index(name)
        field = self.ctx.field
        terms = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = list(e)
            ne[i] -= 1
            nc = field.mul(c, field.from_int(e[i]))
            if not field.is_zero(nc):
                terms[tuple(ne)] = nc
        return Polynomial(self.ctx, terms)

    def substitute(self, images: dict, target_ctx: VariableContext | None = None):
        """Substitute polynomials for variables; unnamed variables must map too.

        ``images`` maps every variable name of this context to a Polynomial of
        ``target_ctx`` (defaults to this context).
        """
        tctx = target_ctx or self.ctx
        for n in self.ctx.names:
            if n not in images:
                raise UnknownVariable(f"no image for variable {n!r}")
        field = tctx.field
        out = tctx.zero()
        for e, c in self.terms.items():
            term = tctx.constant(c)
            for i, exp in enumerate(e):
                if exp:
                    term = term * (images[self.ctx.names[i]] ** exp)
            out = out + term
        return out

    def evaluate(self, values):
        """Value at a point, given one field element per context variable."""
        field = self.ctx.field
        if len(values) != self.ctx.arity:
            raise ContextMismatch("point arity mismatch")
        acc = field.zero
        for e, c in self.terms.items():
            v = c
            for exp, coord in zip(e, values):
                if exp:
                    v = field.mul(v, field.pow(coord, exp))
            acc = field.add(acc, v)
        return acc

    def dehomogenize(self, name: str):
        """Set the named variable to 1 and drop it from the context."""
        i = self.ctx.index(name)
        nctx = self.ctx.drop(name)
        field = self.ctx.field
        terms = {}
        for e, c in self.terms.items():
            ne = e[:i] + e[i + 1:]
            if ne in terms:
                s = field.add(terms[ne], c)
                if field.is_zero(s):
                    del terms[ne]
                else:
                    terms[ne] = s
            else:
                terms[ne] = c
        return Polynomial(nctx, terms)

    def homogenize(self, name: str, position: int | None = None):
        """Insert a new variable and homogenize to the total degree."""
        if name in self.ctx.names:
            raise ValueError(f"{name!r} already in context")
        pos = self.ctx.arity if position is None else position
        names = self.ctx.names[:pos] + (name,) + self.ctx.names[pos:]
        nctx = VariableContext(names, self.ctx.field)
        d = self.total_degree()
        terms = {}
        for e, c in self.terms.items():
            ne = e[:pos] + (d - sum(e),) + e[pos:]
            terms[ne] = c
        return Polynomial(nctx, terms)

    def rename_context(self, nctx: VariableContext):
        """Reinterpret exponents in a context of the same arity and field."""
        if nctx.arity != self.ctx.arity or nctx.field != self.ctx.field:
            raise ContextMismatch("incompatible rename target")
        return Polynomial(nctx, dict(self.terms))

    def embed(self, nctx: VariableContext):
        """Move into a larger context containing all of this one's names."""
        pos = [nctx.index(n) for n in self.ctx.names]
        terms = {}
        for e, c in self.terms.items():
            ne = [0] * nctx.arity
            for p, exp in zip(pos, e):
                ne[p] = exp
            terms[tuple(ne)] = c
        return Polynomial(nctx, terms)

    def restrict(self, nctx: VariableContext):
        """Move into a smaller context; unused variables must not occur."""
        keep = set(nctx.names)
        for i, n in enumerate(self.ctx.names):
            if n not in keep and any(e[i] for e in self.terms):
                raise UnknownVariable(f"polynomial involves dropped variable {n!r}")
        pos = [self.ctx.index(n) for n in nctx.names]
        return Polynomial(nctx, {tuple(e[p] for p in pos): c for e, c in self.terms.items()})

    def map_coefficients(self, func, new_field):
        """Apply func to every coefficient, landing in new_field; drops zeros."""
        nctx = self.ctx.with_field(new_field)
        terms = {}
        for e, c in self.terms.items():
            nc = new_field.canonical(func(c))
            if not new_field.is_zero(nc):
                terms[e] = nc
        return Polynomial(nctx, terms)

    def coefficient_of(self, exps):
        return self.terms.get(tuple(exps), self.ctx.field.zero)

    def exact_divide(self, g):
        """Quotient self / g when the division is exact; raises otherwise."""
        _check_same_context(self, g)
        if g.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        field = self.ctx.field
        order = GREVLEX
        ge, gc = g.leading_pair(order)
        rem = self
        q = self.ctx.zero()
        while not rem.is_zero():
            re, rc = rem.leading_pair(order)
            if not monomial_divides(ge, re):
                raise ValueError("division is not exact")
            e = monomial_div(re, ge)
            c = field.div(rc, gc)
            q = q + self.ctx.monomial(e, c)
            rem = rem - g.mul_monomial(e, c)
        return q

    # -- printing ---------------------------------------------------------------

    def to_str(self, order: MonomialOrder = GREVLEX) -> str:
        if not self.terms:
            return "0"
        field = self.ctx.field
        parts = []
        for e, c in self.sorted_terms(order):
            factors = []
            for name, exp in zip(self.ctx.names, e):
                if exp == 1:
                    factors.append(name)
                elif exp > 1:
                    factors.append(f"{name}^{exp}")
            mono = "*".join(factors)
            cs, atomic = field.coeff_str(c)
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

    def __repr__(self):
        return self.to_str()


# ---------------------------------------------------------------------------
# Ring maps
# ---------------------------------------------------------------------------

class RingMap:
    """A ring homomorphism source -> target given by images of the variables."""

    def __init__(self, source: VariableContext, target: VariableContext, images: dict):
        self.source = source
        self.target = target
        imgs = {}
        for n in source.names:
            if n not in images:
                raise UnknownVariable(f"no image for source variable {n!r}")
            f = images[n]
            if f.ctx != target:
                raise ContextMismatch(f"image of {n!r} not in the target context")
            imgs[n] = f
        self.images = imgs

    def is_graded(self):
        """All images homogeneous linear (the zero image is allowed)."""
        for f in self.images.values():
            hom, deg = f.grading()
            if not hom or deg not in (None, 1):
                return False
        return True

    def apply(self, f: Polynomial) -> Polynomial:
        if f.ctx != self.source:
            raise ContextMismatch("polynomial not in the map's source context")
        return f.substitute(self.images, self.target)

    def __repr__(self):
        ims = ", ".join(f"{n} -> {self.images[n].to_str()}" for n in self.source.names)
        return f"RingMap({self.source!r} -> {self.target!r}: {ims})"


def apply_map(ring_map: RingMap, f: Polynomial) -> Polynomial:
    """Apply a ring map to a polynomial of the source ring."""
    return ring_map.apply(f)
