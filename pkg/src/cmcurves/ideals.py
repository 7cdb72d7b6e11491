"""Ideal-level operations: membership, equality, elimination, ring-map kernels,
colon ideals, saturation, radical membership.

Elimination is realized with block orders; kernels of graded ring maps go
through the graph ideal in a combined ring.
"""

from __future__ import annotations

from .groebner import GroebnerBasis, buchberger
from .poly import (
    GREVLEX,
    LEX,
    ContextMismatch,
    MonomialOrder,
    Polynomial,
    RingMap,
    VariableContext,
    elimination_order,
)


class ZeroDivisorArg(ValueError):
    """Colon or saturation with respect to the zero polynomial."""


class NotGraded(ValueError):
    """A kernel computation was asked for a non-graded ring map."""


class Ideal:
    """An ideal given by generators, with a write-once cache of reduced bases.

    Concurrent cache fills are harmless: the reduced basis for a fixed order
    is unique, so both writers store identical values.
    """

    __slots__ = ("ctx", "gens", "_gb_cache")

    def __init__(self, ctx: VariableContext, gens):
        self.ctx = ctx
        cleaned = []
        for g in gens:
            if g.ctx != ctx:
                raise ContextMismatch("generator in a different context")
            if not g.is_zero():
                cleaned.append(g)
        self.gens = tuple(cleaned)
        self._gb_cache = {}

    @classmethod
    def of(cls, *gens):
        if not gens:
            raise ValueError("cannot infer a context from no generators")
        return cls(gens[0].ctx, gens)

    def groebner(self, order: MonomialOrder = GREVLEX) -> GroebnerBasis:
        key = order.name
        gb = self._gb_cache.get(key)
        if gb is None:
            gb = buchberger(list(self.gens), order) if self.gens else GroebnerBasis(
                self.ctx, order, []
            )
            self._gb_cache.setdefault(key, gb)
        return self._gb_cache[key]

    def contains(self, f: Polynomial, order: MonomialOrder = GREVLEX) -> bool:
        return self.groebner(order).contains(f)

    def __contains__(self, f):
        return self.contains(f)

    def is_zero_ideal(self) -> bool:
        return not self.gens

    def is_unit_ideal(self) -> bool:
        return self.groebner().contains(self.ctx.one())

    def equal(self, other: "Ideal", order: MonomialOrder = GREVLEX) -> bool:
        if other.ctx != self.ctx:
            raise ContextMismatch("ideals in different contexts")
        return self.groebner(order).polys == other.groebner(order).polys

    def __eq__(self, other):
        return isinstance(other, Ideal) and self.equal(other)

    def __hash__(self):
        return hash((self.ctx, self.groebner().polys))

    def reduced_generators(self, order: MonomialOrder = GREVLEX):
        return self.groebner(order).polys

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.groebner())

    def leading_exponents(self, order: MonomialOrder = GREVLEX):
        return self.groebner(order).leading_exponents()

    def scaled_to_field(self, new_field, coeff_map):
        nctx = self.ctx.with_field(new_field)
        return Ideal(nctx, [g.map_coefficients(coeff_map, new_field) for g in self.gens])

    def __repr__(self):
        body = ", ".join(g.to_str() for g in self.gens) or "0"
        return f"Ideal({self.ctx!r}; {body})"


def member(f: Polynomial, ideal: Ideal) -> bool:
    """Ideal membership through the reduced basis."""
    return ideal.contains(f)


def equal(a: Ideal, b: Ideal) -> bool:
    return a.equal(b)


def _fresh_name(base: str, taken) -> str:
    name = base
    while name in taken:
        name += "_"
    return name


def eliminate(ideal: Ideal, keep, method: str = "block") -> Ideal:
    """The elimination ideal I  intersected with k[keep].

    ``method`` is 'block' (grevlex blocks, the default) or 'lex'; both return
    generators involving only the kept variables, in the original context
    order restricted to ``keep``.
    """
    keep = list(keep)
    for n in keep:
        ideal.ctx.index(n)
    keep_set = set(keep)
    dropped = [n for n in ideal.ctx.names if n not in keep_set]
    kept_ordered = [n for n in ideal.ctx.names if n in keep_set]
    if not dropped:
        return ideal
    work_ctx = VariableContext(tuple(dropped) + tuple(kept_ordered), ideal.ctx.field)
    order = elimination_order(len(dropped)) if method == "block" else LEX
    embedded = [g.embed(work_ctx) for g in ideal.gens]
    gb = buchberger(embedded, order) if embedded else GroebnerBasis(work_ctx, order, [])
    kept_ctx = VariableContext(tuple(kept_ordered), ideal.ctx.field)
    out = []
    k = len(dropped)
    for g in gb:
        if all(all(e[i] == 0 for i in range(k)) for e in g.terms):
            out.append(g.restrict(kept_ctx))
    return Ideal(kept_ctx, out)


def ring_map_kernel(ring_map: RingMap, target_ideal: Ideal | None = None) -> Ideal:
    """Kernel of source -> target/target_ideal, via the graph ideal.

    The combined ring holds the target variables followed by a renamed copy of
    the source variables; eliminating the target block of the graph ideal
    (v_src - image(v)) + target_ideal leaves exactly the kernel.
    """
    if not ring_map.is_graded():
        raise NotGraded("kernel computation expects a graded ring map")
    src, tgt = ring_map.source, ring_map.target
    if target_ideal is None:
        target_ideal = Ideal(tgt, [])
    if target_ideal.ctx != tgt:
        raise ContextMismatch("target ideal not in the map's target context")
    taken = set(tgt.names)
    renamed = []
    for n in src.names:
        nn = _fresh_name(n, taken)
        taken.add(nn)
        renamed.append(nn)
    combined = VariableContext(tgt.names + tuple(renamed), tgt.field)
    gens = [g.embed(combined) for g in target_ideal.gens]
    for n, nn in zip(src.names, renamed):
        gens.append(combined.variable(nn) - ring_map.images[n].embed(combined))
    order = elimination_order(tgt.arity)
    gb = buchberger(gens, order)
    out = []
    k = tgt.arity
    src_only_ctx = VariableContext(tuple(renamed), tgt.field)
    for g in gb:
        if all(all(e[i] == 0 for i in range(k)) for e in g.terms):
            out.append(g.restrict(src_only_ctx).rename_context(src))
    return Ideal(src, out)


def intersect(a: Ideal, b: Ideal) -> Ideal:
    """Ideal intersection via the single-parameter trick."""
    if a.ctx != b.ctx:
        raise ContextMismatch("ideals in different contexts")
    ctx = a.ctx
    tname = _fresh_name("t0", set(ctx.names))
    work_ctx = VariableContext((tname,) + ctx.names, ctx.field)
    t = work_ctx.variable(tname)
    one = work_ctx.one()
    gens = [t * g.embed(work_ctx) for g in a.gens]
    gens += [(one - t) * g.embed(work_ctx) for g in b.gens]
    if not gens:
        return Ideal(ctx, [])
    order = elimination_order(1)
    gb = buchberger(gens, order)
    out = []
    for g in gb:
        if all(e[0] == 0 for e in g.terms):
            out.append(g.restrict(ctx))
    return Ideal(ctx, out)


def colon(ideal: Ideal, f: Polynomial) -> Ideal:
    """The colon ideal (I : f) = {g : g*f in I}."""
    if f.ctx != ideal.ctx:
        raise ContextMismatch("polynomial in a different context")
    if f.is_zero():
        raise ZeroDivisorArg("colon with respect to zero")
    inter = intersect(ideal, Ideal(ideal.ctx, [f]))
    return Ideal(ideal.ctx, [g.exact_divide(f) for g in inter.gens])


def saturate(ideal: Ideal, f: Polynomial) -> Ideal:
    """The saturation (I : f^infinity), iterating colon until stable."""
    current = ideal
    while True:
        nxt = colon(current, f)
        if nxt.equal(current):
            return current
        current = nxt


def saturate_wrt(ideal: Ideal, polys) -> Ideal:
    """Saturation with respect to the ideal generated by ``polys``.

    Equals the intersection of the single-polynomial saturations, one per
    generator.
    """
    polys = list(polys)
    if not polys:
        raise ZeroDivisorArg("saturation with respect to the zero ideal")
    result = None
    for f in polys:
        s = saturate(ideal, f)
        result = s if result is None else intersect(result, s)
    return result


def radical_member(f: Polynomial, ideal: Ideal) -> bool:
    """Radical membership via the trick of adjoining an inverse variable."""
    if f.ctx != ideal.ctx:
        raise ContextMismatch("polynomial in a different context")
    if f.is_zero():
        return True
    ctx = ideal.ctx
    yname = _fresh_name("y0", set(ctx.names))
    work_ctx = VariableContext(ctx.names + (yname,), ctx.field)
    y = work_ctx.variable(yname)
    gens = [g.embed(work_ctx) for g in ideal.gens]
    gens.append(work_ctx.one() - y * f.embed(work_ctx))
    gb = buchberger(gens, GREVLEX)
    return gb.contains(work_ctx.one())
