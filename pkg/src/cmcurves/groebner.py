"""Buchberger engine: reduced Groebner bases, normal forms, syzygies.

Pair selection is the normal strategy (smallest lcm in the order, ties by
position), reduction is full tail reduction, and the final basis is
minimalized, inter-reduced, made monic and sorted, so the result is the
unique reduced basis no matter how the generators were listed.
"""

from __future__ import annotations

from itertools import combinations

from . import linalg
from .poly import (
    GREVLEX,
    ContextMismatch,
    MonomialOrder,
    Polynomial,
    monomial_div,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
)


def monomials_of_degree(arity: int, degree: int):
    """All exponent tuples of the given total degree, lexicographically."""
    if arity == 1:
        yield (degree,)
        return
    for first in range(degree, -1, -1):
        for rest in monomials_of_degree(arity - 1, degree - first):
            yield (first,) + rest


def divide(f: Polynomial, divisors, order: MonomialOrder = GREVLEX):
    """Multivariate division with full tail reduction.

    Returns (quotients, remainder) with f = sum q_i * divisors_i + remainder
    and no remainder term divisible by any divisor's leading monomial.  The
    first divisor in list order whose leading monomial divides is used, so the
    result is deterministic.
    """
    ctx = f.ctx
    field = ctx.field
    leads = []
    for g in divisors:
        if g.ctx != ctx:
            raise ContextMismatch("divisor in a different context")
        leads.append(g.leading_pair(order) if not g.is_zero() else None)
    quotients = [ctx.zero() for _ in divisors]
    remainder = ctx.zero()
    work = f
    while not work.is_zero():
        e, c = work.leading_pair(order)
        for i, lead in enumerate(leads):
            if lead is None:
                continue
            ge, gc = lead
            if monomial_divides(ge, e):
                m = monomial_div(e, ge)
                coeff = field.div(c, gc)
                quotients[i] = quotients[i] + ctx.monomial(m, coeff)
                work = work - divisors[i].mul_monomial(m, coeff)
                break
        else:
            t = ctx.monomial(e, c)
            remainder = remainder + t
            work = work - t
    return quotients, remainder


class GroebnerBasis:
    """A reduced Groebner basis: monic, inter-reduced, canonically sorted."""

    __slots__ = ("ctx", "order", "polys")

    def __init__(self, ctx, order: MonomialOrder, polys):
        self.ctx = ctx
        self.order = order
        self.polys = tuple(polys)

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.ctx != self.ctx:
            raise ContextMismatch("polynomial in a different context")
        return divide(f, list(self.polys), self.order)[1]

    def contains(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero()

    def leading_exponents(self):
        return tuple(g.leading_pair(self.order)[0] for g in self.polys)

    def is_reduced(self) -> bool:
        leads = self.leading_exponents()
        for i, g in enumerate(self.polys):
            _, lc = g.leading_pair(self.order)
            if not self.ctx.field.is_zero(self.ctx.field.sub(lc, self.ctx.field.one)):
                return False
            for e in g.terms:
                for j, le in enumerate(leads):
                    if j != i and monomial_divides(le, e):
                        return False
        return True

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def __eq__(self, other):
        return (
            isinstance(other, GroebnerBasis)
            and other.ctx == self.ctx
            and other.order == self.order
            and other.polys == self.polys
        )

    def __repr__(self):
        body = "; ".join(g.to_str(self.order) for g in self.polys)
        return f"GroebnerBasis[{self.order.name}]({body})"


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Unique remainder of f modulo the basis."""
    return gb.normal_form(f)


def _canonical_sort_key(order):
    def key(g):
        e, _ = g.leading_pair(order)
        return (order.key(e), g.to_str(order))
    return key


def _row_sub(row_a, row_b):
    return [a - b for a, b in zip(row_a, row_b)]


def _row_scale(row, c):
    return [a.scale(c) for a in row]


def _row_mul_monomial(row, exps, coeff):
    return [a.mul_monomial(exps, coeff) for a in row]


def _buchberger_tracked(gens, order: MonomialOrder):
    """Core loop; returns (basis_polys, rows) with basis[i] = sum rows[i][j]*gens[j].

    The input list is processed in a canonical order so the computation is
    permutation independent; rows always refer to the original positions.
    """
    if not gens:
        raise ValueError("empty generator list")
    ctx = gens[0].ctx
    for g in gens:
        if g.ctx != ctx:
            raise ContextMismatch("generators in different contexts")
    field = ctx.field
    n = len(gens)

    def unit_row(j, c):
        row = [ctx.zero()] * n
        row[j] = ctx.constant(c)
        return row

    indexed = [(g, j) for j, g in enumerate(gens) if not g.is_zero()]
    indexed.sort(key=lambda t: _canonical_sort_key(order)(t[0]))

    basis = []      # monic polynomials
    rows = []       # transform rows over the original generators
    pairs = set()
    processed = set()

    def add_element(g, row):
        _, lc = g.leading_pair(order)
        inv = field.inv(lc)
        basis.append(g.scale(inv))
        rows.append(_row_scale(row, inv))
        k = len(basis) - 1
        for i in range(k):
            pairs.add((i, k))

    for g, j in indexed:
        add_element(g, unit_row(j, field.one))

    def lm(i):
        return basis[i].leading_pair(order)[0]

    def pair_key(p):
        i, j = p
        L = monomial_lcm(lm(i), lm(j))
        return (sum(L), order.key(L), i, j)

    while pairs:
        i, j = min(pairs, key=pair_key)
        pairs.discard((i, j))
        processed.add((i, j))
        li, lj = lm(i), lm(j)
        L = monomial_lcm(li, lj)
        # first criterion: coprime leading monomials
        if L == monomial_mul(li, lj):
            continue
        # chain criterion
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if monomial_divides(lm(k), L):
                pik = (min(i, k), max(i, k))
                pjk = (min(j, k), max(j, k))
                if pik in processed and pjk in processed:
                    skip = True
                    break
        if skip:
            continue
        mi = monomial_div(L, li)
        mj = monomial_div(L, lj)
        s = basis[i].mul_monomial(mi) - basis[j].mul_monomial(mj)
        s_row = _row_sub(_row_mul_monomial(rows[i], mi, field.one),
                         _row_mul_monomial(rows[j], mj, field.one))
        quots, rem = divide(s, basis, order)
        if rem.is_zero():
            continue
        for k, q in enumerate(quots):
            if not q.is_zero():
                s_row = _row_sub(s_row, [a * q for a in rows[k]])
        add_element(rem, s_row)

    return basis, rows


def _minimalize_tracked(basis, rows, order):
    paired = sorted(zip(basis, rows), key=lambda t: order.key(t[0].leading_pair(order)[0]))
    kept = []
    for g, row in paired:
        e = g.leading_pair(order)[0]
        if any(monomial_divides(k.leading_pair(order)[0], e) for k, _ in kept):
            continue
        kept.append((g, row))
    return [g for g, _ in kept], [r for _, r in kept]


def _interreduce_tracked(basis, rows, order):
    out_polys = list(basis)
    out_rows = list(rows)
    changed = True
    while changed:
        changed = False
        for i in range(len(out_polys)):
            others = out_polys[:i] + out_polys[i + 1:]
            other_rows = out_rows[:i] + out_rows[i + 1:]
            quots, rem = divide(out_polys[i], others, order)
            if rem != out_polys[i]:
                changed = True
                row = out_rows[i]
                for q, orow in zip(quots, other_rows):
                    if not q.is_zero():
                        row = _row_sub(row, [a * q for a in orow])
                out_polys[i] = rem
                out_rows[i] = row
    # zero rows cannot appear here: minimalization keeps only lead-essential elements
    order_key = _canonical_sort_key(order)
    paired = sorted(zip(out_polys, out_rows), key=lambda t: order_key(t[0]))
    return [g for g, _ in paired], [r for _, r in paired]


def buchberger_with_transform(gens, order: MonomialOrder = GREVLEX):
    """Reduced Groebner basis plus rows with basis[i] = sum rows[i][j]*gens[j]."""
    live = [g for g in gens if not g.is_zero()]
    if not live:
        ctx = gens[0].ctx if gens else None
        if ctx is None:
            raise ValueError("cannot infer the context of an empty ideal")
        return GroebnerBasis(ctx, order, []), []
    basis, rows = _buchberger_tracked(gens, order)
    basis, rows = _minimalize_tracked(basis, rows, order)
    basis, rows = _interreduce_tracked(basis, rows, order)
    return GroebnerBasis(basis[0].ctx, order, basis), rows


def buchberger(gens, order: MonomialOrder = GREVLEX) -> GroebnerBasis:
    """The unique reduced Groebner basis of the generated ideal."""
    return buchberger_with_transform(gens, order)[0]


# ---------------------------------------------------------------------------
# Syzygies
# ---------------------------------------------------------------------------

class SyzygyBasis:
    """A generating set of relations r with sum r_i * gens_i = 0."""

    __slots__ = ("gens", "relations")

    def __init__(self, gens, relations):
        self.gens = tuple(gens)
        self.relations = tuple(tuple(r) for r in relations)

    def __len__(self):
        return len(self.relations)

    def __iter__(self):
        return iter(self.relations)

    def verify(self) -> bool:
        """Symbolically expand every relation against the generators."""
        for rel in self.relations:
            acc = self.gens[0].ctx.zero()
            for r, g in zip(rel, self.gens):
                acc = acc + r * g
            if not acc.is_zero():
                return False
        return True


def _schreyer_relations(gb: GroebnerBasis):
    """Syzygies of the basis elements harvested from every S-pair reduction."""
    order = gb.order
    ctx = gb.ctx
    basis = list(gb.polys)
    rels = []
    for i, j in combinations(range(len(basis)), 2):
        li = basis[i].leading_pair(order)[0]
        lj = basis[j].leading_pair(order)[0]
        L = monomial_lcm(li, lj)
        mi, mj = monomial_div(L, li), monomial_div(L, lj)
        s = basis[i].mul_monomial(mi) - basis[j].mul_monomial(mj)
        quots, rem = divide(s, basis, order)
        if not rem.is_zero():
            raise AssertionError("S-polynomial of a Groebner basis did not reduce to 0")
        rel = [ctx.zero() for _ in basis]
        rel[i] = rel[i] + ctx.monomial(mi)
        rel[j] = rel[j] - ctx.monomial(mj)
        for k, q in enumerate(quots):
            rel[k] = rel[k] - q
        if any(not p.is_zero() for p in rel):
            rels.append(rel)
    return rels


def _module_degree(rel, gen_degrees):
    """Common degree of a homogeneous relation tuple, or None if zero."""
    degs = set()
    for p, d in zip(rel, gen_degrees):
        hom, pd = p.grading()
        if not hom:
            return False
        if pd is not None:
            degs.add(pd + d)
    if not degs:
        return None
    if len(degs) != 1:
        return False
    return degs.pop()


def _in_module_span(field, ctx, kept, kept_degrees, rel, rel_degree, gen_degrees):
    """Graded membership of rel in the module generated by kept, degreewise."""
    comp_bases = []
    offset = {}
    total = 0
    for idx, d in enumerate(gen_degrees):
        deg = rel_degree - d
        monos = list(monomials_of_degree(ctx.arity, deg)) if deg >= 0 else []
        offset[idx] = total
        comp_bases.append(monos)
        total += len(monos)

    def to_vector(tupl):
        vec = [field.zero] * total
        for idx, p in enumerate(tupl):
            monos = comp_bases[idx]
            pos = {m: k for k, m in enumerate(monos)}
            for e, c in p.terms.items():
                vec[offset[idx] + pos[e]] = c
        return vec

    columns = []
    for kt, kd in zip(kept, kept_degrees):
        shift = rel_degree - kd
        if shift < 0:
            continue
        for m in monomials_of_degree(ctx.arity, shift):
            columns.append(to_vector([p.mul_monomial(m) for p in kt]))
    return linalg.in_row_span(field, columns, to_vector(rel))


def syzygy_basis(gens, order: MonomialOrder = GREVLEX) -> SyzygyBasis:
    """A minimal generating set of the syzygy module of the given generators.

    The generators must be nonzero and homogeneous.  Schreyer's construction
    on the reduced basis provides a generating set, which is pulled back to
    the original generators and then trimmed degree by degree.
    """
    if not gens:
        raise ValueError("empty generator list")
    ctx = gens[0].ctx
    for g in gens:
        if g.is_zero():
            raise ValueError("syzygies of a zero generator are not defined here")
        if not g.is_homogeneous():
            raise ValueError("generators must be homogeneous")
    gb, rows = buchberger_with_transform(gens, order)
    basis = list(gb.polys)
    # express each original generator in terms of the basis
    a_rows = []
    for g in gens:
        quots, rem = divide(g, basis, order)
        if not rem.is_zero():
            raise AssertionError("generator does not reduce to zero against its own basis")
        a_rows.append(quots)

    raw = []
    n = len(gens)
    # rows of (identity - A*T)
    for i in range(n):
        rel = []
        for j in range(n):
            acc = ctx.one() if i == j else ctx.zero()
            for k in range(len(basis)):
                acc = acc - a_rows[i][k] * rows[k][j]
            rel.append(acc)
        raw.append(rel)
    # Schreyer relations pushed through the transform
    for srel in _schreyer_relations(gb):
        rel = []
        for j in range(n):
            acc = ctx.zero()
            for k in range(len(basis)):
                acc = acc + srel[k] * rows[k][j]
            rel.append(acc)
        raw.append(rel)

    gen_degrees = [g.total_degree() for g in gens]
    field = ctx.field
    graded = []
    for rel in raw:
        if all(p.is_zero() for p in rel):
            continue
        d = _module_degree(rel, gen_degrees)
        if d is False:
            # split an inhomogeneous relation into graded slices
            slices = {}
            for idx, p in enumerate(rel):
                for e, c in p.terms.items():
                    dd = sum(e) + gen_degrees[idx]
                    part = slices.setdefault(dd, [ctx.zero() for _ in rel])
                    part[idx] = part[idx] + ctx.monomial(e, c)
            for dd in sorted(slices):
                graded.append((dd, slices[dd]))
        else:
            graded.append((d, rel))

    graded.sort(key=lambda t: (t[0], tuple(p.to_str(order) for p in t[1])))
    kept = []
    kept_degrees = []
    for d, rel in graded:
        if kept and _in_module_span(field, ctx, kept, kept_degrees, rel, d, gen_degrees):
            continue
        kept.append(tuple(rel))
        kept_degrees.append(d)
    out = SyzygyBasis(gens, kept)
    if not out.verify():
        raise AssertionError("computed relations do not annihilate the generators")
    return out
