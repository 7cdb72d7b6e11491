"""First-order deformation theory: embedded deformations by syzygy lifting,
resolution and regularity checks, and the tangent-space computation at the
triple-line point.

An embedded first-order deformation of I = (g_1..g_m) perturbs each generator
to g_i + eps*h_i with h_i of the same degree; flatness to first order means
every relation among the g_i lifts, i.e. sum r_i h_i lies in I for every
generating syzygy r.  The solver returns the full linear solution space
together with explicit lifted relations, which are verified over the dual
numbers.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .fields import QQ, DualField
from .groebner import buchberger_with_transform, divide, monomials_of_degree, syzygy_basis
from .hilbert import NotHomogeneous, hilbert_series
from .ideals import Ideal
from .poly import GREVLEX, RingMap, monomial_divides
from .cmpoints import curve_context


class AlignmentFailure(ValueError):
    """The solved deformation space does not contain a claimed direction."""


def _standard_monomials(gb, degree):
    leads = gb.leading_exponents()
    return [
        m
        for m in monomials_of_degree(gb.ctx.arity, degree)
        if not any(monomial_divides(e, m) for e in leads)
    ]


def _nf_vector(gb, f, monos, pos):
    field = gb.ctx.field
    nf = gb.normal_form(f)
    vec = [field.zero] * len(monos)
    for e, c in nf.terms.items():
        vec[pos[e]] = c
    return vec


class DeformationSpace:
    """The linear space of first-order embedded deformations of fixed
    generators, with degreewise normal-form coordinates."""

    __slots__ = (
        "ideal", "generators", "degrees", "gb", "syzygies",
        "monos", "pos", "basis_vectors", "transform_rows",
    )

    def __init__(self, ideal: Ideal):
        if not ideal.gens:
            raise ValueError("no generators to deform")
        for g in ideal.gens:
            if not g.is_homogeneous():
                raise NotHomogeneous("deformations need homogeneous generators")
        self.ideal = ideal
        self.generators = ideal.gens
        self.degrees = [g.total_degree() for g in self.generators]
        gb, rows = buchberger_with_transform(list(self.generators), GREVLEX)
        self.gb = gb
        self.transform_rows = rows
        self.syzygies = syzygy_basis(list(self.generators), GREVLEX)
        self.monos = {}
        self.pos = {}
        self.basis_vectors = self._solve()

    # -- coordinates ---------------------------------------------------------

    def _monos(self, degree):
        if degree not in self.monos:
            ms = _standard_monomials(self.gb, degree)
            self.monos[degree] = ms
            self.pos[degree] = {m: i for i, m in enumerate(ms)}
        return self.monos[degree]

    def unknown_layout(self):
        """[(offset, degree, monomials)] per generator slot."""
        layout = []
        offset = 0
        for d in self.degrees:
            ms = self._monos(d)
            layout.append((offset, d, ms))
            offset += len(ms)
        return layout

    def tuple_to_vector(self, hs):
        field = self.ideal.ctx.field
        vec = []
        for h, d in zip(hs, self.degrees):
            ms = self._monos(d)
            vec += _nf_vector(self.gb, h, ms, self.pos[d])
        return vec

    def vector_to_tuple(self, vec):
        ctx = self.ideal.ctx
        field = ctx.field
        out = []
        for offset, d, ms in self.unknown_layout():
            h = ctx.zero()
            for j, m in enumerate(ms):
                c = vec[offset + j]
                if not field.is_zero(c):
                    h = h + ctx.monomial(m, c)
            out.append(h)
        return tuple(out)

    # -- the linear system -----------------------------------------------------

    def _condition_rows(self):
        ctx = self.ideal.ctx
        field = ctx.field
        layout = self.unknown_layout()
        total = sum(len(ms) for _, _, ms in layout)
        rows = []
        for rel in self.syzygies.relations:
            degs = {
                r.total_degree() + d
                for r, d in zip(rel, self.degrees)
                if not r.is_zero()
            }
            if len(degs) != 1:
                raise NotHomogeneous("syzygy is not homogeneous")
            target_degree = degs.pop()
            target_monos = self._monos(target_degree)
            tpos = self.pos[target_degree]
            columns = []
            for i, (offset, d, ms) in enumerate(layout):
                for m in ms:
                    contrib = rel[i] * ctx.monomial(m)
                    columns.append(_nf_vector(self.gb, contrib, target_monos, tpos))
            for r in range(len(target_monos)):
                rows.append([columns[c][r] for c in range(total)])
        return rows

    def _solve(self):
        field = self.ideal.ctx.field
        rows = self._condition_rows()
        if not rows:
            layout = self.unknown_layout()
            total = sum(len(ms) for _, _, ms in layout)
            basis = []
            for j in range(total):
                v = [field.zero] * total
                v[j] = field.one
                basis.append(v)
            return basis
        return linalg.nullspace(field, rows)

    @property
    def dimension(self):
        return len(self.basis_vectors)

    def basis_tuples(self):
        return [self.vector_to_tuple(v) for v in self.basis_vectors]

    def contains(self, hs) -> bool:
        vec = self.tuple_to_vector(hs)
        return linalg.in_row_span(self.ideal.ctx.field, self.basis_vectors, vec)

    def coordinates_of(self, hs):
        """Coefficients of a tuple in the solved basis, or None."""
        field = self.ideal.ctx.field
        vec = self.tuple_to_vector(hs)
        cols = [
            [self.basis_vectors[j][i] for j in range(self.dimension)]
            for i in range(len(vec))
        ]
        return linalg.solve(field, cols, vec)

    # -- syzygy lifting witnesses ----------------------------------------------

    def lift_witnesses(self, hs):
        """For each generating syzygy r, a correction r' with
        sum (r_i + eps r'_i)(g_i + eps h_i) = 0 exactly."""
        ctx = self.ideal.ctx
        out = []
        for rel in self.syzygies.relations:
            s = ctx.zero()
            for r, h in zip(rel, hs):
                s = s + r * h
            quots, rem = divide(s, list(self.gb.polys), GREVLEX)
            if not rem.is_zero():
                raise AlignmentFailure("tuple is not a first-order deformation")
            correction = [ctx.zero()] * len(self.generators)
            for k, q in enumerate(quots):
                if q.is_zero():
                    continue
                for j in range(len(self.generators)):
                    correction[j] = correction[j] - q * self.transform_rows[k][j]
            out.append(tuple(correction))
        return out

    def verify_first_order(self, hs) -> bool:
        """Exact dual-number check of all lifted relations for one tuple."""
        ctx = self.ideal.ctx
        field = ctx.field
        dual = DualField(field)
        dctx = ctx.with_field(dual)

        def lift0(p):
            return p.map_coefficients(dual.lift, dual)

        def lift1(p):
            return p.map_coefficients(lambda c: dual.make(field.zero, c), dual)

        gens_eps = [lift0(g) + lift1(h) for g, h in zip(self.generators, hs)]
        for rel, correction in zip(self.syzygies.relations, self.lift_witnesses(hs)):
            acc = dctx.zero()
            for r, rp, ge in zip(rel, correction, gens_eps):
                acc = acc + (lift0(r) + lift1(rp)) * ge
            if not acc.is_zero():
                return False
        return True


def embedded_deformations(ideal: Ideal) -> DeformationSpace:
    """First-order embedded deformations of the ideal's given generators."""
    return DeformationSpace(ideal)


def resolution_check(ideal: Ideal) -> bool:
    """Three quadric generators with exactly two generating syzygies, both
    with linear entries."""
    gens = ideal.gens
    if len(gens) != 3 or any(g.total_degree() != 2 for g in gens):
        return False
    syz = syzygy_basis(list(gens), GREVLEX)
    if len(syz.relations) != 2:
        return False
    for rel in syz.relations:
        degs = {e.total_degree() for e in rel if not e.is_zero()}
        if degs != {1}:
            return False
    return syz.verify()


def regularity_check(ideal: Ideal) -> dict:
    """Hilbert-function values of a curve ideal: 3t + 1 from degree 1 through
    degree 8 (so in particular four linear forms on the curve)."""
    hd = hilbert_series(ideal)
    values = {t: hd.hilbert_function(t) for t in range(0, 9)}
    ok = all(values[t] == 3 * t + 1 for t in range(1, 9))
    return {
        "values": values,
        "h0_of_line_bundle": values[1],
        "pass": ok and values[1] == 4,
        "regularity_index": hd.regularity_index,
    }


# ---------------------------------------------------------------------------
# The triple-line tangent computation
# ---------------------------------------------------------------------------

def triple_line_ideal(field=QQ) -> Ideal:
    ctx = curve_context(field)
    from .textio import parse_polynomial as pp

    return Ideal(ctx, [pp("x*u", ctx), pp("y*u - x^2", ctx), pp("u^2", ctx)])


_FAMILY_MONOMIALS = ["x^2", "x*y", "x*w", "y^2", "y*w", "w*u"]


class NamedDirection:
    """One coefficient direction of the explicit deformation family: the free
    quadric sits in generator slot 0 or 1, and the third-generator part is
    derived from the lifting conditions, not prescribed."""

    __slots__ = ("name", "tuple")

    def __init__(self, name, hs):
        self.name = name
        self.tuple = hs

    def __repr__(self):
        parts = ", ".join(h.to_str() for h in self.tuple)
        return f"{self.name}: ({parts})"


def deformation_family_triple_line(field=QQ):
    """The twelve named directions a1..a12 of the deformation family of the
    triple-line curve, with the forced third components solved for.

    Directions a1..a6 put one quadric monomial into the first generator,
    a7..a12 into the second; the third generator's perturbation is the unique
    completion making the direction a first-order deformation.
    """
    from .textio import parse_polynomial as pp

    ideal = triple_line_ideal(field)
    space = embedded_deformations(ideal)
    ctx = ideal.ctx
    directions = []
    for slot in (0, 1):
        for k, mono in enumerate(_FAMILY_MONOMIALS):
            name = f"a{slot * 6 + k + 1}"
            h_free = pp(mono, ctx)
            h1 = h_free if slot == 0 else ctx.zero()
            h2 = h_free if slot == 1 else ctx.zero()
            directions.append(
                NamedDirection(name, _complete_third_component(space, h1, h2))
            )
    return space, directions


def _complete_third_component(space: DeformationSpace, h1, h2):
    """The unique h3 making (h1, h2, h3) a deformation direction."""
    field = space.ideal.ctx.field
    layout = space.unknown_layout()
    off3, d3, ms3 = layout[2]
    base = space.tuple_to_vector([h1, h2, space.ideal.ctx.zero()])
    total = len(base)
    # write (base + sum_j c_j e_{off3+j}) = basis * lam: unknowns (c, lam)
    cols = []
    for j in range(len(ms3)):
        col = [field.zero] * total
        col[off3 + j] = field.neg(field.one)
        cols.append(col)
    for v in space.basis_vectors:
        cols.append(list(v))
    matrix = [[cols[c][r] for c in range(len(cols))] for r in range(total)]
    sol = linalg.solve(field, matrix, base)
    if sol is None:
        raise AlignmentFailure(
            "no completion of the prescribed quadrics to a deformation direction"
        )
    ctx = space.ideal.ctx
    h3 = ctx.zero()
    for j, m in enumerate(ms3):
        c = sol[j]
        if not field.is_zero(c):
            h3 = h3 + ctx.monomial(m, c)
    out = (h1, h2, h3)
    if not space.contains(out):
        raise AlignmentFailure("completed tuple left the deformation space")
    return out


class TangentReport:
    """The reparametrization computation at the triple-line point."""

    __slots__ = (
        "field", "raw_parameter_count", "action_rank", "quotient_dimension",
        "action_columns", "invariant_basis", "directions",
    )

    def __init__(self, field, columns, invariant_basis, directions):
        self.field = field
        self.raw_parameter_count = 28
        self.action_columns = columns
        self.action_rank = linalg.rank(field, [list(c) for c in columns])
        self.quotient_dimension = self.raw_parameter_count - self.action_rank
        self.invariant_basis = invariant_basis
        self.directions = directions

    def is_invariant(self, functional) -> bool:
        field = self.field
        for col in self.action_columns:
            acc = field.zero
            for a, b in zip(functional, col):
                acc = field.add(acc, field.mul(a, b))
            if not field.is_zero(acc):
                return False
        return True

    def functionals_span_invariants(self, functionals) -> bool:
        if not all(self.is_invariant(f) for f in functionals):
            return False
        return (
            linalg.rank(self.field, [list(f) for f in functionals])
            == self.quotient_dimension
        )

    def __repr__(self):
        return (
            f"TangentReport(raw={self.raw_parameter_count}, "
            f"rank={self.action_rank}, quotient={self.quotient_dimension})"
        )


def tangent_parameter_names():
    return [f"a{i}" for i in range(1, 13)] + [f"b{i}" for i in range(1, 17)]


def functional(field, spec: dict):
    """A linear functional on the 28 parameters, e.g. {'b2': 1, 'a8': 1/3}."""
    names = tangent_parameter_names()
    vec = [field.zero] * 28
    for name, value in spec.items():
        vec[names.index(name)] = field.from_fraction(Fraction(value))
    return vec


def invariant_functional_specs():
    """Twelve functionals that cut out the orbit space of the action.

    Note the pairing of the w-coefficient of the first structure-map image
    with the w*u-coefficient of the first generator (b3 with a6): the shift
    direction along u kills u^2 into the ideal, so b4 itself is pure gauge
    and never appears.
    """
    third = Fraction(1, 3)
    half = Fraction(1, 2)
    return [
        ("a2 - a10", {"a2": 1, "a10": -1}),
        ("a3 - a11", {"a3": 1, "a11": -1}),
        ("a4", {"a4": 1}),
        ("a5", {"a5": 1}),
        ("b2 + (a8 - a1)/3", {"b2": 1, "a8": third, "a1": -third}),
        ("b3 + a9/2", {"b3": 1, "a9": half}),
        ("b3 - a6", {"b3": 1, "a6": -1}),
        ("b7 - a12", {"b7": 1, "a12": -1}),
        ("b9", {"b9": 1}),
        ("b10", {"b10": 1}),
        ("b11", {"b11": 1}),
        ("b12", {"b12": 1}),
    ]


def cm_tangent_triple_line(field=QQ) -> TangentReport:
    """Raw parameters, action rank and orbit dimension at the triple line.

    The 28 raw parameters are the 12 family coefficients plus the 16 entries
    of the first-order structure-map perturbation; the action of first-order
    linear reparametrizations of the curve's ambient space is assembled column
    by column over the dual numbers.
    """
    space, directions = deformation_family_triple_line(field)
    ctx = space.ideal.ctx
    names = ctx.names
    dual = DualField(field)
    dctx = ctx.with_field(dual)

    # family matrix: columns are the named directions in solver coordinates
    dir_vectors = [space.tuple_to_vector(d.tuple) for d in directions]
    if linalg.rank(field, dir_vectors) != 12:
        raise AlignmentFailure("the named directions do not span a 12-space")

    def lift0(p):
        return p.map_coefficients(dual.lift, dual)

    columns = []
    for k in range(16):
        row_idx, col_idx = divmod(k, 4)
        images = {}
        for i, n in enumerate(names):
            img = dctx.variable(n)
            if i == row_idx:
                img = img + dctx.variable(names[col_idx]).scale(dual.eps)
            images[n] = img
        sigma = RingMap(dctx, dctx, images)
        eps_parts = []
        for g in space.generators:
            moved = sigma.apply(lift0(g))
            eps_parts.append(moved.map_coefficients(lambda c: c.b, field))
        dvec = space.tuple_to_vector(eps_parts)
        # delta a: coordinates of the shift in the named family directions
        cols = [
            [dir_vectors[j][i] for j in range(12)] for i in range(len(dvec))
        ]
        da = linalg.solve(field, cols, dvec)
        if da is None:
            raise AlignmentFailure(
                "reparametrization shift left the deformation space"
            )
        # delta b: x-row shifts b1..b4, y-row b5..b8, w-row b13..b16;
        # the u-row of the substitution never meets the structure-map images
        db = [field.zero] * 16
        if row_idx == 0:
            db[col_idx] = field.one
        elif row_idx == 1:
            db[4 + col_idx] = field.one
        elif row_idx == 2:
            db[12 + col_idx] = field.one
        columns.append(list(da) + db)

    invariant_basis = linalg.nullspace(field, [list(c) for c in columns])
    return TangentReport(field, columns, invariant_basis, directions)
