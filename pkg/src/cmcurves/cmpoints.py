"""The nine-case catalog of Cohen-Macaulay curve points over singular plane
cubics: catalog data, per-case verification, extension-ring presentations,
the plane-cubic classifier, and construction of the point attached to a
given (plane cubic, singular point) pair.

Conventions.  Curves live in k[x,y,w,u]; their images in P^3 have coordinates
x,y,z,w.  The structure map sends x->x, y->y, z->0, w->w; general points
carry a conjugated map.  Linear substitutions act by v_i -> sum_j M[i][j] v_j,
so a point p of V(I) corresponds to the point M^-1 p of V(I o M).
"""

from __future__ import annotations

from enum import Enum

from . import linalg
from .fields import QQ
from .groebner import monomials_of_degree
from .hilbert import hilbert_series
from .ideals import Ideal, ring_map_kernel
from .poly import (
    ContextMismatch,
    Polynomial,
    RingMap,
    VariableContext,
    monomial_divides,
)


class NotSingularAtP(ValueError):
    """The designated point is not a singular point of the cubic."""


class IrrationalData(ValueError):
    """Classification or normalization needs data not rational over the field."""


class UnsupportedCase(ValueError):
    """No extension presentation exists for this case label."""


class ChartMiss(ValueError):
    """The designated point cannot be moved into the distinguished chart."""


class SingularMatrix(ValueError):
    """A projective transform was given a non-invertible matrix."""


CURVE_VARS = ("x", "y", "w", "u")
IMAGE_VARS = ("x", "y", "z", "w")


def curve_context(field=QQ) -> VariableContext:
    return VariableContext(CURVE_VARS, field)


def image_context(field=QQ) -> VariableContext:
    return VariableContext(IMAGE_VARS, field)


class CaseLabel(Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"
    V = "V"
    VI = "VI"
    VII = "VII"
    VIII = "VIII"
    IX = "IX"

    @property
    def description(self) -> str:
        return _CASE_NAMES[self]

    def __str__(self):
        return self.value


_CASE_NAMES = {
    CaseLabel.I: "nodal cubic, point at the node",
    CaseLabel.II: "cuspidal cubic, point at the cusp",
    CaseLabel.III: "conic and secant line, point at one intersection",
    CaseLabel.IV: "conic and tangent line, point at the tangency",
    CaseLabel.V: "triangle of lines, point at one vertex",
    CaseLabel.VI: "three concurrent lines, point at the common point",
    CaseLabel.VII: "double line and line, point on the double line off the intersection",
    CaseLabel.VIII: "double line and line, point at the intersection",
    CaseLabel.IX: "triple line, point on it",
}

# curve generators in k[x,y,w,u] and image generators in k[x,y,z,w]
_CATALOG = {
    CaseLabel.I: (
        ("x*u - y*w", "y*u - x*(x + w)", "u^2 - w*(x + w)"),
        ("z", "x^3 + x^2*w - y^2*w"),
    ),
    CaseLabel.II: (
        ("x*u - y*w", "y*u - x^2", "u^2 - x*w"),
        ("z", "x^3 - y^2*w"),
    ),
    CaseLabel.III: (
        ("x*u", "y*u - (x^2 + y*w)", "u^2 - u*w"),
        ("z", "x^3 + x*y*w"),
    ),
    CaseLabel.IV: (
        ("x*u - (x^2 + y*w)", "y*u", "u^2 - (x^2 + y*w)"),
        ("z", "x^2*y + y^2*w"),
    ),
    CaseLabel.V: (
        ("x*u", "y*u - y*w", "u^2 - u*w"),
        ("z", "x*y*w"),
    ),
    CaseLabel.VI: (
        ("x*u - x*y", "y*u - x*y", "u^2 - y*u"),
        ("z", "x^2*y - x*y^2"),
    ),
    CaseLabel.VII: (
        ("x*u", "y*u - x*w", "u^2"),
        ("z", "x^2*w"),
    ),
    CaseLabel.VIII: (
        ("x*u - x^2", "y*u", "u^2 - x*u"),
        ("z", "x^2*y"),
    ),
    CaseLabel.IX: (
        ("x*u", "y*u - x^2", "u^2"),
        ("z", "x^3"),
    ),
}

# extension presentations B = A[b]/(r1, r2, r3) on the chart w = 1
_EXTENSIONS = {
    CaseLabel.IV: ("x*b - (x^2 + y)", "y*b", "b^2 - (x^2 + y)"),
    CaseLabel.VI: ("x*b - x*y", "y*b - x*y", "b^2 - x*y"),
    CaseLabel.VII: ("x*b", "y*b - x", "b^2"),
    CaseLabel.VIII: ("x*b - x^2", "y*b", "b^2 - x^2"),
    CaseLabel.IX: ("x*b", "y*b - x^2", "b^2"),
}


def _parse(text, ctx):
    from .textio import parse_polynomial

    return parse_polynomial(text, ctx)


def standard_map(field=QQ) -> RingMap:
    """x -> x, y -> y, z -> 0, w -> w into the curve ring."""
    src = image_context(field)
    tgt = curve_context(field)
    return RingMap(
        src,
        tgt,
        {
            "x": tgt.variable("x"),
            "y": tgt.variable("y"),
            "z": tgt.zero(),
            "w": tgt.variable("w"),
        },
    )


class CMPoint:
    """A curve ideal, the ring map inducing the finite morphism to P^3, and
    the designated non-isomorphism point in the image space."""

    __slots__ = ("curve_ideal", "ring_map", "point", "label")

    def __init__(self, curve_ideal: Ideal, ring_map: RingMap, point, label=None):
        field = curve_ideal.ctx.field
        if ring_map.target != curve_ideal.ctx:
            raise ContextMismatch("ring map must land in the curve ring")
        if not ring_map.is_graded():
            raise ValueError("ring map must be graded")
        if not curve_ideal.is_homogeneous():
            raise ValueError("curve ideal must be homogeneous")
        point = tuple(field.canonical(c) for c in point)
        if len(point) != ring_map.source.arity or all(field.is_zero(c) for c in point):
            raise ValueError("point must be a nonzero coordinate tuple of the image space")
        if label is not None:
            expected = catalog_case(label, field)
            if not curve_ideal.equal(expected.curve_ideal):
                raise ValueError(f"curve ideal is not the catalog ideal for case {label}")
        self.curve_ideal = curve_ideal
        self.ring_map = ring_map
        self.point = point
        self.label = label

    @property
    def field(self):
        return self.curve_ideal.ctx.field

    def __repr__(self):
        tag = f" case {self.label}" if self.label else ""
        return f"CMPoint({self.curve_ideal!r},{tag} p={list(self.point)})"


def catalog_case(label: CaseLabel, field=QQ) -> CMPoint:
    """The catalog point for a case, with p = [0:0:0:1]."""
    ctx = curve_context(field)
    gens = [_parse(s, ctx) for s in _CATALOG[label][0]]
    point = (field.zero, field.zero, field.zero, field.one)
    pt = CMPoint.__new__(CMPoint)
    pt.curve_ideal = Ideal(ctx, gens)
    pt.ring_map = standard_map(field)
    pt.point = point
    pt.label = label
    return pt


def catalog_image(label: CaseLabel, field=QQ) -> Ideal:
    ctx = image_context(field)
    return Ideal(ctx, [_parse(s, ctx) for s in _CATALOG[label][1]])


def scheme_image(pt: CMPoint) -> Ideal:
    """Ideal of the scheme-theoretic image: the kernel of the structure map."""
    return ring_map_kernel(pt.ring_map, pt.curve_ideal)


# ---------------------------------------------------------------------------
# Linear substitutions
# ---------------------------------------------------------------------------

def substitute_linear(f: Polynomial, rows) -> Polynomial:
    """Substitute v_i -> sum_j rows[i][j] * v_j."""
    ctx = f.ctx
    gens = ctx.gens()
    images = {}
    for i, name in enumerate(ctx.names):
        lin = ctx.zero()
        for j, g in enumerate(gens):
            lin = lin + g.scale(rows[i][j])
        images[name] = lin
    return f.substitute(images)


def pgl_transform(ideal: Ideal, rows) -> Ideal:
    """The ideal {f(Mv) : f in I} for an invertible matrix M."""
    field = ideal.ctx.field
    rows = [[field.canonical(c) for c in r] for r in rows]
    if field.is_zero(linalg.det(field, rows)):
        raise SingularMatrix("transform matrix is singular")
    return Ideal(ideal.ctx, [substitute_linear(g, rows) for g in ideal.gens])


def transform_point(rows, point, field):
    """The companion point map: p in V(I) iff M^-1 p in V(I o M)."""
    inv = linalg.invert_matrix(field, [[field.canonical(c) for c in r] for r in rows])
    if inv is None:
        raise SingularMatrix("transform matrix is singular")
    return tuple(linalg.mat_mul_vec(field, inv, list(point)))


def _normalize_point(field, point):
    """Scale so the last nonzero coordinate is 1."""
    for i in range(len(point) - 1, -1, -1):
        if not field.is_zero(point[i]):
            inv = field.inv(point[i])
            return tuple(field.mul(inv, c) for c in point)
    raise ValueError("zero point")


def points_projectively_equal(field, p, q):
    return _normalize_point(field, p) == _normalize_point(field, q)


# ---------------------------------------------------------------------------
# Plane cubics and their singular loci
# ---------------------------------------------------------------------------

class PlaneCubic:
    """A plane cubic (ell, q) in P^3 together with a designated point on it."""

    __slots__ = ("ctx", "ell", "q", "point")

    def __init__(self, ell: Polynomial, q: Polynomial, point):
        ctx = ell.ctx
        field = ctx.field
        hom_l, deg_l = ell.grading()
        hom_q, deg_q = q.grading()
        if not (hom_l and deg_l == 1):
            raise ValueError("plane equation must be a nonzero linear form")
        if not (hom_q and deg_q == 3):
            raise ValueError("cubic equation must be a nonzero cubic form")
        if q.ctx != ctx:
            raise ContextMismatch("plane and cubic in different contexts")
        try:
            q.exact_divide(ell)
        except ValueError:
            pass
        else:
            raise ValueError("cubic is divisible by the plane equation")
        point = tuple(field.canonical(c) for c in point)
        if all(field.is_zero(c) for c in point):
            raise ValueError("zero point")
        if not field.is_zero(ell.evaluate(point)) or not field.is_zero(q.evaluate(point)):
            raise ValueError("point does not lie on the plane curve")
        self.ctx = ctx
        self.ell = ell
        self.q = q
        self.point = point

    def ideal(self) -> Ideal:
        return Ideal(self.ctx, [self.ell, self.q])

    def __repr__(self):
        return f"PlaneCubic({self.ell!r}, {self.q!r}, p={list(self.point)})"


def singular_locus(pc: PlaneCubic) -> Ideal:
    """Ideal of the singular scheme: (ell, q) plus the 2x2 Jacobian minors."""
    ctx = pc.ctx
    names = ctx.names
    dl = [pc.ell.partial_derivative(n) for n in names]
    dq = [pc.q.partial_derivative(n) for n in names]
    gens = [pc.ell, pc.q]
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            gens.append(dl[i] * dq[j] - dl[j] * dq[i])
    return Ideal(ctx, gens)


def point_in_singular_locus(pc: PlaneCubic) -> bool:
    J = singular_locus(pc)
    field = pc.ctx.field
    return all(field.is_zero(g.evaluate(pc.point)) for g in J.gens)


# ---------------------------------------------------------------------------
# Position normalization: plane -> {z = 0}, point -> [0:0:0:1]
# ---------------------------------------------------------------------------

def _standard_basis_vectors(field, n):
    vecs = []
    for i in range(n):
        v = [field.zero] * n
        v[i] = field.one
        vecs.append(v)
    return vecs


def position_move(ell: Polynomial, point):
    """An invertible M with ell o M proportional to z and M^-1 p = e4.

    Columns: two kernel vectors of ell completing p, then a vector off the
    plane, then p itself.
    """
    ctx = ell.ctx
    field = ctx.field
    if ctx.names != IMAGE_VARS:
        raise ContextMismatch("position moves are defined on the image coordinates")
    lrow = [ell.coefficient_of(tuple(1 if j == i else 0 for j in range(4))) for i in range(4)]
    p = [field.canonical(c) for c in point]
    if not field.is_zero(sum_eval(field, lrow, p)):
        raise ChartMiss("point does not lie on the plane")
    cols = [p]
    for v in linalg.nullspace(field, [lrow]):
        candidate = cols + [v]
        if linalg.rank(field, candidate) == len(candidate):
            cols.append(v)
        if len(cols) == 3:
            break
    if len(cols) != 3:
        raise ChartMiss("could not complete a basis of the plane")
    off = None
    for v in _standard_basis_vectors(field, 4):
        if not field.is_zero(sum_eval(field, lrow, v)):
            off = v
            break
    # columns ordered (plane, plane, off-plane, point)
    matrix_cols = [cols[1], cols[2], off, p]
    rows = [[matrix_cols[j][i] for j in range(4)] for i in range(4)]
    return rows


def sum_eval(field, coeffs, vec):
    acc = field.zero
    for a, b in zip(coeffs, vec):
        acc = field.add(acc, field.mul(a, b))
    return acc


def standardize_plane_cubic(pc: PlaneCubic):
    """(q_std in k[x,y,w], M) with (ell,q) o M = (z, q_std) and M^-1 p = e4."""
    field = pc.ctx.field
    M = position_move(pc.ell, pc.point)
    moved = pgl_transform(pc.ideal(), M)
    ctx = pc.ctx
    z = ctx.variable("z")
    gb = moved.groebner()
    lines = [g for g in gb if g.total_degree() == 1]
    if len(lines) != 1 or lines[0].monic() != z:
        raise ChartMiss("plane did not move onto z = 0")
    cubics = [g for g in gb if g.total_degree() == 3]
    if len(cubics) != 1:
        raise ValueError("moved ideal is not (z, cubic)")
    plane_ctx = VariableContext(("x", "y", "w"), field)
    q_plane = _drop_z(cubics[0], plane_ctx)
    return q_plane, M


def _drop_z(f: Polynomial, plane_ctx: VariableContext):
    """Restrict a z-free form in k[x,y,z,w] to k[x,y,w]."""
    zi = f.ctx.index("z")
    if any(e[zi] for e in f.terms):
        raise ValueError("form still involves z")
    return f.restrict(plane_ctx)


# ---------------------------------------------------------------------------
# Binary form utilities (for sections, projections and tangent cones)
# ---------------------------------------------------------------------------

def _binary_coeffs(f: Polynomial):
    """Coefficient list c[i] of s^i r^(d-i) for a binary form in a 2-var context."""
    d = f.total_degree()
    field = f.ctx.field
    out = [field.zero] * (d + 1)
    for (i, j), c in f.terms.items():
        out[i] = c
    return out


def _binary_gcd_list(field, a, b):
    """gcd of binary forms as full coefficient lists; None if both are zero.

    A full list of length d+1 encodes sum c_i s^i r^(d-i); trailing zeros are
    r-divisibility, i.e. roots at (1:0).
    """
    from .fields import up_gcd, up_trim

    fa, fb = up_trim(field, a), up_trim(field, b)
    if not fa and not fb:
        return None
    if not fa:
        return list(b)
    if not fb:
        return list(a)
    ra = (len(a) - 1) - (len(fa) - 1)
    rb = (len(b) - 1) - (len(fb) - 1)
    g = up_gcd(field, fa, fb)
    return list(g) + [field.zero] * min(ra, rb)


def _binary_squarefree_roots(field, coeffs):
    """Distinct roots in P^1 of a nonzero binary form.

    Returns (roots, sf_degree, all_rational): the roots found over the field
    as (s0, r0) pairs, the degree of the squarefree part (the number of
    geometric roots), and whether those account for all of them.
    """
    from .fields import up_derivative, up_divmod, up_gcd, up_roots, up_trim

    d = len(coeffs) - 1
    f = up_trim(field, coeffs)
    if not f:
        raise ValueError("zero binary form")
    roots = []
    sf_degree = 0
    if d - (len(f) - 1) > 0:
        roots.append((field.one, field.zero))  # root at infinity (1:0)
        sf_degree += 1
    if len(f) > 1:
        fp = up_derivative(field, f)
        g = up_gcd(field, f, fp) if fp else f
        sf = up_divmod(field, f, g)[0] if len(g) > 1 else f
        sf_degree += len(sf) - 1
        finite = up_roots(field, sf)
        for c in finite:
            roots.append((field.canonical(c), field.one))
    all_rational = len(roots) == sf_degree
    return roots, sf_degree, all_rational


def _restrict_to_line(f: Polynomial, p0, p1):
    """Binary form f(s*p0 + r*p1) in a fresh (s, r) context."""
    field = f.ctx.field
    sr = VariableContext(("s", "r"), field)
    s, r = sr.variable("s"), sr.variable("r")
    images = {}
    for i, name in enumerate(f.ctx.names):
        images[name] = s.scale(p0[i]) + r.scale(p1[i])
    return f.substitute(images, sr)


def _projected_root_data(J: Ideal, seed: int):
    """Roots of the (y:w)-projection of a zero-dimensional plane scheme after
    the seed's coordinate shuffle; None if the projection is unusable."""
    from .ideals import eliminate

    field = J.ctx.field
    rows = _unimodular_3x3(field, seed)
    JT = pgl_transform(J, rows)
    center = (field.one, field.zero, field.zero)
    if all(field.is_zero(g.evaluate(center)) for g in JT.gens):
        return None  # projection center sits on the scheme
    elim = eliminate(JT, ["y", "w"])
    if not elim.gens:
        return None
    acc = None
    for g in elim.gens:
        coeffs = _binary_coeffs(g)
        acc = coeffs if acc is None else _binary_gcd_list(field, acc, coeffs)
    if acc is None:
        return None
    roots, sf_degree, all_rational = _binary_squarefree_roots(field, acc)
    return rows, JT, roots, sf_degree, all_rational


def _distinct_point_count(J: Ideal) -> int:
    """Number of geometric points of a zero-dimensional subscheme of P^2.

    A projection can only merge points, never split them, so the maximum of
    the squarefree projection degrees over several coordinate shuffles is the
    true count.
    """
    counts = []
    for seed in range(36):
        data = _projected_root_data(J, seed)
        if data is None:
            continue
        counts.append(data[3])
        if len(counts) >= 4:
            break
    if not counts:
        raise ValueError("could not project the singular scheme")
    return max(counts)


def _rational_points_of(J: Ideal, expected: int):
    """Coordinates of the points of a zero-dimensional plane scheme.

    Raises IrrationalData when the points are not all rational over the base
    field.
    """
    field = J.ctx.field
    for seed in range(36):
        data = _projected_root_data(J, seed)
        if data is None:
            continue
        rows, JT, roots, sf_degree, all_rational = data
        if sf_degree != expected:
            continue  # this projection merged points; try another
        if not all_rational:
            raise IrrationalData(
                "singular points are not rational over the base field"
            )
        pts = []
        ok = True
        for (y0, w0) in roots:
            pt = _lift_projected_point(JT, y0, w0)
            if pt is None:
                ok = False
                break
            # a point of V(J o M) maps forward to M * pt on V(J)
            pts.append(tuple(linalg.mat_mul_vec(field, rows, list(pt))))
        if not ok:
            continue
        if any(
            not field.is_zero(g.evaluate(p)) for p in pts for g in J.gens
        ):
            continue
        normalized = sorted(
            {_normalize_point(field, p) for p in pts}
        )
        if len(normalized) == expected:
            return normalized
    raise IrrationalData("could not extract rational coordinates for the singular points")


def _lift_projected_point(J: Ideal, y0, w0):
    """Find x0 with [x0:y0:w0] in V(J); None if the fiber is not a single point."""
    from .fields import up_gcd, up_roots, up_trim

    field = J.ctx.field
    one_var = VariableContext(("x0var",), field)
    xv = one_var.variable("x0var")
    cands = None
    acc = None
    for g in J.gens:
        sub = g.substitute(
            {"x": xv, "y": one_var.constant(y0), "w": one_var.constant(w0)}, one_var
        )
        coeffs = [field.zero] * (sub.total_degree() + 1)
        for (i,), c in sub.terms.items():
            coeffs[i] = c
        coeffs = up_trim(field, coeffs)
        if not coeffs:
            continue
        acc = coeffs if acc is None else up_gcd(field, acc, coeffs)
    if acc is None:
        return None
    if len(acc) == 1:
        return None  # no common root on this fiber
    roots = up_roots(field, acc)
    if len(roots) != 1:
        # several points over this fiber (projection collision), or the single
        # root is not rational; the caller retries with shuffled coordinates
        return None
    return (field.canonical(roots[0]), y0, w0)


def _unimodular_3x3(field, seed: int):
    """Deterministic unimodular coordinate shuffles with well-spread centers.

    The center of the subsequent (y:w)-projection is the first column; taking
    it on the moment curve (1, k, k^2) guarantees any fixed chord line rules
    out at most two values of k.  Seeds also rotate which coordinate plays
    the center, for small prime fields where k wraps around.
    """
    rotations = [
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        [[0, 1, 0], [0, 0, 1], [1, 0, 0]],
        [[0, 0, 1], [1, 0, 0], [0, 1, 0]],
    ]
    k = seed // 3
    rot = rotations[seed % 3]
    moment = [[1, 0, 0], [k, 1, 0], [k * k, 0, 1]]
    prod = [
        [sum(rot[i][a] * moment[a][j] for a in range(3)) for j in range(3)]
        for i in range(3)
    ]
    return [[field.from_int(v) for v in row] for row in prod]


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

def _plane_context(field):
    return VariableContext(("x", "y", "w"), field)


def _jacobian_scheme(q_plane: Polynomial) -> Ideal:
    ctx = q_plane.ctx
    gens = [q_plane] + [q_plane.partial_derivative(n) for n in ctx.names]
    return Ideal(ctx, gens)


def _double_line_of(J: Ideal):
    """The reduced line supporting a one-dimensional singular scheme."""
    field = J.ctx.field
    pts = []
    for seed in range(24):
        p0, p1 = _section_line(field, seed)
        acc = None
        degenerate = False
        for g in J.reduced_generators():
            restricted = _restrict_to_line(g, p0, p1)
            if restricted.is_zero():
                degenerate = True  # the test line lies inside V(J)
                break
            coeffs = _binary_coeffs(restricted)
            acc = coeffs if acc is None else _binary_gcd_list(field, acc, coeffs)
        if degenerate or acc is None:
            continue
        roots, sf_degree, all_rational = _binary_squarefree_roots(field, acc)
        if sf_degree != 1 or not all_rational:
            continue
        s0, r0 = roots[0]
        pt = tuple(
            field.add(field.mul(s0, a), field.mul(r0, b)) for a, b in zip(p0, p1)
        )
        pt = _normalize_point(field, pt)
        if pt not in pts:
            pts.append(pt)
        if len(pts) == 2:
            break
    if len(pts) < 2:
        raise ValueError("could not locate the repeated line by sections")
    return _line_through(field, pts[0], pts[1])


def _section_line(field, seed: int):
    table = [
        ((1, 0, 0), (0, 1, 0)),
        ((1, 0, 0), (0, 0, 1)),
        ((0, 1, 0), (0, 0, 1)),
        ((1, 1, 0), (0, 1, 1)),
        ((1, 0, 1), (0, 1, 0)),
        ((1, 2, 0), (0, 1, 1)),
        ((1, 0, 2), (1, 1, 0)),
        ((2, 1, 1), (0, 1, 0)),
        ((1, 1, 1), (1, 0, 1)),
        ((1, 3, 1), (0, 1, 2)),
        ((3, 1, 0), (1, 0, 1)),
        ((1, 1, 2), (2, 1, 0)),
        ((1, 4, 0), (0, 1, 0)),
        ((1, 0, 3), (0, 1, 1)),
        ((2, 3, 1), (1, 1, 0)),
        ((1, 2, 2), (0, 1, 3)),
        ((4, 1, 1), (1, 0, 2)),
        ((1, 5, 2), (2, 0, 1)),
        ((3, 2, 1), (1, 1, 1)),
        ((1, 2, 3), (3, 1, 0)),
        ((2, 5, 1), (1, 0, 1)),
        ((5, 1, 3), (0, 1, 1)),
        ((1, 3, 4), (1, 1, 0)),
        ((2, 1, 5), (1, 2, 1)),
    ]
    a, b = table[seed % len(table)]
    return (
        tuple(field.from_int(v) for v in a),
        tuple(field.from_int(v) for v in b),
    )


def _line_through(field, p, q):
    """The linear form (as a coefficient triple) vanishing on two points."""
    ns = linalg.nullspace(field, [list(p), list(q)])
    if len(ns) != 1:
        raise ValueError("points do not span a line")
    return tuple(ns[0])


def _form_from_coeffs(ctx, coeffs):
    out = ctx.zero()
    for g, c in zip(ctx.gens(), coeffs):
        out = out + g.scale(c)
    return out


def _intersection_point(field, l1, l2):
    ns = linalg.nullspace(field, [list(l1), list(l2)])
    if len(ns) != 1:
        raise ValueError("lines do not meet in a single point")
    return tuple(ns[0])


class Classification:
    """Label plus the data the normal-form construction reuses."""

    __slots__ = ("label", "q_plane", "move", "notes")

    def __init__(self, label, q_plane, move, notes):
        self.label = label
        self.q_plane = q_plane
        self.move = move
        self.notes = notes


def classify_plane_cubic(pc: PlaneCubic) -> CaseLabel:
    """The case label of (plane cubic, singular point)."""
    return classify_plane_cubic_detailed(pc).label


def classify_plane_cubic_detailed(pc: PlaneCubic) -> Classification:
    field = pc.ctx.field
    q_plane, move = standardize_plane_cubic(pc)
    pctx = q_plane.ctx
    p_std = (field.zero, field.zero, field.one)
    # the designated point must be singular
    grads = [q_plane.partial_derivative(n).evaluate(p_std) for n in pctx.names]
    if not all(field.is_zero(v) for v in grads) or not field.is_zero(q_plane.evaluate(p_std)):
        raise NotSingularAtP("designated point is not a singular point of the cubic")
    J = _jacobian_scheme(q_plane)
    hd = hilbert_series(J)
    notes = {}
    if hd.hp_degree() >= 1:
        # repeated-line cases: the singular locus is one dimensional
        line = _double_line_of(J)
        L = _form_from_coeffs(pctx, line)
        rest = q_plane.exact_divide(L).exact_divide(L)
        if not field.is_zero(L.evaluate(p_std)):
            raise NotSingularAtP("point misses the repeated line")
        # triple line iff the residual factor is the same line again
        if _proportional(L, rest):
            return Classification(CaseLabel.IX, q_plane, move, notes)
        rest_coeffs = _linear_coeffs(rest)
        ip = _intersection_point(field, line, rest_coeffs)
        if points_projectively_equal(field, p_std, ip):
            return Classification(CaseLabel.VIII, q_plane, move, notes)
        return Classification(CaseLabel.VII, q_plane, move, notes)
    # squarefree cubic: count the distinct singular points
    count = _distinct_point_count(J)
    if count >= 3:
        return Classification(CaseLabel.V, q_plane, move, notes)
    if count == 2:
        return Classification(CaseLabel.III, q_plane, move, notes)
    # a single singular point: branch on the multiplicity at p
    chart = q_plane.dehomogenize("w")
    mult = min(sum(e) for e in chart.terms)
    if mult >= 3:
        return Classification(CaseLabel.VI, q_plane, move, notes)
    cone = _lowest_form(chart, 2)
    a = cone.coefficient_of((2, 0))
    b = cone.coefficient_of((1, 1))
    c = cone.coefficient_of((0, 2))
    disc = field.sub(field.mul(b, b), field.mul(field.from_int(4), field.mul(a, c)))
    if not field.is_zero(disc):
        if not field.is_square(disc):
            notes["node_splits_over"] = "a quadratic extension"
        return Classification(CaseLabel.I, q_plane, move, notes)
    # double tangent line: component test decides conic-with-tangent vs cusp
    tq = _double_root_line(field, a, b, c)
    if _line_divides(q_plane, (tq[0], tq[1], field.zero)):
        return Classification(CaseLabel.IV, q_plane, move, notes)
    return Classification(CaseLabel.II, q_plane, move, notes)


def _proportional(f: Polynomial, g: Polynomial) -> bool:
    if f.is_zero() or g.is_zero():
        return f.is_zero() and g.is_zero()
    if set(f.terms) != set(g.terms):
        return False
    field = f.ctx.field
    e0 = next(iter(f.terms))
    ratio = field.div(g.terms[e0], f.terms[e0])
    return all(
        field.is_zero(field.sub(g.terms[e], field.mul(ratio, c)))
        for e, c in f.terms.items()
    )


def _linear_coeffs(f: Polynomial):
    ctx = f.ctx
    return tuple(
        f.coefficient_of(tuple(1 if j == i else 0 for j in range(ctx.arity)))
        for i in range(ctx.arity)
    )


def _lowest_form(chart: Polynomial, degree: int) -> Polynomial:
    ctx = chart.ctx
    terms = {e: c for e, c in chart.terms.items() if sum(e) == degree}
    return Polynomial(ctx, terms)


def _double_root_line(field, a, b, c):
    """(alpha, beta) with a x^2 + b xy + c y^2 = (alpha x + beta y)^2 up to scale."""
    if not field.is_zero(a):
        alpha = field.one
        beta = field.div(b, field.mul(field.from_int(2), a))
        return (alpha, beta)
    if not field.is_zero(c):
        return (field.zero, field.one)
    # a = c = 0 with zero discriminant forces b = 0
    raise ValueError("zero tangent form")


def _line_divides(q: Polynomial, line_coeffs) -> bool:
    L = _form_from_coeffs(q.ctx, line_coeffs)
    try:
        q.exact_divide(L)
    except ValueError:
        return False
    return True


# ---------------------------------------------------------------------------
# Per-point verification
# ---------------------------------------------------------------------------

class CheckResult:
    __slots__ = ("name", "passed", "witness")

    def __init__(self, name, passed, witness=""):
        self.name = name
        self.passed = bool(passed)
        self.witness = witness

    def __repr__(self):
        mark = "ok" if self.passed else "FAIL"
        return f"[{mark}] {self.name}: {self.witness}"


class VerificationReport:
    """Named exact checks with witnesses; passes only if every check does."""

    __slots__ = ("subject", "checks")

    def __init__(self, subject: str):
        self.subject = subject
        self.checks = []

    def add(self, name, passed, witness=""):
        self.checks.append(CheckResult(name, passed, witness))

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def check(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def as_dict(self):
        return {
            "subject": self.subject,
            "passed": self.passed,
            "checks": [
                {"name": c.name, "passed": c.passed, "witness": c.witness}
                for c in self.checks
            ],
        }

    def __repr__(self):
        lines = [f"VerificationReport({self.subject}): "
                 f"{'PASS' if self.passed else 'FAIL'}"]
        lines += [f"  {c!r}" for c in self.checks]
        return "\n".join(lines)


def _standardize_point(pt: CMPoint, image: Ideal):
    """An equivalent point whose image is (z, cubic) and whose p is [0:0:0:1]."""
    field = pt.field
    gb = image.groebner()
    lines = [g for g in gb if g.total_degree() == 1]
    if len(lines) != 1:
        raise ChartMiss("image ideal does not contain a unique plane")
    M = position_move(lines[0], pt.point)
    Minv = linalg.invert_matrix(field, M)
    src = pt.ring_map.source
    images = {}
    for i, name in enumerate(src.names):
        acc = pt.ring_map.target.zero()
        for j, other in enumerate(src.names):
            c = Minv[i][j]
            if not field.is_zero(c):
                acc = acc + pt.ring_map.images[other].scale(c)
        images[name] = acc
    new_map = RingMap(src, pt.ring_map.target, images)
    e4 = tuple(field.one if i == 3 else field.zero for i in range(4))
    std = CMPoint.__new__(CMPoint)
    std.curve_ideal = pt.curve_ideal
    std.ring_map = new_map
    std.point = e4
    std.label = pt.label
    return std, M


def _chart_standard_monomials(gb, max_degree):
    """Standard monomials of degree <= max_degree, ordered by (degree, key)."""
    leads = gb.leading_exponents()
    out = []
    arity = gb.ctx.arity
    for d in range(max_degree + 1):
        for m in monomials_of_degree(arity, d):
            if not any(monomial_divides(e, m) for e in leads):
                out.append(m)
    return out


def _nf_vector(gb, f, monos, pos):
    field = gb.ctx.field
    nf = gb.normal_form(f)
    vec = [field.zero] * len(monos)
    for e, c in nf.terms.items():
        vec[pos[e]] = c
    return vec


class ChartData:
    """The affine chart comparison of a standardized point.

    A is the chart ring of the image, B the chart ring of the curve; the
    inclusion A -> B sends the image coordinates to the structure-map images.
    """

    __slots__ = ("gb", "ax", "ay", "monos", "pos", "a_span_cache")

    def __init__(self, curve_ideal: Ideal, ring_map: RingMap, max_degree=9):
        ctx = curve_ideal.ctx
        field = ctx.field
        w_img = ring_map.images["w"]
        jb = Ideal(ctx, list(curve_ideal.gens) + [w_img - ctx.one()])
        self.gb = jb.groebner()
        self.ax = ring_map.images["x"]
        self.ay = ring_map.images["y"]
        self.monos = _chart_standard_monomials(self.gb, max_degree)
        self.pos = {m: i for i, m in enumerate(self.monos)}
        self.a_span_cache = {}

    def b_dimension(self, degree: int) -> int:
        return sum(1 for m in self.monos if sum(m) <= degree)

    def a_span(self, degree: int):
        """Row space of the A-subring elements of filtration level <= degree."""
        cached = self.a_span_cache.get(degree)
        if cached is not None:
            return cached
        rows = []
        ctx = self.gb.ctx
        for i in range(degree + 1):
            for j in range(degree + 1 - i):
                f = (self.ax ** i) * (self.ay ** j)
                rows.append(_nf_vector(self.gb, f, self.monos, self.pos))
        reduced, pivots = linalg.rref(ctx.field, rows)
        span = [reduced[k] for k in range(len(pivots))]
        self.a_span_cache[degree] = span
        return span

    def gap_dimension(self, degree: int) -> int:
        return self.b_dimension(degree) - len(self.a_span(degree))

    def complement_representative(self, degree: int):
        """The smallest standard monomial outside the A-span at this level."""
        field = self.gb.ctx.field
        span = self.a_span(degree)
        for m in self.monos:
            if sum(m) > degree:
                continue
            vec = [field.zero] * len(self.monos)
            vec[self.pos[m]] = field.one
            if not linalg.in_row_span(field, span, vec):
                return self.gb.ctx.monomial(m)
        return None

    def in_a_span(self, f, degree: int) -> bool:
        vec = _nf_vector(self.gb, f, self.monos, self.pos)
        return linalg.in_row_span(self.gb.ctx.field, self.a_span(degree), vec)

    def chart_kernel_matches(self, q_chart) -> bool:
        """Whether the kernel of k[x,y] -> B is exactly (q_chart)."""
        from .ideals import Ideal as _Ideal
        from .ideals import eliminate as _eliminate
        from .poly import VariableContext as _VC

        ctx = self.gb.ctx
        field = ctx.field
        names = ctx.names + ("A1", "A2")
        work = _VC(names, field)
        gens = [g.embed(work) for g in self.gb.polys]
        gens.append(work.variable("A1") - self.ax.embed(work))
        gens.append(work.variable("A2") - self.ay.embed(work))
        ker = _eliminate(_Ideal(work, gens), ["A1", "A2"])
        two = _VC(("A1", "A2"), field)
        qa = q_chart.rename_context(two)
        return ker.equal(_Ideal(two, [qa]))


def verify_cm_point(pt: CMPoint) -> VerificationReport:
    """All exact per-point checks: Hilbert polynomials, plane-cubic image,
    chart module data, and singularity of the designated point."""
    report = VerificationReport(
        f"case {pt.label}" if pt.label else "cm point"
    )
    field = pt.field
    curve_hd = hilbert_series(pt.curve_ideal)
    report.add(
        "hp_curve",
        curve_hd.hp_str() == "3*t + 1",
        f"HP = {curve_hd.hp_str()}, regularity <= {curve_hd.regularity_index}",
    )
    image = scheme_image(pt)
    image_hd = hilbert_series(image)
    ell = int(curve_hd.hp_at(0) - image_hd.hp_at(0)) if image_hd.hp_degree() == 1 else None
    hp_image_ok = image_hd.hp_str() == "3*t" and ell == 1
    report.add(
        "hp_image",
        hp_image_ok,
        f"HP = {image_hd.hp_str()}, cokernel length l = {ell}",
    )
    gb = image.groebner()
    degrees = sorted(g.total_degree() for g in gb)
    shape_ok = degrees == [1, 3]
    report.add(
        "image_is_plane_cubic",
        shape_ok,
        "image ideal is (linear, cubic)" if shape_ok else
        f"image basis degrees {degrees}",
    )
    if not shape_ok:
        for name in ("chart_gap_dimension", "chart_multiplier", "chart_kernel",
                     "point_is_singular"):
            report.add(name, False, "skipped: image is not a plane cubic")
        return report

    std, move = _standardize_point(pt, image)
    image_std = pgl_transform(image, move)
    plane_ctx = _plane_context(field)
    q_std4 = [g for g in image_std.groebner() if g.total_degree() == 3][0]
    q_plane = _drop_z(q_std4, plane_ctx)
    q_chart = q_plane.dehomogenize("w")

    chart = ChartData(std.curve_ideal, std.ring_map)
    gap6, gap7 = chart.gap_dimension(6), chart.gap_dimension(7)
    report.add(
        "chart_gap_dimension",
        gap6 == 1 and gap7 == 1,
        f"dim_k(B/A) truncations: degree 6 -> {gap6}, degree 7 -> {gap7}",
    )
    if gap6 == 1 and gap7 == 1:
        rep = chart.complement_representative(7)
        xb = chart.in_a_span(chart.ax * rep, 8)
        yb = chart.in_a_span(chart.ay * rep, 8)
        report.add(
            "chart_multiplier",
            xb and yb,
            f"B = A + k*{rep.to_str()}; x*b in A: {xb}, y*b in A: {yb}",
        )
    else:
        report.add("chart_multiplier", False, "skipped: gap dimension is not 1")
    report.add(
        "chart_kernel",
        chart.chart_kernel_matches(q_chart),
        "kernel of A -> B equals the chart cubic",
    )
    sing = _jacobian_scheme(q_plane)
    p_std = (field.zero, field.zero, field.one)
    singular = all(field.is_zero(g.evaluate(p_std)) for g in sing.gens)
    report.add(
        "point_is_singular",
        singular,
        "designated point lies in the singular locus of the image",
    )
    return report


def verify_catalog_case(label: CaseLabel, field=QQ) -> VerificationReport:
    """Per-case verification including the expected-image identity."""
    pt = catalog_case(label, field)
    report = verify_cm_point(pt)
    expected = catalog_image(label, field)
    image = scheme_image(pt)
    report.checks.insert(
        0,
        CheckResult(
            "kernel_match",
            image.equal(expected),
            f"ker = ({', '.join(g.to_str() for g in image.reduced_generators())})",
        ),
    )
    return report


# ---------------------------------------------------------------------------
# Extension-ring presentations (the uniqueness normal forms)
# ---------------------------------------------------------------------------

class ExtensionPresentation:
    """A = k[x,y]/(chart cubic), B = A[b]/(three relations)."""

    __slots__ = ("label", "chart_poly", "relations")

    def __init__(self, label, chart_poly, relations):
        self.label = label
        self.chart_poly = chart_poly
        self.relations = tuple(relations)

    def presentation_ideal(self) -> Ideal:
        ctx = self.relations[0].ctx
        return Ideal(ctx, [self.chart_poly.embed(ctx)] + list(self.relations))

    def __repr__(self):
        rels = ", ".join(r.to_str() for r in self.relations)
        return (
            f"ExtensionPresentation({self.label}: A = k[x,y]/({self.chart_poly.to_str()}), "
            f"B = A[b]/({rels}))"
        )


def extension_ring(label: CaseLabel, field=QQ) -> ExtensionPresentation:
    """The unique extension B over the chart ring A, for the cases that have
    a finite presentation normal form."""
    if label not in _EXTENSIONS:
        raise UnsupportedCase(
            f"case {label} is normalization-type; no extension presentation"
        )
    two = VariableContext(("x", "y"), field)
    ext = VariableContext(("x", "y", "b"), field)
    image_ctx_ = image_context(field)
    q = _parse(_CATALOG[label][1][1], image_ctx_)
    q_chart = _drop_z(q, _plane_context(field)).dehomogenize("w").rename_context(two)
    rels = [_parse(s, ext) for s in _EXTENSIONS[label]]
    return ExtensionPresentation(label, q_chart, rels)


def extension_matches_chart(label: CaseLabel, field=QQ) -> bool:
    """Whether b -> u identifies the presentation with the curve's w-chart."""
    pres = extension_ring(label, field)
    pres_ideal = pres.presentation_ideal()
    chart_ctx = VariableContext(("x", "y", "u"), field)
    pres_in_u = Ideal(
        chart_ctx, [g.rename_context(chart_ctx) for g in pres_ideal.gens]
    )
    curve = catalog_case(label, field).curve_ideal
    chart_ideal = Ideal(chart_ctx, [g.dehomogenize("w") for g in curve.gens])
    if not pres_in_u.equal(chart_ideal):
        return False
    # dimension witness: equal filtered Hilbert functions through degree 6
    gb_a = pres_in_u.groebner()
    gb_b = chart_ideal.groebner()
    for d in range(7):
        ca = len([m for m in _chart_standard_monomials(gb_a, d) if sum(m) == d])
        cb = len([m for m in _chart_standard_monomials(gb_b, d) if sum(m) == d])
        if ca != cb:
            return False
    return True


# ---------------------------------------------------------------------------
# Normal-form frames and the point construction
# ---------------------------------------------------------------------------

def _cubic_coeffs_in_frame(q_plane: Polynomial, rows):
    """Coefficients of q in the cubic monomials of three independent forms.

    Returns a dict (i,j,k) -> coefficient with q = sum c * F1^i F2^j F3^k,
    or None when the forms are dependent.
    """
    ctx = q_plane.ctx
    field = ctx.field
    if linalg.rank(field, [list(r) for r in rows]) != 3:
        return None
    forms = [_form_from_coeffs(ctx, r) for r in rows]
    basis = list(monomials_of_degree(3, 3))
    pos = {m: i for i, m in enumerate(basis)}

    def vec(p):
        v = [field.zero] * len(basis)
        for e, c in p.terms.items():
            v[pos[e]] = c
        return v

    exps = [(i, j, 3 - i - j) for i in range(4) for j in range(4 - i)]
    columns = []
    for (i, j, k) in exps:
        prod = (forms[0] ** i) * (forms[1] ** j) * (forms[2] ** k)
        columns.append(vec(prod))
    matrix = [[columns[c][r] for c in range(len(exps))] for r in range(len(basis))]
    sol = linalg.solve(field, matrix, vec(q_plane))
    if sol is None:
        return None
    return {exps[c]: sol[c] for c in range(len(exps))}


def _coeffs_support(coeffs, field):
    return {e for e, c in coeffs.items() if not field.is_zero(c)}


def _completion_candidates(field):
    table = [
        (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1), (0, 1, 1),
        (1, -1, 0), (1, 1, 1), (2, 1, 0), (1, 2, 0), (1, 0, 2), (0, 1, 2),
    ]
    for t in table:
        yield tuple(field.from_int(v) for v in t)


def _complete_frame(field, fixed_rows, want_through_p, want_off_p):
    """Extend fixed rows by candidate forms; through-p rows have zero w-part."""
    rows = [list(r) for r in fixed_rows]
    for _ in range(want_through_p):
        for cand in _completion_candidates(field):
            if not field.is_zero(cand[2]):
                continue
            if linalg.rank(field, rows + [list(cand)]) == len(rows) + 1:
                rows.append(list(cand))
                break
        else:
            raise ValueError("no through-point completion found")
    for _ in range(want_off_p):
        for cand in _completion_candidates(field):
            if field.is_zero(cand[2]):
                continue
            if linalg.rank(field, rows + [list(cand)]) == len(rows) + 1:
                rows.append(list(cand))
                break
        else:
            raise ValueError("no off-point completion found")
    return [tuple(r) for r in rows]


def _sorted_lines(field, lines):
    normed = []
    for l in lines:
        normed.append(_normalize_point(field, l))
    return sorted(set(normed))


def _tangent_line_at(Q: Polynomial, point):
    ctx = Q.ctx
    field = ctx.field
    grad = tuple(Q.partial_derivative(n).evaluate(point) for n in ctx.names)
    if all(field.is_zero(c) for c in grad):
        raise ValueError("tangent at a singular point")
    return grad


def _second_intersection(Q: Polynomial, p_std):
    """A second rational point on an irreducible conic through p_std."""
    field = Q.ctx.field
    tangent = _tangent_line_at(Q, p_std)
    for cand in _completion_candidates(field):
        if not field.is_zero(cand[2]):
            continue  # the search lines pass through p_std = (0,0,1)
        line = cand
        if _proportional(
            _form_from_coeffs(Q.ctx, line), _form_from_coeffs(Q.ctx, tangent)
        ):
            continue
        # parametrize the line {cand = 0} through p_std
        basis = linalg.nullspace(field, [list(line)])
        if len(basis) != 2:
            continue
        # make p_std one of the basis points
        other = None
        for v in basis:
            if not points_projectively_equal(field, tuple(v), p_std):
                other = tuple(v)
        if other is None:
            continue
        form = _restrict_to_line(Q, p_std, other)
        coeffs = _binary_coeffs(form)
        roots, sf_degree, all_rational = _binary_squarefree_roots(field, coeffs)
        for (s0, r0) in roots:
            pt = tuple(
                field.add(field.mul(s0, a), field.mul(r0, b))
                for a, b in zip(p_std, other)
            )
            if not points_projectively_equal(field, pt, p_std):
                return _normalize_point(field, pt)
    raise IrrationalData("no second rational point found on the conic")


def _case_frame(label: CaseLabel, q_plane: Polynomial):
    """(frame rows, shape scalars) putting q into the case normal shape.

    Frames satisfy F1(p) = F2(p) = 0 and F3(p) != 0 for p = (0,0,1), except
    for case VII where the residual line plays the off-point role.
    """
    ctx = q_plane.ctx
    field = ctx.field
    p_std = (field.zero, field.zero, field.one)
    J = _jacobian_scheme(q_plane)

    if label in (CaseLabel.VII, CaseLabel.VIII, CaseLabel.IX):
        line = _double_line_of(J)
        L = _form_from_coeffs(ctx, line)
        rest = q_plane.exact_divide(L).exact_divide(L)
        if label is CaseLabel.IX:
            rows = _complete_frame(field, [line], 1, 1)
            coeffs = _cubic_coeffs_in_frame(q_plane, rows)
            return rows, {"shape": "F1^3", "coeffs": coeffs}
        rest_row = _linear_coeffs(rest)
        if label is CaseLabel.VII:
            rows = _complete_frame(field, [line], 1, 0)
            rows = [rows[0], rows[1], rest_row]
            coeffs = _cubic_coeffs_in_frame(q_plane, rows)
            return rows, {"shape": "F1^2*F3", "coeffs": coeffs}
        rows = _complete_frame(field, [line, rest_row], 0, 1)
        coeffs = _cubic_coeffs_in_frame(q_plane, rows)
        return rows, {"shape": "F1^2*F2", "coeffs": coeffs}

    if label is CaseLabel.V:
        pts = _rational_points_of(J, 3)
        others = [p for p in pts if not points_projectively_equal(field, p, p_std)]
        if len(others) != 2:
            raise IrrationalData("triangle vertices could not be separated")
        v2, v3 = sorted(others)
        l1 = _line_through(field, p_std, v2)
        l2 = _line_through(field, p_std, v3)
        l3 = _line_through(field, v2, v3)
        rows = [l1, l2, l3]
        coeffs = _cubic_coeffs_in_frame(q_plane, rows)
        return rows, {"shape": "F1*F2*F3", "coeffs": coeffs}

    if label is CaseLabel.VI:
        # split into three concurrent lines along the section {w = 0}
        e1 = (field.one, field.zero, field.zero)
        e2 = (field.zero, field.one, field.zero)
        form = _restrict_to_line(q_plane, e1, e2)
        roots, sf_degree, all_rational = _binary_squarefree_roots(
            field, _binary_coeffs(form)
        )
        if not all_rational or len(roots) != 3:
            raise IrrationalData("concurrent lines are not all rational")
        lines = []
        for (s0, r0) in roots:
            pt = tuple(
                field.add(field.mul(s0, a), field.mul(r0, b))
                for a, b in zip(e1, e2)
            )
            lines.append(_line_through(field, p_std, pt))
        l1, l2, l3 = _sorted_lines(field, lines)
        # write l3 = a*l1 + b*l2 and set F1 = a*l1, F2 = -b*l2
        sol = linalg.solve(
            field,
            [[l1[i], l2[i]] for i in range(3)],
            list(l3),
        )
        if sol is None:
            raise ValueError("concurrent lines are not coplanar through p")
        a_, b_ = sol
        f1 = tuple(field.mul(a_, c) for c in l1)
        f2 = tuple(field.neg(field.mul(b_, c)) for c in l2)
        rows = _complete_frame(field, [f1, f2], 0, 1)
        coeffs = _cubic_coeffs_in_frame(q_plane, rows)
        return rows, {"shape": "F1*F2*(F1-F2)", "coeffs": coeffs}

    if label in (CaseLabel.III, CaseLabel.IV):
        if label is CaseLabel.III:
            pts = _rational_points_of(J, 2)
            others = [
                p for p in pts if not points_projectively_equal(field, p, p_std)
            ]
            p2 = others[0]
            lam = _line_through(field, p_std, p2)
        else:
            chart = q_plane.dehomogenize("w")
            cone = _lowest_form(chart, 2)
            a = cone.coefficient_of((2, 0))
            b = cone.coefficient_of((1, 1))
            c = cone.coefficient_of((0, 2))
            alpha, beta = _double_root_line(field, a, b, c)
            lam = (alpha, beta, field.zero)
        Lam = _form_from_coeffs(ctx, lam)
        Q = q_plane.exact_divide(Lam)
        if label is CaseLabel.IV:
            p2 = _second_intersection(Q, p_std)
        t_p = _tangent_line_at(Q, p_std)
        t_p2 = _tangent_line_at(Q, p2)
        if label is CaseLabel.III:
            rows = [lam, t_p, t_p2]
            shape_name = "F1*(aF1^2+dF2*F3)"
        else:
            rows = [_line_through(field, p_std, p2), lam, t_p2]
            shape_name = "F2*(aF1^2+dF2*F3)"
        coeffs = _cubic_coeffs_in_frame(q_plane, rows)
        return rows, {"shape": shape_name, "coeffs": coeffs}

    if label is CaseLabel.II:
        chart = q_plane.dehomogenize("w")
        cone = _lowest_form(chart, 2)
        a = cone.coefficient_of((2, 0))
        b = cone.coefficient_of((1, 1))
        c = cone.coefficient_of((0, 2))
        alpha, beta = _double_root_line(field, a, b, c)
        f2 = (alpha, beta, field.zero)
        rows = _complete_frame(field, [f2], 1, 1)
        rows = [rows[1], rows[0], rows[2]]  # (F1 through p, F2 tangent, F3 off p)
        for _ in range(8):
            coeffs = _cubic_coeffs_in_frame(q_plane, rows)
            support = _coeffs_support(coeffs, field)
            if support <= {(3, 0, 0), (0, 2, 1)}:
                return rows, {"shape": "aF1^3+bF2^2*F3", "coeffs": coeffs}
            c021 = coeffs[(0, 2, 1)]
            c300 = coeffs[(3, 0, 0)]
            if field.is_zero(c021) or field.is_zero(c300):
                raise ValueError("cusp frame degenerated")
            # absorb F2-cubics into F3, then shear F1 by F2
            f1, f2r, f3 = rows
            upd3 = list(f3)
            for idx in range(3):
                upd3[idx] = field.add(
                    upd3[idx],
                    field.add(
                        field.mul(field.div(coeffs[(1, 2, 0)], c021), f1[idx]),
                        field.mul(field.div(coeffs[(0, 3, 0)], c021), f2r[idx]),
                    ),
                )
            tau = field.div(coeffs[(2, 1, 0)], field.mul(field.from_int(3), c300))
            upd1 = [field.add(f1[idx], field.mul(tau, f2r[idx])) for idx in range(3)]
            rows = [tuple(upd1), f2r, tuple(upd3)]
        raise ValueError("cusp normal form did not converge")

    if label is CaseLabel.I:
        chart = q_plane.dehomogenize("w")
        cone = _lowest_form(chart, 2)
        a = cone.coefficient_of((2, 0))
        b = cone.coefficient_of((1, 1))
        c = cone.coefficient_of((0, 2))
        field4 = field.from_int(4)
        disc = field.sub(field.mul(b, b), field.mul(field4, field.mul(a, c)))
        if not field.is_square(disc):
            raise IrrationalData("node tangents split only over a quadratic extension")
        sq = field.sqrt(disc)
        if not field.is_zero(a):
            two_a = field.mul(field.from_int(2), a)
            r1 = field.div(field.add(field.neg(b), sq), two_a)
            r2 = field.div(field.sub(field.neg(b), sq), two_a)
            t1 = (field.one, field.neg(r1), field.zero)
            t2 = (field.one, field.neg(r2), field.zero)
        else:
            t1 = (field.zero, field.one, field.zero)
            t2 = (b, c, field.zero)
        t1, t2 = sorted([_normalize_point(field, t1), _normalize_point(field, t2)])
        rows = _complete_frame(field, [t1, t2], 0, 1)
        coeffs = _cubic_coeffs_in_frame(q_plane, rows)
        c111 = coeffs[(1, 1, 1)]
        if field.is_zero(c111):
            raise ValueError("nodal frame degenerated")
        f1, f2, f3 = rows
        upd3 = list(f3)
        for idx in range(3):
            upd3[idx] = field.add(
                upd3[idx],
                field.add(
                    field.mul(field.div(coeffs[(2, 1, 0)], c111), f1[idx]),
                    field.mul(field.div(coeffs[(1, 2, 0)], c111), f2[idx]),
                ),
            )
        rows = [f1, f2, tuple(upd3)]
        coeffs = _cubic_coeffs_in_frame(q_plane, rows)
        support = _coeffs_support(coeffs, field)
        if not support <= {(1, 1, 1), (3, 0, 0), (0, 3, 0)}:
            raise ValueError("nodal normal form did not close up")
        return rows, {"shape": "F1*F2*F3+aF1^3+dF2^3", "coeffs": coeffs}

    raise ValueError(f"no frame construction for label {label}")


def _match_scalars(label: CaseLabel, field, cat_shape, our_shape):
    """Diagonal scalars kappa with (catalog frame) o R = kappa * (our frame)."""
    cc = cat_shape["coeffs"]
    oc = our_shape["coeffs"]
    one = field.one

    def ratio(e):
        return field.div(oc[e], cc[e])

    if label in (CaseLabel.V, CaseLabel.VI, CaseLabel.VII, CaseLabel.VIII,
                 CaseLabel.IX):
        return (one, one, one)
    if label is CaseLabel.III:
        # q0 o R = a0 F1^3 + d0 k3 F1F2F3 must be proportional to a F1^3 + d F1F2F3
        num = field.mul(cc[(3, 0, 0)], oc[(1, 1, 1)])
        den = field.mul(cc[(1, 1, 1)], oc[(3, 0, 0)])
        return (one, one, field.div(num, den))
    if label is CaseLabel.IV:
        num = field.mul(cc[(2, 1, 0)], oc[(0, 2, 1)])
        den = field.mul(cc[(0, 2, 1)], oc[(2, 1, 0)])
        return (one, one, field.div(num, den))
    if label is CaseLabel.II:
        num = field.mul(cc[(3, 0, 0)], oc[(0, 2, 1)])
        den = field.mul(cc[(0, 2, 1)], oc[(3, 0, 0)])
        return (one, one, field.div(num, den))
    if label is CaseLabel.I:
        c111c, a0, d0 = cc[(1, 1, 1)], cc[(3, 0, 0)], cc[(0, 3, 0)]
        c111o, a1, d1 = oc[(1, 1, 1)], oc[(3, 0, 0)], oc[(0, 3, 0)]
        a0n, d0n = field.div(a0, c111c), field.div(d0, c111c)
        a1n, d1n = field.div(a1, c111o), field.div(d1, c111o)
        bigA = field.div(a1n, a0n)
        bigD = field.div(d1n, d0n)
        cube = field.mul(field.mul(bigA, bigA), bigD)
        if not field.is_cube(cube):
            raise IrrationalData(
                "nodal cubic matches the normal form only over a cubic extension"
            )
        k1 = field.cbrt(cube)
        k2 = field.div(field.mul(k1, k1), bigA)
        return (k1, k2, one)
    raise ValueError(f"no scalar matching for label {label}")


def _embed_plane_rows(field, rows):
    """Lift a 3x3 plane transform on (x,y,w) to 4x4 fixing z."""
    plane_pos = [0, 1, 3]
    out = [[field.zero] * 4 for _ in range(4)]
    out[2][2] = field.one
    for i in range(3):
        for j in range(3):
            out[plane_pos[i]][plane_pos[j]] = field.canonical(rows[i][j])
    return out


def cm_point_for(pc: PlaneCubic) -> CMPoint:
    """The point of the moduli space attached to a plane cubic with a chosen
    singular point: the catalog point conjugated into the given position."""
    field = pc.ctx.field
    cls = classify_plane_cubic_detailed(pc)
    label = cls.label
    q0_plane = _drop_z(
        _parse(_CATALOG[label][1][1], image_context(field)), _plane_context(field)
    )
    cat_rows, cat_shape = _case_frame(label, q0_plane)
    our_rows, our_shape = _case_frame(label, cls.q_plane)
    kappas = _match_scalars(label, field, cat_shape, our_shape)
    E = [[field.canonical(c) for c in r] for r in cat_rows]
    F = [[field.mul(kappas[i], field.canonical(c)) for c in our_rows[i]] for i in range(3)]
    Einv = linalg.invert_matrix(field, E)
    if Einv is None:
        raise ValueError("catalog frame is singular")
    R = linalg.mat_mul(field, Einv, F)
    moved_q0 = substitute_linear(q0_plane, R)
    if not _proportional(moved_q0, cls.q_plane):
        raise AssertionError("normal-form transform failed to match the cubic")
    R4 = _embed_plane_rows(field, R)
    M0inv = linalg.invert_matrix(field, cls.move)
    G = linalg.mat_mul(field, R4, M0inv)
    Ginv = linalg.invert_matrix(field, G)
    base = catalog_case(label, field)
    src = base.ring_map.source
    images = {}
    for i, name in enumerate(src.names):
        acc = base.ring_map.target.zero()
        for j, other in enumerate(src.names):
            c = Ginv[i][j]
            if not field.is_zero(c):
                acc = acc + base.ring_map.images[other].scale(c)
        images[name] = acc
    pt = CMPoint.__new__(CMPoint)
    pt.curve_ideal = base.curve_ideal
    pt.ring_map = RingMap(src, base.ring_map.target, images)
    pt.point = pc.point
    pt.label = label
    if not scheme_image(pt).equal(pc.ideal()):
        raise AssertionError("constructed point has the wrong scheme-theoretic image")
    return pt
