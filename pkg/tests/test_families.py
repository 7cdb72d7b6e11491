from fractions import Fraction

import pytest

from cmcurves import GF7, QQ, Ideal, VariableContext
from cmcurves.cmpoints import CaseLabel, catalog_case
from cmcurves.families import (
    DegenerationFamily,
    ExcludedParameter,
    ParametricIdeal,
    check_degeneration,
    degeneration_chart_check,
    degeneration_table,
    fiber_at,
    flatness_probe,
    generic_image,
    nodal_limit_family,
    nodal_limit_identity,
    parametric_context,
    parametric_standard_map,
    syzygy_identity_check,
    triple_line_limit_family,
)
from cmcurves.hilbert import hilbert_series
from cmcurves.ideals import ring_map_kernel

from conftest import P


def test_nodal_family_fiber_at_zero(xyzw):
    fam = nodal_limit_family()
    fiber = fiber_at(fam, Fraction(0))
    expected = Ideal(
        xyzw,
        [P("x*z", xyzw), P("y*z", xyzw), P("z^2", xyzw),
         P("x^3 + x^2*w - y^2*w", xyzw)],
    )
    assert fiber.equal(expected)
    # generator-by-generator the zero fiber is the plain substitution
    assert fiber.gens[0] == P("x*z", xyzw)


def test_triple_line_family_fibers(xywu):
    fam = triple_line_limit_family()
    at0 = fiber_at(fam, Fraction(0))
    assert at0.equal(catalog_case(CaseLabel.IX).curve_ideal)
    at1 = fiber_at(fam, Fraction(1))
    expected = Ideal(
        xywu, [P("x*u", xywu), P("y*u - x^2 - x*y", xywu), P("u^2", xywu)]
    )
    assert at1.equal(expected)


def test_fiber_commutes_with_generator_arithmetic(xyzw):
    fam = nodal_limit_family()
    field = fam.ctx.field
    c = Fraction(2)
    f, g = fam.gens[0], fam.gens[3]
    spec = lambda p: p.map_coefficients(lambda rf: field.evaluate(rf, c), QQ)
    assert spec(f * g) == spec(f) * spec(g)
    assert spec(f + g) == spec(f) + spec(g)


def test_excluded_parameter_raises():
    ctx = parametric_context(("x", "y"), QQ)
    fam = ParametricIdeal(Ideal(ctx, [P("t*x - y", ctx)]), excluded=[Fraction(1)])
    with pytest.raises(ExcludedParameter):
        fiber_at(fam, Fraction(1))
    fiber_at(fam, Fraction(2))  # fine


def test_denominators_are_cleared_and_recorded():
    ctx = parametric_context(("x", "y"), QQ)
    F = ctx.field
    coeff = F.div(F.one, F.sub(F.t, F.one))  # 1/(t-1)
    gen = ctx.variable("x").scale(coeff) + ctx.variable("y")
    fam = ParametricIdeal(Ideal(ctx, [gen]))
    # generator now lies in Q[t][x,y]
    for g in fam.gens:
        for c in g.terms.values():
            assert len(c.den) == 1
    assert Fraction(1) in fam.excluded


def test_generic_image_of_triple_line_family():
    fam = triple_line_limit_family()
    image = generic_image(fam, parametric_standard_map(QQ))
    ctx = image.ctx
    expected = Ideal(ctx, [P("z", ctx), P("x^3 + t*x^2*y", ctx)])
    assert image.ideal.equal(expected)
    img0 = fiber_at(image, Fraction(0))
    assert img0.equal(Ideal(img0.ctx, [P("z", img0.ctx), P("x^3", img0.ctx)]))


def test_generic_image_of_constant_family():
    base = QQ
    ctx = parametric_context(("x", "y", "w", "u"), base)
    fam = ParametricIdeal(
        Ideal(ctx, [P("x*u", ctx), P("y*u - x^2", ctx), P("u^2", ctx)])
    )
    image = generic_image(fam, parametric_standard_map(base))
    ictx = image.ctx
    assert image.ideal.equal(Ideal(ictx, [P("z", ictx), P("x^3", ictx)]))
    assert not image.excluded


def test_image_and_fiber_commute_on_samples():
    fam = triple_line_limit_family()
    image = generic_image(fam, parametric_standard_map(QQ))
    from cmcurves.cmpoints import standard_map

    for c in (Fraction(1), Fraction(2), Fraction(-1)):
        assert c not in image.excluded
        via_generic = fiber_at(image, c)
        via_fiber = ring_map_kernel(standard_map(QQ), fiber_at(fam, c))
        assert via_generic.equal(via_fiber)


def test_flatness_probe_passes_on_both_families():
    for fam in (nodal_limit_family(), triple_line_limit_family()):
        probe = flatness_probe(fam, [Fraction(0), Fraction(1), Fraction(-2)])
        assert probe["pass"]
        assert probe["generic_hp"] == "3*t + 1"


def test_flatness_probe_detects_a_jump():
    ctx = parametric_context(("x", "y", "z", "w"), QQ)
    broken = ParametricIdeal(
        Ideal(ctx, [P("x*z - t*y*w", ctx), P("x^3", ctx)])
    )
    probe = flatness_probe(broken, [Fraction(0), Fraction(1)])
    assert not probe["pass"]


def test_syzygy_identity():
    assert nodal_limit_identity()
    assert syzygy_identity_check(GF7)


def test_syzygy_identity_detects_perturbation():
    ctx = VariableContext(("t", "x", "y", "z", "w"), QQ)
    f1 = P("x*z - t*y*w + t*w^2", ctx)  # perturbed
    f2 = P("y*z - t*x*(x + w)", ctx)
    q = P("x^3 + x^2*w - y^2*w", ctx)
    lhs = P("y", ctx) * f1 - P("x", ctx) * f2 - P("t", ctx) * q
    assert not lhs.is_zero()


def test_documented_edge_is_degeneration():
    entry = [e for e in degeneration_table() if e.documented][0]
    report = check_degeneration(entry)
    assert report["pass"]
    assert report["generic_label"] == "VIII"
    assert report["special_label"] == "IX"


def test_constant_family_is_rejected_as_an_edge():
    base = QQ
    ctx = parametric_context(("x", "y", "w", "u"), base)
    fam = ParametricIdeal(
        Ideal(ctx, [P("x*u", ctx), P("y*u - x^2", ctx), P("u^2", ctx)])
    )
    entry = DegenerationFamily(
        "constant", CaseLabel.IX, CaseLabel.IX, fam
    )
    report = check_degeneration(entry)
    assert not report["is_degeneration"]
    assert not report["pass"]


def test_full_degeneration_chart():
    result = degeneration_chart_check()
    assert result["pass"]
    assert result["all_reach_triple_line"]
    edges = {(e["source"], e["target"]) for e in result["edges"]}
    assert ("I", "IX") in edges
    assert ("VIII", "IX") in edges


def test_chart_over_gf7():
    result = degeneration_chart_check(GF7)
    assert result["pass"]


def test_generic_fiber_is_twisted_cubic_for_nodal_family():
    fam = nodal_limit_family()
    hd = hilbert_series(fam.ideal)
    assert hd.hp_str() == "3*t + 1"
    fiber = fiber_at(fam, Fraction(1))
    assert hilbert_series(fiber).hp_str() == "3*t + 1"
