"""Exact computational toolkit for Cohen-Macaulay curves of twisted-cubic type."""

__version__ = "1.0.0"

from .fields import (
    QQ,
    GF5,
    GF7,
    DualField,
    PrimeField,
    RationalFunctionField,
    Rationals,
    field_from_name,
)
from .poly import (
    GREVLEX,
    LEX,
    MonomialOrder,
    Polynomial,
    RingMap,
    VariableContext,
    elimination_order,
)
from .groebner import GroebnerBasis, buchberger, normal_form, syzygy_basis
from .ideals import (
    Ideal,
    colon,
    eliminate,
    intersect,
    member,
    radical_member,
    ring_map_kernel,
    saturate,
    saturate_wrt,
)
from .hilbert import HilbertData, degree_genus, hilbert_function, hilbert_series
from .textio import parse_document, parse_ideal, parse_map, parse_polynomial
from .cmpoints import (
    CaseLabel,
    CMPoint,
    PlaneCubic,
    catalog_case,
    catalog_image,
    classify_plane_cubic,
    cm_point_for,
    extension_matches_chart,
    extension_ring,
    pgl_transform,
    scheme_image,
    singular_locus,
    transform_point,
    verify_catalog_case,
    verify_cm_point,
)
from .families import (
    DegenerationFamily,
    ParametricIdeal,
    degeneration_chart_check,
    fiber_at,
    flatness_probe,
    generic_image,
    nodal_limit_family,
    syzygy_identity_check,
    triple_line_limit_family,
)
from .deform import (
    cm_tangent_triple_line,
    deformation_family_triple_line,
    embedded_deformations,
    regularity_check,
    resolution_check,
)
from .report import build_report
