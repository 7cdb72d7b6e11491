"""Command line front end: groebner, image, hilbert, classify, deform,
family, verify, report."""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone

from .fields import RationalFunctionField, field_from_name
from .hilbert import NotACurve, degree_genus, hilbert_series
from .ideals import Ideal, ring_map_kernel
from .poly import order_from_name
from .textio import (
    BadRingHeader,
    PolySyntaxError,
    ideal_to_text,
    parse_ideal,
    parse_map,
    parse_point,
    parse_scalar,
)
from .cmpoints import (
    CaseLabel,
    PlaneCubic,
    classify_plane_cubic_detailed,
    verify_catalog_case,
)
from .deform import (
    cm_tangent_triple_line,
    embedded_deformations,
    functional,
    invariant_functional_specs,
)
from .families import ParametricIdeal, fiber_at, flatness_probe, generic_image
from .report import build_report, report_lines, report_to_json


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _with_field_override(text: str, field_name: str | None) -> str:
    """Swap the field of every ring header, keeping the variable lists."""
    if not field_name:
        return text
    out = []
    for line in text.splitlines():
        stripped = line.strip()
        if stripped.startswith("ring"):
            open_idx = stripped.rfind("[")
            out.append(f"ring {field_name}{stripped[open_idx:]}")
        else:
            out.append(line)
    return "\n".join(out) + "\n"


def _load_ideal(path: str, field_name: str | None = None) -> Ideal:
    return parse_ideal(_with_field_override(_read(path), field_name))


def cmd_groebner(args) -> int:
    ideal = _load_ideal(args.ideal, args.field)
    order = order_from_name(args.order)
    for g in ideal.groebner(order):
        print(g.to_str(order))
    return 0


def cmd_image(args) -> int:
    ideal = _load_ideal(args.ideal, args.field)
    rmap = parse_map(_with_field_override(_read(args.map), args.field))
    if rmap.target != ideal.ctx:
        print("error: map target ring differs from the ideal's ring", file=sys.stderr)
        return 2
    kernel = ring_map_kernel(rmap, ideal)
    sys.stdout.write(ideal_to_text(kernel))
    return 0


def cmd_hilbert(args) -> int:
    ideal = _load_ideal(args.ideal, args.field)
    data = hilbert_series(ideal, order_from_name(args.order))
    payload = {
        "hilbert_polynomial": data.hp_str(),
        "regularity_index": data.regularity_index,
    }
    try:
        d, g = degree_genus(data)
        payload["degree"] = d
        payload["genus"] = g
    except NotACurve:
        pass
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        line = f"HP = {data.hp_str()}"
        if "degree" in payload:
            line += f" ; degree {payload['degree']} ; genus {payload['genus']}"
        line += f" ; regularity <= {payload['regularity_index']}"
        print(line)
    return 0


def cmd_classify(args) -> int:
    ideal = _load_ideal(args.ideal, args.field)
    field = ideal.ctx.field
    gb = ideal.groebner()
    lines = [g for g in gb if g.total_degree() == 1]
    cubics = [g for g in gb if g.total_degree() == 3]
    if len(lines) != 1 or len(cubics) != 1:
        print("error: expected the ideal of a plane cubic (one linear, one "
              "cubic generator)", file=sys.stderr)
        return 2
    point = parse_point(args.point, field)
    pc = PlaneCubic(lines[0], cubics[0], point)
    result = classify_plane_cubic_detailed(pc)
    payload = {
        "case": result.label.value,
        "description": result.label.description,
        "notes": result.notes,
    }
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(f"case {payload['case']}: {payload['description']}")
        for k, v in result.notes.items():
            print(f"  note: {k}: {v}")
    return 0


def cmd_deform(args) -> int:
    if args.tangent_cm:
        field = field_from_name(args.field)
        rep = cm_tangent_triple_line(field)
        print(
            f"raw parameters {rep.raw_parameter_count}, action rank "
            f"{rep.action_rank}, tangent dimension {rep.quotient_dimension}"
        )
        print("invariant functionals:")
        for name, spec in invariant_functional_specs():
            ok = rep.is_invariant(functional(field, spec))
            print(f"  {name}: {'invariant' if ok else 'NOT invariant'}")
        return 0
    if not args.ideal:
        print("error: an ideal file is required", file=sys.stderr)
        return 2
    ideal = _load_ideal(args.ideal, None if args.field == "Q" else args.field)
    space = embedded_deformations(ideal)
    print(f"dimension {space.dimension}")
    for hs in space.basis_tuples():
        print("  (" + ", ".join(h.to_str() for h in hs) + ")")
    return 0


def cmd_family(args) -> int:
    text = _read(args.family)
    ideal = parse_ideal(text)
    field = ideal.ctx.field
    if not isinstance(field, RationalFunctionField):
        print("error: family files need a ring like Q(t)[...]", file=sys.stderr)
        return 2
    family = ParametricIdeal(ideal)
    if args.action == "fiber":
        if args.at is None:
            print("error: 'family fiber' needs --at <value>", file=sys.stderr)
            return 2
        c = parse_scalar(args.at, field.base)
        fiber = fiber_at(family, c)
        sys.stdout.write(ideal_to_text(fiber))
        return 0
    if args.action == "image":
        if args.map:
            rmap = parse_map(_read(args.map))
        else:
            from .families import parametric_standard_map

            rmap = parametric_standard_map(field.base)
        image = generic_image(family, rmap)
        sys.stdout.write(ideal_to_text(image.ideal))
        if image.excluded:
            print("# excluded parameter values: "
                  + ", ".join(sorted(str(v) for v in image.excluded)))
        return 0
    if args.action == "probe":
        samples = [parse_scalar(s, field.base) for s in args.samples.split(",")]
        probe = flatness_probe(family, samples)
        print(json.dumps(probe, indent=2))
        return 0 if probe["pass"] else 1
    print(f"error: unknown family action {args.action}", file=sys.stderr)
    return 2


def cmd_verify(args) -> int:
    if args.what != "catalog":
        print("error: only 'verify catalog' is available", file=sys.stderr)
        return 2
    field = field_from_name(args.field)
    overall = True
    for label in CaseLabel:
        rep = verify_catalog_case(label, field)
        overall = overall and rep.passed
        mark = "pass" if rep.passed else "FAIL"
        detail = "; ".join(
            f"{c.name}={'ok' if c.passed else 'FAIL'}" for c in rep.checks
        )
        print(f"case {label.value:<5} [{mark}] {detail}")
    print(f"overall: {'pass' if overall else 'FAIL'}")
    return 0 if overall else 1


def cmd_report(args) -> int:
    stamp = datetime.now(timezone.utc).isoformat() if args.timestamp else None
    report = build_report(args.field, timestamp=stamp)
    if args.json:
        print(report_to_json(report))
    else:
        for line in report_lines(report):
            print(line)
    return 0 if report["overall"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cmcurves",
        description="Exact verification toolkit for Cohen-Macaulay curves of "
        "twisted-cubic type.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("groebner", help="reduced Groebner basis of an ideal file")
    p.add_argument("ideal")
    p.add_argument("--order", default="grevlex",
                   help="lex, grevlex or elim:k (default grevlex)")
    p.add_argument("--field", help="override the file's coefficient field")
    p.set_defaults(func=cmd_groebner)

    p = sub.add_parser("image", help="kernel of a ring map modulo an ideal")
    p.add_argument("ideal")
    p.add_argument("--map", required=True, help="map file (two ring headers, "
                   "then 'var -> poly' lines)")
    p.add_argument("--field", help="override the files' coefficient field")
    p.set_defaults(func=cmd_image)

    p = sub.add_parser("hilbert", help="Hilbert polynomial, degree, genus")
    p.add_argument("ideal")
    p.add_argument("--order", default="grevlex")
    p.add_argument("--field", help="override the file's coefficient field")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("classify", help="classify a plane cubic with a point")
    p.add_argument("ideal")
    p.add_argument("--point", required=True, help="projective coordinates a,b,c,d")
    p.add_argument("--field", help="override the file's coefficient field")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("deform", help="first-order embedded deformations")
    p.add_argument("ideal", nargs="?")
    p.add_argument("--tangent-cm", action="store_true",
                   help="run the triple-line tangent computation")
    p.add_argument("--field", default="Q")
    p.set_defaults(func=cmd_deform)

    p = sub.add_parser("family", help="one-parameter family operations")
    p.add_argument("action", choices=["fiber", "image", "probe"])
    p.add_argument("family", help="ideal file over a ring like Q(t)[...]")
    p.add_argument("--at", help="parameter value for 'fiber'")
    p.add_argument("--map", help="map file for 'image'")
    p.add_argument("--samples", default="0,1,-2", help="samples for 'probe'")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("verify", help="verify the nine-case catalog")
    p.add_argument("what", nargs="?", default="catalog")
    p.add_argument("--field", default="Q", help="Q, GF5, GF7, ...")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("report", help="run the full verification report")
    p.add_argument("--field", default="Q")
    p.add_argument("--json", action="store_true")
    p.add_argument("--timestamp", action="store_true",
                   help="attach a generation timestamp")
    p.set_defaults(func=cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (PolySyntaxError, BadRingHeader) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
