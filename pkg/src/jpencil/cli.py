"""Command-line driver tying the pipeline together.

Reports are plain "key: value" lines in a stable order, so runs can be
diffed byte for byte; --json swaps the same content into one JSON
document.  Exit codes are stable per failure class: 0 all verdicts
pass, 2 argument errors, 3 precondition failures (bad primes, unusable
input), 4 certification failures (a residual or set comparison that
should have been zero is not).

Binary quartics are entered either as five comma-separated divided
coordinates (a0,a1,a2,a3,a4) or as a polynomial in t0, t1.  Forms
travel in the text format of form_to_text: a "vars:" line followed by
one "coeff NAME:" line per variable.
"""

import argparse
import json
import sys
from fractions import Fraction

from . import binary, polytext
from .components import WeightError, build_linear_pullback, build_logarithmic, build_rational
from .exceptional import (
    PipelineError,
    affine_fields,
    build_omega4,
    check_double_tangency,
    contract_volume,
    derive_omega_bar,
    reference_form,
    tangent_system_dim,
)
from .exterior import (
    descends_check,
    euler_field,
    exterior_derivative,
    form_to_text,
    integrability_check,
    interior_product,
    lie_bracket,
    parse_form_text,
    saturate,
)
from .poly import MultiPoly
from .varietyprobe import (
    BadPrimeError,
    compare_sets,
    stratum_points,
    zero_locus,
)

DEFAULT_PRIMES = (5, 7, 11, 13)

PROBE_TARGETS = ("sing-omega4", "sing-omega-bar", "sing-d-omega-bar",
                 "base-locus", "delta-sing")


# -- report plumbing -------------------------------------------------------

def _fmt(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return "[%s]" % ",".join(str(v) for v in value)
    return str(value)


def _point_text(pt):
    return "(%s)" % ":".join(str(x) for x in pt)


def _emit(items, as_json):
    if as_json:
        # repeated keys (multi-prime probe blocks, witness lines) become lists
        doc = {}
        for key, value in items:
            if isinstance(value, Fraction):
                value = str(value)
            if key in doc:
                if not isinstance(doc[key], list):
                    doc[key] = [doc[key]]
                doc[key].append(value)
            else:
                doc[key] = value
        print(json.dumps(doc, indent=2))
    else:
        for key, value in items:
            print("%s: %s" % (key, _fmt(value)))


def _form_items(omega, var_names):
    """The parsable tail block of a report: vars line plus coeff lines."""
    items = [("vars", " ".join(var_names))]
    for i, name in enumerate(var_names):
        coeff = omega.terms.get((i,), MultiPoly.zero(omega.arity))
        items.append(("coeff %s" % name, polytext.poly_to_text(coeff, var_names)))
    return items


def _write_form(path, omega, var_names):
    with open(path, "w") as fh:
        fh.write(form_to_text(omega, var_names))


# -- input parsing ---------------------------------------------------------

def _parse_fraction(text):
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ValueError("bad rational literal %r" % text)


def _parse_quartic(text):
    """Comma vector of divided coordinates, else a polynomial in t0, t1."""
    if "," in text:
        coords = [_parse_fraction(part) for part in text.split(",")]
        return binary.BinaryForm(coords)
    P = polytext.parse_poly(text, ("t0", "t1"))
    return binary.BinaryForm.from_poly(P)


def _parse_point(text):
    parts = [part for part in text.split(",")]
    if len(parts) != 2:
        raise ValueError("a point of the line has two coordinates, got %r" % text)
    return (_parse_fraction(parts[0]), _parse_fraction(parts[1]))


def _parse_matrix(text):
    rows = []
    for row_text in text.split(";"):
        rows.append([_parse_fraction(part) for part in row_text.split(",")])
    widths = {len(row) for row in rows}
    if len(widths) != 1:
        raise ValueError("ragged matrix rows")
    return rows


def _load_form(path):
    with open(path) as fh:
        return parse_form_text(fh.read())


def _infer_vars(texts):
    return polytext.variables_in(" + ".join("(%s)" % t for t in texts))


# -- binary quartic commands -----------------------------------------------

def _j_text(jv):
    if jv.kind == binary.JValue.FINITE:
        return jv.value
    return jv.kind


def _cmd_invariants(args):
    F = _parse_quartic(args.quartic)
    inv = binary.invariants_qcd(F)
    pattern = binary.root_pattern(F)
    items = [
        ("command", "invariants"),
        ("input", args.quartic),
        ("divided", ",".join(str(c) for c in F.coeffs)),
        ("Q", inv.Q),
        ("C", inv.C),
        ("D", inv.D),
        ("jRaw", _j_text(binary.j_invariant(F, "RAW"))),
        ("jClassical", _j_text(binary.j_invariant(F, "CLASSICAL"))),
        ("pattern", list(pattern.multiplicities)),
        ("class", pattern.orbit_class),
    ]
    return items, 0


def _cmd_classify(args):
    F = _parse_quartic(args.quartic)
    pattern = binary.root_pattern(F)
    inv = binary.invariants_qcd(F)
    items = [
        ("command", "classify"),
        ("input", args.quartic),
        ("pattern", list(pattern.multiplicities)),
        ("class", pattern.orbit_class),
        ("Q", inv.Q),
        ("C", inv.C),
        ("D", inv.D),
        ("jClassical", _j_text(binary.j_invariant(F, "CLASSICAL"))),
    ]
    return items, 0


def _cmd_veronese(args):
    point = _parse_point(args.point)
    F = binary.veronese(args.degree, point)
    items = [
        ("command", "veronese"),
        ("point", args.point),
        ("degree", args.degree),
        ("divided", ",".join(str(c) for c in F.coeffs)),
    ]
    return items, 0


# -- constructors ----------------------------------------------------------

def _certification_items(omega):
    return [
        ("descends", descends_check(omega).ok),
        ("integrable", integrability_check(omega).ok),
    ]


def _cmd_build_rational(args):
    var_names = _infer_vars([args.F1, args.F2])
    F1 = polytext.parse_poly(args.F1, var_names)
    F2 = polytext.parse_poly(args.F2, var_names)
    omega = build_rational(F1, F2)
    items = [("command", "build rational"),
             ("F1", polytext.poly_to_text(F1, var_names)),
             ("F2", polytext.poly_to_text(F2, var_names))]
    items += _certification_items(omega)
    items += _form_items(omega, var_names)
    if args.out:
        _write_form(args.out, omega, var_names)
        items.insert(3, ("out", args.out))
    return items, 0


def _cmd_build_log(args):
    if not args.factor:
        raise ValueError("need at least two --factor arguments")
    var_names = _infer_vars(args.factor)
    factors = [polytext.parse_poly(t, var_names) for t in args.factor]
    weights = [_parse_fraction(t) for t in args.weight or []]
    omega = build_logarithmic(factors, weights)
    items = [("command", "build log"),
             ("factors", len(factors)),
             ("weights", ",".join(str(w) for w in weights))]
    items += _certification_items(omega)
    items += _form_items(omega, var_names)
    if args.out:
        _write_form(args.out, omega, var_names)
        items.insert(3, ("out", args.out))
    return items, 0


def _cmd_build_pullback(args):
    eta, eta_vars = _load_form(args.form)
    matrix = _parse_matrix(args.matrix)
    omega = build_linear_pullback(matrix, eta)
    new_names = tuple("x%d" % i for i in range(omega.arity))
    items = [("command", "build pullback"),
             ("form", args.form),
             ("matrixRows", len(matrix)),
             ("matrixCols", len(matrix[0]))]
    items += _certification_items(omega)
    items += _form_items(omega, new_names)
    if args.out:
        _write_form(args.out, omega, new_names)
        items.insert(4, ("out", args.out))
    return items, 0


def _cmd_check(args):
    omega, var_names = _load_form(args.form)
    dc = descends_check(omega)
    ic = integrability_check(omega)
    items = [
        ("command", "check"),
        ("form", args.form),
        ("arity", omega.arity),
        ("descends", dc.ok),
        ("integrable", ic.ok),
    ]
    if not dc.ok:
        items.append(("eulerResidual", polytext.poly_to_text(dc.residual, var_names)))
    if not ic.ok:
        idx, coeff = sorted(ic.residual.terms.items())[0]
        component = "^".join("d %s" % var_names[i] for i in idx)
        items.append(("firstResidualComponent", component))
        items.append(("firstResidualCoefficient", polytext.poly_to_text(coeff, var_names)))
    code = 0 if dc.ok and ic.ok else 4
    return items, code


# -- exceptional pipeline --------------------------------------------------

_A_NAMES = ("a0", "a1", "a2", "a3")
_X_NAMES = ("x0", "x1", "x2", "x3")


def _cmd_exc_derive(args):
    report = derive_omega_bar()
    items = [("command", "exceptional derive"),
             ("factor", polytext.poly_to_text(report.factor, _A_NAMES)),
             ("factorExact", polytext.poly_to_text(report.factor_exact, _A_NAMES)),
             ("factorDegree", report.certifications["factorDegree"]),
             ("coefficientDegree", report.certifications["coefficientDegree"]),
             ("descends", report.certifications["descends"]),
             ("integrable", report.certifications["integrable"])]
    for i, name in enumerate(_A_NAMES):
        coeff = report.omega_h.terms.get((i,), MultiPoly.zero(4))
        items.append(("hyperplane %s" % name, polytext.poly_to_text(coeff, _A_NAMES)))
    items += _form_items(report.omega_bar, _A_NAMES)
    if args.out:
        _write_form(args.out, report.omega_bar, _A_NAMES)
        items.insert(1, ("out", args.out))
    return items, 0


def _cmd_exc_paper_form(args):
    omega = reference_form()
    sat = saturate(omega)
    items = [("command", "exceptional paper-form"),
             ("descends", descends_check(omega).ok),
             ("integrable", integrability_check(omega).ok),
             ("coefficientDegree", omega.coefficient_degrees()[0]),
             ("saturationFactorDegree", sat.factor.total_degree())]
    items += _form_items(omega, _X_NAMES)
    if args.out:
        _write_form(args.out, omega, _X_NAMES)
        items.insert(1, ("out", args.out))
    return items, 0


def _cmd_exc_fields(args):
    fields = affine_fields(4)
    omega = contract_volume(fields.X, fields.Y)
    sat = saturate(omega)
    items = [("command", "exceptional fields")]
    for name, field in (("X", fields.X), ("Y", fields.Y), ("R", euler_field(4))):
        items.append((name, ", ".join(polytext.poly_to_text(c, _X_NAMES)
                                      for c in field.coeffs)))
    bracket_xy = lie_bracket(fields.X, fields.Y)
    items.append(("bracketXYisMinusY", bracket_xy == -fields.Y))
    bracket_xr = lie_bracket(fields.X, euler_field(4))
    items.append(("bracketXRisZero", all(c.is_zero for c in bracket_xr.coeffs)))
    for name, field in (("annihilatesX", fields.X), ("annihilatesY", fields.Y),
                        ("annihilatesR", euler_field(4))):
        contracted = interior_product(field, omega)
        items.append((name, all(c.is_zero for c in contracted.terms.values())))
    items += _certification_items(omega)
    items.append(("saturationFactor", polytext.poly_to_text(sat.factor, _X_NAMES)))
    items += _form_items(omega, _X_NAMES)
    ok = all(value is True for key, value in items
             if key.startswith(("bracket", "annihilates")) or key in ("descends", "integrable"))
    return items, 0 if ok else 4


def _cmd_exc_tangent_dim(args):
    if args.form:
        omega, var_names = _load_form(args.form)
        label = args.form
    else:
        omega = reference_form()
        label = "reference"
    report = tangent_system_dim(omega)
    items = [
        ("command", "exceptional tangent-dim"),
        ("form", label),
        ("ambientDim", report.ambient_dim),
        ("rawKernelDim", report.raw_kernel_dim),
        ("projectiveDim", report.projective_dim),
        ("containsOmegaBar", report.contains_omega_bar),
    ]
    return items, 0 if report.contains_omega_bar else 4


def _cmd_exc_double_tangency(args):
    report = check_double_tangency()
    items = [
        ("command", "exceptional double-tangency"),
        ("constant", report.constant),
        ("identityOk", report.identity_ok),
        ("multiplicityExactlyTwo", report.multiplicity_exactly_two),
    ]
    ok = report.identity_ok and report.multiplicity_exactly_two
    return items, 0 if ok else 4


# -- finite-field probes ---------------------------------------------------

def _witness_items(label, points):
    items = []
    shown = list(points)[:20]
    for pt in shown:
        items.append((label, _point_text(pt)))
    if len(points) > 20:
        items.append(("%sTruncated" % label, True))
    return items


def _probe_comparison(locus, strata, p):
    report = compare_sets(locus, strata)
    items = [
        ("prime", p),
        ("locusCount", len(locus)),
        ("stratumCount", len(strata)),
        ("equal", report.equal),
    ]
    if not report.equal:
        items += _witness_items("onlyLocus", report.only_a)
        items += _witness_items("onlyStratum", report.only_b)
    return items, report.equal


def _probe_one(target, p):
    if target == "base-locus":
        inv = binary.invariant_polys()
        locus = zero_locus([inv.Q, inv.C], 4, p)
        strata = stratum_points("TBAR", p)
        return _probe_comparison(locus, strata, p)
    if target == "sing-omega4":
        locus = zero_locus(list(build_omega4().coefficients()), 4, p)
        strata = stratum_points("TBAR", p).union(stratum_points("NBAR", p))
        return _probe_comparison(locus, strata, p)
    if target == "delta-sing":
        inv = binary.invariant_polys()
        polys = [inv.D] + [inv.D.partial_derivative(i) for i in range(5)]
        locus = zero_locus(polys, 4, p)
        strata = stratum_points("TBAR", p).union(stratum_points("NBAR", p))
        return _probe_comparison(locus, strata, p)
    if target == "sing-omega-bar":
        bar = derive_omega_bar().omega_bar
        locus = zero_locus(list(bar.coefficients()), 3, p)
        strata = stratum_points("P1P", p).union(stratum_points("X2", p)).union(
            stratum_points("X3", p))
        return _probe_comparison(locus, strata, p)
    if target == "sing-d-omega-bar":
        d_omega = exterior_derivative(reference_form())
        locus = zero_locus(list(d_omega.terms.values()), 3, p)
        items = [
            ("prime", p),
            ("locusCount", len(locus)),
            ("expectedCount", 1),
            ("equal", len(locus) == 1),
        ]
        if len(locus) != 1:
            items += _witness_items("witness", locus)
        return items, len(locus) == 1
    raise ValueError("unknown probe target %r" % target)


def _cmd_probe(args):
    primes = [args.prime] if args.prime else list(DEFAULT_PRIMES)
    items = [("command", "probe"), ("target", args.target)]
    all_ok = True
    for p in primes:
        block, ok = _probe_one(args.target, p)
        items += block
        all_ok = all_ok and ok
    return items, 0 if all_ok else 4


# -- argument grammar and dispatch -----------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="jpencil",
        description="exact certificates for the quartic pencil and its exceptional form")
    parser.add_argument("--json", action="store_true",
                        help="emit the report as one JSON document")
    parser.add_argument("--seed", type=int, default=None,
                        help="seed for randomized suites; the commands here are deterministic and ignore it")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("invariants", help="Q, C, D, j and the root pattern of a quartic")
    p.add_argument("quartic", help="divided coordinates a0,a1,a2,a3,a4 or a polynomial in t0,t1")
    p.set_defaults(handler=_cmd_invariants)

    p = sub.add_parser("classify", help="orbit class of a quartic by root multiplicities")
    p.add_argument("quartic")
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("veronese", help="divided coordinates of a power of a linear form")
    p.add_argument("point", help="point of the line as c,d")
    p.add_argument("--degree", type=int, default=4)
    p.set_defaults(handler=_cmd_veronese)

    p = sub.add_parser("build", help="construct a certified integrable 1-form")
    build_sub = p.add_subparsers(dest="constructor", required=True)

    q = build_sub.add_parser("rational", help="from two homogeneous polynomials")
    q.add_argument("F1")
    q.add_argument("F2")
    q.add_argument("--out", help="write the form to this file")
    q.set_defaults(handler=_cmd_build_rational)

    q = build_sub.add_parser("log", help="weighted logarithmic combination of factors")
    q.add_argument("--factor", action="append", help="repeat for each factor")
    q.add_argument("--weight", action="append", help="repeat for each weight")
    q.add_argument("--out")
    q.set_defaults(handler=_cmd_build_log)

    q = build_sub.add_parser("pullback", help="pull an arity-3 form back along a linear map")
    q.add_argument("--form", required=True, help="form file for the arity-3 input")
    q.add_argument("--matrix", required=True,
                   help="rows separated by ';', entries by ','; one row per input variable")
    q.add_argument("--out")
    q.set_defaults(handler=_cmd_build_pullback)

    p = sub.add_parser("check", help="certify a form file: Euler descent and integrability")
    p.add_argument("--form", required=True)
    p.set_defaults(handler=_cmd_check)

    p = sub.add_parser("exceptional", help="the degree-two form on the hyperplane chart")
    exc_sub = p.add_subparsers(dest="step", required=True)

    q = exc_sub.add_parser("derive", help="restrict, saturate, and certify the pipeline")
    q.add_argument("--out", help="write the saturated form to this file")
    q.set_defaults(handler=_cmd_exc_derive)

    q = exc_sub.add_parser("paper-form", help="the fixed reference representative, certified")
    q.add_argument("--out")
    q.set_defaults(handler=_cmd_exc_paper_form)

    q = exc_sub.add_parser("fields", help="the affine symmetry fields and their volume contraction")
    q.set_defaults(handler=_cmd_exc_fields)

    q = exc_sub.add_parser("tangent-dim", help="dimension of the linearized deformation space")
    q.add_argument("--form", help="form file; default is the reference representative")
    q.set_defaults(handler=_cmd_exc_tangent_dim)

    q = exc_sub.add_parser("double-tangency", help="discriminant restriction identity")
    q.set_defaults(handler=_cmd_exc_double_tangency)

    p = sub.add_parser("probe", help="finite-field zero locus vs stratum comparisons")
    p.add_argument("--target", required=True, choices=PROBE_TARGETS)
    p.add_argument("--prime", type=int, default=None,
                   help="single prime; default runs %s" % (",".join(str(q) for q in DEFAULT_PRIMES)))
    p.set_defaults(handler=_cmd_probe)

    return parser


def run(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        items, code = args.handler(args)
    except (BadPrimeError, PipelineError, WeightError, polytext.PolyParseError,
            ValueError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3
    _emit(items, args.json)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
