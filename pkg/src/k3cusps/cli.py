"""
Command line front end.

Every subcommand prints one report (JSON by default).  Exit status: 0 for a
completed computation whatever its verdict, 2 for malformed input, 1 for an
internal failure (including a failing ``reproduce`` check).
"""

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from . import __version__, exact
from .catalog import CatalogError, load_catalog
from .codes import (TernaryCode, code_overlattice_with_basis, search_codes, verify_no_extra_roots,
                    weight_enumerator)
from .elliptic import (FiberConfiguration, SectionData, ns_overlattice_scan, section_height,
                       shioda_tate_disc, trivial_lattice)
from .errors import K3CuspsError, UnknownName
from .fqf import _prime_factors, disc_form, isotropic_elements, p_length, signature_mod8, trivial_form
from .glue import AmbientSpec, embedding_obstruction, supersingular_ambient, theorem2_pipeline
from .lattice import Lattice, invariants, rescale, standard_lattice
from .report import Report, render
from .reproduce import CHECKS, run_all, summary_table
from .traces import (EigenvalueMultiset, exterior_square, invariant_dimension, lefschetz_number,
                     max_admissible_rho, mumford_filter)


class InputError(Exception):
    """Malformed command line input (exit status 2)."""


# ------------------------------------------------------------ input helpers


def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError("cannot read %s: %s" % (path, exc.strerror)) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError("%s: invalid JSON at line %d, column %d: %s"
                         % (path, exc.lineno, exc.colno, exc.msg)) from None


def resolve_lattice(spec, catalog, negate=False):
    """A catalog name, a JSON file ({"gram": ...}) or a standard name like A2 or <6>."""
    if os.path.isfile(spec):
        data = _read_json(spec)
        if isinstance(data, list) and len(data) == 1:
            data = data[0]
        if not isinstance(data, dict) or "gram" not in data:
            raise InputError("%s: expected an object with a 'gram' field" % spec)
        L = Lattice(data["gram"], data.get("name", os.path.basename(spec)))
        return rescale(L, -1, "%s(-1)" % L.label) if negate else L
    if spec in catalog:
        L = catalog[spec]
        return rescale(L, -1, "%s(-1)" % L.label) if negate else L
    try:
        return standard_lattice(spec, -1 if negate else 1)
    except UnknownName:
        raise InputError("%r is neither a file, a catalog entry nor a standard lattice name"
                         % spec) from None


def parse_ambient(text, catalog):
    """rank,pos:neg,form with form one of trivial, ss:P:SIGMA or a catalog lattice."""
    parts = text.split(",")
    if len(parts) != 3:
        raise InputError("--ambient expects rank,pos:neg,form; got %r" % text)
    try:
        rank = int(parts[0])
        pos, neg = (int(x) for x in parts[1].split(":"))
    except ValueError:
        raise InputError("--ambient: bad rank or signature in %r" % text) from None
    form_spec = parts[2].strip()
    if form_spec == "trivial":
        form = trivial_form()
    elif form_spec.startswith("ss:"):
        try:
            _, p, sigma = form_spec.split(":")
            form = supersingular_ambient(int(p), int(sigma)).form
        except ValueError:
            raise InputError("--ambient: form must look like ss:P:SIGMA") from None
    else:
        form = disc_form(resolve_lattice(form_spec, catalog))
    return AmbientSpec(rank, (pos, neg), form, text)


def _parse_weights(text):
    try:
        return sorted({int(x) for x in text.split(",") if x.strip()})
    except ValueError:
        raise InputError("--weights expects comma separated integers") from None


def _parse_rational(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputError("not a rational number: %r" % text) from None


def _config(path):
    data = _read_json(path)
    try:
        return FiberConfiguration.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError("%s: bad fiber configuration (%s)" % (path, exc)) from None


# ----------------------------------------------------------------- commands


def cmd_lattice_invariants(args, catalog):
    L = resolve_lattice(args.lattice, catalog, args.neg)
    inv = invariants(L).as_dict()
    if L.is_even and L.det != 0:
        inv["discriminant_group"] = list(disc_form(L).orders)
    return Report("lattice invariants", {"lattice": args.lattice, "neg": args.neg, "label": L.label},
                  inv, {"gram": [list(r) for r in L.gram]}, anchor="rank, signature, determinant")


def cmd_fqf_show(args, catalog):
    L = resolve_lattice(args.lattice, catalog, args.neg)
    F = disc_form(L)
    primes = _prime_factors(F.order) if F.order > 1 else []
    result = {"form": F.as_json(), "order": F.order, "signature_mod8": signature_mod8(F),
              "p_lengths": {str(p): p_length(F, p) for p in primes}}
    try:
        result["nonzero_isotropic"] = len(isotropic_elements(F))
    except K3CuspsError:
        result["nonzero_isotropic"] = None
    return Report("fqf show", {"lattice": args.lattice, "neg": args.neg}, result,
                  anchor="discriminant form A_L = L^v / L")


def cmd_code_search(args, catalog):
    weights = _parse_weights(args.weights)
    codes = search_codes(args.dim, weights, workers=args.workers)
    classes = [{"generators": [list(g) for g in C.generators],
                "weight_enumerator": {str(k): v for k, v in weight_enumerator(C).items()}}
               for C in codes]
    return Report("code search", {"dim": args.dim, "weights": weights},
                  {"classes": len(codes), "codes": classes}, anchor="index 27")


def cmd_code_to_lattice(args, catalog):
    data = _read_json(args.file)
    try:
        C = TernaryCode.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError("%s: bad code (%s)" % (args.file, exc)) from None
    L, basis = code_overlattice_with_basis(C)
    sub = [[int(x) for x in row] for row in exact.inverse(basis)]
    roots, outside = verify_no_extra_roots(L, sub)
    result = {"det": L.det, "signature": list(L.signature_pair), "even": L.is_even,
              "root_pairs": roots, "root_pairs_outside_A2^9": outside,
              "discriminant_group": list(disc_form(L).orders)}
    return Report("code to-lattice", {"code": C.as_json()}, result,
                  {"gram": [list(r) for r in L.gram]}, anchor="overlattice of A2^9")


def cmd_glue_theorem2(args, catalog):
    v = theorem2_pipeline(args.p, args.sigma)
    details = dict(v.details)
    witness = details.pop("witness", None)
    return Report("glue theorem2", {"p": args.p, "sigma": args.sigma},
                  {"feasible": v.feasible, "obstruction": v.obstruction.value, "details": details},
                  {"isometry": witness} if witness else None,
                  anchor="sigma = 2 and p = -1 mod 3")


def cmd_glue_embed(args, catalog):
    L = resolve_lattice(args.lattice, catalog, args.neg)
    amb = parse_ambient(args.ambient, catalog)
    v = embedding_obstruction(L, amb)
    return Report("glue embed", {"lattice": args.lattice, "ambient": args.ambient},
                  v.as_json(), anchor="primitive embedding into the ambient lattice")


def cmd_trace_lefschetz(args, catalog):
    try:
        e = EigenvalueMultiset.parse(args.eigs)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    h2 = exterior_square(e)
    result = {"fixed_points": lefschetz_number(e), "h1": e.as_json(), "h2": h2.as_json(),
              "h1_invariants": invariant_dimension(e), "h2_invariants": invariant_dimension(h2),
              "trace_h1": [e.trace().a, e.trace().b], "trace_h2": [h2.trace().a, h2.trace().b]}
    return Report("trace lefschetz", {"eigs": args.eigs}, result,
                  anchor="the number of fixed points is equal to 9")


def cmd_trace_mumford(args, catalog):
    rows = mumford_filter(args.p_rank)
    return Report("trace mumford", {"p_rank": args.p_rank},
                  {"rows": rows, "max_admissible_rho": max_admissible_rho(rows)},
                  anchor="rho(A) <= 3")


def cmd_ns_height(args, catalog):
    config = _config(args.config)
    data = _read_json(args.section)
    try:
        s = SectionData.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError("%s: bad section (%s)" % (args.section, exc)) from None
    h = section_height(config, s)
    return Report("ns height", {"config": config.as_json(), "section": s.as_json()},
                  {"height": h.value, "nonpositive_warning": h.nonpositive},
                  anchor="h = 4 + 2 P.O - sum of fiber contributions")


def cmd_ns_disc(args, catalog):
    config = _config(args.config)
    heights = [_parse_rational(h) for h in args.height or []]
    gram = [[h if i == j else Fraction(0) for j in range(len(heights))]
            for i, h in enumerate(heights)]
    T, euler = trivial_lattice(config)
    disc = shioda_tate_disc(config, gram, args.torsion)
    return Report("ns disc", {"config": config.as_json(), "heights": heights,
                              "torsion": args.torsion},
                  {"disc": disc, "trivial_det": T.det, "trivial_lattice": T.label, "euler": euler},
                  anchor="discriminant -87")


def cmd_ns_scan(args, catalog):
    L = resolve_lattice(args.lattice, catalog, args.neg)
    return Report("ns scan", {"lattice": args.lattice}, ns_overlattice_scan(L),
                  anchor="no non-zero isotropic elements")


def cmd_reproduce_all(args, catalog):
    results = run_all(args.only)
    return Report("reproduce all", {"checks": [r.number for r in results]},
                  {"checks": [r.as_json(not args.no_timing) for r in results],
                   "passed": sum(r.passed for r in results), "total": len(results)},
                  anchor="acceptance suite"), results


# ------------------------------------------------------------------ parser


def _common(parser, top=False):
    default = None if top else argparse.SUPPRESS
    parser.add_argument("--format", choices=("json", "text"),
                        default="json" if top else default, help="output format (default json)")
    parser.add_argument("--catalog", default=default,
                        help="lattice catalog JSON (default: shipped table or $K3CUSPS_CATALOG)")
    parser.add_argument("--no-timing", action="store_true", default=False if top else default,
                        help="report elapsed_ms as 0 for byte-identical output")


def build_parser():
    parser = argparse.ArgumentParser(prog="k3cusps", description=__doc__.strip().splitlines()[0])
    parser.add_argument("--version", action="version", version="%(prog)s " + __version__)
    _common(parser, top=True)
    groups = parser.add_subparsers(dest="group", required=True)

    def leaf(sub, name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        _common(p)
        p.set_defaults(func=func)
        return p

    g = groups.add_parser("lattice", help="lattice invariants").add_subparsers(dest="cmd", required=True)
    p = leaf(g, "invariants", cmd_lattice_invariants, "rank, signature, det, parity")
    p.add_argument("lattice", help="catalog name, JSON file or standard name")
    p.add_argument("--neg", action="store_true", help="negate the form / use sign -1")

    g = groups.add_parser("fqf", help="discriminant forms").add_subparsers(dest="cmd", required=True)
    p = leaf(g, "show", cmd_fqf_show, "discriminant form of a lattice")
    p.add_argument("lattice")
    p.add_argument("--neg", action="store_true")

    g = groups.add_parser("code", help="ternary codes").add_subparsers(dest="cmd", required=True)
    p = leaf(g, "search", cmd_code_search, "classes of codes with restricted weights")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--weights", required=True, help="e.g. 6,9")
    p.add_argument("--workers", type=int, default=1)
    p = leaf(g, "to-lattice", cmd_code_to_lattice, "overlattice of A2(-1)^9 from a code file")
    p.add_argument("file", help='JSON {"generators": [[...9 entries...], ...]}')

    g = groups.add_parser("glue", help="gluing and embeddings").add_subparsers(dest="cmd", required=True)
    p = leaf(g, "theorem2", cmd_glue_theorem2, "cusp lattice inside a supersingular K3 lattice")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--sigma", type=int, required=True)
    p = leaf(g, "embed", cmd_glue_embed, "primitive embedding obstruction")
    p.add_argument("lattice")
    p.add_argument("--ambient", required=True, help="rank,pos:neg,form (trivial | ss:P:SIGMA | name)")
    p.add_argument("--neg", action="store_true")

    g = groups.add_parser("trace", help="order-3 traces").add_subparsers(dest="cmd", required=True)
    p = leaf(g, "lefschetz", cmd_trace_lefschetz, "fixed points from H^1 eigenvalues")
    p.add_argument("--eigs", required=True, help="four of 1, w, w2, comma separated")
    p = leaf(g, "mumford", cmd_trace_mumford, "endomorphism types allowed by the p-rank")
    p.add_argument("--p-rank", type=int, required=True, dest="p_rank")

    g = groups.add_parser("ns", help="elliptic Neron-Severi lattices").add_subparsers(dest="cmd", required=True)
    p = leaf(g, "height", cmd_ns_height, "height of a section")
    p.add_argument("config")
    p.add_argument("section")
    p = leaf(g, "disc", cmd_ns_disc, "Shioda-Tate determinant")
    p.add_argument("config")
    p.add_argument("--height", action="append",
                   help="height of a Mordell-Weil generator (repeat for an orthogonal basis)")
    p.add_argument("--torsion", type=int, default=1)
    p = leaf(g, "scan", cmd_ns_scan, "isotropic elements / overlattices")
    p.add_argument("lattice")
    p.add_argument("--neg", action="store_true")

    g = groups.add_parser("reproduce", help="acceptance suite").add_subparsers(dest="cmd", required=True)
    p = leaf(g, "all", cmd_reproduce_all, "run every check")
    p.add_argument("--only", type=int, action="append", choices=[c[0] for c in CHECKS],
                   help="restrict to the given check number (repeatable)")
    return parser


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    t0 = time.perf_counter()
    try:
        catalog = load_catalog(args.catalog)
        out = args.func(args, catalog)
    except (CatalogError, InputError, K3CuspsError, ValueError) as exc:
        print("error: %s" % exc, file=stderr)
        return 2
    except Exception as exc:  # an internal failure, not a user error
        print("internal error: %s: %s" % (type(exc).__name__, exc), file=stderr)
        return 1
    status = 0
    if isinstance(out, tuple):
        report, results = out
        status = 0 if all(r.passed for r in results) else 1
    else:
        report, results = out, None
    report.elapsed_ms = 0 if args.no_timing else int((time.perf_counter() - t0) * 1000)
    if results is not None and args.format == "text":
        print(summary_table(results, timing=not args.no_timing), file=stdout)
    else:
        print(render(report, args.format), file=stdout)
    return status


def run():
    sys.exit(main())
