"""Command-line front end.

Exit codes: 0 pass, 1 fail, 2 inconclusive, 3 parse or usage error,
4 resource limit.  Reports are deterministic for a fixed input and seed;
timings are only added with ``--timing``.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .certio import collect_blocks, membership_block, separation_block, verify_block
from .errors import AlgebraError, InfiniteField, ParseError, ResourceLimit
from .exactfield import QQ
from .geometry import (
    MEMBER,
    NO,
    NOT_MEMBER,
    UNKNOWN,
    equiradical_certificate,
    has_rational_zero,
    is_irreducible,
    rabinowitsch_embed,
    zero_set,
)
from .sheafdual import duality_check_f, duality_check_phi, sections_isomorphism_check, spm, spm_homeomorphism_check, stalk_at
from .signature import (
    CERTIFIED,
    HAS_ZERO,
    CanonicalLoc,
    default_binary_normic,
    in_signature,
    is_special_ideal_cert,
    is_star_algebra,
    normic_compose,
    normic_from_galois,
    normic_from_minpoly,
)
from .suites import DEFAULT_SEED, DEFAULT_TRIALS, SUITES, run_suite
from .textio import infer_names, parse_field, parse_input, parse_point, parse_poly

SCHEMA = "equigeom-report/1"
EXIT = {"pass": 0, "fail": 1, "inconclusive": 2, "usage": 3, "resource_limit": 4}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT["usage"], f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError("bounds must be non-negative")
    return v


def _field_arg(text: str):
    try:
        return parse_field(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=_field_arg, default=None, help="QQ, GF(p), GF(p^m) or GF(p^m; modulus)")
    common.add_argument("--vars", default=None, help="comma-separated variable names")
    common.add_argument("--max-degree", type=_positive, default=4, help="certificate search degree bound (default 4)")
    common.add_argument("--height", type=_positive, default=50, help="rational search height bound (default 50)")
    common.add_argument("--json", action="store_true", help="print the JSON report")
    common.add_argument("--timing", action="store_true", help="add wall-clock timing to the report")

    p = _Parser(prog="equigeom", description="Exact equiresidual affine geometry over small fields and QQ.")
    p.add_argument("--version", action="version", version=f"equigeom {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cmd(name, help_, inputs=True):
        s = sub.add_parser(name, parents=[common], help=help_)
        if inputs:
            s.add_argument("input", help="ideal/variety file, or - for stdin")
        return s

    s = cmd("normic", "construct and verify a normic form", inputs=False)
    s.add_argument("--arity", type=_positive, default=2)
    s.add_argument("--galois", type=_positive, default=None, help="norm form of a degree-m extension (finite k)")
    s.add_argument("--minpoly", default=None, help="norm form from an irreducible polynomial in T (QQ)")

    s = cmd("signature", "decide membership of a polynomial in the signature", inputs=False)
    s.add_argument("polynomial")

    cmd("points", "list the rational zeros")
    cmd("vanishing", "ideal of all polynomials vanishing on the zero set")
    s = cmd("equiradical", "certify membership in the equiradical")
    s.add_argument("--element", required=True)
    cmd("nullstellensatz", "rational zero or a certified nowhere-zero element of the ideal")
    cmd("is-special", "is the ideal equal to its equiradical")
    s = cmd("is-star", "are all signature values invertible in k[V] (or its canonical localisation)")
    s.add_argument("--localised", action="store_true")
    s = cmd("rabinowitsch", "realise the basic open D_V(h) as a closed set")
    s.add_argument("--element", required=True)
    s = cmd("sections", "check k[V] localised at h against sections on D_V(h)")
    s.add_argument("--element", required=True)
    s = cmd("stalk", "evaluate a germ g/h at a point")
    s.add_argument("--point", required=True)
    s.add_argument("--element", required=True)
    s.add_argument("--denominator", default="1")
    cmd("spm", "the maximal spectrum of k[V]")
    cmd("check-duality", "maximal spectrum versus global sections")
    cmd("verify", "re-verify certificates from a JSON report")
    s = sub.add_parser("check", parents=[common], help="run a seeded property suite")
    s.add_argument("--suite", required=True, choices=SUITES)
    s.add_argument("--trials", type=_positive, default=None,
                   help="number of trials (defaults: " + ", ".join(f"{k} {v}" for k, v in DEFAULT_TRIALS.items()) + ")")
    s.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"random seed (default {DEFAULT_SEED})")
    return p


# -- helpers --------------------------------------------------------------------


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}")


def _names(args):
    if args.vars is None:
        return None
    return tuple(v.strip() for v in args.vars.split(",") if v.strip())


def _load(args):
    text = _read(args.input)
    return text, parse_input(text, args.field, _names(args))


def _fmt_pt(F, P):
    return [F.fmt(c) for c in P]


# -- commands -------------------------------------------------------------------
# each returns (status, result, certificates)


def do_normic(args):
    F = args.field or QQ
    if args.minpoly is not None:
        N = normic_from_minpoly(parse_poly(args.minpoly, F, ("T",)))
    elif args.galois is not None:
        N = normic_from_galois(F, args.galois)
    else:
        N = default_binary_normic(F)
    if args.arity != 2:
        N = normic_compose(N, args.arity)
    ok = N.verify()
    return ("pass" if ok else "fail"), {"normic": N.poly.to_str(), "verified": ok}, [N.to_json()]


def do_signature(args):
    F = args.field or QQ
    names = _names(args) or infer_names(args.polynomial, F)
    D = parse_poly(args.polynomial, F, names)
    res = in_signature(D, args.height)
    certs = [res.cert.to_json(names)] if res.cert is not None else []
    status = "inconclusive" if res.status not in (CERTIFIED, HAS_ZERO) else "pass"
    return status, res.to_json(names), certs


def do_points(args):
    _, parsed = _load(args)
    F = parsed.field
    if parsed.points is not None:
        V = parsed.variety()
        return "pass", {"points": [_fmt_pt(F, P) for P in V.points], "count": len(V.points), "partial": False}, []
    zs = zero_set(parsed.ideal(), None if F.is_finite else min(args.height, 10))
    return ("inconclusive" if zs.partial else "pass"), zs.to_json(), []


def do_vanishing(args):
    _, parsed = _load(args)
    F = parsed.field
    if parsed.points is not None or F.is_finite:
        V = parsed.variety()
        J = V.vanishing
        return "pass", {"groebner_basis": [g.to_str(J.names) for g in J.groebner()],
                        "points": len(V.points)}, []
    return "inconclusive", {"note": "no finite point list over QQ; the zero set is not enumerable"}, []


def do_equiradical(args):
    _, parsed = _load(args)
    I = parsed.ideal()
    a = parse_poly(args.element, I.field, I.names)
    cert = equiradical_certificate(I, a, args.max_degree, min(args.height, 10))
    certs = []
    if cert.status == MEMBER:
        certs.append(membership_block(I, cert.sigma.to_json(I.names), cert.sigma.value))
    elif cert.status == NOT_MEMBER:
        certs.append(separation_block(I, a, cert.separator.point))
    ok = cert.status == UNKNOWN or cert.verify(I)
    status = "inconclusive" if cert.status == UNKNOWN else ("pass" if ok else "fail")
    return status, cert.to_json(I.names), certs


def do_nullstellensatz(args):
    _, parsed = _load(args)
    I = parsed.ideal()
    res = has_rational_zero(I, args.height)
    certs = []
    if res.status == NO:
        certs.append(membership_block(I, res.cert.to_json(I.names), res.cert.D))
    return ("inconclusive" if res.status == UNKNOWN else "pass"), res.to_json(I.names), certs


def do_is_special(args):
    _, parsed = _load(args)
    I = parsed.ideal()
    res = is_special_ideal_cert(I, args.max_degree)
    certs = []
    if res.sigma is not None:
        certs.append(membership_block(I, res.sigma.to_json(I.names), res.sigma.value))
    status = "inconclusive" if res.status == "no_violation_found" else "pass"
    return status, res.to_json(I.names), certs


def do_is_star(args):
    _, parsed = _load(args)
    V = parsed.variety()
    A = CanonicalLoc(V) if args.localised else V
    res = is_star_algebra(A)
    certs = [res.counterexample.to_json(V.names)] if res.counterexample is not None else []
    return ("inconclusive" if res.status == UNKNOWN else "pass"), res.to_json(V.names), certs


def do_rabinowitsch(args):
    _, parsed = _load(args)
    V = parsed.variety()
    h = parse_poly(args.element, V.field, V.names)
    emb = rabinowitsch_embed(V, h)
    status = "inconclusive" if emb.verified is None else ("pass" if emb.verified else "fail")
    return status, emb.to_json(), []


def _finite_variety(parsed):
    V = parsed.variety()
    if not V.has_point_list:
        raise InfiniteField("this command needs a finite field or an explicit points: block")
    return V


def do_sections(args):
    _, parsed = _load(args)
    V = _finite_variety(parsed)
    h = parse_poly(args.element, V.field, V.names)
    rep = sections_isomorphism_check(V, h)
    return ("pass" if rep.passed else "fail"), rep.to_json(), []


def do_stalk(args):
    _, parsed = _load(args)
    V = parsed.variety()
    P = parse_point(args.point, V.field, V.nvars)
    g = parse_poly(args.element, V.field, V.names)
    h = parse_poly(args.denominator, V.field, V.names)
    germ = stalk_at(V, P).fraction(g, h)
    return "pass", {"point": _fmt_pt(V.field, P), "germ": f"({g.to_str(V.names)})/({h.to_str(V.names)})",
                    "residue": str(germ.residue())}, []


def do_spm(args):
    _, parsed = _load(args)
    V = parsed.variety()
    X = spm(V)
    result = X.to_json()
    status = "inconclusive" if X.partial else "pass"
    if V.field.is_finite:
        chk = spm_homeomorphism_check(V)
        result["homeomorphism"] = chk.to_json()
        status = "pass" if chk.passed else "fail"
    result["irreducible"] = is_irreducible(V).to_json()
    return status, result, []


def do_check_duality(args):
    _, parsed = _load(args)
    V = _finite_variety(parsed)
    phi, f = duality_check_phi(V), duality_check_f(V)
    return ("pass" if phi.passed and f.passed else "fail"), {"phi": phi.to_json(), "f": f.to_json()}, []


def do_verify(args):
    text = _read(args.input)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno, "JSON")
    blocks = collect_blocks(doc)
    results = []
    for b in blocks:
        try:
            ok = verify_block(b)
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed certificate block: {exc}", 1, 1)
        results.append({"type": b.get("type"), "verified": ok})
    ok = all(r["verified"] for r in results)
    return ("pass" if ok else "fail"), {"blocks": results, "count": len(results)}, []


def do_check(args):
    rep = run_suite(args.suite, args.trials, args.seed, degree_bound=args.max_degree)
    return rep.status, rep.to_json(), []


COMMANDS = {
    "normic": do_normic,
    "signature": do_signature,
    "points": do_points,
    "vanishing": do_vanishing,
    "equiradical": do_equiradical,
    "nullstellensatz": do_nullstellensatz,
    "is-special": do_is_special,
    "is-star": do_is_star,
    "rabinowitsch": do_rabinowitsch,
    "sections": do_sections,
    "stalk": do_stalk,
    "spm": do_spm,
    "check-duality": do_check_duality,
    "verify": do_verify,
    "check": do_check,
}


def _echo(args) -> dict:
    out = {}
    for k, v in sorted(vars(args).items()):
        if k in ("json", "timing"):
            continue
        out[k] = str(v) if v is not None and not isinstance(v, (int, bool, str)) else v
    return out


def _render_text(report: dict) -> str:
    lines = [f"outcome: {report['status']}"]

    def walk(prefix, obj):
        if isinstance(obj, dict) and obj:
            for k, v in obj.items():
                walk(f"{prefix}{k}.", v)
        else:
            lines.append(f"{prefix[:-1]}: {_short(obj)}")

    if report.get("result"):
        walk("", report["result"])
    if report.get("certificates"):
        lines.append(f"certificates: {len(report['certificates'])} (use --json to see them)")
    if report.get("error"):
        lines.append(f"error: {report['error']}")
    return "\n".join(lines)


def _short(v) -> str:
    if isinstance(v, list) and all(isinstance(x, list) for x in v):
        return "; ".join("(" + ", ".join(map(str, x)) + ")" for x in v) or "none"
    if isinstance(v, list):
        return ", ".join(json.dumps(x, sort_keys=True) if isinstance(x, dict) else str(x) for x in v) or "none"
    return str(v)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    report = {"schema": SCHEMA, "version": __version__, "command": {"name": args.command, **_echo(args)},
              "resource_limit": False}
    start = time.perf_counter()
    try:
        status, result, certs = COMMANDS[args.command](args)
        report.update(status=status, result=result, certificates=certs)
        code = EXIT[status]
    except ParseError as exc:
        report.update(status="parse_error", error=str(exc),
                      location={"line": exc.line, "column": exc.column, "expected": exc.expected})
        code = EXIT["usage"]
    except ResourceLimit as exc:
        report.update(status="resource_limit", error=str(exc), resource_limit=True)
        code = EXIT["resource_limit"]
    except (UsageError, AlgebraError, ValueError) as exc:
        report.update(status="usage_error", error=f"{type(exc).__name__}: {exc}")
        code = EXIT["usage"]
    if args.timing:
        report["timing"] = {"seconds": round(time.perf_counter() - start, 4)}
    if args.json:
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        print(_render_text(report))
    return code


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
