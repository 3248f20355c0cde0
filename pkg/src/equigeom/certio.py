"""Reading certificate JSON back into checkable objects.

Every certificate block emitted in a report carries its field literal and
variable names, so it can be re-parsed and re-verified on its own.
Context-dependent blocks (membership in an ideal, a separating point) embed
the ideal file text they refer to.
"""

from __future__ import annotations

from .errors import AlgebraError, ParseError
from .geometry import SpmPoint
from .ideals import IdealHandle, cofactor_degree, macaulay_member
from .multipoly import MultiPoly
from .signature import MElement, MFactor, NormicForm, SigmaElement, SigmaFactor, SignatureCert
from .textio import format_ideal, parse_field, parse_input, parse_point, parse_poly

MACAULAY_CAP = 8


def _field_names(obj: dict):
    try:
        field = parse_field(obj["field"])
        names = tuple(obj["vars"])
    except KeyError as exc:
        raise ParseError(f"certificate is missing {exc.args[0]!r}", 1, 1) from exc
    return field, names


def load_normic(obj: dict) -> NormicForm:
    field, names = _field_names(obj)
    poly = parse_poly(obj["polynomial"], field, names)
    trace = dict(obj.get("trace", {}))
    if trace.get("construction") == "compose":
        trace["base"] = load_normic(trace["base"])
    return NormicForm(poly, trace)


def load_signature(obj: dict) -> SignatureCert:
    field, names = _field_names(obj)
    D = parse_poly(obj["polynomial"], field, names)
    payload = {}
    for k, v in obj.get("evidence", {}).items():
        if k == "normic":
            payload[k] = load_normic(v)
        elif k == "components":
            payload[k] = [parse_poly(c, field, names) for c in v]
        else:
            payload[k] = v
    return SignatureCert(D, obj["kind"], payload)


def load_sigma(obj: dict) -> SigmaElement:
    field, names = _field_names(obj)
    a = parse_poly(obj["a"], field, names)
    factors = [SigmaFactor(f["m"], load_signature(f["D"]), f["n"],
                           tuple(parse_poly(b, field, names) for b in f["args"])) for f in obj["factors"]]
    s = SigmaElement(a, factors)
    if "value" in obj and parse_poly(obj["value"], field, names) != s.value:
        raise AlgebraError("recorded value differs from the recomputed product")
    return s


def load_m_element(obj: dict) -> MElement:
    field, names = _field_names(obj)
    factors = [MFactor(load_signature(f["D"]), tuple(parse_poly(b, field, names) for b in f["args"]))
               for f in obj["factors"]]
    return MElement(field, len(names), factors)


# -- context blocks -------------------------------------------------------------


def membership_block(I: IdealHandle, witness: dict, polynomial: MultiPoly) -> dict:
    return {"type": "ideal_membership", "ideal": format_ideal(I), "polynomial": polynomial.to_str(I.names),
            "witness": witness}


def separation_block(I: IdealHandle, a: MultiPoly, point) -> dict:
    F = I.field
    return {"type": "separating_point", "ideal": format_ideal(I), "a": a.to_str(I.names),
            "point": "(" + ", ".join(F.fmt(c) for c in point) + ")"}


def _member_both_engines(f: MultiPoly, I: IdealHandle) -> bool:
    cof = I.lift(f)
    if cof is None or not I.member(f):
        return False
    d = max(cofactor_degree(cof, I.generators), f.total_degree())
    if d > MACAULAY_CAP:
        # the matrix oracle is too large at this degree; the cofactor identity stands alone
        return sum((c * g for c, g in zip(cof, I.generators)), MultiPoly.zero(I.field, I.nvars)) == f
    return macaulay_member(f, I, d) is True


def verify_block(obj: dict) -> bool:
    """Re-verify a single certificate block."""
    kind = obj.get("type")
    if kind == "normic":
        return load_normic(obj).verify()
    if kind == "signature":
        return load_signature(obj).verify()
    if kind == "sigma":
        return load_sigma(obj).verify()
    if kind == "m_element":
        return load_m_element(obj).verify()
    if kind == "ideal_membership":
        parsed = parse_input(obj["ideal"])
        I = parsed.ideal()
        f = parse_poly(obj["polynomial"], I.field, I.names)
        w = obj["witness"]
        if w.get("type") == "sigma":
            s = load_sigma(w)
            if not s.verify() or s.value != f:
                return False
        elif w.get("type") == "signature":
            c = load_signature(w)
            if not c.verify() or c.D != f:
                return False
        else:
            return False
        return _member_both_engines(f, I)
    if kind == "separating_point":
        parsed = parse_input(obj["ideal"])
        I = parsed.ideal()
        a = parse_poly(obj["a"], I.field, I.names)
        P = parse_point(obj["point"], I.field, I.nvars)
        m = SpmPoint(I.field, P, I.names)
        return all(m.contains(g) for g in I.generators) and not m.contains(a)
    raise ParseError(f"unknown certificate type {kind!r}", 1, 1, "a certificate block")


def collect_blocks(doc) -> list[dict]:
    """Certificate blocks of a report, a single block, or a list of blocks."""
    if isinstance(doc, list):
        return [b for d in doc for b in collect_blocks(d)]
    if isinstance(doc, dict):
        if "certificates" in doc and "type" not in doc:
            return list(doc["certificates"])
        if "type" in doc:
            return [doc]
    raise ParseError("no certificate blocks found", 1, 1, "a report or a certificate object")
