"""Text formats: field literals, polynomial expressions, ideal/variety files.

Grammar of expressions::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom (("^" | "**") INTEGER)?
    atom   := INTEGER | NAME | "(" expr ")"

Division is only allowed by nonzero constants.  Over GF(p^m) the name ``t``
denotes the class of the generator unless it is declared as a variable.

Ideal files::

    # comment
    field: GF(3)
    vars: x, y
    x^2 + y
    x*y - 1
    points:
    (1, 2)
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import AlgebraError, InvalidField, ParseError
from .exactfield import GF, QQ, FieldDescriptor
from .ideals import IdealHandle
from .multipoly import MultiPoly, default_names

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^(),;]))")


@dataclass
class Token:
    kind: str  # num | name | op | end
    text: str
    col: int


def tokenize(text: str, line: int = 1, col0: int = 1) -> list[Token]:
    out = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col0 + pos,
                             "a number, a name, an operator or a parenthesis")
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(Token("num", m.group(1), col0 + start))
        elif m.group(2):
            out.append(Token("name", m.group(2), col0 + start))
        else:
            out.append(Token("op", m.group(3), col0 + start))
        pos = m.end()
    out.append(Token("end", "", col0 + n))
    return out


class _ExprParser:
    def __init__(self, text: str, field: FieldDescriptor, names, line: int = 1, col0: int = 1):
        self.field = field
        self.names = tuple(names)
        self.index = {nm: i for i, nm in enumerate(self.names)}
        self.nvars = len(self.names)
        self.line = line
        self.toks = tokenize(text, line, col0)
        self.pos = 0

    def peek(self) -> Token:
        return self.toks[self.pos]

    def take(self) -> Token:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def error(self, msg, tok: Token, expected=None):
        raise ParseError(msg, self.line, tok.col, expected)

    def parse(self) -> MultiPoly:
        if self.peek().kind == "end":
            self.error("empty expression", self.peek(), "an expression")
        e = self.expr()
        t = self.peek()
        if t.kind != "end":
            self.error(f"unexpected {t.text!r}", t, "an operator or end of input")
        return e

    def expr(self) -> MultiPoly:
        acc = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.take().text
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> MultiPoly:
        acc = self.unary()
        while self.peek().kind == "op" and self.peek().text in ("*", "/"):
            op = self.take()
            rhs_tok = self.peek()
            rhs = self.unary()
            if op.text == "*":
                acc = acc * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    self.error("division is only allowed by nonzero constants", rhs_tok, "a nonzero constant")
                acc = acc * MultiPoly.const(self.field, self.nvars, rhs.constant_value().inv())
        return acc

    def unary(self) -> MultiPoly:
        t = self.peek()
        if t.kind == "op" and t.text in "+-":
            self.take()
            inner = self.unary()
            return -inner if t.text == "-" else inner
        return self.power()

    def power(self) -> MultiPoly:
        base = self.atom()
        t = self.peek()
        if t.kind == "op" and t.text in ("^", "**"):
            self.take()
            e = self.peek()
            if e.kind != "num":
                self.error(f"unexpected {e.text or 'end of input'!r} after '^'", e, "a non-negative integer exponent")
            self.take()
            return base ** int(e.text)
        return base

    def atom(self) -> MultiPoly:
        t = self.take()
        F, n = self.field, self.nvars
        if t.kind == "num":
            return MultiPoly.const(F, n, int(t.text))
        if t.kind == "name":
            if t.text in self.index:
                return MultiPoly.var(F, n, self.index[t.text])
            if t.text == "t" and F.kind == "extension":
                return MultiPoly.const(F, n, F.gen)
            self.error(f"unknown name {t.text!r}", t, "a declared variable")
        if t.kind == "op" and t.text == "(":
            inner = self.expr()
            close = self.take()
            if close.kind != "op" or close.text != ")":
                self.error(f"unexpected {close.text or 'end of input'!r}", close, "')'")
            return inner
        self.error(f"unexpected {t.text or 'end of input'!r}", t, "a number, a variable or '('")


def parse_poly(text: str, field: FieldDescriptor, names=None, line: int = 1, col0: int = 1) -> MultiPoly:
    """Parse an expression in the given variables."""
    if names is None:
        names = infer_names(text, field)
    try:
        return _ExprParser(text, field, names, line, col0).parse()
    except ParseError:
        raise
    except AlgebraError as exc:
        raise ParseError(str(exc), line, col0) from exc


def infer_names(text: str, field: FieldDescriptor) -> tuple[str, ...]:
    """Variable names in order of first appearance (t excluded over extension fields)."""
    seen = []
    for m in re.finditer(r"[A-Za-z_][A-Za-z_0-9]*", text):
        nm = m.group(0)
        if nm == "t" and field.kind == "extension":
            continue
        if nm not in seen:
            seen.append(nm)
    return tuple(seen) if seen else ("x",)


_FIELD = re.compile(r"^\s*(?:(QQ)|GF\(\s*(\d+)\s*(?:\^\s*(\d+)\s*)?(?:;\s*([^)]*))?\)\s*)$")


def parse_field(text: str, line: int = 1, col0: int = 1) -> FieldDescriptor:
    m = _FIELD.match(text)
    if not m:
        raise ParseError(f"bad field literal {text.strip()!r}", line, col0, "QQ, GF(p), or GF(p^m; modulus)")
    if m.group(1):
        return QQ
    p = int(m.group(2))
    mdeg = int(m.group(3)) if m.group(3) else 1
    try:
        if m.group(4) is None:
            if mdeg == 1:
                return GF(p)
            return GF(p, mdeg)
        prime = GF(p)
        poly = parse_poly(m.group(4), prime, ("t",), line, col0 + m.start(4))
        coeffs = poly.univariate_coeffs(0)
        if len(coeffs) - 1 != mdeg:
            raise ParseError(f"modulus has degree {len(coeffs) - 1}, expected {mdeg}", line, col0 + m.start(4))
        if coeffs[-1] != 1:
            raise ParseError("modulus must be monic", line, col0 + m.start(4))
        return GF(p, mdeg, tuple(coeffs))
    except InvalidField as exc:
        raise ParseError(str(exc), line, col0) from exc


def parse_point(text: str, field: FieldDescriptor, nvars: int | None = None, line: int = 1, col0: int = 1) -> tuple:
    """'(a, b, ...)' or 'a, b, ...' with constant coordinates; returns raw values."""
    s = text.strip()
    offset = col0 + (len(text) - len(text.lstrip()))
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
        offset += 1
    parts = s.split(",") if s.strip() else []
    out = []
    col = offset
    for part in parts:
        c = parse_poly(part, field, (), line, col)
        if not c.is_constant():
            raise ParseError("point coordinates must be constants", line, col)
        out.append(c.constant_value().raw)
        col += len(part) + 1
    if nvars is not None and len(out) != nvars:
        raise ParseError(f"point has {len(out)} coordinates, expected {nvars}", line, col0)
    return tuple(out)


@dataclass
class ParsedInput:
    field: FieldDescriptor
    names: tuple
    generators: list
    points: list | None = None

    @property
    def nvars(self) -> int:
        return len(self.names)

    def ideal(self) -> IdealHandle:
        return IdealHandle(self.field, self.nvars, self.generators, self.names)

    def variety(self):
        from .varieties import Variety
        if self.points is not None:
            if self.generators and not all(g.is_zero() for g in self.generators):
                return Variety(self.ideal(), [P for P in self.points
                                              if all(self.field.is_zero(g.eval_raw(P)) for g in self.generators)])
            return Variety.from_points(self.field, self.nvars, self.points, self.names)
        return Variety(self.ideal())


def parse_input(text: str, field: FieldDescriptor | None = None, names=None) -> ParsedInput:
    """Parse an ideal or variety file."""
    gens = []
    points = None
    in_points = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        stripped = line.strip()
        col0 = len(line) - len(line.lstrip()) + 1
        low = stripped.lower()
        if low.startswith("field:"):
            if gens:
                raise ParseError("field header after generators", lineno, col0)
            idx = line.index(":") + 1
            field = parse_field(line[idx:], lineno, idx + 1)
            continue
        if low.startswith("vars:"):
            if gens:
                raise ParseError("vars header after generators", lineno, col0)
            idx = line.index(":") + 1
            body = line[idx:]
            nm = tuple(v.strip() for v in body.split(",") if v.strip())
            for v in nm:
                if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v):
                    raise ParseError(f"bad variable name {v!r}", lineno, idx + 1 + body.index(v), "an identifier")
            if len(set(nm)) != len(nm):
                raise ParseError("duplicate variable name", lineno, idx + 1)
            names = nm
            continue
        if low.startswith("points:"):
            in_points = True
            points = []
            continue
        if field is None:
            raise ParseError("missing field header", lineno, col0, "'field: QQ' or 'field: GF(p)'")
        if names is None:
            raise ParseError("missing vars header", lineno, col0, "'vars: x, y, ...'")
        if in_points:
            points.append(parse_point(line, field, len(names), lineno, 1))
        else:
            gens.append(parse_poly(line, field, names, lineno, 1))
    if field is None:
        raise ParseError("missing field header", 1, 1, "'field: QQ' or 'field: GF(p)'")
    if names is None:
        names = default_names(1)
    return ParsedInput(field, tuple(names), gens, points)


def format_input(field: FieldDescriptor, names, generators, points=None) -> str:
    """Deterministic text form accepted by :func:`parse_input`."""
    lines = [f"field: {field}", "vars: " + ", ".join(names)]
    lines += [g.to_str(names) for g in generators if not g.is_zero()]
    if points is not None:
        lines.append("points:")
        lines += ["(" + ", ".join(field.fmt(c) for c in P) + ")" for P in points]
    return "\n".join(lines) + "\n"


def format_ideal(I: IdealHandle, points=None) -> str:
    return format_input(I.field, I.names, I.generators, points)
