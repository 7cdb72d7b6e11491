"""Text grammar for rings, polynomials, ideal files and map files.

Polynomials: variables ``[a-zA-Z][a-zA-Z0-9_]*``, ``^`` for powers, ``*``
optional between factors, parentheses, integer and ``a/b`` coefficients,
``t`` as a scalar inside a rational function ring, ``eps`` inside a dual
number ring.  Ideal files are a ``ring`` header line followed by one
generator per nonblank line; ``#`` starts a comment.
"""

from __future__ import annotations

from fractions import Fraction

from .fields import field_from_name
from .ideals import Ideal
from .poly import Polynomial, RingMap, UnknownVariable, VariableContext


class PolySyntaxError(ValueError):
    """Parse failure with 1-based line and column."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


class BadRingHeader(ValueError):
    """Malformed or missing ring header."""


class Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind = kind
        self.text = text
        self.line = line
        self.col = col

    def __repr__(self):
        return f"Token({self.kind}, {self.text!r})"


_PUNCT = {"+", "-", "*", "/", "^", "(", ")", ",", "[", "]"}


def tokenize(text: str, line_offset: int = 1):
    tokens = []
    line = line_offset
    col = 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch == "-" and i + 1 < n and text[i + 1] == ">":
            tokens.append(Token("arrow", "->", line, col))
            i += 2
            col += 2
            continue
        if ch in _PUNCT:
            tokens.append(Token(ch, ch, line, col))
            i += 1
            col += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token("int", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("name", text[i:j], line, col))
            col += j - i
            i = j
            continue
        raise PolySyntaxError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("end", "", line, col))
    return tokens


class _ExprParser:
    """Recursive descent over a token list for one polynomial expression."""

    def __init__(self, tokens, ctx: VariableContext):
        self.tokens = tokens
        self.pos = 0
        self.ctx = ctx
        self.atoms = ctx.field.scalar_atoms

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, message):
        tok = self.peek()
        raise PolySyntaxError(message, tok.line, tok.col)

    def parse(self) -> Polynomial:
        out = self.expression()
        if self.peek().kind != "end":
            self.error(f"unexpected {self.peek().text!r}")
        return out

    def expression(self) -> Polynomial:
        tok = self.peek()
        negate = False
        if tok.kind in ("+", "-"):
            self.advance()
            negate = tok.kind == "-"
        out = self.term()
        if negate:
            out = -out
        while self.peek().kind in ("+", "-"):
            op = self.advance()
            rhs = self.term()
            out = out - rhs if op.kind == "-" else out + rhs
        return out

    _FACTOR_START = ("int", "name", "(")

    def term(self) -> Polynomial:
        out = self.power()
        while True:
            kind = self.peek().kind
            if kind in ("*", "/"):
                op = self.advance()
                rhs = self.power()
                if op.kind == "*":
                    out = out * rhs
                else:
                    if not rhs.is_constant():
                        self.error("division only by nonzero scalars")
                    c = rhs.constant_value()
                    if self.ctx.field.is_zero(c):
                        self.error("division by zero")
                    out = out.scale(self.ctx.field.inv(c))
            elif kind in self._FACTOR_START:
                out = out * self.power()  # implicit multiplication
            else:
                return out

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek().kind == "^":
            self.advance()
            tok = self.peek()
            if tok.kind != "int":
                self.error("exponent must be a nonnegative integer")
            self.advance()
            return base ** int(tok.text)
        return base

    def atom(self) -> Polynomial:
        tok = self.peek()
        if tok.kind == "int":
            self.advance()
            return self.ctx.constant(self.ctx.field.from_int(int(tok.text)))
        if tok.kind == "name":
            self.advance()
            if tok.text in self.atoms:
                return self.ctx.constant(self.atoms[tok.text])
            try:
                return self.ctx.variable(tok.text)
            except UnknownVariable:
                raise PolySyntaxError(
                    f"unknown variable {tok.text!r}", tok.line, tok.col
                ) from None
        if tok.kind == "(":
            self.advance()
            inner = self.expression()
            if self.peek().kind != ")":
                self.error("expected ')'")
            self.advance()
            return inner
        if tok.kind == "-":
            self.advance()
            return -self.atom()
        self.error(f"expected a factor, found {tok.text!r}" if tok.text else "unexpected end of input")


def parse_polynomial(text: str, ctx: VariableContext, line_offset: int = 1) -> Polynomial:
    return _ExprParser(tokenize(text, line_offset), ctx).parse()


def parse_scalar(text: str, field):
    ctx = VariableContext(("dummyvariable",), field)
    p = parse_polynomial(text, ctx)
    if not p.is_constant():
        raise PolySyntaxError("expected a scalar", 1, 1)
    return p.constant_value()


def parse_point(text: str, field):
    return tuple(parse_scalar(part, field) for part in text.split(","))


def parse_ring_header(line: str, lineno: int = 1) -> VariableContext:
    s = line.strip()
    if not s.startswith("ring"):
        raise BadRingHeader(f"line {lineno}: expected 'ring <field>[vars]'")
    body = s[len("ring"):].strip()
    open_idx = body.rfind("[")
    if open_idx < 0 or not body.endswith("]"):
        raise BadRingHeader(f"line {lineno}: missing variable list")
    field_part = body[:open_idx].strip()
    vars_part = body[open_idx + 1: -1]
    try:
        field = field_from_name(field_part)
    except ValueError as exc:
        raise BadRingHeader(f"line {lineno}: {exc}") from None
    names = [v.strip() for v in vars_part.split(",") if v.strip()]
    if not names:
        raise BadRingHeader(f"line {lineno}: empty variable list")
    return VariableContext(names, field)


class ParsedDocument:
    """A ring header plus parsed items, with source line spans."""

    __slots__ = ("ctx", "polynomials", "assignments", "spans")

    def __init__(self, ctx, polynomials, assignments, spans):
        self.ctx = ctx
        self.polynomials = polynomials
        self.assignments = assignments
        self.spans = spans

    def to_text(self) -> str:
        lines = [f"ring {self.ctx.field.name}[{','.join(self.ctx.names)}]"]
        for name, value in self.assignments.items():
            lines.append(f"{name} -> {value.to_str()}")
        for p in self.polynomials:
            lines.append(p.to_str())
        return "\n".join(lines) + "\n"

    def __eq__(self, other):
        return (
            isinstance(other, ParsedDocument)
            and other.ctx == self.ctx
            and other.polynomials == self.polynomials
            and other.assignments == self.assignments
        )


def parse_document(text: str) -> ParsedDocument:
    lines = text.splitlines()
    ctx = None
    polynomials = []
    assignments = {}
    spans = []
    header_seen = False
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not header_seen:
            ctx = parse_ring_header(line, lineno)
            header_seen = True
            continue
        tokens = tokenize(line, lineno)
        if len(tokens) >= 2 and tokens[0].kind == "name" and tokens[1].kind == "arrow":
            name = tokens[0].text
            value = _ExprParser(tokens[2:], ctx).parse()
            assignments[name] = value
        else:
            polynomials.append(_ExprParser(tokens, ctx).parse())
        spans.append(lineno)
    if ctx is None:
        raise BadRingHeader("no ring header found")
    return ParsedDocument(ctx, polynomials, assignments, spans)


def parse_ideal(text: str) -> Ideal:
    doc = parse_document(text)
    if doc.assignments:
        raise BadRingHeader("ideal file contains map assignments")
    return Ideal(doc.ctx, doc.polynomials)


def parse_map(text: str) -> RingMap:
    """A map file: source ring header, target ring header, then 'v -> poly' lines."""
    lines = text.splitlines()
    headers = []
    rest_start = 0
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        headers.append(parse_ring_header(line, lineno))
        if len(headers) == 2:
            rest_start = lineno
            break
    if len(headers) < 2:
        raise BadRingHeader("map file needs a source and a target ring header")
    source, target = headers
    images = {}
    for lineno, raw in enumerate(lines[rest_start:], start=rest_start + 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = tokenize(line, lineno)
        if not (len(tokens) >= 2 and tokens[0].kind == "name" and tokens[1].kind == "arrow"):
            raise PolySyntaxError("expected 'variable -> polynomial'", lineno, 1)
        images[tokens[0].text] = _ExprParser(tokens[2:], target).parse()
    return RingMap(source, target, images)


def ideal_to_text(ideal: Ideal) -> str:
    lines = [f"ring {ideal.ctx.field.name}[{','.join(ideal.ctx.names)}]"]
    lines += [g.to_str() for g in ideal.gens]
    return "\n".join(lines) + "\n"


def fraction_str(q: Fraction) -> str:
    return str(q)
