"""Recursive-descent parser for polynomial expressions and scene files.

Expression grammar::

    expr     := ['-'] term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := base ('^' natural)?
    base     := rational | varname | '(' expr ')'
    rational := integer ('/' positive-integer)?

Scene files are line oriented with ``#`` comments::

    dim 2
    vars x1 x2
    operator A
    1 1 : x2
    2 2 : x1
    end

Blocks are ``operator``, ``vector``, ``covector`` and ``scalar``; entry lines
are ``<i> <j> : <poly>`` for operators (row, column), ``<i> : <poly>`` for
fields and ``: <poly>`` (or ``1 : <poly>``) for scalars.  Indices are 1-based
and unspecified entries are zero.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .geometry import Chart, CovectorField, OperatorField, VectorField
from .polycore import Context, MultiPoly

__all__ = ["ParseError", "Scene", "format_scene", "parse_poly", "parse_scene"]


class ParseError(ValueError):
    """Malformed input; ``code`` names the failure class."""

    def __init__(self, code: str, message: str, line: int = 1, col: int = 1):
        super().__init__(f"{line}:{col}: {message} [{code}]")
        self.code = code
        self.message = message
        self.line = line
        self.col = col


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


class _Lexer:
    def __init__(self, src: str, line: int, col: int):
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while src[pos:].strip():
            m = _TOKEN.match(src, pos)
            start = m.start(m.lastindex)
            kind = {1: "int", 2: "name", 3: "op"}[m.lastindex]
            self.tokens.append((kind, m.group(m.lastindex), start))
            pos = m.end()
        self.tokens.append(("eof", "", len(src.rstrip())))
        self.i = 0
        self.line = line
        self.col = col

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, code: str, message: str, tok=None) -> ParseError:
        tok = tok or self.peek()
        return ParseError(code, message, self.line, self.col + tok[2])


class _Parser:
    def __init__(self, src: str, ctx: Context, line: int, col: int):
        self.lx = _Lexer(src, line, col)
        self.ctx = ctx

    def parse(self) -> MultiPoly:
        lx = self.lx
        if lx.peek()[0] == "eof":
            raise lx.error("syntax", "empty expression")
        out = self.expr()
        if lx.peek()[0] != "eof":
            raise lx.error("syntax", f"unexpected {lx.peek()[1]!r}")
        return out

    def expr(self) -> MultiPoly:
        lx = self.lx
        negate = False
        if lx.peek()[:2] == ("op", "-"):
            lx.next()
            negate = True
        acc = self.term()
        if negate:
            acc = -acc
        while lx.peek()[:2] in (("op", "+"), ("op", "-")):
            sign = lx.next()[1]
            t = self.term()
            acc = acc + t if sign == "+" else acc - t
        return acc

    def term(self) -> MultiPoly:
        acc = self.factor()
        while self.lx.peek()[:2] == ("op", "*"):
            self.lx.next()
            acc = acc * self.factor()
        return acc

    def factor(self) -> MultiPoly:
        base = self.base()
        lx = self.lx
        if lx.peek()[:2] == ("op", "^"):
            lx.next()
            tok = lx.peek()
            if tok[:2] == ("op", "-"):
                raise lx.error("negative-exponent", "exponents must be natural numbers")
            if tok[0] != "int":
                raise lx.error("syntax", "expected a natural exponent after '^'")
            lx.next()
            return base ** int(tok[1])
        return base

    def base(self) -> MultiPoly:
        lx = self.lx
        tok = lx.next()
        kind, text, _ = tok
        if kind == "int":
            num = int(text)
            if lx.peek()[:2] == ("op", "/"):
                lx.next()
                den_tok = lx.peek()
                if den_tok[0] != "int":
                    raise lx.error("syntax", "expected a positive integer denominator")
                lx.next()
                den = int(den_tok[1])
                if den == 0:
                    raise lx.error("zero-denominator", "denominator is zero", den_tok)
                return self.ctx.const(Fraction(num, den))
            return self.ctx.const(num)
        if kind == "name":
            if text not in self.ctx.names:
                raise lx.error("unknown-variable", f"unknown variable {text!r}", tok)
            return self.ctx.var(text)
        if (kind, text) == ("op", "("):
            inner = self.expr()
            if lx.peek()[:2] != ("op", ")"):
                raise lx.error("syntax", "expected ')'")
            lx.next()
            return inner
        if kind == "eof":
            raise lx.error("syntax", "unexpected end of expression", tok)
        raise lx.error("syntax", f"unexpected {text!r}", tok)


def parse_poly(src: str, chart: Chart | Context, *, line: int = 1, col: int = 1) -> MultiPoly:
    ctx = chart.ctx if isinstance(chart, Chart) else chart
    return _Parser(src, ctx, line, col).parse()


@dataclass
class Scene:
    chart: Chart
    operators: dict[str, OperatorField] = field(default_factory=dict)
    vectors: dict[str, VectorField] = field(default_factory=dict)
    covectors: dict[str, CovectorField] = field(default_factory=dict)
    scalars: dict[str, MultiPoly] = field(default_factory=dict)

    def operator(self, name: str) -> OperatorField:
        try:
            return self.operators[name]
        except KeyError:
            raise ParseError("unknown-name", f"no operator named {name!r}") from None


_BLOCKS = ("operator", "vector", "covector", "scalar")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")


def parse_scene(src: str) -> Scene:
    lines = src.splitlines()
    dim = None
    chart = None
    scene = None
    block = None  # (kind, name, start line, entries)
    seen: set[str] = set()

    for lineno, raw in enumerate(lines, start=1):
        text = raw.split("#", 1)[0]
        stripped = text.strip()
        if not stripped:
            continue
        col0 = len(text) - len(text.lstrip()) + 1
        words = stripped.split()
        head = words[0]

        if block is not None:
            if stripped == "end":
                _finish_block(scene, block)
                block = None
                continue
            _parse_entry(block, text, chart, lineno)
            continue

        if head == "dim":
            if dim is not None:
                raise ParseError("syntax", "repeated 'dim' header", lineno, col0)
            if len(words) != 2 or not words[1].isdigit() or int(words[1]) < 1:
                raise ParseError("syntax", "expected 'dim <n>' with n >= 1", lineno, col0)
            dim = int(words[1])
        elif head == "vars":
            if dim is None:
                raise ParseError("missing-chart", "'vars' before 'dim'", lineno, col0)
            if chart is not None:
                raise ParseError("syntax", "repeated 'vars' header", lineno, col0)
            names = words[1:]
            if len(names) != dim:
                raise ParseError("chart", f"expected {dim} variable names, got {len(names)}", lineno, col0)
            for name in names:
                if not _NAME.match(name):
                    raise ParseError("syntax", f"bad variable name {name!r}", lineno, col0)
            if len(set(names)) != len(names):
                raise ParseError("duplicate-name", "repeated variable name", lineno, col0)
            chart = Chart(tuple(names))
            scene = Scene(chart)
            seen.update(names)
        elif head in _BLOCKS:
            if chart is None:
                raise ParseError("missing-chart", "block before the 'dim'/'vars' header", lineno, col0)
            if len(words) != 2 or not _NAME.match(words[1]):
                raise ParseError("syntax", f"expected '{head} <NAME>'", lineno, col0)
            name = words[1]
            if name in seen:
                raise ParseError("duplicate-name", f"name {name!r} already used", lineno, col0)
            seen.add(name)
            block = (head, name, lineno, {})
        else:
            raise ParseError("syntax", f"unexpected line {stripped!r}", lineno, col0)

    if block is not None:
        raise ParseError("syntax", f"block {block[1]!r} is missing 'end'", block[2], 1)
    if chart is None:
        raise ParseError("missing-chart", "scene has no 'dim'/'vars' header", max(len(lines), 1), 1)
    return scene


def _parse_entry(block, text: str, chart: Chart, lineno: int) -> None:
    kind, name, _, entries = block
    if ":" not in text:
        raise ParseError("syntax", "entry lines need ':'", lineno, 1)
    left, right = text.split(":", 1)
    col = len(left) + 2
    idx_words = left.split()
    expected = {"operator": 2, "vector": 1, "covector": 1, "scalar": 1}[kind]
    if kind == "scalar" and not idx_words:
        idx_words = ["1"]
    if len(idx_words) != expected or not all(w.isdigit() for w in idx_words):
        raise ParseError("syntax", f"{kind} entries need {expected} index(es)", lineno, 1)
    idx = tuple(int(w) for w in idx_words)
    limit = 1 if kind == "scalar" else chart.dim
    for v in idx:
        if not 1 <= v <= limit:
            raise ParseError("index-range", f"index {v} outside [1..{limit}]", lineno, 1)
    if idx in entries:
        raise ParseError("duplicate-entry", f"entry {idx} given twice", lineno, 1)
    entries[idx] = parse_poly(right, chart, line=lineno, col=col)


def _finish_block(scene: Scene, block) -> None:
    kind, name, _, entries = block
    chart = scene.chart
    n = chart.dim
    zero = chart.zero()
    if kind == "operator":
        rows = [[entries.get((i + 1, j + 1), zero) for j in range(n)] for i in range(n)]
        scene.operators[name] = OperatorField(chart, rows)
    elif kind == "vector":
        scene.vectors[name] = VectorField(chart, [entries.get((i + 1,), zero) for i in range(n)])
    elif kind == "covector":
        scene.covectors[name] = CovectorField(chart, [entries.get((i + 1,), zero) for i in range(n)])
    else:
        scene.scalars[name] = entries.get((1,), zero)


def format_scene(scene: Scene) -> str:
    """Render a scene back to the file format (nonzero entries only)."""
    chart = scene.chart
    out = [f"dim {chart.dim}", "vars " + " ".join(chart.coords)]
    for name, A in scene.operators.items():
        out.append(f"operator {name}")
        for i, row in enumerate(A.entries):
            for j, e in enumerate(row):
                if e:
                    out.append(f"{i + 1} {j + 1} : {e}")
        out.append("end")
    for kind, fields in (("vector", scene.vectors), ("covector", scene.covectors)):
        for name, X in fields.items():
            out.append(f"{kind} {name}")
            for i, c in enumerate(X.components):
                if c:
                    out.append(f"{i + 1} : {c}")
            out.append("end")
    for name, f in scene.scalars.items():
        out.extend([f"scalar {name}", f": {f}", "end"])
    return "\n".join(out) + "\n"
