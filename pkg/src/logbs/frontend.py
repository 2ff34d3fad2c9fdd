"""Text input: polynomial expressions and job documents.

Polynomial grammar (implicit multiplication is rejected)::

    expr    := term (("+" | "-") term)*
    term    := unary ("*" unary)*
    unary   := "-" unary | power
    power   := atom ("^" INT)?
    atom    := NUMBER | NAME | "(" expr ")"
    NUMBER  := INT ("/" INT)?

Job documents are ``key = value`` statements separated by newlines or ``;``
with ``#`` comments.  Keys: ``vars``, ``F``, ``K``, ``m`` and ``options``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .arith import MultiPoly


class ParseError(ValueError):
    """Syntax or validation error, positioned at ``line``/``column`` (1-based)."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column


class UnknownVariable(ParseError):
    pass


class JobError(ValueError):
    """A job document that parses but violates a structural requirement."""


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:\s*/\s*\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^()])|(?P<bad>\S))")


def _tokenize(text: str, line: int = 1, col0: int = 1):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        col = col0 + m.start(m.lastgroup)
        kind = m.lastgroup
        value = m.group(kind)
        if kind == "bad":
            raise ParseError(f"unexpected character {value!r}", line, col)
        tokens.append((kind, value, line, col))
        pos = m.end()
    tokens.append(("eof", "", line, col0 + len(text)))
    return tokens


class _PolyParser:
    # binding powers for the Pratt loop
    _INFIX = {"+": 10, "-": 10, "*": 20}

    def __init__(self, text: str, profile: Sequence[str], line: int = 1, col0: int = 1):
        self.tokens = _tokenize(text, line, col0)
        self.i = 0
        self.profile = tuple(profile)

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], tok[3])

    def parse(self) -> MultiPoly:
        if self.peek()[0] == "eof":
            self.fail("empty expression")
        value = self.expr(0)
        tok = self.peek()
        if tok[0] != "eof":
            if tok[0] in ("num", "name") or tok[1] == "(":
                self.fail("implicit multiplication is not allowed; use '*'")
            self.fail(f"unexpected token {tok[1]!r}")
        return value

    def expr(self, min_bp: int) -> MultiPoly:
        left = self.prefix()
        while True:
            kind, op, _, _ = self.peek()
            if kind in ("num", "name") or op == "(":
                self.fail("implicit multiplication is not allowed; use '*'")
            if kind != "op" or op not in self._INFIX:
                return left
            bp = self._INFIX[op]
            if bp <= min_bp:
                return left
            self.take()
            right = self.expr(bp)
            if op == "+":
                left = left + right
            elif op == "-":
                left = left - right
            else:
                left = left * right

    def prefix(self) -> MultiPoly:
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "-":
            self.take()
            # unary minus binds looser than ^ and tighter than *
            return -self.expr(self._INFIX["*"])
        if tok[0] == "op" and tok[1] == "+":
            self.take()
            return self.expr(self._INFIX["*"])
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            exp_tok = self.take()
            if exp_tok[0] != "num" or "/" in exp_tok[1]:
                self.fail("exponent must be a non-negative integer", exp_tok)
            base = base ** int(exp_tok[1])
        return base

    def atom(self) -> MultiPoly:
        tok = self.take()
        kind, value, line, col = tok
        if kind == "num":
            num, _, den = value.replace(" ", "").partition("/")
            if den and int(den) == 0:
                raise ParseError("division by zero", line, col)
            return MultiPoly.constant(self.profile, Fraction(value.replace(" ", "")))
        if kind == "name":
            if value not in self.profile:
                raise UnknownVariable(f"unknown variable {value!r}", line, col)
            return MultiPoly.var(self.profile, value)
        if kind == "op" and value == "(":
            inner = self.expr(0)
            close = self.take()
            if close[1] != ")":
                self.fail("expected ')'", close)
            return inner
        if kind == "eof":
            self.fail("unexpected end of input", tok)
        self.fail(f"unexpected token {value!r}", tok)


def parse_poly(text: str, profile: Sequence[str], *, line: int = 1, column: int = 1) -> MultiPoly:
    """Parse ``text`` into an exact polynomial over ``profile``."""
    return _PolyParser(text, profile, line, column).parse()


# ---------------------------------------------------------------------------
# job documents

DEFAULT_OPTIONS = {"W": 3, "cap": 40, "timeout": 600, "kmax": 8}


@dataclass
class JobSpec:
    variables: List[str]
    F: List[MultiPoly]
    K: List[Tuple[int, ...]]
    m: Tuple[int, ...]
    options: Dict[str, int] = field(default_factory=lambda: dict(DEFAULT_OPTIONS))
    source: str = ""

    @property
    def n(self) -> int:
        return len(self.variables)

    @property
    def r(self) -> int:
        return len(self.F)

    def to_dict(self) -> dict:
        return {
            "vars": list(self.variables),
            "F": [str(f) for f in self.F],
            "K": [list(v) for v in self.K],
            "m": list(self.m),
            "options": dict(self.options),
        }

    def to_text(self) -> str:
        opts = ", ".join(f"{k}={v}" for k, v in sorted(self.options.items()))
        return "\n".join([
            f"vars = [{', '.join(self.variables)}]",
            f"F = [{', '.join(str(f) for f in self.F)}]",
            f"K = [{', '.join('[' + ', '.join(map(str, v)) + ']' for v in self.K)}]",
            f"m = [{', '.join(map(str, self.m))}]",
            f"options = [{opts}]",
        ]) + "\n"


def _statements(text: str):
    """Yield (key, value, line, key_column, value_column) with ';' and newline separators."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        offset = 0
        for chunk in line.split(";"):
            start = offset
            offset += len(chunk) + 1
            if not chunk.strip():
                continue
            if "=" not in chunk:
                col = start + len(chunk) - len(chunk.lstrip()) + 1
                raise ParseError("expected 'key = value'", lineno, col)
            key, value = chunk.split("=", 1)
            vcol = start + len(key) + 2 + (len(value) - len(value.lstrip()))
            kcol = start + len(key) - len(key.lstrip()) + 1
            yield key.strip(), value.strip(), lineno, kcol, vcol


def _split_list(value: str, line: int, col: int) -> List[Tuple[str, int]]:
    """Split a bracketed list into (item text, column) at top-level commas."""
    if not (value.startswith("[") and value.endswith("]")):
        raise ParseError("expected a bracketed list", line, col)
    body = value[1:-1]
    items, depth, start = [], 0, 0
    for i, ch in enumerate(body):
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced brackets", line, col + 1 + i)
        elif ch == "," and depth == 0:
            items.append((body[start:i], col + 1 + start))
            start = i + 1
    if depth:
        raise ParseError("unbalanced brackets", line, col + len(value) - 1)
    tail = body[start:]
    if tail.strip() or items:
        items.append((tail, col + 1 + start))
    out = []
    for text, c in items:
        stripped = text.strip()
        if not stripped:
            raise ParseError("empty list entry", line, c)
        out.append((stripped, c + len(text) - len(text.lstrip())))
    return out


def _int_vector(text: str, line: int, col: int) -> Tuple[int, ...]:
    entries = _split_list(text, line, col)
    vec = []
    for t, c in entries:
        if not re.fullmatch(r"\d+", t):
            raise ParseError(f"expected a non-negative integer, got {t!r}", line, c)
        vec.append(int(t))
    return tuple(vec)


def parse_job(text: str) -> JobSpec:
    """Parse and validate a job document, filling defaults."""
    seen: Dict[str, Tuple[str, int, int]] = {}
    for key, value, line, kcol, col in _statements(text):
        if key not in ("vars", "F", "K", "m", "options"):
            raise ParseError(f"unknown section {key!r}", line, kcol)
        if key in seen:
            raise ParseError(f"duplicate section {key!r}", line, kcol)
        seen[key] = (value, line, col)
    for required in ("vars", "F", "K"):
        if required not in seen:
            raise JobError(f"missing required section {required!r}")

    value, line, col = seen["vars"]
    variables = []
    for name, c in _split_list(value, line, col):
        if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", name):
            raise ParseError(f"bad variable name {name!r}", line, c)
        if name in variables:
            raise ParseError(f"duplicate variable {name!r}", line, c)
        variables.append(name)
    if not variables:
        raise JobError("at least one variable is required")

    value, line, col = seen["F"]
    F = []
    for text_f, c in _split_list(value, line, col):
        f = parse_poly(text_f, variables, line=line, column=c)
        if f.is_zero():
            raise JobError(f"entry {text_f!r} of F is the zero polynomial")
        F.append(f)
    if not F:
        raise JobError("F must contain at least one polynomial")
    r = len(F)

    value, line, col = seen["K"]
    K = []
    for text_v, c in _split_list(value, line, col):
        if text_v.startswith("["):
            v = _int_vector(text_v, line, c)
        elif re.fullmatch(r"\d+", text_v) and r == 1:
            v = (int(text_v),)
        else:
            raise ParseError(f"expected a generator vector, got {text_v!r}", line, c)
        if len(v) != r:
            raise JobError(f"K generator {list(v)} has length {len(v)} but F has {r} entries")
        if not any(v):
            raise JobError("K generator is the zero vector; it would generate all of N^r")
        K.append(v)
    if not K:
        raise JobError("K needs at least one generator")

    if "m" in seen:
        value, line, col = seen["m"]
        m = _int_vector(value, line, col)
        if len(m) != r:
            raise JobError(f"m has length {len(m)} but F has {r} entries")
    else:
        m = (0,) * r

    options = dict(DEFAULT_OPTIONS)
    if "options" in seen:
        value, line, col = seen["options"]
        for item, c in _split_list(value, line, col):
            mt = re.fullmatch(r"([A-Za-z_]+)\s*=\s*(\d+)", item)
            if not mt:
                raise ParseError(f"expected name=integer, got {item!r}", line, c)
            name, val = mt.group(1), int(mt.group(2))
            if name not in DEFAULT_OPTIONS:
                raise ParseError(f"unknown option {name!r}", line, c)
            options[name] = val
    return JobSpec(variables, F, K, m, options, text)
