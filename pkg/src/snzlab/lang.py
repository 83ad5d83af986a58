"""A small expression language for clopen sets.

Grammar (whitespace-insensitive)::

    expr     := diff ( '|' diff )*
    diff     := inter ( '\\' inter )*
    inter    := unary ( '&' unary )*
    unary    := '~' unary | primary
    primary  := 'EMPTY' | 'FULL' | atom | '(' expr ')'
    atom     := 'H' '(' coords ',' coords ')'
    coords   := '{' [ INT ( ',' INT )* ] '}'

Binary operators are left associative; ``~`` binds tightest, then ``&``,
then ``\\``, then ``|``. ``H(A, B)`` is zero on ``A`` and one on ``B``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import clopen
from .clopen import ClopenSet, Cylinder

__all__ = [
    "ClopenSyntaxError",
    "Atom",
    "Const",
    "Complement",
    "BinOp",
    "parse",
    "evaluate",
    "format_set",
    "parse_set",
]


class ClopenSyntaxError(ValueError):
    def __init__(self, msg: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.line, self.column, self.msg = line, col, msg
        super().__init__(f"line {line}, column {col}: {msg}")


@dataclass(frozen=True)
class Atom:
    zeros: tuple[int, ...]
    ones: tuple[int, ...]


@dataclass(frozen=True)
class Const:
    full: bool


@dataclass(frozen=True)
class Complement:
    arg: object


@dataclass(frozen=True)
class BinOp:
    op: str  # one of '|', '&', '\\'
    left: object
    right: object


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<word>[A-Za-z_]+)|(?P<sym>[(){},|&\\~]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ClopenSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        toks.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(("eof", "", n))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ClopenSyntaxError(msg, self.text, tok[2])

    def expect(self, value):
        tok = self.peek()
        if tok[1] != value or tok[0] == "eof":
            found = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise self.error(f"expected {value!r}, found {found}")
        self.i += 1
        return tok

    def parse(self):
        node = self.expr()
        if self.peek()[0] != "eof":
            raise self.error(f"unexpected {self.peek()[1]!r} after expression")
        return node

    def _chain(self, op, sub):
        node = sub()
        while self.peek()[:2] == ("sym", op):
            self.i += 1
            node = BinOp(op, node, sub())
        return node

    def expr(self):
        return self._chain("|", self.diff)

    def diff(self):
        return self._chain("\\", self.inter)

    def inter(self):
        return self._chain("&", self.unary)

    def unary(self):
        if self.peek()[:2] == ("sym", "~"):
            self.i += 1
            return Complement(self.unary())
        return self.primary()

    def primary(self):
        kind, val, _ = tok = self.peek()
        if kind == "word":
            if val == "EMPTY":
                self.i += 1
                return Const(False)
            if val == "FULL":
                self.i += 1
                return Const(True)
            if val == "H":
                self.i += 1
                return self.atom(tok)
            raise self.error(f"unknown name {val!r}")
        if kind == "sym" and val == "(":
            self.i += 1
            node = self.expr()
            self.expect(")")
            return node
        found = "end of input" if kind == "eof" else repr(val)
        raise self.error(f"expected EMPTY, FULL, H(...) or '(', found {found}")

    def atom(self, start):
        self.expect("(")
        zeros = self.coords()
        self.expect(",")
        ones = self.coords()
        self.expect(")")
        overlap = sorted(set(zeros) & set(ones))
        if overlap:
            raise self.error(
                f"H(A,B) needs disjoint A and B; both contain {overlap}", start
            )
        return Atom(tuple(sorted(set(zeros))), tuple(sorted(set(ones))))

    def coords(self):
        self.expect("{")
        out = []
        if self.peek()[1] != "}":
            while True:
                kind, val, _ = self.peek()
                if kind != "int":
                    raise self.error(f"expected a coordinate, found {val or 'end of input'!r}")
                out.append(int(val))
                self.i += 1
                if self.peek()[1] == ",":
                    self.i += 1
                    continue
                break
        self.expect("}")
        return out


def parse(text: str):
    """Parse ``text`` into an AST; raises :class:`ClopenSyntaxError`."""
    return _Parser(text).parse()


def evaluate(node) -> ClopenSet:
    """Evaluate an AST (or expression string) to a canonical clopen set."""
    if isinstance(node, str):
        node = parse(node)
    if isinstance(node, Atom):
        return clopen.from_cylinder(Cylinder(node.zeros, node.ones))
    if isinstance(node, Const):
        return clopen.FULL if node.full else clopen.EMPTY
    if isinstance(node, Complement):
        return clopen.complement(evaluate(node.arg))
    if isinstance(node, BinOp):
        left, right = evaluate(node.left), evaluate(node.right)
        if node.op == "|":
            return clopen.union(left, right)
        if node.op == "&":
            return clopen.intersect(left, right)
        return clopen.difference(left, right)
    raise TypeError(f"not a clopen expression node: {node!r}")


def parse_set(text: str) -> ClopenSet:
    return evaluate(parse(text))


def _fmt_coords(cs) -> str:
    return "{" + ",".join(str(c) for c in cs) + "}"


def format_set(u: ClopenSet) -> str:
    """Canonical text: the disjoint full-support atoms of ``u``, sorted."""
    if u.is_empty:
        return "EMPTY"
    if u.is_full:
        return "FULL"
    parts = []
    for cyl in u.cylinders():
        parts.append(f"H({_fmt_coords(sorted(cyl.zeros))},{_fmt_coords(sorted(cyl.ones))})")
    return " | ".join(parts)
