"""A small expression language for elements and regions.

    pred    := sum [('in' | 'subset' | '==') sum] | 'isempty' unary
    sum     := inter ('|' inter)*
    inter   := prod (('&' | '\\') prod)*
    prod    := unary ('*' unary)*
    unary   := '!' unary | postfix
    postfix := primary ('^-1')*
    primary := '(' int ',' int ')' | '(' pred ')' | cell | 'empty' | 'E' | 'IZ'
             | 'up' | 'down' | 'sdown' | 'updown' | 'singleton' | 'O'   postfix
             | 'phi' | 'psi' postfix | 'quad' int | 'nbhd' fam postfix int
             | 'rshift' | 'rpre' unary postfix | 'lshift' | 'lpre' postfix unary
             | 'prod' unary unary
    cell    := '{' clause (';' clause)* '}' ;  clause := ('x'|'y'|'d') 'in' '[' bound ',' bound ']'

``*`` multiplies elements, and between regions (or a region and an element)
it is the set product.  ``^-1`` inverts an element or takes the inversion
image of a region.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any

from . import core
from .element import Element
from .regions import INF, Cell, IntervalZ, Region
from .topologies import FAMILIES

COORD_LIMIT = 2**40


class ExprError(ValueError):
    """Syntax, type or range error, located by line and column."""

    def __init__(self, message: str, text: str = "", pos: int = 0):
        self.message = message
        self.line = text.count("\n", 0, pos) + 1
        self.col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{self.line}:{self.col}: {message}")


# --- tokens -------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<inv>\^-1)|(?P<inf>[+-]inf\b)|(?P<int>-?\d+)|(?P<word>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<eq>==)|(?P<op>[()\[\]{},;*|&\\!]))"
)


@dataclass(frozen=True)
class Token:
    kind: str  # int, inf, word, op, end
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    out, pos = [], 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            out.append(Token("end", "", pos))
            return out
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ExprError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        kind = "op" if kind in ("inv", "eq") else kind
        out.append(Token(kind, m.group(m.lastgroup), m.start(m.lastgroup)))
        pos = m.end()


# --- syntax tree --------------------------------------------------------------


@dataclass(frozen=True)
class Node:
    pos: int = field(default=0, compare=False, kw_only=True)


@dataclass(frozen=True)
class Lit(Node):
    i: int
    j: int


@dataclass(frozen=True)
class Int(Node):
    value: int


@dataclass(frozen=True)
class CellLit(Node):
    cell: Cell


@dataclass(frozen=True)
class Const(Node):
    name: str  # empty, E, IZ


@dataclass(frozen=True)
class Call(Node):
    name: str
    args: tuple


@dataclass(frozen=True)
class Fam(Node):
    name: str


@dataclass(frozen=True)
class Bin(Node):
    op: str
    left: Node
    right: Node


@dataclass(frozen=True)
class Not(Node):
    arg: Node


@dataclass(frozen=True)
class Inv(Node):
    arg: Node


@dataclass(frozen=True)
class IsEmpty(Node):
    arg: Node


# keyword -> argument shapes; "p" postfix, "u" unary, "i" int, "f" family
_KEYWORDS = {
    "up": "p", "down": "p", "sdown": "p", "updown": "p", "singleton": "p", "O": "p",
    "phi": "p", "psi": "p", "quad": "i", "nbhd": "fpi",
    "rshift": "up", "rpre": "up", "lshift": "pu", "lpre": "pu", "prod": "uu",
}
_CONSTS = ("empty", "E", "IZ")
_RESERVED = set(_KEYWORDS) | set(_CONSTS) | {"in", "subset", "isempty"}


class Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.k = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.k]

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.tok
        return ExprError(msg, self.text, tok.pos)

    def take(self) -> Token:
        t = self.tok
        self.k += 1
        return t

    def at(self, text: str) -> bool:
        return self.tok.kind in ("op", "word") and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        return self.take()

    def parse(self) -> Node:
        node = self.pred()
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}")
        return node

    def pred(self) -> Node:
        if self.at("isempty"):
            t = self.take()
            return IsEmpty(self.unary(), pos=t.pos)
        left = self.sum()
        for op in ("in", "subset", "=="):
            if self.at(op):
                t = self.take()
                return Bin(op, left, self.sum(), pos=t.pos)
        return left

    def _chain(self, ops, sub) -> Node:
        node = sub()
        while self.tok.kind == "op" and self.tok.text in ops:
            t = self.take()
            node = Bin(t.text, node, sub(), pos=t.pos)
        return node

    def sum(self) -> Node:
        return self._chain(("|",), self.inter)

    def inter(self) -> Node:
        return self._chain(("&", "\\"), self.prod)

    def prod(self) -> Node:
        return self._chain(("*",), self.unary)

    def unary(self) -> Node:
        if self.at("!"):
            t = self.take()
            return Not(self.unary(), pos=t.pos)
        return self.postfix()

    def postfix(self) -> Node:
        node = self.primary()
        while self.at("^-1"):
            t = self.take()
            node = Inv(node, pos=t.pos)
        return node

    def integer(self) -> int:
        t = self.tok
        if t.kind != "int":
            raise self.error(f"expected an integer, found {t.text or 'end of input'!r}")
        self.take()
        v = int(t.text)
        if abs(v) > COORD_LIMIT:
            raise self.error(f"|{v}| exceeds the coordinate bound 2^40", t)
        return v

    def primary(self) -> Node:
        t = self.tok
        if self.at("("):
            if self.toks[self.k + 1].kind == "int" and self.toks[self.k + 2].text == ",":
                self.take()
                i = self.integer()
                self.expect(",")
                j = self.integer()
                self.expect(")")
                return Lit(i, j, pos=t.pos)
            self.take()
            node = self.pred()
            self.expect(")")
            return node
        if self.at("{"):
            return self.cell()
        if t.kind == "word":
            if t.text in _CONSTS:
                self.take()
                return Const(t.text, pos=t.pos)
            if t.text in _KEYWORDS:
                self.take()
                args = []
                for shape in _KEYWORDS[t.text]:
                    if shape == "p":
                        args.append(self.postfix())
                    elif shape == "u":
                        args.append(self.unary())
                    elif shape == "i":
                        at = self.tok
                        args.append(Int(self.integer(), pos=at.pos))
                    else:
                        args.append(self.family())
                return Call(t.text, tuple(args), pos=t.pos)
            raise self.error(f"unknown name {t.text!r}")
        raise self.error(f"unexpected {t.text or 'end of input'!r}")

    def family(self) -> Fam:
        t = self.tok
        if t.kind != "word" or t.text in _RESERVED:
            raise self.error("expected a family name (tau1, tau2, tauB, tauBd)")
        if t.text not in FAMILIES:
            raise self.error(f"unknown family {t.text!r}; expected one of {', '.join(FAMILIES)}")
        self.take()
        return Fam(t.text, pos=t.pos)

    def cell(self) -> CellLit:
        start = self.expect("{")
        ivs = {}
        while True:
            t = self.tok
            if t.kind != "word" or t.text not in ("x", "y", "d"):
                raise self.error("expected 'x', 'y' or 'd'")
            if t.text in ivs:
                raise self.error(f"repeated constraint on {t.text!r}")
            self.take()
            self.expect("in")
            self.expect("[")
            lo = self.bound(-INF)
            self.expect(",")
            hi = self.bound(INF)
            self.expect("]")
            ivs[t.text] = IntervalZ(lo, hi)
            if self.at(";"):
                self.take()
                continue
            self.expect("}")
            break
        full = IntervalZ()
        return CellLit(Cell(ivs.get("x", full), ivs.get("y", full), ivs.get("d", full)), pos=start.pos)

    def bound(self, allowed):
        t = self.tok
        if t.kind == "inf":
            v = INF if t.text[0] == "+" else -INF
            if v != allowed:
                raise self.error(f"{t.text} is not allowed at this end of an interval")
            self.take()
            return v
        return self.integer()


def parse(text: str) -> Node:
    return Parser(text).parse()


# --- printing -----------------------------------------------------------------

_ATOMS = (Lit, Int, CellLit, Const, Fam)


def to_text(node: Node) -> str:
    """Canonical text; ``parse(to_text(n)) == n``."""
    if isinstance(node, Lit):
        return f"({node.i},{node.j})"
    if isinstance(node, Int):
        return str(node.value)
    if isinstance(node, CellLit):
        return str(node.cell)
    if isinstance(node, (Const, Fam)):
        return node.name
    if isinstance(node, Call):
        return " ".join([node.name] + [_arg(a) for a in node.args])
    if isinstance(node, Not):
        return "!" + _arg(node.arg)
    if isinstance(node, Inv):
        return _arg(node.arg, tight=True) + "^-1"
    if isinstance(node, IsEmpty):
        return "isempty " + _arg(node.arg)
    if isinstance(node, Bin):
        sep = "" if node.op == "*" else " "
        return f"{_arg(node.left)}{sep}{node.op}{sep}{_arg(node.right)}"
    raise TypeError(f"not an expression node: {node!r}")


def _arg(node: Node, tight: bool = False) -> str:
    # keyword calls and '!' would swallow a trailing '^-1'
    text = to_text(node)
    if isinstance(node, _ATOMS + (Inv,)) or (not tight and isinstance(node, (Call, Not))):
        return text
    return f"({text})"


# --- evaluation ---------------------------------------------------------------


def _type_name(v) -> str:
    if isinstance(v, Element):
        return "element"
    if isinstance(v, Region):
        return "region"
    if isinstance(v, bool):
        return "boolean"
    return type(v).__name__


class Evaluator:
    def __init__(self, text: str = ""):
        self.text = text

    def fail(self, node: Node, msg: str):
        return ExprError(msg, self.text, node.pos)

    def element(self, node: Node) -> Element:
        v = self.eval(node)
        if not isinstance(v, Element):
            raise self.fail(node, f"expected an element, got a {_type_name(v)}")
        return self._checked(node, v)

    def region(self, node: Node) -> Region:
        v = self.eval(node)
        if isinstance(v, Region):
            return v
        raise self.fail(node, f"expected a region, got a {_type_name(v)}")

    def _checked(self, node, p: Element) -> Element:
        if abs(p.i) > COORD_LIMIT or abs(p.j) > COORD_LIMIT:
            raise self.fail(node, f"element {p} leaves the coordinate bound 2^40")
        return p

    def eval(self, node: Node) -> Any:
        method = getattr(self, "_" + type(node).__name__.lower())
        return method(node)

    def _lit(self, node):
        return Element(node.i, node.j)

    def _int(self, node):
        return node.value

    def _celllit(self, node):
        return Region.of(node.cell)

    def _const(self, node):
        if node.name == "empty":
            return Region.empty()
        if node.name == "E":
            return core.idempotents()
        return Region.of(Cell(ix=IntervalZ.at_most(0)))

    def _fam(self, node):
        raise self.fail(node, "a family name is only allowed after 'nbhd'")

    def _call(self, node):
        name, args = node.name, node.args
        if name in ("up", "down", "sdown", "updown", "singleton", "O", "phi", "psi"):
            p = self.element(args[0])
            if name == "up":
                return core.up_set(p)
            if name == "down":
                return core.down_set(p)
            if name == "sdown":
                return core.strict_down(p)
            if name == "updown":
                return core.updown(p)
            if name == "singleton":
                return Region.singleton(p)
            if name == "O":
                return Region.of(Cell(iy=IntervalZ.at_most(p.j), id=IntervalZ.at_least(p.diff)))
            return core.phi(p) if name == "phi" else core.psi(p)
        if name == "quad":
            m = args[0].value
            return Region.of(Cell(IntervalZ.at_least(m), IntervalZ.at_least(m)))
        if name == "nbhd":
            fam = FAMILIES[args[0].name]
            n = args[2].value
            if n < fam.min_index:
                raise self.fail(args[2], f"neighborhood index must be >= {fam.min_index}")
            return fam.basic(self.element(args[1]), n)
        if name == "prod":
            return self.region(args[0]).product(self.region(args[1]))
        if name in ("rshift", "rpre"):
            r, g = self.region(args[0]), self.element(args[1])
            return r.translate_right(g) if name == "rshift" else r.preimage_right(g)
        g, r = self.element(args[0]), self.region(args[1])
        return r.translate_left(g) if name == "lshift" else r.preimage_left(g)

    def _not(self, node):
        return self.region(node.arg).complement()

    def _inv(self, node):
        v = self.eval(node.arg)
        if isinstance(v, Element):
            return core.invert(v)
        if isinstance(v, Region):
            return v.inverted()
        raise self.fail(node, f"cannot invert a {_type_name(v)}")

    def _isempty(self, node):
        return self.region(node.arg).is_empty()

    def _bin(self, node):
        op = node.op
        if op == "in":
            return self.region(node.right).member(self.element(node.left))
        if op == "==":
            a, b = self.eval(node.left), self.eval(node.right)
            if _type_name(a) != _type_name(b) or isinstance(a, bool):
                raise self.fail(node, f"cannot compare a {_type_name(a)} with a {_type_name(b)}")
            return a == b
        if op == "*":
            a, b = self.eval(node.left), self.eval(node.right)
            if isinstance(a, Element) and isinstance(b, Element):
                return self._checked(node, core.multiply(a, b))
            if isinstance(a, Region) and isinstance(b, Region):
                return a.product(b)
            if isinstance(a, Region) and isinstance(b, Element):
                return a.translate_right(b)
            if isinstance(a, Element) and isinstance(b, Region):
                return b.translate_left(a)
            raise self.fail(node, f"cannot multiply a {_type_name(a)} by a {_type_name(b)}")
        a, b = self.region(node.left), self.region(node.right)
        if op == "subset":
            return a.is_subset(b)
        if op == "|":
            return a | b
        if op == "&":
            return a & b
        return a - b


def evaluate(text: str) -> Any:
    return Evaluator(text).eval(parse(text))


def format_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)
