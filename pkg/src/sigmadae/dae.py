"""A small DAE description language and syntactic signature extraction.

File layout::

    DAE v1
    # comment
    vars x y lam
    const G L
    eq A: Der(x,2) + x*lam
    eq B: Der(y,2) + y*lam - G
    eq C: x^2 + y^2 - L^2

Each equation ``eq <label>: <expr>`` means ``expr = 0``. Expression grammar::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := base ('^' uint)?
    base   := number | ident | 'Der' '(' ident ',' uint ')'
            | func '(' expr ')' | '(' expr ')' | '-' factor

with ``func`` one of sin, cos, tan, exp, log, sqrt.
"""
import re
from dataclasses import dataclass

from .errors import CountMismatch, DaeSyntaxError, UndeclaredIdentifier
from .sigma_core import SignatureMatrix

FUNCTIONS = frozenset({"sin", "cos", "tan", "exp", "log", "sqrt"})
KEYWORDS = FUNCTIONS | {"Der"}


# --- expression tree ---------------------------------------------------------


@dataclass(frozen=True)
class Num:
    text: str


@dataclass(frozen=True)
class Name:
    """A declared variable or constant."""

    name: str


@dataclass(frozen=True)
class Der:
    name: str
    order: int


@dataclass(frozen=True)
class Call:
    func: str
    arg: object


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


@dataclass(frozen=True)
class Equation:
    label: str
    expr: object
    line: int


@dataclass(frozen=True)
class DaeSource:
    variables: tuple
    constants: tuple
    equations: tuple


# --- tokenizer -----------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*/^(),]))"
)
_UINT = re.compile(r"\d+")


@dataclass
class _Tok:
    kind: str  # num, ident, op, end
    text: str
    col: int


def _tokenize(text, line, col0):
    toks = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            toks.append(_Tok("end", "", col0 + pos))
            return toks
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise DaeSyntaxError(f"unexpected character {text[pos]!r}", line, col0 + pos)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append(_Tok(kind, m.group(kind), col0 + start))
        pos = m.end()


class _Parser:
    def __init__(self, text, line, col0, variables, constants):
        self.toks = _tokenize(text, line, col0)
        self.pos = 0
        self.line = line
        self.variables = variables
        self.constants = constants

    @property
    def tok(self):
        return self.toks[self.pos]

    def error(self, message, tok=None):
        tok = tok or self.tok
        return DaeSyntaxError(message, self.line, tok.col)

    def take(self):
        tok = self.tok
        self.pos += 1
        return tok

    def expect(self, text):
        if self.tok.text != text or self.tok.kind == "end":
            found = self.tok.text or "end of line"
            raise self.error(f"expected {text!r}, found {found!r}")
        return self.take()

    def uint(self):
        tok = self.tok
        if tok.kind != "num" or not _UINT.fullmatch(tok.text):
            raise self.error("expected an unsigned integer")
        self.take()
        return int(tok.text)

    def parse(self):
        node = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}")
        return node

    def expr(self):
        node = self.term()
        while self.tok.text in ("+", "-") and self.tok.kind == "op":
            op = self.take().text
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.tok.text in ("*", "/") and self.tok.kind == "op":
            op = self.take().text
            node = BinOp(op, node, self.factor())
        return node

    def factor(self):
        node = self.base()
        if self.tok.kind == "op" and self.tok.text == "^":
            self.take()
            node = Pow(node, self.uint())
        return node

    def base(self):
        tok = self.tok
        if tok.kind == "num":
            self.take()
            return Num(tok.text)
        if tok.kind == "op" and tok.text == "-":
            self.take()
            return Neg(self.factor())
        if tok.kind == "op" and tok.text == "(":
            self.take()
            node = self.expr()
            self.expect(")")
            return node
        if tok.kind == "ident":
            self.take()
            if tok.text == "Der":
                self.expect("(")
                name_tok = self.tok
                if name_tok.kind != "ident" or name_tok.text in KEYWORDS:
                    raise self.error("Der expects a variable name")
                self.take()
                if name_tok.text not in self.variables:
                    if name_tok.text in self.constants:
                        raise self.error(f"cannot differentiate constant {name_tok.text!r}", name_tok)
                    raise UndeclaredIdentifier(name_tok.text, self.line, name_tok.col)
                self.expect(",")
                order = self.uint()
                self.expect(")")
                return Der(name_tok.text, order)
            if tok.text in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(tok.text, arg)
            if tok.text in self.variables or tok.text in self.constants:
                return Name(tok.text)
            raise UndeclaredIdentifier(tok.text, self.line, tok.col)
        found = tok.text or "end of line"
        raise self.error(f"unexpected {found!r}")


def _declared_names(rest, line, col, seen):
    names = rest.replace(",", " ").split()
    if not names:
        raise DaeSyntaxError("declaration lists no names", line, col)
    for name in names:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
            raise DaeSyntaxError(f"invalid name {name!r}", line, col)
        if name in KEYWORDS:
            raise DaeSyntaxError(f"{name!r} is reserved", line, col)
        if name in seen:
            raise DaeSyntaxError(f"{name!r} declared twice", line, col)
        seen.add(name)
    return names


def parse_dae(text: str) -> DaeSource:
    lines = text.splitlines()
    header_seen = False
    variables, constants, equations = [], [], []
    seen = set()
    pending = []  # equations are parsed after all declarations are known
    for lineno, raw in enumerate(lines, start=1):
        body = raw.split("#", 1)[0]
        stripped = body.strip()
        if not stripped:
            continue
        col = len(body) - len(body.lstrip()) + 1
        if not header_seen:
            if stripped.split() != ["DAE", "v1"]:
                raise DaeSyntaxError("first line must be 'DAE v1'", lineno, col)
            header_seen = True
            continue
        keyword, _, rest = stripped.partition(" ")
        if keyword == "vars":
            variables.extend(_declared_names(rest, lineno, col, seen))
        elif keyword == "const":
            constants.extend(_declared_names(rest, lineno, col, seen))
        elif keyword == "eq":
            label, colon, expr_text = rest.partition(":")
            label = label.strip()
            if not colon or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", label):
                raise DaeSyntaxError("expected 'eq <label>: <expression>'", lineno, col)
            if any(label == e[0] for e in pending):
                raise DaeSyntaxError(f"equation label {label!r} used twice", lineno, col)
            offset = body.index(":") + 2
            pending.append((label, expr_text, lineno, offset))
        else:
            raise DaeSyntaxError(f"unknown statement {keyword!r}", lineno, col)
    if not header_seen:
        raise DaeSyntaxError("empty input; expected 'DAE v1'", 1, 1)
    var_set, const_set = frozenset(variables), frozenset(constants)
    for label, expr_text, lineno, offset in pending:
        expr = _Parser(expr_text, lineno, offset, var_set, const_set).parse()
        equations.append(Equation(label, expr, lineno))
    if len(equations) != len(variables) or not equations:
        raise CountMismatch(f"{len(equations)} equations for {len(variables)} variables")
    return DaeSource(tuple(variables), tuple(constants), tuple(equations))


def _orders(node, out):
    """Record the highest derivative order of every variable in ``node``."""
    if isinstance(node, Der):
        out[node.name] = max(out.get(node.name, node.order), node.order)
    elif isinstance(node, Name):
        out.setdefault(node.name, 0)
    elif isinstance(node, (Neg, Call)):
        _orders(node.arg, out)
    elif isinstance(node, Pow):
        _orders(node.base, out)
    elif isinstance(node, BinOp):
        _orders(node.left, out)
        _orders(node.right, out)
    return out


def signature_of(src: DaeSource) -> SignatureMatrix:
    """sigma_ij = highest order of x_j appearing anywhere in f_i; no simplification."""
    col = {name: j for j, name in enumerate(src.variables)}
    entries = {}
    for i, eq in enumerate(src.equations):
        for name, order in _orders(eq.expr, {}).items():
            if name in col:
                entries[(i, col[name])] = order
    return SignatureMatrix(
        len(src.variables),
        entries,
        [eq.label for eq in src.equations],
        list(src.variables),
    )
