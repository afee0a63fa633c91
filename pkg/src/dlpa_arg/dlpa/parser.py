"""Surface syntax for formulas and programs: tokenizer, recursive descent parser, printer.

Formulas::

    f ::= T | F | atom | ~f | f & f | f | f | f -> f | f <-> f | [p]f | <p>f | (f)
    atom ::= aw(x) | in(x) | in'(x) | att(x,y) | aux(n)

Programs::

    p ::= +atom | -atom | f? | p ; p | p U p | p^ | skip | (p)

Binding, loosest first: ``<->`` (left assoc), ``->`` (right assoc), ``|``,
``&``, then ``~`` and the modalities. In programs: ``U``, then ``;`` (both
right assoc), then postfix ``^``.
"""

import re
from dataclasses import dataclass

from ..errors import ParseError
from .syntax import (
    BOT, TOP, And, AssignFalse, AssignTrue, Atom, Bot, Box, Choice, Converse, Diamond, Iff,
    Implies, Not, Or, Seq, Test, Top, Var,
)


@dataclass(frozen=True)
class SourceSpan:
    byte_start: int
    byte_end: int
    line: int
    column: int


@dataclass(frozen=True)
class Token:
    kind: str  # the punctuation itself, or NAME / NUM / EOF
    text: str
    start: int  # char offsets
    end: int


_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)|(?P<NAME>[A-Za-z_][A-Za-z0-9_]*)|(?P<NUM>[0-9]+)"
    r"|(?P<punct><->|->|[<>\[\]()~&|;?^+\-,'])"
)


def tokenize(text):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(_span(text, pos, pos + 1), ["a token"], text[pos])
        if m.lastgroup != "ws":
            kind = m.group(0) if m.lastgroup == "punct" else m.lastgroup
            toks.append(Token(kind, m.group(0), pos, m.end()))
        pos = m.end()
    toks.append(Token("EOF", "", len(text), len(text)))
    return toks


def _span(text, start, end):
    line = text.count("\n", 0, start) + 1
    col = start - (text.rfind("\n", 0, start) + 1) + 1
    bs = len(text[:start].encode("utf-8"))
    be = bs + len(text[start:end].encode("utf-8"))
    return SourceSpan(bs, be, line, col)


_ATOM_ARITY = {"aw": 1, "in": 1, "att": 2, "aux": 1}
_FORMULA_FOLLOW = {"?", "&", "|", "->", "<->"}


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    # helpers

    @property
    def tok(self):
        return self.toks[self.i]

    def at(self, kind, text=None):
        t = self.tok
        return t.kind == kind and (text is None or t.text == text)

    def at_name(self, name):
        return self.at("NAME", name)

    def advance(self):
        t = self.tok
        self.i += 1
        return t

    def fail(self, expected):
        t = self.tok
        raise ParseError(_span(self.text, t.start, t.end), expected, t.text)

    def expect(self, kind, desc=None):
        if not self.at(kind):
            self.fail([desc or repr(kind)])
        return self.advance()

    def finish(self, what):
        if not self.at("EOF"):
            self.fail([f"end of {what}"])

    # formulas

    def formula(self):
        left = self.imp()
        while self.at("<->"):
            self.advance()
            left = Iff(left, self.imp())
        return left

    def imp(self):
        left = self.disj()
        if self.at("->"):
            self.advance()
            return Implies(left, self.imp())
        return left

    def disj(self):
        items = [self.conj()]
        while self.at("|"):
            self.advance()
            items.append(self.conj())
        return items[0] if len(items) == 1 else Or(tuple(items))

    def conj(self):
        items = [self.unary()]
        while self.at("&"):
            self.advance()
            items.append(self.unary())
        return items[0] if len(items) == 1 else And(tuple(items))

    def unary(self):
        if self.at("~"):
            self.advance()
            return Not(self.unary())
        if self.at("["):
            self.advance()
            p = self.program()
            self.expect("]", "']'")
            return Box(p, self.unary())
        if self.at("<"):
            self.advance()
            p = self.program()
            self.expect(">", "'>'")
            return Diamond(p, self.unary())
        return self.primary()

    def primary(self):
        if self.at("("):
            self.advance()
            f = self.formula()
            self.expect(")", "')'")
            return f
        if self.at_name("T"):
            self.advance()
            return TOP
        if self.at_name("F"):
            self.advance()
            return BOT
        if self.at("NAME") and self.tok.text in _ATOM_ARITY:
            return Atom(self.var())
        self.fail(["a formula"])

    def var(self):
        name = self.expect("NAME", "an atom").text
        kind = name
        if name == "in" and self.at("'"):
            self.advance()
            kind = "inp"
        elif name not in _ATOM_ARITY:
            self.i -= 1
            self.fail(["aw", "in", "in'", "att", "aux"])
        self.expect("(", "'('")
        if kind == "aux":
            args = (int(self.expect("NUM", "a number").text),)
        else:
            args = [self.expect("NAME", "an argument name").text]
            if kind == "att":
                self.expect(",", "','")
                args.append(self.expect("NAME", "an argument name").text)
            args = tuple(args)
        self.expect(")", "')'")
        return Var(kind, args)

    # programs

    def program(self):
        left = self.seq()
        if self.at_name("U"):
            self.advance()
            return Choice(left, self.program())
        return left

    def seq(self):
        left = self.postfix()
        if self.at(";"):
            self.advance()
            return Seq(left, self.seq())
        return left

    def postfix(self):
        p = self.prim_program()
        while self.at("^"):
            self.advance()
            p = Converse(p)
        return p

    def prim_program(self):
        if self.at("+"):
            self.advance()
            return AssignTrue(self.var())
        if self.at("-"):
            self.advance()
            return AssignFalse(self.var())
        if self.at_name("skip"):
            self.advance()
            return Test(TOP)
        if self.at("(") and not self._paren_is_formula():
            self.advance()
            p = self.program()
            self.expect(")", "')'")
            return p
        if self.at("(") or self.at("~") or self.at("[") or self.at("<") or (
            self.at("NAME") and self.tok.text in ("T", "F", "aw", "in", "att", "aux")
        ):
            f = self.formula()
            self.expect("?", "'?'")
            return Test(f)
        self.fail(["a program"])

    def _paren_is_formula(self):
        # decide by the token after the matching ')'
        depth = 0
        j = self.i
        while j < len(self.toks):
            k = self.toks[j].kind
            if k in ("(", "[", "<"):
                depth += 1
            elif k in (")", "]", ">"):
                depth -= 1
                if depth == 0:
                    nxt = self.toks[j + 1].kind if j + 1 < len(self.toks) else "EOF"
                    return nxt in _FORMULA_FOLLOW
            elif k == "EOF":
                return False
            j += 1
        return False


def parse_formula(text):
    p = _Parser(text)
    f = p.formula()
    p.finish("formula")
    return f


def parse_program(text):
    p = _Parser(text)
    q = p.program()
    p.finish("program")
    return q


def parse_var(text):
    p = _Parser(text)
    v = p.var()
    p.finish("atom")
    return v


# ---- printing -----------------------------------------------------------------

_IFF, _IMP, _OR, _AND, _UN, _PRIM = 1, 2, 3, 4, 5, 6
_CHO, _SEQ, _CONV, _PPRIM = 1, 2, 3, 4


def _flevel(f):
    if isinstance(f, Iff):
        return _IFF
    if isinstance(f, Implies):
        return _IMP
    if isinstance(f, Or):
        return _OR
    if isinstance(f, And):
        return _AND
    if isinstance(f, (Not, Box, Diamond)):
        return _UN
    return _PRIM


def _plevel(p):
    if isinstance(p, Choice):
        return _CHO
    if isinstance(p, Seq):
        return _SEQ
    if isinstance(p, Converse):
        return _CONV
    return _PPRIM


def _fwrap(f, ok):
    s = print_formula(f)
    return s if ok else f"({s})"


def print_formula(f) -> str:
    if isinstance(f, Atom):
        return str(f.var)
    if isinstance(f, Top):
        return "T"
    if isinstance(f, Bot):
        return "F"
    if isinstance(f, Not):
        return "~" + _fwrap(f.sub, _flevel(f.sub) >= _UN)
    if isinstance(f, Box):
        return f"[{print_program(f.prog)}] " + _fwrap(f.body, _flevel(f.body) >= _UN)
    if isinstance(f, Diamond):
        return f"<{print_program(f.prog)}> " + _fwrap(f.body, _flevel(f.body) >= _UN)
    if isinstance(f, And):
        return " & ".join(_fwrap(x, _flevel(x) > _AND) for x in f.items)
    if isinstance(f, Or):
        return " | ".join(_fwrap(x, _flevel(x) > _OR) for x in f.items)
    if isinstance(f, Implies):
        return (
            _fwrap(f.left, _flevel(f.left) > _IMP)
            + " -> "
            + _fwrap(f.right, _flevel(f.right) >= _IMP)
        )
    if isinstance(f, Iff):
        return (
            _fwrap(f.left, _flevel(f.left) > _IFF)
            + " <-> "
            + _fwrap(f.right, _flevel(f.right) > _IFF)
        )
    raise TypeError(f"not a formula: {f!r}")


def print_program(p) -> str:
    if isinstance(p, AssignTrue):
        return f"+{p.var}"
    if isinstance(p, AssignFalse):
        return f"-{p.var}"
    if isinstance(p, Test):
        if isinstance(p.cond, Top):
            return "skip"
        return print_formula(p.cond) + "?"
    if isinstance(p, Converse):
        s = print_program(p.prog)
        return (s if _plevel(p.prog) >= _CONV and not isinstance(p.prog, Test) else f"({s})") + "^"
    if isinstance(p, Seq):
        left = print_program(p.first)
        if _plevel(p.first) <= _SEQ:
            left = f"({left})"
        right = print_program(p.second)
        if _plevel(p.second) < _SEQ:
            right = f"({right})"
        return f"{left} ; {right}"
    if isinstance(p, Choice):
        left = print_program(p.left)
        if _plevel(p.left) <= _CHO:
            left = f"({left})"
        return f"{left} U {print_program(p.right)}"
    raise TypeError(f"not a program: {p!r}")
