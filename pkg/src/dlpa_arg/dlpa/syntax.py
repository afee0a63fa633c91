"""Variables, universes and the formula/program ASTs of star-free DL-PA with converse."""

from dataclasses import dataclass
from typing import Iterable, Tuple

from ..errors import DomainError

KINDS = ("aw", "in", "inp", "att", "aux")
_KIND_RANK = {k: i for i, k in enumerate(KINDS)}


@dataclass(frozen=True)
class Var:
    """A propositional variable. ``args`` holds argument names, or the index for aux."""

    kind: str
    args: tuple

    def __post_init__(self):
        if self.kind not in _KIND_RANK:
            raise DomainError(f"unknown variable kind {self.kind!r}")
        want = 2 if self.kind == "att" else 1
        if len(self.args) != want:
            raise DomainError(f"{self.kind} takes {want} argument(s), got {self.args!r}")
        if self.kind == "aux":
            if not isinstance(self.args[0], int) or self.args[0] < 0:
                raise DomainError("aux index must be a non-negative int")

    def __str__(self):
        if self.kind == "inp":
            return f"in'({self.args[0]})"
        return f"{self.kind}({','.join(str(a) for a in self.args)})"

    def sort_key(self):
        return (_KIND_RANK[self.kind],) + tuple(str(a) for a in self.args)


def aw(x):
    return Var("aw", (x,))


def in_(x):
    return Var("in", (x,))


def in_prime(x):
    return Var("inp", (x,))


def att(x, y):
    return Var("att", (x, y))


def aux(k):
    return Var("aux", (k,))


class Universe:
    """Ordered, finite, non-empty set of argument names fixing the variable layout.

    Bits: aw -> i, in -> n+i, in' -> 2n+i, att(x,y) -> 3n+i*n+j, aux(k) -> 3n+n*n+k.
    Bit order coincides with the canonical Var order.
    """

    def __init__(self, args: Iterable[str]):
        args = tuple(args)
        if not args:
            raise DomainError("universe must be non-empty")
        if len(set(args)) != len(args):
            raise DomainError("universe argument names must be unique")
        self.args = args
        self.n = len(args)
        self.index = {a: i for i, a in enumerate(args)}

    def __repr__(self):
        return f"Universe({list(self.args)!r})"

    def __eq__(self, other):
        return isinstance(other, Universe) and self.args == other.args

    def __hash__(self):
        return hash(self.args)

    def __len__(self):
        return self.n

    def __contains__(self, name):
        return name in self.index

    def _idx(self, x):
        try:
            return self.index[x]
        except KeyError:
            raise DomainError(f"argument {x!r} is not in the universe") from None

    def bit(self, var: Var) -> int:
        n = self.n
        k = var.kind
        if k == "aw":
            return self._idx(var.args[0])
        if k == "in":
            return n + self._idx(var.args[0])
        if k == "inp":
            return 2 * n + self._idx(var.args[0])
        if k == "att":
            return 3 * n + self._idx(var.args[0]) * n + self._idx(var.args[1])
        return 3 * n + n * n + var.args[0]

    def var(self, bit: int) -> Var:
        n = self.n
        if bit < n:
            return aw(self.args[bit])
        if bit < 2 * n:
            return in_(self.args[bit - n])
        if bit < 3 * n:
            return in_prime(self.args[bit - 2 * n])
        if bit < 3 * n + n * n:
            i, j = divmod(bit - 3 * n, n)
            return att(self.args[i], self.args[j])
        return aux(bit - 3 * n - n * n)

    def mask(self, vars: Iterable[Var]) -> int:
        m = 0
        for v in vars:
            m |= 1 << self.bit(v)
        return m

    def valuation(self, mask: int) -> frozenset:
        out = []
        b = 0
        while mask:
            if mask & 1:
                out.append(self.var(b))
            mask >>= 1
            b += 1
        return frozenset(out)

    def sorted_vars(self, vars: Iterable[Var]):
        return sorted(vars, key=self.bit)

    def sorted_args(self, names: Iterable[str]):
        return sorted(names, key=self._idx)

    # canonical variable families
    def aw_vars(self, names=None):
        return [aw(x) for x in self._sel(names)]

    def in_vars(self, names=None):
        return [in_(x) for x in self._sel(names)]

    def inp_vars(self, names=None):
        return [in_prime(x) for x in self._sel(names)]

    def att_vars(self, pairs=None):
        if pairs is None:
            return [att(x, y) for x in self.args for y in self.args]
        return self.sorted_vars(att(x, y) for x, y in pairs)

    def _sel(self, names):
        if names is None:
            return list(self.args)
        return self.sorted_args(names)

    @classmethod
    def infer(cls, *things):
        """Universe of every argument mentioned by the given vars/ASTs, sorted by name."""
        names = set()
        for t in things:
            if isinstance(t, Var):
                vs = [t]
            elif isinstance(t, (Formula, Program)):
                vs = all_vars(t)
            else:
                vs = t
            for v in vs:
                if v.kind != "aux":
                    names.update(v.args)
        if not names:
            names = {"_"}
        return cls(sorted(names))


# ---- ASTs -------------------------------------------------------------------


class Formula:
    __slots__ = ()


class Program:
    __slots__ = ()


@dataclass(frozen=True)
class Atom(Formula):
    var: Var


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bot(Formula):
    pass


@dataclass(frozen=True)
class Not(Formula):
    sub: Formula


@dataclass(frozen=True)
class And(Formula):
    items: Tuple[Formula, ...]

    def __post_init__(self):
        if len(self.items) < 2:
            raise DomainError("And needs at least two conjuncts; use conj()")


@dataclass(frozen=True)
class Or(Formula):
    items: Tuple[Formula, ...]

    def __post_init__(self):
        if len(self.items) < 2:
            raise DomainError("Or needs at least two disjuncts; use disj()")


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Box(Formula):
    prog: Program
    body: Formula


@dataclass(frozen=True)
class Diamond(Formula):
    prog: Program
    body: Formula


@dataclass(frozen=True)
class AssignTrue(Program):
    var: Var


@dataclass(frozen=True)
class AssignFalse(Program):
    var: Var


@dataclass(frozen=True)
class Test(Program):
    cond: Formula


@dataclass(frozen=True)
class Seq(Program):
    first: Program
    second: Program


@dataclass(frozen=True)
class Choice(Program):
    left: Program
    right: Program


@dataclass(frozen=True)
class Converse(Program):
    prog: Program


TOP = Top()
BOT = Bot()


def atom(v: Var) -> Atom:
    return Atom(v)


def conj(items) -> Formula:
    items = tuple(items)
    if not items:
        return TOP
    if len(items) == 1:
        return items[0]
    return And(items)


def disj(items) -> Formula:
    items = tuple(items)
    if not items:
        return BOT
    if len(items) == 1:
        return items[0]
    return Or(items)


def children(node):
    if isinstance(node, (Atom, Top, Bot, AssignTrue, AssignFalse)):
        return ()
    if isinstance(node, Not):
        return (node.sub,)
    if isinstance(node, (And, Or)):
        return node.items
    if isinstance(node, (Implies, Iff, Choice)):
        return (node.left, node.right)
    if isinstance(node, (Box, Diamond)):
        return (node.prog, node.body)
    if isinstance(node, Test):
        return (node.cond,)
    if isinstance(node, Seq):
        return (node.first, node.second)
    if isinstance(node, Converse):
        return (node.prog,)
    raise TypeError(f"not a DL-PA node: {node!r}")


def _walk(node):
    # iterative, visits shared subterms once
    seen = set()
    stack = [node]
    while stack:
        n = stack.pop()
        if id(n) in seen:
            continue
        seen.add(id(n))
        yield n
        stack.extend(children(n))


def assigned_vars(node) -> set:
    """Every variable occurring in an assignment anywhere inside ``node``."""
    return {n.var for n in _walk(node) if isinstance(n, (AssignTrue, AssignFalse))}


def all_vars(node) -> set:
    return {n.var for n in _walk(node) if isinstance(n, (Atom, AssignTrue, AssignFalse))}


def is_boolean(f: Formula) -> bool:
    return not any(isinstance(n, (Box, Diamond)) for n in _walk(f))


def converse_pushdown(p: Program) -> Program:
    """Equivalent program where Converse only wraps assignments."""

    def down(q, flip):
        if isinstance(q, (AssignTrue, AssignFalse)):
            return Converse(q) if flip else q
        if isinstance(q, Test):
            return q
        if isinstance(q, Converse):
            return down(q.prog, not flip)
        if isinstance(q, Seq):
            if flip:
                return Seq(down(q.second, True), down(q.first, True))
            return Seq(down(q.first, False), down(q.second, False))
        if isinstance(q, Choice):
            return Choice(down(q.left, flip), down(q.right, flip))
        raise TypeError(f"not a program: {q!r}")

    return down(p, False)
