"""Relational evaluator: model checking and successor enumeration.

Valuations are int bitmasks internally (see ``Universe``). Each AST node is
compiled once into a closure with its own per-valuation memo table, so
shared subterms (the makeExt programs nested inside encodings) are only
evaluated once per valuation. A checker instance is cheap; use a fresh one
per framework to keep the memo tables bounded.
"""

from .syntax import (
    And, AssignFalse, AssignTrue, Atom, Bot, Box, Choice, Converse, Diamond, Formula, Iff,
    Implies, Not, Or, Program, Seq, Test, Top, Universe, converse_pushdown,
)


class ModelChecker:
    def __init__(self, universe: Universe):
        self.universe = universe
        self._compiled = {}
        self._keep = []  # strong refs so id() keys stay valid

    # public API on frozenset[Var]

    def evaluate(self, valuation, phi: Formula) -> bool:
        return self.holds(self.universe.mask(valuation), phi)

    def successors(self, valuation, pi: Program):
        """Sorted list of successor valuations (frozensets of Var)."""
        return [self.universe.valuation(m) for m in self.succ(self.universe.mask(valuation), pi)]

    # mask API

    def holds(self, mask: int, phi: Formula) -> bool:
        return self._fn(phi)(mask)

    def succ(self, mask: int, pi: Program):
        return self._fn(pi)(mask)

    def _fn(self, node):
        f = self._compiled.get(id(node))
        if f is None:
            f = self._compile(node)
            self._compiled[id(node)] = f
            self._keep.append(node)
        return f

    def _compile(self, node):
        u = self.universe
        if isinstance(node, Atom):
            b = 1 << u.bit(node.var)
            return lambda m: bool(m & b)
        if isinstance(node, Top):
            return lambda m: True
        if isinstance(node, Bot):
            return lambda m: False
        if isinstance(node, Not):
            g = self._fn(node.sub)
            return lambda m: not g(m)
        if isinstance(node, And):
            gs = [self._fn(x) for x in node.items]
            return lambda m: all(g(m) for g in gs)
        if isinstance(node, Or):
            gs = [self._fn(x) for x in node.items]
            return lambda m: any(g(m) for g in gs)
        if isinstance(node, Implies):
            l, r = self._fn(node.left), self._fn(node.right)
            return lambda m: (not l(m)) or r(m)
        if isinstance(node, Iff):
            l, r = self._fn(node.left), self._fn(node.right)
            return lambda m: l(m) == r(m)
        if isinstance(node, Box):
            p, g = self._fn(node.prog), self._fn(node.body)
            return _memo(lambda m: all(g(w) for w in p(m)))
        if isinstance(node, Diamond):
            p, g = self._fn(node.prog), self._fn(node.body)
            return _memo(lambda m: any(g(w) for w in p(m)))

        # programs return sorted tuples of masks
        if isinstance(node, AssignTrue):
            b = 1 << u.bit(node.var)
            return lambda m: (m | b,)
        if isinstance(node, AssignFalse):
            b = 1 << u.bit(node.var)
            return lambda m: (m & ~b,)
        if isinstance(node, Test):
            g = self._fn(node.cond)
            return _memo(lambda m: (m,) if g(m) else ())
        if isinstance(node, Seq):
            p, q = self._fn(node.first), self._fn(node.second)

            def seq(m):
                mids = p(m)
                if len(mids) == 1:
                    return q(mids[0])
                out = set()
                for w in mids:
                    out.update(q(w))
                return tuple(sorted(out))

            return _memo(seq)
        if isinstance(node, Choice):
            p, q = self._fn(node.left), self._fn(node.right)

            def cho(m):
                a, b = p(m), q(m)
                if not a:
                    return b
                if not b or a == b:
                    return a
                return tuple(sorted(set(a) | set(b)))

            return _memo(cho)
        if isinstance(node, Converse):
            inner = node.prog
            if isinstance(inner, AssignTrue):
                b = 1 << u.bit(inner.var)
                # predecessors of v under +p: v itself and v without p, only when p in v
                return lambda m: tuple(sorted({m, m & ~b})) if m & b else ()
            if isinstance(inner, AssignFalse):
                b = 1 << u.bit(inner.var)
                return lambda m: () if m & b else (m, m | b)
            return self._fn(converse_pushdown(node))
        raise TypeError(f"not a DL-PA node: {node!r}")


def _memo(fn):
    table = {}

    def wrapped(m):
        r = table.get(m)
        if r is None:
            r = fn(m)
            table[m] = r
        return r

    return wrapped


def evaluate(valuation, phi, universe=None) -> bool:
    """One-shot model check; the universe defaults to the mentioned arguments."""
    valuation = frozenset(valuation)
    universe = universe or Universe.infer(valuation, phi)
    return ModelChecker(universe).evaluate(valuation, phi)


def successors(valuation, pi, universe=None):
    valuation = frozenset(valuation)
    universe = universe or Universe.infer(valuation, pi)
    return ModelChecker(universe).successors(valuation, pi)
