"""Plain Boolean reasoning over modality-free formulas.

Kept separate from the DL-PA evaluator on purpose: the direct completion
enumerators use this module, the DL-PA route uses the model checker, and
the test suite compares the two.
"""

from itertools import product

from .dlpa.syntax import (
    BOT, TOP, And, Atom, Bot, Box, Diamond, Iff, Implies, Not, Or, Top, all_vars, att, aw,
)
from .errors import DomainError
from .oracle import ArgFramework


def holds(f, true_vars) -> bool:
    if isinstance(f, Atom):
        return f.var in true_vars
    if isinstance(f, Top):
        return True
    if isinstance(f, Bot):
        return False
    if isinstance(f, Not):
        return not holds(f.sub, true_vars)
    if isinstance(f, And):
        return all(holds(x, true_vars) for x in f.items)
    if isinstance(f, Or):
        return any(holds(x, true_vars) for x in f.items)
    if isinstance(f, Implies):
        return (not holds(f.left, true_vars)) or holds(f.right, true_vars)
    if isinstance(f, Iff):
        return holds(f.left, true_vars) == holds(f.right, true_vars)
    if isinstance(f, (Box, Diamond)):
        raise DomainError("modal formula where a Boolean one is required")
    raise TypeError(f"not a formula: {f!r}")


def assign(f, values: dict):
    """Substitute known truth values and fold constants."""
    if isinstance(f, Atom):
        if f.var in values:
            return TOP if values[f.var] else BOT
        return f
    if isinstance(f, (Top, Bot)):
        return f
    if isinstance(f, Not):
        s = assign(f.sub, values)
        if isinstance(s, Top):
            return BOT
        if isinstance(s, Bot):
            return TOP
        return Not(s)
    if isinstance(f, (And, Or)):
        unit, zero = (TOP, BOT) if isinstance(f, And) else (BOT, TOP)
        kept = []
        for x in f.items:
            s = assign(x, values)
            if s == zero:
                return zero
            if s != unit:
                kept.append(s)
        if not kept:
            return unit
        if len(kept) == 1:
            return kept[0]
        return type(f)(tuple(kept))
    if isinstance(f, Implies):
        l, r = assign(f.left, values), assign(f.right, values)
        if isinstance(l, Bot) or isinstance(r, Top):
            return TOP
        if isinstance(l, Top):
            return r
        if isinstance(r, Bot):
            return Not(l) if not isinstance(l, Not) else l.sub
        return Implies(l, r)
    if isinstance(f, Iff):
        l, r = assign(f.left, values), assign(f.right, values)
        for a, b in ((l, r), (r, l)):
            if isinstance(a, Top):
                return b
            if isinstance(a, Bot):
                return assign(Not(b), {})
        return Iff(l, r)
    if isinstance(f, (Box, Diamond)):
        raise DomainError("modal formula where a Boolean one is required")
    raise TypeError(f"not a formula: {f!r}")


def _first_var(f):
    stack = [f]
    while stack:
        n = stack.pop()
        if isinstance(n, Atom):
            return n.var
        if isinstance(n, Not):
            stack.append(n.sub)
        elif isinstance(n, (And, Or)):
            stack.extend(reversed(n.items))
        elif isinstance(n, (Implies, Iff)):
            stack.extend((n.right, n.left))
    return None


def satisfiable(f) -> bool:
    f = assign(f, {})
    if isinstance(f, Top):
        return True
    if isinstance(f, Bot):
        return False
    v = _first_var(f)
    return satisfiable(assign(f, {v: True})) or satisfiable(assign(f, {v: False}))


def valid(f) -> bool:
    return not satisfiable(Not(f))


def models(f, vars):
    """All subsets of ``vars`` (as frozensets) satisfying ``f``; other vars must not occur."""
    vars = list(vars)
    extra = all_vars(f) - set(vars)
    if extra:
        raise DomainError(f"formula mentions {sorted(map(str, extra))} outside the given variables")
    out = []
    for bits in product((False, True), repeat=len(vars)):
        tv = frozenset(v for v, b in zip(vars, bits) if b)
        if holds(f, tv):
            out.append(tv)
    return out


def check_constraint_scope(f, args):
    """Constraints are Boolean formulas over aw/att variables of ``args`` only."""
    args = set(args)
    for v in all_vars(f):
        if v.kind not in ("aw", "att") or not set(v.args) <= args:
            raise DomainError(f"constraint variable {v} outside aw/att over {sorted(args)}")
    if any(isinstance(n, (Box, Diamond)) for n in _nodes(f)):
        raise DomainError("constraint must be Boolean")


def _nodes(f):
    stack = [f]
    while stack:
        n = stack.pop()
        yield n
        if isinstance(n, Not):
            stack.append(n.sub)
        elif isinstance(n, (And, Or)):
            stack.extend(n.items)
        elif isinstance(n, (Implies, Iff)):
            stack.extend((n.left, n.right))
        elif isinstance(n, (Box, Diamond)):
            stack.append(n.body)


def projected_afs(f, args):
    """The AFs (A_v, R_v) over all aw/att models v of ``f`` over ``args``.

    Splits on aw variables first, then on the attack variables whose ends
    are both aware; the remaining ("dangling") attack variables only need a
    satisfiability check since the restriction drops them anyway.
    """
    args = sorted(args)
    check_constraint_scope(f, args)
    out = set()

    def go_att(g, present, pairs, i, chosen):
        if isinstance(g, Bot):
            return
        if i == len(pairs):
            if satisfiable(g):
                out.add(ArgFramework(present, chosen))
            return
        x, y = pairs[i]
        v = att(x, y)
        go_att(assign(g, {v: True}), present, pairs, i + 1, chosen | {(x, y)})
        go_att(assign(g, {v: False}), present, pairs, i + 1, chosen)

    def go_aw(g, i, present):
        if isinstance(g, Bot):
            return
        if i == len(args):
            pairs = [(x, y) for x in args for y in args if x in present and y in present]
            go_att(g, frozenset(present), pairs, 0, frozenset())
            return
        v = aw(args[i])
        go_aw(assign(g, {v: True}), i + 1, present | {args[i]})
        go_aw(assign(g, {v: False}), i + 1, present)

    go_aw(assign(f, {}), 0, frozenset())
    return sorted(out, key=ArgFramework.sort_key)


def projection_admits(f, af, args):
    """Is ``af`` among the projected AFs of ``f`` over ``args``?"""
    values = {aw(x): x in af.args for x in args}
    for x in af.args:
        for y in af.args:
            values[att(x, y)] = (x, y) in af.attacks
    return satisfiable(assign(f, values))
