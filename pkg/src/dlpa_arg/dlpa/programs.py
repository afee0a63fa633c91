"""Derived program and formula builders.

Builders iterate their input in the order given; pass a set and it is
sorted by the default variable key first. Callers that care about the
universe order hand in lists produced by ``Universe``.
"""

from .syntax import (
    TOP, AssignFalse, AssignTrue, Atom, Choice, Not, Seq, Test, Var, att, in_, in_prime,
)


def _ordered(items):
    if isinstance(items, (set, frozenset)):
        return sorted(items, key=lambda v: v.sort_key() if isinstance(v, Var) else v)
    return list(items)


def skip():
    return Test(TOP)


def if_then_else(cond, then, other):
    return Choice(Seq(Test(cond), then), Seq(Test(Not(cond)), other))


def if_then(cond, then):
    return if_then_else(cond, then, skip())


def sequence(progs):
    progs = list(progs)
    if not progs:
        return skip()
    out = progs[-1]
    for p in reversed(progs[:-1]):
        out = Seq(p, out)
    return out


def choice(progs):
    progs = list(progs)
    if not progs:
        return skip()
    out = progs[-1]
    for p in reversed(progs[:-1]):
        out = Choice(p, out)
    return out


def seq_over_set(vars, per_var):
    return sequence(per_var(v) for v in _ordered(vars))


def mk_true_one(P):
    return choice(Seq(Test(Not(Atom(p))), AssignTrue(p)) for p in _ordered(P))


def mk_false_one(P):
    return choice(Seq(Test(Atom(p)), AssignFalse(p)) for p in _ordered(P))


def mk_true_some(P):
    return seq_over_set(P, lambda p: Choice(AssignTrue(p), skip()))


def mk_false_some(P):
    return seq_over_set(P, lambda p: Choice(AssignFalse(p), skip()))


def vary(P):
    return seq_over_set(P, lambda p: Choice(AssignTrue(p), AssignFalse(p)))


def dis(pairs):
    """Make true at least one of att(x,y), att(y,x) for each listed ordered pair."""
    return sequence(
        Choice(AssignTrue(att(x, y)), AssignTrue(att(y, x))) for x, y in _ordered(pairs)
    )


def copy_in(universe):
    """Copy every in(x) into in'(x)."""
    steps = []
    for x in universe.args:
        steps.append(
            Choice(
                Seq(Test(Atom(in_(x))), AssignTrue(in_prime(x))),
                Seq(Test(Not(Atom(in_(x)))), AssignFalse(in_prime(x))),
            )
        )
    return sequence(steps)
