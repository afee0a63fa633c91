"""Hypothesis strategies for DL-PA ASTs over a tiny variable pool."""

from hypothesis import strategies as st

from dlpa_arg.dlpa.syntax import (
    BOT, TOP, And, AssignFalse, AssignTrue, Atom, Box, Choice, Converse, Diamond, Iff, Implies,
    Not, Or, Seq, Universe, att, aux, aw, in_, in_prime,
)
from dlpa_arg.dlpa.syntax import Test as Guard

U2 = Universe(["a", "b"])
POOL = [aw("a"), aw("b"), in_("a"), att("a", "b")]
WIDE_POOL = POOL + [in_prime("b"), att("b", "b"), aux(0)]


def formulas(depth, pool=POOL, modal=True):
    leaf = st.one_of(st.sampled_from(pool).map(Atom), st.just(TOP), st.just(BOT))
    if depth <= 0:
        return leaf
    sub = st.deferred(lambda: formulas(depth - 1, pool, modal))
    options = [
        leaf,
        sub.map(Not),
        st.lists(sub, min_size=2, max_size=3).map(lambda xs: And(tuple(xs))),
        st.lists(sub, min_size=2, max_size=3).map(lambda xs: Or(tuple(xs))),
        st.builds(Implies, sub, sub),
        st.builds(Iff, sub, sub),
    ]
    if modal:
        prog = st.deferred(lambda: programs(depth - 1, pool))
        options += [st.builds(Box, prog, sub), st.builds(Diamond, prog, sub)]
    return st.one_of(*options)


def programs(depth, pool=POOL):
    var = st.sampled_from(pool)
    leaf = st.one_of(var.map(AssignTrue), var.map(AssignFalse), st.just(Guard(TOP)))
    if depth <= 0:
        return leaf
    sub = st.deferred(lambda: programs(depth - 1, pool))
    return st.one_of(
        leaf,
        st.builds(Seq, sub, sub),
        st.builds(Choice, sub, sub),
        sub.map(Converse),
        formulas(depth - 1, pool).map(Guard),
    )


def valuations(pool=POOL):
    return st.frozensets(st.sampled_from(pool))
