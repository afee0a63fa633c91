from itertools import chain, combinations

import pytest
from hypothesis import given

from dlpa_arg.dlpa import (
    BOT, TOP, And, AssignFalse, AssignTrue, Atom, Box, Choice, Converse, Diamond, Implies, Not,
    Seq, Universe, assigned_vars, att, aux, aw, converse_pushdown, evaluate, in_,
    in_prime, parse_formula, parse_program, successors,
)
from dlpa_arg.dlpa import Test as Guard
from dlpa_arg.dlpa.checker import ModelChecker
from dlpa_arg.dlpa.programs import (
    choice, copy_in, dis, if_then, if_then_else, mk_false_one, mk_false_some, mk_true_one,
    mk_true_some, seq_over_set, sequence, skip, vary,
)
from dlpa_arg.errors import DomainError
from strategies import POOL, U2, formulas, programs, valuations

p, q, r = aux(0), aux(1), aux(2)


def powerset(xs):
    xs = list(xs)
    return [frozenset(c) for c in chain.from_iterable(combinations(xs, k) for k in range(len(xs) + 1))]


def succ_set(v, prog, u=U2):
    return set(ModelChecker(u).successors(v, prog))


# ---- universe and variables ---------------------------------------------------------


def test_universe_rejects_empty_and_duplicates():
    with pytest.raises(DomainError):
        Universe([])
    with pytest.raises(DomainError):
        Universe(["a", "a"])


def test_var_order_follows_kind_then_universe_order():
    u = Universe(["b", "a"])
    vs = [att("a", "b"), in_("a"), aw("a"), in_prime("b"), aw("b"), aux(0)]
    bits = sorted(vs, key=u.bit)
    assert bits == [aw("b"), aw("a"), in_("a"), in_prime("b"), att("a", "b"), aux(0)]


def test_mask_round_trip():
    u = Universe(["a", "b", "c"])
    v = frozenset([aw("a"), att("c", "a"), in_prime("b"), aux(3)])
    assert u.valuation(u.mask(v)) == v


def test_var_outside_universe_is_rejected():
    with pytest.raises(DomainError):
        U2.bit(aw("z"))


# ---- assignedVars -------------------------------------------------------------------


def test_assigned_vars_examples():
    prog = Seq(AssignTrue(p), Seq(Guard(Atom(q)), Choice(AssignFalse(r), skip())))
    assert assigned_vars(prog) == {p, r}
    assert assigned_vars(Guard(TOP)) == set()
    assert assigned_vars(Converse(AssignTrue(p))) == {p}


def test_assigned_vars_looks_under_tests():
    prog = Guard(Box(AssignTrue(p), TOP))
    assert assigned_vars(prog) == {p}


# ---- successors and eval examples -------------------------------------------------------


def test_successor_examples():
    P = [p, q]
    assert set(successors(frozenset(), mk_true_some(P))) == set(powerset(P))
    assert successors(frozenset([p]), Converse(AssignFalse(p))) == []
    assert set(successors(frozenset(), Converse(AssignFalse(p)))) == {frozenset(), frozenset([p])}
    assert set(successors(frozenset(), mk_true_one(P))) == {frozenset([p]), frozenset([q])}


def test_converse_of_assign_true():
    assert set(successors(frozenset([p]), Converse(AssignTrue(p)))) == {frozenset(), frozenset([p])}
    assert successors(frozenset(), Converse(AssignTrue(p))) == []


def test_eval_examples():
    assert evaluate(frozenset(), Box(AssignFalse(p), Not(Atom(p))))
    dia = Diamond(Converse(AssignFalse(p)), Atom(p))
    assert not evaluate(frozenset([p]), dia)
    assert evaluate(frozenset(), dia)
    for v in (frozenset(), frozenset([p])):
        assert not evaluate(v, Box(Choice(AssignTrue(p), AssignFalse(p)), Not(Atom(p))))
    assert not evaluate(frozenset(), Box(Guard(TOP), BOT))


def test_box_of_assign_false_converse_is_vacuous_where_p_holds():
    # [(-p)^]p has no successors to check at valuations containing p
    f = Box(Converse(AssignFalse(p)), Atom(p))
    assert evaluate(frozenset([p]), f)
    assert not evaluate(frozenset(), f)


def test_successors_are_deterministically_ordered():
    a = successors(frozenset(), vary([aw("a"), aw("b"), att("a", "b")]), U2)
    b = successors(frozenset(), vary([att("a", "b"), aw("b"), aw("a")]), U2)
    assert a == b
    masks = [U2.mask(v) for v in a]
    assert masks == sorted(masks)


# ---- converse pushdown ----------------------------------------------------------------


def test_converse_pushdown_examples():
    phi = Atom(q)
    assert converse_pushdown(Converse(Seq(AssignTrue(p), Guard(phi)))) == Seq(
        Guard(phi), Converse(AssignTrue(p))
    )
    assert converse_pushdown(Converse(Converse(AssignTrue(p)))) == AssignTrue(p)
    assert converse_pushdown(Converse(Guard(phi))) == Guard(phi)


def _only_atoms_conversed(prog):
    if isinstance(prog, Converse):
        return isinstance(prog.prog, (AssignTrue, AssignFalse))
    if isinstance(prog, (Seq,)):
        return _only_atoms_conversed(prog.first) and _only_atoms_conversed(prog.second)
    if isinstance(prog, Choice):
        return _only_atoms_conversed(prog.left) and _only_atoms_conversed(prog.right)
    return True


@given(programs(3), valuations())
def test_converse_pushdown_preserves_successors(prog, v):
    pushed = converse_pushdown(Converse(prog))
    assert _only_atoms_conversed(pushed)
    assert succ_set(v, pushed) == succ_set(v, Converse(prog))
    assert succ_set(v, converse_pushdown(prog)) == succ_set(v, prog)


# ---- program builders --------------------------------------------------------------


ALL_V = powerset(POOL)


@pytest.mark.parametrize("P", powerset(POOL), ids=lambda P: ",".join(sorted(map(str, P))) or "empty")
def test_program_builders_exhaustive(P):
    mc = ModelChecker(U2)
    for v in ALL_V:
        got = {k: set(mc.successors(v, b(sorted(P, key=lambda x: x.sort_key()))))
               for k, b in (("t1", mk_true_one), ("f1", mk_false_one), ("ts", mk_true_some),
                            ("fs", mk_false_some), ("vary", vary))}
        if P:
            assert got["t1"] == {v | {x} for x in P - v}
            assert got["f1"] == {v - {x} for x in P & v}
        else:
            # empty choice is skip by convention
            assert got["t1"] == got["f1"] == {v}
        assert got["ts"] == {v | s for s in powerset(P)}
        assert got["fs"] == {v - s for s in powerset(P)}
        assert got["vary"] == {w for w in ALL_V if (v - w) <= P and (w - v) <= P}


@pytest.mark.parametrize("P", [P for P in powerset(POOL) if P])
def test_true_one_then_true_some(P):
    Ps = sorted(P, key=lambda x: x.sort_key())
    for v in ALL_V:
        got = succ_set(v, Seq(mk_true_one(Ps), mk_true_some(Ps)))
        assert got == {v | s for s in powerset(P - v) if s}


def test_vary_single_variable():
    for v in ALL_V:
        assert succ_set(v, vary([aw("a")])) == {v | {aw("a")}, v - {aw("a")}}


def test_dis_example():
    u = Universe(["c", "e"])
    got = set(successors(frozenset(), dis([("c", "e"), ("e", "c")]), u))
    assert got == {frozenset([att("c", "e")]), frozenset([att("e", "c")]),
                   frozenset([att("c", "e"), att("e", "c")])}


def test_copy_in_example():
    v = frozenset([in_("a")])
    assert successors(v, copy_in(U2), U2) == [frozenset([in_("a"), in_prime("a")])]


def test_copy_in_clears_stale_primes():
    v = frozenset([in_prime("b"), in_("a")])
    assert successors(v, copy_in(U2), U2) == [frozenset([in_("a"), in_prime("a")])]


def test_empty_conventions():
    v = frozenset([p])
    for prog in (skip(), sequence([]), choice([]), seq_over_set([], AssignTrue),
                 mk_true_some([]), vary([])):
        assert successors(v, prog) == [v]


def test_if_then_else():
    prog = if_then_else(Atom(p), AssignTrue(q), AssignTrue(r))
    assert successors(frozenset([p]), prog) == [frozenset([p, q])]
    assert successors(frozenset(), prog) == [frozenset([r])]
    assert successors(frozenset(), if_then(Atom(p), AssignTrue(q))) == [frozenset()]


def test_seq_over_set_follows_var_order():
    prog = seq_over_set([q, p], AssignTrue)
    assert prog == Seq(AssignTrue(q), AssignTrue(p))


# ---- algebraic laws on random ASTs -----------------------------------------------------


@given(programs(3), programs(3), formulas(2), valuations())
def test_seq_and_choice_laws(p1, p2, phi, v):
    mc = ModelChecker(U2)
    assert mc.evaluate(v, Box(Seq(p1, p2), phi)) == mc.evaluate(v, Box(p1, Box(p2, phi)))
    assert mc.evaluate(v, Box(Choice(p1, p2), phi)) == mc.evaluate(
        v, And((Box(p1, phi), Box(p2, phi)))
    )
    assert mc.evaluate(v, Diamond(p1, phi)) == mc.evaluate(v, Not(Box(p1, Not(phi))))


@given(programs(3), formulas(3))
def test_reversibility_is_valid(prog, phi):
    mc = ModelChecker(U2)
    f = Implies(phi, Box(prog, Diamond(Converse(prog), phi)))
    assert all(mc.evaluate(v, f) for v in ALL_V)


@given(programs(3), valuations())
def test_frame_property(prog, v):
    free = assigned_vars(prog)
    for w in succ_set(v, prog):
        assert (v ^ w) <= free


@given(programs(3), valuations())
def test_converse_is_relational_inverse(prog, v):
    for w in succ_set(v, prog):
        assert v in succ_set(w, Converse(prog))


def test_one_shot_helpers_infer_universe():
    f = parse_formula("<+aw(b)> (aw(a) & aw(b))")
    assert evaluate({aw("a")}, f)
    assert successors({aw("a")}, parse_program("+att(a,b) U -aw(a)")) == [
        frozenset(), frozenset([aw("a"), att("a", "b")])
    ]
