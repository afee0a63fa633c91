"""Qualitative uncertainty about AFs: IAF, rIAF, cIAF, cIAF-JM and d-arg-IAF.

Each structure offers a direct completion enumerator (``completions``) and
the pieces of its DL-PA encoding: the starting valuation (``valuation``)
and the completion-building program (``make_comp``).
"""

from dataclasses import dataclass, field
from itertools import combinations, product

from .dlpa.programs import dis, if_then, mk_true_some, sequence, vary
from .dlpa.syntax import (
    BOT, TOP, And, AssignFalse, AssignTrue, Atom, Choice, Converse, Diamond, Implies, Not, Seq,
    Test, Universe, all_vars, att, aw, conj, disj,
)
from .dlpa.checker import ModelChecker
from .encodings import af_of_valuation
from .errors import DomainError, InvariantError
from .oracle import ArgFramework
from .propositional import check_constraint_scope, projected_afs, projection_admits


def _subsets(items):
    items = sorted(items)
    for k in range(len(items) + 1):
        for c in combinations(items, k):
            yield frozenset(c)


def _restrict(pairs, args):
    return frozenset((x, y) for x, y in pairs if x in args and y in args)


def _canon(afs):
    return sorted(set(afs), key=ArgFramework.sort_key)


def default_universe(args):
    return Universe(sorted(args) or ["_"])


def _show_pairs(pairs):
    return ", ".join(f"({x},{y})" for x, y in sorted(pairs))


def _fs(x):
    return frozenset(x)


def _fs_pairs(x):
    return frozenset(tuple(p) for p in x)


class _Structure:
    def universe(self):
        return default_universe(self.arguments)

    def _u(self, universe):
        u = universe or self.universe()
        missing = set(self.arguments) - set(u.args)
        if missing:
            raise DomainError(f"arguments {sorted(missing)} are outside the universe")
        return u


@dataclass(frozen=True)
class IAF(_Structure):
    fixed_args: frozenset = field(default_factory=frozenset)
    fixed_atts: frozenset = field(default_factory=frozenset)
    unc_args: frozenset = field(default_factory=frozenset)
    unc_atts: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "fixed_args", _fs(self.fixed_args))
        object.__setattr__(self, "unc_args", _fs(self.unc_args))
        object.__setattr__(self, "fixed_atts", _fs_pairs(self.fixed_atts))
        object.__setattr__(self, "unc_atts", _fs_pairs(self.unc_atts))
        self._validate()

    def _validate(self):
        both = self.fixed_args & self.unc_args
        if both:
            raise InvariantError(f"arguments {sorted(both)} are both fixed and uncertain")
        both = self.fixed_atts & self.unc_atts
        if both:
            raise InvariantError(f"attacks {_show_pairs(both)} are both fixed and uncertain")
        for name, rel in (("fixed", self.fixed_atts), ("uncertain", self.unc_atts)):
            for x, y in sorted(rel):
                if x not in self.arguments or y not in self.arguments:
                    raise InvariantError(f"{name} attack ({x},{y}) leaves the argument set")

    @property
    def arguments(self):
        return self.fixed_args | self.unc_args

    def _candidates(self):
        for extra in _subsets(self.unc_args):
            args = self.fixed_args | extra
            fixed = _restrict(self.fixed_atts, args)
            for opt in _subsets(_restrict(self.unc_atts, args)):
                yield args, fixed | opt

    def completions(self):
        return _canon(ArgFramework(a, r) for a, r in self._candidates())

    def valuation(self):
        return frozenset([aw(x) for x in self.fixed_args] + [att(x, y) for x, y in self.fixed_atts])

    def make_comp(self, universe=None):
        u = self._u(universe)
        return Seq(mk_true_some(u.aw_vars(self.unc_args)), mk_true_some(u.att_vars(self.unc_atts)))


@dataclass(frozen=True)
class RIAF(IAF):
    sym_atts: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "sym_atts", _fs_pairs(self.sym_atts))
        super().__post_init__()

    def _validate(self):
        super()._validate()
        for x, y in sorted(self.sym_atts):
            if x == y:
                raise InvariantError(f"symmetric attack ({x},{y}) is reflexive")
            if (y, x) not in self.sym_atts:
                raise InvariantError(f"symmetric attack ({x},{y}) lacks its mirror ({y},{x})")
            if (x, y) in self.fixed_atts or (x, y) in self.unc_atts:
                raise InvariantError(f"symmetric attack ({x},{y}) is also fixed or uncertain")
            if x not in self.arguments or y not in self.arguments:
                raise InvariantError(f"symmetric attack ({x},{y}) leaves the argument set")

    def completions(self):
        out = []
        for args, base in self._candidates():
            sym = sorted(_restrict(self.sym_atts, args))
            for opt in _subsets(sym):
                r = base | opt
                if all((x, y) in r or (y, x) in r for x, y in sym):
                    out.append(ArgFramework(args, r))
        return _canon(out)

    def make_comp(self, universe=None):
        u = self._u(universe)
        pairs = sorted(self.sym_atts, key=lambda p: u.bit(att(*p)))
        return Seq(super().make_comp(u), dis(pairs))

    @classmethod
    def from_iaf(cls, iaf, sym_atts=()):
        return cls(iaf.fixed_args, iaf.fixed_atts, iaf.unc_args, iaf.unc_atts, sym_atts)


@dataclass(frozen=True)
class CIAF(_Structure):
    args: frozenset
    constraint: object

    def __post_init__(self):
        object.__setattr__(self, "args", _fs(self.args))
        try:
            check_constraint_scope(self.constraint, self.args)
        except DomainError as e:
            raise InvariantError(str(e)) from None

    @property
    def arguments(self):
        return self.args

    def completions(self):
        return projected_afs(self.constraint, self.args)

    def valuation(self):
        return frozenset()

    def make_comp(self, universe=None):
        u = self._u(universe)
        pairs = [(x, y) for x in self.args for y in self.args]
        return Seq(vary(u.aw_vars(self.args)), Seq(vary(u.att_vars(pairs)), Test(self.constraint)))


@dataclass(frozen=True)
class CIAFJM(_Structure):
    iaf: IAF
    constraint: object

    def __post_init__(self):
        try:
            check_constraint_scope(self.constraint, self.iaf.arguments)
        except DomainError as e:
            raise InvariantError(str(e)) from None

    @property
    def arguments(self):
        return self.iaf.arguments

    def completions(self):
        return [
            c for c in self.iaf.completions()
            if projection_admits(self.constraint, c, self.arguments)
        ]

    def valuation(self):
        return self.iaf.valuation()

    def _vary_dangling(self, u):
        # attack variables mentioned by the constraint whose ends are not both
        # aware are free: the restriction drops them from the completion
        steps = []
        for v in u.sorted_vars(x for x in all_vars(self.constraint) if x.kind == "att"):
            x, y = v.args
            steps.append(
                if_then(Not(And((Atom(aw(x)), Atom(aw(y))))), Choice(AssignTrue(v), AssignFalse(v)))
            )
        return sequence(steps)

    def make_comp(self, universe=None):
        u = self._u(universe)
        return Seq(self.iaf.make_comp(u), Test(Diamond(self._vary_dangling(u), self.constraint)))


DEP_OPS = ("implies", "or", "nand", "choice")


@dataclass(frozen=True)
class Dependency:
    op: str
    xs: frozenset
    ys: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "xs", _fs(self.xs))
        object.__setattr__(self, "ys", _fs(self.ys))
        if self.op not in DEP_OPS:
            raise InvariantError(f"unknown dependency {self.op!r}")
        if not self.xs or (self.op == "implies") != bool(self.ys):
            raise InvariantError(f"malformed dependency {self}")

    def satisfied_by(self, args):
        hit = args & self.xs
        if self.op == "implies":
            return not self.xs <= args or bool(args & self.ys)
        if self.op == "or":
            return bool(hit)
        if self.op == "nand":
            return hit < self.xs
        return len(hit) == 1

    def __str__(self):
        xs = "{" + ",".join(sorted(self.xs)) + "}"
        if self.op == "implies":
            return f"implies({xs},{{{','.join(sorted(self.ys))}}})"
        return f"{self.op}({xs})"


def translate_dependency(d):
    awx = [Atom(aw(x)) for x in sorted(d.xs)]
    if d.op == "implies":
        return Implies(conj(awx), disj(Atom(aw(y)) for y in sorted(d.ys)))
    if d.op == "or":
        return disj(awx)
    if d.op == "nand":
        return Not(conj(awx))
    # exactly one
    at_most = [Not(And((p, q))) for p, q in combinations(awx, 2)]
    return conj([disj(awx)] + at_most)


def translate_dependencies(deps):
    """t(deps): the Boolean formula over aw variables satisfied exactly by the allowed argument sets."""
    return conj(translate_dependency(d) for d in sorted(deps, key=str))


@dataclass(frozen=True)
class DArgIAF(_Structure):
    args: frozenset
    unc_args: frozenset
    attacks: frozenset
    deps: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "args", _fs(self.args))
        object.__setattr__(self, "unc_args", _fs(self.unc_args))
        object.__setattr__(self, "attacks", _fs_pairs(self.attacks))
        object.__setattr__(self, "deps", tuple(sorted(set(self.deps), key=str)))
        self.as_iaf()
        for d in self.deps:
            outside = (d.xs | d.ys) - self.unc_args
            if outside:
                raise InvariantError(f"dependency {d} mentions non-uncertain {sorted(outside)}")

    @property
    def arguments(self):
        return self.args | self.unc_args

    def as_iaf(self):
        return IAF(self.args, self.attacks, self.unc_args, ())

    def completions(self):
        return [
            c for c in self.as_iaf().completions()
            if all(d.satisfied_by(c.args) for d in self.deps)
        ]

    def valuation(self):
        return self.as_iaf().valuation()

    def make_comp(self, universe=None):
        u = self._u(universe)
        return Seq(vary(u.aw_vars(self.unc_args)), Test(translate_dependencies(self.deps)))


def dlpa_completions(structure, universe=None, with_control=False):
    """Completion AFs read off the successors of makeComp (or control;makeComp)."""
    u = universe or structure.universe()
    prog = structure.make_comp(u)
    if with_control:
        prog = Seq(structure.control_program(u), prog)
    succ = ModelChecker(u).successors(structure.valuation(), prog)
    return _canon(af_of_valuation(v) for v in succ)


# ---- theories and expressivity ---------------------------------------------------


def theory_of(args, attacks, universe):
    """Full literal description of (args, attacks) over the universe."""
    lits = []
    for x in universe.args:
        lits.append(Atom(aw(x)) if x in args else Not(Atom(aw(x))))
    for x in universe.args:
        for y in universe.args:
            a = Atom(att(x, y))
            lits.append(a if (x, y) in attacks else Not(a))
    return conj(lits)


def theory_of_af(af, universe):
    return theory_of(af.args, af.attacks, universe)


def theory_of_iaf(iaf, universe):
    return theory_of(iaf.fixed_args, iaf.fixed_atts, universe)


def completion_characterization(iaf, universe):
    """<(Th(iaf)? ; makeComp)^> T : true exactly at the completion valuations."""
    return Diamond(Converse(Seq(Test(theory_of_iaf(iaf, universe)), iaf.make_comp(universe))), TOP)


def ciaf_from_completion_set(graphs, universe):
    graphs = sorted(set(graphs), key=ArgFramework.sort_key)
    if not graphs:
        return CIAF(universe.args, BOT)
    return CIAF(universe.args, disj(theory_of_af(g, universe) for g in graphs))


def all_afs(args):
    """Every AF whose arguments are a subset of ``args``."""
    out = []
    for a in _subsets(args):
        pairs = [(x, y) for x in sorted(a) for y in sorted(a)]
        for r in _subsets(pairs):
            out.append(ArgFramework(a, r))
    return _canon(out)


def all_riafs(universe_args):
    """Every rIAF over the given arguments that satisfies the type invariants."""
    args = sorted(universe_args)
    out = []
    for roles in product(("absent", "fixed", "unc"), repeat=len(args)):
        fa = {x for x, r in zip(args, roles) if r == "fixed"}
        ua = {x for x, r in zip(args, roles) if r == "unc"}
        present = fa | ua
        singles = [(x, y) for x in args for y in args if x <= y]
        # status per unordered pair: each direction none/fixed/unc, or both symmetric
        choices = []
        for x, y in singles:
            if x == y:
                choices.append([(s,) for s in ("none", "fixed", "unc")])
            else:
                opts = [(s, t) for s in ("none", "fixed", "unc") for t in ("none", "fixed", "unc")]
                opts.append(("sym", "sym"))
                choices.append(opts)
        for pick in product(*choices):
            rf, ru, rs = set(), set(), set()
            for (x, y), st in zip(singles, pick):
                dirs = [(x, y)] if x == y else [(x, y), (y, x)]
                for d, s in zip(dirs, st):
                    {"fixed": rf, "unc": ru, "sym": rs}.get(s, set()).add(d)
            if any(not (p[0] in present and p[1] in present) for p in rf | ru | rs):
                continue
            out.append(RIAF(fa, rf, ua, ru, rs))
    return out


def find_riaf_with_completions(target, universe_args):
    target = _canon(target)
    for r in all_riafs(universe_args):
        if r.completions() == target:
            return r
    return None


def riaf_inexpressibility_check(target=None, universe_args=("a", "b")):
    """True iff no rIAF over ``universe_args`` has exactly ``target`` as completions.

    ``target`` defaults to the completions of the two-argument polarised cIAF.
    """
    if target is None:
        from .worked_examples import CIAF0

        target = CIAF0.completions()
    return find_riaf_with_completions(target, universe_args) is None
