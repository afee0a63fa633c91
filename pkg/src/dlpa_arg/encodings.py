"""DL-PA encodings of the argumentation semantics over a fixed universe.

A valuation encodes an AF through its aw/att variables and a candidate
extension through its in variables; the in' copies are scratch space for
the range comparisons of semi-stable and stage semantics.
"""

from dataclasses import dataclass
from functools import cached_property

from .dlpa.checker import ModelChecker
from .dlpa.programs import copy_in, mk_false_one, mk_false_some, mk_true_one, mk_true_some, vary
from .dlpa.syntax import (
    And, Atom, Box, Iff, Implies, Not, Seq, Test, Universe, att, aw, conj, disj, in_, in_prime,
)
from .errors import DomainError, ResourceError
from .oracle import SEMANTICS, ArgFramework, canonical_sets, extensions

# largest universe check_encoding will accept, per semantics
ENCODING_BOUNDS = {"id": 5, "ea": 5, "se": 5, "stg": 5}
DEFAULT_ENCODING_BOUND = 6


def _A(v):
    return Atom(v)


class EncodingContext:
    """Builds (and caches) the semantics formulas for one universe.

    Formulas are built once so that repeated references share a node, which
    lets the model checker's memo tables do their job.
    """

    def __init__(self, universe: Universe):
        self.universe = universe
        self.args = universe.args
        self._ext = {}

    # building blocks

    def _in(self, x):
        return _A(in_(x))

    def _aw(self, x):
        return _A(aw(x))

    def _att(self, x, y):
        return _A(att(x, y))

    def _defended(self, x):
        return conj(
            Implies(
                And((self._aw(y), self._att(y, x))),
                disj(And((self._in(z), self._att(z, y))) for z in self.args),
            )
            for y in self.args
        )

    def _range(self, x, primed):
        inv = (lambda y: _A(in_prime(y))) if primed else self._in
        return disj([inv(x), And((self._aw(x), disj(And((inv(y), self._att(y, x))) for y in self.args)))])

    @cached_property
    def in_vars(self):
        return self.universe.in_vars()

    @cached_property
    def _more_in(self):
        # strictly add at least one in variable
        return Seq(mk_true_one(self.in_vars), mk_true_some(self.in_vars))

    @cached_property
    def _less_in(self):
        return Seq(mk_false_one(self.in_vars), mk_false_some(self.in_vars))

    # the formulas

    @cached_property
    def well(self):
        return conj(Implies(self._in(x), self._aw(x)) for x in self.args)

    @cached_property
    def conflict_free(self):
        return conj(
            [self.well]
            + [
                Not(And((self._in(x), self._in(y), self._att(x, y))))
                for x in self.args
                for y in self.args
            ]
        )

    @cached_property
    def admissible(self):
        return conj(
            [self.conflict_free]
            + [Implies(self._in(x), self._defended(x)) for x in self.args]
        )

    @cached_property
    def stable(self):
        return conj(
            [self.well]
            + [
                Implies(
                    self._aw(x),
                    Iff(self._in(x), Not(disj(And((self._in(y), self._att(y, x))) for y in self.args))),
                )
                for x in self.args
            ]
        )

    @cached_property
    def complete(self):
        # an unaware argument is never in, whatever its attackers
        return conj(
            [self.conflict_free]
            + [Implies(self._aw(x), Iff(self._in(x), self._defended(x))) for x in self.args]
        )

    @cached_property
    def grounded(self):
        return And((self.complete, Box(self._less_in, Not(self.complete))))

    @cached_property
    def preferred(self):
        return And((self.admissible, Box(self._more_in, Not(self.admissible))))

    @cached_property
    def naive(self):
        return And((self.conflict_free, Box(mk_true_one(self.in_vars), Not(self.conflict_free))))

    @cached_property
    def included_in_cp(self):
        return conj(Implies(self._range(x, False), self._range(x, True)) for x in self.args)

    @cached_property
    def includes_cp(self):
        return conj(Implies(self._range(x, True), self._range(x, False)) for x in self.args)

    @cached_property
    def _range_max(self):
        return Implies(self.includes_cp, self.included_in_cp)

    @cached_property
    def semi_stable(self):
        return And((self.complete, Box(Seq(copy_in(self.universe), self.make_ext("co")), self._range_max)))

    @cached_property
    def stage(self):
        prog = Seq(copy_in(self.universe), Seq(vary(self.in_vars), Test(self.conflict_free)))
        return And((self.conflict_free, Box(prog, self._range_max)))

    def _contained_in_all(self, sem):
        ext = self.make_ext(sem)
        return conj(
            [self.admissible]
            + [Implies(self._in(x), Box(ext, self._in(x))) for x in self.args]
        )

    @cached_property
    def ideal_set(self):
        return self._contained_in_all("pr")

    @cached_property
    def eager_set(self):
        return self._contained_in_all("se")

    @cached_property
    def ideal(self):
        return And((self.ideal_set, Box(self._more_in, Not(self.ideal_set))))

    @cached_property
    def eager(self):
        return And((self.eager_set, Box(self._more_in, Not(self.eager_set))))

    def formula(self, sem):
        names = {
            "st": "stable", "co": "complete", "gr": "grounded", "pr": "preferred",
            "se": "semi_stable", "id": "ideal", "ea": "eager", "na": "naive", "stg": "stage",
        }
        if sem not in names:
            raise DomainError(f"unknown semantics {sem!r}")
        return getattr(self, names[sem])

    def make_ext(self, sem):
        """vary(IN); phi_sem? : nondeterministically build every sem-extension."""
        p = self._ext.get(sem)
        if p is None:
            p = Seq(vary(self.in_vars), Test(self.formula(sem)))
            self._ext[sem] = p
        return p


_CONTEXTS = {}


def context_for(universe):
    ctx = _CONTEXTS.get(universe.args)
    if ctx is None:
        ctx = _CONTEXTS[universe.args] = EncodingContext(universe)
    return ctx


# ---- valuation <-> framework ----------------------------------------------------


def valuation_of_af(af):
    return frozenset([aw(x) for x in af.args] + [att(x, y) for x, y in af.attacks])


def af_of_valuation(v):
    args = {var.args[0] for var in v if var.kind == "aw"}
    return ArgFramework(args, {var.args for var in v if var.kind == "att"})


def ext_of_valuation(v):
    return frozenset(var.args[0] for var in v if var.kind == "in")


def universe_for(af, universe=None):
    if universe is None:
        return Universe(sorted(af.args) or ["_"])
    missing = set(af.args) - set(universe.args)
    if missing:
        raise DomainError(f"arguments {sorted(missing)} are outside the universe")
    return universe


def dlpa_extensions(af, sem, universe=None, checker=None):
    """Extensions read off the successors of makeExt^sem from the AF's valuation."""
    universe = universe_for(af, universe)
    ctx = context_for(universe)
    checker = checker or ModelChecker(universe)
    succ = checker.succ(universe.mask(valuation_of_af(af)), ctx.make_ext(sem))
    return canonical_sets(ext_of_valuation(universe.valuation(m)) for m in succ)


@dataclass
class EncodingReport:
    sem: str
    af: ArgFramework
    oracle_set: list
    encoding_set: list

    @property
    def agrees(self):
        return self.oracle_set == self.encoding_set


def check_encoding(af, sem, universe=None, bound=None):
    if sem not in SEMANTICS:
        raise DomainError(f"unknown semantics {sem!r}")
    universe = universe_for(af, universe)
    limit = bound if bound is not None else ENCODING_BOUNDS.get(sem, DEFAULT_ENCODING_BOUND)
    if len(universe) > limit:
        raise ResourceError(f"universe of {len(universe)} exceeds the {sem} encoding bound {limit}")
    return EncodingReport(sem, af, extensions(af, sem), dlpa_extensions(af, sem, universe))
