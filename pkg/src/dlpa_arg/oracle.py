"""Brute-force argumentation semantics, straight from the definitions.

Every semantics is computed by filtering the powerset of the arguments, so
this module doubles as the ground truth the DL-PA encodings are checked
against. No fixpoint shortcuts.
"""

from dataclasses import dataclass, field
from itertools import combinations

from .errors import DomainError, ResourceError

SEMANTICS = ("st", "co", "gr", "pr", "se", "id", "ea", "na", "stg")

DEFAULT_BOUND = 20


@dataclass(frozen=True)
class ArgFramework:
    """Directed graph (args, attacks). Attacks leaving ``args`` are dropped."""

    args: frozenset = field(default_factory=frozenset)
    attacks: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        args = frozenset(self.args)
        attacks = frozenset((x, y) for x, y in self.attacks if x in args and y in args)
        object.__setattr__(self, "args", args)
        object.__setattr__(self, "attacks", attacks)

    def sort_key(self):
        return (len(self.args), sorted(self.args), sorted(self.attacks))

    def __str__(self):
        a = ",".join(sorted(self.args))
        r = ",".join(f"({x},{y})" for x, y in sorted(self.attacks))
        return f"({{{a}}}, {{{r}}})"


def canonical_sets(sets):
    """Sort extensions by size, then by sorted member names."""
    return sorted((frozenset(s) for s in sets), key=lambda s: (len(s), sorted(s)))


def _check(af, E):
    E = frozenset(E)
    if not E <= af.args:
        raise DomainError(f"{sorted(E - af.args)} not arguments of the framework")
    return E


def attacked_by(af, E):
    E = _check(af, E)
    return frozenset(x for (y, x) in af.attacks if y in E)


def range_of(af, E):
    E = _check(af, E)
    return E | attacked_by(af, E)


def is_conflict_free(af, E):
    E = _check(af, E)
    return not (E & attacked_by(af, E))


def defends(af, E, a):
    E = _check(af, E)
    if a not in af.args:
        raise DomainError(f"{a!r} is not an argument of the framework")
    plus = attacked_by(af, E)
    return all(y in plus for (y, x) in af.attacks if x == a)


def is_admissible(af, E):
    E = _check(af, E)
    return is_conflict_free(af, E) and all(defends(af, E, a) for a in E)


def _subsets(args):
    args = sorted(args)
    for k in range(len(args) + 1):
        for c in combinations(args, k):
            yield frozenset(c)


def _maximal(pool, key=lambda s: s):
    ks = [(s, key(s)) for s in pool]
    return [s for s, k in ks if not any(k < k2 for _, k2 in ks)]


def _minimal(pool):
    return [s for s in pool if not any(t < s for t in pool)]


def _largest_contained(af, bound_sets):
    # the unique maximal admissible set inside every bound set
    adm = [s for s in _subsets(af.args) if is_admissible(af, s)]
    inside = [s for s in adm if all(s <= b for b in bound_sets)]
    return _maximal(inside)


def extensions(af, sem, bound=DEFAULT_BOUND):
    """All ``sem``-extensions of ``af`` in canonical order."""
    if sem not in SEMANTICS:
        raise DomainError(f"unknown semantics {sem!r}")
    if len(af.args) > bound:
        raise ResourceError(f"{len(af.args)} arguments exceed the oracle bound {bound}")
    allsets = list(_subsets(af.args))
    cf = [s for s in allsets if is_conflict_free(af, s)]

    def complete():
        return [
            s for s in cf
            if is_admissible(af, s) and all(not defends(af, s, a) or a in s for a in af.args)
        ]

    if sem == "st":
        out = [s for s in cf if range_of(af, s) == af.args]
    elif sem == "co":
        out = complete()
    elif sem == "gr":
        out = _minimal(complete())
    elif sem == "pr":
        out = _maximal(complete())
    elif sem == "se":
        out = _maximal(complete(), key=lambda s: range_of(af, s))
    elif sem == "na":
        out = _maximal(cf)
    elif sem == "stg":
        out = _maximal(cf, key=lambda s: range_of(af, s))
    elif sem == "id":
        out = _largest_contained(af, extensions(af, "pr", bound))
    else:  # ea
        out = _largest_contained(af, extensions(af, "se", bound))
    return canonical_sets(out)


def credulous(af, sem, a, bound=DEFAULT_BOUND):
    if a not in af.args:
        raise DomainError(f"{a!r} is not an argument of the framework")
    return any(a in e for e in extensions(af, sem, bound))


def sceptical(af, sem, a, bound=DEFAULT_BOUND):
    if a not in af.args:
        raise DomainError(f"{a!r} is not an argument of the framework")
    return all(a in e for e in extensions(af, sem, bound))
