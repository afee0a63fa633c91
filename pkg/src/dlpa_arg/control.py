"""Control AFs, control-constrained incomplete AFs, settle and structural constraints."""

from dataclasses import dataclass, field
from itertools import combinations

from .dlpa.checker import ModelChecker
from .dlpa.programs import dis, mk_true_some, sequence
from .dlpa.syntax import AssignTrue, Box, Diamond, Seq, aw, att, is_boolean, all_vars
from .errors import DomainError, InvariantError
from .oracle import ArgFramework
from .propositional import check_constraint_scope, holds
from .encodings import valuation_of_af
from .uncertainty import (
    CIAF, IAF, RIAF, _canon, _fs, _fs_pairs, _restrict, _show_pairs, _Structure, _subsets,
)


def configurations(ctrl_args):
    items = sorted(ctrl_args)
    return [frozenset(c) for k in range(len(items) + 1) for c in combinations(items, k)]


@dataclass(frozen=True)
class CAF(_Structure):
    fixed_args: frozenset = field(default_factory=frozenset)
    fixed_atts: frozenset = field(default_factory=frozenset)
    unc_args: frozenset = field(default_factory=frozenset)
    unc_atts: frozenset = field(default_factory=frozenset)
    sym_atts: frozenset = field(default_factory=frozenset)
    ctrl_args: frozenset = field(default_factory=frozenset)
    ctrl_atts: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        for name in ("fixed_args", "unc_args", "ctrl_args"):
            object.__setattr__(self, name, _fs(getattr(self, name)))
        for name in ("fixed_atts", "unc_atts", "sym_atts", "ctrl_atts"):
            object.__setattr__(self, name, _fs_pairs(getattr(self, name)))
        self._validate()

    def _validate(self):
        sets = [("fixed", self.fixed_args), ("uncertain", self.unc_args), ("control", self.ctrl_args)]
        for i, (n1, s1) in enumerate(sets):
            for n2, s2 in sets[i + 1:]:
                if s1 & s2:
                    raise InvariantError(f"arguments {sorted(s1 & s2)} are both {n1} and {n2}")
        rels = [
            ("fixed", self.fixed_atts), ("uncertain", self.unc_atts),
            ("symmetric", self.sym_atts), ("control", self.ctrl_atts),
        ]
        for i, (n1, r1) in enumerate(rels):
            for n2, r2 in rels[i + 1:]:
                if r1 & r2:
                    raise InvariantError(f"attacks {_show_pairs(r1 & r2)} are both {n1} and {n2}")
        core = self.fixed_args | self.unc_args
        for name, rel in rels[:3]:
            for x, y in sorted(rel):
                if x not in core or y not in core:
                    raise InvariantError(f"{name} attack ({x},{y}) leaves the fixed and uncertain arguments")
        for x, y in sorted(self.sym_atts):
            if x == y or (y, x) not in self.sym_atts:
                raise InvariantError(f"symmetric attack ({x},{y}) breaks symmetry or irreflexivity")
        everything = core | self.ctrl_args
        for x, y in sorted(self.ctrl_atts):
            if x not in everything or y not in everything:
                raise InvariantError(f"control attack ({x},{y}) leaves the argument set")
            if x not in self.ctrl_args and y not in self.ctrl_args:
                raise InvariantError(f"control attack ({x},{y}) touches no control argument")

    @property
    def arguments(self):
        return self.fixed_args | self.unc_args | self.ctrl_args

    def under_configuration(self, cfg):
        cfg = frozenset(cfg)
        if not cfg <= self.ctrl_args:
            raise DomainError(f"configuration {sorted(cfg - self.ctrl_args)} outside the control arguments")
        keep = self.fixed_args | self.unc_args | cfg
        return CAF(
            self.fixed_args, self.fixed_atts, self.unc_args, self.unc_atts, self.sym_atts,
            cfg, _restrict(self.ctrl_atts, keep),
        )

    def configurations(self):
        return configurations(self.ctrl_args)

    def completions(self):
        """Completions with every control argument of this CAF communicated."""
        base = self.fixed_args | self.ctrl_args
        sure = self.fixed_atts | self.ctrl_atts
        maybe = sure | self.unc_atts | self.sym_atts
        out = []
        for extra in _subsets(self.unc_args):
            args = base | extra
            low, high = _restrict(sure, args), _restrict(maybe, args)
            for opt in _subsets(high - low):
                r = low | opt
                if all((x, y) in r or (y, x) in r for x, y in _restrict(self.sym_atts, args)):
                    out.append(ArgFramework(args, r))
        return _canon(out)

    def completions_by_configuration(self):
        return {cfg: self.under_configuration(cfg).completions() for cfg in self.configurations()}

    def merged_riaf(self):
        """The rIAF obtained by treating control arguments and attacks as fixed."""
        return RIAF(
            self.fixed_args | self.ctrl_args, self.fixed_atts | self.ctrl_atts,
            self.unc_args, self.unc_atts, self.sym_atts,
        )

    def underlying_riaf(self):
        return RIAF(self.fixed_args, self.fixed_atts, self.unc_args, self.unc_atts, self.sym_atts)

    def valuation(self):
        return frozenset(
            [aw(x) for x in self.fixed_args]
            + [att(x, y) for x, y in self.fixed_atts | self.ctrl_atts]
        )

    def control_program(self, universe=None):
        u = self._u(universe)
        return mk_true_some(u.aw_vars(self.ctrl_args))

    def make_comp(self, universe=None):
        u = self._u(universe)
        pairs = sorted(self.sym_atts, key=lambda p: u.bit(att(*p)))
        return Seq(
            Seq(mk_true_some(u.aw_vars(self.unc_args)), mk_true_some(u.att_vars(self.unc_atts))),
            dis(pairs),
        )


@dataclass(frozen=True)
class CcIAF(_Structure):
    ctrl_args: frozenset
    ctrl_atts: frozenset
    static_args: frozenset
    constraint: object

    def __post_init__(self):
        object.__setattr__(self, "ctrl_args", _fs(self.ctrl_args))
        object.__setattr__(self, "static_args", _fs(self.static_args))
        object.__setattr__(self, "ctrl_atts", _fs_pairs(self.ctrl_atts))
        if self.ctrl_args & self.static_args:
            raise InvariantError(
                f"arguments {sorted(self.ctrl_args & self.static_args)} are both control and static"
            )
        everything = self.ctrl_args | self.static_args
        for x, y in sorted(self.ctrl_atts):
            if x not in everything or y not in everything:
                raise InvariantError(f"control attack ({x},{y}) leaves the argument set")
            if x not in self.ctrl_args and y not in self.ctrl_args:
                raise InvariantError(f"control attack ({x},{y}) touches no control argument")
        try:
            check_constraint_scope(self.constraint, self.static_args)
        except DomainError as e:
            raise InvariantError(str(e)) from None

    @property
    def arguments(self):
        return self.ctrl_args | self.static_args

    def underlying_ciaf(self):
        return CIAF(self.static_args, self.constraint)

    def under_configuration(self, cfg):
        cfg = frozenset(cfg)
        if not cfg <= self.ctrl_args:
            raise DomainError(f"configuration {sorted(cfg - self.ctrl_args)} outside the control arguments")
        return CcIAF(cfg, _restrict(self.ctrl_atts, cfg | self.static_args), self.static_args, self.constraint)

    def configurations(self):
        return configurations(self.ctrl_args)

    def completions(self):
        out = []
        for c in self.underlying_ciaf().completions():
            args = self.ctrl_args | c.args
            out.append(ArgFramework(args, _restrict(self.ctrl_atts | c.attacks, args)))
        return _canon(out)

    def completions_by_configuration(self):
        return {cfg: self.under_configuration(cfg).completions() for cfg in self.configurations()}

    def valuation(self):
        return frozenset(att(x, y) for x, y in self.ctrl_atts)

    def control_program(self, universe=None):
        u = self._u(universe)
        return mk_true_some(u.aw_vars(self.ctrl_args))

    def make_comp(self, universe=None):
        return self.underlying_ciaf().make_comp(self._u(universe))


# ---- settle and structural constraints ---------------------------------------------


def settle(iaf, a):
    """Move ``a`` from the uncertain to the fixed arguments."""
    if a not in iaf.unc_args:
        raise DomainError(f"{a!r} is not an uncertain argument")
    if isinstance(iaf, RIAF):
        return RIAF(iaf.fixed_args | {a}, iaf.fixed_atts, iaf.unc_args - {a}, iaf.unc_atts, iaf.sym_atts)
    return IAF(iaf.fixed_args | {a}, iaf.fixed_atts, iaf.unc_args - {a}, iaf.unc_atts)


def _check_constraint_formula(phi, structure):
    if not is_boolean(phi):
        raise DomainError("structural constraints must be Boolean")
    for v in all_vars(phi):
        if v.kind not in ("aw", "att"):
            raise DomainError(f"structural constraints range over aw/att variables, not {v}")
        if not set(v.args) <= set(structure.arguments):
            raise DomainError(f"{v} mentions arguments outside the structure")


def _prepare(structure, cfg):
    """Configured structure plus the program reaching its completions from its valuation."""
    if isinstance(structure, (CAF, CcIAF)):
        # the universe keeps unchosen control arguments, which phi may mention
        u = structure.universe()
        if cfg is not None:
            structure = structure.under_configuration(cfg)
        comm = sequence(AssignTrue(v) for v in u.aw_vars(structure.ctrl_args))
        return structure, u, Seq(comm, structure.make_comp(u))
    if cfg is not None:
        raise DomainError("configurations only apply to control structures")
    u = structure.universe()
    return structure, u, structure.make_comp(u)


def constraint_program(structure, enforce=None, cfg=None):
    structure, u, prog = _prepare(structure, cfg)
    if enforce is not None:
        if not isinstance(structure, IAF) or enforce not in structure.unc_args:
            raise DomainError("enforcement settles an uncertain argument of an IAF or rIAF")
        prog = Seq(prog, AssignTrue(aw(enforce)))
    return structure, u, prog


def check_structural_constraint(structure, phi, mode, enforce=None, cfg=None):
    """DL-PA check: <makeComp>phi (possible) or [makeComp]phi (necessary).

    With ``enforce``, ``+aw(enforce)`` runs after makeComp, i.e. the question
    is asked about the structure after settling that argument.
    """
    if mode not in ("possible", "necessary"):
        raise DomainError(f"unknown mode {mode!r}")
    _check_constraint_formula(phi, structure)
    structure, u, prog = constraint_program(structure, enforce, cfg)
    f = Diamond(prog, phi) if mode == "possible" else Box(prog, phi)
    return ModelChecker(u).evaluate(structure.valuation(), f)


def structural_constraint_direct(structure, phi, mode, enforce=None, cfg=None):
    """The same question answered on the completion list: phi read on v_(A*,R*)."""
    if mode not in ("possible", "necessary"):
        raise DomainError(f"unknown mode {mode!r}")
    _check_constraint_formula(phi, structure)
    if cfg is not None:
        if not isinstance(structure, (CAF, CcIAF)):
            raise DomainError("configurations only apply to control structures")
        structure = structure.under_configuration(cfg)
    if enforce is not None:
        if not isinstance(structure, IAF):
            raise DomainError("enforcement settles an uncertain argument of an IAF or rIAF")
        structure = settle(structure, enforce)
    verdicts = [holds(phi, valuation_of_af(c)) for c in structure.completions()]
    return any(verdicts) if mode == "possible" else all(verdicts)
