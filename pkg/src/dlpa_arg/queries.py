"""Acceptance and controllability queries, answered by enumeration or by DL-PA model checking.

Modes: nca/nsa/pca/psa quantify over completions (necessary/possible) and
extensions (credulous/sceptical). nscon/nccon/pccon/pscon prefix the same
four with "there is a control configuration".
"""

import time
from dataclasses import dataclass, field
from typing import Optional

from .control import CAF, CcIAF
from .dlpa.checker import ModelChecker
from .dlpa.syntax import Atom, Box, Diamond, Seq, aw, in_
from .encodings import af_of_valuation, context_for, ext_of_valuation
from .errors import DomainError, EngineDisagreement
from .oracle import SEMANTICS, ArgFramework, extensions
from .uncertainty import IAF

ACCEPTANCE_MODES = ("nca", "nsa", "pca", "psa")
CONTROL_MODES = ("nscon", "nccon", "pccon", "pscon")
_INNER = {"nscon": "nsa", "nccon": "nca", "pccon": "pca", "pscon": "psa"}


@dataclass(frozen=True)
class Witness:
    completion: Optional[ArgFramework] = None
    extension: Optional[frozenset] = None
    configuration: Optional[frozenset] = None


@dataclass
class QueryResult:
    answer: bool
    witness: Optional[Witness] = None
    engine: str = "direct"
    timings: dict = field(default_factory=dict)


# ---- preconditions -------------------------------------------------------------------


def check_acceptance_precondition(structure, a):
    if a not in structure.arguments:
        raise DomainError(f"{a!r} is not an argument of the structure")
    if isinstance(structure, IAF) and a not in structure.fixed_args:
        raise DomainError(f"{a!r} must be a fixed argument")
    for c in structure.completions():
        if a not in c.args:
            raise DomainError(f"{a!r} is missing from the completion {c}")


def check_control_precondition(control, a):
    if isinstance(control, CAF):
        if a not in control.fixed_args:
            raise DomainError(f"{a!r} must be a fixed argument of the CAF")
        return
    if not isinstance(control, CcIAF):
        raise DomainError("controllability needs a CAF or a CcIAF")
    if a not in control.static_args:
        raise DomainError(f"{a!r} must be a static argument of the CcIAF")
    for c in control.underlying_ciaf().completions():
        if a not in c.args:
            raise DomainError(f"the constraint does not force {a!r}: see completion {c}")


def _check_sem(sem):
    if sem not in SEMANTICS:
        raise DomainError(f"unknown semantics {sem!r}")


# ---- direct engine -----------------------------------------------------------------------


def _decide(completions, sem, a, mode):
    """Two-level quantification over completions and their extensions."""
    for c in completions:
        exts = extensions(c, sem)
        if mode == "nca":
            if not any(a in e for e in exts):
                return False, Witness(c)
        elif mode == "nsa":
            bad = [e for e in exts if a not in e]
            if bad:
                return False, Witness(c, bad[0])
        elif mode == "pca":
            good = [e for e in exts if a in e]
            if good:
                return True, Witness(c, good[0])
        elif mode == "psa":
            if all(a in e for e in exts):
                return True, Witness(c)
    return mode in ("nca", "nsa"), None


def acceptance_direct(structure, sem, a, mode):
    _check_sem(sem)
    if mode not in ACCEPTANCE_MODES:
        raise DomainError(f"unknown acceptance mode {mode!r}")
    check_acceptance_precondition(structure, a)
    ans, w = _decide(structure.completions(), sem, a, mode)
    return QueryResult(ans, w, "direct")


def controllability_direct(control, sem, a, mode):
    _check_sem(sem)
    if mode not in CONTROL_MODES:
        raise DomainError(f"unknown controllability mode {mode!r}")
    check_control_precondition(control, a)
    inner = _INNER[mode]
    for cfg in control.configurations():
        ans, w = _decide(control.under_configuration(cfg).completions(), sem, a, inner)
        if ans:
            w = w or Witness()
            return QueryResult(True, Witness(w.completion, w.extension, cfg), "direct")
    return QueryResult(False, None, "direct")


# ---- DL-PA engine --------------------------------------------------------------------------


def acceptance_formula(comp, ext, a, mode):
    goal = Atom(in_(a))
    if mode == "nsa":
        return Box(Seq(comp, ext), goal)
    if mode == "nca":
        return Box(comp, Diamond(ext, goal))
    if mode == "pca":
        return Diamond(Seq(comp, ext), goal)
    if mode == "psa":
        return Diamond(comp, Box(ext, goal))
    raise DomainError(f"unknown acceptance mode {mode!r}")


def controllability_formula(control, comp, ext, a, mode):
    goal = Atom(in_(a))
    if mode == "nscon":
        return Diamond(control, Box(Seq(comp, ext), goal))
    if mode == "nccon":
        return Diamond(control, Box(comp, Diamond(ext, goal)))
    if mode == "pccon":
        return Diamond(Seq(control, Seq(comp, ext)), goal)
    if mode == "pscon":
        return Diamond(Seq(control, comp), Box(ext, goal))
    raise DomainError(f"unknown controllability mode {mode!r}")


def _trace_witness(mc, u, start, comp, ext, a, mode):
    """Read a witness (or counterexample) off the successor lists, in mask order."""
    goal = Atom(in_(a))
    has_ext = Diamond(ext, goal)
    all_ext = Box(ext, goal)
    for w in mc.succ(start, comp):
        c = af_of_valuation(u.valuation(w))
        if mode == "pca" and mc.holds(w, has_ext):
            e = next(x for x in mc.succ(w, ext) if mc.holds(x, goal))
            return Witness(c, ext_of_valuation(u.valuation(e)))
        if mode == "psa" and mc.holds(w, all_ext):
            return Witness(c)
        if mode == "nca" and not mc.holds(w, has_ext):
            return Witness(c)
        if mode == "nsa" and not mc.holds(w, all_ext):
            e = next(x for x in mc.succ(w, ext) if not mc.holds(x, goal))
            return Witness(c, ext_of_valuation(u.valuation(e)))
    return None


def acceptance_dlpa(structure, sem, a, mode, universe=None):
    _check_sem(sem)
    if mode not in ACCEPTANCE_MODES:
        raise DomainError(f"unknown acceptance mode {mode!r}")
    check_acceptance_precondition(structure, a)
    u = structure._u(universe)
    comp, ext = structure.make_comp(u), context_for(u).make_ext(sem)
    mc = ModelChecker(u)
    start = u.mask(structure.valuation())
    ans = mc.holds(start, acceptance_formula(comp, ext, a, mode))
    w = None
    if ans == (mode in ("pca", "psa")):
        w = _trace_witness(mc, u, start, comp, ext, a, mode)
    return QueryResult(ans, w, "dlpa")


def controllability_dlpa(control, sem, a, mode, universe=None):
    _check_sem(sem)
    if mode not in CONTROL_MODES:
        raise DomainError(f"unknown controllability mode {mode!r}")
    check_control_precondition(control, a)
    u = control._u(universe)
    ctl, comp = control.control_program(u), control.make_comp(u)
    ext = context_for(u).make_ext(sem)
    mc = ModelChecker(u)
    start = u.mask(control.valuation())
    ans = mc.holds(start, controllability_formula(ctl, comp, ext, a, mode))
    w = None
    if ans:
        inner = _INNER[mode]
        inner_f = acceptance_formula(comp, ext, a, inner)
        for m in mc.succ(start, ctl):
            if mc.holds(m, inner_f):
                cfg = frozenset(x for x in control.ctrl_args if m >> u.bit(aw(x)) & 1)
                iw = None
                if inner in ("pca", "psa"):
                    iw = _trace_witness(mc, u, m, comp, ext, a, inner)
                iw = iw or Witness()
                w = Witness(iw.completion, iw.extension, cfg)
                break
    return QueryResult(ans, w, "dlpa")


# ---- front door -----------------------------------------------------------------------------


def is_control_mode(mode):
    return mode in CONTROL_MODES


def run_query(structure, sem, a, mode, engine="direct", universe=None):
    """Answer with one engine, or with both and insist they agree."""
    if engine == "both":
        return cross_check(structure, sem, a, mode, universe)
    if is_control_mode(mode):
        fn = controllability_direct if engine == "direct" else controllability_dlpa
    elif mode in ACCEPTANCE_MODES:
        fn = acceptance_direct if engine == "direct" else acceptance_dlpa
    else:
        raise DomainError(f"unknown mode {mode!r}")
    if engine not in ("direct", "dlpa"):
        raise DomainError(f"unknown engine {engine!r}")
    t = time.perf_counter()
    r = fn(structure, sem, a, mode) if engine == "direct" else fn(structure, sem, a, mode, universe)
    r.timings[engine] = time.perf_counter() - t
    return r


def cross_check(structure, sem, a, mode, universe=None):
    """Run both engines one after the other; disagreement raises EngineDisagreement."""
    d = run_query(structure, sem, a, mode, "direct")
    p = run_query(structure, sem, a, mode, "dlpa", universe)
    if d.answer != p.answer:
        raise EngineDisagreement(
            f"{sem}-{mode} for {a!r}: direct says {d.answer} (witness {d.witness}), "
            f"DL-PA says {p.answer} (witness {p.witness})"
        )
    return QueryResult(d.answer, d.witness, "both", {**d.timings, **p.timings})
