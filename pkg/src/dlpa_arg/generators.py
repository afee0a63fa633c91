"""Seeded random instances for property tests and the check-encoding command."""

import random
from itertools import product

from .control import CAF, CcIAF
from .dlpa.syntax import And, Atom, Iff, Implies, Not, Or, Universe, att, aw, conj, disj
from .oracle import ArgFramework
from .uncertainty import CIAF, CIAFJM, DEP_OPS, IAF, RIAF, DArgIAF, Dependency, theory_of

NAMES = "abcdefgh"


def names(n):
    return list(NAMES[:n])


def random_af(rng, n, p=0.3):
    args = names(n)
    return ArgFramework(args, {(x, y) for x, y in product(args, args) if rng.random() < p})


def all_attack_relations(n):
    """Every AF on exactly ``n`` named arguments (2^(n*n) of them)."""
    args = names(n)
    pairs = list(product(args, args))
    for bits in range(1 << len(pairs)):
        yield ArgFramework(args, {p for i, p in enumerate(pairs) if bits >> i & 1})


def _roles(rng, args, roles, weights):
    out = {r: set() for r in roles}
    for x in args:
        out[rng.choices(roles, weights)[0]].add(x)
    return out


def random_iaf(rng, n, p=0.35, p_unc_arg=0.4, p_unc_att=0.4, anchor=None):
    args = names(n)
    r = _roles(rng, args, ("F", "?"), (1 - p_unc_arg, p_unc_arg))
    if anchor is not None:
        r["?"].discard(anchor)
        r["F"].add(anchor)
    rf, ru = set(), set()
    for pair in product(args, args):
        if rng.random() < p:
            (ru if rng.random() < p_unc_att else rf).add(pair)
    return IAF(r["F"], rf, r["?"], ru)


def random_riaf(rng, n, p=0.3, p_sym=0.3, anchor=None):
    base = random_iaf(rng, n, p, anchor=anchor)
    args = sorted(base.arguments)
    taken = base.fixed_atts | base.unc_atts
    sym = set()
    for i, x in enumerate(args):
        for y in args[i + 1:]:
            if (x, y) not in taken and (y, x) not in taken and rng.random() < p_sym:
                sym |= {(x, y), (y, x)}
    return RIAF.from_iaf(base, sym)


def random_boolean(rng, atoms, depth=2):
    if depth == 0 or rng.random() < 0.3:
        a = Atom(rng.choice(atoms))
        return Not(a) if rng.random() < 0.4 else a
    op = rng.choice(("and", "or", "imp", "iff", "not"))
    if op == "not":
        return Not(random_boolean(rng, atoms, depth - 1))
    l, r = random_boolean(rng, atoms, depth - 1), random_boolean(rng, atoms, depth - 1)
    return {"and": lambda: And((l, r)), "or": lambda: Or((l, r)),
            "imp": lambda: Implies(l, r), "iff": lambda: Iff(l, r)}[op]()


def constraint_atoms(args):
    return [aw(x) for x in args] + [att(x, y) for x, y in product(args, args)]


def random_constraint(rng, args, force=None):
    """Either a disjunction of theories or a small random formula, optionally forcing aw(force)."""
    args = sorted(args)
    if rng.random() < 0.5 and args:
        u = Universe(args)
        picks = []
        for _ in range(rng.randint(1, 4)):
            present = {x for x in args if rng.random() < 0.7}
            atts = {(x, y) for x in present for y in present if rng.random() < 0.3}
            picks.append(theory_of(present, atts, u))
        phi = disj(picks)
    else:
        phi = conj(random_boolean(rng, constraint_atoms(args), 2) for _ in range(rng.randint(1, 3)))
    if force is not None:
        phi = And((Atom(aw(force)), phi))
    return phi


def random_ciaf(rng, n, force=None):
    return CIAF(names(n), random_constraint(rng, names(n), force))


def random_ciafjm(rng, n, anchor=None):
    iaf = random_iaf(rng, n, anchor=anchor)
    return CIAFJM(iaf, random_constraint(rng, sorted(iaf.arguments)))


def random_dargiaf(rng, n, p=0.35, anchor=None):
    args = names(n)
    r = _roles(rng, args, ("F", "?"), (0.5, 0.5))
    if anchor is not None:
        r["?"].discard(anchor)
        r["F"].add(anchor)
    atts = {pair for pair in product(args, args) if rng.random() < p}
    unc = sorted(r["?"])
    deps = []
    for _ in range(rng.randint(0, 2) if unc else 0):
        op = rng.choice(DEP_OPS)
        xs = set(rng.sample(unc, rng.randint(1, len(unc))))
        ys = set(rng.sample(unc, rng.randint(1, len(unc)))) if op == "implies" else set()
        deps.append(Dependency(op, xs, ys))
    return DArgIAF(r["F"], r["?"], atts, tuple(deps))


def random_caf(rng, n, p=0.3, anchor=None):
    args = names(n)
    r = _roles(rng, args, ("F", "?", "C"), (0.4, 0.3, 0.3))
    if anchor is not None:
        for k in ("?", "C"):
            r[k].discard(anchor)
        r["F"].add(anchor)
    core = sorted(r["F"] | r["?"])
    rf, ru, rs, rc = set(), set(), set(), set()
    for x, y in product(args, args):
        if rng.random() >= p:
            continue
        if x in r["C"] or y in r["C"]:
            rc.add((x, y))
        elif x != y and (y, x) not in rf | ru and rng.random() < 0.25:
            rs |= {(x, y), (y, x)}
        elif (x, y) not in rs:
            (ru if rng.random() < 0.4 else rf).add((x, y))
    rf -= rs
    ru -= rs
    assert all(x in core and y in core for x, y in rf | ru | rs)
    return CAF(r["F"], rf, r["?"], ru, rs, r["C"], rc)


def random_cciaf(rng, n_static, n_ctrl, p=0.35, force=None):
    static = names(n_static)
    ctrl = list(NAMES[n_static:n_static + n_ctrl])
    everything = static + ctrl
    rc = {(x, y) for x, y in product(everything, everything)
          if (x in ctrl or y in ctrl) and rng.random() < p}
    return CcIAF(ctrl, rc, static, random_constraint(rng, static, force))


def rng_for(seed):
    return random.Random(seed)
