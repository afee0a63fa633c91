"""Framework files and result documents.

Framework files are line oriented::

    kind: iaf
    universe: a, b, c        # optional
    arg(a).    ?arg(b).    carg(c).
    att(a,b).  ?att(b,a).  <->att(b,c).  catt(c,a).
    constraint: aw(a) & ~att(a,a)
    dep: choice({b,c})

One fact per line; ``#`` and ``%`` start comments.
"""

import json
import re
from dataclasses import dataclass, field
from typing import Optional

from . import __version__
from .control import CAF, CcIAF
from .dlpa.parser import SourceSpan, parse_formula, print_formula
from .dlpa.syntax import TOP, conj
from .errors import InvariantError, ParseError
from .oracle import ArgFramework
from .uncertainty import CIAF, CIAFJM, IAF, RIAF, DArgIAF, Dependency

KINDS = ("af", "iaf", "riaf", "ciaf", "ciafjm", "dargiaf", "caf", "cciaf")

# which fact kinds each framework kind accepts
_ALLOWED = {
    "af": {"arg", "att"},
    "iaf": {"arg", "?arg", "att", "?att"},
    "riaf": {"arg", "?arg", "att", "?att", "<->att"},
    "ciaf": {"arg", "constraint"},
    "ciafjm": {"arg", "?arg", "att", "?att", "constraint"},
    "dargiaf": {"arg", "?arg", "att", "dep"},
    "caf": {"arg", "?arg", "carg", "att", "?att", "<->att", "catt"},
    "cciaf": {"arg", "carg", "catt", "constraint"},
}

_NAME = r"[A-Za-z_][A-Za-z0-9_]*"
_FACT_RE = re.compile(
    rf"^(?P<prefix>\?|<->|c)?(?P<what>arg|att)\(\s*(?P<x>{_NAME})\s*(?:,\s*(?P<y>{_NAME})\s*)?\)\s*\.$"
)
_SET = rf"\{{\s*{_NAME}(?:\s*,\s*{_NAME})*\s*\}}"
_DEP_RE = re.compile(
    rf"^(?P<op>implies|or|nand|choice)\(\s*(?P<xs>{_SET})\s*(?:,\s*(?P<ys>{_SET})\s*)?\)$"
)


@dataclass
class FrameworkFile:
    kind: str
    universe: Optional[tuple]
    structure: object


def _err_span(line_no, col, line_start, length=1):
    return SourceSpan(line_start + col - 1, line_start + col - 1 + length, line_no, col)


def _names(s):
    return {t.strip() for t in s.strip()[1:-1].split(",")}


def parse_framework(text, source="<input>"):
    kind = None
    universe = None
    facts = {k: [] for k in ("arg", "?arg", "carg", "att", "?att", "<->att", "catt")}
    constraints, deps = [], []
    mentioned = []  # (name, line)
    byte_pos = 0
    for line_no, raw in enumerate(text.split("\n"), 1):
        line_start = byte_pos
        byte_pos += len(raw.encode("utf-8")) + 1
        line = re.split(r"[#%]", raw, 1)[0]
        stripped = line.strip()
        if not stripped:
            continue
        col = len(line) - len(line.lstrip()) + 1
        key, sep, rest = stripped.partition(":")
        key = key.strip()
        if sep and key in ("kind", "universe", "constraint", "dep"):
            value = rest.strip()
            if key == "kind":
                if value not in KINDS:
                    raise ParseError(_err_span(line_no, col, line_start, len(stripped)), list(KINDS), value)
                if kind is not None:
                    raise InvariantError("kind declared twice", line_no)
                kind = value
            elif key == "universe":
                names = [t.strip() for t in value.split(",") if t.strip()]
                if not names or not all(re.fullmatch(_NAME, t) for t in names):
                    raise ParseError(_err_span(line_no, col, line_start, len(stripped)),
                                     ["comma separated argument names"], value)
                if len(set(names)) != len(names):
                    raise InvariantError("universe lists a name twice", line_no)
                universe = tuple(names)
            elif key == "constraint":
                offset = raw.index(rest) + (len(rest) - len(rest.lstrip()))
                try:
                    f = parse_formula(value)
                except ParseError as e:
                    s = e.span
                    raise ParseError(
                        SourceSpan(line_start + offset + s.byte_start, line_start + offset + s.byte_end,
                                   line_no, offset + s.column),
                        e.expected, e.found,
                    ) from None
                constraints.append((f, line_no))
            else:
                m = _DEP_RE.match(value)
                if not m:
                    raise ParseError(_err_span(line_no, col, line_start, len(stripped)),
                                     ["implies({..},{..})", "or({..})", "nand({..})", "choice({..})"], value)
                op = m.group("op")
                ys = _names(m.group("ys")) if m.group("ys") else set()
                if (op == "implies") != bool(ys):
                    raise ParseError(_err_span(line_no, col, line_start, len(stripped)),
                                     ["implies takes two sets, the others one"], value)
                deps.append((Dependency(op, _names(m.group("xs")), ys), line_no))
                mentioned += [(x, line_no) for x in _names(m.group("xs")) | ys]
            continue
        m = _FACT_RE.match(stripped)
        if not m:
            raise ParseError(_err_span(line_no, col, line_start, len(stripped)),
                             ["a fact such as arg(x). or att(x,y).", "kind:", "universe:",
                              "constraint:", "dep:"], stripped)
        fk = (m.group("prefix") or "") + m.group("what")
        x, y = m.group("x"), m.group("y")
        if m.group("what") == "arg":
            if y is not None:
                raise ParseError(_err_span(line_no, col, line_start, len(stripped)), ["arg(x)."], stripped)
            facts[fk].append((x, line_no))
            mentioned.append((x, line_no))
        else:
            if y is None:
                raise ParseError(_err_span(line_no, col, line_start, len(stripped)), ["att(x,y)."], stripped)
            facts[fk].append(((x, y), line_no))
            mentioned += [(x, line_no), (y, line_no)]
    if kind is None:
        raise ParseError(_err_span(1, 1, 0), ["kind: line"], "")
    for fk, items in list(facts.items()) + [("constraint", constraints), ("dep", deps)]:
        if items and fk not in _ALLOWED[kind]:
            raise InvariantError(f"fact {fk} is not allowed for kind {kind}", items[0][1])
    if universe is not None:
        for name, ln in mentioned:
            if name not in universe:
                raise InvariantError(f"{name!r} is not declared in the universe", ln)
    structure = _build(kind, facts, constraints, deps)
    return FrameworkFile(kind, universe, structure)


def _build(kind, facts, constraints, deps):
    def args_of(fk):
        seen = {}
        for x, ln in facts[fk]:
            seen.setdefault(x, ln)
        return seen

    fixed, unc, ctrl = args_of("arg"), args_of("?arg"), args_of("carg")
    for a, b, an, bn in ((fixed, unc, "fixed", "uncertain"), (fixed, ctrl, "fixed", "control"),
                         (unc, ctrl, "uncertain", "control")):
        for x in sorted(set(a) & set(b)):
            raise InvariantError(f"argument {x!r} is both {an} and {bn}", max(a[x], b[x]))

    rels = {}
    owner = {}
    for fk in ("att", "?att", "<->att", "catt"):
        rels[fk] = set()
        for (x, y), ln in facts[fk]:
            pairs = [(x, y), (y, x)] if fk == "<->att" else [(x, y)]
            for p in pairs:
                if p in owner and owner[p][0] != fk:
                    raise InvariantError(
                        f"attack ({p[0]},{p[1]}) is declared both as {owner[p][0]} and {fk}", ln
                    )
                if fk == "<->att" and x == y:
                    raise InvariantError(f"symmetric attack ({x},{y}) is reflexive", ln)
                owner.setdefault(p, (fk, ln))
                rels[fk].add(p)

    constraint = None
    if constraints:
        constraint = conj(f for f, _ in constraints)

    if kind == "af":
        return ArgFramework(set(fixed), rels["att"])

    core = set(fixed) | set(unc)
    if kind in ("iaf", "riaf", "ciafjm", "dargiaf", "caf"):
        for fk in ("att", "?att", "<->att"):
            for p in sorted(rels[fk]):
                if p[0] not in core or p[1] not in core:
                    raise InvariantError(
                        f"attack ({p[0]},{p[1]}) mentions an argument that is neither fixed nor uncertain",
                        owner[p][1],
                    )
    everything = core | set(ctrl)
    for p in sorted(rels["catt"]):
        if p[0] not in everything or p[1] not in everything:
            raise InvariantError(f"control attack ({p[0]},{p[1]}) mentions an undeclared argument", owner[p][1])
        if p[0] not in ctrl and p[1] not in ctrl:
            raise InvariantError(f"control attack ({p[0]},{p[1]}) touches no control argument", owner[p][1])

    def wrap(build, line=None):
        try:
            return build()
        except InvariantError as e:
            raise InvariantError(str(e), line) from None

    cline = constraints[0][1] if constraints else None
    if kind == "iaf":
        return wrap(lambda: IAF(set(fixed), rels["att"], set(unc), rels["?att"]))
    if kind == "riaf":
        return wrap(lambda: RIAF(set(fixed), rels["att"], set(unc), rels["?att"], rels["<->att"]))
    if kind == "ciaf":
        return wrap(lambda: CIAF(set(fixed), constraint if constraint is not None else TOP), cline)
    if kind == "ciafjm":
        iaf = wrap(lambda: IAF(set(fixed), rels["att"], set(unc), rels["?att"]))
        return wrap(lambda: CIAFJM(iaf, constraint if constraint is not None else TOP), cline)
    if kind == "dargiaf":
        for d, ln in deps:
            outside = (d.xs | d.ys) - set(unc)
            if outside:
                raise InvariantError(f"dependency {d} mentions non-uncertain {sorted(outside)}", ln)
        return wrap(lambda: DArgIAF(set(fixed), set(unc), rels["att"], tuple(d for d, _ in deps)))
    if kind == "caf":
        return wrap(lambda: CAF(set(fixed), rels["att"], set(unc), rels["?att"], rels["<->att"],
                                set(ctrl), rels["catt"]))
    return wrap(lambda: CcIAF(set(ctrl), rels["catt"], set(fixed),
                              constraint if constraint is not None else TOP), cline)


def load_framework(path):
    with open(path, encoding="utf-8") as fh:
        return parse_framework(fh.read(), str(path))


def kind_of(structure):
    for cls, k in ((RIAF, "riaf"), (IAF, "iaf"), (CIAFJM, "ciafjm"), (CIAF, "ciaf"),
                   (DArgIAF, "dargiaf"), (CAF, "caf"), (CcIAF, "cciaf"), (ArgFramework, "af")):
        if isinstance(structure, cls):
            return k
    raise TypeError(f"not a framework: {structure!r}")


def dump_framework(structure, universe=None):
    """Canonical text of a framework file."""
    kind = kind_of(structure)
    lines = [f"kind: {kind}"]
    if universe is not None:
        lines.append("universe: " + ", ".join(universe))

    def args(prefix, xs):
        lines.extend(f"{prefix}arg({x})." for x in sorted(xs))

    def atts(prefix, rel, sym=False):
        for x, y in sorted(rel):
            if sym and (y, x) in rel and y < x:
                continue
            lines.append(f"{prefix}att({x},{y}).")

    s = structure
    if kind == "af":
        args("", s.args)
        atts("", s.attacks)
    elif kind in ("iaf", "riaf"):
        args("", s.fixed_args)
        args("?", s.unc_args)
        atts("", s.fixed_atts)
        atts("?", s.unc_atts)
        if kind == "riaf":
            atts("<->", s.sym_atts, sym=True)
    elif kind == "ciaf":
        args("", s.args)
        lines.append("constraint: " + print_formula(s.constraint))
    elif kind == "ciafjm":
        args("", s.iaf.fixed_args)
        args("?", s.iaf.unc_args)
        atts("", s.iaf.fixed_atts)
        atts("?", s.iaf.unc_atts)
        lines.append("constraint: " + print_formula(s.constraint))
    elif kind == "dargiaf":
        args("", s.args)
        args("?", s.unc_args)
        atts("", s.attacks)
        lines.extend(f"dep: {d}" for d in s.deps)
    elif kind == "caf":
        args("", s.fixed_args)
        args("?", s.unc_args)
        args("c", s.ctrl_args)
        atts("", s.fixed_atts)
        atts("?", s.unc_atts)
        atts("<->", s.sym_atts, sym=True)
        atts("c", s.ctrl_atts)
    else:
        args("", s.static_args)
        args("c", s.ctrl_args)
        atts("c", s.ctrl_atts)
        lines.append("constraint: " + print_formula(s.constraint))
    return "\n".join(lines) + "\n"


# ---- result documents -------------------------------------------------------------------


def fmt_set(xs):
    return "{" + ",".join(sorted(xs)) + "}"


def fmt_sets(sets):
    from .oracle import canonical_sets

    return "{" + ",".join(fmt_set(s) for s in canonical_sets(sets)) + "}"


def fmt_af(af):
    atts = ",".join(f"({x},{y})" for x, y in sorted(af.attacks))
    return f"({fmt_set(af.args)}, {{{atts}}})"


def to_jsonable(value):
    if isinstance(value, ArgFramework):
        return {"args": sorted(value.args), "attacks": [list(p) for p in sorted(value.attacks)]}
    if isinstance(value, (set, frozenset)):
        items = [to_jsonable(v) for v in value]
        return sorted(items, key=lambda v: (isinstance(v, list) and len(v), json.dumps(v, sort_keys=True)))
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    return value


def to_text(value):
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, ArgFramework):
        return fmt_af(value)
    if isinstance(value, (set, frozenset)):
        if all(isinstance(v, str) for v in value):
            return fmt_set(value)
        return fmt_sets(value)
    if isinstance(value, list):
        if value and all(isinstance(v, (set, frozenset)) for v in value):
            return fmt_sets(value)
        return "[" + ", ".join(to_text(v) for v in value) + "]"
    if isinstance(value, float):
        return f"{value:.6f}"
    return str(value)


@dataclass
class ResultDocument:
    command: str
    fields: dict = field(default_factory=dict)
    seed: Optional[int] = None
    timings: Optional[dict] = None

    def as_dict(self):
        d = {"command": self.command, "version": __version__}
        d.update(self.fields)
        if self.seed is not None:
            d["seed"] = self.seed
        if self.timings is not None:
            d["timings"] = self.timings
        return d


def emit_result(doc, fmt="text"):
    d = doc.as_dict()
    if fmt == "json":
        return (json.dumps(to_jsonable(d), sort_keys=True, indent=2) + "\n").encode("utf-8")
    lines = []
    for k in sorted(d):
        v = d[k]
        if isinstance(v, dict):
            lines.append(f"{k}:")
            for kk in sorted(v):
                lines.append(f"  {kk}: {to_text(v[kk])}")
        elif isinstance(v, list) and v and all(isinstance(x, ArgFramework) for x in v):
            lines.append(f"{k}:")
            lines.extend(f"  {fmt_af(x)}" for x in v)
        else:
            lines.append(f"{k}: {to_text(v)}")
    return ("\n".join(lines) + "\n").encode("utf-8")
