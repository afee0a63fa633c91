"""Command-line front end: ``dlpa-arg <command> ...``.

Exit codes: 0 yes/success, 1 no, 2 usage or parse error, 3 invariant or
domain error (including engine disagreement), 4 resource bound exceeded.
"""

import argparse
import os
import re
import sys
import time

from . import __version__
from .control import (
    CAF, CcIAF, check_structural_constraint, settle, structural_constraint_direct,
)
from .dlpa.checker import ModelChecker
from .dlpa.parser import parse_formula, parse_program, parse_var
from .dlpa.programs import sequence
from .dlpa.syntax import AssignTrue, Seq, Universe
from .encodings import af_of_valuation, check_encoding
from .errors import DomainError, EngineDisagreement, ParseError, ResourceError
from .generators import all_attack_relations, random_af, rng_for
from .io import ResultDocument, dump_framework, emit_result, load_framework
from .oracle import SEMANTICS, ArgFramework, extensions
from .queries import ACCEPTANCE_MODES, CONTROL_MODES, run_query
from .uncertainty import (
    IAF, _canon, all_afs, ciaf_from_completion_set, dlpa_completions, find_riaf_with_completions,
)
from .worked_examples import CIAF0

EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_INVARIANT, EXIT_RESOURCE = 0, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _split_top(text):
    """Split on commas that are not inside parentheses."""
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    out.append(cur)
    return [t.strip() for t in out if t.strip()]


def parse_valuation(text):
    text = text.strip()
    if text.startswith("{") and text.endswith("}"):
        text = text[1:-1]
    return frozenset(parse_var(t) for t in _split_top(text))


def _names(text):
    return [t.strip() for t in re.split(r"[,\s]+", text or "") if t.strip()]


def _fmt_val(v):
    return "{" + ",".join(str(x) for x in sorted(v, key=lambda x: x.sort_key())) + "}"


class App:
    def __init__(self, args):
        self.args = args
        self.timings = {}

    def _load(self):
        ff = load_framework(self.args.file)
        universe = Universe(ff.universe) if ff.universe else None
        return ff, universe

    def _doc(self, command, fields, seed=None):
        return ResultDocument(command, fields, seed, self.timings if self.args.timings else None)

    def _timed(self, key, fn, *a, **kw):
        t = time.perf_counter()
        r = fn(*a, **kw)
        self.timings[key] = round(time.perf_counter() - t, 6)
        return r

    def _echo(self):
        return os.path.basename(self.args.file)

    # ---- commands ---------------------------------------------------------------

    def extensions(self):
        ff, universe = self._load()
        if ff.kind != "af":
            raise DomainError("extensions needs a plain AF file (kind: af)")
        af, sem, eng = ff.structure, self.args.sem, self.args.engine
        fields = {"framework": self._echo(), "sem": sem, "engine": eng}
        if eng in ("oracle", "both"):
            fields["extensions"] = self._timed("oracle", extensions, af, sem)
        if eng in ("dlpa", "both"):
            rep = self._timed("dlpa", check_encoding, af, sem, universe, self.args.bound)
            if eng == "both" and not rep.agrees:
                raise EngineDisagreement(
                    f"{sem}: oracle {rep.oracle_set} but DL-PA {rep.encoding_set}"
                )
            fields["extensions"] = rep.encoding_set
        fields["count"] = len(fields["extensions"])
        return self._doc("extensions", fields), EXIT_YES

    def completions(self):
        ff, universe = self._load()
        s = ff.structure
        if isinstance(s, ArgFramework):
            s = IAF(s.args, s.attacks)
        if self.args.cfg is not None:
            if not isinstance(s, (CAF, CcIAF)):
                raise DomainError("--cfg only applies to caf and cciaf files")
            s = s.under_configuration(_names(self.args.cfg))
        eng = self.args.engine
        fields = {"framework": self._echo(), "engine": eng}
        if self.args.cfg is not None:
            fields["configuration"] = frozenset(_names(self.args.cfg))
        found = None
        if eng in ("direct", "both"):
            found = self._timed("direct", s.completions)
        if eng in ("dlpa", "both"):
            got = self._timed("dlpa", _dlpa_completions, s, universe)
            if found is not None and got != found:
                raise EngineDisagreement(
                    f"direct {len(found)} completions, DL-PA {len(got)}: "
                    f"{sorted(set(map(str, found)) ^ set(map(str, got)))}"
                )
            found = got
        fields["count"] = len(found)
        if not self.args.count_only:
            fields["completions"] = found
        return self._doc("completions", fields), EXIT_YES

    def _query(self, command, modes):
        ff, universe = self._load()
        s = ff.structure
        if isinstance(s, ArgFramework):
            s = IAF(s.args, s.attacks)
        if self.args.mode not in modes:
            raise DomainError(f"{command} takes modes {', '.join(modes)}")
        r = run_query(s, self.args.sem, self.args.arg, self.args.mode, self.args.engine, universe)
        self.timings.update({k: round(v, 6) for k, v in r.timings.items()})
        fields = {
            "framework": self._echo(), "sem": self.args.sem, "arg": self.args.arg,
            "mode": self.args.mode, "engine": self.args.engine, "answer": r.answer,
        }
        if r.witness is not None:
            w = {"completion": r.witness.completion, "extension": r.witness.extension}
            if command == "control":
                w["configuration"] = r.witness.configuration
            fields["witness"] = w
        return self._doc(command, fields), EXIT_YES if r.answer else EXIT_NO

    def query(self):
        return self._query("query", ACCEPTANCE_MODES)

    def control(self):
        return self._query("control", CONTROL_MODES)

    def settle(self):
        ff, _ = self._load()
        if ff.kind not in ("iaf", "riaf"):
            raise DomainError("settle needs an iaf or riaf file")
        text = dump_framework(settle(ff.structure, self.args.arg), ff.universe)
        if self.args.format == "text":
            return text.encode("utf-8"), EXIT_YES
        return self._doc("settle", {"framework": self._echo(), "arg": self.args.arg, "settled": text}), EXIT_YES

    def constraint_check(self):
        ff, _ = self._load()
        s = ff.structure
        if isinstance(s, ArgFramework):
            s = IAF(s.args, s.attacks)
        phi = parse_formula(self.args.formula)
        cfg = None if self.args.cfg is None else _names(self.args.cfg)
        a, mode, eng = self.args.enforce_aw, self.args.mode, self.args.engine
        ans = None
        if eng in ("dlpa", "both"):
            ans = self._timed("dlpa", check_structural_constraint, s, phi, mode, a, cfg)
        if eng in ("direct", "both"):
            d = self._timed("direct", structural_constraint_direct, s, phi, mode, a, cfg)
            if ans is not None and d != ans:
                raise EngineDisagreement(f"{mode} check: DL-PA says {ans}, direct says {d}")
            ans = d
        fields = {
            "framework": self._echo(), "formula": self.args.formula, "mode": mode,
            "engine": eng, "answer": ans,
        }
        if a is not None:
            fields["enforce_aw"] = a
        if cfg is not None:
            fields["configuration"] = frozenset(cfg)
        return self._doc("constraint-check", fields), EXIT_YES if ans else EXIT_NO

    def _universe(self, *things):
        if self.args.universe:
            return Universe(_names(self.args.universe))
        return Universe.infer(*things)

    def mc(self):
        v = parse_valuation(self.args.valuation)
        phi = parse_formula(self.args.formula)
        u = self._universe(v, phi)
        ans = self._timed("dlpa", ModelChecker(u).evaluate, v, phi)
        fields = {"valuation": _fmt_val(v), "formula": self.args.formula, "answer": ans}
        return self._doc("mc", fields), EXIT_YES if ans else EXIT_NO

    def mc_successors(self):
        v = parse_valuation(self.args.valuation)
        pi = parse_program(self.args.program)
        u = self._universe(v, pi)
        succ = self._timed("dlpa", ModelChecker(u).successors, v, pi)
        fields = {
            "valuation": _fmt_val(v), "program": self.args.program,
            "successors": [_fmt_val(w) for w in succ], "count": len(succ),
        }
        return self._doc("mc-successors", fields), EXIT_YES

    def check_encoding(self):
        n, a = self.args.universe_size, self.args
        sems = list(SEMANTICS) if a.sem == "all" else [a.sem]
        if a.exhaustive:
            afs, seed = list(all_attack_relations(n)), None
        else:
            seed = a.seed
            rng = rng_for(seed)
            afs = [random_af(rng, n, rng.choice((0.1, 0.2, 0.3, 0.5))) for _ in range(a.samples)]
        checked, bad = 0, []
        t = time.perf_counter()
        for sem in sems:
            for af in afs:
                rep = check_encoding(af, sem, None, a.bound)
                checked += 1
                if not rep.agrees:
                    bad.append(rep)
        self.timings["dlpa"] = round(time.perf_counter() - t, 6)
        fields = {
            "universe_size": n, "semantics": sems, "checked": checked,
            "disagreements": len(bad), "sampling": "exhaustive" if a.exhaustive else "random",
        }
        if bad:
            r = bad[0]
            fields["first_disagreement"] = {
                "sem": r.sem, "af": r.af, "oracle": r.oracle_set, "dlpa": r.encoding_set,
            }
        return self._doc("check-encoding", fields, seed), EXIT_YES if not bad else EXIT_INVARIANT

    def expressivity_check(self):
        target = CIAF0.completions()
        args = ("a", "b")
        riaf = self._timed("riaf_search", find_riaf_with_completions, target, args)
        # the cIAF built from a completion set gives back that set
        u = Universe(args)
        pool = all_afs(args)
        rng = rng_for(self.args.seed)
        targets = [target, []] + [rng.sample(pool, rng.randint(1, 6)) for _ in range(self.args.samples)]
        t = time.perf_counter()
        reproduced = all(
            ciaf_from_completion_set(g, u).completions() == sorted(set(g), key=ArgFramework.sort_key)
            for g in targets
        )
        self.timings["ciaf_rebuild"] = round(time.perf_counter() - t, 6)
        ok = riaf is None and reproduced
        fields = {
            "target": target, "riaf_found": riaf is not None,
            "ciaf_rebuild_targets": len(targets), "ciaf_rebuild_ok": reproduced, "answer": ok,
        }
        return self._doc("expressivity-check", fields, self.args.seed), EXIT_YES if ok else EXIT_NO


def _dlpa_completions(s, universe):
    if not isinstance(s, (CAF, CcIAF)):
        return dlpa_completions(s, universe)
    # every control argument of the (configured) structure is communicated first
    u = universe or s.universe()
    comm = sequence(AssignTrue(v) for v in u.aw_vars(s.ctrl_args))
    succ = ModelChecker(u).successors(s.valuation(), Seq(comm, s.make_comp(u)))
    return _canon(af_of_valuation(v) for v in succ)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--timings", action="store_true", help="include engine timings in the output")

    p = _Parser(prog="dlpa-arg", description="Abstract argumentation under uncertainty, via DL-PA.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cmd(name, help):
        return sub.add_parser(name, help=help, parents=[common])

    sems = list(SEMANTICS)
    c = cmd("extensions", "extensions of a plain AF")
    c.add_argument("file")
    c.add_argument("--sem", required=True, choices=sems)
    c.add_argument("--engine", choices=("oracle", "dlpa", "both"), default="oracle")
    c.add_argument("--bound", type=int, default=None, help="largest universe for the DL-PA engine")

    c = cmd("completions", "completions of an uncertain framework")
    c.add_argument("file")
    c.add_argument("--engine", choices=("direct", "dlpa", "both"), default="direct")
    c.add_argument("--count-only", action="store_true")
    c.add_argument("--cfg", default=None, help="control configuration, e.g. 'b,d' ('' for none)")

    for name, modes in (("query", ACCEPTANCE_MODES), ("control", CONTROL_MODES)):
        c = cmd(name, f"{'acceptance' if name == 'query' else 'controllability'} query")
        c.add_argument("file")
        c.add_argument("--sem", required=True, choices=sems)
        c.add_argument("--arg", required=True)
        c.add_argument("--mode", required=True, choices=modes)
        c.add_argument("--engine", choices=("direct", "dlpa", "both"), default="direct")

    c = cmd("settle", "fix an uncertain argument and print the resulting file")
    c.add_argument("file")
    c.add_argument("--arg", required=True)

    c = cmd("constraint-check", "possible/necessary structural constraint")
    c.add_argument("file")
    c.add_argument("--formula", required=True)
    c.add_argument("--mode", required=True, choices=("possible", "necessary"))
    c.add_argument("--enforce-aw", default=None, metavar="ARG")
    c.add_argument("--cfg", default=None)
    c.add_argument("--engine", choices=("direct", "dlpa", "both"), default="dlpa")

    c = cmd("mc", "evaluate a formula at a valuation")
    c.add_argument("--valuation", required=True, help="e.g. 'aw(a), att(a,b)'")
    c.add_argument("--formula", required=True)
    c.add_argument("--universe", default=None, help="argument names, default: those mentioned")

    c = cmd("mc-successors", "successor valuations of a program")
    c.add_argument("--valuation", required=True)
    c.add_argument("--program", required=True)
    c.add_argument("--universe", default=None)

    c = cmd("check-encoding", "compare the oracle and the DL-PA encodings")
    c.add_argument("--universe-size", type=int, required=True)
    g = c.add_mutually_exclusive_group()
    g.add_argument("--exhaustive", action="store_true")
    g.add_argument("--samples", type=int, default=50)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--sem", required=True, choices=sems + ["all"])
    c.add_argument("--bound", type=int, default=None)

    c = cmd("expressivity-check", "no rIAF matches the two-completion cIAF; cIAFs rebuild any set")
    c.add_argument("--samples", type=int, default=200)
    c.add_argument("--seed", type=int, default=0)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    app = App(args)
    method = getattr(app, args.command.replace("-", "_"))
    try:
        doc, code = method()
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except EngineDisagreement as e:
        print(f"engine disagreement: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except ResourceError as e:
        print(f"resource bound: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except DomainError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    out = doc if isinstance(doc, bytes) else emit_result(doc, args.format)
    sys.stdout.buffer.write(out)
    sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
