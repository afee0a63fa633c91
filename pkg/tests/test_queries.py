import pytest

from dlpa_arg import queries
from dlpa_arg.control import CAF
from dlpa_arg.dlpa import BOT, parse_formula
from dlpa_arg.errors import DomainError, EngineDisagreement
from dlpa_arg.generators import random_caf, random_ciaf, random_iaf, random_riaf, rng_for
from dlpa_arg.oracle import SEMANTICS, ArgFramework, credulous, extensions
from dlpa_arg.queries import (
    ACCEPTANCE_MODES, CONTROL_MODES, QueryResult, cross_check, run_query,
)
from dlpa_arg.uncertainty import CIAF, IAF
from dlpa_arg.worked_examples import A0, CAF0, CIAF0, IAF0, RIAF0


def test_iaf0_examples():
    r = run_query(IAF0, "st", "a", "pca")
    assert r.answer is False and r.witness is None
    r = run_query(IAF0, "st", "b", "pca", "both")
    assert r.answer is True
    assert r.witness.completion == ArgFramework("abd", {("b", "a"), ("d", "a")})
    assert r.witness.extension == frozenset("bd")


def test_ciaf0_examples():
    assert run_query(CIAF0, "gr", "a", "pca", "both").answer is True
    assert run_query(CIAF0, "gr", "a", "nsa", "both").answer is False


def test_af_as_iaf():
    iaf = IAF(A0.args, A0.attacks)
    for sem in SEMANTICS:
        for a in sorted(A0.args):
            want = credulous(A0, sem, a)
            assert run_query(iaf, sem, a, "nca").answer == want
            assert run_query(iaf, sem, a, "pca").answer == want


def test_riaf0_nca_engines_agree():
    r = cross_check(RIAF0, "st", "b", "nca")
    assert r.engine == "both"
    assert set(r.timings) == {"direct", "dlpa"}


def test_inconsistent_ciaf_quantifies_over_nothing():
    c = CIAF("a", BOT)
    for mode in ACCEPTANCE_MODES:
        want = mode in ("nca", "nsa")
        assert run_query(c, "gr", "a", mode, "both").answer is want


def test_caf0_nscon():
    r = run_query(CAF0, "st", "a", "nscon", "both")
    assert r.answer is True
    assert r.witness.configuration == frozenset()


@pytest.mark.parametrize("sem", ["st", "gr", "pr"])
def test_caf0_all_control_modes_agree(sem):
    for mode in CONTROL_MODES:
        cross_check(CAF0, sem, "a", mode)


def test_empty_control_is_acceptance_on_underlying_riaf():
    caf = CAF(CAF0.fixed_args | {"b", "d"}, CAF0.fixed_atts | CAF0.ctrl_atts, CAF0.unc_args,
              CAF0.unc_atts, CAF0.sym_atts)
    riaf = caf.underlying_riaf()
    for sem in ("st", "co", "gr"):
        for mode in CONTROL_MODES:
            inner = queries._INNER[mode]
            assert run_query(caf, sem, "a", mode).answer == run_query(riaf, sem, "a", inner).answer


# ---- preconditions ------------------------------------------------------------------------


def test_preconditions():
    with pytest.raises(DomainError, match="fixed"):
        run_query(IAF0, "st", "c", "pca")
    with pytest.raises(DomainError):
        run_query(IAF0, "st", "z", "pca")
    loose = CIAF("ab", parse_formula("aw(b)"))
    with pytest.raises(DomainError, match="missing from the completion"):
        run_query(loose, "st", "a", "pca", "dlpa")
    with pytest.raises(DomainError, match="fixed argument of the CAF"):
        run_query(CAF0, "st", "b", "nscon")
    with pytest.raises(DomainError):
        run_query(IAF0, "xx", "a", "pca")
    with pytest.raises(DomainError):
        run_query(IAF0, "st", "a", "sometimes")
    with pytest.raises(DomainError):
        run_query(IAF0, "st", "a", "nscon")


def test_disagreement_is_loud(monkeypatch):
    def wrong(structure, sem, a, mode, universe=None):
        return QueryResult(True, None, "dlpa")

    monkeypatch.setattr(queries, "acceptance_dlpa", wrong)
    with pytest.raises(EngineDisagreement, match="direct says False"):
        cross_check(IAF0, "st", "a", "pca")


# ---- worked structures, every semantics and mode ---------------------------------------


@pytest.mark.parametrize("sem", SEMANTICS)
def test_worked_structures_engines_agree(sem):
    for s, args in ((IAF0, "abd"), (RIAF0, "abd"), (CIAF0, "ab")):
        for a in args:
            for mode in ACCEPTANCE_MODES:
                cross_check(s, sem, a, mode)


# ---- properties on random instances -------------------------------------------------------


def reverify(structure, sem, a, mode, r):
    w = r.witness
    if queries.is_control_mode(mode):
        assert w.configuration <= structure.ctrl_args
        structure = structure.under_configuration(w.configuration)
        mode = queries._INNER[mode]
    if w.completion is not None:
        assert w.completion in structure.completions()
        exts = extensions(w.completion, sem)
        if mode == "pca":
            assert w.extension in exts and a in w.extension
        elif mode == "nsa":
            assert w.extension in exts and a not in w.extension
        elif mode == "psa":
            assert all(a in e for e in exts)
        elif mode == "nca":
            assert not any(a in e for e in exts)


def _random_structures(rng, count):
    makers = [
        lambda: random_iaf(rng, rng.randint(2, 4), anchor="a"),
        lambda: random_riaf(rng, rng.randint(2, 4), anchor="a"),
        lambda: random_ciaf(rng, rng.randint(1, 3), force="a"),
    ]
    for i in range(count):
        yield makers[i % 3]()


def test_witnesses_reverify():
    rng = rng_for(61)
    for s in _random_structures(rng, 30):
        for sem in ("st", "co", "gr", "pr"):
            for mode in ACCEPTANCE_MODES:
                for engine in ("direct", "dlpa"):
                    r = run_query(s, sem, "a", mode, engine)
                    if r.witness is not None:
                        reverify(s, sem, "a", mode, r)
                    if engine == "direct":
                        # existential answers and universal refutations carry witnesses
                        assert (r.witness is not None) == (r.answer == (mode in ("pca", "psa")))
    for _ in range(15):
        caf = random_caf(rng, rng.randint(2, 4), anchor="a")
        for mode in CONTROL_MODES:
            for engine in ("direct", "dlpa"):
                r = run_query(caf, "gr", "a", mode, engine)
                assert (r.witness is not None) == r.answer
                if r.answer:
                    reverify(caf, "gr", "a", mode, r)


def test_mode_lattice():
    rng = rng_for(62)
    for s in _random_structures(rng, 45):
        comps = s.completions()
        for sem in SEMANTICS:
            if sem in ("id", "ea") and len(s.arguments) > 3:
                continue
            ans = {m: run_query(s, sem, "a", m).answer for m in ACCEPTANCE_MODES}
            if not comps:
                continue
            if ans["nsa"]:
                assert ans["psa"]
            if ans["nca"]:
                assert ans["pca"]
            if all(extensions(c, sem) for c in comps):
                # with at least one extension everywhere, sceptical implies credulous
                if ans["nsa"]:
                    assert ans["nca"]
                if ans["psa"]:
                    assert ans["pca"]


def test_engines_agree_on_random_instances():
    rng = rng_for(63)
    for s in _random_structures(rng, 30):
        for _ in range(3):
            sem = rng.choice(SEMANTICS)
            if sem in ("id", "ea", "se", "stg") and len(s.arguments) > 3:
                sem = "co"
            cross_check(s, sem, "a", rng.choice(ACCEPTANCE_MODES))
