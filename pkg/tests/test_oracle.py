import pytest

from dlpa_arg.errors import DomainError, ResourceError
from dlpa_arg.generators import all_attack_relations, random_af, rng_for
from dlpa_arg.oracle import (
    SEMANTICS, ArgFramework, attacked_by, credulous, defends, extensions, is_admissible,
    is_conflict_free, range_of, sceptical,
)
from dlpa_arg.worked_examples import A0, A1, A2


def S(*xs):
    return [frozenset(x) for x in xs]


def test_a0_semantics():
    both = S("be", "cd")
    for sem in ("st", "pr", "se", "stg"):
        assert extensions(A0, sem) == both
    assert extensions(A0, "co") == S("", "be", "cd")
    for sem in ("gr", "id", "ea"):
        assert extensions(A0, sem) == S("")
    assert sorted(extensions(A0, "na"), key=sorted) == sorted(S("ac", "ae", "be", "bd", "cd"), key=sorted)


def test_a1_semantics():
    assert extensions(A1, "st") == []
    assert extensions(A1, "se") == S("ac")


def test_a2_semantics():
    assert frozenset("a") in extensions(A2, "pr")
    assert frozenset("a") not in extensions(A2, "st")
    assert frozenset("a") not in extensions(A2, "se")
    assert extensions(A2, "ea") == S("bd")
    assert extensions(A2, "id") == S("")


def test_empty_af():
    for sem in SEMANTICS:
        assert extensions(ArgFramework(), sem) == S("")


def test_range_examples():
    assert attacked_by(A0, "cd") == frozenset("abe")
    assert range_of(A0, "cd") == A0.args
    assert attacked_by(A0, "") == frozenset() == range_of(A0, "")
    assert attacked_by(A1, "d") == frozenset("bd")


def test_conflict_and_admissibility_examples():
    assert is_conflict_free(A0, "be") and is_admissible(A0, "be")
    assert is_admissible(A0, "")
    assert not is_conflict_free(A0, "ab")
    assert defends(A0, "c", "c")
    assert not defends(A0, "", "a")


def test_outside_members_are_domain_errors():
    with pytest.raises(DomainError):
        range_of(A0, "z")
    with pytest.raises(DomainError):
        is_admissible(A0, "az")


def test_acceptance_examples():
    assert credulous(A0, "co", "b") and not sceptical(A0, "co", "b")
    for x in "abcde":
        assert not sceptical(A0, "gr", x)
    loop = ArgFramework("a", {("a", "a")})
    assert extensions(loop, "st") == []
    assert sceptical(loop, "st", "a") and not credulous(loop, "st", "a")


def test_acceptance_needs_member():
    with pytest.raises(DomainError):
        credulous(A0, "st", "z")


def test_bound_is_enforced():
    with pytest.raises(ResourceError):
        extensions(ArgFramework("abcd"), "st", bound=3)


def test_restriction_at_construction():
    af = ArgFramework("ab", {("a", "b"), ("a", "z")})
    assert af.attacks == frozenset({("a", "b")})


def test_unknown_semantics():
    with pytest.raises(DomainError):
        extensions(A0, "xx")


def check_invariants(af):
    ext = {sem: extensions(af, sem) for sem in SEMANTICS}
    for sem in ("co", "gr", "pr", "se", "id", "ea", "na", "stg"):
        assert ext[sem], (sem, af)
    for sem in ("gr", "id", "ea"):
        assert len(ext[sem]) == 1
    if ext["st"]:
        assert ext["st"] == ext["se"] == ext["stg"]
    for sem in ("st", "co", "gr", "pr", "se", "id", "ea"):
        assert all(is_admissible(af, e) for e in ext[sem])
    for sem in ("na", "stg"):
        assert all(is_conflict_free(af, e) for e in ext[sem])
    (g,), (i,), (e,) = ext["gr"], ext["id"], ext["ea"]
    assert all(g <= c for c in ext["co"])
    assert all(i <= p for p in ext["pr"])
    assert all(e <= s for s in ext["se"])
    assert set(ext["st"]) <= set(ext["stg"])
    assert set(ext["pr"]) <= set(ext["co"]) and set(ext["se"]) <= set(ext["co"])
    for n in ext["na"]:
        for x in af.args - n:
            assert not is_conflict_free(af, n | {x})
    # canonical order
    for sem in SEMANTICS:
        assert ext[sem] == sorted(ext[sem], key=lambda s: (len(s), sorted(s)))


def test_invariants_exhaustive_three_arguments():
    count = 0
    for af in all_attack_relations(3):
        check_invariants(af)
        count += 1
    assert count == 512


def test_invariants_random():
    rng = rng_for(11)
    for i in range(500):
        check_invariants(random_af(rng, rng.randint(1, 6), rng.choice((0.15, 0.3, 0.45))))
