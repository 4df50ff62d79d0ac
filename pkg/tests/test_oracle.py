import pytest

from enumdelay.engine import Trace
from enumdelay.oracle import (
    InstanceTooLarge, brute_dnf, brute_gf2, brute_paths, brute_union, compare,
    reflected_gray_code, union_closure_fixpoint,
)
from enumdelay.problems import Dag, DnfFormula, Gf2System, SetSystem

from helpers import WORKED_CLOSURE, WORKED_SETS, as_sets


def test_brute_union():
    assert as_sets(brute_union(WORKED_SETS)) == WORKED_CLOSURE
    assert brute_union(SetSystem(3, ())) == []
    assert brute_union(SetSystem(3, ({2},))) == [(0, 1, 0)]
    assert union_closure_fixpoint(WORKED_SETS) == brute_union(WORKED_SETS)


def test_size_limits():
    with pytest.raises(InstanceTooLarge):
        brute_union(SetSystem(1, ({1},) * 25))
    with pytest.raises(InstanceTooLarge):
        brute_dnf(DnfFormula(25, ()))
    with pytest.raises(InstanceTooLarge):
        brute_gf2(Gf2System(21, (), ()))
    with pytest.raises(InstanceTooLarge):
        brute_paths(Dag(3, ((1, 2), (1, 3), (2, 3)), 1, 3), limit=1)


def test_oracles_are_sorted_sets():
    for out in (brute_gf2(Gf2System(3, ((1, 1, 0),), (1,))),
                brute_dnf(DnfFormula(3, ((2,), (-1, 3)))),
                brute_union(WORKED_SETS)):
        assert out == sorted(set(out))


def test_reflected_gray_code():
    assert reflected_gray_code(2) == [(0, 0), (0, 1), (1, 1), (1, 0)]


def test_compare():
    ref = [(0,), (1,)]
    assert compare(Trace([(1, (0,)), (2, (1,))]), ref).ok
    r = compare([(0,)], ref)
    assert r.missing == [(1,)] and not r.ok
    r = compare([(0,), (1,), (0,)], ref)
    assert r.duplicated == [(0,)] and r.missing == [] and r.extra == []
    assert compare([(2,)], ref).extra == [(2,)]
    assert compare([], []).as_lines() == ["missing=0", "extra=0", "duplicated=0"]
