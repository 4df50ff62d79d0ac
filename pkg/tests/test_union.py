import random

import pytest
from hypothesis import given, settings, strategies as st

from enumdelay.engine import StoreBudgetExceeded, run, verify_no_duplicates
from enumdelay.oracle import brute_union, union_closure_fixpoint
from enumdelay.problems import (
    SetSystem, avoiding_union, children, closure_saturate, is_union_closure_member, parent,
    union_extension, union_flashlight, union_reverse_search, union_supergraph,
)

from helpers import (
    CLONE_CLOSURE, CLONE_SETS, WORKED_CLOSURE, WORKED_SETS, as_sets, random_set_system,
)

METHODS = (union_flashlight, union_supergraph, union_reverse_search, closure_saturate)


@pytest.mark.parametrize("method", METHODS)
def test_worked_instance(method):
    t = run(method(WORKED_SETS))
    assert len(t) == 7
    assert as_sets(t.solutions) == WORKED_CLOSURE


@pytest.mark.parametrize("method", METHODS)
def test_clone_instance(method):
    assert as_sets(run(method(CLONE_SETS)).solutions) == CLONE_CLOSURE


@pytest.mark.parametrize("method", METHODS)
def test_trivial_systems(method):
    assert run(method(SetSystem(3, ()))).solutions == []
    assert as_sets(run(method(SetSystem(1, ({1},)))).solutions) == {frozenset({1})}


def test_empty_input_set_is_a_solution_only_when_given():
    x = SetSystem(2, (set(), {1}))
    for method in METHODS:
        assert as_sets(run(method(x)).solutions) == {frozenset(), frozenset({1})}
    assert brute_union(x) == [(0, 0), (1, 0)]


def test_extension_examples():
    assert avoiding_union(WORKED_SETS, {2}) == {1, 3, 4}
    assert union_extension(WORKED_SETS, {1}, {2})
    assert avoiding_union(WORKED_SETS, {1, 3}) == frozenset()
    assert not union_extension(WORKED_SETS, {2}, {1, 3})
    assert union_extension(WORKED_SETS, set(), set())


def test_extension_matches_brute_force():
    rng = random.Random(1)
    for _ in range(300):
        x = random_set_system(rng, max_n=6)
        closure = as_sets(brute_union(x))
        A = set(rng.sample(range(1, x.n + 1), rng.randint(0, x.n)))
        rest = [e for e in range(1, x.n + 1) if e not in A]
        B = set(rng.sample(rest, rng.randint(0, len(rest))))
        # the largest solution avoiding B, when there is one, contains A iff some solution does
        expected = any(A <= y and not (y & B) for y in closure)
        avoiding = [y for y in closure if not y & B]
        if avoiding:
            assert union_extension(x, A, B) == expected
            assert avoiding_union(x, B) == frozenset().union(*avoiding)


def test_reverse_search_forest_on_worked_instance():
    masks = WORKED_SETS.masks
    roots = [s for s in WORKED_SETS.sets if parent(masks, sum(1 << (e - 1) for e in s)) is None]
    assert [set(r) for r in roots] == [{1, 2}, {2, 3}, {1, 4}]
    assert set(children(WORKED_SETS, {1, 2})) == {frozenset({1, 2, 3}), frozenset({1, 2, 4})}
    assert children(WORKED_SETS, {1, 2, 3}) == [frozenset({1, 2, 3, 4})]
    assert children(WORKED_SETS, {1, 4}) == [frozenset({1, 3, 4})]
    assert children(WORKED_SETS, {2, 3}) == []


def test_parent_rejects_non_members():
    with pytest.raises(ValueError):
        parent(WORKED_SETS.masks, 0b0100)


@settings(max_examples=300, deadline=None)
@given(st.randoms(use_true_random=False))
def test_parent_structure(rng):
    x = random_set_system(rng)
    masks = x.masks
    for y in brute_union(x):
        z = sum(1 << i for i, b in enumerate(y) if b)
        par = parent(masks, z)
        if par is None:
            assert z in masks
            continue
        assert par & z == par and par != z
        assert is_union_closure_member(x, (e + 1 for e in range(x.n) if par >> e & 1))
        elems = frozenset(e + 1 for e in range(x.n) if par >> e & 1)
        assert frozenset(e + 1 for e in range(x.n) if z >> e & 1) in children(x, elems)


@settings(max_examples=1000, deadline=None)
@given(st.randoms(use_true_random=False))
def test_methods_agree_with_brute_force(rng):
    x = random_set_system(rng)
    expected = brute_union(x)
    assert union_closure_fixpoint(x) == expected
    for method in METHODS:
        t = run(method(x))
        assert verify_no_duplicates(t)[0]
        assert sorted(t.solutions) == expected


@settings(max_examples=200, deadline=None)
@given(st.randoms(use_true_random=False))
def test_closure_soundness_and_idempotence(rng):
    x = random_set_system(rng, max_n=7, max_m=6)
    closure = as_sets(run(union_flashlight(x)).solutions)
    assert all(is_union_closure_member(x, y) for y in closure)
    again = SetSystem(x.n, tuple(sorted(closure, key=sorted)))
    assert as_sets(brute_union(again)) == closure


def test_intersection_by_duality():
    x = SetSystem(3, ({1, 2}, {2, 3}))
    assert as_sets(run(closure_saturate(x, "intersection")).solutions) == {
        frozenset({1, 2}), frozenset({2, 3}), frozenset({2})}
    assert as_sets(run(closure_saturate(SetSystem(2, ({1},)), "intersection")).solutions) == {
        frozenset({1})}
    with pytest.raises(ValueError):
        closure_saturate(x, "xor")


def test_intersection_matches_brute_force():
    rng = random.Random(4)
    for _ in range(200):
        x = random_set_system(rng, max_n=7, max_m=6)
        full = frozenset(range(1, x.n + 1))
        dual = SetSystem(x.n, tuple(full - s for s in x.sets))
        expected = {full - y for y in as_sets(brute_union(dual))}
        assert as_sets(run(closure_saturate(x, "intersection")).solutions) == expected


def test_store_budgets():
    x = SetSystem(4, ({1}, {2}, {3}, {4}))
    with pytest.raises(StoreBudgetExceeded):
        run(union_supergraph(x, max_store=5))
    with pytest.raises(StoreBudgetExceeded):
        run(closure_saturate(x, max_store=5))
    assert len(run(union_supergraph(x, max_store=15))) == 15


def test_duplicate_input_sets():
    x = SetSystem(3, ({1}, {1}, {2, 3}))
    for method in METHODS:
        t = run(method(x))
        assert verify_no_duplicates(t)[0]
        assert as_sets(t.solutions) == {frozenset({1}), frozenset({2, 3}), frozenset({1, 2, 3})}


def test_snapshot_replay_for_every_method():
    rng = random.Random(12)
    for _ in range(40):
        x = random_set_system(rng)
        for method in METHODS:
            e = method(x)
            for _ in range(rng.randint(0, 10)):
                e.step()
            state = e.snapshot()
            first = [e.step() for _ in range(30)]
            e.restore(state)
            assert [e.step() for _ in range(30)] == first
