"""Random instances and streams shared by the test modules."""
from __future__ import annotations

import random

from enumdelay.engine import ScriptedEnumerator
from enumdelay.problems import Dag, DnfFormula, Gf2System, SetSystem

WORKED_SETS = SetSystem(4, ({1, 2}, {2, 3}, {1, 4}, {1, 3, 4}))
WORKED_CLOSURE = {
    frozenset(s) for s in
    ({1, 2}, {2, 3}, {1, 4}, {1, 3, 4}, {1, 2, 3}, {1, 2, 4}, {1, 2, 3, 4})
}
CLONE_SETS = SetSystem(4, ({1, 2, 4}, {2, 3}, {1, 3}))
CLONE_CLOSURE = {frozenset(s) for s in ({1, 2, 4}, {1, 2, 3, 4}, {2, 3}, {1, 3}, {1, 2, 3})}
WORKED_DNF = DnfFormula(3, ((1, -2), (2, 3)))


def as_sets(solutions) -> set[frozenset[int]]:
    return {frozenset(i for i, b in enumerate(s, start=1) if b) for s in solutions}


def random_set_system(rng: random.Random, max_n: int = 10, max_m: int = 8) -> SetSystem:
    n = rng.randint(1, max_n)
    m = rng.randint(0, max_m)
    sets = []
    for _ in range(m):
        size = rng.randint(0, n) if rng.random() < 0.1 else rng.randint(1, n)
        sets.append(frozenset(rng.sample(range(1, n + 1), size)))
    if sets and rng.random() < 0.1:
        sets.append(sets[0])
    return SetSystem(n, tuple(sets))


def random_dnf(rng: random.Random, max_n: int = 12, max_m: int = 10,
               distinct: bool = False) -> DnfFormula:
    n = rng.randint(1, max_n)
    m = rng.randint(0, max_m)
    terms: list[tuple[int, ...]] = []
    for _ in range(m):
        vs = rng.sample(range(1, n + 1), rng.randint(1, min(n, 5)))
        term = tuple(sorted((v if rng.random() < 0.5 else -v for v in vs), key=abs))
        if distinct and term in terms:
            continue
        terms.append(term)
    return DnfFormula(n, tuple(terms))


def random_dag(rng: random.Random, max_v: int = 14) -> Dag:
    V = rng.randint(1, max_v)
    order = list(range(1, V + 1))
    rng.shuffle(order)
    density = rng.random()
    arcs = [(order[i], order[j]) for i in range(V) for j in range(i + 1, V)
            if rng.random() < density * 0.6]
    return Dag(V, tuple(arcs), rng.randint(1, V), rng.randint(1, V))


def random_gf2(rng: random.Random, max_r: int = 10, max_n: int = 10) -> Gf2System:
    n = rng.randint(1, max_n)
    r = rng.randint(0, max_r)
    A = [tuple(rng.randint(0, 1) for _ in range(n)) for _ in range(r)]
    if rng.random() < 0.7:
        # consistent: right-hand side of a random point
        x = [rng.randint(0, 1) for _ in range(n)]
        b = [sum(a * v for a, v in zip(row, x)) % 2 for row in A]
    else:
        b = [rng.randint(0, 1) for _ in range(r)]
    return Gf2System(n, tuple(A), tuple(b))


def compliant_stream(rng: random.Random, ell: int, p: int, lead: int = 0,
                     tail: int = 0, distinct: bool = True) -> ScriptedEnumerator:
    """A script whose ``k``-th solution comes within ``k * p`` steps of the
    step producing the first one (counting that step as 1)."""
    first = lead + 1
    positions = [first]
    for k in range(2, ell + 1):
        lo = positions[-1] + 1
        hi = max(lo, first - 1 + k * p)
        positions.append(rng.randint(lo, hi))
    if distinct:
        sols = [(k,) for k in range(1, ell + 1)]
    else:
        sols = [(rng.randint(0, max(1, ell // 2)),) for _ in range(ell)]
    return ScriptedEnumerator(positions, sols, positions[-1] + tail)


def adversarial_stream(ell: int, p: int) -> ScriptedEnumerator:
    """Solutions ``1 .. ell-1`` back to back, the last one at step ``ell * p``."""
    return ScriptedEnumerator(list(range(1, ell)) + [ell * p])
