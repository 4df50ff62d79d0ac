"""Brute-force reference answers and trace comparison."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .engine import Solution, Trace
from .problems.records import Dag, DnfFormula, Gf2System, SetSystem, mask_to_bits


class InstanceTooLarge(ValueError):
    pass


SolutionSet = list


def _canonical(solutions: Iterable[Solution]) -> SolutionSet:
    return sorted(set(solutions))


def brute_union(x: SetSystem) -> SolutionSet:
    """Unions over all nonempty index subsets, via a subset table."""
    m = x.m
    if m > 24:
        raise InstanceTooLarge(f"{m} sets, limit 24")
    if m == 0:
        return []
    masks = x.masks
    table = [0] * (1 << m)
    for I in range(1, 1 << m):
        low = I & -I
        table[I] = table[I ^ low] | masks[low.bit_length() - 1]
    return _canonical(mask_to_bits(u, x.n) for u in set(table[1:]))


def _all_vectors(n: int) -> np.ndarray:
    """Rows are all of {0,1}^n in lexicographic order, column 0 first."""
    idx = np.arange(1 << n, dtype=np.int64)
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    return ((idx[:, None] >> shifts[None, :]) & 1).astype(np.int8)


def brute_dnf(D: DnfFormula) -> SolutionSet:
    if D.n > 24:
        raise InstanceTooLarge(f"{D.n} variables, limit 24")
    X = _all_vectors(D.n)
    sat = np.zeros(len(X), dtype=bool)
    for term in D.terms:
        ok = np.ones(len(X), dtype=bool)
        for lit in term:
            ok &= X[:, abs(lit) - 1] == (1 if lit > 0 else 0)
        sat |= ok
    return [tuple(int(b) for b in row) for row in X[sat]]


def brute_paths(g: Dag, limit: int = 1 << 20) -> SolutionSet:
    succ = g.successors()
    out = []
    stack = [(g.s,)]
    while stack:
        path = stack.pop()
        if path[-1] == g.t:
            out.append(path)
            if len(out) > limit:
                raise InstanceTooLarge(f"more than {limit} paths")
            continue
        for v in succ[path[-1]]:
            stack.append(path + (v,))
    return _canonical(out)


def brute_gf2(sys: Gf2System) -> SolutionSet:
    if sys.n > 20:
        raise InstanceTooLarge(f"{sys.n} unknowns, limit 20")
    X = _all_vectors(sys.n)
    ok = np.ones(len(X), dtype=bool)
    for row, rhs in zip(sys.A, sys.b):
        ok &= (X @ np.array(row, dtype=np.int64)) % 2 == rhs
    return [tuple(int(b) for b in v) for v in X[ok]]


def reflected_gray_code(n: int) -> list[tuple[int, ...]]:
    """Words of length ``n-1`` prefixed by 0, then the same words in
    reverse order prefixed by 1."""
    if n == 0:
        return [()]
    prev = reflected_gray_code(n - 1)
    return [(0,) + w for w in prev] + [(1,) + w for w in reversed(prev)]


def union_closure_fixpoint(x: SetSystem) -> SolutionSet:
    """Closure by repeated pairwise union until nothing changes."""
    known = set(x.masks)
    while True:
        new = {a | b for a in known for b in known} - known
        if not new:
            return _canonical(mask_to_bits(u, x.n) for u in known)
        known |= new


@dataclass
class CompareReport:
    missing: list = field(default_factory=list)
    extra: list = field(default_factory=list)
    duplicated: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.missing or self.extra or self.duplicated)

    def as_lines(self) -> list[str]:
        return [f"missing={len(self.missing)}", f"extra={len(self.extra)}",
                f"duplicated={len(self.duplicated)}"]


def compare(trace: Trace | Sequence[Solution], reference: Iterable[Solution]) -> CompareReport:
    sols = trace.solutions if isinstance(trace, Trace) else list(trace)
    counts = Counter(sols)
    ref = set(reference)
    return CompareReport(
        missing=sorted(ref - counts.keys()),
        extra=sorted(counts.keys() - ref),
        duplicated=sorted(s for s, c in counts.items() if c > 1),
    )
