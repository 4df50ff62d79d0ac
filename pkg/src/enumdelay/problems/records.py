"""Validated in-memory instances."""
from __future__ import annotations

import graphlib
from dataclasses import dataclass
from typing import Iterable, Sequence


class InstanceError(ValueError):
    """An instance record violates its invariants."""


def set_to_bits(elements: Iterable[int], n: int) -> tuple[int, ...]:
    bits = [0] * n
    for e in elements:
        bits[e - 1] = 1
    return tuple(bits)


def bits_to_set(bits: Sequence[int]) -> tuple[int, ...]:
    return tuple(i for i, b in enumerate(bits, start=1) if b)


def mask_to_bits(mask: int, n: int) -> tuple[int, ...]:
    """Bit ``e - 1`` of ``mask`` is element ``e``."""
    return tuple((mask >> i) & 1 for i in range(n))


def bits_to_mask(bits: Sequence[int]) -> int:
    mask = 0
    for i, b in enumerate(bits):
        if b:
            mask |= 1 << i
    return mask


@dataclass(frozen=True)
class SetSystem:
    n: int
    sets: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(frozenset(s) for s in self.sets))
        if self.n < 0:
            raise InstanceError("ground set size must be >= 0")
        for i, s in enumerate(self.sets, start=1):
            bad = [e for e in s if not 1 <= e <= self.n]
            if bad:
                raise InstanceError(f"set {i} has elements outside 1..{self.n}: {sorted(bad)}")

    @property
    def m(self) -> int:
        return len(self.sets)

    @property
    def masks(self) -> list[int]:
        return [bits_to_mask(set_to_bits(s, self.n)) for s in self.sets]


@dataclass(frozen=True)
class DnfFormula:
    """Terms are tuples of signed variable indices: ``-2`` is the negation of X2."""

    n: int
    terms: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(tuple(t) for t in self.terms))
        for i, term in enumerate(self.terms, start=1):
            seen = set()
            for lit in term:
                v = abs(lit)
                if lit == 0 or v > self.n:
                    raise InstanceError(f"term {i}: literal {lit} outside 1..{self.n}")
                if v in seen:
                    raise InstanceError(f"term {i} mentions variable {v} twice")
                seen.add(v)

    @property
    def m(self) -> int:
        return len(self.terms)

    @property
    def size(self) -> int:
        return sum(len(t) for t in self.terms)

    def evaluate(self, bits: Sequence[int]) -> bool:
        return any(all(bits[abs(l) - 1] == (l > 0) for l in term) for term in self.terms)


@dataclass(frozen=True)
class Dag:
    n_vertices: int
    arcs: tuple[tuple[int, int], ...]
    s: int
    t: int

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple((u, v) for u, v in self.arcs))
        V = self.n_vertices
        for x in (self.s, self.t):
            if not 1 <= x <= V:
                raise InstanceError(f"vertex {x} outside 1..{V}")
        for u, v in self.arcs:
            if not (1 <= u <= V and 1 <= v <= V):
                raise InstanceError(f"arc ({u}, {v}) has an endpoint outside 1..{V}")
        sorter = graphlib.TopologicalSorter({v: [] for v in range(1, V + 1)})
        for u, v in self.arcs:
            sorter.add(v, u)
        try:
            sorter.prepare()
        except graphlib.CycleError as exc:
            raise InstanceError(f"graph has a cycle through {exc.args[1]}") from None

    def successors(self) -> dict[int, list[int]]:
        succ: dict[int, list[int]] = {v: [] for v in range(1, self.n_vertices + 1)}
        for u, v in self.arcs:
            succ[u].append(v)
        return succ


@dataclass(frozen=True)
class Gf2System:
    """``A x = b`` over GF(2); ``A`` has ``r`` rows of ``n`` bits."""

    n: int
    A: tuple[tuple[int, ...], ...]
    b: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "A", tuple(tuple(row) for row in self.A))
        object.__setattr__(self, "b", tuple(self.b))
        if len(self.A) != len(self.b):
            raise InstanceError(f"{len(self.A)} rows but {len(self.b)} right-hand sides")
        for i, row in enumerate(self.A, start=1):
            if len(row) != self.n:
                raise InstanceError(f"row {i} has {len(row)} entries, expected {self.n}")
            if any(x not in (0, 1) for x in row):
                raise InstanceError(f"row {i} is not a bit vector")
        if any(x not in (0, 1) for x in self.b):
            raise InstanceError("right-hand side is not a bit vector")

    @property
    def r(self) -> int:
        return len(self.A)

    def satisfied_by(self, x: Sequence[int]) -> bool:
        return all(sum(a & v for a, v in zip(row, x)) % 2 == rhs for row, rhs in zip(self.A, self.b))
