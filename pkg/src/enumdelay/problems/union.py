"""Union closure of a set system.

The solutions for ``x = (s_1, ..., s_m)`` are the unions ``s_I`` over
nonempty index sets ``I``.  The empty set is a solution only when some input
set is empty.  Solutions are bit tuples, position ``e`` for element ``e``.

Four enumerators: flashlight search, traversal of the supergraph whose arcs
are ``y -> y | s_i``, reverse search over a spanning forest of that graph,
and naive saturation under pairwise union (or intersection).
"""
from __future__ import annotations

from typing import Literal

from ..engine import CONTINUE, DONE, Emit, Enumerator, StepOutcome, StoreBudgetExceeded
from ..flashlight import BinaryPartitionProblem, FlashlightEnumerator
from .records import SetSystem, mask_to_bits


def avoiding_union(x: SetSystem, B) -> frozenset[int]:
    """Union of the input sets disjoint from ``B``."""
    B = frozenset(B)
    out: set[int] = set()
    for s in x.sets:
        if not s & B:
            out |= s
    return frozenset(out)


def union_extension(x: SetSystem, A, B) -> bool:
    return frozenset(A) <= avoiding_union(x, B)


def is_union_closure_member(x: SetSystem, y) -> bool:
    """``y`` is the union of the input sets it contains, and contains one."""
    y = frozenset(y)
    inside = [s for s in x.sets if s <= y]
    return bool(inside) and frozenset().union(*inside) == y


class UnionOracle(BinaryPartitionProblem):
    """Incremental extension test for the union closure.

    Position ``e`` decides whether element ``e`` is in (``A``) or out
    (``B``).  A prefix extends iff some input set avoids ``B`` and ``A`` is
    covered by the sets avoiding ``B``.  Counters per element and per set
    make each decision cost one pass over the sets it touches.
    """

    def __init__(self, x: SetSystem):
        self.x = x
        self.n = x.n
        self.sets = [sorted(s) for s in x.sets]
        self.containing: list[list[int]] = [[] for _ in range(x.n + 1)]
        for i, s in enumerate(self.sets):
            for e in s:
                self.containing[e].append(i)
        self.root()

    def root(self) -> bool:
        self.blocked = [0] * len(self.sets)
        self.cover = [0] * (self.n + 1)
        for s in self.sets:
            for e in s:
                self.cover[e] += 1
        self.unblocked = len(self.sets)
        self.in_a = [False] * (self.n + 1)
        self.uncovered = 0  # elements of A with no unblocked set
        self.decisions: list[int] = []
        return self.unblocked > 0

    def _ok(self) -> bool:
        return self.uncovered == 0 and self.unblocked > 0

    def push(self, bit: int) -> None:
        e = len(self.decisions) + 1
        self.decisions.append(bit)
        if bit:
            self.in_a[e] = True
            if self.cover[e] == 0:
                self.uncovered += 1
            return
        cover, in_a = self.cover, self.in_a
        for i in self.containing[e]:
            self.blocked[i] += 1
            if self.blocked[i] == 1:
                self.unblocked -= 1
                for a in self.sets[i]:
                    cover[a] -= 1
                    if cover[a] == 0 and in_a[a]:
                        self.uncovered += 1

    def pop(self) -> None:
        e = len(self.decisions)
        bit = self.decisions.pop()
        if bit:
            self.in_a[e] = False
            if self.cover[e] == 0:
                self.uncovered -= 1
            return
        cover, in_a = self.cover, self.in_a
        for i in self.containing[e]:
            self.blocked[i] -= 1
            if self.blocked[i] == 0:
                self.unblocked += 1
                for a in self.sets[i]:
                    if cover[a] == 0 and in_a[a]:
                        self.uncovered -= 1
                    cover[a] += 1

    def probe(self, bit: int) -> bool:
        self.push(bit)
        ok = self._ok()
        self.pop()
        return ok

    def is_solution(self, bits) -> bool:
        return is_union_closure_member(self.x, (e for e, b in enumerate(bits, start=1) if b))

    def get_state(self):
        return tuple(self.decisions)

    def set_state(self, state) -> None:
        self.root()
        for bit in state:
            self.push(bit)


def union_flashlight(x: SetSystem) -> FlashlightEnumerator:
    return FlashlightEnumerator(UnionOracle(x))


class UnionSupergraph(Enumerator):
    """Depth-first traversal from the empty set along ``y -> y | s_i``.

    One step examines one arc.  Every vertex reached through at least one
    arc is output when first discovered; discovered vertices are stored.
    """

    supports_snapshot = True

    def __init__(self, x: SetSystem, max_store: int | None = None):
        self.x = x
        self.masks = x.masks
        self.max_store = max_store
        self.seen: set[int] = set()
        self.stack: list[list[int]] = [[0, 0]]  # (vertex, next arc index)

    def step(self) -> StepOutcome:
        stack = self.stack
        while stack:
            top = stack[-1]
            y, i = top
            if i == len(self.masks):
                stack.pop()
                continue
            top[1] = i + 1
            z = y | self.masks[i]
            if z in self.seen:
                return CONTINUE
            if self.max_store is not None and len(self.seen) >= self.max_store:
                raise StoreBudgetExceeded(f"more than {self.max_store} stored vertices")
            self.seen.add(z)
            stack.append([z, 0])
            return Emit(mask_to_bits(z, self.x.n))
        return DONE

    def snapshot(self):
        return frozenset(self.seen), tuple(tuple(f) for f in self.stack)

    def restore(self, state) -> None:
        seen, stack = state
        self.seen = set(seen)
        self.stack = [list(f) for f in stack]


def union_supergraph(x: SetSystem, max_store: int | None = None) -> UnionSupergraph:
    return UnionSupergraph(x, max_store)


def parent(masks: list[int], z: int) -> int | None:
    """Canonical parent of ``z`` in the spanning forest, or ``None`` for roots.

    With ``I`` the indices of input sets inside ``z``, let ``k`` be the
    first index of ``I`` at which the running union of ``I`` reaches ``z``;
    the parent is the union of the indices of ``I`` before ``k``.
    """
    acc = 0
    for s in masks:
        if s & ~z:
            continue
        if acc | s == z:
            return acc or None
        acc |= s
    raise ValueError("not a member of the closure")


class UnionReverseSearch(Enumerator):
    """Depth-first walk of the parent forest without a visited set.

    Roots are the input sets whose parent is undefined.  The children of
    ``z`` are the sets ``z | s_i`` whose parent is ``z``, each taken at the
    first index producing it.  One step is one candidate test.
    """

    supports_snapshot = True

    def __init__(self, x: SetSystem):
        self.x = x
        self.masks = x.masks
        self.next_root = 0
        self.stack: list[list[int]] = []

    def _first_index(self, z: int, child: int, i: int) -> bool:
        return all(z | self.masks[j] != child for j in range(i))

    def step(self) -> StepOutcome:
        masks = self.masks
        stack = self.stack
        while stack:
            top = stack[-1]
            z, i = top
            if i == len(masks):
                stack.pop()
                continue
            top[1] = i + 1
            child = z | masks[i]
            if child != z and parent(masks, child) == z and self._first_index(z, child, i):
                stack.append([child, 0])
                return Emit(mask_to_bits(child, self.x.n))
            return CONTINUE
        while self.next_root < len(masks):
            k = self.next_root
            self.next_root += 1
            s = masks[k]
            if parent(masks, s) is None and s not in masks[:k]:
                stack.append([s, 0])
                return Emit(mask_to_bits(s, self.x.n))
            return CONTINUE
        return DONE

    def snapshot(self):
        return self.next_root, tuple(tuple(f) for f in self.stack)

    def restore(self, state) -> None:
        self.next_root, stack = state
        self.stack = [list(f) for f in stack]


def union_reverse_search(x: SetSystem) -> UnionReverseSearch:
    return UnionReverseSearch(x)


def children(x: SetSystem, z) -> list[frozenset[int]]:
    """Children of ``z`` in the reverse-search forest."""
    masks = x.masks
    zm = 0
    for e in z:
        zm |= 1 << (e - 1)
    out = []
    for i, s in enumerate(masks):
        c = zm | s
        if c != zm and parent(masks, c) == zm and all(zm | masks[j] != c for j in range(i)):
            out.append(frozenset(e + 1 for e in range(x.n) if c >> e & 1))
    return out


Operator = Literal["union", "intersection"]


class ClosureSaturation(Enumerator):
    """Naive saturation: outputs the distinct input sets, then combines every
    pair of known sets in order and outputs each new result.

    Intersection closure is union closure of the complements, complemented
    back.  One step is one pair combination or one output.
    """

    supports_snapshot = True

    def __init__(self, x: SetSystem, operator: Operator = "union",
                 max_store: int | None = None):
        if operator not in ("union", "intersection"):
            raise ValueError(f"unknown operator {operator!r}")
        self.x = x
        self.full = (1 << x.n) - 1
        self.flip = self.full if operator == "intersection" else 0
        self.inputs = [m ^ self.flip for m in x.masks]
        self.max_store = max_store
        self.known: list[int] = []
        self.index: set[int] = set()
        self.next_input = 0
        self.i, self.j = 1, 0

    def _add(self, y: int) -> StepOutcome:
        if y in self.index:
            return CONTINUE
        if self.max_store is not None and len(self.known) >= self.max_store:
            raise StoreBudgetExceeded(f"more than {self.max_store} stored sets")
        self.index.add(y)
        self.known.append(y)
        return Emit(mask_to_bits(y ^ self.flip, self.x.n))

    def step(self) -> StepOutcome:
        if self.next_input < len(self.inputs):
            self.next_input += 1
            return self._add(self.inputs[self.next_input - 1])
        if self.i >= len(self.known):
            return DONE
        y = self.known[self.i] | self.known[self.j]
        self.j += 1
        if self.j == self.i:
            self.i, self.j = self.i + 1, 0
        return self._add(y)

    def snapshot(self):
        return tuple(self.known), self.next_input, self.i, self.j

    def restore(self, state) -> None:
        known, self.next_input, self.i, self.j = state
        self.known = list(known)
        self.index = set(known)


def closure_saturate(x: SetSystem, operator: Operator = "union",
                     max_store: int | None = None) -> ClosureSaturation:
    return ClosureSaturation(x, operator, max_store)
