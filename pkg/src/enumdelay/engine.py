"""Stepped enumeration machines, traces and delay accounting.

An :class:`Enumerator` is a resumable state machine.  Each call to
:meth:`Enumerator.step` performs one unit of work and reports what happened:
:class:`Continue`, :class:`Emit` (a solution was output) or :class:`Done`.
Every outcome carries a ``cost`` in logical steps.  Base machines charge one
step per call; combinators that drive an inner machine charge the inner
machine's steps, so delays stay expressed in the innermost unit.

Solutions are hashable tuples.  Set-valued problems use fixed-length bit
tuples (position 1 first, so tuple order is lexicographic order).
"""
from __future__ import annotations

import bisect
import copy
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Hashable, Iterator, Sequence

Solution = Hashable

DEFAULT_STEP_BUDGET = 10**9


class EnumerationError(Exception):
    """Base class for errors raised by machines and harnesses."""


class StepBudgetExceeded(EnumerationError):
    def __init__(self, budget: int, trace: Trace | None = None):
        super().__init__(f"step budget of {budget} exceeded")
        self.budget = budget
        self.trace = trace


class StoreBudgetExceeded(EnumerationError):
    pass


class SnapshotUnsupported(EnumerationError):
    pass


@dataclass(slots=True)
class Continue:
    cost: int = 1


@dataclass(slots=True)
class Emit:
    solution: Solution
    cost: int = 1


@dataclass(slots=True)
class Done:
    cost: int = 0


StepOutcome = Continue | Emit | Done

CONTINUE = Continue()
DONE = Done()


class Enumerator:
    """Base class of every enumeration machine.

    Subclasses implement :meth:`step`.  Machines that can be paused and
    replayed also implement :meth:`snapshot` and :meth:`restore`; the
    returned state must not alias mutable internals.

    :meth:`advance` and :meth:`skip` run several steps at once.  The defaults
    loop over :meth:`step`; machines with long idle stretches override them.
    A composite step may overshoot the requested budget.
    """

    supports_snapshot = False
    #: Known worst-case gap between consecutive emissions, in steps, if any.
    delay_bound: int | None = None
    seed: int | None = None

    def step(self) -> StepOutcome:
        raise NotImplementedError

    def snapshot(self) -> Any:
        raise SnapshotUnsupported(type(self).__name__)

    def restore(self, state: Any) -> None:
        raise SnapshotUnsupported(type(self).__name__)

    def advance(self, limit: int) -> StepOutcome:
        """Run until an emission, the end, or ``limit`` steps."""
        spent = 0
        while spent < limit:
            out = self.step()
            spent += out.cost
            if type(out) is Emit:
                return Emit(out.solution, spent)
            if type(out) is Done:
                return Done(spent)
        return Continue(spent)

    def skip(self, limit: int) -> tuple[int, list[int], bool]:
        """Run ``limit`` steps discarding emissions.

        Returns ``(steps, offsets, done)`` where ``offsets`` are the 1-based
        step offsets (relative to the call) at which emissions happened.
        """
        spent = 0
        offsets = []
        while spent < limit:
            out = self.step()
            spent += out.cost
            if type(out) is Emit:
                offsets.append(spent)
            elif type(out) is Done:
                return spent, offsets, True
        return spent, offsets, False

    def __iter__(self) -> Iterator[Solution]:
        while True:
            out = self.step()
            if type(out) is Emit:
                yield out.solution
            elif type(out) is Done:
                return


@dataclass
class Trace:
    events: list[tuple[int, Solution]] = field(default_factory=list)
    total_steps: int = 0
    seed: int | None = None

    @property
    def preprocessing_steps(self) -> int:
        return self.events[0][0] if self.events else self.total_steps

    @property
    def solutions(self) -> list[Solution]:
        return [s for _, s in self.events]

    def __len__(self) -> int:
        return len(self.events)


@dataclass(frozen=True)
class DelayReport:
    count: int
    preprocessing: int
    max_delay: int
    avg_delay: Fraction
    total_steps: int
    incremental_profile: list[tuple[int, int]]

    def as_lines(self) -> list[str]:
        return [
            f"count={self.count}",
            f"preprocessing={self.preprocessing}",
            f"max_delay={self.max_delay}",
            f"avg_delay={self.avg_delay}",
            f"total_steps={self.total_steps}",
        ]


def run(e: Enumerator, limit: int | None = None,
        step_budget: int = DEFAULT_STEP_BUDGET,
        on_emit: Callable[[int, Solution], None] | None = None) -> Trace:
    """Drive ``e`` to completion (or ``limit`` emissions) and record when
    each solution came out.  ``on_emit(step, solution)`` is called as soon
    as a solution appears."""
    trace = Trace(seed=e.seed)
    clock = 0
    while limit is None or len(trace.events) < limit:
        remaining = step_budget - clock
        if remaining <= 0:
            trace.total_steps = clock
            raise StepBudgetExceeded(step_budget, trace)
        out = e.advance(remaining)
        clock += out.cost
        if type(out) is Emit:
            if clock > step_budget:
                trace.total_steps = clock
                raise StepBudgetExceeded(step_budget, trace)
            trace.events.append((clock, out.solution))
            if on_emit is not None:
                on_emit(clock, out.solution)
        elif type(out) is Done:
            break
    trace.total_steps = clock
    return trace


def delay_report(t: Trace) -> DelayReport:
    times = [step for step, _ in t.events]
    s = len(times)
    max_delay = max((b - a for a, b in zip(times, times[1:])), default=0)
    avg = Fraction(times[-1] - times[0], s - 1) if s >= 2 else Fraction(0)
    profile = [(k, times[k - 1] - times[0]) for k in range(1, s + 1)]
    return DelayReport(
        count=s,
        preprocessing=t.preprocessing_steps,
        max_delay=max_delay,
        avg_delay=avg,
        total_steps=t.total_steps,
        incremental_profile=profile,
    )


def verify_no_duplicates(t: Trace) -> tuple[bool, tuple[int, int] | None]:
    """Return ``(True, None)`` or ``(False, (i, j))`` with 1-based event
    indices of the first repeated solution."""
    first_seen: dict[Solution, int] = {}
    for i, (_, sol) in enumerate(t.events, start=1):
        if sol in first_seen:
            return False, (first_seen[sol], i)
        first_seen[sol] = i
    return True, None


class ScriptedEnumerator(Enumerator):
    """Emits ``solutions[k]`` at step ``positions[k]`` and stops at ``length``.

    Positions are 1-based, strictly increasing.  Idle stretches are skipped
    arithmetically, so very long scripts are cheap to drive.
    """

    supports_snapshot = True

    def __init__(self, positions: Sequence[int], solutions: Sequence[Solution] | None = None,
                 length: int | None = None):
        self.positions = list(positions)
        if any(b <= a for a, b in zip(self.positions, self.positions[1:])):
            raise ValueError("positions must strictly increase")
        if self.positions and self.positions[0] < 1:
            raise ValueError("positions are 1-based")
        if solutions is None:
            solutions = [(k,) for k in range(1, len(self.positions) + 1)]
        if len(solutions) != len(self.positions):
            raise ValueError("one solution per position")
        self.solutions = list(solutions)
        last = self.positions[-1] if self.positions else 0
        self.length = last if length is None else length
        if self.length < last:
            raise ValueError("length shorter than the script")
        self._count = len(self.positions)
        self.clock = 0
        self._next = 0

    @classmethod
    def from_events(cls, events: Sequence[tuple[int, Solution]], length: int | None = None):
        return cls([p for p, _ in events], [s for _, s in events], length)

    def snapshot(self):
        return self.clock, self._next

    def restore(self, state) -> None:
        self.clock, self._next = state

    def step(self) -> StepOutcome:
        if self.clock >= self.length:
            return DONE
        self.clock += 1
        k = self._next
        if k < len(self.positions) and self.positions[k] == self.clock:
            self._next = k + 1
            return Emit(self.solutions[k])
        return CONTINUE

    def advance(self, limit: int) -> StepOutcome:
        if self.clock >= self.length:
            return DONE
        k = self._next
        clock = self.clock
        horizon = clock + limit
        if horizon > self.length:
            horizon = self.length
        if k < self._count:
            pos = self.positions[k]
            if pos <= horizon:
                self.clock = pos
                self._next = k + 1
                return Emit(self.solutions[k], pos - clock)
        spent = horizon - clock
        self.clock = horizon
        if horizon >= self.length and spent < limit:
            return Done(spent)
        return Continue(spent)

    def skip(self, limit: int) -> tuple[int, list[int], bool]:
        start = self.clock
        horizon = min(start + limit, self.length)
        k = self._next
        j = bisect.bisect_right(self.positions, horizon, lo=k)
        offsets = [p - start for p in self.positions[k:j]]
        self._next = j
        self.clock = horizon
        spent = horizon - start
        return spent, offsets, horizon >= self.length and spent < limit


class _Trie:
    """Prefix tree over solution tuples."""

    __slots__ = ("root", "nodes", "max_nodes")

    _END = ...  # a singleton that survives deepcopy

    def __init__(self, max_nodes: int | None = None):
        self.root: dict = {}
        self.nodes = 1
        self.max_nodes = max_nodes

    def add(self, key: Sequence) -> bool:
        node = self.root
        for sym in key:
            child = node.get(sym)
            if child is None:
                if self.max_nodes is not None and self.nodes >= self.max_nodes:
                    raise StoreBudgetExceeded(f"trie exceeds {self.max_nodes} nodes")
                child = node[sym] = {}
                self.nodes += 1
            node = child
        if self._END in node:
            return False
        node[self._END] = True
        return True

    def __contains__(self, key: Sequence) -> bool:
        node = self.root
        for sym in key:
            node = node.get(sym)
            if node is None:
                return False
        return self._END in node


def _trie_key(sol: Solution) -> Sequence:
    return sol if isinstance(sol, (tuple, list, str, bytes)) else (sol,)


class StoreDedup(Enumerator):
    """Drops repeated solutions by remembering every output in a trie."""

    def __init__(self, inner: Enumerator, max_nodes: int | None = None):
        self.inner = inner
        self.store = _Trie(max_nodes)
        self.supports_snapshot = inner.supports_snapshot
        self.seed = inner.seed

    def step(self) -> StepOutcome:
        out = self.inner.step()
        if type(out) is Emit and not self.store.add(_trie_key(out.solution)):
            return Continue(out.cost)
        return out

    def snapshot(self):
        return self.inner.snapshot(), copy.deepcopy(self.store)

    def restore(self, state) -> None:
        inner, store = state
        self.inner.restore(inner)
        self.store = copy.deepcopy(store)


def dedup_by_store(e: Enumerator, max_nodes: int | None = None) -> Enumerator:
    return StoreDedup(e, max_nodes)


class RerunDedup(Enumerator):
    """Drops repeated solutions without storing them.

    When the inner machine emits ``s`` at time ``t``, a copy is replayed from
    the initial snapshot through time ``t - 1``; ``s`` is output only if the
    replay never produced it.  The replay steps are charged to the step.
    """

    def __init__(self, inner: Enumerator):
        if not inner.supports_snapshot:
            raise SnapshotUnsupported("rerun dedup needs snapshot/restore")
        self.inner = inner
        self.initial = inner.snapshot()
        self.clock = 0
        self.supports_snapshot = True
        self.seed = inner.seed

    def _seen_before(self, sol: Solution, until: int) -> tuple[bool, int]:
        here = self.inner.snapshot()
        self.inner.restore(self.initial)
        spent = 0
        seen = False
        while spent < until:
            out = self.inner.advance(until - spent)
            spent += out.cost
            if type(out) is Emit and out.solution == sol:
                seen = True
                break
            if type(out) is Done:
                break
        self.inner.restore(here)
        return seen, spent

    def step(self) -> StepOutcome:
        out = self.inner.step()
        self.clock += out.cost
        if type(out) is not Emit:
            return out
        seen, spent = self._seen_before(out.solution, self.clock - out.cost)
        if seen:
            return Continue(out.cost + spent)
        return Emit(out.solution, out.cost + spent)

    def snapshot(self):
        return self.inner.snapshot(), self.clock

    def restore(self, state) -> None:
        inner, self.clock = state
        self.inner.restore(inner)


def dedup_by_rerun(e: Enumerator) -> Enumerator:
    return RerunDedup(e)


class UnionEnumerator(Enumerator):
    """Enumerates ``A(x) | B(x)`` from two repetition-free machines.

    Priority scheme: take the next solution of ``a``; if it belongs to B,
    output the next solution of ``b`` in its place.  Once ``a`` is
    exhausted the rest of ``b`` follows.
    """

    def __init__(self, a: Enumerator, b: Enumerator,
                 member_of_b: Callable[[Solution], bool], member_cost: int = 1):
        self.a, self.b = a, b
        self.member_of_b = member_of_b
        self.member_cost = member_cost
        self.a_done = False
        self.want_b = False
        self.supports_snapshot = a.supports_snapshot and b.supports_snapshot

    def step(self) -> StepOutcome:
        if self.want_b or self.a_done:
            out = self.b.step()
            if type(out) is Emit:
                self.want_b = False
            elif type(out) is Done:
                if self.a_done:
                    return out
                # b ran dry: the pending member of B was already output by b
                self.want_b = False
                return Continue(out.cost)
            return out
        out = self.a.step()
        if type(out) is Done:
            self.a_done = True
            return Continue(out.cost)
        if type(out) is Emit:
            cost = out.cost + self.member_cost
            if self.member_of_b(out.solution):
                self.want_b = True
                return Continue(cost)
            return Emit(out.solution, cost)
        return out

    def snapshot(self):
        return self.a.snapshot(), self.b.snapshot(), self.a_done, self.want_b

    def restore(self, state) -> None:
        sa, sb, self.a_done, self.want_b = state
        self.a.restore(sa)
        self.b.restore(sb)


def interleave_union(a: Enumerator, b: Enumerator,
                     member_of_b: Callable[[Solution], bool],
                     member_cost: int = 1) -> Enumerator:
    return UnionEnumerator(a, b, member_of_b, member_cost)


class ProductEnumerator(Enumerator):
    """All concatenations ``ya + yb``; ``b`` is rewound for every ``ya``."""

    def __init__(self, a: Enumerator, b: Enumerator):
        if not b.supports_snapshot:
            raise SnapshotUnsupported("the inner factor must be restartable")
        self.a, self.b = a, b
        self.b_start = b.snapshot()
        self.current = None
        self.b_seen = False
        self.supports_snapshot = a.supports_snapshot

    def step(self) -> StepOutcome:
        if self.current is None:
            out = self.a.step()
            if type(out) is Emit:
                self.current = out.solution
                self.b.restore(self.b_start)
                self.b_seen = False
                return Continue(out.cost)
            return out
        out = self.b.step()
        if type(out) is Emit:
            self.b_seen = True
            return Emit(tuple(self.current) + tuple(out.solution), out.cost)
        if type(out) is Done:
            self.current = None
            if not self.b_seen:
                return Done(out.cost)
            return Continue(out.cost)
        return out

    def snapshot(self):
        return self.a.snapshot(), self.b.snapshot(), self.current, self.b_seen

    def restore(self, state) -> None:
        sa, sb, self.current, self.b_seen = state
        self.a.restore(sa)
        self.b.restore(sb)


def cartesian_product(a: Enumerator, b: Enumerator) -> Enumerator:
    return ProductEnumerator(a, b)
