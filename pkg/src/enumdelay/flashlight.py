"""Flashlight (binary partition) search.

Solutions are bit vectors of length ``n``.  The search walks the tree of
prefixes depth first, 0 before 1, and only enters a child when the
extension oracle says some solution starts with it.  Both children of a node
are tested when the node is entered, so backtracking never calls the oracle
and the gap between two outputs is at most ``2n`` oracle calls.

One step is one oracle call or one output.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Any, Callable

from .amortize import AdaptiveGeometricAmortizer, geometric_amortize_adaptive
from .engine import DONE, Continue, Done, Emit, EnumerationError, Enumerator, StepOutcome


class OracleInconsistent(EnumerationError):
    pass


class PathTimeExceeded(EnumerationError):
    pass


@dataclass(frozen=True)
class PartialSolution:
    bits: tuple[int, ...] = ()

    @property
    def decided(self) -> int:
        return len(self.bits)

    def extend(self, bit: int) -> PartialSolution:
        return PartialSolution(self.bits + (bit,))


class BinaryPartitionProblem:
    """Extension oracle over ``n`` binary decisions.

    The oracle holds the current prefix.  :meth:`probe` asks whether the
    prefix extended by one bit still extends to a solution, without
    committing; :meth:`push` and :meth:`pop` move along the tree.
    :meth:`is_solution` is an independent check used on complete prefixes.
    """

    n: int = 0
    oracle_cost: int = 1

    def root(self) -> bool:
        """Reset to the empty prefix; is there any solution at all?"""
        raise NotImplementedError

    def probe(self, bit: int) -> bool:
        raise NotImplementedError

    def push(self, bit: int) -> None:
        raise NotImplementedError

    def pop(self) -> None:
        raise NotImplementedError

    def is_solution(self, bits: tuple[int, ...]) -> bool:
        raise NotImplementedError

    def get_state(self) -> Any:
        raise NotImplementedError

    def set_state(self, state: Any) -> None:
        raise NotImplementedError

    def extendable(self, partial: PartialSolution) -> bool:
        """Stateless form of the oracle (resets the current prefix)."""
        if not self.root():
            return False
        for bit in partial.bits:
            if not self.probe(bit):
                return False
            self.push(bit)
        return True


class PredicateProblem(BinaryPartitionProblem):
    """Adapts a plain ``extendable(PartialSolution)`` predicate."""

    def __init__(self, n: int, extendable: Callable[[PartialSolution], bool],
                 is_solution: Callable[[tuple[int, ...]], bool], oracle_cost: int = 1):
        self.n = n
        self._extendable = extendable
        self._is_solution = is_solution
        self.oracle_cost = oracle_cost
        self.prefix: list[int] = []

    def root(self) -> bool:
        self.prefix = []
        return self._extendable(PartialSolution())

    def probe(self, bit: int) -> bool:
        return self._extendable(PartialSolution(tuple(self.prefix) + (bit,)))

    def push(self, bit: int) -> None:
        self.prefix.append(bit)

    def pop(self) -> None:
        self.prefix.pop()

    def is_solution(self, bits: tuple[int, ...]) -> bool:
        return self._is_solution(bits)

    def get_state(self):
        return tuple(self.prefix)

    def set_state(self, state) -> None:
        self.prefix = list(state)

    def extendable(self, partial: PartialSolution) -> bool:
        return self._extendable(partial)


_ROOT, _PROBE0, _PROBE1, _LEAF, _END = range(5)


class FlashlightEnumerator(Enumerator):
    """Depth-first search over prefixes; outputs in lexicographic order."""

    supports_snapshot = True

    def __init__(self, problem: BinaryPartitionProblem):
        self.problem = problem
        self.n = problem.n
        self.bits: list[int] = []
        self.alt: list[bool] = []  # per depth: is the 1-branch still to visit
        self.phase = _ROOT
        self.zero_ok = False
        self.oracle_calls = 0
        self.nodes_expanded = 0
        self.delay_bound = 2 * max(self.n, 1) * problem.oracle_cost

    def _enter(self) -> None:
        self.phase = _LEAF if len(self.bits) == self.n else _PROBE0

    def step(self) -> StepOutcome:
        pb = self.problem
        phase = self.phase
        cost = pb.oracle_cost
        if phase == _PROBE0:
            self.oracle_calls += 1
            self.nodes_expanded += 1
            self.zero_ok = pb.probe(0)
            self.phase = _PROBE1
            return Continue(cost)
        if phase == _PROBE1:
            self.oracle_calls += 1
            one_ok = pb.probe(1)
            if self.zero_ok:
                pb.push(0)
                self.bits.append(0)
                self.alt.append(one_ok)
            elif one_ok:
                pb.push(1)
                self.bits.append(1)
                self.alt.append(False)
            else:
                raise OracleInconsistent(
                    f"prefix {self.bits} is extendable but neither child is")
            self._enter()
            return Continue(cost)
        if phase == _LEAF:
            sol = tuple(self.bits)
            if not pb.is_solution(sol):
                raise OracleInconsistent(f"complete prefix {sol} is not a solution")
            self._backtrack()
            return Emit(sol)
        if phase == _ROOT:
            self.oracle_calls += 1
            if not pb.root():
                self.phase = _END
                return Done(cost)
            self._enter()
            return Continue(cost)
        return DONE

    def _backtrack(self) -> None:
        pb = self.problem
        bits, alt = self.bits, self.alt
        while alt and not alt[-1]:
            pb.pop()
            bits.pop()
            alt.pop()
        if not alt:
            self.phase = _END
            return
        pb.pop()
        pb.push(1)
        bits[-1] = 1
        alt[-1] = False
        self._enter()

    def snapshot(self):
        return (self.problem.get_state(), tuple(self.bits), tuple(self.alt), self.phase,
                self.zero_ok, self.oracle_calls, self.nodes_expanded)

    def restore(self, state) -> None:
        (pb_state, bits, alt, self.phase, self.zero_ok, self.oracle_calls,
         self.nodes_expanded) = state
        self.problem.set_state(pb_state)
        self.bits, self.alt = list(bits), list(alt)


def flashlight_enumerate(pb: BinaryPartitionProblem) -> FlashlightEnumerator:
    return FlashlightEnumerator(pb)


class DelayLine(Enumerator):
    """Runs ``inner`` ``lead`` steps ahead and releases at most one queued
    solution per step.

    If ``inner`` needs at most ``lead`` steps to reach its first solution
    and at most ``lead + k * a`` steps to reach its ``k``-th, the delayed
    stream has incremental delay ``a``.  A gap longer than ``lead`` between
    two solutions of ``inner`` raises :class:`PathTimeExceeded`.
    """

    def __init__(self, inner: Enumerator, lead: int):
        if lead < 1:
            raise ValueError("lead must be >= 1")
        self.inner = inner
        self.lead = lead
        self.queue: deque = deque()
        self.since = 0  # inner steps since its last solution
        self.primed = False
        self.inner_done = False
        self.max_queue = 0
        self.supports_snapshot = inner.supports_snapshot
        self.seed = inner.seed

    def _pull(self) -> int:
        out = self.inner.step()
        if type(out) is Done:
            self.inner_done = True
            return out.cost
        self.since += out.cost
        if self.since > self.lead:
            raise PathTimeExceeded(f"{self.since} steps without a solution, bound {self.lead}")
        if type(out) is Emit:
            self.queue.append(out.solution)
            self.max_queue = max(self.max_queue, len(self.queue))
            self.since = 0
        return out.cost

    def step(self) -> StepOutcome:
        if not self.primed:
            self.primed = True
            spent = 0
            while spent < self.lead and not self.inner_done:
                spent += self._pull()
            return Continue(spent)
        spent = 0
        if not self.inner_done:
            spent = self._pull()
        if self.queue:
            return Emit(self.queue.popleft(), max(spent, 1))
        if self.inner_done:
            return Done(spent)
        return Continue(spent)

    def snapshot(self):
        return (self.inner.snapshot(), tuple(self.queue), self.since, self.primed,
                self.inner_done)

    def restore(self, state) -> None:
        inner, queue, self.since, self.primed, self.inner_done = state
        self.inner.restore(inner)
        self.queue = deque(queue)


def flashlight_with_path_amortization(pb: BinaryPartitionProblem, path_time_bound: int,
                                      average_delay: int | None = None
                                      ) -> AdaptiveGeometricAmortizer:
    """Flashlight search whose delay follows its average delay.

    ``path_time_bound`` bounds the steps between two consecutive solutions
    (and before the first).  ``average_delay`` defaults to the worst-case
    delay ``2n`` of the search, which is always safe.
    """
    if average_delay is None:
        average_delay = 2 * max(pb.n, 1) * pb.oracle_cost
    line = DelayLine(FlashlightEnumerator(pb), path_time_bound)
    return geometric_amortize_adaptive(line, max(1, average_delay))
