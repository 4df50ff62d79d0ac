"""Amortization combinators: turn incremental delay into delay.

Throughout, a machine has *incremental delay* ``p`` when, counting steps
from the one that produces its first solution, its ``k``-th solution is
produced within the first ``k * p`` steps.  Steps before the first solution
are preprocessing and are not charged against ``p``.

Geometric amortization views the run of a machine as a list ``L`` whose
entries are steps, some carrying a solution.  Pointer ``j`` walks ``L`` and
may only output solutions whose index lies in its zone::

    zone(0) = [1, p]        zone(j) = [2**(j-1) * p + 1, 2**j * p]

A pointer is a machine snapshot plus its current index.
"""
from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .engine import (
    CONTINUE, DONE, Continue, Done, Emit, EnumerationError, Enumerator,
    Solution, SnapshotUnsupported, StepOutcome,
)

_FOREVER = 1 << 62


class IncrementalDelayViolated(EnumerationError):
    pass


class SolutionBoundExceeded(EnumerationError):
    pass


class InvariantViolation(EnumerationError):
    """The pointer-lead invariant of geometric amortization failed."""


@dataclass(frozen=True)
class AmortizationConfig:
    p: int
    ell: int | None = None
    epsilon: Fraction = Fraction(1, 2)

    def __post_init__(self):
        if self.p < 1:
            raise ValueError("incremental delay must be >= 1")
        if self.ell is not None and self.ell < 1:
            raise ValueError("solution bound must be >= 1")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")


def pointer_count(ell: int) -> int:
    """``1 + ceil(log2(ell))``."""
    return 1 + (ell - 1).bit_length()


def zone(j: int, p: int) -> tuple[int, int]:
    if j == 0:
        return 1, p
    return (1 << (j - 1)) * p + 1, (1 << j) * p


class _Pointer:
    __slots__ = ("index", "lo", "hi", "state", "pos", "live", "outputs")

    def __init__(self, index, lo, hi, state, pos=1):
        self.index = index
        self.lo, self.hi = lo, hi
        self.state = state
        self.pos = pos  # index in L of the next entry to read
        self.live = True
        self.outputs = 0

    def copy(self):
        other = _Pointer(self.index, self.lo, self.hi, self.state, self.pos)
        other.live, other.outputs = self.live, self.outputs
        return other


class _ZoneAmortizer(Enumerator):
    """Machinery shared by the known-bound and adaptive variants."""

    supports_snapshot = True

    def __init__(self, machine: Enumerator, p: int, ell: int | None,
                 retire: bool, check_invariant: bool, verify_tail: bool):
        if not machine.supports_snapshot:
            raise SnapshotUnsupported("geometric amortization needs snapshot/restore")
        AmortizationConfig(p, ell)
        self.machine = machine
        self.p = p
        self.ell = ell
        self.retire = retire
        self.check_invariant = check_invariant
        self.verify_tail = verify_tail
        self.exhausted = False  # some pointer has read the end of the list
        self.seed = machine.seed
        self.started = False
        self.finished = False
        self.frontier = 0  # furthest index of L read so far
        self.seen = 0      # solutions found at indices <= frontier
        self.invariant_checks = 0
        self.delay_bound = None

    # -- frontier bookkeeping -------------------------------------------------

    def _observe(self, entry: int) -> None:
        self.seen += 1
        if entry > self.seen * self.p:
            raise IncrementalDelayViolated(
                f"solution {self.seen} at step {entry} of the list, "
                f"beyond {self.seen} * p = {self.seen * self.p}")
        if self.ell is not None and self.seen > self.ell:
            raise SolutionBoundExceeded(f"more than {self.ell} solutions")

    def _read_skip(self, ptr: _Pointer, n: int) -> tuple[int, bool]:
        start = ptr.pos
        used, offsets, done = self.machine.skip(n)
        if start + used - 1 > self.frontier:
            for off in offsets:
                entry = start + off - 1
                if entry > self.frontier:
                    self._observe(entry)
            self.frontier = start + used - 1
        ptr.pos += used
        return used, done

    def _read_advance(self, ptr: _Pointer, n: int) -> StepOutcome:
        start = ptr.pos
        out = self.machine.advance(n)
        last = start + out.cost - 1
        if last > self.frontier:
            if type(out) is Emit:
                self._observe(last)
            self.frontier = last
        ptr.pos += out.cost
        return out

    # -- one pointer visit ----------------------------------------------------

    def _visit(self, ptr: _Pointer, budget: int) -> tuple[int, Solution | None]:
        """Move ``ptr`` for at most ``budget`` steps, stopping at the first
        solution inside its zone."""
        m = self.machine
        m.restore(ptr.state)
        pos, lo, hi = ptr.pos, ptr.lo, ptr.hi
        spent = 0
        found = None
        live = True
        exhausted = False
        while spent < budget:
            if lo <= pos <= hi:
                n = budget - spent
                if n > hi - pos + 1:
                    n = hi - pos + 1
                out = m.advance(n)
                cost = out.cost
                last = pos + cost - 1
                kind = type(out)
                if last > self.frontier:
                    if kind is Emit:
                        self._observe(last)
                    self.frontier = last
                pos += cost
                spent += cost
                if kind is Emit:
                    found = out.solution
                    break
                if kind is Done:
                    exhausted = True
                    break
                continue
            if pos > hi:
                if self.retire:
                    live = False
                    break
                n = budget - spent
            else:
                n = budget - spent
                if n > lo - pos:
                    n = lo - pos
            used, offsets, done = m.skip(n)
            if pos + used - 1 > self.frontier:
                for off in offsets:
                    if pos + off - 1 > self.frontier:
                        self._observe(pos + off - 1)
                self.frontier = pos + used - 1
            pos += used
            spent += used
            if done:
                exhausted = True
                break
        ptr.pos = pos
        if exhausted:
            ptr.live = False
            self.exhausted = True
        else:
            # retired pointers keep a consistent state for the tail check
            ptr.state = m.snapshot()
            ptr.live = live
        return spent, found

    def _preprocess(self) -> StepOutcome:
        """Run to the first solution; pointers start on the step producing it."""
        self.started = True
        m = self.machine
        spent = 0
        while True:
            before = m.snapshot()
            out = m.step()
            spent += out.cost
            if type(out) is Emit:
                self._start(before)
                return Continue(spent)
            if type(out) is Done:
                self.finished = True
                return Done(spent)

    def _start(self, state) -> None:
        raise NotImplementedError

    def _all_pointers(self) -> list[_Pointer]:
        return list(self.pointers)

    def _check_tail(self) -> int:
        """Read the list past the frontier to its end.

        A machine that breaks its promised delay or solution count may hide
        solutions beyond the last zone, where no pointer looks.  This reads
        them so the violation is reported instead of a solution being lost.
        """
        if not self.verify_tail or self.exhausted:
            return 0
        ptr = max(self._all_pointers(), key=lambda q: q.pos)
        m = self.machine
        m.restore(ptr.state)
        pos, spent = ptr.pos, 0
        while True:
            used, offsets, done = m.skip(_FOREVER)
            for off in offsets:
                self._observe(pos + off - 1)
            pos += used
            spent += used
            if done:
                break
        self.frontier = pos - 1
        self.exhausted = True
        return spent

    def _check_invariant(self, pointers: list[_Pointer], extra: _Pointer | None = None) -> None:
        """Each live pointer ``i+1`` is at least ``p`` times the number of
        solutions output by pointers ``0..i`` into the list."""
        total = 0
        for ptr in pointers:
            if ptr.live and ptr.index > 0 and ptr.pos < self.p * total:
                raise InvariantViolation(
                    f"pointer {ptr.index} at {ptr.pos} < {self.p} * {total}")
            total += ptr.outputs
        if extra is not None and extra.live and extra.pos < self.p * total:
            raise InvariantViolation(f"frontier at {extra.pos} < {self.p} * {total}")
        self.invariant_checks += 1

    @property
    def outputs(self) -> int:
        return sum(ptr.outputs for ptr in self.pointers)


class GeometricAmortizer(_ZoneAmortizer):
    """Geometric amortization with a known bound ``ell`` on the solution count.

    ``N = 1 + ceil(log2(ell))`` pointers start on the first entry of the
    list.  The current pointer ``j`` moves for at most ``2p`` steps; if it
    meets a solution inside its zone the solution is output and control goes
    back to pointer ``N-1``, otherwise control passes to ``j-1``.  When pointer
    0 fails the run ends.  Each :meth:`step` is one pointer visit.

    With ``retire`` (the default) a pointer that has walked past its zone is
    dropped instead of being moved further; outputs are unchanged and total
    work stays within about twice the work of the wrapped machine.
    """

    def __init__(self, machine: Enumerator, p: int, ell: int, *,
                 retire: bool = True, check_invariant: bool = False,
                 verify_tail: bool = False):
        super().__init__(machine, p, ell, retire, check_invariant, verify_tail)
        self.n_pointers = pointer_count(ell)
        self.pointers: list[_Pointer] = []
        self.j = self.n_pointers - 1
        self.delay_bound = 2 * p * self.n_pointers

    def _start(self, state) -> None:
        self.pointers = [_Pointer(j, *zone(j, self.p), state) for j in range(self.n_pointers)]

    def step(self) -> StepOutcome:
        return self.advance(1)

    def advance(self, limit: int) -> StepOutcome:
        if not self.started:
            return self._preprocess()
        if self.finished:
            return DONE
        total = 0
        pointers = self.pointers
        budget = 2 * self.p
        while self.j >= 0:
            ptr = pointers[self.j]
            if not ptr.live:
                self.j -= 1
                continue
            spent, sol = self._visit(ptr, budget)
            total += spent
            if sol is not None:
                ptr.outputs += 1
            if self.check_invariant:
                self._check_invariant(pointers)
            if sol is not None:
                self.j = self.n_pointers - 1
                return Emit(sol, total)
            self.j -= 1
            if total >= limit and self.j >= 0:
                return Continue(total)
        total += self._check_tail()
        self.finished = True
        return Done(total)

    def snapshot(self):
        return (self.machine.snapshot(), self.started, self.finished, self.frontier, self.seen,
                self.exhausted, self.j, [ptr.copy() for ptr in self.pointers])

    def restore(self, state) -> None:
        (inner, self.started, self.finished, self.frontier, self.seen, self.exhausted,
         self.j, pointers) = state
        self.machine.restore(inner)
        self.pointers = [ptr.copy() for ptr in pointers]

    @property
    def zones(self) -> list[tuple[int, int]]:
        return [zone(j, self.p) for j in range(self.n_pointers)]


class AdaptiveGeometricAmortizer(_ZoneAmortizer):
    """Geometric amortization without a bound on the number of solutions.

    Pointers that have not reached their zone would all move together, so a
    single *frontier* pointer stands in for them.  When the frontier reaches
    the first index of the next zone it is duplicated into a new zone
    pointer.  The descent order is frontier, newest zone pointer, ..., 0.
    """

    def __init__(self, machine: Enumerator, p: int, *,
                 retire: bool = True, check_invariant: bool = False,
                 verify_tail: bool = False):
        super().__init__(machine, p, None, retire, check_invariant, verify_tail)
        self.pointers: list[_Pointer] = []
        self.rep: _Pointer | None = None
        self.j = 0
        self.pointers_created = 0

    def _all_pointers(self) -> list[_Pointer]:
        return self.pointers + [self.rep]

    def _start(self, state) -> None:
        self.rep = _Pointer(-1, 0, 0, state)
        self.j = 0  # == len(self.pointers): frontier's turn

    def _visit_frontier(self, budget: int) -> int:
        rep = self.rep
        if not rep.live:
            return 0
        m = self.machine
        m.restore(rep.state)
        spent = 0
        while spent < budget:
            nxt = len(self.pointers)
            lo, hi = zone(nxt, self.p)
            if rep.pos == lo:
                here = m.snapshot()
                out = self._read_advance(rep, 1)
                if type(out) is Done:
                    rep.live = False
                    self.exhausted = True
                    break
                self.pointers.append(_Pointer(nxt, lo, hi, here, lo))
                self.pointers_created += 1
                spent += out.cost
                continue
            used, done = self._read_skip(rep, min(budget - spent, lo - rep.pos))
            spent += used
            if done:
                rep.live = False
                self.exhausted = True
                break
        if rep.live:
            rep.state = m.snapshot()
        return spent

    def step(self) -> StepOutcome:
        return self.advance(1)

    def advance(self, limit: int) -> StepOutcome:
        if not self.started:
            return self._preprocess()
        if self.finished:
            return DONE
        total = 0
        budget = 2 * self.p
        while self.j >= 0:
            if self.j == len(self.pointers):
                total += self._visit_frontier(budget)
                self.j = len(self.pointers) - 1
            else:
                ptr = self.pointers[self.j]
                if not ptr.live:
                    self.j -= 1
                    continue
                spent, sol = self._visit(ptr, budget)
                total += spent
                if sol is not None:
                    ptr.outputs += 1
                if self.check_invariant:
                    self._check_invariant(self.pointers, self.rep)
                if sol is not None:
                    self.j = len(self.pointers)
                    return Emit(sol, total)
                self.j -= 1
            if total >= limit and self.j >= 0:
                return Continue(total)
        total += self._check_tail()
        self.finished = True
        return Done(total)

    def snapshot(self):
        return (self.machine.snapshot(), self.started, self.finished, self.frontier, self.seen,
                self.exhausted, self.j, [ptr.copy() for ptr in self.pointers],
                self.rep.copy() if self.rep else None, self.pointers_created)

    def restore(self, state) -> None:
        (inner, self.started, self.finished, self.frontier, self.seen, self.exhausted, self.j,
         pointers, rep, self.pointers_created) = state
        self.machine.restore(inner)
        self.pointers = [ptr.copy() for ptr in pointers]
        self.rep = rep.copy() if rep else None


def geometric_amortize(m: Enumerator, cfg: AmortizationConfig | None = None, *,
                       p: int | None = None, ell: int | None = None,
                       retire: bool = True, check_invariant: bool = False,
                       verify_tail: bool = False) -> GeometricAmortizer:
    if cfg is None:
        cfg = AmortizationConfig(p, ell)
    if cfg.ell is None:
        raise ValueError("geometric_amortize needs a solution bound; "
                         "use geometric_amortize_adaptive otherwise")
    return GeometricAmortizer(m, cfg.p, cfg.ell, retire=retire, check_invariant=check_invariant,
                              verify_tail=verify_tail)


def geometric_amortize_adaptive(m: Enumerator, p: int, *, retire: bool = True,
                                check_invariant: bool = False,
                                verify_tail: bool = False) -> AdaptiveGeometricAmortizer:
    return AdaptiveGeometricAmortizer(m, p, retire=retire, check_invariant=check_invariant,
                                      verify_tail=verify_tail)


class QueueAmortizer(Enumerator):
    """Buffers solutions and releases the ``k``-th one at step ``T1 - 1 + k*p``.

    ``T1`` is the step of the first solution of the wrapped machine.  With
    incremental delay ``p`` the queue is never empty at a release time, so
    gaps after the first output are exactly ``p``, also while draining the
    queue after the wrapped machine has finished.
    """

    def __init__(self, machine: Enumerator, p: int):
        AmortizationConfig(p)
        self.machine = machine
        self.p = p
        self.queue: deque = deque()
        self.clock = 0
        self.t1: int | None = None
        self.released = 0
        self.arrived = 0
        self.machine_done = False
        self.max_queue = 0
        self.supports_snapshot = machine.supports_snapshot
        self.seed = machine.seed
        self.delay_bound = p

    def _deadline(self, k: int) -> int:
        return self.t1 - 1 + k * self.p

    def step(self) -> StepOutcome:
        total = 0
        while True:
            if self.machine_done:
                if not self.queue:
                    return Done(total)
                # keep the pace: idle until the release time
                wait = max(0, self._deadline(self.released + 1) - self.clock)
                self.clock += wait
                self.released += 1
                return Emit(self.queue.popleft(), total + wait)
            limit = _FOREVER
            if self.t1 is not None:
                deadline = self._deadline(self.released + 1)
                if self.clock >= deadline and self.queue:
                    self.released += 1
                    return Emit(self.queue.popleft(), total)
                if self.clock < deadline:
                    limit = deadline - self.clock
            out = self.machine.advance(limit)
            self.clock += out.cost
            total += out.cost
            if type(out) is Emit:
                self.arrived += 1
                if self.t1 is None:
                    self.t1 = self.clock
                elif self.clock > self._deadline(self.arrived):
                    raise IncrementalDelayViolated(
                        f"solution {self.arrived} arrived at step {self.clock}, "
                        f"after its release time {self._deadline(self.arrived)}")
                self.queue.append(out.solution)
                self.max_queue = max(self.max_queue, len(self.queue))
            elif type(out) is Done:
                self.machine_done = True

    def snapshot(self):
        return (self.machine.snapshot(), tuple(self.queue), self.clock, self.t1,
                self.released, self.arrived, self.machine_done)

    def restore(self, state) -> None:
        (inner, queue, self.clock, self.t1, self.released, self.arrived,
         self.machine_done) = state
        self.machine.restore(inner)
        self.queue = deque(queue)


def queue_amortize(m: Enumerator, p: int) -> QueueAmortizer:
    return QueueAmortizer(m, p)


class AdaptiveDelayAmortizer(Enumerator):
    """Queue amortization when the incremental delay is not known.

    Keeps ``p_hat = max_k ceil((T(k) - T(1)) / k)`` over the solutions seen
    so far and releases one queued solution every ``ceil(p_hat ** (1 + eps))``
    steps.  Output order is the wrapped machine's order.
    """

    def __init__(self, machine: Enumerator, epsilon: Fraction | float):
        if epsilon <= 0:
            raise ValueError("epsilon must be positive")
        self.machine = machine
        self.exponent = 1 + float(epsilon)
        self.queue: deque = deque()
        self.clock = 0
        self.t1: int | None = None
        self.arrived = 0
        self.p_hat = 1
        self.last_out: int | None = None
        self.machine_done = False
        self.supports_snapshot = machine.supports_snapshot
        self.seed = machine.seed

    @property
    def interval(self) -> int:
        return max(1, math.ceil(self.p_hat ** self.exponent - 1e-9))

    def step(self) -> StepOutcome:
        total = 0
        while True:
            if self.queue and (self.last_out is None or self.machine_done
                               or self.clock - self.last_out >= self.interval):
                self.last_out = self.clock
                return Emit(self.queue.popleft(), total)
            if self.machine_done:
                return Done(total)
            limit = self.last_out + self.interval - self.clock if self.queue else _FOREVER
            out = self.machine.advance(limit)
            self.clock += out.cost
            total += out.cost
            if type(out) is Emit:
                self.arrived += 1
                if self.t1 is None:
                    self.t1 = self.clock
                else:
                    est = -(-(self.clock - self.t1) // self.arrived)
                    self.p_hat = max(self.p_hat, est)
                self.queue.append(out.solution)
            elif type(out) is Done:
                self.machine_done = True

    def snapshot(self):
        return (self.machine.snapshot(), tuple(self.queue), self.clock, self.t1,
                self.arrived, self.p_hat, self.last_out, self.machine_done)

    def restore(self, state) -> None:
        (inner, queue, self.clock, self.t1, self.arrived, self.p_hat,
         self.last_out, self.machine_done) = state
        self.machine.restore(inner)
        self.queue = deque(queue)


def adaptive_delay_amortize(m: Enumerator, epsilon: Fraction | float) -> AdaptiveDelayAmortizer:
    return AdaptiveDelayAmortizer(m, epsilon)


def sample_run_length(found: int, epsilon: float) -> int:
    """Consecutive non-new draws needed to stop after ``found`` solutions.

    If more than ``found`` solutions exist, each draw is new with probability
    at least ``1/(found+1)``; the budget for this phase is
    ``epsilon * 6 / (pi**2 * (found+1)**2)`` so all phases together fail with
    probability at most ``epsilon``.
    """
    c1 = found + 1
    return math.ceil(c1 * math.log(c1 * (math.pi ** 2 / 6) * c1 ** 2 / epsilon))


class SamplerEnumerator(Enumerator):
    """Exhaustive enumeration, with high probability, from a uniform sampler.

    ``sampler(rng)`` returns a uniformly random solution, or ``None`` when
    the solution set is empty.  One draw per step.
    """

    supports_snapshot = True

    def __init__(self, sampler: Callable[[random.Random], Solution | None],
                 epsilon: float, seed: int = 0):
        if not 0 < epsilon < 1:
            raise ValueError("epsilon must lie in (0, 1)")
        self.sampler = sampler
        self.epsilon = epsilon
        self.seed = seed & ((1 << 64) - 1)
        self.rng = random.Random(self.seed)
        self.found: set = set()
        self.misses = 0
        self.finished = False

    def step(self) -> StepOutcome:
        if self.finished:
            return DONE
        sol = self.sampler(self.rng)
        if sol is None:
            self.finished = True
            return Done(1)
        if sol not in self.found:
            self.found.add(sol)
            self.misses = 0
            return Emit(sol)
        self.misses += 1
        if self.misses >= sample_run_length(len(self.found), self.epsilon):
            self.finished = True
            return Done(1)
        return CONTINUE

    def snapshot(self):
        return self.rng.getstate(), frozenset(self.found), self.misses, self.finished

    def restore(self, state) -> None:
        rng_state, found, self.misses, self.finished = state
        self.rng.setstate(rng_state)
        self.found = set(found)


def sampler_to_enumerator(sampler: Callable[[random.Random], Solution | None],
                          epsilon: float, seed: int = 0) -> SamplerEnumerator:
    return SamplerEnumerator(sampler, epsilon, seed)
