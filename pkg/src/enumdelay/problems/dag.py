"""Source-to-target paths of a DAG."""
from __future__ import annotations

from collections import deque

from ..engine import CONTINUE, DONE, Continue, Emit, Enumerator, StepOutcome
from .records import Dag


def reaching(g: Dag) -> set[int]:
    """Vertices from which ``t`` is reachable."""
    pred: dict[int, list[int]] = {v: [] for v in range(1, g.n_vertices + 1)}
    for u, v in g.arcs:
        pred[v].append(u)
    seen = {g.t}
    todo = deque([g.t])
    while todo:
        v = todo.popleft()
        for u in pred[v]:
            if u not in seen:
                seen.add(u)
                todo.append(u)
    return seen


class DagPaths(Enumerator):
    """Depth-first search from ``s`` restricted to vertices that reach ``t``.

    The first step computes that restriction and is charged ``V + E``.
    Afterwards one step is one vertex entered or left, and every vertex
    entered lies on some path to ``t``, so the work between two outputs is
    bounded by the length of the backtrack plus the new path.
    """

    supports_snapshot = True

    def __init__(self, g: Dag):
        self.g = g
        self.succ: dict[int, list[int]] | None = None
        self.path: list[int] = []
        self.next_arc: list[int] = []
        self.delay_bound = 2 * g.n_vertices

    def _prepare(self) -> StepOutcome:
        g = self.g
        live = reaching(g)
        self.succ = {v: sorted(w for w in ws if w in live)
                     for v, ws in g.successors().items() if v in live}
        cost = g.n_vertices + len(g.arcs)
        if g.s not in live:
            self.path = None
            return Continue(cost)
        self.path = [g.s]
        self.next_arc = [0]
        if g.s == g.t:
            return Emit((g.s,), cost)
        return Continue(cost)

    def step(self) -> StepOutcome:
        if self.succ is None:
            return self._prepare()
        path = self.path
        if not path:
            return DONE
        u = path[-1]
        k = self.next_arc[-1]
        out = self.succ[u]
        if u == self.g.t or k == len(out):
            path.pop()
            self.next_arc.pop()
            return CONTINUE
        self.next_arc[-1] = k + 1
        v = out[k]
        path.append(v)
        self.next_arc.append(0)
        if v == self.g.t:
            return Emit(tuple(path))
        return CONTINUE

    def snapshot(self):
        path = None if self.path is None else tuple(self.path)
        return self.succ, path, tuple(self.next_arc)

    def restore(self, state) -> None:
        self.succ, path, next_arc = state
        self.path = None if path is None else list(path)
        self.next_arc = list(next_arc)


def dag_paths(g: Dag) -> DagPaths:
    return DagPaths(g)


def layered_dag(layers: int) -> Dag:
    """Source ``1`` joined to two vertices per layer, consecutive layers
    fully joined, target the first vertex of the last layer.  Has
    ``2 ** (layers - 1)`` source-target paths."""
    if layers < 1:
        raise ValueError("need at least one layer")
    arcs = [(1, 2), (1, 3)]
    for k in range(layers - 1):
        a, b = 2 + 2 * k, 3 + 2 * k
        for u in (a, b):
            arcs += [(u, a + 2), (u, b + 2)]
    V = 1 + 2 * layers
    return Dag(V, tuple(arcs), 1, V - 1)
