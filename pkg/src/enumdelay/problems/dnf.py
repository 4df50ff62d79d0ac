"""Models of a DNF formula by flashlight search."""
from __future__ import annotations

import math

from ..flashlight import BinaryPartitionProblem, FlashlightEnumerator
from .records import DnfFormula

#: A DNF with ``m`` distinct consistent terms has at least ``m ** MODEL_EXPONENT`` models.
MODEL_EXPONENT = math.log(2, 3)


def model_count_lower_bound(m: int) -> float:
    return m ** MODEL_EXPONENT if m else 0.0


class DnfOracle(BinaryPartitionProblem):
    """A prefix extends to a model iff some term survives it.

    Each term counts how many decided variables contradict it.  Deciding
    variable ``v`` touches only the terms mentioning ``v``, so a whole
    root-to-leaf path costs one pass over the formula.
    """

    def __init__(self, D: DnfFormula):
        self.D = D
        self.n = D.n
        # killers[v][bit]: terms falsified by setting variable v to bit
        self.killers: list[tuple[list[int], list[int]]] = [([], []) for _ in range(D.n + 1)]
        for t, term in enumerate(D.terms):
            for lit in term:
                self.killers[abs(lit)][0 if lit > 0 else 1].append(t)
        self.root()

    def root(self) -> bool:
        self.dead = [0] * self.D.m
        self.alive = self.D.m
        self.decisions: list[int] = []
        return self.alive > 0

    def probe(self, bit: int) -> bool:
        v = len(self.decisions) + 1
        dead = self.dead
        newly = sum(1 for t in self.killers[v][bit] if dead[t] == 0)
        return self.alive - newly > 0

    def push(self, bit: int) -> None:
        v = len(self.decisions) + 1
        self.decisions.append(bit)
        dead = self.dead
        for t in self.killers[v][bit]:
            if dead[t] == 0:
                self.alive -= 1
            dead[t] += 1

    def pop(self) -> None:
        v = len(self.decisions)
        bit = self.decisions.pop()
        dead = self.dead
        for t in self.killers[v][bit]:
            dead[t] -= 1
            if dead[t] == 0:
                self.alive += 1

    def is_solution(self, bits) -> bool:
        return self.D.evaluate(bits)

    def get_state(self):
        return tuple(self.decisions)

    def set_state(self, state) -> None:
        self.root()
        for bit in state:
            self.push(bit)


def dnf_enumerate(D: DnfFormula) -> FlashlightEnumerator:
    return FlashlightEnumerator(DnfOracle(D))
