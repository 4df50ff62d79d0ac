"""Affine solution spaces of linear systems over GF(2).

Vectors are Python ints internally, bit ``c`` holding ``x_{c+1}``, and are
returned as bit tuples.  The solution with index ``j`` is
``x0 + sum(lambda_i * y_i)`` where ``lambda_1 .. lambda_k`` are the bits of
``j`` from most to least significant and ``y_1 .. y_k`` is the kernel basis
ordered by free column.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Literal

from ..engine import DONE, Emit, EnumerationError, Enumerator, StepOutcome
from .records import Gf2System, bits_to_mask, mask_to_bits


class NoSolution(EnumerationError):
    pass


class EmptySet(EnumerationError):
    pass


class OutOfRange(IndexError):
    pass


@dataclass(frozen=True)
class Gf2Basis:
    n: int
    x0: int
    basis: tuple[int, ...]
    rank: int
    pivots: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.basis)

    @property
    def count(self) -> int:
        return 1 << self.k

    def combine(self, lam: int) -> int:
        """``x0`` plus the basis vectors selected by the bits of ``lam``."""
        x = self.x0
        k = self.k
        for i, y in enumerate(self.basis):
            if lam >> (k - 1 - i) & 1:
                x ^= y
        return x


def gf2_basis(sys: Gf2System) -> Gf2Basis:
    n = sys.n
    rows = [(bits_to_mask(row), rhs) for row, rhs in zip(sys.A, sys.b)]
    pivots: list[int] = []
    r = 0
    for c in range(n):
        bit = 1 << c
        hit = next((i for i in range(r, len(rows)) if rows[i][0] & bit), None)
        if hit is None:
            continue
        rows[r], rows[hit] = rows[hit], rows[r]
        prow, prhs = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][0] & bit:
                rows[i] = (rows[i][0] ^ prow, rows[i][1] ^ prhs)
        pivots.append(c)
        r += 1
    if any(mask == 0 and rhs for mask, rhs in rows[r:]):
        raise NoSolution("inconsistent system")
    x0 = 0
    for i, c in enumerate(pivots):
        if rows[i][1]:
            x0 |= 1 << c
    pivot_set = set(pivots)
    basis = []
    for f in range(n):
        if f in pivot_set:
            continue
        y = 1 << f
        for i, c in enumerate(pivots):
            if rows[i][0] >> f & 1:
                y |= 1 << c
        basis.append(y)
    return Gf2Basis(n, x0, tuple(basis), r, tuple(pivots))


def gf2_jth_solution(sys: Gf2System | Gf2Basis, j: int) -> tuple[int, ...]:
    B = sys if isinstance(sys, Gf2Basis) else gf2_basis(sys)
    if not 0 <= j < B.count:
        raise OutOfRange(f"index {j} outside [0, {B.count})")
    return mask_to_bits(B.combine(j), B.n)


Order = Literal["gray", "lex"]


class Gf2Enumerator(Enumerator):
    """All solutions, one per step.

    ``order="lex"`` lists them by increasing index; ``order="gray"`` walks
    the indices in reflected Gray code order, so each solution differs from
    the previous one by a single basis vector.
    """

    supports_snapshot = True

    def __init__(self, sys: Gf2System, order: Order = "gray"):
        if order not in ("gray", "lex"):
            raise ValueError(f"unknown order {order!r}")
        self.order = order
        self.n = sys.n
        try:
            self.B: Gf2Basis | None = gf2_basis(sys)
        except NoSolution:
            self.B = None
        self.t = 0
        self.x = self.B.x0 if self.B else 0
        self.delay_bound = 1

    def step(self) -> StepOutcome:
        B = self.B
        if B is None or self.t == B.count:
            return DONE
        t = self.t
        if self.order == "lex":
            x = B.combine(t)
        else:
            if t:
                ctz = (t & -t).bit_length() - 1
                self.x ^= B.basis[B.k - 1 - ctz]
            x = self.x
        self.t = t + 1
        return Emit(mask_to_bits(x, self.n))

    def snapshot(self):
        return self.t, self.x

    def restore(self, state) -> None:
        self.t, self.x = state


def gf2_enumerate(sys: Gf2System, order: Order = "gray") -> Gf2Enumerator:
    return Gf2Enumerator(sys, order)


def gf2_sample_uniform(sys: Gf2System | Gf2Basis, seed: int | random.Random) -> tuple[int, ...]:
    try:
        B = sys if isinstance(sys, Gf2Basis) else gf2_basis(sys)
    except NoSolution:
        raise EmptySet("the system has no solution") from None
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    return mask_to_bits(B.combine(rng.getrandbits(B.k) if B.k else 0), B.n)


def gf2_sampler(sys: Gf2System):
    """Sampler callable for :func:`sampler_to_enumerator`; ``None`` when empty."""
    try:
        B = gf2_basis(sys)
    except NoSolution:
        return lambda rng: None
    return lambda rng: gf2_sample_uniform(B, rng)
