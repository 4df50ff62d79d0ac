"""Loopless reflected binary Gray code."""
from __future__ import annotations

from ..engine import DONE, Emit, Enumerator, StepOutcome


class GrayCode(Enumerator):
    """All ``2**n`` words, consecutive ones differing in one bit.

    From a word with an even number of ones, flip the last bit; otherwise
    flip the bit just left of the rightmost one.  The positions of the ones
    are kept sorted, and every change happens at the end of that list, so
    each word costs O(1) work besides copying it out.
    """

    supports_snapshot = True

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("word length must be >= 1")
        self.n = n
        self.word = [0] * n
        self.ones: list[int] = []
        self.emitted = 0
        self.delay_bound = 1

    def _flip(self, i: int) -> None:
        word, ones = self.word, self.ones
        word[i] ^= 1
        if word[i]:
            # i is either past the last one or just before it
            if ones and ones[-1] > i:
                ones.insert(len(ones) - 1, i)
            else:
                ones.append(i)
        elif ones[-1] == i:
            ones.pop()
        else:
            del ones[-2]

    def step(self) -> StepOutcome:
        if self.emitted == 1 << self.n:
            return DONE
        if self.emitted:
            if len(self.ones) % 2 == 0:
                self._flip(self.n - 1)
            else:
                self._flip(self.ones[-1] - 1)
        self.emitted += 1
        return Emit(tuple(self.word))

    def snapshot(self):
        return tuple(self.word), tuple(self.ones), self.emitted

    def restore(self, state) -> None:
        word, ones, self.emitted = state
        self.word, self.ones = list(word), list(ones)


def gray_code(n: int) -> GrayCode:
    return GrayCode(n)
