"""Solutions of a GF(2) system: basis, random access, sampling."""
import random

import numpy as np

from enumdelay import run, sampler_to_enumerator
from enumdelay.problems import (
    Gf2System, gf2_basis, gf2_enumerate, gf2_jth_solution, gf2_sample_uniform, gf2_sampler,
)

rng = np.random.default_rng(3)
A = rng.integers(0, 2, size=(3, 6))
x = rng.integers(0, 2, size=6)
b = A @ x % 2
sys_ = Gf2System(6, tuple(map(tuple, A.tolist())), tuple(b.tolist()))
print("A =\n", A, "\nb =", b)

B = gf2_basis(sys_)
print("rank", B.rank, " free unknowns", B.k, " solutions", B.count)

# %% Two orders over the same set.
lex = run(gf2_enumerate(sys_, "lex")).solutions
gray = run(gf2_enumerate(sys_, "gray")).solutions
print("lex :", ["".join(map(str, s)) for s in lex])
print("gray:", ["".join(map(str, s)) for s in gray])
assert sorted(lex) == sorted(gray)

# %% Random access agrees with the lex order.
for j in (0, 1, B.count - 1):
    print(f"solution {j}:", "".join(map(str, gf2_jth_solution(B, j))))

# %% A uniform sampler turned into an enumerator that stops on its own.
counts = {}
r = random.Random(0)
for _ in range(4000):
    s = gf2_sample_uniform(B, r)
    counts[s] = counts.get(s, 0) + 1
print("sample frequencies:", sorted(counts.values()))

complete = sum(len(run(sampler_to_enumerator(gf2_sampler(sys_), 0.1, seed=s))) == B.count
               for s in range(100))
print(f"{complete}/100 sampler runs listed every solution")
