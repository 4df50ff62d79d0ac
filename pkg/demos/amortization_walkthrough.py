"""Geometric amortization on a stream that hoards its last solution.

Run with ``python3 demos/amortization_walkthrough.py``.
"""
import numpy as np

from enumdelay import (
    ScriptedEnumerator, delay_report, geometric_amortize, geometric_amortize_adaptive,
    pointer_count, queue_amortize, run,
)

# A machine that outputs ell - 1 solutions right away, then thinks for a
# long time before the last one.  Its k-th solution still comes within k*p
# steps, so the average is fine but the worst gap is huge.
ell, p = 4096, 32


def stream():
    return ScriptedEnumerator(list(range(1, ell)) + [ell * p])


raw = delay_report(run(stream()))
print("raw machine      ", raw.as_lines())

# %% Wrapping it: N pointers walk the same run, pointer j in zone
# (2^(j-1) p, 2^j p].  Each gets 2p steps per turn.
wrapped = delay_report(run(geometric_amortize(stream(), p=p, ell=ell)))
print("geometric        ", wrapped.as_lines())
print("pointers:", pointer_count(ell), " bound 2 p N =", 2 * p * pointer_count(ell))

# %% Without knowing ell, pointers are created as the run reveals new zones.
w = geometric_amortize_adaptive(stream(), p)
adaptive = delay_report(run(w))
print("adaptive         ", adaptive.as_lines(), " pointers created:", w.pointers_created)

# %% The queue gets delay p too, but it has to store the backlog.
q = queue_amortize(stream(), p)
queued = delay_report(run(q))
print("queue            ", queued.as_lines(), " largest backlog:", q.max_queue)

# %% Gaps of the wrapped run: almost all tiny, a few at the bound.
t = run(geometric_amortize(stream(), p=p, ell=ell))
gaps = np.diff([step for step, _ in t.events])
print("gap percentiles 50/90/99/max:", np.percentile(gaps, [50, 90, 99]).tolist(), gaps.max())
