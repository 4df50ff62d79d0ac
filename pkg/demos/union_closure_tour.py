"""Four ways to list the union closure of a small set system."""
import time

from enumdelay import delay_report, run
from enumdelay.oracle import brute_union, compare
from enumdelay.problems import (
    SetSystem, avoiding_union, children, closure_saturate, union_extension, union_flashlight,
    union_reverse_search, union_supergraph,
)

x = SetSystem(4, ({1, 2}, {2, 3}, {1, 4}, {1, 3, 4}))


def show(sol):
    return "{" + ",".join(str(i) for i, b in enumerate(sol, start=1) if b) + "}"


# The extension test behind flashlight search: can a solution contain A and
# avoid B?  Only the sets missing B can help.
print("sets avoiding {2} cover", sorted(avoiding_union(x, {2})))
print("{1} in, {2} out:", union_extension(x, {1}, {2}))
print("{2} in, {1,3} out:", union_extension(x, {2}, {1, 3}))

# %% Each method, its output order and its delay profile.
for name, make in [("flashlight", union_flashlight), ("supergraph", union_supergraph),
                   ("reverse", union_reverse_search), ("saturate", closure_saturate)]:
    start = time.perf_counter()
    t = run(make(x))
    r = delay_report(t)
    ok = compare(t, brute_union(x)).ok
    print(f"{name:11s} {' '.join(show(s) for s in t.solutions)}")
    print(f"{'':11s} max_delay={r.max_delay} total={r.total_steps} agrees={ok} "
          f"({time.perf_counter() - start:.4f} s)")

# %% The reverse-search forest, walked by hand.
for root in ({1, 2}, {2, 3}, {1, 4}):
    print(sorted(root), "->", [sorted(c) for c in children(x, root)])

# %% Intersection closure comes from complements.
y = SetSystem(3, ({1, 2}, {2, 3}))
print("intersection closure:", [show(s) for s in run(closure_saturate(y, "intersection")).solutions])
