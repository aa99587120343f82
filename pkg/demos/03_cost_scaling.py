"""
Resource cost without recycling
===============================

Cost is counted in primary W_3 states.  A dynamic program over fusion
trees gives the cheapest plan for each size; fitting the equal-size
sequence gives the growth exponent k in N**0.5 * c * N**(log2(N)/k).
"""

from wfusion import planner

plan = planner.dp_norecycle("three", 15)
print(plan.pretty())
print("cost of W_15:", plan.cost)

for scheme in ("three", "two-basic", "two-enhanced"):
    sizes = planner.equal_size_sequence(scheme, 9 if scheme != "three" else 6)
    points = [(s, float(planner.dp_norecycle(scheme, s).cost)) for s in sizes]
    fit = planner.fit_exponent(points)
    print(f"{scheme:13} sizes {sizes[0]}..{sizes[-1]}  k = {fit.k:.3f}  c = {fit.c:.3f}")

# three-state fusion only ever reaches multiples of 3
print(planner.reachable_sizes("three", 30))
