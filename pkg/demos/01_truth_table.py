"""
Truth table of the three-state fusion
=====================================

Three W states send one photon each to a controlled swap and two fusion
gates, with an H ancilla in the third mode.  The closed form gives eight
input patterns and their exact probabilities.
"""

from wfusion import analytic

# the rows are printed with exact fractions
n, m, t = 3, 4, 5
for row in analytic.truth_table3(n, m, t):
    inp = "".join(p.name for p in row.input)
    thr = "".join(p.name for p in row.throughput)
    gates = "".join(g.value for g in row.gates)
    print(f"{inp} -> {thr}  gates {gates}  {row.result.value:3}  {row.probability}")

# group by outcome class: this is the distribution a simulator samples from
print()
for rec in analytic.outcomes3(n, m, t):
    print(f"{rec.outcome.value:3} p = {rec.probability!s:8} -> {rec.result_blocks}")

print("\nsuccess probability", analytic.success_probability("three", n, m, t))
