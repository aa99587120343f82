"""
Checking the closed form against a statevector
==============================================

The oracle builds the full state (one qubit per photon), applies the gates
as projectors, and reports every measurement record with its post-state.
"""

from wfusion import analytic, oracle, verify

n, m, t = 3, 3, 3
state = oracle.scheme3_input(n, m, t)
print("input qubits:", state.qubit_count, state.labels)

branches = oracle.run_scheme3(n, m, t)
for br in branches:
    gates = "".join(g.value for g in br.gates)
    tag = br.outcome.value if br.outcome else "-"
    print(f"{gates}  {tag:3} p = {br.probability:.12f}")

# compare one class by fidelity with the block state predicted analytically
success = next(r for r in analytic.outcomes3(n, m, t) if r.outcome.value == "S")
post = next(b for b in branches if b.outcome is success.outcome).post_state
print("fidelity with", success.result_blocks, "=", oracle.fidelity(post, oracle.materialize(success.result_blocks)))

# the whole matrix, as the `verify` command runs it
results = verify.run_matrix(3)
print(sum(r.ok for r in results), "of", len(results), "configurations agree")
