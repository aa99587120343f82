"""Cross-check the analytic outcome tables against the statevector oracle."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import analytic, oracle
from .core import GateResult, OutcomeClass, SchemeId

PROB_TOL = 1e-12
FIDELITY_TOL = 1e-12

IMPOSSIBLE3 = [
    (GateResult.F, GateResult.S),
    (GateResult.F, GateResult.R),
    (GateResult.F, GateResult.F),
    (GateResult.R, GateResult.F),
]


@dataclass
class CheckResult:
    scheme: SchemeId
    sizes: tuple[int, ...]
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def line(self) -> str:
        tag = f"{self.scheme} {','.join(map(str, self.sizes))}"
        return f"{tag}: ok" if self.ok else f"{tag}: FAIL {'; '.join(self.failures)}"


def _compare(result: CheckResult, records, branches) -> None:
    by_class = oracle.class_probabilities(branches)
    for rec in records:
        got = by_class.get(rec.outcome, 0.0)
        if abs(got - float(rec.probability)) > PROB_TOL:
            result.failures.append(f"{rec.outcome} probability {got!r} != {rec.probability}")
            continue
        post = [b.post_state for b in branches if b.outcome is rec.outcome and b.probability > 0]
        if len(post) != 1 or post[0] is None:
            result.failures.append(f"{rec.outcome} has no unique post-state")
            continue
        target = oracle.materialize(rec.result_blocks)
        if target.qubit_count != post[0].qubit_count:
            result.failures.append(f"{rec.outcome} qubit count {post[0].qubit_count} != {target.qubit_count}")
            continue
        fid = oracle.fidelity(post[0], target)
        if fid < 1 - FIDELITY_TOL:
            result.failures.append(f"{rec.outcome} fidelity {fid!r}")
    if abs(sum(b.probability for b in branches) - 1) > PROB_TOL:
        result.failures.append("branch probabilities do not sum to 1")
    if sum((r.probability for r in records), start=0) != 1:
        result.failures.append("analytic probabilities do not sum to exactly 1")


def check_scheme3(n: int, m: int, t: int) -> CheckResult:
    result = CheckResult(SchemeId.THREE_STATE, (n, m, t))
    branches = oracle.run_scheme3(n, m, t)
    _compare(result, analytic.outcomes3(n, m, t), branches)
    for br in branches:
        if br.gates in IMPOSSIBLE3 and br.probability != 0.0:
            result.failures.append(f"{br.gates} has probability {br.probability!r}")
    through = oracle.throughput_distribution3(n, m, t)
    for row in analytic.truth_table3(n, m, t):
        got = through[row.throughput]
        if abs(got - float(row.probability)) > PROB_TOL:
            result.failures.append(f"row {row.result} probability {got!r} != {row.probability}")
    return result


def check_scheme2(scheme: SchemeId, n: int, m: int) -> CheckResult:
    result = CheckResult(scheme, (n, m))
    if scheme is SchemeId.TWO_BASIC:
        branches = oracle.run_scheme2_basic(n, m)
    else:
        branches = oracle.run_scheme2_enhanced(n, m)
        fail = [b for b in branches if b.outcome is OutcomeClass.F]
        if fail and fail[0].probability != 0.0:
            result.failures.append(f"F branch has probability {fail[0].probability!r}")
    _compare(result, analytic.outcomes(scheme, n, m), branches)
    return result


def max_size_limit() -> int:
    """Largest per-state size for which the three-state oracle fits the qubit guard."""
    return (oracle.MAX_QUBITS - 1) // 3


def run_matrix(max_size: int) -> list[CheckResult]:
    if max_size < 2:
        raise ValueError("max_size must be >= 2")
    if max_size > max_size_limit():
        raise ValueError(
            f"max_size {max_size} needs {3 * max_size + 1} qubits; the oracle limit is "
            f"{oracle.MAX_QUBITS} (max_size <= {max_size_limit()})"
        )
    sizes = range(2, max_size + 1)
    results = [check_scheme3(*nmt) for nmt in itertools.product(sizes, repeat=3)]
    for scheme in (SchemeId.TWO_BASIC, SchemeId.TWO_ENHANCED):
        results += [check_scheme2(scheme, n, m) for n, m in itertools.product(sizes, repeat=2)]
    return results
