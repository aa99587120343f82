"""Brute-force statevector simulation of the fusion pipelines.

Everything here works on explicit amplitude vectors and is deliberately
independent of :mod:`wfusion.analytic`; the test-suite checks one against the
other.

Fusion gates are modelled at the logical level.  A gate acting on qubits
``(q1, q2)`` has three branches:

``R``
    both photons H; project and drop the two qubits.
``F``
    both photons V; project and drop the two qubits.
``S``
    orthogonal polarizations (coincidence).  The branch probability is the
    full ``<P_HV + P_VH>``, and the post-state is the normalized image of
    ``|HV>, |VH> -> 1/sqrt(2)``, i.e. the even-parity detection record.  The
    odd-parity record would need a phase correction that is not modelled.

Surviving qubits keep their original relative order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .core import AllH, Block, BlockState, GateResult, OutcomeClass, Polarization, PureState, W

MAX_QUBITS = 24

# gate pair -> outcome class (the truth table's result column); other pairs never occur
SCHEME3_CLASSES = {
    (GateResult.R, GateResult.R): OutcomeClass.R,
    (GateResult.R, GateResult.S): OutcomeClass.PR,
    (GateResult.S, GateResult.R): OutcomeClass.PS,
    (GateResult.S, GateResult.S): OutcomeClass.S,
    (GateResult.S, GateResult.F): OutcomeClass.F,
}

TWO_STATE_CLASSES = {
    (GateResult.R,): OutcomeClass.R,
    (GateResult.S,): OutcomeClass.S,
    (GateResult.F,): OutcomeClass.F,
}


@dataclass(frozen=True)
class MeasurementBranch:
    """One detection record.

    ``post_state`` is ``None`` when the branch has zero probability (or, for
    ``S``, when the even-parity image vanishes).
    """

    gates: tuple[GateResult, ...]
    outcome: Optional[OutcomeClass]
    probability: float
    post_state: Optional[PureState]


def _check_size(k: int) -> None:
    if k > MAX_QUBITS:
        raise ValueError(f"{k} qubits exceeds the oracle limit of {MAX_QUBITS}")


def build_w(n: int, label: str = "q") -> PureState:
    if n < 1:
        raise ValueError("W state needs n >= 1")
    _check_size(n)
    amps = np.zeros(1 << n, dtype=complex)
    amps[[1 << j for j in range(n)]] = 1.0 / np.sqrt(n)
    return PureState(amps, (label,) * n)


def all_h(count: int, label: str = "q") -> PureState:
    return PureState.basis([Polarization.H] * count, [label] * count)


def materialize(blocks: BlockState | Sequence[Block], labels: Sequence[str] = ()) -> PureState:
    """Expand a symbolic block list into an explicit statevector."""
    state = PureState.scalar()
    for block in blocks:
        part = build_w(block.size) if isinstance(block, W) else all_h(block.count)
        state = state.kron(part)
    if labels:
        state = PureState(state.amplitudes, tuple(labels))
    return state


def apply_fredkin(state: PureState, control: int, target1: int, target2: int) -> PureState:
    k = state.qubit_count
    idx = (control, target1, target2)
    if len(set(idx)) != 3:
        raise ValueError(f"Fredkin indices must be distinct, got {idx}")
    if any(not 0 <= q < k for q in idx):
        raise IndexError(f"Fredkin index out of range for {k} qubits: {idx}")
    psi = state.tensor().copy()
    on = [slice(None)] * k
    on[control] = 1
    # within the control=V slice, swap the two target axes
    sub = psi[tuple(on)]
    t1 = target1 - (target1 > control)
    t2 = target2 - (target2 > control)
    psi[tuple(on)] = np.swapaxes(sub, t1, t2).copy()
    return PureState(psi.reshape(-1), state.labels)


def fusion_gate_measure(state: PureState, q1: int, q2: int) -> list[MeasurementBranch]:
    k = state.qubit_count
    if q1 == q2:
        raise ValueError("fusion gate needs two distinct qubits")
    if not (0 <= q1 < k and 0 <= q2 < k):
        raise IndexError(f"fusion qubits ({q1}, {q2}) out of range for {k} qubits")
    psi = np.moveaxis(state.tensor(), (q1, q2), (0, 1)).reshape(2, 2, -1)
    rest = tuple(l for i, l in enumerate(state.labels) if i not in (q1, q2))

    def branch(gate: GateResult, prob: float, vec: np.ndarray) -> MeasurementBranch:
        norm = np.linalg.norm(vec)
        post = PureState(vec / norm, rest) if prob > 0 and norm > 0 else None
        return MeasurementBranch((gate,), None, prob, post)

    hv, vh = psi[0, 1], psi[1, 0]
    p_s = float(np.vdot(hv, hv).real + np.vdot(vh, vh).real)
    p_r = float(np.vdot(psi[0, 0], psi[0, 0]).real)
    p_f = float(np.vdot(psi[1, 1], psi[1, 1]).real)
    return [
        branch(GateResult.S, p_s, (hv + vh) / np.sqrt(2)),
        branch(GateResult.R, p_r, psi[0, 0]),
        branch(GateResult.F, p_f, psi[1, 1]),
    ]


def fidelity(x: PureState, y: PureState) -> float:
    if x.qubit_count != y.qubit_count:
        raise ValueError(f"qubit counts differ: {x.qubit_count} vs {y.qubit_count}")
    return float(abs(np.vdot(x.amplitudes, y.amplitudes)) ** 2)


def _party(n: int, label: str, mode: str) -> PureState:
    # the photon sent to the gates is the party's last qubit
    w = build_w(n)
    return PureState(w.amplitudes, (label,) * (n - 1) + (mode,))


def _check_sizes(*sizes: int) -> None:
    if any(s < 2 for s in sizes):
        raise ValueError(f"W state sizes must be >= 2, got {sizes}")
    _check_size(sum(sizes) + 1)


def scheme3_input(n: int, m: int, t: int) -> PureState:
    """``W_n (x) W_m (x) |H>_anc (x) W_t`` with mode tags 1..4."""
    _check_sizes(n, m, t)
    anc = PureState.basis([Polarization.H], ["mode3"])
    return _party(n, "a", "mode1").kron(_party(m, "b", "mode2")).kron(anc).kron(_party(t, "c", "mode4"))


def _after_fredkin3(n: int, m: int, t: int) -> PureState:
    state = scheme3_input(n, m, t)
    ix = state.index_of
    return apply_fredkin(state, ix("mode1"), ix("mode2"), ix("mode3"))


def _joint(state: PureState, pairs: Sequence[tuple[str, str]], classes: dict) -> list[MeasurementBranch]:
    """Run fusion gates in sequence on labelled qubit pairs, enumerating every record."""
    frontier = [((), 1.0, state)]
    for la, lb in pairs:
        nxt = []
        for gates, prob, st in frontier:
            if st is None:
                for g in GateResult:
                    nxt.append((gates + (g,), 0.0, None))
                continue
            for br in fusion_gate_measure(st, st.index_of(la), st.index_of(lb)):
                nxt.append((gates + br.gates, prob * br.probability, br.post_state))
        frontier = nxt
    return [MeasurementBranch(g, classes.get(g), p, s if p > 0 else None) for g, p, s in frontier]


def run_scheme3(n: int, m: int, t: int) -> list[MeasurementBranch]:
    """All nine (FG1, FG2) records of the three-state scheme.

    Impossible records are kept with probability 0 and ``outcome=None``.
    """
    return _joint(_after_fredkin3(n, m, t), [("mode1", "mode2"), ("mode3", "mode4")], SCHEME3_CLASSES)


def pattern_distribution(state: PureState, labels: Sequence[str]) -> dict[tuple[Polarization, ...], float]:
    """Probability of each computational pattern on the labelled qubits."""
    axes = [state.index_of(l) for l in labels]
    k = len(axes)
    psi = np.moveaxis(state.tensor(), axes, range(k)).reshape(1 << k, -1)
    weights = np.einsum("ij,ij->i", psi.conj(), psi).real
    return {pattern: float(weights[i]) for i, pattern in enumerate(itertools.product(Polarization, repeat=k))}


def throughput_distribution3(n: int, m: int, t: int) -> dict[tuple[Polarization, ...], float]:
    """Probability of each polarization pattern on modes 1'..4' after the Fredkin gate."""
    return pattern_distribution(_after_fredkin3(n, m, t), ["mode1", "mode2", "mode3", "mode4"])


def input_distribution2(n: int, m: int) -> dict[tuple[Polarization, ...], float]:
    """Polarizations of the two photons sent to a two-state fusion gate."""
    _check_sizes(n, m)
    return pattern_distribution(_party(n, "a", "mode1").kron(_party(m, "b", "mode2")), ["mode1", "mode2"])


def run_scheme2_basic(n: int, m: int) -> list[MeasurementBranch]:
    _check_sizes(n, m)
    state = _party(n, "a", "mode1").kron(_party(m, "b", "mode2"))
    return _joint(state, [("mode1", "mode2")], TWO_STATE_CLASSES)


def run_scheme2_enhanced(n: int, m: int) -> list[MeasurementBranch]:
    """Fredkin (control A's photon, swap B's photon with an H ancilla), then one gate.

    The ancilla qubit (label ``"mode3"``) survives the gate and stays last.
    """
    _check_sizes(n, m)
    anc = PureState.basis([Polarization.H], ["mode3"])
    state = _party(n, "a", "mode1").kron(_party(m, "b", "mode2")).kron(anc)
    ix = state.index_of
    state = apply_fredkin(state, ix("mode1"), ix("mode2"), ix("mode3"))
    return _joint(state, [("mode1", "mode2")], TWO_STATE_CLASSES)


def class_probabilities(branches: Sequence[MeasurementBranch]) -> dict[OutcomeClass, float]:
    out: dict[OutcomeClass, float] = {}
    for br in branches:
        if br.outcome is not None:
            out[br.outcome] = out.get(br.outcome, 0.0) + br.probability
    return out
